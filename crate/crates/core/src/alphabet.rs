//! Alphabets of named symbols and strings over them.
//!
//! Symbols are short tokens (`a1`, `e0`, `x`, ...) rather than characters so
//! that the nine-symbol reduction alphabet can be written down directly. A
//! [`Word`] stores symbol indices and shares its [`Alphabet`] through an `Arc`.

use std::fmt;
use std::ops::Deref;
use std::sync::{Arc, LazyLock};

use crate::error::{Error, Result};

/// Index of a symbol within its alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(pub u8);

impl Sym {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered set of distinct symbol tokens.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

/// Symbols of the reduction alphabet, in the order used by [`Alphabet::reduction`].
pub mod sigma {
    use super::Sym;

    pub const A1: Sym = Sym(0);
    pub const A2: Sym = Sym(1);
    pub const B: Sym = Sym(2);
    pub const E0: Sym = Sym(3);
    pub const E: Sym = Sym(4);
    pub const C1: Sym = Sym(5);
    pub const C2: Sym = Sym(6);
    pub const X: Sym = Sym(7);
    pub const Y: Sym = Sym(8);

    pub const TOKENS: [&str; 9] = ["a1", "a2", "b", "e0", "e", "c1", "c2", "x", "y"];
}

static REDUCTION: LazyLock<Arc<Alphabet>> = LazyLock::new(|| {
    Arc::new(Alphabet::new(sigma::TOKENS).expect("reduction alphabet is well formed"))
});

fn valid_token(token: &str) -> bool {
    !token.is_empty() && token.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for s in symbols {
            let s = s.into();
            if !valid_token(&s) || out.contains(&s) {
                return Err(Error::InvalidSymbol(s));
            }
            out.push(s);
        }
        if out.is_empty() || out.len() > u8::MAX as usize + 1 {
            return Err(Error::MalformedInstance(format!(
                "alphabet must have between 1 and 256 symbols, got {}",
                out.len()
            )));
        }
        Ok(Alphabet { symbols: out })
    }

    /// The nine-symbol alphabet `{a1, a2, b, e0, e, c1, c2, x, y}` used by the reduction.
    pub fn reduction() -> Arc<Alphabet> {
        REDUCTION.clone()
    }

    /// Smallest alphabet covering `tokens`: the reduction alphabet when every
    /// token belongs to it, otherwise the sorted distinct tokens.
    pub fn covering<'a, I>(tokens: I) -> Result<Arc<Alphabet>>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut seen: Vec<&str> = tokens.into_iter().collect();
        seen.sort_unstable();
        seen.dedup();
        if seen.iter().all(|t| sigma::TOKENS.contains(t)) {
            return Ok(Self::reduction());
        }
        if seen.is_empty() {
            return Ok(Self::reduction());
        }
        Ok(Arc::new(Alphabet::new(seen)?))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Sym> + '_ {
        (0..self.symbols.len()).map(|i| Sym(i as u8))
    }

    pub fn lookup(&self, token: &str) -> Result<Sym> {
        self.symbols
            .iter()
            .position(|s| s == token)
            .map(|i| Sym(i as u8))
            .ok_or_else(|| Error::InvalidSymbol(token.to_string()))
    }

    pub fn name(&self, sym: Sym) -> &str {
        &self.symbols[sym.index()]
    }
}

/// A finite string over an [`Alphabet`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    syms: Vec<Sym>,
}

impl Word {
    pub fn new(alphabet: Arc<Alphabet>, syms: Vec<Sym>) -> Result<Self> {
        if let Some(bad) = syms.iter().find(|s| s.index() >= alphabet.len()) {
            return Err(Error::InvalidSymbol(format!("#{}", bad.0)));
        }
        Ok(Word { alphabet, syms })
    }

    pub fn empty(alphabet: Arc<Alphabet>) -> Self {
        Word {
            alphabet,
            syms: Vec::new(),
        }
    }

    /// Parses whitespace-separated tokens.
    pub fn from_tokens(alphabet: Arc<Alphabet>, text: &str) -> Result<Self> {
        let syms = text
            .split_whitespace()
            .map(|t| alphabet.lookup(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word { alphabet, syms })
    }

    /// Word over the reduction alphabet from whitespace-separated tokens.
    pub fn sigma(text: &str) -> Self {
        Self::from_tokens(Alphabet::reduction(), text)
            .expect("token outside the reduction alphabet")
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn syms(&self) -> &[Sym] {
        &self.syms
    }

    pub fn into_syms(self) -> Vec<Sym> {
        self.syms
    }

    pub fn with_syms(&self, syms: Vec<Sym>) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            syms,
        }
    }

    pub fn same_alphabet(&self, other: &Word) -> bool {
        Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> + '_ {
        self.syms.iter().map(|&s| self.alphabet.name(s))
    }

    /// Number of occurrences of the symbol named `token`.
    pub fn count_symbol(&self, token: &str) -> Result<usize> {
        let s = self.alphabet.lookup(token)?;
        Ok(self.syms.iter().filter(|&&t| t == s).count())
    }

    /// Largest `k` such that `(s1 s2)^k` is a subsequence of this word.
    pub fn count_alternations(&self, s1: &str, s2: &str) -> Result<usize> {
        let a = self.alphabet.lookup(s1)?;
        let b = self.alphabet.lookup(s2)?;
        Ok(count_alternations(&self.syms, &a, &b))
    }

    pub fn is_subsequence_of(&self, other: &Word) -> Result<bool> {
        if !self.same_alphabet(other) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(is_subsequence(&self.syms, &other.syms))
    }
}

impl Deref for Word {
    type Target = [Sym];

    fn deref(&self) -> &[Sym] {
        &self.syms
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tokens().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(t)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Greedy left-to-right count of complete `s1 .. s2` alternations.
pub fn count_alternations<T: PartialEq>(z: &[T], s1: &T, s2: &T) -> usize {
    let mut k = 0;
    let mut want_first = true;
    for c in z {
        if want_first && c == s1 {
            want_first = false;
        } else if !want_first && c == s2 {
            want_first = true;
            k += 1;
        }
    }
    k
}

/// True iff `u` embeds order-preservingly into `w`.
pub fn is_subsequence<T: PartialEq>(u: &[T], w: &[T]) -> bool {
    let mut it = w.iter();
    u.iter().all(|c| it.any(|d| d == c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Arc<Alphabet> {
        Arc::new(Alphabet::new(["a", "b"]).unwrap())
    }

    #[test]
    fn alphabet_rejects_duplicates_and_empty() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
        assert!(Alphabet::new(["a?"]).is_err());
    }

    #[test]
    fn count_symbol_examples() {
        let w = Word::from_tokens(ab(), "a a b b").unwrap();
        assert_eq!(w.count_symbol("a").unwrap(), 2);
        assert_eq!(Word::empty(ab()).count_symbol("a").unwrap(), 0);
        assert_eq!(w.count_symbol("q"), Err(Error::InvalidSymbol("q".into())));
    }

    #[test]
    fn count_symbol_bracket_example() {
        let w = Word::sigma("c1 x x x c2 c1 x x x c2 c1 x x c2 c1 x x c2 c1 x c2 c1 x c2");
        assert_eq!(w.count_symbol("c1").unwrap(), 6);
    }

    #[test]
    fn alternation_examples() {
        let z = Word::sigma("a1 b a2 a1 b a2");
        assert_eq!(z.count_alternations("a1", "a2").unwrap(), 2);
        assert_eq!(Word::sigma("").count_alternations("a1", "a2").unwrap(), 0);
        assert_eq!(
            Word::sigma("a1 b b a2")
                .count_alternations("a1", "a2")
                .unwrap(),
            1
        );
        assert_eq!(
            Word::sigma("a2 a1 a1 a2 a2")
                .count_alternations("a1", "a2")
                .unwrap(),
            1
        );
    }

    #[test]
    fn subsequence_examples() {
        assert!(is_subsequence(b"ab", b"aabb"));
        assert!(!is_subsequence(b"ba", b"aabb"));
        assert!(is_subsequence(b"", b""));
        let w = Word::sigma("a1 b a2 a1 a2 b a1 a2");
        let u = Word::sigma("a1 a2 a1 a2 a1 a2");
        assert!(u.is_subsequence_of(&w).unwrap());
        assert!(w.count_alternations("a1", "a2").unwrap() >= 3);
    }

    #[test]
    fn covering_prefers_reduction_alphabet() {
        let a = Alphabet::covering(["x", "c1"]).unwrap();
        assert!(Arc::ptr_eq(&a, &Alphabet::reduction()));
        let a = Alphabet::covering(["b", "a", "b"]).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a.name(Sym(0)), "a");
    }
}
