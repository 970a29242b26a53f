//! Text encodings for words.
//!
//! The compact form writes one character per symbol. Reduction-alphabet
//! symbols use a fixed map (`a1 -> A`, `a2 -> B`, `b -> b`, `e0 -> E`,
//! `e -> e`, `c1 -> (`, `c2 -> )`, `x -> x`, `y -> y`); any other ASCII
//! letter or digit stands for the single-character symbol of that name. The
//! token form is whitespace-separated symbol names.

use std::sync::Arc;

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};

/// Compact character for each reduction-alphabet token.
pub const COMPACT: [(char, &str); 9] = [
    ('A', "a1"),
    ('B', "a2"),
    ('b', "b"),
    ('E', "e0"),
    ('e', "e"),
    ('(', "c1"),
    (')', "c2"),
    ('x', "x"),
    ('y', "y"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Encoding {
    #[default]
    Compact,
    Tokens,
}

fn compact_token(c: char) -> Option<&'static str> {
    COMPACT.iter().find(|&&(k, _)| k == c).map(|&(_, t)| t)
}

fn compact_char(token: &str) -> Option<char> {
    COMPACT.iter().find(|&&(_, t)| t == token).map(|&(c, _)| c)
}

impl Encoding {
    /// Splits `text` into symbol tokens. Whitespace is ignored in compact form.
    pub fn tokenize(self, text: &str) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            match self {
                Encoding::Compact => {
                    for (col, c) in line.chars().enumerate() {
                        if c.is_whitespace() {
                            continue;
                        }
                        if let Some(t) = compact_token(c) {
                            out.push(t.to_string());
                        } else if c.is_ascii_alphanumeric() {
                            out.push(c.to_string());
                        } else {
                            return Err(Error::Parse {
                                line: lineno + 1,
                                column: col + 1,
                                message: format!("unexpected character `{c}`"),
                            });
                        }
                    }
                }
                Encoding::Tokens => {
                    let mut col = 0;
                    for tok in line.split_whitespace() {
                        col = line[col..].find(tok).map(|i| i + col).unwrap_or(col);
                        if !tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                            return Err(Error::Parse {
                                line: lineno + 1,
                                column: col + 1,
                                message: format!("invalid symbol token `{tok}`"),
                            });
                        }
                        out.push(tok.to_string());
                        col += tok.len();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Decodes several texts over one shared alphabet covering all of them.
    pub fn decode_all(self, texts: &[&str]) -> Result<Vec<Word>> {
        let tokens = texts
            .iter()
            .map(|t| self.tokenize(t))
            .collect::<Result<Vec<_>>>()?;
        let alphabet = Alphabet::covering(tokens.iter().flatten().map(String::as_str))?;
        tokens.iter().map(|ts| words_from(&alphabet, ts)).collect()
    }

    pub fn decode(self, text: &str) -> Result<Word> {
        Ok(self.decode_all(&[text])?.pop().expect("one word"))
    }

    /// Decodes over a given alphabet.
    pub fn decode_with(self, alphabet: &Arc<Alphabet>, text: &str) -> Result<Word> {
        words_from(alphabet, &self.tokenize(text)?)
    }

    pub fn encode(self, w: &Word) -> Result<String> {
        match self {
            Encoding::Tokens => Ok(w.to_string()),
            Encoding::Compact => w
                .tokens()
                .map(|t| {
                    if let Some(c) = compact_char(t) {
                        return Ok(c);
                    }
                    let mut chars = t.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None)
                            if c.is_ascii_alphanumeric() && compact_token(c).is_none() =>
                        {
                            Ok(c)
                        }
                        _ => Err(Error::InvalidSymbol(format!(
                            "`{t}` has no compact encoding"
                        ))),
                    }
                })
                .collect(),
        }
    }
}

fn words_from(alphabet: &Arc<Alphabet>, tokens: &[String]) -> Result<Word> {
    let syms = tokens
        .iter()
        .map(|t| alphabet.lookup(t))
        .collect::<Result<Vec<_>>>()?;
    Word::new(alphabet.clone(), syms)
}
