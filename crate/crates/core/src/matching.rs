//! Perfect same-symbol matchings on string positions and the non-nesting check.
//!
//! A matching certifies squareness: if every position is paired with another
//! carrying the same symbol, and no pair lies strictly inside another, then
//! the smaller endpoints spell one copy of `u` and the larger endpoints the
//! other. Pairs are stored as `(smaller, larger)`, sorted by smaller endpoint.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which copy of `u` a position of `w` was drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn label(self) -> u8 {
        match self {
            Side::First => 1,
            Side::Second => 2,
        }
    }
}

impl Serialize for Side {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

/// First invariant a candidate matching breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    OutOfRange {
        pair: (usize, usize),
        len: usize,
    },
    SelfLoop {
        position: usize,
    },
    Reused {
        position: usize,
    },
    Uncovered {
        position: usize,
    },
    UnequalSymbols {
        pair: (usize, usize),
    },
    Nested {
        outer: (usize, usize),
        inner: (usize, usize),
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfRange { pair, len } => {
                write!(f, "pair {pair:?} out of range for string of length {len}")
            }
            Violation::SelfLoop { position } => write!(f, "position {position} paired with itself"),
            Violation::Reused { position } => write!(f, "position {position} used by two pairs"),
            Violation::Uncovered { position } => write!(f, "position {position} is unmatched"),
            Violation::UnequalSymbols { pair } => write!(f, "pair {pair:?} joins unequal symbols"),
            Violation::Nested { outer, inner } => {
                write!(f, "pair {inner:?} nested inside {outer:?}")
            }
        }
    }
}

impl Matching {
    /// Canonicalises each pair to `(smaller, larger)` and sorts. Pairs joining
    /// a position to itself are rejected here; everything else is left for
    /// [`Matching::validate`].
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Result<Self> {
        let mut out = Vec::new();
        for (a, b) in pairs {
            if a == b {
                return Err(Violation::SelfLoop { position: a }.into());
            }
            out.push((a.min(b), a.max(b)));
        }
        out.sort_unstable();
        Ok(Matching { pairs: out })
    }

    pub fn empty() -> Self {
        Matching::default()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Checks, in order: positions in range, perfectness, equal symbols,
    /// non-nesting.
    pub fn validate<T: PartialEq>(&self, w: &[T]) -> Result<(), Violation> {
        let n = w.len();
        let mut seen = vec![false; n];
        for &(j, k) in &self.pairs {
            if k >= n {
                return Err(Violation::OutOfRange {
                    pair: (j, k),
                    len: n,
                });
            }
            for p in [j, k] {
                if seen[p] {
                    return Err(Violation::Reused { position: p });
                }
                seen[p] = true;
            }
        }
        if let Some(p) = seen.iter().position(|&s| !s) {
            return Err(Violation::Uncovered { position: p });
        }
        if let Some(&pair) = self.pairs.iter().find(|&&(j, k)| w[j] != w[k]) {
            return Err(Violation::UnequalSymbols { pair });
        }
        // sorted by left endpoint, so a nest shows up as a drop in right endpoints
        for win in self.pairs.windows(2) {
            if win[1].1 < win[0].1 {
                return Err(Violation::Nested {
                    outer: win[0],
                    inner: win[1],
                });
            }
        }
        Ok(())
    }

    /// Recovers `u` and the copy labels from a valid matching.
    pub fn extract_halves<T: Clone + PartialEq>(&self, w: &[T]) -> Result<(Vec<T>, Vec<Side>)> {
        self.validate(w)?;
        let mut labels = vec![Side::Second; w.len()];
        for &(j, _) in &self.pairs {
            labels[j] = Side::First;
        }
        let u = self.pairs.iter().map(|&(j, _)| w[j].clone()).collect();
        Ok((u, labels))
    }

    /// Pairs the i-th first-copy position with the i-th second-copy position.
    pub fn from_labels(labels: &[Side]) -> Result<Self> {
        let first: Vec<usize> = positions(labels, Side::First);
        let second: Vec<usize> = positions(labels, Side::Second);
        if first.len() != second.len() {
            return Err(Error::InvalidTrace(format!(
                "labels split {} / {}",
                first.len(),
                second.len()
            )));
        }
        Matching::new(first.into_iter().zip(second))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.pairs.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>())
            .expect("matching serialises")
    }

    /// Parses `[[j,k],...]`; duplicate pairs are rejected.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Vec<[usize; 2]> = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let m = Matching::new(raw.into_iter().map(|[a, b]| (a, b)))?;
        if let Some(w) = m.pairs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Violation::Reused { position: w[0].0 }.into());
        }
        Ok(m)
    }
}

impl Serialize for Matching {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw: Vec<[usize; 2]> = self.pairs.iter().map(|&(a, b)| [a, b]).collect();
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matching {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<[usize; 2]> = Vec::deserialize(d)?;
        Matching::new(raw.into_iter().map(|[a, b]| (a, b))).map_err(serde::de::Error::custom)
    }
}

fn positions(labels: &[Side], side: Side) -> Vec<usize> {
    labels
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == side)
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Word;

    fn m(pairs: &[(usize, usize)]) -> Matching {
        Matching::new(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn crossing_is_accepted_nesting_is_not() {
        assert_eq!(m(&[(0, 2), (1, 3)]).validate(b"abab"), Ok(()));
        assert_eq!(
            m(&[(0, 3), (1, 2)]).validate(b"abba"),
            Err(Violation::Nested {
                outer: (0, 3),
                inner: (1, 2)
            })
        );
    }

    #[test]
    fn unequal_symbols() {
        assert_eq!(
            m(&[(0, 1)]).validate(b"ab"),
            Err(Violation::UnequalSymbols { pair: (0, 1) })
        );
    }

    #[test]
    fn perfectness_and_range() {
        assert_eq!(
            m(&[(0, 1)]).validate(b"aaaa"),
            Err(Violation::Uncovered { position: 2 })
        );
        assert_eq!(
            m(&[(0, 1), (1, 2)]).validate(b"aaa"),
            Err(Violation::Reused { position: 1 })
        );
        assert!(matches!(
            m(&[(0, 4)]).validate(b"aa"),
            Err(Violation::OutOfRange { .. })
        ));
        assert!(Matching::new([(2, 2)]).is_err());
    }

    #[test]
    fn empty_string_has_empty_matching() {
        let (u, labels) = Matching::empty().extract_halves::<u8>(&[]).unwrap();
        assert!(u.is_empty() && labels.is_empty());
    }

    #[test]
    fn extract_adjacent_and_crossing() {
        let (u, labels) = m(&[(0, 1), (2, 3)]).extract_halves(b"aabb").unwrap();
        assert_eq!(u, b"ab");
        assert_eq!(
            labels,
            [Side::First, Side::Second, Side::First, Side::Second]
        );
        let (u, _) = m(&[(0, 2), (1, 3)]).extract_halves(b"abab").unwrap();
        assert_eq!(u, b"ab");
    }

    #[test]
    fn extract_bracket_example() {
        let w = Word::sigma("c1 x x x c2 c1 x x x c2 c1 x x c2 c1 x x c2 c1 x c2 c1 x c2");
        // reference arcs, positions counted from zero
        let arcs = [
            (0, 5),
            (4, 13),
            (9, 17),
            (10, 18),
            (14, 21),
            (20, 23),
            (1, 6),
            (2, 7),
            (3, 11),
            (8, 15),
            (12, 19),
            (16, 22),
        ];
        let (u, _) = m(&arcs).extract_halves(&w).unwrap();
        assert_eq!(w.with_syms(u), Word::sigma("c1 x x x c2 x c2 c1 x c1 x c2"));
    }

    #[test]
    fn json_round_trip_and_duplicates() {
        let mm = Matching::from_json("[[1,3],[0,2]]").unwrap();
        assert_eq!(mm.pairs(), &[(0, 2), (1, 3)]);
        assert_eq!(mm.to_json(), "[[0,2],[1,3]]");
        assert!(Matching::from_json("[[0,2],[2,0]]").is_err());
        assert!(matches!(
            Matching::from_json("[[0,"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn from_labels_pairs_in_order() {
        use Side::*;
        let mm = Matching::from_labels(&[First, First, Second, Second]).unwrap();
        assert_eq!(mm.pairs(), &[(0, 2), (1, 3)]);
    }
}
