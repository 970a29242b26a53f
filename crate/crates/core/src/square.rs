//! Deciding whether `w = u ⊙ u` for some `u`.
//!
//! Three exact methods sit behind [`is_square`]: exhaustive choice of the
//! first-copy positions (small inputs only), the queue-automaton search, and
//! a 2-SAT encoding that applies when no symbol occurs more than four times.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matching::{Matching, Side};
use crate::queue::{self, SearchOutcome, Symbol, DEFAULT_BUDGET};
use crate::shuffle::is_shuffle;
use crate::twosat::{Lit, TwoSat};

/// Default length cap for [`brute_force_square`].
pub const DEFAULT_BRUTE_CAP: usize = 16;

/// Occurrence bound under which `auto` picks the 2-SAT method.
pub const TWO_SAT_MAX_OCCURRENCES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Auto,
    Brute,
    Search,
    TwoSat,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Brute => "brute",
            Method::Search => "search",
            Method::TwoSat => "two-sat",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Method::Auto),
            "brute" => Ok(Method::Brute),
            "search" => Ok(Method::Search),
            "two-sat" | "twosat" | "2sat" => Ok(Method::TwoSat),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

impl Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareVerdict<T> {
    pub decision: Decision,
    /// Present exactly when `decision` is [`Decision::Yes`].
    pub witness: Option<(Vec<T>, Matching)>,
    /// The method that produced the decision (never `Auto`).
    pub method: Method,
}

#[derive(Serialize)]
struct VerdictJson<'a> {
    decision: Decision,
    method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matching: Option<&'a Matching>,
}

impl<T: Symbol> SquareVerdict<T> {
    fn no(method: Method) -> Self {
        SquareVerdict {
            decision: Decision::No,
            witness: None,
            method,
        }
    }

    fn yes(w: &[T], m: Matching, method: Method) -> Self {
        let (u, _) = m
            .extract_halves(w)
            .unwrap_or_else(|v| panic!("{method} produced an invalid matching: {v}"));
        debug_assert!(is_shuffle(&u, &u, w));
        SquareVerdict {
            decision: Decision::Yes,
            witness: Some((u, m)),
            method,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.decision == Decision::Yes
    }

    /// `{decision, method, u?, matching?}`; `encode` renders `u`.
    pub fn to_json(&self, encode: impl Fn(&[T]) -> String) -> String {
        let json = VerdictJson {
            decision: self.decision,
            method: self.method,
            u: self.witness.as_ref().map(|(u, _)| encode(u)),
            matching: self.witness.as_ref().map(|(_, m)| m),
        };
        serde_json::to_string(&json).expect("verdict serialises")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareOptions {
    pub method: Method,
    /// Configuration budget for the automaton search.
    pub budget: usize,
    pub brute_cap: usize,
}

impl Default for SquareOptions {
    fn default() -> Self {
        SquareOptions {
            method: Method::Auto,
            budget: DEFAULT_BUDGET,
            brute_cap: DEFAULT_BRUTE_CAP,
        }
    }
}

fn counts<T: Symbol>(w: &[T]) -> HashMap<T, usize> {
    let mut c = HashMap::new();
    for &s in w {
        *c.entry(s).or_insert(0) += 1;
    }
    c
}

/// The front door: parity rejection, method dispatch, witness validation.
pub fn is_square<T: Symbol>(w: &[T], opts: SquareOptions) -> Result<SquareVerdict<T>> {
    let c = counts(w);
    let method = match opts.method {
        Method::Auto if c.values().all(|&n| n <= TWO_SAT_MAX_OCCURRENCES) => Method::TwoSat,
        Method::Auto => Method::Search,
        m => m,
    };
    if w.len() % 2 == 1 || c.values().any(|n| n % 2 == 1) {
        return Ok(SquareVerdict::no(method));
    }
    let verdict = match method {
        Method::Brute => brute_force_square_capped(w, opts.brute_cap)?,
        Method::TwoSat => two_sat_square(w)?,
        Method::Search => search_square(w, opts.budget),
        Method::Auto => unreachable!(),
    };
    if let Some((u, m)) = &verdict.witness {
        assert_eq!(m.validate(w), Ok(()));
        assert!(is_shuffle(u, u, w));
    }
    debug_assert!(verdict.decision != Decision::Yes || c.values().all(|n| n % 2 == 0));
    Ok(verdict)
}

/// Queue-automaton search; `Unknown` when the budget runs out.
pub fn search_square<T: Symbol>(w: &[T], budget: usize) -> SquareVerdict<T> {
    match queue::accepts(w, budget) {
        SearchOutcome::Accept(trace) => {
            let m = queue::trace_to_matching(w, &trace).expect("search traces accept");
            SquareVerdict::yes(w, m, Method::Search)
        }
        SearchOutcome::Reject => SquareVerdict::no(Method::Search),
        SearchOutcome::BudgetExceeded => SquareVerdict {
            decision: Decision::Unknown,
            witness: None,
            method: Method::Search,
        },
    }
}

/// Exhaustive oracle with the default length cap.
pub fn brute_force_square<T: Symbol>(w: &[T]) -> Result<SquareVerdict<T>> {
    brute_force_square_capped(w, DEFAULT_BRUTE_CAP)
}

/// Tries every choice of `|w|/2` first-copy positions (position 0 always in
/// the first copy) and compares the two projections.
pub fn brute_force_square_capped<T: Symbol>(w: &[T], cap: usize) -> Result<SquareVerdict<T>> {
    let n = w.len();
    if n > cap || n >= 64 {
        return Err(Error::TooLarge { size: n, cap });
    }
    if n % 2 == 1 {
        return Ok(SquareVerdict::no(Method::Brute));
    }
    if n == 0 {
        return Ok(SquareVerdict::yes(w, Matching::empty(), Method::Brute));
    }
    let half = n / 2;
    let rest = n - 1;
    let pick = half - 1;
    let full: u64 = 1 << rest;
    // Gosper's hack over subsets of positions 1..n with `pick` members
    let mut sub: u64 = (1u64 << pick) - 1;
    let mut first = Vec::with_capacity(half);
    let mut second = Vec::with_capacity(half);
    loop {
        let mask = (sub << 1) | 1;
        first.clear();
        second.clear();
        for i in 0..n {
            if mask >> i & 1 == 1 {
                first.push(i);
            } else {
                second.push(i);
            }
        }
        if first.iter().zip(&second).all(|(&a, &b)| w[a] == w[b]) {
            let labels: Vec<Side> = (0..n)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        Side::First
                    } else {
                        Side::Second
                    }
                })
                .collect();
            let m = Matching::from_labels(&labels)?;
            if m.validate(w).is_ok() {
                return Ok(SquareVerdict::yes(w, m, Method::Brute));
            }
        }
        if pick == 0 {
            break;
        }
        let c = sub & sub.wrapping_neg();
        let r = sub + c;
        sub = (((r ^ sub) >> 2) / c) | r;
        if sub >= full {
            break;
        }
    }
    Ok(SquareVerdict::no(Method::Brute))
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    edge: (usize, usize),
    /// `None` for a forced edge, otherwise the literal selecting it.
    lit: Option<Lit>,
    group: usize,
}

fn nests(e: (usize, usize), f: (usize, usize)) -> bool {
    (e.0 < f.0 && f.1 < e.1) || (f.0 < e.0 && e.1 < f.1)
}

/// Exact decision when every symbol occurs two or four times.
///
/// A symbol seen twice contributes one forced edge. A symbol seen four times,
/// at `p1 < p2 < p3 < p4`, chooses between `{(p1,p2),(p3,p4)}` (variable
/// true) and `{(p1,p3),(p2,p4)}` (variable false); its self-nested pairing is
/// never a candidate. Every nesting pair of candidates from different
/// symbols becomes a binary clause.
pub fn two_sat_square<T: Symbol>(w: &[T]) -> Result<SquareVerdict<T>> {
    // stable sort keeps each symbol's positions ascending
    let mut by_symbol: Vec<usize> = (0..w.len()).collect();
    by_symbol.sort_by_key(|&i| w[i]);
    let mut candidates = Vec::with_capacity(w.len());
    let mut vars = 0;
    for (group, positions) in by_symbol.chunk_by(|&i, &j| w[i] == w[j]).enumerate() {
        match positions {
            &[a, b] => candidates.push(Candidate {
                edge: (a, b),
                lit: None,
                group,
            }),
            &[p1, p2, p3, p4] => {
                let var = vars;
                vars += 1;
                for (edge, value) in [
                    ((p1, p2), true),
                    ((p3, p4), true),
                    ((p1, p3), false),
                    ((p2, p4), false),
                ] {
                    candidates.push(Candidate {
                        edge,
                        lit: Some(Lit::new(var, value)),
                        group,
                    });
                }
            }
            other => {
                return Err(Error::NotApplicable(format!(
                    "symbol {:?} occurs {} times; two-sat needs 2 or 4",
                    w[other[0]],
                    other.len()
                )))
            }
        }
    }

    // sorted by left end, an edge can only nest inside an earlier one that is still open
    candidates.sort_by_key(|c| c.edge);
    let mut sat = TwoSat::new(vars);
    for (i, e) in candidates.iter().enumerate() {
        for f in candidates[i + 1..]
            .iter()
            .take_while(|f| f.edge.0 < e.edge.1)
        {
            if e.group == f.group || !nests(e.edge, f.edge) {
                continue;
            }
            match (e.lit, f.lit) {
                (None, None) => return Ok(SquareVerdict::no(Method::TwoSat)),
                (Some(a), None) | (None, Some(a)) => sat.unit(Lit::new(a.var, !a.value)),
                (Some(a), Some(b)) => sat.forbid(a, b),
            }
        }
    }
    let Some(assignment) = sat.solve() else {
        return Ok(SquareVerdict::no(Method::TwoSat));
    };
    let edges = candidates.iter().filter(|c| match c.lit {
        None => true,
        Some(l) => assignment[l.var] == l.value,
    });
    let m = Matching::new(edges.map(|c| c.edge))?;
    // clauses rule out nesting; checked again before the witness leaves
    m.validate(w)
        .unwrap_or_else(|v| panic!("two-sat assignment produced {v}"));
    Ok(SquareVerdict::yes(w, m, Method::TwoSat))
}
