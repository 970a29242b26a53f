//! Many-one reduction from 3-Partition to Square.
//!
//! For a normalised instance `S = <n_1 >= ... >= n_3m>` with target `B` the
//! reduction emits `w_S = load · dist · ver` over the nine-symbol alphabet:
//!
//! ```text
//! load = e0 (b^{2B} e)^m
//! dist = e0 ((a1 b^B a2)^3 e)^m
//! ver  = Π_{k=1..3m} v_{4k-3} D_k v_{4k-3}  v_{4k-2} D_k v_{4k-2}
//!                    v_{4k-1} E_k v_{4k-1}  v_{4k}   F_k v_{4k}
//!
//! v_l = c1 x^l y^l c2        U_l = a1^2 b^l a2^2
//! D_k = U_{n_k}^{3m-k+1}     F_k = U_B^{2(3m-k)}
//! E_k = U_B^{3m-k} a1 b^{n_k} a2 U_B^{3m-k}
//! ```
//!
//! `w_S` is a square exactly when `S` is a yes-instance. For yes-instances
//! [`synthesize_witness`] writes out an accepting computation of the queue
//! automaton step by step.

use std::thread;

use serde::Serialize;

use crate::alphabet::sigma::{A1, A2, B, C1, C2, E, E0, X, Y};
use crate::alphabet::{Alphabet, Sym, Word};
use crate::error::{Error, Result};
use crate::matching::Matching;
use crate::partition::{self, PartitionInstance, PartitionSolution};
use crate::queue::{self, Action, Config, SearchOutcome, Step, Trace};

fn rep(out: &mut Vec<Sym>, s: Sym, n: usize) {
    out.extend(std::iter::repeat_n(s, n));
}

/// `v_l = c1 x^l y^l c2`.
pub fn v_block(l: usize) -> Vec<Sym> {
    let mut out = Vec::with_capacity(2 * l + 2);
    out.push(C1);
    rep(&mut out, X, l);
    rep(&mut out, Y, l);
    out.push(C2);
    out
}

/// `U_l = a1^2 b^l a2^2`.
pub fn u_block(l: usize) -> Vec<Sym> {
    let mut out = Vec::with_capacity(l + 4);
    rep(&mut out, A1, 2);
    rep(&mut out, B, l);
    rep(&mut out, A2, 2);
    out
}

fn u_power(l: usize, times: usize) -> Vec<Sym> {
    u_block(l).repeat(times)
}

/// The three per-round gadgets for index `k` (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadgets {
    pub d: Vec<Sym>,
    pub e: Vec<Sym>,
    pub f: Vec<Sym>,
}

pub fn build_gadgets(inst: &PartitionInstance, k: usize) -> Result<Gadgets> {
    let rounds = 3 * inst.m;
    if k == 0 || k > rounds {
        return Err(Error::GadgetIndex { k, max: rounds });
    }
    let nk = inst.values[k - 1] as usize;
    let big = inst.target as usize;
    let t = rounds - k;
    let d = u_power(nk, t + 1);
    let mut e = u_power(big, t);
    e.push(A1);
    rep(&mut e, B, nk);
    e.push(A2);
    e.extend(u_power(big, t));
    let f = u_power(big, 2 * t);
    Ok(Gadgets { d, e, f })
}

/// Half-open range of `w_S` occupied by one named part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Span {
    pub name: String,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub word: Word,
    /// Consecutive, covering `word` exactly: `load`, `dist`, then every
    /// gadget occurrence of `ver` (`v5.1`, `D2.1`, `v5.2`, ..., `F3`).
    pub spans: Vec<Span>,
}

impl ReductionOutput {
    pub fn span(&self, name: &str) -> Option<&Span> {
        self.spans.iter().find(|s| s.name == name)
    }

    pub fn slice(&self, name: &str) -> Option<&[Sym]> {
        self.span(name).map(|s| &self.word[s.start..s.end])
    }

    /// Start of the verifier part.
    pub fn ver_start(&self) -> usize {
        self.span("dist").map(|s| s.end).unwrap_or(0)
    }

    pub fn spans_json(&self) -> String {
        serde_json::to_string(&self.spans).expect("spans serialise")
    }
}

struct Builder {
    syms: Vec<Sym>,
    spans: Vec<Span>,
}

impl Builder {
    fn part(&mut self, name: String, syms: &[Sym]) {
        let start = self.syms.len();
        self.syms.extend_from_slice(syms);
        self.spans.push(Span {
            name,
            start,
            end: self.syms.len(),
        });
    }
}

pub fn build_reduction(inst: &PartitionInstance) -> ReductionOutput {
    let big = inst.target as usize;
    let mut b = Builder {
        syms: Vec::new(),
        spans: Vec::new(),
    };

    let mut load = vec![E0];
    for _ in 0..inst.m {
        rep(&mut load, B, 2 * big);
        load.push(E);
    }
    b.part("load".into(), &load);

    let mut dist = vec![E0];
    for _ in 0..inst.m {
        for _ in 0..3 {
            dist.push(A1);
            rep(&mut dist, B, big);
            dist.push(A2);
        }
        dist.push(E);
    }
    b.part("dist".into(), &dist);

    for k in 1..=3 * inst.m {
        let g = build_gadgets(inst, k).expect("k in range");
        let rounds: [(usize, &[Sym], String); 4] = [
            (4 * k - 3, &g.d, format!("D{k}.1")),
            (4 * k - 2, &g.d, format!("D{k}.2")),
            (4 * k - 1, &g.e, format!("E{k}")),
            (4 * k, &g.f, format!("F{k}")),
        ];
        for (l, body, name) in rounds {
            let v = v_block(l);
            b.part(format!("v{l}.1"), &v);
            b.part(name, body);
            b.part(format!("v{l}.2"), &v);
        }
    }

    ReductionOutput {
        word: Word::new(Alphabet::reduction(), b.syms).expect("reduction symbols"),
        spans: b.spans,
    }
}

/// `V = v_l v_l ... v_2 v_2 v_1 v_1`, empty for `l = 0`.
pub fn build_v_gadget(l: usize) -> Word {
    let mut syms = Vec::new();
    for j in (1..=l).rev() {
        let v = v_block(j);
        syms.extend_from_slice(&v);
        syms.extend_from_slice(&v);
    }
    Word::new(Alphabet::reduction(), syms).expect("reduction symbols")
}

/// The matching that pairs the two copies of each `v_j` in [`build_v_gadget`].
pub fn canonical_v_matching(l: usize) -> Matching {
    let mut pairs = Vec::new();
    let mut at = 0;
    for j in (1..=l).rev() {
        let len = 2 * j + 2;
        pairs.extend((0..len).map(|i| (at + i, at + len + i)));
        at += 2 * len;
    }
    Matching::new(pairs).expect("distinct endpoints")
}

/// Block sizes `<i_k>` left on the queue by the distributor: one
/// `a1 b^{i_k} a2` per entry, with consecutive triples summing to `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment(pub Vec<u32>);

impl Assignment {
    pub fn from_solution(inst: &PartitionInstance, sol: &PartitionSolution) -> Self {
        Assignment(sol.group_values(inst).into_iter().flatten().collect())
    }

    pub fn is_valid(&self, inst: &PartitionInstance) -> bool {
        self.0.len() == 3 * inst.m
            && self
                .0
                .chunks(3)
                .all(|c| c.iter().map(|&v| u64::from(v)).sum::<u64>() == u64::from(inst.target))
    }

    /// The queue contents `Π (a1 b^{i_k} a2)`.
    pub fn queue_word(&self) -> Vec<Sym> {
        let mut out = Vec::new();
        for &i in &self.0 {
            out.push(A1);
            rep(&mut out, B, i as usize);
            out.push(A2);
        }
        out
    }
}

/// Records an accepting computation while stepping through `w_S`.
struct Driver<'a> {
    w: &'a [Sym],
    config: Config<Sym>,
    steps: Vec<Step<Sym>>,
}

impl Driver<'_> {
    fn act(&mut self, action: Action, n: usize) -> Result<()> {
        for _ in 0..n {
            let s = *self.w.get(self.config.cursor).ok_or(Error::NoInput)?;
            self.config.apply(self.w, action)?;
            self.steps.push(match action {
                Action::Push => Step::Push(s),
                Action::Match => Step::Match(s),
            });
        }
        Ok(())
    }

    fn push(&mut self, n: usize) -> Result<()> {
        self.act(Action::Push, n)
    }

    fn matched(&mut self, n: usize) -> Result<()> {
        self.act(Action::Match, n)
    }

    /// Input `U_len = a1^2 b^len a2^2` consumed by the queue block
    /// `a1 b^held a2`, leaving `a1 b^{len-held} a2` behind.
    fn consume_u(&mut self, held: usize, len: usize) -> Result<()> {
        self.matched(1)?;
        self.push(1)?;
        self.matched(held)?;
        self.push(len - held)?;
        self.matched(1)?;
        self.push(1)
    }
}

/// Builds an accepting trace of `w_S` from a 3-Partition solution.
///
/// Phases: the loader is pushed whole; the distributor turns each `b^{2B}`
/// on the queue into three blocks `a1 b^{i} a2` realising the solution's
/// triples; then for each round `k` the two `D_k` passes leave the blocks
/// unchanged, `E_k` fully cancels the first block of maximal size `n_k`, and
/// `F_k` restores the survivors.
pub fn synthesize_witness(inst: &PartitionInstance, sol: &PartitionSolution) -> Result<Trace<Sym>> {
    if !partition::check(inst, sol) {
        return Err(Error::InvalidSolution(format!(
            "{sol:?} does not solve the instance"
        )));
    }
    let out = build_reduction(inst);
    let w = out.word.syms();
    let big = inst.target as usize;
    let mut dr = Driver {
        w,
        config: Config::initial(),
        steps: Vec::with_capacity(w.len()),
    };

    // loader: queue becomes e0 (b^{2B} e)^m
    dr.push(out.span("load").map_or(0, |s| s.end))?;

    // distributor
    let assignment = Assignment::from_solution(inst, sol);
    dr.matched(1)?;
    for triple in assignment.0.chunks(3) {
        for &i in triple {
            dr.push(1)?;
            dr.matched(big - i as usize)?;
            dr.push(i as usize)?;
            dr.push(1)?;
        }
        dr.matched(1)?;
    }

    // verifier
    let mut blocks: Vec<usize> = assignment.0.iter().map(|&v| v as usize).collect();
    for k in 1..=3 * inst.m {
        let nk = inst.values[k - 1] as usize;
        let t = 3 * inst.m - k;
        let v_len = |l: usize| 2 * l + 2;

        // D_k twice: blocks i -> n_k - i -> i
        for l in [4 * k - 3, 4 * k - 2] {
            dr.push(v_len(l))?;
            for b in blocks.iter_mut() {
                dr.consume_u(*b, nk)?;
                *b = nk - *b;
            }
            dr.matched(v_len(l))?;
        }

        // E_k: first maximal block J is matched outright against a1 b^{n_k} a2
        let max = *blocks.iter().max().expect("one block per remaining round");
        let j = blocks.iter().position(|&b| b == max).expect("max exists");
        if max != nk {
            return Err(Error::InvalidSolution(format!(
                "round {k}: largest block {max} differs from n_k = {nk}"
            )));
        }
        let l = 4 * k - 1;
        dr.push(v_len(l))?;
        for &b in &blocks[..j] {
            dr.consume_u(b, big)?;
        }
        dr.push((t - j) * (big + 4))?;
        dr.matched(nk + 2)?;
        dr.push(j * (big + 4))?;
        for &b in &blocks[j + 1..] {
            dr.consume_u(b, big)?;
        }
        dr.matched(v_len(l))?;
        // queue: (B - i) blocks before J, U_B^t, (B - i) blocks after J
        blocks.remove(j);

        // F_k: restore the complements, cancel U_B^t outright
        let l = 4 * k;
        dr.push(v_len(l))?;
        for &b in &blocks[..j] {
            dr.consume_u(big - b, big)?;
        }
        dr.matched(t * (big + 4))?;
        for &b in &blocks[j..] {
            dr.consume_u(big - b, big)?;
        }
        dr.matched(v_len(l))?;
    }

    let trace = Trace::new(dr.steps);
    if !dr.config.is_accepting(w) {
        return Err(Error::InvalidTrace(
            "synthesised computation did not accept".into(),
        ));
    }
    Ok(trace)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchResult {
    Accept,
    Reject,
    BudgetExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Agreement {
    /// Solver says yes; search accepted or ran out of budget.
    Consistent,
    /// Solver says no; search rejected or ran out of budget.
    ConsistentWithNo,
    /// Solver and search disagree outright.
    Contradiction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub values: Vec<u32>,
    pub m: usize,
    #[serde(rename = "B")]
    pub target: u32,
    pub length: usize,
    pub solvable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<PartitionSolution>,
    /// Whether the synthesised trace replays to acceptance; absent for no-instances.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_valid: Option<bool>,
    pub search: SearchResult,
    pub search_visited: usize,
    pub agreement: Agreement,
}

/// Runs solver, witness synthesis and a budgeted automaton search on `w_S`
/// and cross-checks them. The search runs on its own thread.
pub fn verify_reduction_instance(inst: &PartitionInstance, budget: usize) -> Result<VerifyReport> {
    let out = build_reduction(inst);
    let w = out.word.syms();
    let (solved, (outcome, stats)) = thread::scope(|scope| {
        let search = scope.spawn(|| queue::accepts_with_stats(w, budget));
        let solved = partition::solve(inst).map(|sol| {
            let valid = sol.as_ref().map(|s| {
                synthesize_witness(inst, s)
                    .map(|t| t.accepts(w) && queue::trace_to_matching(w, &t).is_ok())
                    .unwrap_or(false)
            });
            (sol, valid)
        });
        (solved, search.join().expect("search thread"))
    });
    let (solution, witness_valid) = solved?;
    let search = match outcome {
        SearchOutcome::Accept(_) => SearchResult::Accept,
        SearchOutcome::Reject => SearchResult::Reject,
        SearchOutcome::BudgetExceeded => SearchResult::BudgetExceeded,
    };
    let solvable = solution.is_some();
    let agreement = match (solvable, search) {
        (true, SearchResult::Reject) | (false, SearchResult::Accept) => Agreement::Contradiction,
        (true, _) if witness_valid == Some(false) => Agreement::Contradiction,
        (true, _) => Agreement::Consistent,
        (false, _) => Agreement::ConsistentWithNo,
    };
    Ok(VerifyReport {
        values: inst.values.clone(),
        m: inst.m,
        target: inst.target,
        length: w.len(),
        solvable,
        solution,
        witness_valid,
        search,
        search_visited: stats.visited,
        agreement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(v: &[u32]) -> PartitionInstance {
        PartitionInstance::normalize(v).unwrap()
    }

    #[test]
    fn gadget_examples() {
        let s = inst(&[2, 1, 1]);
        let g = build_gadgets(&s, 3).unwrap();
        assert_eq!(g.d, Word::sigma("a1 a1 b a2 a2").into_syms());
        assert!(g.f.is_empty());
        assert_eq!(v_block(2), Word::sigma("c1 x x y y c2").into_syms());
        let g = build_gadgets(&s, 1).unwrap();
        assert_eq!(
            g.e,
            Word::sigma(
                "a1 a1 b b b b a2 a2 a1 a1 b b b b a2 a2 a1 b b a2 \
             a1 a1 b b b b a2 a2 a1 a1 b b b b a2 a2"
            )
            .into_syms()
        );
        assert_eq!(
            build_gadgets(&s, 0),
            Err(Error::GadgetIndex { k: 0, max: 3 })
        );
        assert!(build_gadgets(&s, 4).is_err());
    }

    #[test]
    fn e_gadget_single_round() {
        // m = 1, k = 3 leaves no U_B padding: E_3 = a1 b^{n_3} a2
        let s = inst(&[2, 1, 1]);
        let g = build_gadgets(&s, 3).unwrap();
        assert_eq!(g.e, Word::sigma("a1 b a2").into_syms());
    }

    #[test]
    fn parts_of_small_instance() {
        let out = build_reduction(&inst(&[2, 1, 1]));
        assert_eq!(
            out.slice("load").unwrap(),
            Word::sigma("e0 b b b b b b b b e").syms()
        );
        let dist = Word::sigma("e0 a1 b b b b a2 a1 b b b b a2 a1 b b b b a2 e");
        assert_eq!(out.slice("dist").unwrap(), dist.syms());
        let names: Vec<&str> = out
            .spans
            .iter()
            .skip(2)
            .take(3)
            .map(|s| s.name.as_str())
            .collect();
        assert_eq!(names, ["v1.1", "D1.1", "v1.2"]);
        assert_eq!(out.slice("D1.1").unwrap(), u_power(2, 3).as_slice());
        assert_eq!(out.slice("v1.1").unwrap(), v_block(1).as_slice());
    }

    #[test]
    fn spans_tile_the_word() {
        let out = build_reduction(&inst(&[3, 1, 1, 1, 1, 1]));
        let mut at = 0;
        for s in &out.spans {
            assert_eq!(s.start, at);
            at = s.end;
        }
        assert_eq!(at, out.word.len());
    }

    #[test]
    fn v_gadget() {
        assert_eq!(build_v_gadget(1), Word::sigma("c1 x y c2 c1 x y c2"));
        assert_eq!(
            build_v_gadget(2),
            Word::sigma("c1 x x y y c2 c1 x x y y c2 c1 x y c2 c1 x y c2")
        );
        assert_eq!(build_v_gadget(3).len(), 36);
        let v = build_v_gadget(3);
        assert_eq!(canonical_v_matching(3).validate(v.syms()), Ok(()));
    }

    #[test]
    fn witness_small() {
        let s = inst(&[2, 1, 1]);
        let sol = partition::solve(&s).unwrap().unwrap();
        let trace = synthesize_witness(&s, &sol).unwrap();
        let out = build_reduction(&s);
        assert!(trace.accepts(out.word.syms()));
        // after the loader: e0 b^8 e || dist ver
        let load = Trace::new(trace.steps[..10].to_vec());
        let c = load.replay(out.word.syms()).unwrap();
        assert_eq!(
            c.queue.iter().copied().collect::<Vec<_>>(),
            Word::sigma("e0 b b b b b b b b e").into_syms()
        );
        assert_eq!(c.cursor, 10);
    }

    #[test]
    fn witness_rejects_bad_solution() {
        let s = inst(&[3, 2, 1, 2, 2, 2]);
        let bad = PartitionSolution {
            groups: vec![[0, 1, 3], [2, 4, 5]],
        };
        assert!(matches!(
            synthesize_witness(&s, &bad),
            Err(Error::InvalidSolution(_))
        ));
    }
}
