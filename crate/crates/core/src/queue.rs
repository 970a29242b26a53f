//! The nondeterministic queue automaton that recognises squares.
//!
//! Reading `w` left to right, each input symbol is either pushed onto the
//! tail of a FIFO queue or, when it equals the symbol at the head, matched
//! against it and the head is popped. `w` is accepted when input and queue
//! run out together. A configuration is the pair (queue contents, unread
//! suffix), written `Q || x`.
//!
//! The search is a depth-first walk over configurations keyed by
//! `(cursor, queue contents)`. Match is tried before Push. A single mutable
//! queue is shared along the walk and restored on backtrack.

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use crate::alphabet::{Alphabet, Sym};
use crate::error::{Error, Result};
use crate::matching::Matching;

/// Default cap on distinct configurations visited by a search.
pub const DEFAULT_BUDGET: usize = 10_000_000;

/// Symbol types the automaton can run over.
pub trait Symbol: Copy + Eq + Hash + Ord + fmt::Debug {
    fn index(self) -> usize;
}

impl Symbol for u8 {
    fn index(self) -> usize {
        self as usize
    }
}

impl Symbol for Sym {
    fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    Push,
    Match,
}

/// One consumed input symbol, with the action taken on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step<T> {
    Push(T),
    Match(T),
}

impl<T: Copy> Step<T> {
    pub fn action(self) -> Action {
        match self {
            Step::Push(_) => Action::Push,
            Step::Match(_) => Action::Match,
        }
    }

    pub fn symbol(self) -> T {
        match self {
            Step::Push(s) | Step::Match(s) => s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Trace<T> {
    pub steps: Vec<Step<T>>,
}

impl<T: Symbol> Trace<T> {
    pub fn new(steps: Vec<Step<T>>) -> Self {
        Trace { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the trace from `ε || w`, checking every step; returns the final configuration.
    pub fn replay(&self, w: &[T]) -> Result<Config<T>> {
        let mut c = Config::initial();
        for (i, st) in self.steps.iter().enumerate() {
            match w.get(i) {
                Some(&s) if s == st.symbol() => {}
                Some(_) => {
                    return Err(Error::InvalidTrace(format!(
                        "step {i} names {:?} but input has {:?}",
                        st.symbol(),
                        w[i]
                    )))
                }
                None => return Err(Error::NoInput),
            }
            c.apply(w, st.action())?;
        }
        Ok(c)
    }

    /// True iff the trace replays on `w` and ends in `ε || ε`.
    pub fn accepts(&self, w: &[T]) -> bool {
        self.replay(w).map(|c| c.is_accepting(w)).unwrap_or(false)
    }
}

impl Trace<Sym> {
    /// One step per line: `P <sym>` or `M <sym>`.
    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for st in &self.steps {
            let (tag, s) = match st {
                Step::Push(s) => ('P', *s),
                Step::Match(s) => ('M', *s),
            };
            out.push(tag);
            out.push(' ');
            out.push_str(alphabet.name(s));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let mut steps = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |column: usize, message: String| Error::Parse {
                line: lineno + 1,
                column,
                message,
            };
            let mut parts = line.split_whitespace();
            let tag = parts.next().unwrap_or_default();
            let sym = parts
                .next()
                .ok_or_else(|| err(tag.len() + 1, "missing symbol".into()))?;
            if parts.next().is_some() {
                return Err(err(line.len(), "trailing tokens".into()));
            }
            let s = alphabet
                .lookup(sym)
                .map_err(|e| err(tag.len() + 2, e.to_string()))?;
            steps.push(match tag {
                "P" => Step::Push(s),
                "M" => Step::Match(s),
                other => return Err(err(1, format!("unknown step `{other}`"))),
            });
        }
        Ok(Trace { steps })
    }
}

/// Snapshot `Q || x`: queue contents (head first) and the index of the next unread symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Config<T> {
    pub queue: VecDeque<T>,
    pub cursor: usize,
}

impl<T: Symbol> Config<T> {
    pub fn initial() -> Self {
        Config {
            queue: VecDeque::new(),
            cursor: 0,
        }
    }

    pub fn is_accepting(&self, w: &[T]) -> bool {
        self.queue.is_empty() && self.cursor == w.len()
    }

    /// The successor configuration under `action`.
    pub fn step(&self, w: &[T], action: Action) -> Result<Config<T>> {
        let mut next = self.clone();
        next.apply(w, action)?;
        Ok(next)
    }

    /// In-place version of [`Config::step`]; leaves `self` unchanged on error.
    pub fn apply(&mut self, w: &[T], action: Action) -> Result<()> {
        let &s = w.get(self.cursor).ok_or(Error::NoInput)?;
        match action {
            Action::Push => self.queue.push_back(s),
            Action::Match => match self.queue.front() {
                Some(&h) if h == s => {
                    self.queue.pop_front();
                }
                Some(&h) => {
                    return Err(Error::IllegalStep {
                        position: self.cursor,
                        reason: format!("queue head {h:?} differs from input {s:?}"),
                    })
                }
                None => {
                    return Err(Error::IllegalStep {
                        position: self.cursor,
                        reason: "queue is empty".into(),
                    })
                }
            },
        }
        self.cursor += 1;
        Ok(())
    }
}

/// Result of a budgeted acceptance search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Accept(Trace<T>),
    Reject,
    BudgetExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn is_accept(&self) -> bool {
        matches!(self, SearchOutcome::Accept(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetExceeded;

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("configuration budget exceeded")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    /// Distinct configurations inserted into the visited table.
    pub visited: usize,
    /// Whole reachable closure was explored (no budget cut-off, no early stop).
    pub complete: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    Open,
    Dead,
}

struct Search<'w, T> {
    w: &'w [T],
    budget: usize,
    table: HashMap<(u32, Box<[T]>), Mark>,
    queue: VecDeque<T>,
    cursor: usize,
    /// `remaining[s] - 2 * queued[s]`-style slack: unread copies of `s` minus queued copies.
    slack: Vec<i64>,
    /// `next[i * width + s]`: first position `>= i` holding `s`, or `w.len()`.
    next: Vec<u32>,
    width: usize,
    path: Vec<Step<T>>,
    found: Vec<Trace<T>>,
    limit: usize,
    exhausted: bool,
    /// Cursor from which a possible Match is the only move tried.
    horizon: usize,
    /// Configurations visited by earlier rounds, charged to the budget.
    spent: usize,
}

impl<'w, T: Symbol> Search<'w, T> {
    fn new(w: &'w [T], budget: usize, limit: usize) -> Self {
        let size = w.iter().map(|s| s.index() + 1).max().unwrap_or(0);
        let mut slack = vec![0i64; size];
        for s in w {
            slack[s.index()] += 1;
        }
        let width = size;
        let mut next = vec![w.len() as u32; (w.len() + 1) * width];
        for i in (0..w.len()).rev() {
            let (head, tail) = next.split_at_mut((i + 1) * width);
            head[i * width..].copy_from_slice(&tail[..width]);
            head[i * width + w[i].index()] = i as u32;
        }
        Search {
            w,
            next,
            width,
            budget,
            table: HashMap::new(),
            queue: VecDeque::new(),
            cursor: 0,
            slack,
            path: Vec::new(),
            found: Vec::new(),
            limit,
            exhausted: false,
            horizon: usize::MAX,
            spent: 0,
        }
    }

    /// Every queued symbol is matched later, in queue order, so the queue
    /// must be a subsequence of the unread input.
    fn queue_fits(&self) -> bool {
        self.embeds(&self.queue, self.cursor)
    }

    fn embeds(&self, queue: &VecDeque<T>, cursor: usize) -> bool {
        let n = self.w.len();
        let mut i = cursor;
        for s in queue {
            if i >= n {
                return false;
            }
            i = self.next[i * self.width + s.index()] as usize;
            if i >= n {
                return false;
            }
            i += 1;
        }
        true
    }

    /// Starts the walk at `config` instead of the initial configuration;
    /// `None` when some symbol is queued more often than it remains unread.
    fn resume(mut self, config: &Config<T>) -> Option<Self> {
        for s in &config.queue {
            *self.slack.get_mut(s.index())? -= 1;
        }
        for s in &self.w[..config.cursor.min(self.w.len())] {
            self.slack[s.index()] -= 1;
        }
        if config.cursor > self.w.len() || self.slack.iter().any(|&v| v < 0) {
            return None;
        }
        self.queue = config.queue.clone();
        self.cursor = config.cursor;
        Some(self)
    }

    fn key(&self) -> (u32, Box<[T]>) {
        (self.cursor as u32, self.queue.iter().copied().collect())
    }

    /// Explores the current configuration. Returns whether an accepting
    /// computation passes through it, or `Err` when the budget or result
    /// limit stops the walk.
    fn explore(&mut self) -> std::result::Result<bool, BudgetExceeded> {
        if self.cursor == self.w.len() {
            if self.queue.is_empty() {
                // later rounds of a deepening walk meet earlier finds again
                let trace = Trace::new(self.path.clone());
                if !self.found.contains(&trace) {
                    self.found.push(trace);
                }
                if self.found.len() >= self.limit {
                    self.exhausted = true;
                    return Err(BudgetExceeded);
                }
                return Ok(true);
            }
            return Ok(false);
        }
        if !self.queue_fits() {
            return Ok(false);
        }
        let key = self.key();
        let full = self.spent + self.table.len() >= self.budget;
        match self.table.entry(key) {
            Entry::Occupied(e) => {
                if *e.get() == Mark::Dead {
                    return Ok(false);
                }
            }
            Entry::Vacant(e) => {
                if full {
                    return Err(BudgetExceeded);
                }
                e.insert(Mark::Open);
            }
        }
        let s = self.w[self.cursor];
        let can_match = self.queue.front() == Some(&s);
        let mut accepted = false;

        if can_match {
            self.queue.pop_front();
            self.cursor += 1;
            self.path.push(Step::Match(s));
            let r = self.explore();
            self.path.pop();
            self.cursor -= 1;
            self.queue.push_front(s);
            accepted |= r?;
        }

        // pushing s needs a later copy of s to match it; past the horizon
        // a possible match is never second-guessed
        let branch = !can_match || self.cursor < self.horizon;
        if branch && self.slack[s.index()] >= 2 {
            self.slack[s.index()] -= 2;
            self.queue.push_back(s);
            self.cursor += 1;
            self.path.push(Step::Push(s));
            let r = self.explore();
            self.path.pop();
            self.cursor -= 1;
            self.queue.pop_back();
            self.slack[s.index()] += 2;
            accepted |= r?;
        }

        if !accepted {
            let key = self.key();
            self.table.insert(key, Mark::Dead);
        }
        Ok(accepted)
    }

    fn stats(&self, complete: bool) -> SearchStats {
        SearchStats {
            visited: self.spent + self.table.len(),
            complete,
        }
    }
}

fn parity_ok<T: Symbol>(w: &[T]) -> bool {
    let mut odd = HashMap::new();
    for s in w {
        *odd.entry(*s).or_insert(false) ^= true;
    }
    odd.values().all(|&o| !o)
}

/// Decides whether the automaton accepts `w`, visiting at most `budget` configurations.
pub fn accepts<T: Symbol>(w: &[T], budget: usize) -> SearchOutcome<T> {
    accepts_with_stats(w, budget).0
}

pub fn accepts_with_stats<T: Symbol>(w: &[T], budget: usize) -> (SearchOutcome<T>, SearchStats) {
    if !parity_ok(w) {
        return (
            SearchOutcome::Reject,
            SearchStats {
                visited: 0,
                complete: true,
            },
        );
    }
    deepen(Search::new(w, budget.max(1), 1), &Config::initial())
}

/// Continues the search from `config`. An accepting trace lists only the
/// steps taken after `config.cursor`.
pub fn accepts_from<T: Symbol>(
    w: &[T],
    config: &Config<T>,
    budget: usize,
) -> (SearchOutcome<T>, SearchStats) {
    match Search::new(w, budget.max(1), 1).resume(config) {
        Some(search) => deepen(search, config),
        None => (
            SearchOutcome::Reject,
            SearchStats {
                visited: 0,
                complete: true,
            },
        ),
    }
}

/// First horizon tried by [`deepen`].
const FIRST_HORIZON: usize = 16;

/// Runs rounds of the search with a doubling horizon: before it both moves
/// are explored, after it a Match is taken whenever one is possible. A
/// round may find a trace but never proves rejection; the last round has no
/// horizon and is the exact search. Every round is charged to one budget.
fn deepen<T: Symbol>(
    mut search: Search<'_, T>,
    start: &Config<T>,
) -> (SearchOutcome<T>, SearchStats) {
    let mut horizon = start.cursor + FIRST_HORIZON;
    loop {
        let last = horizon >= search.w.len();
        search.horizon = if last { usize::MAX } else { horizon };
        match search.explore() {
            Ok(true) => unreachable!("search stops at the first accepting trace"),
            Ok(false) if last => return (SearchOutcome::Reject, search.stats(true)),
            Ok(false) => {
                search.spent += search.table.len();
                search.table.clear();
                horizon *= 2;
            }
            Err(_) if search.exhausted => {
                let stats = search.stats(false);
                return (
                    SearchOutcome::Accept(search.found.pop().expect("trace recorded")),
                    stats,
                );
            }
            Err(_) => return (SearchOutcome::BudgetExceeded, search.stats(false)),
        }
    }
}

/// Accepting traces of `w`, up to `limit` of them. `Ok` means the list is
/// complete; `Err(partial)` means the budget or the limit cut the walk short.
#[allow(clippy::type_complexity)]
pub fn accepting_traces<T: Symbol>(
    w: &[T],
    budget: usize,
    limit: usize,
) -> std::result::Result<Vec<Trace<T>>, Vec<Trace<T>>> {
    if !parity_ok(w) {
        return Ok(Vec::new());
    }
    let mut search = Search::new(w, budget.max(1), limit.max(1));
    let mut horizon = FIRST_HORIZON;
    loop {
        let last = horizon >= w.len();
        search.horizon = if last { usize::MAX } else { horizon };
        match search.explore() {
            Ok(_) if last => return Ok(search.found),
            Ok(_) => {
                search.spent += search.table.len();
                search.table.clear();
                horizon *= 2;
            }
            Err(_) => return Err(search.found),
        }
    }
}

/// Queue contents of every configuration at `cursor` that the search would
/// keep: reachable from the start and not yet ruled out by symbol counts or
/// by the queue failing to embed in the unread input.
pub fn configurations_at<T: Symbol>(
    w: &[T],
    cursor: usize,
    budget: usize,
) -> std::result::Result<BTreeSet<Vec<T>>, BudgetExceeded> {
    let probe = Search::new(w, 1, 1);
    let mut slack = probe.slack.clone();
    let mut layer: HashSet<VecDeque<T>> = HashSet::from([VecDeque::new()]);
    let mut seen = 1usize;
    for (i, &s) in w.iter().enumerate().take(cursor) {
        slack[s.index()] -= 1;
        let mut next = HashSet::new();
        for q in layer {
            let mut candidates = Vec::with_capacity(2);
            if q.front() == Some(&s) {
                let mut m = q.clone();
                m.pop_front();
                candidates.push(m);
            }
            let queued = q.iter().filter(|&&t| t == s).count() as i64;
            if slack[s.index()] > queued {
                let mut p = q;
                p.push_back(s);
                candidates.push(p);
            }
            for c in candidates {
                if probe.embeds(&c, i + 1) && next.insert(c) {
                    seen += 1;
                    if seen > budget {
                        return Err(BudgetExceeded);
                    }
                }
            }
        }
        layer = next;
    }
    Ok(layer.into_iter().map(Vec::from).collect())
}

/// Every matching induced by an accepting computation of `w`.
pub fn enumerate_matchings<T: Symbol>(
    w: &[T],
    budget: usize,
) -> std::result::Result<BTreeSet<Matching>, BudgetExceeded> {
    let traces = accepting_traces(w, budget, usize::MAX).map_err(|_| BudgetExceeded)?;
    Ok(traces
        .iter()
        .map(|t| trace_to_matching(w, t).expect("search traces accept"))
        .collect())
}

/// Pairs each pushed position with the position whose Match popped it.
pub fn trace_to_matching<T: Symbol>(w: &[T], trace: &Trace<T>) -> Result<Matching> {
    let end = trace.replay(w)?;
    if !end.is_accepting(w) {
        return Err(Error::InvalidTrace(format!(
            "trace ends with {} queued symbols and {} unread",
            end.queue.len(),
            w.len() - end.cursor
        )));
    }
    let mut pending = VecDeque::new();
    let mut pairs = Vec::with_capacity(w.len() / 2);
    for (pos, st) in trace.steps.iter().enumerate() {
        match st {
            Step::Push(_) => pending.push_back(pos),
            Step::Match(_) => pairs.push((pending.pop_front().expect("replayed"), pos)),
        }
    }
    Matching::new(pairs)
}

/// The accepting trace that realises a valid matching: smaller endpoints are
/// pushed, larger endpoints matched.
pub fn matching_to_trace<T: Symbol>(w: &[T], m: &Matching) -> Result<Trace<T>> {
    m.validate(w)?;
    let mut steps: Vec<Step<T>> = w.iter().map(|&s| Step::Match(s)).collect();
    for &(j, _) in m.pairs() {
        steps[j] = Step::Push(w[j]);
    }
    Ok(Trace::new(steps))
}

/// All resultants `z` left on the queue when `x` is consumed by the queue
/// segment `u`: the matched symbols of `x` spell `u`, the pushed ones `z`.
pub fn consume<T: Symbol>(u: &[T], x: &[T]) -> BTreeSet<Vec<T>> {
    fn go<T: Symbol>(
        u: &[T],
        x: &[T],
        i: usize,
        j: usize,
        fits: &[Vec<bool>],
        acc: &mut Vec<T>,
        out: &mut BTreeSet<Vec<T>>,
    ) {
        if !fits[i][j] {
            return;
        }
        if j == x.len() {
            out.insert(acc.clone());
            return;
        }
        if i < u.len() && u[i] == x[j] {
            go(u, x, i + 1, j + 1, fits, acc, out);
        }
        acc.push(x[j]);
        go(u, x, i, j + 1, fits, acc, out);
        acc.pop();
    }
    // fits[i][j]: u[i..] is a subsequence of x[j..]
    let mut fits = vec![vec![false; x.len() + 1]; u.len() + 1];
    fits[u.len()].fill(true);
    for i in (0..u.len()).rev() {
        for j in (0..x.len()).rev() {
            fits[i][j] = fits[i][j + 1] || (u[i] == x[j] && fits[i + 1][j + 1]);
        }
    }
    let mut out = BTreeSet::new();
    go(u, x, 0, 0, &fits, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Word;
    use crate::shuffle::is_shuffle;

    fn cfg(queue: &[u8], cursor: usize) -> Config<u8> {
        Config {
            queue: queue.iter().copied().collect(),
            cursor,
        }
    }

    #[test]
    fn step_examples() {
        let w = b"aa";
        assert_eq!(cfg(b"", 0).step(w, Action::Push).unwrap(), cfg(b"a", 1));
        assert_eq!(cfg(b"a", 1).step(w, Action::Match).unwrap(), cfg(b"", 2));
        let w = b"xbb";
        assert!(matches!(
            cfg(b"ab", 1).step(w, Action::Match),
            Err(Error::IllegalStep { position: 1, .. })
        ));
        assert_eq!(cfg(b"", 2).step(b"aa", Action::Push), Err(Error::NoInput));
    }

    #[test]
    fn accepts_examples() {
        use Step::*;
        match accepts(b"aabb", 100) {
            SearchOutcome::Accept(t) => {
                assert_eq!(t.steps, [Push(b'a'), Match(b'a'), Push(b'b'), Match(b'b')])
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(accepts(b"aba", 100), SearchOutcome::Reject);
        assert_eq!(accepts(b"abba", 100), SearchOutcome::Reject);
        let (out, stats) = accepts_with_stats(b"abab", 1);
        assert_eq!(out, SearchOutcome::BudgetExceeded);
        assert!(!stats.complete);
    }

    #[test]
    fn reject_is_complete() {
        let (out, stats) = accepts_with_stats(b"abbaab", DEFAULT_BUDGET);
        assert_eq!(out, SearchOutcome::Reject);
        assert!(stats.complete);
    }

    #[test]
    fn trace_matchings() {
        use Step::*;
        let t = Trace::new(vec![Push(b'a'), Match(b'a'), Push(b'b'), Match(b'b')]);
        assert_eq!(
            trace_to_matching(b"aabb", &t).unwrap().pairs(),
            &[(0, 1), (2, 3)]
        );
        let t = Trace::new(vec![Push(b'a'), Push(b'b'), Match(b'a'), Match(b'b')]);
        assert_eq!(
            trace_to_matching(b"abab", &t).unwrap().pairs(),
            &[(0, 2), (1, 3)]
        );
        let t = Trace::new(vec![Push(b'a'), Push(b'b')]);
        assert!(matches!(
            trace_to_matching(b"ab", &t),
            Err(Error::InvalidTrace(_))
        ));
        let back = matching_to_trace(b"abab", &Matching::new([(0, 2), (1, 3)]).unwrap()).unwrap();
        assert_eq!(
            back.steps,
            [Push(b'a'), Push(b'b'), Match(b'a'), Match(b'b')]
        );
    }

    #[test]
    fn enumerate_small() {
        let one: BTreeSet<_> = [Matching::new([(0, 1)]).unwrap()].into();
        assert_eq!(enumerate_matchings(b"aa", 100).unwrap(), one);
        let two: BTreeSet<_> = [
            Matching::new([(0, 1), (2, 3)]).unwrap(),
            Matching::new([(0, 2), (1, 3)]).unwrap(),
        ]
        .into();
        assert_eq!(enumerate_matchings(b"aaaa", 100).unwrap(), two);
        assert!(enumerate_matchings(b"aba", 100).unwrap().is_empty());
    }

    #[test]
    fn enumerate_v_gadget_one() {
        let v = Word::sigma("c1 x y c2 c1 x y c2");
        let all = enumerate_matchings(v.syms(), 1000).unwrap();
        let expect = Matching::new((0..4).map(|i| (i, i + 4))).unwrap();
        assert_eq!(all.into_iter().collect::<Vec<_>>(), [expect]);
    }

    #[test]
    fn consume_examples() {
        let w = Word::sigma("b b a1 b a2 a1 b a2 a1 a2 a1 a2");
        let (u, x, z) = (&w[0..2], &w[2..8], &w[8..12]);
        let out = consume(u, x);
        assert!(out.contains(z));
        for r in &out {
            assert!(is_shuffle(u, r, x));
        }
        let out = consume(b"", b"ab");
        assert_eq!(out.into_iter().collect::<Vec<_>>(), [b"ab".to_vec()]);
        assert!(consume(b"ba", b"ab").is_empty());
    }

    #[test]
    fn trace_text_round_trip() {
        let w = Word::sigma("a1 a1 b b");
        let SearchOutcome::Accept(t) = accepts(w.syms(), 100) else {
            panic!()
        };
        let text = t.to_text(w.alphabet());
        assert_eq!(text, "P a1\nM a1\nP b\nM b\n");
        assert_eq!(Trace::from_text(&text, w.alphabet()).unwrap(), t);
        assert!(matches!(
            Trace::from_text("P a1\nQ b\n", w.alphabet()),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
