//! Shuffle membership: is `w` an interleaving of `u` and `v`?
//!
//! The decision walks the anti-diagonals of the `|u| x |v|` prefix table,
//! keeping only the reachable cells of the current diagonal, indexed along
//! the shorter of the two strings.

use std::collections::HashSet;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::matching::Side;

/// Largest arity accepted by [`is_k_shuffle`].
pub const MAX_ARITY: usize = 4;

/// Assignment of each position of `w` to `u` ([`Side::First`]) or `v` ([`Side::Second`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleWitness {
    pub labels: Vec<Side>,
}

impl ShuffleWitness {
    /// Projects `w` onto the positions carrying `side`.
    pub fn project<T: Clone>(&self, w: &[T], side: Side) -> Vec<T> {
        w.iter()
            .zip(&self.labels)
            .filter(|(_, &s)| s == side)
            .map(|(c, _)| c.clone())
            .collect()
    }

    pub fn numeric_labels(&self) -> Vec<u8> {
        self.labels.iter().map(|s| s.label()).collect()
    }
}

/// True iff `w = u ⊙ v`. Runs in `O(|u|·|v|)` time and `O(min(|u|,|v|))` space.
pub fn is_shuffle<T: PartialEq>(u: &[T], v: &[T], w: &[T]) -> bool {
    if u.len() + v.len() != w.len() {
        return false;
    }
    // index cells by the shorter string
    let (short, long) = if u.len() <= v.len() { (u, v) } else { (v, u) };
    let width = short.len() + 1;
    // reach[i]: prefix of length d of w is a shuffle of short[..i] and long[..d-i]
    let mut reach = vec![false; width];
    let mut next = vec![false; width];
    reach[0] = true;
    for (d, c) in w.iter().enumerate() {
        next.iter_mut().for_each(|x| *x = false);
        let mut any = false;
        let lo = d.saturating_sub(long.len());
        let hi = d.min(short.len());
        for i in lo..=hi {
            if !reach[i] {
                continue;
            }
            let j = d - i;
            if i < short.len() && short[i] == *c {
                next[i + 1] = true;
                any = true;
            }
            if j < long.len() && long[j] == *c {
                next[i] = true;
                any = true;
            }
        }
        if !any {
            return false;
        }
        std::mem::swap(&mut reach, &mut next);
    }
    reach[short.len()]
}

/// A witness for `w = u ⊙ v`, or `None`. Where both strings could supply the
/// next symbol the witness takes it from `u`.
pub fn shuffle_witness<T: PartialEq>(u: &[T], v: &[T], w: &[T]) -> Option<ShuffleWitness> {
    if u.len() + v.len() != w.len() {
        return None;
    }
    let (nu, nv) = (u.len(), v.len());
    let cols = nv + 1;
    // done[i][j]: the suffixes u[i..], v[j..] shuffle to w[i+j..]
    let mut done = vec![false; (nu + 1) * cols];
    done[nu * cols + nv] = true;
    for i in (0..=nu).rev() {
        for j in (0..=nv).rev() {
            if i == nu && j == nv {
                continue;
            }
            let c = &w[i + j];
            let via_u = i < nu && u[i] == *c && done[(i + 1) * cols + j];
            let via_v = j < nv && v[j] == *c && done[i * cols + j + 1];
            done[i * cols + j] = via_u || via_v;
        }
    }
    if !done[0] {
        return None;
    }
    let mut labels = Vec::with_capacity(w.len());
    let (mut i, mut j) = (0, 0);
    while i + j < w.len() {
        let c = &w[i + j];
        if i < nu && u[i] == *c && done[(i + 1) * cols + j] {
            labels.push(Side::First);
            i += 1;
        } else {
            labels.push(Side::Second);
            j += 1;
        }
    }
    Some(ShuffleWitness { labels })
}

/// True iff `w` is a shuffle of all strings in `us`, for `1 <= us.len() <= MAX_ARITY`.
pub fn is_k_shuffle<T: PartialEq>(us: &[&[T]], w: &[T]) -> Result<bool> {
    let k = us.len();
    if k == 0 || k > MAX_ARITY {
        return Err(Error::UnsupportedArity { k, max: MAX_ARITY });
    }
    if us.iter().map(|u| u.len()).sum::<usize>() != w.len() {
        return Ok(false);
    }
    // frontier of index vectors; all have coordinate sum equal to the w prefix length
    let mut frontier: HashSet<[usize; MAX_ARITY]> = HashSet::from([[0; MAX_ARITY]]);
    for c in w {
        let mut next = HashSet::new();
        for idx in &frontier {
            for (t, u) in us.iter().enumerate() {
                if idx[t] < u.len() && u[idx[t]] == *c {
                    let mut n = *idx;
                    n[t] += 1;
                    next.insert(n);
                }
            }
        }
        if next.is_empty() {
            return Ok(false);
        }
        frontier = next;
    }
    Ok(!frontier.is_empty())
}

/// All distinct interleavings of `u` and `v`; exponential, for tests and demos.
pub fn interleavings<T: Clone + Eq + Hash>(u: &[T], v: &[T]) -> HashSet<Vec<T>> {
    fn go<T: Clone + Eq + Hash>(u: &[T], v: &[T], acc: &mut Vec<T>, out: &mut HashSet<Vec<T>>) {
        if u.is_empty() && v.is_empty() {
            out.insert(acc.clone());
            return;
        }
        if let Some((h, t)) = u.split_first() {
            acc.push(h.clone());
            go(t, v, acc, out);
            acc.pop();
        }
        if let Some((h, t)) = v.split_first() {
            acc.push(h.clone());
            go(u, t, acc, out);
            acc.pop();
        }
    }
    let mut out = HashSet::new();
    go(u, v, &mut Vec::new(), &mut out);
    out
}
