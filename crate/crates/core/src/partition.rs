//! 3-Partition instances and an exact backtracking solver for small ones.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of values [`solve`] will take on.
pub const MAX_VALUES: usize = 24;

/// A normalised instance: values sorted non-increasing, `m` groups, target `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionInstance {
    pub values: Vec<u32>,
    pub m: usize,
    #[serde(rename = "B")]
    pub target: u32,
    /// Whether every value lies strictly between `B/4` and `B/2`.
    pub within_bounds: bool,
}

#[derive(Deserialize)]
struct InstanceJson {
    values: Vec<u32>,
}

impl PartitionInstance {
    /// Sorts `values` non-increasing and derives `m` and `B`.
    pub fn normalize(values: &[u32]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::MalformedInstance("no values".into()));
        }
        if !values.len().is_multiple_of(3) {
            return Err(Error::MalformedInstance(format!(
                "{} values is not a multiple of 3",
                values.len()
            )));
        }
        let m = values.len() / 3;
        let sum: u64 = values.iter().map(|&v| u64::from(v)).sum();
        if !sum.is_multiple_of(m as u64) {
            return Err(Error::MalformedInstance(format!(
                "sum {sum} is not divisible by m = {m}"
            )));
        }
        let target = u32::try_from(sum / m as u64)
            .map_err(|_| Error::MalformedInstance("target overflows u32".into()))?;
        let mut values = values.to_vec();
        values.sort_unstable_by(|a, b| b.cmp(a));
        // B/4 < n < B/2, kept in integers
        let within_bounds = values
            .iter()
            .all(|&v| 4 * u64::from(v) > u64::from(target) && 2 * u64::from(v) < u64::from(target));
        Ok(PartitionInstance {
            values,
            m,
            target,
            within_bounds,
        })
    }

    /// Like [`PartitionInstance::normalize`] but rejects values outside `(B/4, B/2)`.
    pub fn normalize_strict(values: &[u32]) -> Result<Self> {
        let inst = Self::normalize(values)?;
        if !inst.within_bounds {
            return Err(Error::MalformedInstance(format!(
                "values must lie strictly between B/4 and B/2 (B = {})",
                inst.target
            )));
        }
        Ok(inst)
    }

    /// Parses either whitespace-separated decimals or `{"values":[...]}`.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let raw: InstanceJson = serde_json::from_str(text).map_err(|e| Error::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
            return Self::normalize(&raw.values);
        }
        let mut values = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let mut col = 0;
            for tok in line.split_whitespace() {
                col = line[col..].find(tok).map(|i| i + col).unwrap_or(col);
                let v = tok.parse::<u32>().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    column: col + 1,
                    message: format!("`{tok}` is not a natural number"),
                })?;
                values.push(v);
                col += tok.len();
            }
        }
        Self::normalize(&values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `m` triples of indices into the normalised values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSolution {
    pub groups: Vec<[usize; 3]>,
}

impl PartitionSolution {
    /// The values of each group, in group order.
    pub fn group_values(&self, inst: &PartitionInstance) -> Vec<[u32; 3]> {
        self.groups
            .iter()
            .map(|g| g.map(|i| inst.values[i]))
            .collect()
    }
}

/// True iff `sol` uses every index exactly once and each triple sums to `B`.
pub fn check(inst: &PartitionInstance, sol: &PartitionSolution) -> bool {
    if sol.groups.len() != inst.m {
        return false;
    }
    let mut used = vec![false; inst.values.len()];
    for g in &sol.groups {
        for &i in g {
            if i >= used.len() || used[i] {
                return false;
            }
            used[i] = true;
        }
        let sum: u64 = g.iter().map(|&i| u64::from(inst.values[i])).sum();
        if sum != u64::from(inst.target) {
            return false;
        }
    }
    used.iter().all(|&u| u)
}

/// Exact search. The largest unused value anchors each new triple; partners
/// are tried in lexicographic index order.
pub fn solve(inst: &PartitionInstance) -> Result<Option<PartitionSolution>> {
    let n = inst.values.len();
    if n > MAX_VALUES {
        return Err(Error::TooLarge {
            size: n,
            cap: MAX_VALUES,
        });
    }
    let mut groups = Vec::with_capacity(inst.m);
    let mut failed = HashSet::new();
    let found = search(&inst.values, inst.target, 0, &mut groups, &mut failed);
    Ok(found.then_some(PartitionSolution { groups }))
}

fn search(
    values: &[u32],
    target: u32,
    used: u32,
    groups: &mut Vec<[usize; 3]>,
    failed: &mut HashSet<u32>,
) -> bool {
    let n = values.len();
    let Some(i) = (0..n).find(|&i| used & (1 << i) == 0) else {
        return true;
    };
    if failed.contains(&used) {
        return false;
    }
    let t = u64::from(target);
    let vi = u64::from(values[i]);
    for j in i + 1..n {
        if used & (1 << j) != 0 {
            continue;
        }
        let vj = u64::from(values[j]);
        if vi + vj > t {
            continue;
        }
        // later partners are no larger than values[j]
        if vi + 2 * vj < t {
            break;
        }
        for k in j + 1..n {
            if used & (1 << k) != 0 || vi + vj + u64::from(values[k]) != t {
                continue;
            }
            groups.push([i, j, k]);
            if search(
                values,
                target,
                used | 1 << i | 1 << j | 1 << k,
                groups,
                failed,
            ) {
                return true;
            }
            groups.pop();
        }
    }
    failed.insert(used);
    false
}
