//! Balanced minimum k-cut partitioning.
//!
//! [`min_cut_exact`] enumerates every balanced partition in canonical
//! lexicographic order and keeps the first of minimum cut weight.
//! [`min_cut_heuristic`] runs seeded restarts of a pairwise-swap local search.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Upper limit on the number of partitions [`enumerate_balanced_partitions`]
/// will produce.
pub const ENUMERATION_CAP: u128 = 1_000_000;

/// Restarts performed by [`min_cut_heuristic`].
pub const HEURISTIC_RESTARTS: usize = 16;

/// Equal-size vertex groups in canonical form: each group ascending, groups
/// ordered by their smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition {
    groups: Vec<Vec<usize>>,
}

impl Partition {
    /// Canonicalises `groups`, which must be non-empty, disjoint and of equal size.
    pub fn new(mut groups: Vec<Vec<usize>>) -> Result<Self> {
        if groups.is_empty() || groups.iter().any(Vec::is_empty) {
            return Err(Error::InvalidArgument("partition groups must be non-empty".into()));
        }
        let size = groups[0].len();
        if groups.iter().any(|g| g.len() != size) {
            return Err(Error::InvalidArgument("partition groups must have equal size".into()));
        }
        for g in &mut groups {
            g.sort_unstable();
        }
        groups.sort();
        let mut all: Vec<usize> = groups.iter().flatten().copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("partition groups overlap".into()));
        }
        Ok(Partition { groups })
    }

    /// Groups from a vertex labelling with labels `0..k`.
    pub fn from_labels(labels: &[usize], k: usize) -> Result<Self> {
        let mut groups = vec![Vec::new(); k];
        for (v, &l) in labels.iter().enumerate() {
            groups
                .get_mut(l)
                .ok_or_else(|| Error::InvalidArgument(format!("label {l} out of range for k = {k}")))?
                .push(v);
        }
        Self::new(groups)
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn k(&self) -> usize {
        self.groups.len()
    }

    pub fn group_size(&self) -> usize {
        self.groups[0].len()
    }

    pub fn n_vertices(&self) -> usize {
        self.k() * self.group_size()
    }

    /// Group of every vertex, checking that the groups cover `0..n` exactly.
    pub fn group_index(&self, n: usize) -> Result<Vec<usize>> {
        if self.n_vertices() != n {
            return Err(Error::InvalidArgument(format!(
                "partition covers {} vertices, graph has {n}",
                self.n_vertices()
            )));
        }
        let mut index = vec![usize::MAX; n];
        for (gi, g) in self.groups.iter().enumerate() {
            for &v in g {
                if v >= n {
                    return Err(Error::InvalidArgument(format!("vertex {v} outside 0..{n}")));
                }
                index[v] = gi;
            }
        }
        Ok(index)
    }

    /// Total weight of edges between different groups.
    pub fn cut_weight(&self, g: &WeightedGraph) -> Result<u64> {
        let index = self.group_index(g.n_vertices())?;
        Ok(g.edges().filter(|((u, v), _)| index[*u] != index[*v]).map(|(_, w)| w).sum())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Optimality {
    Exact,
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub partition: Partition,
    pub cut_weight: u64,
    pub internal_weight: u64,
    pub optimality: Optimality,
}

fn check_divisible(n: usize, k: usize) -> Result<usize> {
    if n == 0 || k == 0 || !n.is_multiple_of(k) {
        return Err(Error::Infeasible(format!("{n} vertices cannot be split into {k} equal non-empty groups")));
    }
    Ok(n / k)
}

fn binomial(n: u128, r: u128) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// `n! / ((n/k)!^k · k!)`, or `None` on overflow.
pub fn balanced_partition_count(n: usize, k: usize) -> Result<Option<u128>> {
    let s = check_divisible(n, k)? as u128;
    let mut count: u128 = 1;
    let mut remaining = n as u128;
    // The group holding the smallest remaining vertex picks s-1 companions.
    for _ in 0..k {
        let ways = match binomial(remaining - 1, s - 1) {
            Some(w) => w,
            None => return Ok(None),
        };
        count = match count.checked_mul(ways) {
            Some(c) => c,
            None => return Ok(None),
        };
        remaining -= s;
    }
    Ok(Some(count))
}

/// Whether exact enumeration of `(n, k)` stays within [`ENUMERATION_CAP`].
pub fn exact_is_feasible(n: usize, k: usize) -> Result<bool> {
    Ok(balanced_partition_count(n, k)?.is_some_and(|c| c <= ENUMERATION_CAP))
}

/// Every balanced partition of `0..n` into `k` groups, in lexicographic
/// order of canonical forms.
pub fn enumerate_balanced_partitions(n: usize, k: usize) -> Result<Vec<Partition>> {
    let s = check_divisible(n, k)?;
    let count = balanced_partition_count(n, k)?;
    match count {
        Some(c) if c <= ENUMERATION_CAP => {}
        _ => {
            return Err(Error::Infeasible(format!(
                "{n} vertices into {k} groups gives more than {ENUMERATION_CAP} partitions"
            )))
        }
    }
    let mut out = Vec::with_capacity(count.unwrap_or(0) as usize);
    let mut current = Vec::with_capacity(k);
    let remaining: Vec<usize> = (0..n).collect();
    enumerate_rec(&remaining, s, &mut current, &mut out);
    Ok(out)
}

fn enumerate_rec(remaining: &[usize], s: usize, current: &mut Vec<Vec<usize>>, out: &mut Vec<Partition>) {
    if remaining.is_empty() {
        out.push(Partition { groups: current.clone() });
        return;
    }
    let first = remaining[0];
    let rest = &remaining[1..];
    let mut pick: Vec<usize> = (0..s - 1).collect();
    loop {
        let mut group = Vec::with_capacity(s);
        group.push(first);
        group.extend(pick.iter().map(|&i| rest[i]));
        let left: Vec<usize> = rest.iter().enumerate().filter(|(i, _)| !pick.contains(i)).map(|(_, &v)| v).collect();
        current.push(group);
        enumerate_rec(&left, s, current, out);
        current.pop();
        if !next_combination(&mut pick, rest.len()) {
            break;
        }
    }
}

/// Advances `pick` to the next r-combination of `0..n` in lexicographic order.
fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let r = pick.len();
    for i in (0..r).rev() {
        if pick[i] < n - r + i {
            pick[i] += 1;
            for j in i + 1..r {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub fn min_cut_exact(g: &WeightedGraph, k: usize) -> Result<CutResult> {
    let total = g.total_weight();
    let mut best: Option<(u64, Partition)> = None;
    for p in enumerate_balanced_partitions(g.n_vertices(), k)? {
        let cut = p.cut_weight(g)?;
        if best.as_ref().is_none_or(|(b, _)| cut < *b) {
            best = Some((cut, p));
        }
    }
    let (cut_weight, partition) = best.expect("at least one balanced partition");
    Ok(CutResult { partition, cut_weight, internal_weight: total - cut_weight, optimality: Optimality::Exact })
}

/// Best of [`HEURISTIC_RESTARTS`] seeded random balanced starts, each refined
/// by best-improvement pairwise swaps until no swap lowers the cut.
pub fn min_cut_heuristic(g: &WeightedGraph, k: usize, seed: u64) -> Result<CutResult> {
    let n = g.n_vertices();
    let s = check_divisible(n, k)?;
    let adj = g.adjacency();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(u64, Vec<usize>)> = None;
    for _ in 0..HEURISTIC_RESTARTS {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut labels = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            labels[v] = i / s;
        }
        swap_descent(&adj, &mut labels);
        let cut = cut_of_labels(&adj, &labels);
        if best.as_ref().is_none_or(|(b, _)| cut < *b) {
            best = Some((cut, labels));
        }
    }
    let (cut_weight, labels) = best.expect("at least one restart");
    Ok(CutResult {
        partition: Partition::from_labels(&labels, k)?,
        cut_weight,
        internal_weight: g.total_weight() - cut_weight,
        optimality: Optimality::Heuristic,
    })
}

fn cut_of_labels(adj: &[Vec<u64>], labels: &[usize]) -> u64 {
    let n = labels.len();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| labels[u] != labels[v])
        .map(|(u, v)| adj[u][v])
        .sum()
}

fn swap_descent(adj: &[Vec<u64>], labels: &mut [usize]) {
    let n = labels.len();
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for u in 0..n {
            for v in u + 1..n {
                let (a, b) = (labels[u], labels[v]);
                if a == b {
                    continue;
                }
                let gain = move_gain(adj, labels, u, a, b) + move_gain(adj, labels, v, b, a) - 2 * adj[u][v] as i64;
                if gain > 0 && best.is_none_or(|(g, _, _)| gain > g) {
                    best = Some((gain, u, v));
                }
            }
        }
        match best {
            Some((_, u, v)) => labels.swap(u, v),
            None => break,
        }
    }
}

/// Cut reduction from moving `u` from group `from` to group `to` alone.
fn move_gain(adj: &[Vec<u64>], labels: &[usize], u: usize, from: usize, to: usize) -> i64 {
    labels
        .iter()
        .enumerate()
        .filter(|&(x, _)| x != u)
        .map(|(x, &l)| {
            let w = adj[u][x] as i64;
            if l == to {
                w
            } else if l == from {
                -w
            } else {
                0
            }
        })
        .sum()
}
