//! Reference computations over run profiles: the conceptual k-way merge tree
//! built by recursive splitting at minimal boundary powers, merge costs,
//! run-length entropy, and an exhaustive optimal merge cost for small inputs.

use crate::error::{Error, Result};
use crate::power::boundary_powers;
use crate::runs::Run;

/// Largest profile [`optimal_merge_cost`] accepts.
pub const MAX_OPTIMAL_RUNS: usize = 14;

/// Ordered merge tree over runs `0..r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MergeTree {
    Leaf(usize),
    /// Merge of 2 or more subtrees covering consecutive runs.
    Node(Vec<MergeTree>),
}

impl MergeTree {
    /// Leaves, left to right.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            MergeTree::Leaf(i) => out.push(*i),
            MergeTree::Node(children) => children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Largest number of children of any internal node (0 for a leaf).
    pub fn max_degree(&self) -> usize {
        match self {
            MergeTree::Leaf(_) => 0,
            MergeTree::Node(children) => children
                .iter()
                .map(MergeTree::max_degree)
                .max()
                .unwrap_or(0)
                .max(children.len()),
        }
    }

    /// Depth of every leaf, indexed by run.
    pub fn leaf_depths(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_depths(0, &mut out);
        let mut by_leaf = vec![0; out.len()];
        for (leaf, depth) in out {
            by_leaf[leaf] = depth;
        }
        by_leaf
    }

    fn collect_depths(&self, depth: usize, out: &mut Vec<(usize, usize)>) {
        match self {
            MergeTree::Leaf(i) => out.push((*i, depth)),
            MergeTree::Node(children) => children
                .iter()
                .for_each(|c| c.collect_depths(depth + 1, out)),
        }
    }

    /// Depth of the node where the boundary in front of run `j` is merged,
    /// i.e. the lowest common ancestor of leaves `j - 1` and `j`.
    pub fn boundary_depth(&self, j: usize) -> Option<usize> {
        self.find_boundary(j, 0)
    }

    fn find_boundary(&self, j: usize, depth: usize) -> Option<usize> {
        let MergeTree::Node(children) = self else {
            return None;
        };
        let mut first = None;
        for child in children {
            let leaves = child.leaves();
            let (lo, hi) = (leaves[0], leaves[leaves.len() - 1]);
            if lo < j && j <= hi {
                return child.find_boundary(j, depth + 1);
            }
            if hi == j - 1 {
                first = Some(depth);
            }
        }
        first
    }
}

/// Positive run lengths `L_0, .., L_{r-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RunProfile {
    lengths: Vec<usize>,
}

impl RunProfile {
    pub fn new(lengths: Vec<usize>) -> Result<Self> {
        if lengths.is_empty() || lengths.contains(&0) {
            return Err(Error::InvalidProfile);
        }
        Ok(RunProfile { lengths })
    }

    pub fn from_runs(runs: &[Run]) -> Result<Self> {
        Self::new(runs.iter().map(Run::len).collect())
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn runs(&self) -> usize {
        self.lengths.len()
    }

    pub fn n(&self) -> usize {
        self.lengths.iter().sum()
    }

    /// Boundary powers `P_1, .., P_{r-1}` for arity `k`.
    pub fn powers(&self, k: usize) -> Vec<u32> {
        boundary_powers(&self.lengths, k)
    }
}

/// The k-way Powersort merge tree, built by splitting at every boundary of
/// minimal power and recursing.
pub fn kway_tree(profile: &RunProfile, k: usize) -> MergeTree {
    assert!(k >= 2, "arity must be at least 2");
    tree_from_powers(&profile.powers(k))
}

/// Recursive min-power splitting on a sequence of `r - 1` boundary powers.
pub fn tree_from_powers(powers: &[u32]) -> MergeTree {
    build(powers, 0, powers.len() + 1)
}

/// Tree over runs `lo..hi`; the boundary in front of run `i` has power
/// `powers[i - 1]`.
fn build(powers: &[u32], lo: usize, hi: usize) -> MergeTree {
    if hi - lo == 1 {
        return MergeTree::Leaf(lo);
    }
    let inner = &powers[lo..hi - 1];
    let min = *inner.iter().min().unwrap();
    let mut children = Vec::new();
    let mut start = lo;
    for (off, &p) in inner.iter().enumerate() {
        if p == min {
            let split = lo + off + 1;
            children.push(build(powers, start, split));
            start = split;
        }
    }
    children.push(build(powers, start, hi));
    MergeTree::Node(children)
}

/// Merge cost of `kway_tree(profile, k)` without materializing the tree.
pub fn kway_tree_cost(lengths: &[usize], k: usize) -> u64 {
    let powers = boundary_powers(lengths, k);
    let mut prefix = Vec::with_capacity(lengths.len() + 1);
    prefix.push(0u64);
    for &l in lengths {
        prefix.push(prefix[prefix.len() - 1] + l as u64);
    }
    cost_from_powers(&powers, &prefix, 0, lengths.len())
}

fn cost_from_powers(powers: &[u32], prefix: &[u64], lo: usize, hi: usize) -> u64 {
    if hi - lo == 1 {
        return 0;
    }
    let inner = &powers[lo..hi - 1];
    let min = *inner.iter().min().unwrap();
    let mut cost = prefix[hi] - prefix[lo];
    let mut start = lo;
    for (off, &p) in inner.iter().enumerate() {
        if p == min {
            cost += cost_from_powers(powers, prefix, start, lo + off + 1);
            start = lo + off + 1;
        }
    }
    cost + cost_from_powers(powers, prefix, start, hi)
}

/// Total size of all merge outputs: the sum over leaves of depth times
/// length, cross-checked against the sum of internal-node weights.
pub fn tree_merge_cost(tree: &MergeTree, profile: &RunProfile) -> u64 {
    let lengths = profile.lengths();
    let by_depth: u64 = tree
        .leaf_depths()
        .iter()
        .zip(lengths)
        .map(|(&d, &l)| (d * l) as u64)
        .sum();
    let by_nodes = node_weights(tree, lengths).1;
    assert_eq!(
        by_depth, by_nodes,
        "leaf-depth and node-weight merge costs disagree"
    );
    by_depth
}

/// (weight of subtree, sum of internal node weights in it)
fn node_weights(tree: &MergeTree, lengths: &[usize]) -> (u64, u64) {
    match tree {
        MergeTree::Leaf(i) => (lengths[*i] as u64, 0),
        MergeTree::Node(children) => {
            let (w, c) = children
                .iter()
                .map(|c| node_weights(c, lengths))
                .fold((0, 0), |acc, x| (acc.0 + x.0, acc.1 + x.1));
            (w, c + w)
        }
    }
}

/// Shannon entropy of the run-length fractions, in bits.
pub fn entropy(profile: &RunProfile) -> f64 {
    let n = profile.n() as f64;
    profile
        .lengths()
        .iter()
        .map(|&l| {
            let p = l as f64 / n;
            -p * p.log2()
        })
        .sum::<f64>()
        .max(0.0)
}

/// `H n`: the comparison lower bound for inputs with this run profile.
pub fn entropy_lower_bound(profile: &RunProfile) -> f64 {
    entropy(profile) * profile.n() as f64
}

/// Minimal merge cost over all merge trees with node degrees in `2..=k`,
/// by interval dynamic programming. Exponential blow-up is avoided by the
/// run limit, not by the algorithm.
pub fn optimal_merge_cost(profile: &RunProfile, k: usize) -> Result<u64> {
    if k < 2 {
        return Err(Error::UnsupportedArity(k));
    }
    let r = profile.runs();
    if r > MAX_OPTIMAL_RUNS {
        return Err(Error::ProfileTooLarge(r));
    }
    let mut prefix = vec![0u64; r + 1];
    for (i, &l) in profile.lengths().iter().enumerate() {
        prefix[i + 1] = prefix[i] + l as u64;
    }
    // opt[i][j]: best tree over runs i..=j
    // split[b][i][j]: best split of i..=j into exactly b + 1 subtrees
    let mut opt = vec![vec![0u64; r]; r];
    let mut split = vec![vec![vec![u64::MAX; r]; r]; k];
    for (i, row) in split[0].iter_mut().enumerate() {
        row[i] = 0;
    }
    for len in 2..=r {
        for i in 0..=r - len {
            let j = i + len - 1;
            for b in 1..k.min(len) {
                let mut best = u64::MAX;
                for t in i + b - 1..j {
                    let left = split[b - 1][i][t];
                    if left != u64::MAX {
                        best = best.min(left + opt[t + 1][j]);
                    }
                }
                split[b][i][j] = best;
            }
            let best = (1..k.min(len)).map(|b| split[b][i][j]).min().unwrap();
            opt[i][j] = best + prefix[j + 1] - prefix[i];
            split[0][i][j] = opt[i][j];
        }
    }
    Ok(opt[0][r - 1])
}

/// Rebuilds the merge tree from an executed merge trace. `runs` are the
/// leaves; each merge lists the boundaries `[l, g1, .., r]` of the regions it
/// combined.
pub fn tree_from_merges(runs: &[Run], merges: &[Vec<usize>]) -> Option<MergeTree> {
    use std::collections::BTreeMap;
    let mut parts: BTreeMap<usize, MergeTree> = runs
        .iter()
        .enumerate()
        .map(|(i, run)| (run.begin, MergeTree::Leaf(i)))
        .collect();
    for m in merges {
        let children = m[..m.len() - 1]
            .iter()
            .map(|b| parts.remove(b))
            .collect::<Option<Vec<_>>>()?;
        parts.insert(m[0], MergeTree::Node(children));
    }
    if parts.len() != 1 {
        return None;
    }
    parts.into_values().next()
}
