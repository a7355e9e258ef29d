//! The weighted dynamic finger bound and static finger trees.
//!
//! For consecutive accesses `p`, `c` the per-access term is
//!
//! ```text
//! 1 + log2( (w_lo + ... + w_hi) / min(w_p, w_c) ),   lo = min(p, c), hi = max(p, c)
//! ```
//!
//! With all weights equal this collapses to `1 + log2(|c - p| + 1)`, the
//! plain dynamic finger bound. A static finger tree pays the number of nodes
//! on the tree path from the previous access to the current one; the
//! constructions [`weights_from_tree`] and [`tree_from_weights`] move between
//! the two views.

use crate::model::{AccessSequence, CostReport, Key, WeightAssignment};
use crate::{Error, Result};

/// Largest keyspace [`best_static_finger_cost`] will enumerate.
pub const MAX_ENUMERATED_KEYS: usize = 12;

/// How the first access of a sequence is charged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Start {
    /// The finger starts on the first key: `t_1 = 1`.
    #[default]
    Finger,
    /// The first search starts at the root: `t_1 = 1 + log2(W / w_{s_1})`.
    Root,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BoundReport {
    pub per_access: Vec<f64>,
    pub total: f64,
}

impl BoundReport {
    pub fn from_terms(per_access: Vec<f64>) -> Self {
        let total = per_access.iter().sum();
        Self { per_access, total }
    }
}

/// One term of the weighted dynamic finger bound. Always `>= 1` and
/// symmetric in `prev` and `cur`.
pub fn wdf_term(w: &WeightAssignment, prev: Key, cur: Key) -> Result<f64> {
    let range = w.range_weight(prev, cur)?;
    if prev == cur {
        return Ok(1.0);
    }
    let floor = w.weight(prev).min(w.weight(cur));
    Ok((1.0 + (range / floor).log2()).max(1.0))
}

pub fn weighted_df_bound(seq: &AccessSequence, w: &WeightAssignment, start: Start) -> Result<BoundReport> {
    if w.n() != seq.n() {
        return Err(Error::DimensionMismatch {
            expected: seq.n(),
            found: w.n(),
        });
    }
    let s = seq.accesses();
    let first = match start {
        Start::Finger => 1.0,
        Start::Root => 1.0 + (w.total() / w.weight(s[0])).log2(),
    };
    let mut terms = Vec::with_capacity(s.len());
    terms.push(first);
    for pair in s.windows(2) {
        terms.push(wdf_term(w, pair[0], pair[1])?);
    }
    Ok(BoundReport::from_terms(terms))
}

/// The equal-weights specialisation: `t_i = 1 + log2(|s_i - s_{i-1}| + 1)`.
pub fn dynamic_finger_bound(seq: &AccessSequence) -> BoundReport {
    let ones = WeightAssignment::equal(seq.n()).expect("n >= 1");
    weighted_df_bound(seq, &ones, Start::Finger).expect("dimensions agree")
}

/// A fixed binary search tree over keys `1..=n`.
///
/// Links use 0 for "none"; index 0 of every vector is unused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticTree {
    n: usize,
    root: Key,
    parent: Vec<Key>,
    left: Vec<Key>,
    right: Vec<Key>,
    depth: Vec<usize>,
}

impl StaticTree {
    /// Builds a tree top-down: `choose(a, b)` picks the root of the subtree
    /// over `[a, b]`, which must lie in that interval.
    pub fn from_intervals(n: usize, mut choose: impl FnMut(Key, Key) -> Key) -> Result<Self> {
        if n < 1 {
            return Err(Error::BadN);
        }
        let mut tree = Self {
            n,
            root: 0,
            parent: vec![0; n + 1],
            left: vec![0; n + 1],
            right: vec![0; n + 1],
            depth: vec![0; n + 1],
        };
        // (lo, hi, parent, is_left_child)
        let mut pending = vec![(1, n, 0, false)];
        while let Some((a, b, parent, is_left)) = pending.pop() {
            if a > b {
                continue;
            }
            let r = choose(a, b);
            assert!((a..=b).contains(&r), "root {r} outside [{a}, {b}]");
            tree.parent[r] = parent;
            if parent == 0 {
                tree.root = r;
            } else {
                tree.depth[r] = tree.depth[parent] + 1;
                if is_left {
                    tree.left[parent] = r;
                } else {
                    tree.right[parent] = r;
                }
            }
            pending.push((a, r - 1, r, true));
            pending.push((r + 1, b, r, false));
        }
        Ok(tree)
    }

    /// Builds a tree from a parent array (`parents[k - 1]` is the parent of
    /// key `k`, 0 for the root), rejecting anything that is not a BST.
    pub fn from_parents(parents: &[Key]) -> Result<Self> {
        let n = parents.len();
        if n < 1 {
            return Err(Error::BadN);
        }
        let bad = |msg: String| Error::Parse { line: 0, msg };
        let roots: Vec<Key> = (1..=n).filter(|&k| parents[k - 1] == 0).collect();
        if roots.len() != 1 {
            return Err(bad(format!("expected one root, found {}", roots.len())));
        }
        let mut children = vec![(0, 0); n + 1];
        for k in 1..=n {
            let p = parents[k - 1];
            if p > n || p == k {
                return Err(bad(format!("key {k} has invalid parent {p}")));
            }
            if p == 0 {
                continue;
            }
            let slot = if k < p { &mut children[p].0 } else { &mut children[p].1 };
            if *slot != 0 {
                return Err(bad(format!("key {p} has two children on one side")));
            }
            *slot = k;
        }
        let tree = Self::from_intervals(n, |a, b| {
            // The subtree over [a, b] must be rooted at its topmost key.
            (a..=b).find(|&k| !(a..=b).contains(&parents[k - 1])).unwrap_or(a)
        })?;
        if tree.parent[1..] != *parents {
            return Err(bad("parent array is not a binary search tree over 1..=n".into()));
        }
        Ok(tree)
    }

    /// Lower-median split at every level; perfect when `n = 2^k - 1`.
    pub fn balanced(n: usize) -> Result<Self> {
        Self::from_intervals(n, |a, b| a + (b - a) / 2)
    }

    /// Root `n`, each key's left child is the next smaller key.
    pub fn left_spine(n: usize) -> Result<Self> {
        Self::from_intervals(n, |_, b| b)
    }

    /// Root 1, each key's right child is the next larger key.
    pub fn right_spine(n: usize) -> Result<Self> {
        Self::from_intervals(n, |a, _| a)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> Key {
        self.root
    }

    pub fn depth(&self, k: Key) -> usize {
        self.depth[k]
    }

    pub fn parent(&self, k: Key) -> Option<Key> {
        Some(self.parent[k]).filter(|&p| p != 0)
    }

    pub fn left(&self, k: Key) -> Option<Key> {
        Some(self.left[k]).filter(|&c| c != 0)
    }

    pub fn right(&self, k: Key) -> Option<Key> {
        Some(self.right[k]).filter(|&c| c != 0)
    }

    /// `parents()[k - 1]` is the parent of key `k`, 0 at the root.
    pub fn parents(&self) -> &[Key] {
        &self.parent[1..]
    }

    pub fn height(&self) -> usize {
        self.depth[1..].iter().copied().max().unwrap_or(0)
    }

    pub fn in_order(&self) -> Vec<Key> {
        let mut out = Vec::with_capacity(self.n);
        let mut stack = Vec::new();
        let mut cur = self.root;
        while cur != 0 || !stack.is_empty() {
            while cur != 0 {
                stack.push(cur);
                cur = self.left[cur];
            }
            let k = stack.pop().unwrap();
            out.push(k);
            cur = self.right[k];
        }
        out
    }

    pub fn lca(&self, mut a: Key, mut b: Key) -> Key {
        while self.depth[a] > self.depth[b] {
            a = self.parent[a];
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b];
        }
        while a != b {
            a = self.parent[a];
            b = self.parent[b];
        }
        a
    }

    /// Nodes on the tree path from `a` to `b`, both ends included.
    pub fn path_nodes(&self, a: Key, b: Key) -> usize {
        self.depth[a] + self.depth[b] - 2 * self.depth[self.lca(a, b)] + 1
    }
}

/// Cost of serving `seq` on `tree` when each search starts at the previous
/// access; the first search starts at the root. Costs count path nodes.
pub fn static_finger_cost(tree: &StaticTree, seq: &AccessSequence) -> Result<CostReport> {
    if tree.n() != seq.n() {
        return Err(Error::DimensionMismatch {
            expected: seq.n(),
            found: tree.n(),
        });
    }
    let s = seq.accesses();
    let mut costs = Vec::with_capacity(s.len());
    costs.push(tree.depth(s[0]) as u64 + 1);
    costs.extend(s.windows(2).map(|p| tree.path_nodes(p[0], p[1]) as u64));
    Ok(CostReport::from_costs(costs))
}

/// `w_i = base^(-depth(i))`.
pub fn weights_from_tree(tree: &StaticTree, base: f64) -> Result<WeightAssignment> {
    if !(base.is_finite() && base > 1.0) {
        return Err(Error::BadBase(base));
    }
    WeightAssignment::new((1..=tree.n()).map(|k| base.powi(-(tree.depth(k) as i32))).collect())
}

/// Weighted-median tree: the root over `[a, b]` is the smallest key whose
/// prefix weight within the interval reaches half the interval's weight.
/// Every key ends up at depth at most `log2(W / w_i)`.
pub fn tree_from_weights(w: &WeightAssignment) -> StaticTree {
    let prefix = w.prefix();
    StaticTree::from_intervals(w.n(), |a, b| {
        let base = prefix[a - 1];
        let half = (prefix[b] - base) / 2.0;
        a + prefix[a..=b].partition_point(|&p| p - base < half)
    })
    .expect("n >= 1")
}

/// The static finger tree minimising total cost on `seq`, found by
/// enumerating every BST over `1..=n` (`n <= MAX_ENUMERATED_KEYS`). Ties
/// keep the first tree in enumeration order.
pub fn best_static_finger_cost(seq: &AccessSequence) -> Result<(StaticTree, u64)> {
    let n = seq.n();
    if n > MAX_ENUMERATED_KEYS {
        return Err(Error::TooLarge(format!(
            "static tree enumeration needs n <= {MAX_ENUMERATED_KEYS}, got {n}"
        )));
    }
    let s = seq.accesses();
    // transitions[lo][hi] counts consecutive pairs spanning [lo, hi].
    let mut transitions = vec![vec![0u64; n + 1]; n + 1];
    for p in s.windows(2) {
        transitions[p[0].min(p[1])][p[0].max(p[1])] += 1;
    }
    let pairs: Vec<(Key, Key, u64)> = (1..=n)
        .flat_map(|lo| (lo..=n).map(move |hi| (lo, hi)))
        .filter_map(|(lo, hi)| Some((lo, hi, transitions[lo][hi])).filter(|t| t.2 > 0))
        .collect();
    let first = s[0];

    let mut best: Option<(Vec<Key>, u64)> = None;
    for_each_bst(n, |parents, depth| {
        // In a BST the LCA of lo..hi is the shallowest key in that range.
        let mut cost = depth[first] as u64 + 1;
        for &(lo, hi, count) in &pairs {
            let top = depth[lo..=hi].iter().min().copied().unwrap();
            cost += count * (depth[lo] + depth[hi] - 2 * top + 1) as u64;
        }
        if best.as_ref().is_none_or(|b| cost < b.1) {
            best = Some((parents[1..].to_vec(), cost));
        }
    });
    let (parents, cost) = best.expect("at least one tree");
    Ok((StaticTree::from_parents(&parents)?, cost))
}

/// Calls `visit(parents, depths)` once for every BST over `1..=n`; both
/// slices are indexed by key with slot 0 unused.
pub fn for_each_bst(n: usize, mut visit: impl FnMut(&[Key], &[usize])) {
    let mut parents = vec![0; n + 1];
    let mut depth = vec![0; n + 1];
    let mut pending = vec![(1, n, 0)];
    enumerate(&mut pending, &mut parents, &mut depth, &mut visit);
}

fn enumerate(
    pending: &mut Vec<(Key, Key, Key)>,
    parents: &mut [Key],
    depth: &mut [usize],
    visit: &mut impl FnMut(&[Key], &[usize]),
) {
    let Some((a, b, parent)) = pending.pop() else {
        visit(parents, depth);
        return;
    };
    if a > b {
        enumerate(pending, parents, depth, visit);
    } else {
        for r in a..=b {
            parents[r] = parent;
            depth[r] = if parent == 0 { 0 } else { depth[parent] + 1 };
            pending.push((a, r - 1, r));
            pending.push((r + 1, b, r));
            enumerate(pending, parents, depth, visit);
            pending.pop();
            pending.pop();
        }
    }
    pending.push((a, b, parent));
}
