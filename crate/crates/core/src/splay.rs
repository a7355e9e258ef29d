//! Bottom-up splay tree over keys `1..=n`, instrumented with access cost.
//!
//! The cost of an access is the number of nodes on the root-to-key path
//! before restructuring, which matches the touched-point count of the
//! geometric model.

use crate::bounds::StaticTree;
use crate::model::{AccessSequence, CostReport, Key};
use crate::{Error, Result};

/// Initial tree shape for a splay run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitialShape {
    #[default]
    Balanced,
    LeftSpine,
    RightSpine,
}

impl InitialShape {
    pub fn build(self, n: usize) -> Result<StaticTree> {
        match self {
            InitialShape::Balanced => StaticTree::balanced(n),
            InitialShape::LeftSpine => StaticTree::left_spine(n),
            InitialShape::RightSpine => StaticTree::right_spine(n),
        }
    }
}

/// Arena splay tree; links are keys, 0 meaning none.
#[derive(Debug, Clone)]
pub struct SplayTree {
    n: usize,
    root: Key,
    parent: Vec<Key>,
    left: Vec<Key>,
    right: Vec<Key>,
    rotations: u64,
}

impl SplayTree {
    pub fn from_shape(shape: &StaticTree) -> Self {
        let n = shape.n();
        let mut tree = Self {
            n,
            root: shape.root(),
            parent: vec![0; n + 1],
            left: vec![0; n + 1],
            right: vec![0; n + 1],
            rotations: 0,
        };
        for k in 1..=n {
            tree.parent[k] = shape.parent(k).unwrap_or(0);
            tree.left[k] = shape.left(k).unwrap_or(0);
            tree.right[k] = shape.right(k).unwrap_or(0);
        }
        tree
    }

    pub fn new(n: usize, shape: InitialShape) -> Result<Self> {
        Ok(Self::from_shape(&shape.build(n)?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> Key {
        self.root
    }

    /// Total rotations performed since construction.
    pub fn rotations(&self) -> u64 {
        self.rotations
    }

    pub fn depth(&self, mut k: Key) -> usize {
        let mut d = 0;
        while self.parent[k] != 0 {
            k = self.parent[k];
            d += 1;
        }
        d
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

    /// Searches for `x` from the root, then splays it to the root.
    /// Returns the number of nodes on the search path.
    pub fn access(&mut self, x: Key) -> Result<u64> {
        if x < 1 || x > self.n {
            return Err(Error::KeyOutOfRange {
                key: x as i64,
                n: self.n,
                line: None,
            });
        }
        let mut cost = 1;
        let mut cur = self.root;
        while cur != x {
            cur = if x < cur { self.left[cur] } else { self.right[cur] };
            cost += 1;
        }
        self.splay(x);
        Ok(cost)
    }

    fn splay(&mut self, x: Key) {
        loop {
            let p = self.parent[x];
            if p == 0 {
                break;
            }
            let g = self.parent[p];
            if g == 0 {
                self.rotate(x);
            } else if (self.left[g] == p) == (self.left[p] == x) {
                // zig-zig
                self.rotate(p);
                self.rotate(x);
            } else {
                // zig-zag
                self.rotate(x);
                self.rotate(x);
            }
        }
        self.root = x;
    }

    /// Rotates `x` above its parent.
    fn rotate(&mut self, x: Key) {
        let p = self.parent[x];
        let g = self.parent[p];
        if self.left[p] == x {
            let b = self.right[x];
            self.left[p] = b;
            self.right[x] = p;
            if b != 0 {
                self.parent[b] = p;
            }
        } else {
            let b = self.left[x];
            self.right[p] = b;
            self.left[x] = p;
            if b != 0 {
                self.parent[b] = p;
            }
        }
        self.parent[p] = x;
        self.parent[x] = g;
        if g == 0 {
            self.root = x;
        } else if self.left[g] == p {
            self.left[g] = x;
        } else {
            self.right[g] = x;
        }
        self.rotations += 1;
    }
}

/// Cost of one access; splays `x` to the root.
pub fn splay_access(tree: &mut SplayTree, x: Key) -> Result<u64> {
    tree.access(x)
}

pub fn run_splay(seq: &AccessSequence, initial: InitialShape) -> CostReport {
    let mut tree = SplayTree::new(seq.n(), initial).expect("n >= 1");
    let costs = seq
        .accesses()
        .iter()
        .map(|&x| tree.access(x).expect("validated sequence"))
        .collect();
    CostReport::from_costs(costs)
}

/// Boxed recursive splay used as an independent reference for the arena
/// implementation. It pairs rotations from the accessed node upward, like
/// the bottom-up splay, by deciding at each level from the parity of the
/// remaining path length.
pub mod reference {
    use crate::bounds::StaticTree;
    use crate::model::Key;

    #[derive(Debug, Clone, PartialEq, Eq)]
    pub struct Node {
        pub key: Key,
        pub left: Option<Box<Node>>,
        pub right: Option<Box<Node>>,
    }

    pub fn from_shape(shape: &StaticTree) -> Box<Node> {
        fn build(shape: &StaticTree, k: Key) -> Box<Node> {
            Box::new(Node {
                key: k,
                left: shape.left(k).map(|c| build(shape, c)),
                right: shape.right(k).map(|c| build(shape, c)),
            })
        }
        build(shape, shape.root())
    }

    pub fn in_order(node: &Node, out: &mut Vec<Key>) {
        if let Some(l) = &node.left {
            in_order(l, out);
        }
        out.push(node.key);
        if let Some(r) = &node.right {
            in_order(r, out);
        }
    }

    fn rotate_right(mut node: Box<Node>) -> Box<Node> {
        let mut l = node.left.take().expect("left child");
        node.left = l.right.take();
        l.right = Some(node);
        l
    }

    fn rotate_left(mut node: Box<Node>) -> Box<Node> {
        let mut r = node.right.take().expect("right child");
        node.right = r.left.take();
        r.left = Some(node);
        r
    }

    /// Accesses `x` and returns `(new root, path nodes)`.
    pub fn access(root: Box<Node>, x: Key) -> (Box<Node>, u64) {
        let mut path = Vec::new();
        let mut cur: &Node = &root;
        while cur.key != x {
            let go_left = x < cur.key;
            path.push(go_left);
            cur = if go_left { cur.left.as_deref() } else { cur.right.as_deref() }.expect("key present");
        }
        let cost = path.len() as u64 + 1;
        (splay(root, &path), cost)
    }

    // `path` holds the directions (true = left) from `node` to the target.
    fn splay(mut node: Box<Node>, path: &[bool]) -> Box<Node> {
        match path {
            [] => node,
            [first, rest @ ..] if rest.len() % 2 == 0 => {
                // Odd length: the unpaired zig happens at the top.
                if *first {
                    node.left = Some(splay(node.left.take().unwrap(), rest));
                    rotate_right(node)
                } else {
                    node.right = Some(splay(node.right.take().unwrap(), rest));
                    rotate_left(node)
                }
            }
            [first, second, rest @ ..] => match (first, second) {
                (true, true) => {
                    let mut child = node.left.take().unwrap();
                    child.left = Some(splay(child.left.take().unwrap(), rest));
                    node.left = Some(child);
                    rotate_right(rotate_right(node))
                }
                (false, false) => {
                    let mut child = node.right.take().unwrap();
                    child.right = Some(splay(child.right.take().unwrap(), rest));
                    node.right = Some(child);
                    rotate_left(rotate_left(node))
                }
                (true, false) => {
                    let mut child = node.left.take().unwrap();
                    child.right = Some(splay(child.right.take().unwrap(), rest));
                    node.left = Some(rotate_left(child));
                    rotate_right(node)
                }
                (false, true) => {
                    let mut child = node.right.take().unwrap();
                    child.left = Some(splay(child.left.take().unwrap(), rest));
                    node.right = Some(rotate_right(child));
                    rotate_left(node)
                }
            },
            [_] => unreachable!(),
        }
    }

    /// Total cost of serving `seq` from `shape`.
    pub fn total_cost(shape: &StaticTree, seq: &[Key]) -> u64 {
        let mut root = from_shape(shape);
        let mut total = 0;
        for &x in seq {
            let (next, cost) = access(root, x);
            root = next;
            total += cost;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(n: usize, s: &[usize]) -> AccessSequence {
        AccessSequence::new(n, s.to_vec()).unwrap()
    }

    #[test]
    fn access_examples() {
        let mut t = SplayTree::new(1, InitialShape::Balanced).unwrap();
        assert_eq!(splay_access(&mut t, 1).unwrap(), 1);
        assert_eq!((t.root(), t.rotations()), (1, 0));

        let mut t = SplayTree::new(3, InitialShape::RightSpine).unwrap();
        assert_eq!(splay_access(&mut t, 3).unwrap(), 3);
        assert_eq!(t.root(), 3);
        assert_eq!((t.left[3], t.left[2], t.right[3], t.right[2]), (2, 1, 0, 0));

        let mut t = SplayTree::new(7, InitialShape::Balanced).unwrap();
        assert_eq!(splay_access(&mut t, 4).unwrap(), 1);
        assert_eq!(t.rotations(), 0);
        assert!(matches!(t.access(8), Err(Error::KeyOutOfRange { .. })));
    }

    #[test]
    fn zig_zag_matches_reference() {
        let shape = StaticTree::from_parents(&[0, 3, 1]).unwrap();
        let mut t = SplayTree::from_shape(&shape);
        assert_eq!(t.access(2).unwrap(), 3);
        let (r, cost) = reference::access(reference::from_shape(&shape), 2);
        assert_eq!(cost, 3);
        assert_eq!((t.root(), t.left[2], t.right[2]), (2, 1, 3));
        assert_eq!(r.key, 2);
        assert_eq!(r.left.as_ref().unwrap().key, 1);
    }

    #[test]
    fn run_examples() {
        for shape in [InitialShape::Balanced, InitialShape::LeftSpine, InitialShape::RightSpine] {
            let k = 5;
            let depth = shape.build(9).unwrap().depth(k) as u64;
            let r = run_splay(&seq(9, &[k; 20]), shape);
            assert_eq!(r.total, depth + 1 + 19);
        }
        assert_eq!(run_splay(&seq(7, &[1]), InitialShape::Balanced).total, 3);
    }

    #[test]
    fn sequential_left_spine_n64() {
        let s = seq(64, &(1..=64).collect::<Vec<_>>());
        let r = run_splay(&s, InitialShape::LeftSpine);
        assert_eq!(r.total, reference::total_cost(&StaticTree::left_spine(64).unwrap(), s.accesses()));
        // Frozen from the reference implementation. The first access walks the
        // whole spine; the remaining 63 accesses cost exactly 4n.
        assert_eq!(r.total, 320);
        assert_eq!(r.per_access[0], 64);
        assert!(r.total - r.per_access[0] <= 4 * 64);
    }

    fn arb_case() -> impl Strategy<Value = (usize, Vec<usize>, InitialShape)> {
        (1usize..=128).prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(1..=n, 1..1024),
                prop_oneof![
                    Just(InitialShape::Balanced),
                    Just(InitialShape::LeftSpine),
                    Just(InitialShape::RightSpine)
                ],
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn matches_reference_and_keeps_order((n, keys, shape) in arb_case()) {
            let s = seq(n, &keys);
            let mut t = SplayTree::new(n, shape).unwrap();
            let ordered: Vec<usize> = (1..=n).collect();
            for &x in &keys {
                let before = t.rotations();
                let cost = t.access(x).unwrap();
                prop_assert_eq!(t.root(), x);
                prop_assert_eq!(t.rotations() - before, cost - 1);
                prop_assert_eq!(&t.in_order(), &ordered);
            }
            prop_assert_eq!(
                run_splay(&s, shape).total,
                reference::total_cost(&shape.build(n).unwrap(), &keys)
            );
        }
    }
}
