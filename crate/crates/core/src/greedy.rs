//! Online greedy execution in the geometric model.
//!
//! At time `t` the access `x` is placed on row `t`, together with the fewest
//! extra points that keep the whole set arborally satisfied. Those extra
//! points form the staircase on either side of `x`: walking away from `x`,
//! a key is touched iff its last-touched time strictly exceeds the
//! last-touched time of every key between it and `x`, `x` included.
//! Keys that were never touched neither join the row nor block.
//!
//! The cost of an access is the number of points placed on its row.

use crate::model::{AccessSequence, CostReport, Key, Point, PointSet};
use crate::{Error, Result};

/// Max segment tree over `last_touched`, supporting "nearest key on one side
/// whose value exceeds a bound" descents.
#[derive(Debug, Clone)]
struct StaircaseIndex {
    size: usize,
    tree: Vec<usize>,
}

impl StaircaseIndex {
    fn new(len: usize) -> Self {
        let size = len.next_power_of_two();
        Self {
            size,
            tree: vec![0; 2 * size],
        }
    }

    fn set(&mut self, pos: usize, value: usize) {
        let mut i = pos + self.size;
        self.tree[i] = value;
        while i > 1 {
            i /= 2;
            self.tree[i] = self.tree[2 * i].max(self.tree[2 * i + 1]);
        }
    }

    /// Largest index `< end` holding a value `> bound`.
    fn last_above_before(&self, end: usize, bound: usize) -> Option<usize> {
        self.last_above(1, 0, self.size, end, bound)
    }

    fn last_above(&self, node: usize, lo: usize, hi: usize, end: usize, bound: usize) -> Option<usize> {
        if lo >= end || self.tree[node] <= bound {
            return None;
        }
        if hi - lo == 1 {
            return Some(lo);
        }
        let mid = (lo + hi) / 2;
        self.last_above(2 * node + 1, mid, hi, end, bound)
            .or_else(|| self.last_above(2 * node, lo, mid, end, bound))
    }

    /// Smallest index `> start` holding a value `> bound`.
    fn first_above_after(&self, start: usize, bound: usize) -> Option<usize> {
        self.first_above(1, 0, self.size, start, bound)
    }

    fn first_above(&self, node: usize, lo: usize, hi: usize, start: usize, bound: usize) -> Option<usize> {
        if hi <= start + 1 || self.tree[node] <= bound {
            return None;
        }
        if hi - lo == 1 {
            return Some(lo);
        }
        let mid = (lo + hi) / 2;
        self.first_above(2 * node, lo, mid, start, bound)
            .or_else(|| self.first_above(2 * node + 1, mid, hi, start, bound))
    }
}

/// Execution state of a greedy sweep over keys `1..=n`.
#[derive(Debug, Clone)]
pub struct GreedyState {
    n: usize,
    time: usize,
    // 0 = never touched; times start at 1.
    last_touched: Vec<usize>,
    index: StaircaseIndex,
    per_row_cost: Vec<u64>,
}

impl GreedyState {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            time: 0,
            last_touched: vec![0; n + 1],
            index: StaircaseIndex::new(n + 2),
            per_row_cost: Vec::new(),
        }
    }

    /// State whose history is the given point set: each column's last-touched
    /// time is its topmost point, and the clock sits at the set's last row.
    pub fn from_points(points: &PointSet, n: usize) -> Result<Self> {
        let mut state = Self::new(n);
        for p in points.iter() {
            state.check_key(p.key)?;
            if p.time > state.last_touched[p.key] {
                state.touch(p.key, p.time);
            }
        }
        state.time = points.max_time();
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rows processed so far.
    pub fn time(&self) -> usize {
        self.time
    }

    pub fn last_touched(&self, key: Key) -> Option<usize> {
        match self.last_touched.get(key) {
            Some(&t) if t > 0 && key > 0 => Some(t),
            _ => None,
        }
    }

    pub fn per_row_cost(&self) -> &[u64] {
        &self.per_row_cost
    }

    fn check_key(&self, key: Key) -> Result<()> {
        if key < 1 || key > self.n {
            return Err(Error::KeyOutOfRange {
                key: key as i64,
                n: self.n,
                line: None,
            });
        }
        Ok(())
    }

    fn touch(&mut self, key: Key, time: usize) {
        self.last_touched[key] = time;
        self.index.set(key, time);
    }

    /// Keys greedy touches when `x` is accessed next, ascending.
    pub fn row(&self, x: Key) -> Result<Vec<Key>> {
        self.check_key(x)?;
        let mut left = Vec::new();
        let (mut pos, mut bound) = (x, self.last_touched[x]);
        while let Some(y) = self.index.last_above_before(pos, bound) {
            left.push(y);
            bound = self.last_touched[y];
            pos = y;
        }
        left.reverse();
        left.push(x);
        let (mut pos, mut bound) = (x, self.last_touched[x]);
        while let Some(y) = self.index.first_above_after(pos, bound) {
            if y > self.n {
                break;
            }
            left.push(y);
            bound = self.last_touched[y];
            pos = y;
        }
        Ok(left)
    }

    /// Linear-scan version of [`GreedyState::row`], kept for differential checks.
    pub fn row_reference(&self, x: Key) -> Result<Vec<Key>> {
        self.check_key(x)?;
        let mut row = Vec::new();
        let mut running = self.last_touched[x];
        for y in (1..x).rev() {
            if self.last_touched[y] > running {
                running = self.last_touched[y];
                row.push(y);
            }
        }
        row.reverse();
        row.push(x);
        running = self.last_touched[x];
        for y in x + 1..=self.n {
            if self.last_touched[y] > running {
                running = self.last_touched[y];
                row.push(y);
            }
        }
        Ok(row)
    }

    /// Processes the next access: places its row at time `time() + 1` and
    /// returns the touched keys, ascending.
    pub fn access(&mut self, x: Key) -> Result<Vec<Key>> {
        let row = self.row(x)?;
        self.time += 1;
        for &y in &row {
            self.touch(y, self.time);
        }
        self.per_row_cost.push(row.len() as u64);
        Ok(row)
    }
}

/// Touched key set for accessing `x` from `state`.
pub fn greedy_row(state: &GreedyState, x: Key) -> Result<Vec<Key>> {
    state.row(x)
}

/// A full greedy sweep: the emitted points and the touched keys per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyRun {
    pub points: PointSet,
    pub rows: Vec<Vec<Key>>,
    pub cost: CostReport,
}

/// Runs greedy over the whole sequence, materialising every touched point.
pub fn greedy_execute(seq: &AccessSequence) -> GreedyRun {
    let mut state = GreedyState::new(seq.n());
    let mut points = PointSet::new();
    let mut rows = Vec::with_capacity(seq.m());
    for &x in seq.accesses() {
        let row = state.access(x).expect("validated sequence");
        let t = state.time();
        points.extend(row.iter().map(|&k| Point::new(k, t)));
        rows.push(row);
    }
    GreedyRun {
        points,
        rows,
        cost: CostReport::from_costs(state.per_row_cost),
    }
}

/// Per-access greedy cost without keeping the point set.
pub fn greedy_cost(seq: &AccessSequence) -> CostReport {
    let mut state = GreedyState::new(seq.n());
    for &x in seq.accesses() {
        state.access(x).expect("validated sequence");
    }
    CostReport::from_costs(state.per_row_cost)
}

/// Exhaustive row completion: the first subset `R` of `1..=n` containing `x`,
/// by increasing size and then lexicographically, such that `points` plus
/// row `time` over `R` is arborally satisfied.
///
/// Exponential in `n`; intended for `n <= 12`.
pub fn brute_min_row(points: &PointSet, x: Key, time: usize, n: usize) -> Vec<Key> {
    minimal_rows(points, x, time, n, false)
        .into_iter()
        .next()
        .expect("the full row always satisfies")
}

/// Every minimum-size feasible row completion, in lexicographic order.
pub fn brute_min_rows_all(points: &PointSet, x: Key, time: usize, n: usize) -> Vec<Vec<Key>> {
    minimal_rows(points, x, time, n, true)
}

fn minimal_rows(points: &PointSet, x: Key, time: usize, n: usize, all: bool) -> Vec<Vec<Key>> {
    assert!((1..=n).contains(&x), "key {x} outside 1..={n}");
    let mut found = Vec::new();
    for size in 1..=n {
        for_each_combination(n, size, |combo| {
            if !combo.contains(&x) {
                return true;
            }
            let mut candidate = points.clone();
            candidate.extend(combo.iter().map(|&k| Point::new(k, time)));
            if crate::geometry::is_arborally_satisfied(&candidate) {
                found.push(combo.to_vec());
                return all;
            }
            true
        });
        if !found.is_empty() {
            return found;
        }
    }
    unreachable!("the full row over 1..={n} always satisfies")
}

/// Calls `f` on each `size`-subset of `1..=n` in lexicographic order until it
/// returns `false`.
fn for_each_combination(n: usize, size: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut combo: Vec<usize> = (1..=size).collect();
    loop {
        if !f(&combo) {
            return;
        }
        let Some(i) = (0..size).rev().find(|&i| combo[i] < n - size + i + 1) else {
            return;
        };
        combo[i] += 1;
        for j in i + 1..size {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::is_arborally_satisfied;
    use proptest::prelude::*;

    fn seq(n: usize, s: &[usize]) -> AccessSequence {
        AccessSequence::new(n, s.to_vec()).unwrap()
    }

    fn state_after(n: usize, s: &[usize]) -> GreedyState {
        let mut st = GreedyState::new(n);
        for &x in s {
            st.access(x).unwrap();
        }
        st
    }

    fn pts(v: &[(usize, usize)]) -> PointSet {
        v.iter().map(|&(k, t)| Point::new(k, t)).collect()
    }

    #[test]
    fn row_examples() {
        let st = state_after(3, &[1, 2]);
        assert_eq!(greedy_row(&st, 3).unwrap(), vec![2, 3]);
        assert_eq!(GreedyState::new(5).row(5).unwrap(), vec![5]);
        let st = state_after(3, &[3]);
        assert_eq!(greedy_row(&st, 1).unwrap(), vec![1, 3]);
        assert!(matches!(st.row(4), Err(Error::KeyOutOfRange { .. })));
        assert!(st.row(0).is_err());
    }

    #[test]
    fn row_examples_agree_with_brute() {
        let run = greedy_execute(&seq(3, &[1, 2]));
        assert_eq!(brute_min_row(&run.points, 3, 3, 3), vec![2, 3]);
        let run = greedy_execute(&seq(3, &[3]));
        assert_eq!(brute_min_row(&run.points, 1, 2, 3), vec![1, 3]);
    }

    #[test]
    fn accessed_key_history_blocks() {
        // After 1 then 2, both columns were last touched at t = 2; a repeat
        // of 2 is witnessed by its own previous point.
        let st = state_after(2, &[1, 2]);
        assert_eq!(st.row(2).unwrap(), vec![2]);
    }

    #[test]
    fn execute_examples() {
        let run = greedy_execute(&seq(3, &[2, 2, 2]));
        assert_eq!(run.points, pts(&[(2, 1), (2, 2), (2, 3)]));
        assert_eq!(run.cost.total, 3);

        let run = greedy_execute(&seq(3, &[1, 2, 3]));
        assert_eq!(run.rows, vec![vec![1], vec![1, 2], vec![2, 3]]);
        assert_eq!(run.cost.total, 5);
        assert!(is_arborally_satisfied(&run.points));

        let run = greedy_execute(&seq(3, &[3, 1]));
        assert_eq!(run.rows, vec![vec![3], vec![1, 3]]);
        assert_eq!(run.cost.total, 3);
    }

    #[test]
    fn brute_examples() {
        assert_eq!(brute_min_row(&pts(&[(1, 1)]), 2, 2, 2), vec![1, 2]);
        assert_eq!(brute_min_row(&PointSet::new(), 4, 1, 5), vec![4]);
        let p = pts(&[(1, 1), (2, 2), (1, 2)]);
        assert!(is_arborally_satisfied(&p));
        assert_eq!(brute_min_row(&p, 3, 3, 3), vec![2, 3]);
        assert_eq!(brute_min_rows_all(&p, 3, 3, 3), vec![vec![2, 3]]);
    }

    #[test]
    fn from_points_matches_sweep() {
        let s = seq(6, &[4, 1, 6, 2, 2, 5]);
        let run = greedy_execute(&s);
        let rebuilt = GreedyState::from_points(&run.points, 6).unwrap();
        let live = state_after(6, s.accesses());
        for k in 1..=6 {
            assert_eq!(rebuilt.last_touched(k), live.last_touched(k));
            assert_eq!(rebuilt.row(k).unwrap(), live.row(k).unwrap());
        }
        assert_eq!(rebuilt.time(), 6);
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut out = Vec::new();
        for_each_combination(4, 2, |c| {
            out.push(c.to_vec());
            true
        });
        assert_eq!(
            out,
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
    }

    fn arb_seq() -> impl Strategy<Value = AccessSequence> {
        (1usize..40).prop_flat_map(|n| {
            prop::collection::vec(1..=n, 1..120).prop_map(move |v| AccessSequence::new(n, v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn fast_row_matches_reference(s in arb_seq()) {
            let mut st = GreedyState::new(s.n());
            for &x in s.accesses() {
                for k in 1..=s.n() {
                    prop_assert_eq!(st.row(k).unwrap(), st.row_reference(k).unwrap());
                }
                st.access(x).unwrap();
            }
        }

        #[test]
        fn sweep_is_satisfied_superset(s in arb_seq()) {
            let run = greedy_execute(&s);
            prop_assert!(is_arborally_satisfied(&run.points));
            for (t, &x) in s.accesses().iter().enumerate() {
                prop_assert!(run.points.contains(&Point::new(x, t + 1)));
                prop_assert!(run.cost.per_access[t] >= 1);
            }
            prop_assert_eq!(run.cost.total as usize, run.points.len());
            prop_assert_eq!(&run.cost, &greedy_cost(&s));
        }

        #[test]
        fn sweep_is_online(s in arb_seq(), cut in 1usize..120) {
            let cut = cut.min(s.m());
            let full = greedy_execute(&s);
            let head = greedy_execute(&s.prefix(cut).unwrap());
            prop_assert_eq!(&full.rows[..cut], &head.rows[..]);
            prop_assert_eq!(full, greedy_execute(&s));
        }
    }
}
