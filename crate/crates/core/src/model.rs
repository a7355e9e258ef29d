//! Shared data model: rank-space keys, access sequences, weights and the
//! (key, time) point sets of the geometric BST model.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::{Error, Result};

/// A key in rank space `1..=n`.
pub type Key = usize;

/// A validated query stream `s_1..s_m` over keys `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AccessSequence {
    n: usize,
    accesses: Vec<Key>,
}

impl AccessSequence {
    pub fn new(n: usize, accesses: Vec<Key>) -> Result<Self> {
        if n < 1 {
            return Err(Error::BadN);
        }
        if accesses.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(&bad) = accesses.iter().find(|&&k| k < 1 || k > n) {
            return Err(Error::KeyOutOfRange {
                key: bad as i64,
                n,
                line: None,
            });
        }
        Ok(Self { n, accesses })
    }

    /// Keyspace size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of accesses.
    pub fn m(&self) -> usize {
        self.accesses.len()
    }

    pub fn accesses(&self) -> &[Key] {
        &self.accesses
    }

    /// The first `len` accesses as a sequence over the same keyspace.
    pub fn prefix(&self, len: usize) -> Result<Self> {
        Self::new(self.n, self.accesses[..len.min(self.m())].to_vec())
    }
}

/// Validates raw integers as an access sequence over `1..=n`.
pub fn validate_sequence(raw: &[i64], n: i64) -> Result<AccessSequence> {
    if n < 1 {
        return Err(Error::BadN);
    }
    let n = n as usize;
    if raw.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut accesses = Vec::with_capacity(raw.len());
    for &k in raw {
        if k < 1 || k as u64 > n as u64 {
            return Err(Error::KeyOutOfRange { key: k, n, line: None });
        }
        accesses.push(k as Key);
    }
    AccessSequence::new(n, accesses)
}

/// Strictly positive per-key weights together with their prefix sums.
///
/// `prefix[0] = 0` and `prefix[k] = w_1 + ... + w_k`. Construction rejects
/// vectors whose prefix sums fail to strictly increase in `f64`, since range
/// sums over such vectors would silently drop keys.
///
/// Each prefix sum carries the rounding error of its last addition, so a
/// range sum keeps full relative precision even when the range is tiny
/// compared to the prefix it is subtracted from.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightAssignment {
    weights: Vec<f64>,
    prefix: Vec<f64>,
    residual: Vec<f64>,
}

impl WeightAssignment {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::BadN);
        }
        let mut prefix = Vec::with_capacity(weights.len() + 1);
        let mut residual = Vec::with_capacity(weights.len() + 1);
        prefix.push(0.0);
        residual.push(0.0);
        for (i, &w) in weights.iter().enumerate() {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::NonPositiveWeight {
                    index: i + 1,
                    value: w,
                });
            }
            let prev = prefix[i];
            let next = prev + w;
            if next <= prev || !next.is_finite() {
                return Err(Error::PrecisionLoss { index: i + 1 });
            }
            // Knuth's two-sum: `next + err` is exactly `prev + w`.
            let v = next - prev;
            let err = (prev - (next - v)) + (w - v);
            prefix.push(next);
            residual.push(residual[i] + err);
        }
        Ok(Self {
            weights,
            prefix,
            residual,
        })
    }

    /// All-ones weights over `1..=n`.
    pub fn equal(n: usize) -> Result<Self> {
        Self::new(vec![1.0; n])
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn prefix(&self) -> &[f64] {
        &self.prefix
    }

    /// Weight of key `k`. Panics if `k` is outside `1..=n`.
    pub fn weight(&self, k: Key) -> f64 {
        self.weights[k - 1]
    }

    pub fn total(&self) -> f64 {
        self.prefix[self.n()]
    }

    /// Every weight multiplied by `alpha`.
    pub fn scaled(&self, alpha: f64) -> Result<Self> {
        Self::new(self.weights.iter().map(|w| w * alpha).collect())
    }

    pub(crate) fn check_key(&self, k: Key) -> Result<()> {
        if k < 1 || k > self.n() {
            return Err(Error::KeyOutOfRange {
                key: k as i64,
                n: self.n(),
                line: None,
            });
        }
        Ok(())
    }

    /// Sum of `w_x` over `min(a, b) <= x <= max(a, b)`.
    pub fn range_weight(&self, a: Key, b: Key) -> Result<f64> {
        self.check_key(a)?;
        self.check_key(b)?;
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        Ok((self.prefix[hi] - self.prefix[lo - 1]) + (self.residual[hi] - self.residual[lo - 1]))
    }
}

/// A point of the geometric model: `key` on the x-axis, `time` on the y-axis.
///
/// Points order by `(time, key)`, i.e. row-major from the first access.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    pub key: Key,
    pub time: usize,
}

impl Point {
    pub fn new(key: Key, time: usize) -> Self {
        Self { key, time }
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.time, self.key).cmp(&(other.time, other.key))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A duplicate-free set of points with row (time -> keys) and column
/// (key -> times) indices kept in sync.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PointSet {
    rows: BTreeMap<usize, BTreeSet<Key>>,
    cols: BTreeMap<Key, BTreeSet<usize>>,
    len: usize,
}

impl PointSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `p`, returning `false` if it was already present.
    pub fn insert(&mut self, p: Point) -> bool {
        if !self.rows.entry(p.time).or_default().insert(p.key) {
            return false;
        }
        self.cols.entry(p.key).or_default().insert(p.time);
        self.len += 1;
        true
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.rows.get(&p.time).is_some_and(|r| r.contains(&p.key))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Points in `(time, key)` order.
    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.rows
            .iter()
            .flat_map(|(&t, keys)| keys.iter().map(move |&k| Point::new(k, t)))
    }

    /// Keys present in row `time`, ascending.
    pub fn row(&self, time: usize) -> Option<&BTreeSet<Key>> {
        self.rows.get(&time)
    }

    /// Times present in column `key`, ascending.
    pub fn column(&self, key: Key) -> Option<&BTreeSet<usize>> {
        self.cols.get(&key)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &BTreeSet<Key>)> + '_ {
        self.rows.iter().map(|(&t, r)| (t, r))
    }

    /// Rows strictly after `time`, ascending.
    pub fn rows_after(&self, time: usize) -> impl Iterator<Item = (usize, &BTreeSet<Key>)> + '_ {
        self.rows.range(time + 1..).map(|(&t, r)| (t, r))
    }

    /// Largest time present, or 0 for an empty set.
    pub fn max_time(&self) -> usize {
        self.rows.keys().next_back().copied().unwrap_or(0)
    }

    /// Renders the set as CSV rows `time,key` with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("time,key\n");
        for p in self.iter() {
            out.push_str(&format!("{},{}\n", p.time, p.key));
        }
        out
    }
}

impl FromIterator<Point> for PointSet {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        let mut set = PointSet::new();
        for p in iter {
            set.insert(p);
        }
        set
    }
}

impl Extend<Point> for PointSet {
    fn extend<I: IntoIterator<Item = Point>>(&mut self, iter: I) {
        for p in iter {
            self.insert(p);
        }
    }
}

/// Measured per-access cost (nodes or points touched) with its total.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CostReport {
    pub per_access: Vec<u64>,
    pub total: u64,
}

impl CostReport {
    pub fn from_costs(per_access: Vec<u64>) -> Self {
        let total = per_access.iter().sum();
        Self { per_access, total }
    }
}
