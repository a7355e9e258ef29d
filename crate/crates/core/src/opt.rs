//! Exact offline optimum for tiny instances: the smallest arborally satisfied
//! superset of the access points inside the `n x m` access grid.

use crate::model::{AccessSequence, Point, PointSet};
use crate::{Error, Result};

pub const MAX_KEYS: usize = 5;
pub const MAX_ACCESSES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptResult {
    pub size: usize,
    pub witness: PointSet,
}

/// Grid cells are bits `(time - 1) * n + (key - 1)`.
struct Grid {
    n: usize,
    // (corner pair mask, rectangle mask without the corners)
    rectangles: Vec<(u32, u32)>,
}

impl Grid {
    fn new(n: usize, m: usize) -> Self {
        let cell = |k: usize, t: usize| (t - 1) * n + (k - 1);
        let cells: Vec<(usize, usize)> = (1..=m).flat_map(|t| (1..=n).map(move |k| (k, t))).collect();
        let mut rectangles = Vec::new();
        for (i, &(k1, t1)) in cells.iter().enumerate() {
            for &(k2, t2) in &cells[i + 1..] {
                if k1 == k2 || t1 == t2 {
                    continue;
                }
                let corners = (1u32 << cell(k1, t1)) | (1u32 << cell(k2, t2));
                let mut inside = 0u32;
                for k in k1.min(k2)..=k1.max(k2) {
                    for t in t1.min(t2)..=t1.max(t2) {
                        inside |= 1 << cell(k, t);
                    }
                }
                rectangles.push((corners, inside & !corners));
            }
        }
        Self { n, rectangles }
    }

    fn satisfied(&self, mask: u32) -> bool {
        self.rectangles
            .iter()
            .all(|&(corners, inside)| mask & corners != corners || mask & inside != 0)
    }

    fn points(&self, mask: u32) -> PointSet {
        (0..32)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| Point::new(b % self.n + 1, b / self.n + 1))
            .collect()
    }
}

/// Minimum satisfied superset by iterative deepening over the number of added
/// grid points. Refuses instances beyond `MAX_KEYS` keys or `MAX_ACCESSES`
/// accesses.
pub fn opt_satisfied_superset(seq: &AccessSequence) -> Result<OptResult> {
    let (n, m) = (seq.n(), seq.m());
    if n > MAX_KEYS || m > MAX_ACCESSES {
        return Err(Error::TooLarge(format!(
            "exact optimum needs n <= {MAX_KEYS} and m <= {MAX_ACCESSES}, got n = {n}, m = {m}"
        )));
    }
    let grid = Grid::new(n, m);
    let base = seq
        .accesses()
        .iter()
        .enumerate()
        .fold(0u32, |mask, (t, &k)| mask | 1 << (t * n + k - 1));
    let free: Vec<u32> = (0..n * m).map(|b| 1u32 << b).filter(|bit| base & bit == 0).collect();

    for extra in 0..=free.len() {
        if let Some(mask) = first_satisfied(&grid, base, &free, extra) {
            return Ok(OptResult {
                size: mask.count_ones() as usize,
                witness: grid.points(mask),
            });
        }
    }
    unreachable!("the full grid is always satisfied")
}

fn first_satisfied(grid: &Grid, base: u32, free: &[u32], extra: usize) -> Option<u32> {
    let mut idx: Vec<usize> = (0..extra).collect();
    loop {
        let mask = idx.iter().fold(base, |acc, &i| acc | free[i]);
        if grid.satisfied(mask) {
            return Some(mask);
        }
        let i = (0..extra).rev().find(|&i| idx[i] < free.len() - extra + i)?;
        idx[i] += 1;
        for j in i + 1..extra {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
