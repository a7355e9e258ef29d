//! Arboral satisfaction over point sets.
//!
//! Two points with distinct keys and distinct times span a closed rectangle;
//! the pair is satisfied when some third point of the set lies in it,
//! boundary included. Pairs sharing a key or a time span nothing.

use std::ops::ControlFlow;

use crate::model::{Point, PointSet};

/// True iff every rectangle spanned by two points of `set` contains a third.
pub fn is_arborally_satisfied(set: &PointSet) -> bool {
    for_each_unsatisfied(set, |_, _| ControlFlow::Break(())).is_continue()
}

/// Every unsatisfied pair `(a, b)` with `a < b`, sorted lexicographically
/// under the `(time, key)` point order.
pub fn unsatisfied_pairs(set: &PointSet) -> Vec<(Point, Point)> {
    let mut out = Vec::new();
    let _ = for_each_unsatisfied(set, |a, b| {
        out.push((a, b));
        ControlFlow::<()>::Continue(())
    });
    out.sort_unstable();
    out
}

// For each lower point p = (k, t), sweep upward through later rows keeping the
// open key windows (left_limit, k) and (k, right_limit) whose rectangles with p
// are still empty. The nearest key inside a window on a later row forms an
// empty rectangle with p and then narrows the window. A point in column k ends
// the sweep for p, as it lies inside every later rectangle.
fn for_each_unsatisfied<B>(
    set: &PointSet,
    mut visit: impl FnMut(Point, Point) -> ControlFlow<B>,
) -> ControlFlow<B> {
    for (t, row) in set.rows() {
        for &k in row {
            let mut right_limit = row.range(k + 1..).next().copied().unwrap_or(usize::MAX);
            let mut left_limit = row.range(..k).next_back().copied().unwrap_or(0);
            let p = Point::new(k, t);
            for (t2, later) in set.rows_after(t) {
                let right_open = right_limit > k + 1;
                let left_open = left_limit + 1 < k;
                if !(right_open || left_open) || later.contains(&k) {
                    break;
                }
                if right_open {
                    if let Some(&k2) = later.range(k + 1..right_limit).next() {
                        visit(p, Point::new(k2, t2))?;
                        right_limit = k2;
                    }
                }
                if left_open {
                    if let Some(&k2) = later.range(left_limit + 1..k).next_back() {
                        visit(p, Point::new(k2, t2))?;
                        left_limit = k2;
                    }
                }
            }
        }
    }
    ControlFlow::Continue(())
}
