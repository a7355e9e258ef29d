//! Runs greedy on a short trace and prints the touched points row by row,
//! then checks the result against the satisfaction test.
//!
//! ```bash
//! cargo run -p greedy-finger --example greedy_geometry
//! ```

use greedy_finger::geometry::{is_arborally_satisfied, unsatisfied_pairs};
use greedy_finger::greedy::{greedy_execute, GreedyState};
use greedy_finger::{AccessSequence, Point, PointSet};

fn main() -> greedy_finger::Result<()> {
    let seq = AccessSequence::new(6, vec![3, 6, 1, 4, 2, 5, 3])?;
    let run = greedy_execute(&seq);
    for (t, row) in run.rows.iter().enumerate() {
        let mut line = vec!['.'; seq.n()];
        for &k in row {
            line[k - 1] = if k == seq.accesses()[t] { 'X' } else { 'o' };
        }
        println!("t={:<2} {}  cost {}", t + 1, line.iter().collect::<String>(), row.len());
    }
    println!("total {}", run.cost.total);
    println!("satisfied: {}", is_arborally_satisfied(&run.points));

    // The bare access points are usually not satisfied.
    let bare: PointSet = seq
        .accesses()
        .iter()
        .enumerate()
        .map(|(i, &k)| Point::new(k, i + 1))
        .collect();
    println!("bare accesses leave {} unsatisfied pairs", unsatisfied_pairs(&bare).len());

    // Greedy also runs online, one access at a time.
    let mut state = GreedyState::new(seq.n());
    for &x in seq.accesses() {
        state.access(x)?;
    }
    assert_eq!(state.per_row_cost(), run.cost.per_access.as_slice());
    Ok(())
}
