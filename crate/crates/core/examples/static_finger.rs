//! Compares greedy with static finger trees: a balanced tree, the
//! weighted-median tree built from access frequencies, and the best tree
//! found by enumeration.
//!
//! ```bash
//! cargo run --release -p greedy-finger --example static_finger
//! ```

use greedy_finger::bounds::{best_static_finger_cost, static_finger_cost, tree_from_weights, StaticTree};
use greedy_finger::greedy::greedy_cost;
use greedy_finger::workloads::{generate, WorkloadKind, WorkloadSpec};
use greedy_finger::WeightAssignment;

fn describe(name: &str, tree: &StaticTree, cost: u64) {
    println!("{name:<10} root {:>2} height {:>2} cost {cost}", tree.root(), tree.height());
}

fn main() -> greedy_finger::Result<()> {
    let n = 10;
    let seq = generate(&WorkloadSpec::new(WorkloadKind::ZipfFinger { theta: 1.2 }, n, 200, 3))?;

    let mut freq = vec![0.5; n];
    for &k in seq.accesses() {
        freq[k - 1] += 1.0;
    }
    let median = tree_from_weights(&WeightAssignment::new(freq)?);
    let balanced = StaticTree::balanced(n)?;
    let (best, best_cost) = best_static_finger_cost(&seq)?;

    describe("balanced", &balanced, static_finger_cost(&balanced, &seq)?.total);
    describe("median", &median, static_finger_cost(&median, &seq)?.total);
    describe("best", &best, best_cost);
    println!("greedy     cost {}", greedy_cost(&seq).total);

    let parents: Vec<usize> = (1..=n).map(|k| best.parent(k).unwrap_or(0)).collect();
    println!("best tree parents (0 = root): {parents:?}");
    Ok(())
}
