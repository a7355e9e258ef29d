//! Fits cumulative greedy cost against the cumulative bound on walks of
//! growing step size.
//!
//! ```bash
//! cargo run --release -p greedy-finger --example fit_constants
//! ```

use greedy_finger::bounds::dynamic_finger_bound;
use greedy_finger::greedy::greedy_cost;
use greedy_finger::harness::{fit, FitResult};
use greedy_finger::workloads::{generate, WorkloadKind, WorkloadSpec};

fn main() -> greedy_finger::Result<()> {
    println!("d,{}", FitResult::csv_header());
    for d in [1, 4, 16, 64, 256, 1024] {
        let seq = generate(&WorkloadSpec::new(WorkloadKind::Walk { max_step: d }, 1 << 16, 50_000, 9))?;
        let cost: Vec<f64> = greedy_cost(&seq).per_access.iter().map(|&c| c as f64).collect();
        let result = fit(&cost, &dynamic_finger_bound(&seq).per_access)?;
        println!("{d},{}", result.csv_row());
    }
    Ok(())
}
