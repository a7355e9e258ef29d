//! Evaluates the weighted dynamic finger bound on a zipf finger workload
//! under equal weights and under weights that favour the middle keys.
//!
//! ```bash
//! cargo run --release -p greedy-finger --example weighted_bound
//! ```

use greedy_finger::bounds::{dynamic_finger_bound, weighted_df_bound, wdf_term, Start};
use greedy_finger::workloads::{generate, WorkloadKind, WorkloadSpec};
use greedy_finger::WeightAssignment;

fn main() -> greedy_finger::Result<()> {
    let n = 1024;
    let seq = generate(&WorkloadSpec::new(WorkloadKind::ZipfFinger { theta: 1.5 }, n, 20_000, 7))?;

    let equal = dynamic_finger_bound(&seq);
    let centre = (n as f64 + 1.0) / 2.0;
    let peaked = WeightAssignment::new((1..=n).map(|k| 1.0 / (1.0 + (k as f64 - centre).abs())).collect())?;
    let finger = weighted_df_bound(&seq, &peaked, Start::Finger)?;
    let root = weighted_df_bound(&seq, &peaked, Start::Root)?;

    println!("equal weights        {:>12.1}", equal.total);
    println!("peaked, finger start {:>12.1}", finger.total);
    println!("peaked, root start   {:>12.1}", root.total);

    for (a, b) in [(512, 513), (1, 2), (1, 1024), (500, 524)] {
        println!(
            "term {a:>4} -> {b:<4}  equal {:6.3}  peaked {:6.3}",
            wdf_term(&WeightAssignment::equal(n)?, a, b)?,
            wdf_term(&peaked, a, b)?
        );
    }
    Ok(())
}
