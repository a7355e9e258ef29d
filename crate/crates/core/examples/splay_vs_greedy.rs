//! Runs greedy and splay side by side on each generated workload family
//! and fits both against the equal-weights bound.
//!
//! ```bash
//! cargo run --release -p greedy-finger --example splay_vs_greedy
//! ```

use greedy_finger::bounds::Start;
use greedy_finger::harness::{run_experiment, Algo};
use greedy_finger::splay::InitialShape;
use greedy_finger::workloads::{generate, WorkloadKind, WorkloadSpec};

fn main() -> greedy_finger::Result<()> {
    let (n, m) = (4096, 50_000);
    let kinds = [
        ("sequential", WorkloadKind::Sequential),
        ("uniform", WorkloadKind::Uniform),
        ("walk d=8", WorkloadKind::Walk { max_step: 8 }),
        ("zipf 1.5", WorkloadKind::ZipfFinger { theta: 1.5 }),
        ("bit_reversal", WorkloadKind::BitReversal),
    ];
    // Bit reversal is a single pass over the keys.
    println!("{:<13} {:>10} {:>10} {:>7} {:>7}", "workload", "greedy", "splay", "g/bound", "s/bound");
    for (name, kind) in kinds {
        let len = if matches!(kind, WorkloadKind::BitReversal) { n } else { m };
        let seq = generate(&WorkloadSpec::new(kind, n, len, 1))?;
        let g = run_experiment(&seq, Algo::Greedy, None, Start::Finger)?;
        let s = run_experiment(&seq, Algo::Splay(InitialShape::Balanced), None, Start::Finger)?;
        println!(
            "{name:<13} {:>10} {:>10} {:>7.3} {:>7.3}",
            g.cost.total, s.cost.total, g.fit.ratio, s.fit.ratio
        );
    }
    Ok(())
}
