//! Generates a trace and a weight file, writes both, and reads them back.
//!
//! ```bash
//! cargo run -p greedy-finger --example workloads_io
//! ```

use greedy_finger::bounds::{tree_from_weights, weights_from_tree};
use greedy_finger::workloads::{self, SplitMix64, WorkloadKind, WorkloadSpec};
use greedy_finger::WeightAssignment;

fn main() -> greedy_finger::Result<()> {
    let dir = std::env::temp_dir().join("greedy-finger-example");
    std::fs::create_dir_all(&dir)?;

    let spec = WorkloadSpec::new(WorkloadKind::Walk { max_step: 4 }, 100, 12, 42);
    let seq = workloads::generate(&spec)?;
    let trace = dir.join("walk.trace");
    workloads::write_trace(&seq, &trace)?;
    assert_eq!(workloads::read_trace(&trace)?, seq);
    print!("{}", workloads::format_trace(&seq));

    let mut rng = SplitMix64::new(42);
    let raw = WeightAssignment::new((0..8).map(|_| rng.unit() + 0.01).collect())?;
    let w = weights_from_tree(&tree_from_weights(&raw), 2.0)?;
    let path = dir.join("tree.weights");
    workloads::write_weights(&w, &path)?;
    assert_eq!(workloads::read_weights(&path)?, w);
    print!("{}", workloads::format_weights(&w));

    println!("wrote {}", dir.display());
    Ok(())
}
