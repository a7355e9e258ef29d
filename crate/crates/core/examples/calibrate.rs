//! Measures the regression constants pinned by the acceptance suite.
//!
//! ```bash
//! cargo run --release -p greedy-finger --example calibrate
//! ```

use greedy_finger::bounds::{self, for_each_bst, StaticTree, Start};
use greedy_finger::greedy::greedy_cost;
use greedy_finger::harness::verify_opt;
use greedy_finger::splay::{run_splay, InitialShape};
use greedy_finger::workloads::{generate, SplitMix64, WorkloadKind, WorkloadSpec};
use greedy_finger::{AccessSequence, WeightAssignment};

fn prefix_ratio(cost: &[u64], bound: &[f64], len: usize) -> f64 {
    cost[..len].iter().sum::<u64>() as f64 / bound[..len].iter().sum::<f64>()
}

fn main() -> greedy_finger::Result<()> {
    println!("[opt] {}", verify_opt(4, 4).notes.join("; "));

    let m = 10_000;
    let seq = generate(&WorkloadSpec::new(WorkloadKind::Sequential, m, m, 0))?;
    let ratio = greedy_cost(&seq).total as f64 / bounds::dynamic_finger_bound(&seq).total;
    println!("[sequential] n = m = {m}: greedy / bound = {ratio}");

    for d in [2, 8, 64] {
        for seed in [1, 2, 3] {
            let seq = generate(&WorkloadSpec::new(WorkloadKind::Walk { max_step: d }, 1 << 16, 100_000, seed))?;
            let cost = greedy_cost(&seq).per_access;
            let bound = bounds::dynamic_finger_bound(&seq).per_access;
            let ratios: Vec<String> = [1_000, 10_000, 100_000]
                .iter()
                .map(|&len| format!("{:.6}", prefix_ratio(&cost, &bound, len)))
                .collect();
            println!("[walk] d = {d:>2} seed = {seed}: {}", ratios.join(" "));
        }
    }

    let n = 4096;
    let skewed = WeightAssignment::new((1..=n).map(|i| (i as f64).powf(-1.5)).collect())?;
    let tree = bounds::tree_from_weights(&skewed);
    let w = bounds::weights_from_tree(&tree, 2.0)?;
    for seed in [1, 2, 3] {
        let seq = generate(&WorkloadSpec::new(WorkloadKind::ZipfFinger { theta: 1.5 }, n, 100_000, seed))?;
        let ratio = greedy_cost(&seq).total as f64 / bounds::weighted_df_bound(&seq, &w, Start::Finger)?.total;
        println!("[weighted] zipf_finger seed = {seed}: greedy / bound = {ratio}");
    }

    // Largest (term - path nodes) over every tree on up to 8 keys and every
    // ordered pair of distinct keys, with a = 1.
    let mut slack = f64::MIN;
    for n in 1..=8 {
        for_each_bst(n, |parents, _| {
            let tree = StaticTree::from_parents(&parents[1..]).unwrap();
            let w = bounds::weights_from_tree(&tree, 2.0).unwrap();
            for u in 1..=n {
                for v in 1..=n {
                    let term = bounds::wdf_term(&w, u, v).unwrap();
                    slack = slack.max(term - tree.path_nodes(u, v) as f64);
                }
            }
        });
    }
    println!("[equivalence] max term - path nodes (a = 1): {slack}");

    let mut rng = SplitMix64::new(8);
    let mut worst: f64 = 0.0;
    for trial in 0..300 {
        let n = 1 + trial % 10;
        let keys = (0..50).map(|_| rng.below(n as u64) as usize + 1).collect();
        let seq = AccessSequence::new(n, keys)?;
        let (_, best) = bounds::best_static_finger_cost(&seq)?;
        worst = worst.max(greedy_cost(&seq).total as f64 / best as f64);
    }
    println!("[equivalence] max greedy / best static (n <= 10, m = 50): {worst}");

    let seq = generate(&WorkloadSpec::new(WorkloadKind::Sequential, 4096, 4096, 0))?;
    println!(
        "[splay] sequential n = 4096 from left spine: {}",
        run_splay(&seq, InitialShape::LeftSpine).total
    );
    Ok(())
}
