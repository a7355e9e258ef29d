//! Finds the smallest satisfied superset for every trace on four keys
//! with three accesses and reports where greedy is not optimal.
//!
//! ```bash
//! cargo run --release -p greedy-finger --example opt_small
//! ```

use greedy_finger::greedy::greedy_cost;
use greedy_finger::harness::all_sequences;
use greedy_finger::opt::opt_satisfied_superset;
use greedy_finger::AccessSequence;

fn main() -> greedy_finger::Result<()> {
    let (n, m) = (4, 3);
    let mut gaps = 0;
    for keys in all_sequences(n, m) {
        let seq = AccessSequence::new(n, keys.clone())?;
        let opt = opt_satisfied_superset(&seq)?;
        let greedy = greedy_cost(&seq).total as usize;
        if greedy > opt.size {
            gaps += 1;
            println!("{keys:?}: opt {} greedy {greedy}", opt.size);
            for p in opt.witness.iter() {
                print!(" ({},{})", p.key, p.time);
            }
            println!();
        }
    }
    println!("{gaps} of {} traces where greedy exceeds the optimum", n.pow(m as u32));
    Ok(())
}
