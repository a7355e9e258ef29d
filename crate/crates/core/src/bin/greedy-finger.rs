use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use greedy_finger::bounds::{self, Start};
use greedy_finger::greedy;
use greedy_finger::harness::{self, Algo, FitResult, Suite};
use greedy_finger::opt::opt_satisfied_superset;
use greedy_finger::splay::InitialShape;
use greedy_finger::workloads::{self, WorkloadKind, WorkloadSpec};
use greedy_finger::{Result, WeightAssignment};

#[derive(Parser)]
#[command(name = "greedy-finger", version, about = "Greedy BST execution against weighted dynamic finger bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded access trace.
    Gen {
        #[arg(long, value_enum)]
        workload: WorkloadArg,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum step for `walk`.
        #[arg(long)]
        d: Option<usize>,
        /// Step-size exponent for `zipf_finger`.
        #[arg(long)]
        theta: Option<f64>,
        /// Source trace for `--workload trace`.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run an algorithm on a trace; prints `i,key,cost,bound` rows.
    Run {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        trace: PathBuf,
        #[command(flatten)]
        bound: BoundArgs,
        #[arg(long, value_enum, default_value_t = ShapeArg::Balanced)]
        initial: ShapeArg,
        /// Also write greedy's touched points as `time,key` rows.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Write the `ratio,slope,intercept,r2` fit here as well as to stderr.
        #[arg(long)]
        fit_out: Option<PathBuf>,
    },
    /// Evaluate the weighted dynamic finger bound; prints `i,key,term` rows.
    Bound {
        #[arg(long)]
        trace: PathBuf,
        #[command(flatten)]
        bound: BoundArgs,
    },
    /// Best static finger tree by enumeration (n <= 12).
    Beststatic {
        #[arg(long)]
        trace: PathBuf,
        /// Write the tree as `key,parent,depth` rows (parent 0 = root).
        #[arg(long)]
        tree_out: Option<PathBuf>,
    },
    /// Exact optimum vs greedy on a tiny trace (n, m <= 5).
    Opt {
        #[arg(long)]
        trace: PathBuf,
    },
    /// Fit cumulative cost against cumulative bound from CSV files.
    Fit {
        #[arg(long)]
        cost: PathBuf,
        #[arg(long)]
        bound: PathBuf,
    },
    /// Run a property suite; exits 1 on failure.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, conflicts_with = "equal")]
    weights: Option<PathBuf>,
    /// All weights equal (the default).
    #[arg(long)]
    equal: bool,
    #[arg(long, value_enum, default_value_t = StartArg::SelfFinger)]
    start: StartArg,
}

impl BoundArgs {
    fn weights(&self) -> Result<Option<WeightAssignment>> {
        self.weights.as_ref().map(workloads::read_weights).transpose()
    }

    fn start(&self) -> Start {
        match self.start {
            StartArg::SelfFinger => Start::Finger,
            StartArg::Root => Start::Root,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WorkloadArg {
    Sequential,
    Uniform,
    Walk,
    #[value(name = "zipf_finger")]
    ZipfFinger,
    #[value(name = "bit_reversal")]
    BitReversal,
    Trace,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Greedy,
    Splay,
}

#[derive(Clone, Copy, ValueEnum)]
enum StartArg {
    #[value(name = "self")]
    SelfFinger,
    Root,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Balanced,
    #[value(name = "left_spine")]
    LeftSpine,
    #[value(name = "right_spine")]
    RightSpine,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Satisfaction,
    Minimality,
    Opt,
    Depth,
    Roundtrip,
    Differential,
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)?;
    Ok(())
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gen {
            workload,
            n,
            m,
            seed,
            d,
            theta,
            trace,
            out,
        } => {
            let kind = match workload {
                WorkloadArg::Sequential => WorkloadKind::Sequential,
                WorkloadArg::Uniform => WorkloadKind::Uniform,
                WorkloadArg::Walk => WorkloadKind::Walk { max_step: d.unwrap_or(1) },
                WorkloadArg::ZipfFinger => WorkloadKind::ZipfFinger { theta: theta.unwrap_or(2.0) },
                WorkloadArg::BitReversal => WorkloadKind::BitReversal,
                WorkloadArg::Trace => WorkloadKind::Trace(trace.ok_or_else(|| {
                    greedy_finger::Error::BadSpec("--workload trace needs --trace FILE".into())
                })?),
            };
            let seq = workloads::generate(&WorkloadSpec::new(kind, n, m, seed))?;
            workloads::write_trace(&seq, out)?;
        }
        Command::Run {
            algo,
            trace,
            bound,
            initial,
            points,
            fit_out,
        } => {
            let seq = workloads::read_trace(trace)?;
            let shape = match initial {
                ShapeArg::Balanced => InitialShape::Balanced,
                ShapeArg::LeftSpine => InitialShape::LeftSpine,
                ShapeArg::RightSpine => InitialShape::RightSpine,
            };
            let algo = match algo {
                AlgoArg::Greedy => Algo::Greedy,
                AlgoArg::Splay => Algo::Splay(shape),
            };
            let experiment = harness::run_experiment(&seq, algo, bound.weights()?.as_ref(), bound.start())?;
            print!("{}", experiment.to_csv());
            let fit = format!("{}\n{}\n", FitResult::csv_header(), experiment.fit.csv_row());
            eprint!("{fit}");
            if let Some(path) = fit_out {
                write_out(&path, &fit)?;
            }
            if let (Some(path), Algo::Greedy) = (points, algo) {
                write_out(&path, &greedy::greedy_execute(&seq).points.to_csv())?;
            }
        }
        Command::Bound { trace, bound } => {
            let seq = workloads::read_trace(trace)?;
            let w = match bound.weights()? {
                Some(w) => w,
                None => WeightAssignment::equal(seq.n())?,
            };
            let report = bounds::weighted_df_bound(&seq, &w, bound.start())?;
            print!("{}", harness::bound_csv(&seq, &report));
        }
        Command::Beststatic { trace, tree_out } => {
            let seq = workloads::read_trace(trace)?;
            let (tree, total) = bounds::best_static_finger_cost(&seq)?;
            println!("total,root\n{total},{}", tree.root());
            if let Some(path) = tree_out {
                let mut rows = String::from("key,parent,depth\n");
                for k in 1..=tree.n() {
                    rows.push_str(&format!("{k},{},{}\n", tree.parent(k).unwrap_or(0), tree.depth(k)));
                }
                write_out(&path, &rows)?;
            }
        }
        Command::Opt { trace } => {
            let seq = workloads::read_trace(trace)?;
            let opt = opt_satisfied_superset(&seq)?;
            let greedy_size = greedy::greedy_cost(&seq).total;
            println!(
                "opt_size,greedy_size,ratio\n{},{greedy_size},{}",
                opt.size,
                greedy_size as f64 / opt.size as f64
            );
        }
        Command::Fit { cost, bound } => {
            let fit = harness::fit_files(cost, bound)?;
            println!("{}\n{}", FitResult::csv_header(), fit.csv_row());
        }
        Command::Verify { suite, seed } => {
            let suite = match suite {
                SuiteArg::Satisfaction => Suite::Satisfaction,
                SuiteArg::Minimality => Suite::Minimality,
                SuiteArg::Opt => Suite::Opt,
                SuiteArg::Depth => Suite::Depth,
                SuiteArg::Roundtrip => Suite::Roundtrip,
                SuiteArg::Differential => Suite::Differential,
            };
            let report = harness::verify(suite, seed);
            print!("{}", report.render());
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
