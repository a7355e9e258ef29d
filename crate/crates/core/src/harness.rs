//! Experiments, constant fitting and the property suites behind `verify`.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::bounds::{self, BoundReport, Start};
use crate::geometry::is_arborally_satisfied;
use crate::greedy::{self, GreedyState};
use crate::model::{AccessSequence, CostReport, PointSet, WeightAssignment};
use crate::opt::opt_satisfied_superset;
use crate::splay::{self, InitialShape};
use crate::workloads::{self, SplitMix64, WorkloadKind, WorkloadSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    Greedy,
    Splay(InitialShape),
}

/// Least-squares fit of cumulative cost against cumulative bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    /// Total cost over total bound.
    pub ratio: f64,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

impl FitResult {
    pub fn csv_header() -> &'static str {
        "ratio,slope,intercept,r2"
    }

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.ratio, self.slope, self.intercept, self.r2)
    }
}

/// Fits `Y = slope * X + intercept` where `X` and `Y` are the prefix sums of
/// `bound` and `cost`.
pub fn fit(cost: &[f64], bound: &[f64]) -> Result<FitResult> {
    if cost.len() != bound.len() {
        return Err(Error::DimensionMismatch {
            expected: bound.len(),
            found: cost.len(),
        });
    }
    if cost.is_empty() {
        return Err(Error::EmptySequence);
    }
    let cumulative = |v: &[f64]| {
        v.iter()
            .scan(0.0, |acc, x| {
                *acc += x;
                Some(*acc)
            })
            .collect::<Vec<f64>>()
    };
    let (xs, ys) = (cumulative(bound), cumulative(cost));
    let len = xs.len() as f64;
    let ratio = ys[ys.len() - 1] / xs[xs.len() - 1];
    let (mx, my) = (xs.iter().sum::<f64>() / len, ys.iter().sum::<f64>() / len);
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 {
        return Ok(FitResult {
            ratio,
            slope: ratio,
            intercept: 0.0,
            r2: 1.0,
        });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    let r2 = if syy == 0.0 { 1.0 } else { (1.0 - ss_res / syy).clamp(0.0, 1.0) };
    Ok(FitResult {
        ratio,
        slope,
        intercept,
        r2,
    })
}

/// Reads a cost column (`cost`) and a bound column (`bound` or `term`) from
/// two CSV files and fits them.
pub fn fit_files(cost_csv: impl AsRef<Path>, bound_csv: impl AsRef<Path>) -> Result<FitResult> {
    let cost = read_column(cost_csv.as_ref(), &["cost"])?;
    let bound = read_column(bound_csv.as_ref(), &["bound", "term"])?;
    fit(&cost, &bound)
}

fn read_column(path: &Path, names: &[&str]) -> Result<Vec<f64>> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let col = names
        .iter()
        .find_map(|name| headers.iter().position(|h| h.trim() == *name))
        .ok_or_else(|| Error::Parse {
            line: 1,
            msg: format!("{}: no column named {}", path.display(), names.join(" or ")),
        })?;
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let field = record.get(col).unwrap_or("");
        out.push(field.trim().parse().map_err(|e| Error::Parse {
            line: i + 2,
            msg: format!("{}: bad number {field:?}: {e}", path.display()),
        })?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub seq: AccessSequence,
    pub cost: CostReport,
    pub bound: BoundReport,
    pub fit: FitResult,
}

impl Experiment {
    /// Per-access rows `i,key,cost,bound`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,key,cost,bound\n");
        for (i, ((k, c), b)) in self
            .seq
            .accesses()
            .iter()
            .zip(&self.cost.per_access)
            .zip(&self.bound.per_access)
            .enumerate()
        {
            let _ = writeln!(out, "{},{k},{c},{b}", i + 1);
        }
        out
    }
}

/// Per-access rows `i,key,term`.
pub fn bound_csv(seq: &AccessSequence, bound: &BoundReport) -> String {
    let mut out = String::from("i,key,term\n");
    for (i, (k, t)) in seq.accesses().iter().zip(&bound.per_access).enumerate() {
        let _ = writeln!(out, "{},{k},{t}", i + 1);
    }
    out
}

pub fn algo_cost(seq: &AccessSequence, algo: Algo) -> CostReport {
    match algo {
        Algo::Greedy => greedy::greedy_cost(seq),
        Algo::Splay(shape) => splay::run_splay(seq, shape),
    }
}

/// Runs `algo` on `seq` and compares it with the weighted bound; `None`
/// weights means all weights equal.
pub fn run_experiment(
    seq: &AccessSequence,
    algo: Algo,
    weights: Option<&WeightAssignment>,
    start: Start,
) -> Result<Experiment> {
    let equal;
    let w = match weights {
        Some(w) => w,
        None => {
            equal = WeightAssignment::equal(seq.n())?;
            &equal
        }
    };
    let bound = bounds::weighted_df_bound(seq, w, start)?;
    let cost = algo_cost(seq, algo);
    let costs: Vec<f64> = cost.per_access.iter().map(|&c| c as f64).collect();
    let fit = fit(&costs, &bound.per_access)?;
    Ok(Experiment {
        seq: seq.clone(),
        cost,
        bound,
        fit,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Satisfaction,
    Minimality,
    Opt,
    Depth,
    Roundtrip,
    Differential,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Satisfaction,
        Suite::Minimality,
        Suite::Opt,
        Suite::Depth,
        Suite::Roundtrip,
        Suite::Differential,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Satisfaction => "satisfaction",
            Suite::Minimality => "minimality",
            Suite::Opt => "opt",
            Suite::Depth => "depth",
            Suite::Roundtrip => "roundtrip",
            Suite::Differential => "differential",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyReport {
    pub suite: String,
    pub checked: usize,
    /// One line per failing instance, describing the counterexample.
    pub failures: Vec<String>,
    /// Measured quantities worth printing (e.g. the largest greedy/OPT ratio).
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "{}: {} ({} instances checked)\n",
            self.suite,
            if self.passed() { "pass" } else { "FAIL" },
            self.checked
        );
        for note in &self.notes {
            let _ = writeln!(out, "  {note}");
        }
        for failure in self.failures.iter().take(20) {
            let _ = writeln!(out, "  counterexample: {failure}");
        }
        out
    }
}

/// Every sequence of length `m` over `1..=n`, in lexicographic order.
pub fn all_sequences(n: usize, m: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(m as u32);
    (0..total).map(move |mut code| {
        let mut s = vec![0; m];
        for slot in s.iter_mut().rev() {
            *slot = code % n + 1;
            code /= n;
        }
        s
    })
}

fn random_sequence(rng: &mut SplitMix64, max_n: usize, max_m: usize) -> AccessSequence {
    let n = rng.below(max_n as u64) as usize + 1;
    let m = rng.below(max_m as u64) as usize + 1;
    let keys = (0..m).map(|_| rng.below(n as u64) as usize + 1).collect();
    AccessSequence::new(n, keys).expect("generated in range")
}

pub fn verify(suite: Suite, seed: u64) -> VerifyReport {
    let mut report = match suite {
        Suite::Satisfaction => verify_satisfaction(seed),
        Suite::Minimality => verify_minimality(5, 5),
        Suite::Opt => verify_opt(4, 4),
        Suite::Depth => verify_depth(seed),
        Suite::Roundtrip => verify_roundtrip(seed),
        Suite::Differential => verify_differential(seed),
    };
    report.suite = suite.name().to_string();
    report
}

fn check_satisfied(seq: &AccessSequence) -> Option<String> {
    let run = greedy::greedy_execute(seq);
    (!is_arborally_satisfied(&run.points)).then(|| format!("n={} s={:?}", seq.n(), seq.accesses()))
}

/// Greedy output is satisfied on 1000 seeded random instances (`n <= 64`,
/// `m <= 256`) and on every instance with `n, m <= 4`.
pub fn verify_satisfaction(seed: u64) -> VerifyReport {
    let mut rng = SplitMix64::new(seed);
    let mut instances: Vec<AccessSequence> = (0..1000).map(|_| random_sequence(&mut rng, 64, 256)).collect();
    for n in 1..=4 {
        for m in 1..=4 {
            instances.extend(all_sequences(n, m).map(|s| AccessSequence::new(n, s).unwrap()));
        }
    }
    let failures: Vec<String> = instances.par_iter().filter_map(check_satisfied).collect();
    VerifyReport {
        checked: instances.len(),
        failures,
        ..Default::default()
    }
}

/// Greedy's row equals the unique minimum feasible row for every prefix of
/// every sequence with `n <= max_n`, `m <= max_m`.
pub fn verify_minimality(max_n: usize, max_m: usize) -> VerifyReport {
    let per_n: Vec<(usize, Vec<String>)> = (1..=max_n)
        .into_par_iter()
        .map(|n| {
            let mut failures = Vec::new();
            let mut checked = 0;
            let mut prefix = Vec::new();
            minimality_dfs(n, max_m, &GreedyState::new(n), &PointSet::new(), &mut prefix, &mut checked, &mut failures);
            (checked, failures)
        })
        .collect();
    let checked = per_n.iter().map(|p| p.0).sum();
    let failures = per_n.into_iter().flat_map(|p| p.1).collect();
    VerifyReport {
        checked,
        failures,
        ..Default::default()
    }
}

fn minimality_dfs(
    n: usize,
    max_m: usize,
    state: &GreedyState,
    points: &PointSet,
    prefix: &mut Vec<usize>,
    checked: &mut usize,
    failures: &mut Vec<String>,
) {
    if prefix.len() == max_m {
        return;
    }
    let t = prefix.len() + 1;
    for x in 1..=n {
        *checked += 1;
        let fast = state.row(x).expect("key in range");
        let minimal = greedy::brute_min_rows_all(points, x, t, n);
        if minimal.len() != 1 || minimal[0] != fast {
            failures.push(format!(
                "n={n} prefix={prefix:?} x={x}: greedy row {fast:?}, minimum rows {minimal:?}"
            ));
            continue;
        }
        let mut next_state = state.clone();
        next_state.access(x).expect("key in range");
        let mut next_points = points.clone();
        next_points.extend(fast.iter().map(|&k| crate::model::Point::new(k, t)));
        prefix.push(x);
        minimality_dfs(n, max_m, &next_state, &next_points, prefix, checked, failures);
        prefix.pop();
    }
}

/// Exhaustive `opt <= greedy` over `n <= max_n`, `m <= max_m`, reporting the
/// largest greedy/OPT ratio seen.
pub fn verify_opt(max_n: usize, max_m: usize) -> VerifyReport {
    let instances: Vec<AccessSequence> = (1..=max_n)
        .flat_map(|n| (1..=max_m).flat_map(move |m| all_sequences(n, m).map(move |s| AccessSequence::new(n, s).unwrap())))
        .collect();
    let results: Vec<(f64, Option<String>, String)> = instances
        .par_iter()
        .map(|seq| {
            let opt = opt_satisfied_superset(seq).expect("within guard");
            let greedy_size = greedy::greedy_cost(seq).total as usize;
            let ratio = greedy_size as f64 / opt.size as f64;
            let desc = format!("n={} s={:?} opt={} greedy={greedy_size}", seq.n(), seq.accesses(), opt.size);
            let bad = (opt.size > greedy_size || opt.size < seq.m() || !is_arborally_satisfied(&opt.witness))
                .then(|| desc.clone());
            (ratio, bad, desc)
        })
        .collect();
    let worst = results
        .iter()
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|r| format!("max greedy/opt ratio {:.6} at {}", r.0, r.2))
        .unwrap_or_default();
    VerifyReport {
        checked: instances.len(),
        failures: results.into_iter().filter_map(|r| r.1).collect(),
        notes: vec![worst],
        ..Default::default()
    }
}

/// Weighted-median trees respect `depth(i) <= log2(W / w_i) + 1` on 1000
/// random weight vectors with `n <= 512`.
pub fn verify_depth(seed: u64) -> VerifyReport {
    let mut rng = SplitMix64::new(seed);
    let mut failures = Vec::new();
    for trial in 0..1000 {
        let n = rng.below(512) as usize + 1;
        // Log-uniform weights over six decades.
        let weights: Vec<f64> = (0..n).map(|_| 10f64.powf(rng.unit() * 6.0 - 3.0)).collect();
        let w = WeightAssignment::new(weights).expect("positive weights");
        let tree = bounds::tree_from_weights(&w);
        if let Some(k) = (1..=n).find(|&k| tree.depth(k) as f64 > (w.total() / w.weight(k)).log2() + 1.0) {
            failures.push(format!("trial {trial}: n={n} key {k} depth {}", tree.depth(k)));
        }
    }
    VerifyReport {
        checked: 1000,
        failures,
        ..Default::default()
    }
}

/// Generated traces survive a write/read through a file byte for byte.
pub fn verify_roundtrip(seed: u64) -> VerifyReport {
    let dir = std::env::temp_dir().join(format!("greedy-finger-roundtrip-{}-{seed}", std::process::id()));
    let mut failures = Vec::new();
    let mut checked = 0;
    if let Err(e) = std::fs::create_dir_all(&dir) {
        return VerifyReport {
            failures: vec![format!("cannot create {}: {e}", dir.display())],
            ..Default::default()
        };
    }
    let kinds = [
        (WorkloadKind::Sequential, 37),
        (WorkloadKind::Uniform, 64),
        (WorkloadKind::Walk { max_step: 4 }, 500),
        (WorkloadKind::ZipfFinger { theta: 1.5 }, 500),
        (WorkloadKind::BitReversal, 256),
    ];
    for (i, (kind, n)) in kinds.into_iter().enumerate() {
        let m = if kind == WorkloadKind::BitReversal { n } else { 1000 };
        let spec = WorkloadSpec::new(kind, n, m, seed);
        let path = dir.join(format!("{i}.trace"));
        let outcome = (|| -> Result<bool> {
            let seq = workloads::generate(&spec)?;
            let again = workloads::generate(&spec)?;
            workloads::write_trace(&seq, &path)?;
            let bytes = std::fs::read(&path)?;
            let back = workloads::read_trace(&path)?;
            workloads::write_trace(&back, &path)?;
            Ok(seq == again && back == seq && std::fs::read(&path)? == bytes)
        })();
        checked += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => failures.push(format!("{spec:?}: round trip changed the trace")),
            Err(e) => failures.push(format!("{spec:?}: {e}")),
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    VerifyReport {
        checked,
        failures,
        ..Default::default()
    }
}

/// Fast paths against their references: greedy staircase index vs linear
/// scan, arena splay vs boxed splay, prefix-sum bound vs summation loop.
pub fn verify_differential(seed: u64) -> VerifyReport {
    let mut rng = SplitMix64::new(seed);
    let mut failures = Vec::new();
    let mut checked = 0;

    for _ in 0..200 {
        let seq = random_sequence(&mut rng, 96, 256);
        let mut state = GreedyState::new(seq.n());
        for &x in seq.accesses() {
            if state.row(x).unwrap() != state.row_reference(x).unwrap() {
                failures.push(format!("greedy row: n={} s={:?} at t={}", seq.n(), seq.accesses(), state.time() + 1));
                break;
            }
            state.access(x).unwrap();
        }
        checked += 1;
    }

    let shapes = [InitialShape::Balanced, InitialShape::LeftSpine, InitialShape::RightSpine];
    for i in 0..500 {
        let seq = random_sequence(&mut rng, 128, 1024);
        let shape = shapes[i % 3];
        let fast = splay::run_splay(&seq, shape).total;
        let slow = splay::reference::total_cost(&shape.build(seq.n()).unwrap(), seq.accesses());
        if fast != slow {
            failures.push(format!("splay {shape:?}: n={} s={:?}: {fast} vs {slow}", seq.n(), seq.accesses()));
        }
        checked += 1;
    }

    for _ in 0..1000 {
        let seq = random_sequence(&mut rng, 64, 64);
        let weights: Vec<f64> = (0..seq.n()).map(|_| 10f64.powf(rng.unit() * 4.0 - 2.0)).collect();
        let w = WeightAssignment::new(weights.clone()).unwrap();
        let fast = bounds::weighted_df_bound(&seq, &w, Start::Finger).unwrap();
        for (i, pair) in seq.accesses().windows(2).enumerate() {
            let (lo, hi) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            let sum: f64 = weights[lo - 1..hi].iter().sum();
            let naive = 1.0 + (sum / weights[pair[0] - 1].min(weights[pair[1] - 1])).log2();
            if ((fast.per_access[i + 1] - naive) / naive).abs() > 1e-12 {
                failures.push(format!("bound term {}: {} vs {naive}", i + 2, fast.per_access[i + 1]));
            }
        }
        checked += 1;
    }

    VerifyReport {
        checked,
        failures,
        ..Default::default()
    }
}
