//! Seeded access-sequence generators and the trace / weights file formats.
//!
//! # Random numbers
//!
//! All randomness comes from SplitMix64 so traces are bit-reproducible in any
//! language. With 64-bit wrapping arithmetic:
//!
//! ```text
//! state  = state + 0x9E3779B97F4A7C15
//! z      = state
//! z      = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z      = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! output = z ^ (z >> 31)
//! ```
//!
//! The initial state is the seed. Derived draws:
//!
//! - `below(b)`: `(output * b) >> 64` computed in 128 bits, uniform-ish in `0..b`.
//! - `unit()`: `(output >> 11) * 2^-53`, in `[0, 1)`.
//!
//! # Generators
//!
//! - `sequential`: `1, 2, ..., n` repeated to length `m`.
//! - `uniform`: `s_i = 1 + below(n)`.
//! - `walk(d)`: `s_1 = ceil(n / 2)`; then `j = below(2d)`, step magnitude
//!   `j / 2 + 1`, positive when `j` is even; the result is clamped to `[1, n]`.
//! - `zipf_finger(theta)`: `s_1 = ceil(n / 2)`; the step magnitude `k` in
//!   `1..n` is drawn with probability proportional to `k^-theta` by inverting
//!   the cumulative table at `unit() * total`; the direction is positive when
//!   the next output's top bit is set; the result is clamped to `[1, n]`.
//!   With `n = 1` the sequence is constant.
//! - `bit_reversal`: the bit-reversal permutation of `0..n` plus one; requires
//!   `n` a power of two and `m = n`.
//!
//! # Files
//!
//! A trace is text: a header line `n m`, then `m` lines holding one key each.
//! A weights file holds `n` lines, each one strictly positive decimal.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::model::{AccessSequence, Key, WeightAssignment};
use crate::{Error, Result};

/// SplitMix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum WorkloadKind {
    Sequential,
    Uniform,
    Walk { max_step: usize },
    ZipfFinger { theta: f64 },
    BitReversal,
    /// Read from a trace file; `n` and `m` come from the file.
    Trace(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorkloadSpec {
    pub kind: WorkloadKind,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
}

impl WorkloadSpec {
    pub fn new(kind: WorkloadKind, n: usize, m: usize, seed: u64) -> Self {
        Self { kind, n, m, seed }
    }

    fn validate(&self) -> Result<()> {
        if matches!(self.kind, WorkloadKind::Trace(_)) {
            return Ok(());
        }
        if self.n < 1 || self.m < 1 {
            return Err(Error::BadSpec(format!("n and m must be >= 1 (n = {}, m = {})", self.n, self.m)));
        }
        match self.kind {
            WorkloadKind::Walk { max_step: 0 } => Err(Error::BadSpec("walk step range is empty (d = 0)".into())),
            WorkloadKind::ZipfFinger { theta } if !(theta.is_finite() && theta > 0.0) => {
                Err(Error::BadSpec(format!("zipf exponent must be positive, got {theta}")))
            }
            WorkloadKind::BitReversal if !self.n.is_power_of_two() => {
                Err(Error::BadSpec(format!("bit reversal needs n a power of two, got {}", self.n)))
            }
            WorkloadKind::BitReversal if self.m != self.n => {
                Err(Error::BadSpec(format!("bit reversal needs m = n, got m = {}", self.m)))
            }
            _ => Ok(()),
        }
    }
}

pub fn generate(spec: &WorkloadSpec) -> Result<AccessSequence> {
    spec.validate()?;
    let (n, m) = (spec.n, spec.m);
    let mut rng = SplitMix64::new(spec.seed);
    let keys: Vec<Key> = match &spec.kind {
        WorkloadKind::Trace(path) => return read_trace(path),
        WorkloadKind::Sequential => (0..m).map(|i| i % n + 1).collect(),
        WorkloadKind::Uniform => (0..m).map(|_| rng.below(n as u64) as Key + 1).collect(),
        &WorkloadKind::Walk { max_step } => {
            let mut cur = n.div_ceil(2);
            let mut out = vec![cur];
            for _ in 1..m {
                let j = rng.below(2 * max_step as u64) as usize;
                let step = j / 2 + 1;
                cur = if j % 2 == 0 { (cur + step).min(n) } else { cur.saturating_sub(step).max(1) };
                out.push(cur);
            }
            out
        }
        &WorkloadKind::ZipfFinger { theta } => {
            let cumulative: Vec<f64> = (1..n)
                .scan(0.0, |acc, k| {
                    *acc += (k as f64).powf(-theta);
                    Some(*acc)
                })
                .collect();
            let mut cur = n.div_ceil(2);
            let mut out = vec![cur];
            for _ in 1..m {
                if let Some(&total) = cumulative.last() {
                    let u = rng.unit() * total;
                    let step = (cumulative.partition_point(|&c| c <= u) + 1).min(n - 1);
                    let up = rng.next_u64() >> 63 == 1;
                    cur = if up { (cur + step).min(n) } else { cur.saturating_sub(step).max(1) };
                }
                out.push(cur);
            }
            out
        }
        WorkloadKind::BitReversal => match n.trailing_zeros() {
            0 => vec![1],
            bits => (0..n).map(|i| (i.reverse_bits() >> (usize::BITS - bits)) + 1).collect(),
        },
    };
    AccessSequence::new(n, keys)
}

/// Renders a sequence in the trace format.
pub fn format_trace(seq: &AccessSequence) -> String {
    let mut out = format!("{} {}\n", seq.n(), seq.m());
    for k in seq.accesses() {
        out.push_str(&k.to_string());
        out.push('\n');
    }
    out
}

pub fn write_trace(seq: &AccessSequence, path: impl AsRef<Path>) -> Result<()> {
    let mut file = io::BufWriter::new(fs::File::create(path)?);
    file.write_all(format_trace(seq).as_bytes())?;
    file.flush()?;
    Ok(())
}

pub fn read_trace(path: impl AsRef<Path>) -> Result<AccessSequence> {
    parse_trace(&fs::read_to_string(path)?)
}

fn parse_int(line: usize, text: &str, what: &str) -> Result<i64> {
    text.trim().parse().map_err(|e| Error::Parse {
        line,
        msg: format!("bad {what} {text:?}: {e}"),
    })
}

/// Parses the trace format; error line numbers are 1-based.
pub fn parse_trace(text: &str) -> Result<AccessSequence> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line: 1,
            msg: format!("header must be \"n m\", got {header:?}"),
        });
    }
    let n = parse_int(1, fields[0], "n")?;
    let m = parse_int(1, fields[1], "m")?;
    if n < 1 {
        return Err(Error::BadN);
    }
    if m < 1 {
        return Err(Error::EmptySequence);
    }
    let (n, m) = (n as usize, m as usize);
    let mut keys = Vec::with_capacity(m);
    for (line, text) in lines.by_ref() {
        if keys.len() == m {
            if text.trim().is_empty() {
                continue;
            }
            return Err(Error::Parse {
                line,
                msg: format!("more than the {m} declared accesses"),
            });
        }
        let k = parse_int(line, text, "key")?;
        if k < 1 || k as u64 > n as u64 {
            return Err(Error::KeyOutOfRange { key: k, n, line: Some(line) });
        }
        keys.push(k as Key);
    }
    if keys.len() < m {
        return Err(Error::Parse {
            line: keys.len() + 2,
            msg: format!("expected {m} accesses, found {}", keys.len()),
        });
    }
    AccessSequence::new(n, keys)
}

pub fn format_weights(w: &WeightAssignment) -> String {
    w.weights().iter().map(|x| format!("{x}\n")).collect()
}

pub fn write_weights(w: &WeightAssignment, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format_weights(w))?;
    Ok(())
}

pub fn read_weights(path: impl AsRef<Path>) -> Result<WeightAssignment> {
    parse_weights(&fs::read_to_string(path)?)
}

/// Parses one positive decimal per line; blank lines are skipped.
pub fn parse_weights(text: &str) -> Result<WeightAssignment> {
    let mut weights = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        let w: f64 = raw.parse().map_err(|e| Error::Parse {
            line: i + 1,
            msg: format!("bad weight {raw:?}: {e}"),
        })?;
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("weight must be strictly positive, got {raw}"),
            });
        }
        weights.push(w);
    }
    WeightAssignment::new(weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gen(kind: WorkloadKind, n: usize, m: usize, seed: u64) -> Result<AccessSequence> {
        generate(&WorkloadSpec::new(kind, n, m, seed))
    }

    #[test]
    fn splitmix_reference_outputs() {
        // Seed 0 outputs of the published SplitMix64.
        let mut r = SplitMix64::new(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(r.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn generator_examples() {
        let s = gen(WorkloadKind::Sequential, 4, 6, 0).unwrap();
        assert_eq!(s.accesses(), &[1, 2, 3, 4, 1, 2]);
        let s = gen(WorkloadKind::BitReversal, 8, 8, 0).unwrap();
        assert_eq!(s.accesses(), &[1, 5, 3, 7, 2, 6, 4, 8]);
        assert_eq!(gen(WorkloadKind::BitReversal, 1, 1, 0).unwrap().accesses(), &[1]);
        let s = gen(WorkloadKind::Walk { max_step: 1 }, 100, 3, 99).unwrap();
        assert_eq!(s.accesses()[0], 50);
        assert!(s.accesses().windows(2).all(|p| p[0].abs_diff(p[1]) == 1));
    }

    #[test]
    fn bad_specs() {
        for (kind, n, m) in [
            (WorkloadKind::BitReversal, 6, 6),
            (WorkloadKind::BitReversal, 8, 7),
            (WorkloadKind::Walk { max_step: 0 }, 10, 10),
            (WorkloadKind::ZipfFinger { theta: 0.0 }, 10, 10),
            (WorkloadKind::ZipfFinger { theta: f64::NAN }, 10, 10),
            (WorkloadKind::Uniform, 0, 10),
            (WorkloadKind::Uniform, 10, 0),
        ] {
            assert!(matches!(gen(kind, n, m, 1), Err(Error::BadSpec(_))));
        }
    }

    #[test]
    fn parse_examples() {
        let s = parse_trace("2 3\n1\n2\n1\n").unwrap();
        assert_eq!((s.n(), s.accesses()), (2, &[1, 2, 1][..]));
        assert!(matches!(
            parse_trace("2 1\n3\n"),
            Err(Error::KeyOutOfRange { key: 3, n: 2, line: Some(2) })
        ));
        assert!(matches!(parse_trace("2 2\n1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_trace("2 1\n1\n2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_trace("2 1\nx\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_trace("2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_trace(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_trace("3 0\n"), Err(Error::EmptySequence)));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("u.trace");
        let s = gen(WorkloadKind::Uniform, 64, 100, 7).unwrap();
        write_trace(&s, &path).unwrap();
        assert_eq!(read_trace(&path).unwrap(), s);
        let from_spec = gen(WorkloadKind::Trace(path.clone()), 0, 0, 0).unwrap();
        assert_eq!(from_spec, s);
        assert_eq!(fs::read_to_string(&path).unwrap(), format_trace(&s));

        let w = WeightAssignment::new(vec![0.1, 3.0, 1.0 / 3.0]).unwrap();
        let wpath = dir.path().join("w.txt");
        write_weights(&w, &wpath).unwrap();
        assert_eq!(read_weights(&wpath).unwrap(), w);
        assert!(matches!(parse_weights("1\n-2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_trace(dir.path().join("missing")), Err(Error::Io(_))));
    }

    #[test]
    fn walk_locality_at_scale() {
        for d in [2usize, 8, 64] {
            let s = gen(WorkloadKind::Walk { max_step: d }, 1 << 16, 100_000, 42).unwrap();
            let mean = s.accesses().windows(2).map(|p| p[0].abs_diff(p[1]) as f64).sum::<f64>()
                / (s.m() - 1) as f64;
            assert!(mean <= d as f64, "d = {d}, mean = {mean}");
            assert!(mean >= (d as f64 + 1.0) / 2.0 * 0.95);
        }
    }

    #[test]
    fn zipf_locality_at_scale() {
        let s = gen(WorkloadKind::ZipfFinger { theta: 2.5 }, 1 << 16, 100_000, 42).unwrap();
        let mean = s.accesses().windows(2).map(|p| p[0].abs_diff(p[1]) as f64).sum::<f64>()
            / (s.m() - 1) as f64;
        // E|step| = zeta(1.5) / zeta(2.5) ~ 1.95 before clamping.
        assert!((1.5..2.5).contains(&mean), "mean = {mean}");
    }

    fn arb_kind() -> impl Strategy<Value = WorkloadKind> {
        prop_oneof![
            Just(WorkloadKind::Sequential),
            Just(WorkloadKind::Uniform),
            (1usize..20).prop_map(|d| WorkloadKind::Walk { max_step: d }),
            (0.2f64..4.0).prop_map(|t| WorkloadKind::ZipfFinger { theta: t }),
        ]
    }

    proptest! {
        #[test]
        fn deterministic_and_in_range(kind in arb_kind(), n in 1usize..300, m in 1usize..300, seed in any::<u64>()) {
            let a = gen(kind.clone(), n, m, seed).unwrap();
            prop_assert_eq!(&a, &gen(kind, n, m, seed).unwrap());
            prop_assert_eq!(a.m(), m);
            prop_assert!(a.accesses().iter().all(|&k| (1..=n).contains(&k)));
            prop_assert_eq!(parse_trace(&format_trace(&a)).unwrap(), a);
        }

        #[test]
        fn bit_reversal_is_permutation(bits in 0u32..12) {
            let n = 1usize << bits;
            let s = gen(WorkloadKind::BitReversal, n, n, 0).unwrap();
            let mut sorted = s.accesses().to_vec();
            sorted.sort();
            prop_assert_eq!(sorted, (1..=n).collect::<Vec<_>>());
        }
    }
}
