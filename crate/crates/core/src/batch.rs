//! Range scans and the classifier-vs-criterion verifier.
//!
//! Work is split per tuple. With the `parallel` feature and `jobs != 1` the
//! tuples run on a rayon pool of `jobs` threads (`0` means one per core);
//! results are collected in input order, so output never depends on `jobs`.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{factor, is_prime_u64, FactorBudget};
use crate::dedekind::{index_divides, Verdict};
use crate::error::{invalid, Result};
use crate::fppoly::MAX_MODULUS;
use crate::irreducibility;
use crate::quadtheorem::{classify_prime_seeded, is_monogenic, CaseLabel, Monogenicity, Subcase};
use crate::report::{ClassifyRecord, PolyRecord, ScanSummary};
use crate::zpoly::{discriminant, Quadrinomial};
use crate::VERSION;

/// Maps `f` over `items`, in parallel when enabled, preserving order.
pub fn par_map<I, T, F>(items: &[I], jobs: usize, f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if jobs != 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
        return pool.install(|| items.par_iter().map(&f).collect());
    }
    let _ = jobs;
    items.iter().map(f).collect()
}

/// Inclusive integer range, written `lo..hi` or as a single value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: i64,
    pub hi: i64,
}

impl Span {
    pub fn single(v: i64) -> Self {
        Span { lo: v, hi: v }
    }

    pub fn iter(self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn len(self) -> u64 {
        if self.hi < self.lo {
            0
        } else {
            (self.hi - self.lo) as u64 + 1
        }
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }
}

impl FromStr for Span {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || invalid(format!("bad range {s:?}, expected lo..hi"));
        match s.split_once("..") {
            Some((lo, hi)) => Ok(Span {
                lo: lo.trim().parse().map_err(|_| bad())?,
                hi: hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?,
            }),
            None => Ok(Span::single(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanRanges {
    pub n: Span,
    pub a: Span,
    pub b: Span,
    pub c: Span,
}

impl ScanRanges {
    /// All tuples, lexicographic in `(n, a, b, c)`.
    pub fn tuples(&self) -> Vec<(u64, i64, i64, i64)> {
        let mut out = Vec::new();
        for n in self.n.iter().filter(|&n| n >= 3) {
            for a in self.a.iter() {
                for b in self.b.iter() {
                    for c in self.c.iter() {
                        out.push((n as u64, a, b, c));
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ScanFilter {
    #[default]
    All,
    Monogenic,
    NotMonogenic,
}

impl FromStr for ScanFilter {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(ScanFilter::All),
            "monogenic" => Ok(ScanFilter::Monogenic),
            "non-monogenic" | "not-monogenic" => Ok(ScanFilter::NotMonogenic),
            _ => Err(invalid(format!("unknown filter {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub budget: FactorBudget,
    pub seed: u64,
    pub jobs: usize,
    pub filter: ScanFilter,
}

#[derive(Clone, Debug)]
pub struct ScanOutput {
    pub records: Vec<ClassifyRecord>,
    pub summary: ScanSummary,
}

impl ScanOutput {
    /// One JSON record per line, then a `{"summary": ...}` line.
    pub fn write_jsonl(&self, mut w: impl Write) -> io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut w, r)?;
            w.write_all(b"\n")?;
        }
        serde_json::to_writer(&mut w, &serde_json::json!({ "summary": self.summary }))?;
        w.write_all(b"\n")
    }

    pub fn write_csv(&self, mut w: impl Write) -> io::Result<()> {
        writeln!(w, "{}", crate::report::CSV_HEADER)?;
        for r in &self.records {
            writeln!(w, "{}", r.to_csv_row())?;
        }
        Ok(())
    }
}

/// Classifies every in-scope tuple of `ranges`.
pub fn scan(ranges: &ScanRanges, opts: &ScanOptions) -> Result<ScanOutput> {
    let tuples = ranges.tuples();
    let in_scope: Vec<Quadrinomial> = tuples
        .iter()
        .map(|&(n, a, b, c)| Quadrinomial::new(n, a, b, c).expect("n >= 3"))
        .filter(|q| q.check_scope().applicable)
        .collect();
    let results = par_map(&in_scope, opts.jobs, |q| -> Result<ClassifyRecord> {
        let report = is_monogenic(q, opts.budget, opts.seed)?;
        let irr = irreducibility::check(&q.expand(), opts.seed);
        Ok(ClassifyRecord::from_report(&report, &irr))
    });
    let mut summary = ScanSummary {
        tuples: tuples.len() as u64,
        applicable: in_scope.len() as u64,
        seed: opts.seed.to_string(),
        version: VERSION.to_string(),
        ..Default::default()
    };
    let mut records = Vec::new();
    for r in results {
        let r = r?;
        match r.monogenic.as_str() {
            "true" => summary.monogenic += 1,
            "false" => summary.not_monogenic += 1,
            _ => summary.unknown += 1,
        }
        let keep = match opts.filter {
            ScanFilter::All => true,
            ScanFilter::Monogenic => r.monogenic == Monogenicity::Monogenic.as_flag(),
            ScanFilter::NotMonogenic => r.monogenic == Monogenicity::NotMonogenic.as_flag(),
        };
        if keep {
            records.push(r);
        }
    }
    summary.emitted = records.len() as u64;
    Ok(ScanOutput { records, summary })
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    /// Every prime up to this bound is checked, plus the factored primes of `D`.
    pub prime_bound: u64,
    pub max_n: u64,
    pub coeff_bound: i64,
    pub budget: FactorBudget,
    pub jobs: usize,
    /// Flips the first classifier verdict, to exercise the failure path.
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 100,
            seed: crate::DEFAULT_SEED,
            prime_bound: 50,
            max_n: 12,
            coeff_bound: 20,
            budget: FactorBudget::default(),
            jobs: 0,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub poly: PolyRecord,
    pub p: String,
    pub case: String,
    pub subcase: Option<String>,
    pub classifier: String,
    pub dedekind: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub samples: u64,
    pub pairs: u64,
    pub mismatches: Vec<Mismatch>,
    /// Hits per case label (`"case 1"`...) and per subcase (`"2.i"`...).
    pub coverage: BTreeMap<String, u64>,
    pub seed: String,
    pub version: String,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Labels and subcases hit fewer than `min` times.
    pub fn undercovered(&self, min: u64) -> Vec<String> {
        let labels = CaseLabel::ALL.iter().map(|l| format!("case {l}"));
        let subs = Subcase::ALL.iter().map(|s| s.to_string());
        labels.chain(subs).filter(|k| self.coverage.get(k).copied().unwrap_or(0) < min).collect()
    }
}

fn unitary_divisors(n: u64) -> Vec<u64> {
    let sq = n * n;
    (1..=sq).filter(|d| sq % d == 0 && d.gcd(&(sq / d)) == 1).collect()
}

/// `samples` seeded in-scope quadrinomials with certified irreducibility.
pub fn sample_quadrinomials(opts: &VerifyOptions) -> Vec<Quadrinomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::with_capacity(opts.samples);
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let v = rng.random_range(-opts.coeff_bound..=opts.coeff_bound);
        if v != 0 {
            return v;
        }
    };
    while out.len() < opts.samples {
        let n = rng.random_range(5..=opts.max_n.max(5));
        let divs = unitary_divisors(n);
        let a = divs[rng.random_range(0..divs.len())];
        let (b, c) = (nonzero(&mut rng), nonzero(&mut rng));
        let q = Quadrinomial::new(n, a, b, c).expect("n >= 5");
        if irreducibility::check(&q.expand(), opts.seed).is_certified() {
            out.push(q);
        }
    }
    out
}

/// In-scope `(n, a)` with `5 <= n <= 9`, `a ∈ {1, 4, 9, 25}`, and
/// `b, c ∈ [-10, 10] \ {0}`, keeping certified-irreducible tuples.
pub fn reference_grid() -> Vec<Quadrinomial> {
    let mut out = Vec::new();
    for n in 5..=9u64 {
        for a in [1i64, 4, 9, 25] {
            if !Quadrinomial::new(n, a, 1, 1).unwrap().check_scope().applicable {
                continue;
            }
            for b in (-10..=10).filter(|&v| v != 0) {
                for c in (-10..=10).filter(|&v| v != 0) {
                    let q = Quadrinomial::new(n, a, b, c).unwrap();
                    if irreducibility::check(&q.expand(), 0).is_certified() {
                        out.push(q);
                    }
                }
            }
        }
    }
    out
}

struct TupleResult {
    pairs: u64,
    mismatches: Vec<Mismatch>,
    coverage: Vec<String>,
}

fn check_one(q: &Quadrinomial, opts: &VerifyOptions, fault: bool) -> Result<TupleResult> {
    let mut primes: Vec<u64> = (2..=opts.prime_bound).filter(|&p| is_prime_u64(p)).collect();
    let d = discriminant(q)?;
    let factored = if d.is_zero() { Vec::new() } else { factor(&d, opts.budget)?.factors };
    for (p, _) in factored {
        if let Ok(p) = u64::try_from(&p) {
            if p < MAX_MODULUS {
                primes.push(p);
            }
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let f = q.expand();
    let mut res = TupleResult { pairs: 0, mismatches: Vec::new(), coverage: Vec::new() };
    for (i, &p) in primes.iter().enumerate() {
        let v = classify_prime_seeded(q, p, opts.seed)?;
        let mut got = v.verdict;
        if fault && i == 0 {
            got = if got == Verdict::Divides { Verdict::DoesNotDivide } else { Verdict::Divides };
        }
        let want = index_divides(&f, p, opts.seed)?.verdict;
        res.pairs += 1;
        res.coverage.push(format!("case {}", v.label));
        if let Some(s) = v.subcase {
            res.coverage.push(s.to_string());
        }
        if got != want {
            res.mismatches.push(Mismatch {
                poly: PolyRecord::from(q),
                p: p.to_string(),
                case: v.label.to_string(),
                subcase: v.subcase.map(|s| s.to_string()),
                classifier: got.to_string(),
                dedekind: want.to_string(),
            });
        }
    }
    Ok(res)
}

/// Compares the classifier with the general criterion on every
/// `(tuple, prime)` pair.
pub fn check_tuples(tuples: &[Quadrinomial], opts: &VerifyOptions) -> Result<VerifyReport> {
    let indexed: Vec<(usize, &Quadrinomial)> = tuples.iter().enumerate().collect();
    let results = par_map(&indexed, opts.jobs, |&(i, q)| check_one(q, opts, opts.inject_fault && i == 0));
    let mut report = VerifyReport {
        samples: tuples.len() as u64,
        seed: opts.seed.to_string(),
        version: VERSION.to_string(),
        ..Default::default()
    };
    for r in results {
        let r = r?;
        report.pairs += r.pairs;
        report.mismatches.extend(r.mismatches);
        for key in r.coverage {
            *report.coverage.entry(key).or_default() += 1;
        }
    }
    Ok(report)
}

pub fn verify(opts: &VerifyOptions) -> Result<VerifyReport> {
    check_tuples(&sample_quadrinomials(opts), opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ranges(n: &str, a: &str, b: &str, c: &str) -> ScanRanges {
        ScanRanges { n: n.parse().unwrap(), a: a.parse().unwrap(), b: b.parse().unwrap(), c: c.parse().unwrap() }
    }

    fn opts(jobs: usize, filter: ScanFilter) -> ScanOptions {
        ScanOptions { budget: FactorBudget::default(), seed: 5, jobs, filter }
    }

    fn jsonl(out: &ScanOutput) -> Vec<u8> {
        let mut v = Vec::new();
        out.write_jsonl(&mut v).unwrap();
        v
    }

    #[test]
    fn spans() {
        assert_eq!("-6..6".parse::<Span>().unwrap(), Span { lo: -6, hi: 6 });
        assert_eq!("3..=4".parse::<Span>().unwrap(), Span { lo: 3, hi: 4 });
        assert_eq!("7".parse::<Span>().unwrap(), Span::single(7));
        assert!("x..2".parse::<Span>().is_err());
        assert!("4..3".parse::<Span>().unwrap().is_empty());
    }

    #[test]
    fn scan_filters_find_examples() {
        let r = ranges("5..6", "-6..6", "-6..6", "-6..6");
        let mono = scan(&r, &opts(0, ScanFilter::Monogenic)).unwrap();
        let has = |o: &ScanOutput, t: [&str; 4]| {
            o.records.iter().any(|x| [&x.poly.n, &x.poly.a, &x.poly.b, &x.poly.c] == t.map(|s| s.to_string()).each_ref())
        };
        assert!(has(&mono, ["5", "1", "3", "6"]));
        let non = scan(&r, &opts(0, ScanFilter::NotMonogenic)).unwrap();
        assert!(has(&non, ["6", "4", "1", "3"]));
        assert!(!has(&non, ["5", "1", "3", "6"]));
        assert_eq!(mono.summary.applicable, mono.summary.monogenic + mono.summary.not_monogenic + mono.summary.unknown);
    }

    #[test]
    fn scan_output_independent_of_jobs() {
        let r = ranges("5..6", "-3..4", "-3..3", "-3..3");
        let one = jsonl(&scan(&r, &opts(1, ScanFilter::All)).unwrap());
        let eight = jsonl(&scan(&r, &opts(8, ScanFilter::All)).unwrap());
        assert_eq!(one, eight);
    }

    #[test]
    fn empty_scan() {
        let out = scan(&ranges("5", "1", "3..2", "1"), &opts(1, ScanFilter::All)).unwrap();
        assert!(out.records.is_empty());
        assert_eq!(out.summary.tuples, 0);
        assert_eq!(out.summary.emitted, 0);
    }

    #[test]
    fn verify_small_passes_and_is_deterministic() {
        let o = VerifyOptions { samples: 20, seed: 42, ..Default::default() };
        let a = verify(&o).unwrap();
        assert!(a.passed(), "{:?}", a.mismatches);
        assert!(a.pairs >= 20 * 15);
        let b = verify(&VerifyOptions { jobs: 1, ..o.clone() }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn injected_fault_is_reported() {
        let o = VerifyOptions { samples: 3, seed: 7, inject_fault: true, ..Default::default() };
        let r = verify(&o).unwrap();
        assert_eq!(r.mismatches.len(), 1);
        assert_eq!(r.mismatches[0].p, "2");
    }

    #[test]
    fn unitary_divisors_of_squares() {
        assert_eq!(unitary_divisors(6), vec![1, 4, 9, 36]);
        assert_eq!(unitary_divisors(5), vec![1, 25]);
    }
}
