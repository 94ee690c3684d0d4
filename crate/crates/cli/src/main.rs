use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use quadindex::arith::{is_prime_u64, FactorBudget};
use quadindex::batch::{self, ScanFilter, ScanOptions, ScanRanges, Span, VerifyOptions};
use quadindex::dedekind::{index_divides, splitting_type};
use quadindex::quadtheorem::{excluded_prime, is_monogenic};
use quadindex::report::{ClassifyRecord, DedekindRecord, ExclusionsRecord};
use quadindex::{irreducibility, Error, IntPoly, Quadrinomial, DEFAULT_SEED};

const EXIT_USAGE: u8 = 1;
const EXIT_SCOPE: u8 = 2;
const EXIT_INCONSISTENT: u8 = 3;

#[derive(Parser)]
#[command(name = "quadindex", version, about = "Index divisors and monogenicity of x^n + a x^(n-1) + b x + c")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every prime of the discriminant and decide monogenicity.
    Classify(ClassifyArgs),
    /// Check which primes are excluded from the index by divisibility alone.
    Exclusions(ExclusionsArgs),
    /// Run the general Dedekind criterion on a monic polynomial.
    Dedekind(DedekindArgs),
    /// Classify every in-scope tuple in a coefficient box.
    Scan(ScanArgs),
    /// Compare the closed-form classifier with the Dedekind criterion.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Budget {
    /// Pollard rho iterations allowed when factoring the discriminant.
    #[arg(long = "factor-budget", default_value_t = FactorBudget::default().rho_iterations)]
    factor_budget: u64,
}

impl Budget {
    fn get(&self) -> Result<FactorBudget, Error> {
        if self.factor_budget == 0 {
            return Err(Error::InvalidArgument("--factor-budget must be positive".into()));
        }
        Ok(FactorBudget { rho_iterations: self.factor_budget, ..FactorBudget::default() })
    }
}

#[derive(Args)]
struct Coeffs {
    #[arg(long)]
    n: u64,
    #[arg(long, allow_hyphen_values = true)]
    a: BigInt,
    #[arg(long, allow_hyphen_values = true)]
    b: BigInt,
    #[arg(long, allow_hyphen_values = true)]
    c: BigInt,
}

impl Coeffs {
    fn quadrinomial(&self) -> Result<Quadrinomial, Error> {
        Quadrinomial::new(self.n, self.a.clone(), self.b.clone(), self.c.clone())
    }
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    coeffs: Coeffs,
    #[command(flatten)]
    budget: Budget,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ExclusionsArgs {
    #[command(flatten)]
    coeffs: Coeffs,
    /// Comma-separated primes to test.
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
    /// Test every prime up to this bound when --primes is absent.
    #[arg(long, default_value_t = 100)]
    bound: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct DedekindArgs {
    /// Coefficients, leading first, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    #[arg(long)]
    p: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

#[derive(Args)]
struct ScanArgs {
    /// Ranges are `lo..hi` (inclusive) or a single value.
    #[arg(long, allow_hyphen_values = true)]
    n: Span,
    #[arg(long, allow_hyphen_values = true)]
    a: Span,
    #[arg(long, allow_hyphen_values = true)]
    b: Span,
    #[arg(long, allow_hyphen_values = true)]
    c: Span,
    /// all, monogenic or non-monogenic
    #[arg(long, default_value = "all")]
    filter: ScanFilter,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[command(flatten)]
    budget: Budget,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Primes up to this bound are checked for every sample.
    #[arg(long, default_value_t = 50)]
    bound: u64,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, hide = true)]
    inject_fault: bool,
    #[command(flatten)]
    budget: Budget,
    #[command(flatten)]
    common: Common,
}

enum Failure {
    Usage(String),
    Scope(String),
    Inconsistent(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalInconsistency(_) => Failure::Inconsistent(e.to_string()),
            Error::Unsupported(_) => Failure::Scope(e.to_string()),
            Error::InvalidArgument(_) | Error::Parse(_) => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn sink(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit_json<T: serde::Serialize>(w: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)
}

fn classify(args: &ClassifyArgs) -> Result<(), Failure> {
    let q = args.coeffs.quadrinomial()?;
    let budget = args.budget.get()?;
    let seed = args.common.seed;
    let mut w = sink(&args.common.out)?;
    if let Some(reason) = q.check_scope().failure {
        let record = ClassifyRecord::inapplicable(&q, reason, seed);
        if args.common.json {
            emit_json(&mut w, &record)?;
        } else {
            write!(w, "{}", record.to_text())?;
        }
        w.flush()?;
        return Err(Failure::Scope(format!("{q} is out of scope: {reason}")));
    }
    let report = is_monogenic(&q, budget, seed)?;
    let irr = irreducibility::check(&q.expand(), seed);
    let record = ClassifyRecord::from_report(&report, &irr);
    if args.common.json {
        emit_json(&mut w, &record)?;
    } else {
        write!(w, "{}", record.to_text())?;
    }
    w.flush()?;
    Ok(())
}

fn exclusions(args: &ExclusionsArgs) -> Result<(), Failure> {
    let q = args.coeffs.quadrinomial()?;
    if let Some(reason) = q.check_scope().failure {
        return Err(Failure::Scope(format!("{q} is out of scope: {reason}")));
    }
    let primes: Vec<u64> = if args.primes.is_empty() {
        (2..=args.bound).filter(|&p| is_prime_u64(p)).collect()
    } else {
        args.primes.clone()
    };
    let mut results = Vec::with_capacity(primes.len());
    for p in primes {
        results.push((p, excluded_prime(&q, p)?));
    }
    let record = ExclusionsRecord::new(&q, &results, args.common.seed);
    let mut w = sink(&args.common.out)?;
    if args.common.json {
        emit_json(&mut w, &record)?;
    } else {
        write!(w, "{}", record.to_text())?;
    }
    w.flush()?;
    Ok(())
}

fn dedekind(args: &DedekindArgs) -> Result<(), Failure> {
    let f = IntPoly::parse_coeffs(&args.poly)?;
    let seed = args.common.seed;
    let cert = index_divides(&f, args.p, seed)?;
    let split = splitting_type(&f, args.p, seed)?;
    let record = DedekindRecord::new(&f.to_string(), &cert, &split, seed);
    let mut w = sink(&args.common.out)?;
    if args.common.json {
        emit_json(&mut w, &record)?;
    } else {
        write!(w, "{}", record.to_text())?;
    }
    w.flush()?;
    Ok(())
}

fn scan(args: &ScanArgs) -> Result<(), Failure> {
    let ranges = ScanRanges { n: args.n, a: args.a, b: args.b, c: args.c };
    let opts = ScanOptions { budget: args.budget.get()?, seed: args.common.seed, jobs: args.jobs, filter: args.filter };
    let out = batch::scan(&ranges, &opts)?;
    let mut w = sink(&args.common.out)?;
    match args.format {
        Format::Csv if !args.common.json => out.write_csv(&mut w)?,
        _ => out.write_jsonl(&mut w)?,
    }
    w.flush()?;
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let opts = VerifyOptions {
        samples: args.samples,
        seed: args.common.seed,
        prime_bound: args.bound,
        budget: args.budget.get()?,
        jobs: args.jobs,
        inject_fault: args.inject_fault,
        ..VerifyOptions::default()
    };
    let report = batch::verify(&opts)?;
    let mut w = sink(&args.common.out)?;
    if args.common.json {
        emit_json(&mut w, &report)?;
    } else {
        writeln!(w, "samples    {}", report.samples)?;
        writeln!(w, "pairs      {}", report.pairs)?;
        writeln!(w, "mismatches {}", report.mismatches.len())?;
        for m in &report.mismatches {
            writeln!(w, "  {}", serde_json::to_string(m).expect("serializable"))?;
        }
        writeln!(w, "seed       {}", report.seed)?;
        writeln!(w, "result     {}", if report.passed() { "pass" } else { "FAIL" })?;
    }
    w.flush()?;
    match report.mismatches.first() {
        None => Ok(()),
        Some(m) => Err(Failure::Inconsistent(format!(
            "classifier and criterion disagree: {}",
            serde_json::to_string(m).expect("serializable")
        ))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Classify(a) => classify(a),
        Command::Exclusions(a) => exclusions(a),
        Command::Dedekind(a) => dedekind(a),
        Command::Scan(a) => scan(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Scope(msg)) => {
            eprintln!("inapplicable: {msg}");
            ExitCode::from(EXIT_SCOPE)
        }
        Err(Failure::Inconsistent(msg)) => {
            eprintln!("inconsistency: {msg}");
            ExitCode::from(EXIT_INCONSISTENT)
        }
    }
}
