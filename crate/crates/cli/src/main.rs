use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sea_roots::harness::{full_suite, Harness, SuiteReport};
use sea_roots::{certify, enumerate_roots, eval, AlgebraConfig, E0Instance, Element, MutantE0, RootCertificate, SampleWindow};

const DEFAULT_TRIALS: u64 = 100_000;
const DEFAULT_SEED: u64 = 0x5EA5_0001;

#[derive(Parser)]
#[command(name = "sea-roots", version, about = "Exact checks of the sequential effect algebra E0 and its non-unique n-th roots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the effect algebra, sequential, polynomial and order checks on E0(n).
    VerifyAxioms(VerifyArgs),
    /// Emit the root certificate for E0(n).
    CertifyRoots(CertifyArgs),
    /// Evaluate an expression such as "f([1];[0];0) ^ 2".
    Eval(EvalArgs),
}

#[derive(Args)]
struct Common {
    /// Truncation degree of the algebra.
    #[arg(long = "n", default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..))]
    n: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WindowArgs {
    /// Bound on absolute coefficient values.
    #[arg(long = "W", value_parser = clap::value_parser!(i64).range(0..))]
    coeff_bound: Option<i64>,
    /// Bound on |m|.
    #[arg(long = "M", value_parser = clap::value_parser!(i64).range(0..))]
    m_bound: Option<i64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    window: WindowArgs,
    /// Visit every tuple of the window (default at n = 2).
    #[arg(long, conflicts_with = "trials")]
    exhaustive: bool,
    /// Independently drawn tuples per check (default at n >= 3).
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Check a deliberately broken variant: drop-G-term, swap-F-args-one-side or off-by-one-m.
    #[arg(long)]
    mutant: Option<String>,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    window: WindowArgs,
    /// Also list every n-th root of c inside the window (default W = M = 1).
    #[arg(long)]
    find_all: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    common: Common,
    expr: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

struct Failure {
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(2)
        }
    }
}

fn config(common: &Common) -> Result<AlgebraConfig, Failure> {
    let n = usize::try_from(common.n)?;
    Ok(AlgebraConfig::new(n)?)
}

fn emit(common: &Common, body: &str) -> Result<(), Failure> {
    match &common.out {
        Some(path) => fs::write(path, body).map_err(|e| Failure {
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::VerifyAxioms(args) => verify_axioms(args),
        Command::CertifyRoots(args) => certify_roots(args),
        Command::Eval(args) => eval_expr(args),
    }
}

fn verify_axioms(args: VerifyArgs) -> Result<bool, Failure> {
    let cfg = config(&args.common)?;
    let default_bound = if cfg.n() == 2 { 1 } else { 2 };
    let coeff_bound = args.window.coeff_bound.unwrap_or(default_bound);
    let m_bound = args.window.m_bound.unwrap_or(default_bound);
    let exhaustive = args.exhaustive || (args.trials.is_none() && cfg.n() == 2);
    let window = if exhaustive {
        SampleWindow::exhaustive(coeff_bound, m_bound)
    } else {
        SampleWindow::sampled(coeff_bound, m_bound, args.trials.unwrap_or(DEFAULT_TRIALS), args.seed)
    };
    let suite = full_suite(true);
    let harness = Harness::default();
    let base = E0Instance::new(cfg);
    let report = match &args.mutant {
        Some(tag) => harness.run_suite(&MutantE0::from_tag(base, tag)?, &suite, &window)?,
        None => harness.run_suite(&base, &suite, &window)?,
    };
    let body = match args.common.format {
        Format::Structured => json(&report)?,
        Format::Text => suite_text(&report),
    };
    emit(&args.common, &body)?;
    Ok(report.passed())
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn suite_text(report: &SuiteReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "instance: {}", report.instance);
    let _ = writeln!(out, "window: {}", serde_json::to_string(&report.window).unwrap_or_default());
    for r in &report.reports {
        let _ = writeln!(
            out,
            "{:<12} {:<4}  trials={} violations={}",
            r.axiom,
            if r.passed() { "pass" } else { "FAIL" },
            r.trials,
            r.violation_count
        );
        if let Some(note) = &r.note {
            let _ = writeln!(out, "    note: {note}");
        }
        for v in &r.violations {
            let _ = writeln!(out, "    witness: {}", v.witness.join(", "));
            let _ = writeln!(out, "    {}", v.detail);
        }
    }
    let _ = writeln!(out, "verdict: {}", if report.passed() { "pass" } else { "fail" });
    out
}

fn certify_roots(args: CertifyArgs) -> Result<bool, Failure> {
    let cfg = config(&args.common)?;
    let mut cert = certify(cfg)?;
    if args.find_all {
        let window = SampleWindow::exhaustive(args.window.coeff_bound.unwrap_or(1), args.window.m_bound.unwrap_or(1));
        let c = sea_roots::parse_element(cfg, &cert.c)?;
        let roots = enumerate_roots(&c, cfg.n() as u64, &window)?;
        cert.window_roots = Some(roots.iter().map(Element::to_string).collect());
    }
    let body = match args.common.format {
        Format::Structured => json(&cert)?,
        Format::Text => certificate_text(&cert),
    };
    emit(&args.common, &body)?;
    Ok(cert.verdict.is_pass())
}

fn certificate_text(cert: &RootCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n = {}", cert.n);
    let _ = writeln!(out, "a = {}", cert.a);
    let _ = writeln!(out, "b = {}", cert.b);
    let _ = writeln!(out, "c = {}", cert.c);
    for r in &cert.relations {
        let mark = if r.verdict.is_pass() { "pass" } else { "FAIL" };
        let _ = writeln!(out, "{mark}  {:<14} {} vs {}", r.claim, r.left, r.right);
    }
    if let Some(roots) = &cert.window_roots {
        let _ = writeln!(out, "window roots of c ({}):", roots.len());
        for root in roots {
            let _ = writeln!(out, "  {root}");
        }
    }
    let _ = writeln!(out, "verdict: {}", if cert.verdict.is_pass() { "pass" } else { "fail" });
    out
}

fn eval_expr(args: EvalArgs) -> Result<bool, Failure> {
    let cfg = config(&args.common)?;
    let value = eval(cfg, &args.expr)?;
    let text = value.map_or_else(|| "undefined".to_string(), |e| e.to_string());
    let body = match args.common.format {
        Format::Text => format!("{text}\n"),
        Format::Structured => json(&serde_json::json!({ "n": cfg.n(), "expr": args.expr, "value": text }))?,
    };
    emit(&args.common, &body)?;
    Ok(true)
}
