//! `gleason`: solve, decompose and verify Gleason decompositions from the command line.
//!
//! Exit codes: 0 solved and verified, 1 solved but verification failed (the report is still
//! printed), 2 input error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gleason_core::domain::{split_line, LogBoundary};
use gleason_core::error::fmt_c64;
use gleason_core::expr::{format_poly, parse_complex, parse_poly, ReportFormat, ReportRecord};
use gleason_core::solver::{solve, GleasonProblem, SolveMode, SolveOptions};
use gleason_core::symmetrize::{correction_polynomial, symmetric_decompose};
use gleason_core::verify::{build_report, VerifyOptions};
use gleason_core::{CuspDomain, DomainKind, Error, ExactComplex, Scalar, StripParams, C64};

#[derive(Parser, Debug)]
#[command(name = "gleason", version, about = "Gleason decompositions on cusp domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find f1, f2 with f = f1 (z1 - p1) + f2 (z2 - p2) and verify them.
    Solve(SolveArgs),
    /// Print the N^2 rotation-invariant components of f.
    Decompose(DecomposeArgs),
    /// Check a given pair f1, f2.
    Verify(VerifyArgs),
    /// Describe the domain and its bounded-monomial cone.
    Info(InfoArgs),
    /// Choose a cut line z1^m z2^n = const on a logarithmic boundary.
    SplitLine(SplitArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    P1zero,
    Generic,
    Omega2,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Plain,
    Machine,
}

impl From<Output> for ReportFormat {
    fn from(o: Output) -> Self {
        match o {
            Output::Plain => ReportFormat::Plain,
            Output::Machine => ReportFormat::Machine,
        }
    }
}

#[derive(Args, Debug)]
struct DomainArgs {
    /// Domain |z1|^k < |z2|^l < 1.
    #[arg(long)]
    k: u32,
    #[arg(long)]
    l: u32,
    /// Strip lower bound on |z1^k / z2^l|.
    #[arg(long)]
    a: Option<f64>,
    /// Strip upper bound on |z1^k / z2^l|.
    #[arg(long)]
    b: Option<f64>,
    /// Strip cut m log|z1| + n log|z2| < n r.
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<f64>,
}

impl DomainArgs {
    fn has_strip(&self) -> bool {
        self.a.is_some() || self.b.is_some() || self.m.is_some() || self.n.is_some() || self.r.is_some()
    }

    fn build(&self, strip: bool) -> Result<CuspDomain, Error> {
        if !strip {
            if self.has_strip() {
                return Err(Error::InvalidInput(
                    "strip parameters --a --b --m --n --r need --mode omega2".into(),
                ));
            }
            return CuspDomain::hartogs(self.k, self.l);
        }
        let missing = |name: &str| Error::InvalidInput(format!("--mode omega2 needs --{name}"));
        CuspDomain::strip(
            self.k,
            self.l,
            StripParams {
                lower: self.a.ok_or_else(|| missing("a"))?,
                upper: self.b.ok_or_else(|| missing("b"))?,
                m: self.m.ok_or_else(|| missing("m"))?,
                n: self.n.ok_or_else(|| missing("n"))?,
                r: self.r.ok_or_else(|| missing("r"))?,
            },
        )
    }
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Polynomial in the z1/z2 grammar.
    #[arg(long = "f", conflicts_with = "file", allow_hyphen_values = true)]
    f: Option<String>,
    /// File holding one polynomial.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl InputArgs {
    fn text(&self) -> Result<String, Error> {
        match (&self.f, &self.file) {
            (Some(text), None) => Ok(text.clone()),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display()))),
            _ => Err(Error::InvalidInput("give exactly one of --f or --file".into())),
        }
    }
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Residual tolerance relative to 1 + sum |c_f|.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Cusp-biased sample points for the numeric checks.
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Exact Gaussian-rational arithmetic.
    #[arg(long)]
    exact: bool,
    #[arg(long, value_enum, default_value_t = Output::Machine)]
    output: Output,
}

impl CheckArgs {
    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            samples: self.samples,
            seed: self.seed,
            tol_rel: self.tol,
            ..VerifyOptions::default()
        }
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    domain: DomainArgs,
    /// Base point, "re" or "re+imi".
    #[arg(long, allow_hyphen_values = true)]
    p1: String,
    #[arg(long, allow_hyphen_values = true)]
    p2: String,
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Solve for f - f(p) when f(p) != 0.
    #[arg(long)]
    subtract_value: bool,
    #[command(flatten)]
    check: CheckArgs,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[command(flatten)]
    domain: DomainArgs,
    #[command(flatten)]
    input: InputArgs,
    /// With --p2, subtract the interpolating correction first.
    #[arg(long, allow_hyphen_values = true, requires = "p2")]
    p1: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "p1")]
    p2: Option<String>,
    #[arg(long)]
    exact: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    domain: DomainArgs,
    #[arg(long, allow_hyphen_values = true)]
    p1: String,
    #[arg(long, allow_hyphen_values = true)]
    p2: String,
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, allow_hyphen_values = true)]
    f1: String,
    #[arg(long, allow_hyphen_values = true)]
    f2: String,
    #[command(flatten)]
    check: CheckArgs,
}

#[derive(Args, Debug)]
struct InfoArgs {
    #[command(flatten)]
    domain: DomainArgs,
}

#[derive(Args, Debug)]
struct SplitArgs {
    /// CSV with rows "x,y,strict".
    #[arg(long)]
    boundary: PathBuf,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    l: u32,
    /// Log coordinates of the point to separate.
    #[arg(long, allow_hyphen_values = true)]
    lx: f64,
    #[arg(long, allow_hyphen_values = true)]
    ly: f64,
}

/// Successful run: text for stdout and whether verification passed.
struct Outcome {
    text: String,
    verified: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(args) if args.check.exact => run_solve::<ExactComplex>(args),
        Command::Solve(args) => run_solve::<C64>(args),
        Command::Decompose(args) if args.exact => run_decompose::<ExactComplex>(args),
        Command::Decompose(args) => run_decompose::<C64>(args),
        Command::Verify(args) if args.check.exact => run_verify::<ExactComplex>(args),
        Command::Verify(args) => run_verify::<C64>(args),
        Command::Info(args) => run_info(args),
        Command::SplitLine(args) => run_split(args),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn point<S: Scalar>(p1: &str, p2: &str) -> Result<(S, S), Error> {
    Ok((parse_complex(p1)?, parse_complex(p2)?))
}

/// Rejects `--exact` when the pipeline needs roots of unity the exact field lacks.
fn check_exact_order<S: Scalar>(order: u32) -> Result<(), Error> {
    if S::EXACT && S::root_of_unity(order, 1).is_none() {
        return Err(Error::InvalidInput(format!(
            "--exact needs the symmetrization order N = {order} to be 1, 2 or 4; drop --exact for floating arithmetic"
        )));
    }
    Ok(())
}

fn run_solve<S: Scalar>(args: &SolveArgs) -> Result<Outcome, Error> {
    let p = point::<S>(&args.p1, &args.p2)?;
    let strip = match args.mode {
        Mode::Omega2 => true,
        Mode::Auto => args.domain.has_strip(),
        Mode::P1zero | Mode::Generic => false,
    };
    let domain = args.domain.build(strip)?;
    match (args.mode, p.0.is_zero()) {
        (Mode::P1zero, false) => {
            return Err(Error::InvalidInput("--mode p1zero needs p1 = 0".into()))
        }
        (Mode::Generic, true) => {
            return Err(Error::InvalidInput("--mode generic needs p1 != 0".into()))
        }
        _ => {}
    }
    if strip || !p.0.is_zero() {
        let order = match domain.kind() {
            DomainKind::StripOmega2(s) => domain.k() * s.n + domain.l() * s.m,
            DomainKind::HartogsFull => domain.k(),
        };
        check_exact_order::<S>(order)?;
    }
    let f = parse_poly::<S>(&args.input.text()?)?;
    let opts = SolveOptions {
        subtract_value: args.subtract_value,
        verify: args.check.verify_options(),
    };
    let sol = solve(&GleasonProblem::new(domain, f, p), &opts)?;
    let mut text = String::new();
    if let Some(v) = sol.subtracted {
        let _ = writeln!(text, "subtracted f(p) = {}", fmt_c64(v));
    }
    let _ = writeln!(text, "f1 = {}", format_poly(&sol.f1));
    let _ = writeln!(text, "f2 = {}", format_poly(&sol.f2));
    text.push_str(&gleason_core::emit_report(&sol, args.check.output.into()));
    Ok(Outcome {
        text,
        verified: sol.report.passed(),
    })
}

fn run_decompose<S: Scalar>(args: &DecomposeArgs) -> Result<Outcome, Error> {
    let domain = args.domain.build(args.domain.has_strip())?;
    let order = match domain.kind() {
        DomainKind::StripOmega2(s) => domain.k() * s.n + domain.l() * s.m,
        DomainKind::HartogsFull => domain.k(),
    };
    let mut f = parse_poly::<S>(&args.input.text()?)?;
    let mut text = String::new();
    let _ = writeln!(text, "N = {order}");
    if let (Some(p1), Some(p2)) = (&args.p1, &args.p2) {
        check_exact_order::<S>(order)?;
        let p = point::<S>(p1, p2)?;
        let correction = correction_polynomial(&f, (&p.0, &p.1), order)?;
        let _ = writeln!(text, "P = {}", format_poly(&correction));
        f = &f - &correction;
    }
    let system = symmetric_decompose(&f, order)?;
    for ((i, j), component) in system.iter() {
        let _ = writeln!(text, "f[{i},{j}] = {}", format_poly(component));
    }
    Ok(Outcome {
        text,
        verified: true,
    })
}

fn run_verify<S: Scalar>(args: &VerifyArgs) -> Result<Outcome, Error> {
    let domain = args.domain.build(args.domain.has_strip())?;
    let p = point::<S>(&args.p1, &args.p2)?;
    let f = parse_poly::<S>(&args.input.text()?)?;
    let f1 = parse_poly::<S>(&args.f1)?;
    let f2 = parse_poly::<S>(&args.f2)?;
    if !domain.contains(&[p.0.to_c64(), p.1.to_c64()]) {
        return Err(Error::InvalidInput("p is not in the domain".into()));
    }
    let report = build_report(&f, (&p.0, &p.1), &f1, &f2, &domain, None, &args.check.verify_options())?;
    let record = ReportRecord::new(
        &report,
        SolveMode::Verify,
        domain.k(),
        domain.l(),
        (p.0.to_c64(), p.1.to_c64()),
    );
    let text = match args.check.output {
        Output::Plain => record.to_plain(),
        Output::Machine => record.to_machine(),
    };
    Ok(Outcome {
        text,
        verified: report.passed(),
    })
}

fn run_info(args: &InfoArgs) -> Result<Outcome, Error> {
    let domain = args.domain.build(args.domain.has_strip())?;
    let mut text = String::new();
    let order = match domain.kind() {
        DomainKind::HartogsFull => {
            let _ = writeln!(
                text,
                "domain: |z1|^{} < |z2|^{} < 1",
                domain.k(),
                domain.l()
            );
            domain.k()
        }
        DomainKind::StripOmega2(s) => {
            let _ = writeln!(
                text,
                "domain: {} < |z1^{} / z2^{}| < {}, {} log|z1| + {} log|z2| < {}",
                s.lower,
                domain.k(),
                domain.l(),
                s.upper,
                s.m,
                s.n,
                s.n as f64 * s.r
            );
            domain.k() * s.n + domain.l() * s.m
        }
    };
    let _ = writeln!(text, "k = {}", domain.k());
    let _ = writeln!(text, "l = {}", domain.l());
    let generators: Vec<String> = domain
        .recession_generators()
        .iter()
        .map(|(x, y)| format!("({x},{y})"))
        .collect();
    let _ = writeln!(text, "recession: {}", generators.join(" "));
    let _ = writeln!(text, "cone: {}", domain.cone_description());
    let _ = writeln!(text, "N = {order}");
    let _ = writeln!(
        text,
        "exact: {}",
        if ExactComplex::root_of_unity(order, 1).is_some() {
            "available"
        } else {
            "unavailable (N not in {1, 2, 4})"
        }
    );
    Ok(Outcome {
        text,
        verified: true,
    })
}

fn run_split(args: &SplitArgs) -> Result<Outcome, Error> {
    let csv = std::fs::read_to_string(&args.boundary).map_err(|e| {
        Error::InvalidInput(format!("cannot read {}: {e}", args.boundary.display()))
    })?;
    let boundary = LogBoundary::from_csv(&csv)?;
    let line = split_line(&boundary, (args.k, args.l), (args.lx, args.ly))?;
    Ok(Outcome {
        text: format!("{} {} {} {}\n", line.m, line.n, line.r, line.delta),
        verified: true,
    })
}
