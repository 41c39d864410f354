//! `binharm` — list, verify and evaluate the identity catalog.
//!
//! ```bash
//! binharm list --format csv
//! binharm verify --all --digits 12 --precision 32
//! binharm verify --id EQ10 --id EQ17 --digits 30 --format json
//! binharm eval --genfun HN_CBC --x 0.1875 --terms 500
//! binharm eval --series EQ17 --terms 1000
//! binharm constants --digits 10
//! ```
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 computation error.

mod render;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use binharm_core::accel::{Sign, SumOptions, DEFAULT_TERM_BUDGET};
use binharm_core::catalog::{self, verify_identity, Identity, Status};
use binharm_core::genfun::{self, GenFunId};
use binharm_core::{Error, HPReal, PrecisionContext, SeriesSpec};

const USAGE: u8 = 2;
const FAILED: u8 = 1;
const COMPUTE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "binharm", version, about = "High-precision checks of central binomial / harmonic series identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One row per catalog identity
    List(ListArgs),
    /// Sum left-hand sides and compare with closed forms
    Verify(VerifyArgs),
    /// Partial sum of a catalog series or generating function
    Eval(EvalArgs),
    /// The constants used by the closed forms
    Constants(ConstantsArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Precision {
    /// Working precision in significant decimal digits
    #[arg(long, env = "BH_PRECISION", default_value_t = 64)]
    precision: u32,
}

#[derive(Args, Debug)]
struct ListArgs {
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Identity to verify; repeatable
    #[arg(long = "id", value_name = "ID", required_unless_present = "all", conflicts_with = "all")]
    ids: Vec<String>,
    #[arg(long)]
    all: bool,
    /// Digits that must agree for PASS
    #[arg(long, default_value_t = 12)]
    digits: u32,
    #[command(flatten)]
    precision: Precision,
    #[arg(long = "budget-terms", env = "BH_TERM_BUDGET", default_value_t = DEFAULT_TERM_BUDGET)]
    budget: u64,
    /// Sum boundary series without γ (extrapolation only)
    #[arg(long)]
    gamma_free: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["series", "genfun"]))]
struct EvalArgs {
    /// Catalog identity whose series is summed
    #[arg(long)]
    series: Option<String>,
    /// Generating function id, e.g. HN_CBC
    #[arg(long, requires = "x")]
    genfun: Option<String>,
    /// Argument of the generating function (decimal or p/q)
    #[arg(long)]
    x: Option<String>,
    /// Number of terms in the partial sum
    #[arg(long)]
    terms: Option<u64>,
    #[arg(long, default_value_t = 12)]
    digits: u32,
    #[command(flatten)]
    precision: Precision,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct ConstantsArgs {
    #[arg(long, default_value_t = 12)]
    digits: u32,
    #[command(flatten)]
    precision: Precision,
    #[command(flatten)]
    out: Output,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnknownId(_) | Error::Domain { .. } | Error::Parse(_) | Error::InvalidPrecision(_) => USAGE,
            _ => COMPUTE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        // a closed pipe (`binharm list | head`) is not an error
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure { code: 0, message: String::new() };
        }
        Failure { code: COMPUTE, message: e.to_string() }
    }
}

type CmdResult = Result<u8, Failure>;

fn context(precision: u32, digits: u32) -> Result<PrecisionContext, Failure> {
    if digits == 0 || digits + 10 > precision {
        return Err(Failure::usage(format!(
            "--digits {digits} needs --precision of at least {} (got {precision})",
            digits.max(1) + 10
        )));
    }
    Ok(PrecisionContext::new(precision)?)
}

fn sink(out: &Output) -> Result<Box<dyn Write>, Failure> {
    Ok(match &out.output {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn cmd_list(args: &ListArgs) -> CmdResult {
    let rows: Vec<render::ListRow> = catalog::inventory().iter().map(render::ListRow::from).collect();
    let mut w = sink(&args.out)?;
    render::list(&mut w, &rows, args.out.format)?;
    Ok(0)
}

fn select(ids: &[String], all: bool) -> Result<Vec<&'static Identity>, Failure> {
    if all {
        return Ok(catalog::inventory().iter().collect());
    }
    // resolve every id before any work starts
    ids.iter().map(|id| catalog::get(id).map_err(Failure::from)).collect()
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let ctx = context(args.precision.precision, args.digits)?;
    let selected = select(&args.ids, args.all)?;
    let opts = SumOptions { budget: args.budget, gamma_free: args.gamma_free, ..SumOptions::default() };
    let reports: Vec<_> = selected
        .par_iter()
        .map(|i| verify_identity(i, args.digits, &ctx, &opts).report)
        .collect();
    let mut w = sink(&args.out)?;
    render::reports(&mut w, &reports, args.out.format)?;
    w.flush()?;
    let mut code = 0;
    for r in &reports {
        match r.status {
            Status::Pass | Status::OpenEvaluated => {}
            Status::Fail => {
                eprintln!("{}: FAIL, {} digits verified, relative difference {}", r.id, r.digits_verified, r.rel_diff);
                code = code.max(FAILED);
            }
            Status::Error => {
                eprintln!("{}: ERROR: {}", r.id, r.diagnostic.as_deref().unwrap_or("unknown"));
                code = COMPUTE;
            }
        }
    }
    Ok(code)
}

/// Oriented as a sign pattern plus a spot check on the leading terms.
fn positive_terms(series: &SeriesSpec) -> bool {
    series.shape.sign == Sign::Plus
        && (series.start..series.start + 64)
            .all(|n| series.exact_term(n).is_some_and(|t| !t.is_negative() && !t.is_zero()))
}

fn cmd_eval(args: &EvalArgs) -> CmdResult {
    let ctx = context(args.precision.precision, args.digits)?;
    let digits = args.digits;
    let eval = if let Some(id) = &args.series {
        let identity = catalog::get(id)?;
        let terms = args.terms.unwrap_or(1000);
        let partial = identity.series.partial_sum(terms, &ctx);
        let closed = identity.closed_form.map(|f| f(&ctx)).transpose()?;
        let positive = positive_terms(&identity.series);
        let note = match (&closed, positive) {
            (Some(c), true) if partial < *c => Some("positive terms: partial sums increase monotonically toward the closed form".to_string()),
            (Some(_), true) => Some("positive terms: partial sums increase monotonically".to_string()),
            (None, _) => Some("open sum: no closed form".to_string()),
            _ => None,
        };
        render::Eval::new(identity.id, None, terms, &partial, closed.as_ref(), note, digits)
    } else {
        let id: GenFunId = args.genfun.as_deref().unwrap_or_default().parse()?;
        let raw = args.x.as_deref().ok_or_else(|| Failure::usage("--genfun needs --x"))?;
        let x = HPReal::parse(raw, &ctx)?;
        let closed = genfun::closed_form(id, &x, &ctx)?;
        let terms = args.terms.or_else(|| genfun::terms_for_digits(id, &x, digits)).unwrap_or(500);
        let partial = genfun::series_partial(id, &x, terms, &ctx)?;
        render::Eval::new(id.name(), Some(raw), terms, &partial, Some(&closed), None, digits)
    };
    let mut w = sink(&args.out)?;
    render::eval(&mut w, &eval, args.out.format)?;
    Ok(0)
}

fn cmd_constants(args: &ConstantsArgs) -> CmdResult {
    let ctx = context(args.precision.precision, args.digits)?;
    let rows = render::constants(&ctx, args.digits)?;
    let mut w = sink(&args.out)?;
    render::constant_rows(&mut w, &rows, args.out.format)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::List(a) => cmd_list(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Constants(a) => cmd_constants(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
