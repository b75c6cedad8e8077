//! Subcommand definitions and dispatch.
//!
//! Exit codes: 0 success, 1 contracted-invariant failure (verify), 2
//! usage or domain error. Theorem audits never affect the exit code.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use pqcalc::families::{family_sequence, FamilyKind};
use pqcalc::suite::{run_suite, SuiteConfig};
use pqcalc::{PQContext, Rational};

use crate::expr::{self, ExprError};
use crate::render::{
    render_report, AppellTable, FamilyTable, Format, NumbersRow, NumbersTable, PolyRow,
};

#[derive(Parser)]
#[command(
    name = "pqcalc",
    version,
    about = "Exact (p,q)-calculus tables, Appell sequences and identity verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Parameter p, an exact rational like "3/2" (decimals rejected)
    #[arg(long, global = true, default_value = "1")]
    p: String,

    /// Parameter q, an exact rational like "1/2" (decimals rejected)
    #[arg(long, global = true, default_value = "1")]
    q: String,

    /// Greatest index shown in tables
    #[arg(long, global = true, default_value_t = 8)]
    n: usize,

    /// Truncation order for series and sequences
    #[arg(long, global = true, default_value_t = 16)]
    order: usize,

    /// Seed for the context sampler
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Number of sampled contexts
    #[arg(long, global = true, default_value_t = 5)]
    samples: usize,

    /// Explicit contexts "p:q,p:q,..." (rationals), overriding sampling
    #[arg(long, global = true)]
    contexts: Option<String>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the errata report JSON to this path (verify only)
    #[arg(long, global = true)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print [n], [n]!, [2n]!! and the binomial triangle
    Numbers,
    /// Print a family's components and numbers
    Family {
        /// bernoulli, euler, genocchi or hermite
        kind: String,
    },
    /// Run the identity suite and the theorem audits
    Verify,
    /// Evaluate an expression in the Appell group, e.g. "bernoulli * inv(euler)"
    Appell {
        /// Expression over family names with *, +, ^k, inv(...)
        expr: String,
    },
}

fn usage_error(msg: impl std::fmt::Display) -> i32 {
    eprintln!("usage error: {msg}");
    2
}

fn parse_context(p: &str, q: &str) -> Result<PQContext, String> {
    let p: Rational = p.parse().map_err(|e| format!("--p: {e}"))?;
    let q: Rational = q.parse().map_err(|e| format!("--q: {e}"))?;
    PQContext::new(p, q).map_err(|e| e.to_string())
}

fn parse_contexts_flag(raw: &str) -> Result<Vec<(Rational, Rational)>, String> {
    raw.split(',')
        .map(|pair| {
            let (p, q) = pair
                .split_once(':')
                .ok_or_else(|| format!("context {pair:?} is not of the form p:q"))?;
            let p: Rational = p.parse().map_err(|e| format!("{e}"))?;
            let q: Rational = q.parse().map_err(|e| format!("{e}"))?;
            Ok((p, q))
        })
        .collect()
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version through the same path; keep its
            // exit code for those and use 2 for real usage errors
            let code = if e.exit_code() == 0 { 0 } else { 2 };
            let _ = e.print();
            return code;
        }
    };

    match &cli.command {
        Command::Numbers => cmd_numbers(&cli),
        Command::Family { kind } => cmd_family(&cli, kind),
        Command::Verify => cmd_verify(&cli),
        Command::Appell { expr } => cmd_appell(&cli, expr),
    }
}

fn cmd_numbers(cli: &Cli) -> i32 {
    if cli.n > 64 {
        return usage_error("--n is limited to 64 for the numbers table");
    }
    let ctx = match parse_context(&cli.p, &cli.q) {
        Ok(ctx) => ctx,
        Err(e) => return usage_error(e),
    };
    let rows = (0..=cli.n)
        .map(|n| NumbersRow {
            n,
            number: ctx.pq_number(n).to_string(),
            factorial: ctx.pq_factorial(n).to_string(),
            double_factorial: ctx
                .pq_double_factorial(2 * n)
                .expect("2n is even")
                .to_string(),
            binomials: (0..=n)
                .map(|k| ctx.pq_binomial(n, k as isize).to_string())
                .collect(),
        })
        .collect();
    let table = NumbersTable {
        p: ctx.p().to_string(),
        q: ctx.q().to_string(),
        rows,
    };
    print!("{}", table.render(cli.format));
    0
}

fn cmd_family(cli: &Cli, kind: &str) -> i32 {
    let kind: FamilyKind = match kind.parse() {
        Ok(kind) => kind,
        Err(e) => return usage_error(e),
    };
    let ctx = match parse_context(&cli.p, &cli.q) {
        Ok(ctx) => ctx,
        Err(e) => return usage_error(e),
    };
    let seq = family_sequence(kind, &ctx, cli.n);
    let rows = (0..=cli.n)
        .map(|n| PolyRow {
            n,
            poly: seq.component(n).expect("within order").coeff_strings(),
        })
        .collect();
    let table = FamilyTable {
        family: kind.name().to_string(),
        p: ctx.p().to_string(),
        q: ctx.q().to_string(),
        numbers: seq.coefficients().iter().map(|c| c.to_string()).collect(),
        rows,
    };
    print!("{}", table.render(cli.format));
    0
}

fn cmd_verify(cli: &Cli) -> i32 {
    let contexts = match &cli.contexts {
        None => None,
        Some(raw) => match parse_contexts_flag(raw) {
            Ok(pairs) => Some(pairs),
            Err(e) => return usage_error(e),
        },
    };
    let config = SuiteConfig {
        order: cli.order,
        samples: cli.samples,
        seed: cli.seed,
        contexts,
    };
    let report = match run_suite(&config) {
        Ok(report) => report,
        Err(e) => return usage_error(e),
    };
    print!("{}", render_report(&report, cli.format));
    if let Some(path) = &cli.report {
        let mut errata = serde_json::to_string_pretty(&report.audits).expect("serializable");
        errata.push('\n');
        if let Err(e) = std::fs::write(path, errata) {
            eprintln!("cannot write errata report to {}: {e}", path.display());
            return 2;
        }
    }
    if report.passed {
        0
    } else {
        1
    }
}

fn cmd_appell(cli: &Cli, raw_expr: &str) -> i32 {
    let ctx = match parse_context(&cli.p, &cli.q) {
        Ok(ctx) => ctx,
        Err(e) => return usage_error(e),
    };
    let order = cli.order.max(cli.n);
    let seq = match expr::eval(raw_expr, &ctx, order) {
        Ok(seq) => seq,
        Err(e @ ExprError::Parse(_)) => return usage_error(e),
        Err(e @ ExprError::Domain(_)) => {
            eprintln!("{e}");
            return 2;
        }
    };
    let shown = cli.n.min(seq.order());
    let components = (0..=shown)
        .map(|n| PolyRow {
            n,
            poly: seq.component(n).expect("within order").coeff_strings(),
        })
        .collect();
    let table = AppellTable {
        expr: raw_expr.to_string(),
        p: ctx.p().to_string(),
        q: ctx.q().to_string(),
        order: seq.order(),
        a: seq.coefficients().iter().map(|c| c.to_string()).collect(),
        degenerate: seq.is_degenerate(),
        components,
    };
    print!("{}", table.render(cli.format));
    0
}
