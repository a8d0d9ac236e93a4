//! Command-line front end: argument parsing, report rendering, and the
//! exit-code contract.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage or input errors,
//! 3 group too large for the element cap.

use crate::abelian::BaseField;
use crate::embed::embed_cyclic;
use crate::invariant::ExpFunction;
use crate::perm::{GroupExpr, PermGroup};
use crate::predict::{
    oracle_square_wreath, oracle_wreath_bm, oracle_wreath_disc, oracle_wreath_rad, predict,
    BNew, OracleResult, PredictOptions, PredictionReport,
};
use crate::verify;
use crate::{Error, Result, BURNSIDE_CAP, DEFAULT_ELEMENT_CAP};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;

#[derive(Parser)]
#[command(
    name = "malle",
    version,
    about = "Counting constants for Malle-type distribution heuristics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full prediction report for one group, invariant, and base field.
    Predict(ReportArgs),
    /// The pair table only.
    Pairs(ReportArgs),
    /// Liftability of a cyclic embedding problem by the local criterion.
    Embed(EmbedArgs),
    /// Closed-form family formulas next to a fresh engine run.
    Oracle(OracleArgs),
    /// Run the acceptance checklist; nonzero exit on any failed check.
    #[command(name = "verify-paper")]
    VerifyPaper(VerifyArgs),
}

#[derive(Args)]
struct ReportArgs {
    /// Group expression: C6, S4, wr(C3,C4), x(S3,C4), or gens:<cycles;...>.
    #[arg(long)]
    group: String,
    /// Counting invariant: disc, rad, or table:<file>.
    #[arg(long, default_value = "disc")]
    inv: String,
    /// Base field: Q or Fq:q=<q>.
    #[arg(long, default_value = "Q")]
    base: String,
    /// Output format: json or text.
    #[arg(long, default_value = "json")]
    out: String,
    /// Ceiling on the number of group elements to materialize.
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap: u64,
    /// Ceiling on the fibered group size for the averaging cross-checks.
    #[arg(long, default_value_t = BURNSIDE_CAP)]
    burnside_cap: u64,
    /// Worker threads for the orbit engines (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct EmbedArgs {
    /// Odd prime conductor of the cyclic field to embed into.
    #[arg(long)]
    ell: u64,
    /// Degree of the cyclic field over Q.
    #[arg(long)]
    n: u64,
    /// Degree of the target cyclic extension.
    #[arg(long)]
    d: u64,
    /// Output format: json or text.
    #[arg(long, default_value = "text")]
    out: String,
}

#[derive(Args)]
struct OracleArgs {
    /// Formula family: wreath-disc, wreath-rad, square-wreath, wreath-bm.
    #[arg(long)]
    name: String,
    /// Family parameters, comma separated.
    #[arg(long, value_delimiter = ',')]
    params: Vec<u64>,
    /// Output format: json or text.
    #[arg(long, default_value = "json")]
    out: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run a single check by id instead of the whole list.
    #[arg(long)]
    only: Option<String>,
}

/// Parses `argv` (including the program name) and runs the invocation,
/// returning the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::CapExceeded { .. } => 3,
                _ => 2,
            }
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Predict(a) => {
            let report = build_report(&a)?;
            match a.out.as_str() {
                "json" => println!("{}", report.to_json()),
                "text" => print!("{}", render_report(&report)),
                other => return Err(Error::Precondition(format!("unknown output format {other}"))),
            }
            Ok(0)
        }
        Command::Pairs(a) => {
            let report = build_report(&a)?;
            match a.out.as_str() {
                "json" => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.pairs).expect("pairs serialize")
                ),
                "text" => print!("{}", render_pairs(&report)),
                other => return Err(Error::Precondition(format!("unknown output format {other}"))),
            }
            Ok(0)
        }
        Command::Embed(a) => {
            let status = embed_cyclic(a.ell, a.n, a.d)?;
            match a.out.as_str() {
                "json" => println!(
                    "{}",
                    serde_json::to_string_pretty(&status).expect("status serializes")
                ),
                "text" => println!("{status}"),
                other => return Err(Error::Precondition(format!("unknown output format {other}"))),
            }
            Ok(0)
        }
        Command::Oracle(a) => {
            let results = run_oracle(&a.name, &a.params)?;
            match a.out.as_str() {
                "json" => println!(
                    "{}",
                    serde_json::to_string_pretty(&results).expect("results serialize")
                ),
                "text" => {
                    for r in &results {
                        println!("{}", render_oracle(r));
                    }
                }
                other => return Err(Error::Precondition(format!("unknown output format {other}"))),
            }
            Ok(0)
        }
        Command::VerifyPaper(a) => {
            let outcomes = verify::run(a.only.as_deref())?;
            let mut all = true;
            for o in &outcomes {
                println!("{}: {} - {}", o.id, if o.passed { "PASS" } else { "FAIL" }, o.detail);
                all &= o.passed;
            }
            Ok(if all { 0 } else { 1 })
        }
    }
}

fn build_report(a: &ReportArgs) -> Result<PredictionReport> {
    if let Some(n) = a.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let expr = GroupExpr::parse(&a.group)?;
    let g = PermGroup::build(&expr, a.cap)?;
    let f = parse_invariant(&a.inv, &g)?;
    let base = parse_base(&a.base)?;
    let opts = PredictOptions { burnside_cap: a.burnside_cap };
    predict(&g, &f, &base, &opts)
}

fn parse_invariant(spec: &str, g: &PermGroup) -> Result<ExpFunction> {
    match spec {
        "disc" => Ok(ExpFunction::discriminant(g)),
        "rad" => Ok(ExpFunction::radical(g)),
        other => match other.strip_prefix("table:") {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                let name = std::path::Path::new(path)
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .unwrap_or(path);
                ExpFunction::from_table(g, name, &text)
            }
            None => Err(Error::Precondition(format!(
                "unknown invariant {other}; expected disc, rad, or table:<file>"
            ))),
        },
    }
}

fn parse_base(spec: &str) -> Result<BaseField> {
    if spec == "Q" {
        return Ok(BaseField::Q);
    }
    match spec.strip_prefix("Fq:q=").map(str::parse) {
        Some(Ok(q)) if q >= 2 => Ok(BaseField::FunctionField { q }),
        _ => Err(Error::Precondition(format!(
            "unknown base {spec}; expected Q or Fq:q=<q>"
        ))),
    }
}

fn run_oracle(name: &str, params: &[u64]) -> Result<Vec<OracleResult>> {
    let want = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{name} takes {n} parameter{}, got {}",
                if n == 1 { "" } else { "s" },
                params.len()
            )))
        }
    };
    match name {
        "wreath-disc" => {
            want(2)?;
            oracle_wreath_disc(params[0], params[1])
        }
        "wreath-rad" => {
            want(2)?;
            oracle_wreath_rad(params[0], params[1])
        }
        "square-wreath" => {
            want(1)?;
            oracle_square_wreath(params[0])
        }
        "wreath-bm" => {
            want(2)?;
            oracle_wreath_bm(params[0], params[1])
        }
        other => Err(Error::Precondition(format!(
            "unknown oracle {other}; expected wreath-disc, wreath-rad, square-wreath, or wreath-bm"
        ))),
    }
}

fn render_report(r: &PredictionReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "group {}, invariant {}, base {}\n",
        r.meta.group, r.meta.invariant, r.meta.base
    ));
    let b_new = match r.b_new {
        BNew::Single(v) => v.to_string(),
        BNew::Interval { certified, optimistic } => {
            format!("[{certified}, {optimistic}] (certified, optimistic)")
        }
    };
    out.push_str(&format!(
        "a = {}, b_M = {}, b_T = {}, b_new = {}\n",
        r.a, r.b_m, r.b_t, b_new
    ));
    out.push_str(&render_pairs(r));
    if !r.oracles.is_empty() {
        out.push_str("closed forms:\n");
        for o in &r.oracles {
            out.push_str(&format!("  {}\n", render_oracle(o)));
        }
    }
    out
}

fn render_pairs(r: &PredictionReport) -> String {
    let name_w = r.pairs.iter().map(|p| p.subfield.name.chars().count()).max().unwrap_or(8).max(8);
    let mut out = String::new();
    out.push_str(&format!(
        "{:<name_w$}  {:>8}  {:>4}  lift\n",
        "subfield", "kernel", "b"
    ));
    for p in &r.pairs {
        let pad = name_w - p.subfield.name.chars().count();
        out.push_str(&format!(
            "{}{:pad$}  {:>8}  {:>4}  {}\n",
            p.subfield.name, "", p.kernel_order, p.b, p.lift
        ));
    }
    out
}

fn render_oracle(o: &OracleResult) -> String {
    let params: Vec<String> = o.params.iter().map(u64::to_string).collect();
    let expected = o.expected.map_or("-".into(), |v| v.to_string());
    let engine = o.engine.map_or("-".into(), |v| v.to_string());
    let mut line = format!(
        "{}({}): expected {}, engine {}, {}",
        o.name,
        params.join(","),
        expected,
        engine,
        if o.agree { "agree" } else { "FLAGGED" }
    );
    if let Some(note) = &o.note {
        line.push_str(&format!(" ({note})"));
    }
    line
}
