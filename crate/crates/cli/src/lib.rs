//! Command-line front-end for `ellipk-core`.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain or invalid argument,
//! 3 non-convergence, 4 self-test failure.

pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ellipk_core::cei1::{DEFAULT_EPS, DEFAULT_N};
use ellipk_core::selftest::{self, Check, SelftestOptions};
use ellipk_core::{Cei1Request, Error, Method, QuadFamily, QuadratureRule};

use crate::format::{csv_table, g15, k_grid, kvalues_file, plain_table, records, Param, Record, Row};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NON_CONVERGENCE: i32 = 3;
pub const EXIT_SELFTEST: i32 = 4;

/// Plain table for k = 0, 0.1, ..., 0.5 with all four methods.
pub const GOLDEN_TABLE1: &str = include_str!("../tests/golden/table1_plain.txt");

#[derive(Debug, Parser)]
#[command(name = "ellipk", version, about = "Complete elliptic integral of the first kind K(k)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate K at one modulus k (or parameter m = k²).
    Eval(EvalArgs),
    /// Tabulate K over a range of moduli.
    Table(TableArgs),
    /// Print the nodes and weights of a quadrature rule.
    Rule(RuleArgs),
    /// Run the verification suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleFamily {
    Gc,
    Gl,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse::<Method>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("input").required(true))]
pub struct EvalArgs {
    /// Modulus, 0 <= k < 1.
    #[arg(long, group = "input", allow_negative_numbers = true)]
    pub k: Option<f64>,
    /// Parameter m = k², 0 <= m < 1.
    #[arg(long, group = "input", allow_negative_numbers = true)]
    pub m: Option<f64>,
    #[arg(long, value_parser = parse_method, default_value = "agm")]
    pub method: Method,
    /// Tolerance for series and agm.
    #[arg(long, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
    /// Node count for gc and gl.
    #[arg(long, default_value_t = DEFAULT_N)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub kmin: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub kmax: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub step: f64,
    /// Comma-separated subset of series,agm,gc,gl.
    #[arg(long, value_parser = parse_method, value_delimiter = ',', default_value = "series,agm,gc,gl")]
    pub methods: Vec<Method>,
    #[arg(long, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
    #[arg(long, default_value_t = DEFAULT_N)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    pub format: OutputFormat,
    /// Write to a file instead of stdout. A single method in plain format
    /// gives the two-column `k K` layout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RuleArgs {
    #[arg(long, value_enum)]
    pub family: RuleFamily,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Print measured error against tolerance for every check.
    #[arg(long)]
    pub verbose: bool,
    /// Shift every computed reference-table value; exercises the failure path.
    #[arg(long, hide = true, default_value_t = 0.0, allow_negative_numbers = true)]
    pub inject_perturbation: f64,
}

/// A failed command: message for stderr and the exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_non_convergence() {
            EXIT_NON_CONVERGENCE
        } else {
            EXIT_DOMAIN
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn invalid(message: String) -> Failure {
    Failure {
        code: EXIT_DOMAIN,
        message,
    }
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(&a, out, err),
        Command::Table(a) => cmd_table(&a, out),
        Command::Rule(a) => cmd_rule(&a, out),
        Command::Selftest(a) => cmd_selftest(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn cmd_eval(a: &EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let request = match (a.k, a.m) {
        (Some(k), None) => Cei1Request::new(k, a.method),
        (None, Some(m)) => Cei1Request::from_parameter(m, a.method)?,
        _ => unreachable!("clap enforces exactly one of --k and --m"),
    }
    .eps(a.eps)
    .n(a.n);
    let eval = request.evaluate()?;
    let record = Record {
        k: request.k,
        value: eval.value,
        method: a.method.name().to_string(),
        param: Param::for_method(a.method, a.eps, a.n),
    };
    match a.format {
        OutputFormat::Plain => writeln!(out, "{:.7}", eval.value)?,
        OutputFormat::Csv => write!(out, "k,K\n{},{}\n", record.k, record.value)?,
        OutputFormat::Json => writeln!(out, "{}", to_json(&record))?,
    }
    writeln!(err, "method={} {}", a.method.name(), eval.diagnostics)?;
    Ok(EXIT_OK)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("records serialize")
}

/// Evaluate every requested method at every grid point.
pub fn table_rows(ks: &[f64], methods: &[Method], eps: f64, n: usize) -> Result<Vec<Row>, Error> {
    ks.iter()
        .map(|&k| {
            let values = methods
                .iter()
                .map(|&m| Cei1Request::new(k, m).eps(eps).n(n).evaluate().map(|e| e.value))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Row { k, values })
        })
        .collect()
}

/// The text `table` prints for the given arguments.
pub fn render_table(a: &TableArgs) -> Result<String, Failure> {
    if a.methods.is_empty() {
        return Err(invalid("no methods requested".into()));
    }
    let (ks, decimals) = k_grid(a.kmin, a.kmax, a.step).map_err(invalid)?;
    let rows = table_rows(&ks, &a.methods, a.eps, a.n)?;
    let text = match a.format {
        OutputFormat::Plain if a.out.is_some() && a.methods.len() == 1 => {
            let m = a.methods[0];
            kvalues_file(&rows, m, Param::for_method(m, a.eps, a.n))
        }
        OutputFormat::Plain => plain_table(&rows, &a.methods, decimals),
        OutputFormat::Csv => csv_table(&rows, &a.methods),
        OutputFormat::Json => to_json(&records(&rows, &a.methods, a.eps, a.n)) + "\n",
    };
    Ok(text)
}

pub fn cmd_table(a: &TableArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let text = render_table(a)?;
    match &a.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure {
            code: EXIT_DOMAIN,
            message: format!("cannot write {}: {e}", path.display()),
        })?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RuleEntry {
    pub index: usize,
    pub node: f64,
    pub weight: f64,
}

pub fn cmd_rule(a: &RuleArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let family = match a.family {
        RuleFamily::Gc => QuadFamily::GaussChebyshev,
        RuleFamily::Gl => QuadFamily::GaussLegendre,
    };
    let rule = QuadratureRule::new(family, a.n)?;
    let entries: Vec<RuleEntry> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .enumerate()
        .map(|(i, (&node, &weight))| RuleEntry { index: i, node, weight })
        .collect();
    match a.format {
        OutputFormat::Plain => {
            for e in &entries {
                writeln!(out, "{:>4}  {:>22}  {:>22}", e.index, g15(e.node), g15(e.weight))?;
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "index,node,weight")?;
            for e in &entries {
                writeln!(out, "{},{},{}", e.index, g15(e.node), g15(e.weight))?;
            }
        }
        OutputFormat::Json => writeln!(out, "{}", to_json(&entries))?,
    }
    Ok(EXIT_OK)
}

/// Plain `table` output for k = 0, 0.1, ..., 0.5 against the checked-in copy.
pub fn golden_check() -> Check {
    let args = TableArgs {
        kmin: 0.0,
        kmax: 0.5,
        step: 0.1,
        methods: Method::ALL.to_vec(),
        eps: DEFAULT_EPS,
        n: DEFAULT_N,
        format: OutputFormat::Plain,
        out: None,
    };
    let mismatched = match render_table(&args) {
        Ok(text) => text != GOLDEN_TABLE1,
        Err(_) => true,
    };
    Check {
        name: "cli/table1-golden".into(),
        measured: mismatched as u8 as f64,
        tolerance: 0.0,
        passed: !mismatched,
    }
}

pub fn cmd_selftest(a: &SelftestArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut report = selftest::run(&SelftestOptions {
        perturbation: a.inject_perturbation,
    });
    report.push(golden_check());
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        if a.verbose {
            writeln!(
                out,
                "{status} {:<34} measured={:.3e} tolerance={:.1e}",
                c.name, c.measured, c.tolerance
            )?;
        } else {
            writeln!(out, "{status} {}", c.name)?;
        }
    }
    for note in &report.notes {
        writeln!(out, "NOTE {}: {}", note.name, note.text)?;
    }
    let failed = report.failures().count();
    writeln!(out, "{} checks, {failed} failed", report.checks.len())?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_SELFTEST })
}
