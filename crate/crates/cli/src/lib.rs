//! `wavefactor` command-line front end.
//!
//! ```text
//! wavefactor <command> <N|config-path> [--sum fourier|gauss|kummer|powerk:<k>|selfexp]
//!     [--terms <M>|auto] [--selection all|odd] [--threshold <x>] [--range <lo>:<hi>]
//!     [--setup mzi|pulses|beats|faraday --config <file>] [--trials <l1,l2,...>]
//!     [--format csv|json|plot-svg] [--out <path>] [--parallel <n>|auto]
//! ```
//!
//! Exit status: 0 on success, 2 on validation errors, 3 when a `compare` run
//! hits a trial that never drops below the threshold.

pub mod config;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde_json::json;
use wavefactor_core::optics::{map_to_canonical, sweep, Setup};
use wavefactor_core::{
    factorize, min_discriminating_terms, scan, Error, FactorizationResult, ScanParams, ScanRow,
    SumKind, TermSelection, Truncation,
};

use config::SetupKind;
use report::{emit_report, Field, Format, Report, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_SEPARATED: i32 = 3;

pub const PARALLEL_ENV: &str = "WAVEFACTOR_PARALLEL";

pub const SCAN_COLUMNS: [&str; 7] = ["l", "magnitude", "verdict", "complement", "kind", "M", "threshold"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Factor,
    Scan,
    Simulate,
    Sweep,
    Compare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    Auto,
    Threads(usize),
}

fn parse_parallelism(s: &str) -> Result<Parallelism, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(Parallelism::Auto);
    }
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(Parallelism::Threads(n)),
        _ => Err(format!("expected a positive integer or 'auto', got '{s}'")),
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected <lo>:<hi>, got '{s}'"))?;
    let lo = lo.trim().parse().map_err(|_| format!("bad lower bound in '{s}'"))?;
    let hi = hi.trim().parse().map_err(|_| format!("bad upper bound in '{s}'"))?;
    Ok((lo, hi))
}

fn parse_trials(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad trial '{t}'"))
                .and_then(|v| if v == 0 { Err("trial values must be positive".into()) } else { Ok(v) })
        })
        .collect()
}

fn parse_kind(s: &str) -> Result<SumKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_selection(s: &str) -> Result<TermSelection, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_truncation(s: &str) -> Result<Truncation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "wavefactor", version, about = "Factorize integers with truncated exponential sums")]
pub struct Cli {
    pub command: Command,

    /// Integer to factor, or a setup/N-list file.
    pub target: Option<String>,

    #[arg(long = "sum", default_value = "gauss", value_parser = parse_kind)]
    pub kind: SumKind,

    #[arg(long, default_value = "auto", value_parser = parse_truncation)]
    pub terms: Truncation,

    #[arg(long, default_value = "all", value_parser = parse_selection)]
    pub selection: TermSelection,

    #[arg(long, default_value_t = wavefactor_core::DEFAULT_THRESHOLD)]
    pub threshold: f64,

    #[arg(long, value_parser = parse_range)]
    pub range: Option<(u64, u64)>,

    #[arg(long, value_parser = ["mzi", "pulses", "beats", "faraday"])]
    pub setup: Option<String>,

    #[arg(long)]
    pub config: Option<PathBuf>,

    #[arg(long, value_parser = parse_trials)]
    pub trials: Option<::std::vec::Vec<u64>>,

    #[arg(long, value_parser = ["csv", "json", "plot-svg"])]
    pub format: Option<String>,

    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, default_value = "auto", value_parser = parse_parallelism)]
    pub parallel: Parallelism,
}

/// Failure with its exit code and a one-line diagnostic.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotSeparated { .. } => Failure {
                code: EXIT_NOT_SEPARATED,
                message: e.to_string(),
            },
            other => Failure::invalid(other.to_string()),
        }
    }
}

/// Parse `args` (program name first), run the command and write the report to
/// `--out` or `stdout`. Diagnostics go to `stderr`. Returns the exit status.
pub fn run_command<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(stderr, "{line}");
            return EXIT_INVALID;
        }
    };
    let threads = std::env::var(PARALLEL_ENV)
        .ok()
        .map(|v| parse_parallelism(&v).map_err(|e| format!("{PARALLEL_ENV}: {e}")))
        .transpose();
    let parallel = match threads {
        Ok(env) => env.unwrap_or(cli.parallel),
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_INVALID;
        }
    };
    match with_pool(parallel, || execute(&cli)).and_then(|bytes| write_output(&cli, &bytes, stdout)) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

/// Run `f` on a rayon pool of the requested size.
pub fn with_pool<R: Send>(
    parallel: Parallelism,
    f: impl FnOnce() -> Result<R, Failure> + Send,
) -> Result<R, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Parallelism::Threads(n) = parallel {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Failure::invalid(format!("--parallel: {e}")))?;
    pool.install(f)
}

fn write_output(cli: &Cli, bytes: &[u8], stdout: &mut dyn Write) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| Failure::invalid(format!("--out: cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(bytes)
            .map_err(|e| Failure::invalid(format!("cannot write report: {e}"))),
    }
}

fn execute(cli: &Cli) -> Result<Vec<u8>, Failure> {
    if !(cli.threshold > 0.0 && cli.threshold < 1.0) {
        return Err(Failure::invalid("--threshold must lie strictly between 0 and 1"));
    }
    let default_format = match cli.command {
        Command::Factor => Format::Json,
        _ => Format::Csv,
    };
    let format = cli
        .format
        .as_deref()
        .map(|f| f.parse::<Format>().map_err(Failure::invalid))
        .transpose()?
        .unwrap_or(default_format);
    let report = match cli.command {
        Command::Factor => factor_report(&factor(cli)?, cli),
        Command::Scan => scan_report(cli)?,
        Command::Simulate => simulate_report(cli)?,
        Command::Sweep => sweep_report(cli)?,
        Command::Compare => compare_report(cli)?,
    };
    emit_report(&report, format).map_err(|e| Failure::invalid(format!("--format: {e}")))
}

fn target(cli: &Cli) -> Result<&str, Failure> {
    cli.target
        .as_deref()
        .ok_or_else(|| Failure::invalid("missing <N|config-path> argument"))
}

fn number(cli: &Cli) -> Result<u64, Failure> {
    let raw = target(cli)?;
    let n: u64 = raw
        .trim()
        .parse()
        .map_err(|_| Failure::invalid(format!("N must be a positive integer, got '{raw}'")))?;
    if n < 2 {
        return Err(Failure::invalid("N must be ≥ 2"));
    }
    Ok(n)
}

fn params(cli: &Cli) -> ScanParams {
    ScanParams {
        truncation: cli.terms,
        kind: cli.kind,
        selection: cli.selection,
        threshold: cli.threshold,
        trial_range: cli.range,
    }
}

fn factor(cli: &Cli) -> Result<FactorizationResult, Failure> {
    let n = number(cli)?;
    Ok(factorize(n, &params(cli))?)
}

/// JSON: `{"n", "primes", "kind", "threshold", "terms_per_level"}`; tables list
/// `prime, multiplicity`.
pub fn factor_report(result: &FactorizationResult, cli: &Cli) -> Report {
    factorization_report(result, cli.kind, cli.threshold)
}

pub fn factorization_report(result: &FactorizationResult, kind: SumKind, threshold: f64) -> Report {
    let json = json!({
        "n": result.number,
        "primes": result.prime_factors,
        "kind": kind.to_string(),
        "threshold": threshold,
        "terms_per_level": result.terms_used_per_level(),
    });
    let mut table = Table::new(vec!["prime", "multiplicity"]);
    for (p, count) in result.multiplicities() {
        table.push(vec![p.into(), u64::from(count).into()]);
    }
    Report::Document { json, table }
}

/// Rows in the fixed scan column order.
pub fn scan_table(rows: &[ScanRow], kind: SumKind, terms: u64, threshold: f64) -> Table {
    let mut table = Table::new(SCAN_COLUMNS.to_vec());
    table.threshold = Some(threshold);
    for row in rows {
        table.push(vec![
            row.trial.into(),
            row.magnitude.into(),
            row.verdict.to_string().into(),
            row.complement.into(),
            kind.to_string().into(),
            terms.into(),
            threshold.into(),
        ]);
    }
    table
}

fn scan_report(cli: &Cli) -> Result<Report, Failure> {
    let n = number(cli)?;
    let p = params(cli);
    let rows = scan(n, &p)?;
    let terms = p.truncation.resolve(n, p.kind);
    Ok(Report::Table(scan_table(&rows, p.kind, terms, p.threshold)))
}

fn setup(cli: &Cli) -> Result<Setup, Failure> {
    let kind: SetupKind = cli
        .setup
        .as_deref()
        .ok_or_else(|| Failure::invalid("--setup is required for simulate and sweep"))?
        .parse()
        .map_err(Failure::invalid)?;
    let path: &Path = match (&cli.config, &cli.target) {
        (Some(p), _) => p.as_path(),
        (None, Some(t)) => Path::new(t.as_str()),
        (None, None) => return Err(Failure::invalid("--config: missing setup file")),
    };
    config::load_setup(kind, path).map_err(|e| Failure::invalid(format!("--config: {e}")))
}

fn simulate_report(cli: &Cli) -> Result<Report, Failure> {
    let setup = setup(cli)?;
    let reading = setup.reading()?;
    let mapping = map_to_canonical(&setup)?;
    let mut table = Table::new(vec![
        "setup",
        "raw_intensity",
        "normalized_magnitude",
        "terms",
        "effective_number",
        "effective_trial",
        "ratio",
        "kind",
        "M",
        "selection",
    ]);
    table.push(vec![
        setup.name().into(),
        reading.raw_intensity.into(),
        reading.normalized_magnitude.into(),
        reading.terms.into(),
        mapping.effective_number.value().into(),
        mapping.effective_trial.value().into(),
        mapping.ratio.value().into(),
        mapping.kind.to_string().into(),
        mapping.truncation.into(),
        mapping.selection.to_string().into(),
    ]);
    Ok(Report::Table(table))
}

/// Tolerance for treating an effective number as an integer.
pub const INTEGRAL_TOLERANCE: f64 = 1e-9;

/// Sweep `setup` over `trials` and judge each reading like a scan row. When
/// the effective number is not an integer the verdict is the bare threshold
/// classification.
pub fn sweep_table(setup: &Setup, trials: &[u64], threshold: f64) -> Result<Table, Failure> {
    let mapping = map_to_canonical(setup)?;
    let points = sweep(setup, setup.sweep_variable(), trials)?;
    let number = mapping.effective_number.as_integer(INTEGRAL_TOLERANCE);
    let mut columns = SCAN_COLUMNS.to_vec();
    columns.push("setup");
    let mut table = Table::new(columns);
    table.threshold = Some(threshold);
    for p in points {
        let (verdict, complement) = match number {
            Some(n) if n >= 1 => {
                let row = ScanRow::judge(n, p.trial, p.normalized_magnitude, threshold);
                (row.verdict.to_string(), row.complement)
            }
            _ => (
                format!("{:?}", wavefactor_core::classify(p.normalized_magnitude, threshold)),
                None,
            ),
        };
        table.push(vec![
            p.trial.into(),
            p.normalized_magnitude.into(),
            verdict.into(),
            complement.into(),
            mapping.kind.to_string().into(),
            mapping.truncation.into(),
            threshold.into(),
            setup.name().into(),
        ]);
    }
    Ok(table)
}

fn sweep_report(cli: &Cli) -> Result<Report, Failure> {
    let setup = setup(cli)?;
    let trials = match (&cli.trials, cli.range) {
        (Some(t), _) => t.clone(),
        (None, Some((lo, hi))) if lo >= 1 && lo <= hi => (lo..=hi).collect(),
        (None, Some(_)) => return Err(Failure::invalid("--range: empty trial range")),
        (None, None) => {
            let n = map_to_canonical(&setup)?
                .effective_number
                .as_integer(INTEGRAL_TOLERANCE)
                .ok_or_else(|| {
                    Failure::invalid("--trials: required when the effective number is not an integer")
                })?;
            (2..=n.isqrt()).collect()
        }
    };
    if trials.is_empty() {
        return Err(Failure::invalid("--trials: no trial values"));
    }
    Ok(Report::Table(sweep_table(&setup, &trials, cli.threshold)?))
}

/// Median of the values; for an even count, the mean of the middle two.
pub fn median(values: &mut [u64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_unstable();
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid] as f64
    } else {
        (values[mid - 1] + values[mid]) as f64 / 2.0
    })
}

/// Numbers from a list file: integers separated by whitespace, commas or
/// newlines; `#` starts a comment.
pub fn parse_number_list(text: &str) -> Result<Vec<u64>, String> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .flat_map(|line| line.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .ok()
                .filter(|&n| n >= 4)
                .ok_or_else(|| format!("'{t}' is not an integer >= 4"))
        })
        .collect()
}

fn compare_report(cli: &Cli) -> Result<Report, Failure> {
    let path = target(cli)?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("cannot read N-list {path}: {e}")))?;
    let numbers = parse_number_list(&text).map_err(|e| Failure::invalid(format!("{path}: {e}")))?;
    if numbers.is_empty() {
        return Err(Failure::invalid(format!("{path}: no numbers")));
    }
    let mut table = Table::new(vec!["kind", "median_terms", "count", "threshold"]);
    for kind in [SumKind::Fourier, SumKind::Gauss, SumKind::Kummer] {
        let mut terms = Vec::with_capacity(numbers.len());
        for &n in &numbers {
            match min_discriminating_terms(n, kind, cli.threshold) {
                Ok(m) => terms.push(m),
                Err(Error::NotSeparated { trial, cap }) => {
                    return Err(Failure {
                        code: EXIT_NOT_SEPARATED,
                        message: format!(
                            "{kind}: N = {n} keeps a ghost at l = {trial} up to {cap} terms"
                        ),
                    })
                }
                Err(e) => return Err(e.into()),
            }
        }
        let count = terms.len() as u64;
        table.push(vec![
            kind.to_string().into(),
            Field::from(median(&mut terms)),
            count.into(),
            cli.threshold.into(),
        ]);
    }
    Ok(Report::Table(table))
}
