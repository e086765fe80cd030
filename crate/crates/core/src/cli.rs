//! `benford-gengamma <sample|pdf|deviation|kstest> [flags]`
//!
//! Every subcommand writes one table of plot-ready data, either CSV (header
//! row, LF line endings) or a single JSON object `{"metadata": {...},
//! "rows": [...]}`. Floats are printed with 17 significant digits so repeated
//! runs are byte-identical.
//!
//! Exit codes: 0 success, 2 invalid input, 3 numerical failure, 1 I/O error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Number, Value};

use crate::analysis::{bound_sweep_reports, ks_sweep_results, SweepAxis, LOW_SAMPLE_SIZE, MIN_SUP_GRID};
use crate::benford::{benford_digit_prob, digit_histogram_from_ln, sse_error};
use crate::gengamma::{sample, GenGammaParams};
use crate::wrapped::{direct_pdf, DirectSumConfig, FourierConfig, FourierSeries};
use crate::Error;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_210_601;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "benford-gengamma",
    version,
    about = "Benford deviation of the generalized gamma distribution"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample and compare first-digit frequencies with Benford's law.
    Sample(SampleArgs),
    /// Tabulate the truncated Fourier density of log_B X mod 1.
    Pdf(PdfArgs),
    /// Deviation bound, at one point or swept along one parameter.
    Deviation(DeviationArgs),
    /// KS statistics of log_B X mod 1 against uniform over a (d, p) grid.
    Kstest(KstestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    A,
    D,
    P,
}

impl From<AxisArg> for SweepAxis {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::A => SweepAxis::A,
            AxisArg::D => SweepAxis::D,
            AxisArg::P => SweepAxis::P,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct DistArgs {
    /// Scale parameter a > 0.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub a: f64,
    /// Shape parameter d > 0.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub d: f64,
    /// Power parameter p > 0.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub p: f64,
    /// Digit base, an integer >= 2.
    #[arg(long, default_value_t = 10, allow_negative_numbers = true)]
    pub base: i64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Also write a gnuplot script for the CSV written to --out.
    #[arg(long)]
    pub gnuplot: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    /// Number of draws.
    #[arg(long, default_value_t = 10_000, allow_negative_numbers = true)]
    pub n: i64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PdfArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    /// Pointwise truncation error target; sets the number of Fourier terms.
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    pub eps: f64,
    /// Number of u rows, spanning [0, 1] inclusive.
    #[arg(long, default_value_t = 1024, allow_negative_numbers = true)]
    pub grid: i64,
    /// Add the direct-sum density and its distance from the Fourier one.
    #[arg(long)]
    pub with_direct: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DeviationArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    pub eps: f64,
    /// Grid points for the supremum search.
    #[arg(long, default_value_t = 1024, allow_negative_numbers = true)]
    pub grid: i64,
    /// Parameter to sweep; omit for a single point.
    #[arg(long, value_enum, requires_all = ["from", "to"])]
    pub axis: Option<AxisArg>,
    #[arg(long, allow_negative_numbers = true)]
    pub from: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub to: Option<f64>,
    #[arg(long, default_value_t = 20, allow_negative_numbers = true)]
    pub steps: i64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct KstestArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = 10, allow_negative_numbers = true)]
    pub base: i64,
    /// Draws per grid cell.
    #[arg(long, default_value_t = 10_000, allow_negative_numbers = true)]
    pub n: i64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Lower end of both the d and the p axis.
    #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
    pub from: f64,
    /// Upper end of both axes.
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub to: f64,
    /// Points per axis.
    #[arg(long, default_value_t = 10, allow_negative_numbers = true)]
    pub steps: i64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Numerical(m) | CliError::Io(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            CliError::Validation(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}

fn invalid(field: &str, reason: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("invalid `{field}`: {reason}"))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Float(x) if x.is_finite() => {
                // arbitrary_precision keeps the 17-digit text as written
                Value::Number(
                    format_float(*x)
                        .parse::<Number>()
                        .expect("formatted float is a JSON number"),
                )
            }
            Cell::Float(_) | Cell::Empty => Value::Null,
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

/// 17 significant digits, scientific notation, locale independent.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub metadata: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Self {
            metadata: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn meta(&mut self, key: &str, value: Cell) {
        self.metadata.push((key.to_string(), value));
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let metadata: Map<String, Value> = self.metadata.iter().map(|(k, v)| (k.clone(), v.json())).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.clone(), v.json()))
                        .collect(),
                )
            })
            .collect();
        let mut top = Map::new();
        top.insert("metadata".into(), Value::Object(metadata));
        top.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

fn params_from(dist: &DistArgs) -> Result<GenGammaParams, CliError> {
    let base = base_from(dist.base)?;
    Ok(GenGammaParams::new(dist.a, dist.d, dist.p, base)?)
}

fn base_from(base: i64) -> Result<u32, CliError> {
    if !(2..=i64::from(u32::MAX)).contains(&base) {
        return Err(invalid("base", format!("must be an integer >= 2, got {base}")));
    }
    Ok(base as u32)
}

fn positive_count(field: &str, v: i64, min: i64) -> Result<usize, CliError> {
    if v < min {
        return Err(invalid(field, format!("must be at least {min}, got {v}")));
    }
    usize::try_from(v).map_err(|_| invalid(field, "too large"))
}

fn positive_eps(eps: f64) -> Result<f64, CliError> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(invalid("eps", format!("must be finite and > 0, got {eps}")));
    }
    Ok(eps)
}

/// `steps` evenly spaced values from `from` to `to`, endpoints exact.
pub fn linspace(from: f64, to: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![from];
    }
    let last = (steps - 1) as f64;
    (0..steps)
        .map(|i| (from * (last - i as f64) + to * i as f64) / last)
        .collect()
}

fn dist_meta(table: &mut Table, params: &GenGammaParams) {
    table.meta("a", Cell::Float(params.a()));
    table.meta("d", Cell::Float(params.d()));
    table.meta("p", Cell::Float(params.p()));
    table.meta("base", Cell::Int(i64::from(params.base())));
}

pub fn cmd_sample(args: &SampleArgs) -> Result<Table, CliError> {
    let params = params_from(&args.dist)?;
    let n = positive_count("n", args.n, 1)?;
    let batch = sample(n, &params, args.seed)?;
    let hist = digit_histogram_from_ln(batch.ln_values(), params.base())?;
    let sse = sse_error(&hist)?;

    let mut table = Table::new(&["digit", "observed_freq", "benford_freq"]);
    table.meta("subcommand", Cell::Text("sample".into()));
    dist_meta(&mut table, &params);
    table.meta("n", Cell::Int(n as i64));
    table.meta("seed", Cell::Text(args.seed.to_string()));
    table.meta("sse", Cell::Float(sse));
    for (i, f) in hist.frequencies().into_iter().enumerate() {
        let digit = i as u32 + 1;
        table.rows.push(vec![
            Cell::Int(i64::from(digit)),
            Cell::Float(f),
            Cell::Float(benford_digit_prob(digit, params.base())?),
        ]);
    }
    table
        .rows
        .push(vec![Cell::Text("sse".into()), Cell::Float(sse), Cell::Empty]);
    Ok(table)
}

pub fn cmd_pdf(args: &PdfArgs) -> Result<Table, CliError> {
    let params = params_from(&args.dist)?;
    let eps = positive_eps(args.eps)?;
    let rows = positive_count("grid", args.grid, 2)?;
    let cfg = FourierConfig::from_epsilon(&params, eps)?;
    let series = FourierSeries::new(&params, &cfg);

    let mut columns = vec!["u", "f_m", "terms", "truncation_bound"];
    if args.with_direct {
        columns.extend(["direct", "abs_diff"]);
    }
    let mut table = Table::new(&columns);
    table.meta("subcommand", Cell::Text("pdf".into()));
    dist_meta(&mut table, &params);
    table.meta("eps", Cell::Float(eps));
    table.meta("terms", Cell::Int(cfg.terms as i64));
    table.meta("truncation_bound", Cell::Float(series.truncation_bound()));

    let direct_cfg = DirectSumConfig::default();
    for u in linspace(0.0, 1.0, rows) {
        let f = series.evaluate(u);
        let mut row = vec![
            Cell::Float(u),
            Cell::Float(f),
            Cell::Int(cfg.terms as i64),
            Cell::Float(series.truncation_bound()),
        ];
        if args.with_direct {
            let direct = direct_pdf(u, &params, &direct_cfg)?.value;
            row.push(Cell::Float(direct));
            row.push(Cell::Float((direct - f).abs()));
        }
        table.rows.push(row);
    }
    Ok(table)
}

pub fn cmd_deviation(args: &DeviationArgs) -> Result<Table, CliError> {
    let params = params_from(&args.dist)?;
    let eps = positive_eps(args.eps)?;
    let grid = positive_count("grid", args.grid, MIN_SUP_GRID as i64)?;
    let (axis, values) = match args.axis {
        Some(axis) => {
            let steps = positive_count("steps", args.steps, 1)?;
            let from = args.from.ok_or_else(|| invalid("from", "required with --axis"))?;
            let to = args.to.ok_or_else(|| invalid("to", "required with --axis"))?;
            if !from.is_finite() || !to.is_finite() {
                return Err(invalid("from", "axis endpoints must be finite"));
            }
            (SweepAxis::from(axis), linspace(from, to, steps))
        }
        None => (SweepAxis::D, vec![params.d()]),
    };
    let reports = bound_sweep_reports(axis, &values, &params, eps, grid)?;

    let mut table = Table::new(&["axis_value", "M", "sup_residual", "lipschitz_slack", "bound"]);
    table.meta("subcommand", Cell::Text("deviation".into()));
    dist_meta(&mut table, &params);
    table.meta("axis", Cell::Text(axis.name().into()));
    table.meta("eps", Cell::Float(eps));
    table.meta("grid", Cell::Int(grid as i64));
    for (v, r) in values.iter().zip(&reports) {
        table.rows.push(vec![
            Cell::Float(*v),
            Cell::Int(r.terms as i64),
            Cell::Float(r.sup_residual),
            Cell::Float(r.lipschitz_slack),
            Cell::Float(r.bound),
        ]);
    }
    Ok(table)
}

pub fn cmd_kstest(args: &KstestArgs) -> Result<Table, CliError> {
    let base = base_from(args.base)?;
    let n = positive_count("n", args.n, 1)?;
    let steps = positive_count("steps", args.steps, 1)?;
    if !args.from.is_finite() || !args.to.is_finite() {
        return Err(invalid("from", "axis endpoints must be finite"));
    }
    let axis = linspace(args.from, args.to, steps);
    let results = ks_sweep_results(&axis, &axis, args.a, base, n, args.seed)?;

    let warning = if n < LOW_SAMPLE_SIZE { "low_sample_size" } else { "" };
    let mut table = Table::new(&["d", "p", "statistic", "warning"]);
    table.meta("subcommand", Cell::Text("kstest".into()));
    table.meta("a", Cell::Float(args.a));
    table.meta("base", Cell::Int(i64::from(base)));
    table.meta("n", Cell::Int(n as i64));
    table.meta("seed", Cell::Text(args.seed.to_string()));
    for r in &results {
        table.rows.push(vec![
            Cell::Float(r.params.d()),
            Cell::Float(r.params.p()),
            Cell::Float(r.statistic),
            Cell::Text(warning.into()),
        ]);
    }
    Ok(table)
}

fn gnuplot_script(command: &Command, data: &Path) -> String {
    let file = data.display().to_string().replace('\'', "");
    let mut s = String::from("set datafile separator ','\nset key autotitle columnhead\n");
    match command {
        Command::Sample(args) => {
            let last = args.dist.base - 2;
            let _ = writeln!(s, "set xlabel 'digit'\nset ylabel 'frequency'");
            let _ = writeln!(
                s,
                "plot '{file}' every ::0::{last} using 1:2 with points pt 7 title 'observed', \\\n     '' every ::0::{last} using 1:3 with points pt 6 title 'benford'"
            );
        }
        Command::Pdf(_) => {
            let _ = writeln!(s, "set xlabel 'u'\nset ylabel 'f_M(u)'");
            let _ = writeln!(s, "plot '{file}' using 1:2 with lines title 'f_M'");
        }
        Command::Deviation(_) => {
            let _ = writeln!(s, "set ylabel 'bound for probability difference'");
            let _ = writeln!(s, "plot '{file}' using 1:5 with points pt 7 title 'bound'");
        }
        Command::Kstest(_) => {
            let _ = writeln!(s, "set xlabel 'd'\nset ylabel 'p'\nset view map\nset dgrid3d");
            let _ = writeln!(s, "splot '{file}' using 1:2:3 with pm3d title 'KS statistic'");
        }
    }
    s
}

fn output_args(command: &Command) -> &OutputArgs {
    match command {
        Command::Sample(a) => &a.output,
        Command::Pdf(a) => &a.output,
        Command::Deviation(a) => &a.output,
        Command::Kstest(a) => &a.output,
    }
}

/// Run one parsed command, writing the table to `--out` or `stdout`.
pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let output = output_args(&cli.command);
    if output.gnuplot.is_some() && (output.out.is_none() || output.format != Format::Csv) {
        return Err(invalid("gnuplot", "needs --out with --format csv"));
    }
    let table = match &cli.command {
        Command::Sample(a) => cmd_sample(a)?,
        Command::Pdf(a) => cmd_pdf(a)?,
        Command::Deviation(a) => cmd_deviation(a)?,
        Command::Kstest(a) => {
            if a.n < LOW_SAMPLE_SIZE as i64 && a.n >= 1 {
                let _ = writeln!(
                    stderr,
                    "warning: n = {} is below {LOW_SAMPLE_SIZE}; statistics are noisy",
                    a.n
                );
            }
            cmd_kstest(a)?
        }
    };
    let text = match output.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}")))?,
    }
    if let (Some(script), Some(data)) = (&output.gnuplot, &output.out) {
        fs::write(script, gnuplot_script(&cli.command, data))
            .map_err(|e| CliError::Io(format!("{}: {e}", script.display())))?;
    }
    Ok(())
}

/// Parse `args` (program name first) and run; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["benford-gengamma"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn float_format_is_17_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(1.0), "1.0000000000000000e0");
        assert_eq!(format_float(f64::NAN), "NaN");
        let x = 0.123_456_789_012_345_68;
        assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn linspace_hits_endpoints() {
        let v = linspace(0.1, 2.0, 20);
        assert_eq!(v.len(), 20);
        assert_eq!(v[0], 0.1);
        assert_eq!(v[19], 2.0);
        assert!((v[2] - 0.3).abs() < 1e-15);
        assert_eq!(linspace(3.0, 9.0, 1), vec![3.0]);
    }

    #[test]
    fn csv_and_json_mirror_fields() {
        let mut t = Table::new(&["x", "label"]);
        t.meta("k", Cell::Int(3));
        t.rows.push(vec![Cell::Float(0.5), Cell::Text("a,b".into())]);
        t.rows.push(vec![Cell::Float(f64::NAN), Cell::Empty]);
        assert_eq!(t.to_csv(), "x,label\n5.0000000000000000e-1,\"a,b\"\nNaN,\n");
        let v: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["metadata"]["k"], 3);
        assert_eq!(v["rows"][0]["label"], "a,b");
        assert!(v["rows"][1]["x"].is_null());
        assert_eq!(v["rows"][0]["x"].as_f64(), Some(0.5));
    }

    #[test]
    fn validation_exit_codes_name_the_field() {
        let (code, _, err) = run_capture(&["sample", "--n", "0"]);
        assert_eq!(code, EXIT_VALIDATION);
        assert!(err.contains("`n`"), "{err}");
        let (code, _, err) = run_capture(&["pdf", "--d", "-1"]);
        assert_eq!(code, EXIT_VALIDATION);
        assert!(err.contains("`d`"), "{err}");
        let (code, _, err) = run_capture(&["deviation", "--base", "1"]);
        assert_eq!(code, EXIT_VALIDATION);
        assert!(err.contains("`base`"), "{err}");
        let (code, _, err) = run_capture(&["pdf", "--eps", "0"]);
        assert_eq!(code, EXIT_VALIDATION);
        assert!(err.contains("`eps`"), "{err}");
        let (code, _, _) = run_capture(&["bogus"]);
        assert_eq!(code, EXIT_VALIDATION);
        let (code, _, _) = run_capture(&["pdf", "--grid", "abc"]);
        assert_eq!(code, EXIT_VALIDATION);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("kstest"));
    }

    #[test]
    fn numerical_failure_maps_to_exit_3() {
        let e: CliError = Error::Truncation {
            partial: 0.5,
            terms: 3,
            tail_bound: 1.0,
        }
        .into();
        assert_eq!(e.exit_code(), EXIT_NUMERICAL);
        let e: CliError = Error::NonConvergence("x").into();
        assert_eq!(e.exit_code(), EXIT_NUMERICAL);
    }

    #[test]
    fn gnuplot_requires_csv_file() {
        let (code, _, err) = run_capture(&["pdf", "--gnuplot", "plot.gp"]);
        assert_eq!(code, EXIT_VALIDATION);
        assert!(err.contains("gnuplot"));
    }
}
