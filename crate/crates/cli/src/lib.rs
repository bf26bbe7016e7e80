//! The `galilean` command line: compose motions, act on points, convert between
//! representations, run the property suite, and emit projection figure data.
//!
//! Inputs are JSON (or comma-separated shorthand such as `1,2,3`) given as
//! arguments or as JSON lines through `--input FILE` (`-` for stdin).

use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use galilean_core::json::JsonCodec;
use galilean_core::plane::write_projection_csv;
use galilean_core::sampling::RandomScalar;
use galilean_core::verify::{self, Report};
use galilean_core::{
    act_via_rep, check_rep, emit_projection_figure, to_rep, GalileanMotion, GalileanPoint,
    ProjectionRow, Rational, RepElement, RepId, RepPayload, Scalar, SpherePoint,
};
use serde_json::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("no motions given")]
    EmptyInput,
    #[error("bad grid spec `{0}`: expected Y0:Y1:NY,Z0:Z1:NZ with finite bounds and counts >= 1")]
    BadGridSpec(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] galilean_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScalarKind {
    Rational,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "galilean", version, about = "Motions of the Galilean plane over the Pimenov algebra D2")]
pub struct Cli {
    /// Exact rationals or f64.
    #[arg(long, value_enum, default_value = "rational", global = true)]
    pub scalar: ScalarKind,
    #[arg(long, value_enum, global = true)]
    pub output: Option<OutputFormat>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Left-to-right composition of motions.
    Compose(InputArgs),
    /// Apply a motion to points through one representation.
    Act {
        #[arg(long, default_value = "std3x3")]
        rep: RepId,
        /// Motion as JSON or `a,b,theta`.
        #[arg(long, allow_hyphen_values = true)]
        motion: String,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Convert representation elements (or bare motions) to another representation.
    Convert {
        /// Target representation.
        #[arg(long)]
        rep: RepId,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Run the randomized property suite.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Emit stereographic projection data for a grid of sphere points.
    Project {
        /// `Y0:Y1:NY,Z0:Z1:NZ`
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0,0,0")]
        motion: String,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Values as JSON or comma-separated numbers.
    #[arg(allow_hyphen_values = true)]
    pub values: Vec<String>,
    /// File of JSON lines, `-` for stdin.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

pub fn cmd_compose<T: Scalar>(motions: &[GalileanMotion<T>]) -> CliResult<GalileanMotion<T>> {
    let (first, rest) = motions.split_first().ok_or(CliError::EmptyInput)?;
    Ok(rest.iter().fold(first.clone(), |acc, m| acc.compose(m)))
}

pub fn cmd_act<T: Scalar>(
    m: &GalileanMotion<T>,
    points: &[GalileanPoint<T>],
    rep: RepId,
) -> CliResult<Vec<GalileanPoint<T>>> {
    Ok(points.iter().map(|p| act_via_rep(m, p, rep)).collect::<Result<_, _>>()?)
}

pub fn cmd_convert<T: Scalar>(e: &RepElement<T>, target: RepId) -> CliResult<RepElement<T>> {
    Ok(to_rep(&check_rep(e)?, target))
}

pub fn cmd_verify<T: RandomScalar>(seed: u64, trials: usize, fault: bool) -> CliResult<Report> {
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    Ok(verify::run::<T>(seed, trials, fault))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub y: Axis,
    pub z: Axis,
}

impl GridSpec {
    pub fn parse(spec: &str) -> CliResult<Self> {
        let bad = || CliError::BadGridSpec(spec.to_string());
        let axis = |s: &str| -> CliResult<Axis> {
            let parts: Vec<&str> = s.split(':').map(str::trim).collect();
            let [a, b, n] = parts.as_slice() else { return Err(bad()) };
            let start: f64 = a.parse().map_err(|_| bad())?;
            let stop: f64 = b.parse().map_err(|_| bad())?;
            let count: usize = n.parse().map_err(|_| bad())?;
            if !start.is_finite() || !stop.is_finite() || count == 0 {
                return Err(bad());
            }
            Ok(Axis { start, stop, count })
        };
        let (y, z) = spec.split_once(',').ok_or_else(bad)?;
        Ok(Self { y: axis(y)?, z: axis(z)? })
    }

    /// Row-major over y, then z. Coordinates are parsed from their decimal text so
    /// rational mode stays exact.
    pub fn points<T: Scalar>(&self) -> CliResult<Vec<SpherePoint<T>>> {
        let ys = axis_values::<T>(&self.y)?;
        let zs = axis_values::<T>(&self.z)?;
        Ok(ys.iter().flat_map(|y| zs.iter().map(move |z| SpherePoint::new(y.clone(), z.clone()))).collect())
    }
}

fn axis_values<T: Scalar>(a: &Axis) -> CliResult<Vec<T>> {
    let conv = |x: f64| {
        T::parse_str(&x.to_string()).ok_or_else(|| CliError::BadGridSpec(format!("{x}")))
    };
    let (start, stop) = (conv(a.start)?, conv(a.stop)?);
    if a.count == 1 {
        return Ok(vec![start]);
    }
    let steps = T::from_i64(a.count as i64 - 1);
    Ok((0..a.count)
        .map(|k| start.clone() + (stop.clone() - start.clone()) * T::from_i64(k as i64) / steps.clone())
        .collect())
}

pub fn cmd_project<T: Scalar>(grid: &GridSpec, m: &GalileanMotion<T>) -> CliResult<Vec<ProjectionRow<T>>> {
    Ok(emit_projection_figure(&grid.points()?, m)?)
}

/// Parses one input value: JSON, or comma-separated numbers for the array form.
pub fn parse_value(text: &str) -> CliResult<Value> {
    let text = text.trim();
    if let Ok(v) = serde_json::from_str::<Value>(text) {
        if v.is_object() || v.is_array() {
            return Ok(v);
        }
    }
    let items: Vec<Value> = text
        .split(',')
        .map(|s| {
            let s = s.trim();
            serde_json::from_str::<Value>(s)
                .ok()
                .filter(Value::is_number)
                .unwrap_or_else(|| Value::String(s.to_string()))
        })
        .collect();
    if items.iter().any(|v| v.as_str() == Some("")) {
        return Err(CliError::Usage(format!("cannot parse `{text}`")));
    }
    Ok(Value::Array(items))
}

fn parse_as<V: JsonCodec>(text: &str) -> CliResult<V> {
    Ok(V::from_json(&parse_value(text)?)?)
}

fn read_lines(path: &PathBuf, stdin: &mut dyn Read) -> CliResult<Vec<String>> {
    let reader: Box<dyn BufRead + '_> = if path.as_os_str() == "-" {
        Box::new(BufReader::new(stdin))
    } else {
        Box::new(BufReader::new(File::open(path)?))
    };
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(line);
        }
    }
    Ok(out)
}

fn gather(input: &InputArgs, stdin: &mut dyn Read) -> CliResult<Vec<String>> {
    let mut values = input.values.clone();
    if let Some(path) = &input.input {
        values.extend(read_lines(path, stdin)?);
    }
    Ok(values)
}

fn parse_all<V: JsonCodec>(input: &InputArgs, stdin: &mut dyn Read) -> CliResult<Vec<V>> {
    gather(input, stdin)?.iter().map(|s| parse_as(s)).collect()
}

/// A representation element, or a bare motion taken in canonical parameters.
fn parse_element<T: Scalar>(text: &str) -> CliResult<RepElement<T>> {
    let v = parse_value(text)?;
    if v.get("rep").is_some() {
        Ok(RepElement::from_json(&v)?)
    } else {
        Ok(to_rep(&GalileanMotion::from_json(&v)?, RepId::Std3x3))
    }
}

fn write_json_lines<V: JsonCodec>(out: &mut dyn Write, items: &[V]) -> CliResult<()> {
    for item in items {
        writeln!(out, "{}", item.to_json())?;
    }
    Ok(())
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::Writer::from_writer(out)
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(io::Error::other(e))
}

fn write_element_csv<T: Scalar>(out: &mut dyn Write, items: &[RepElement<T>]) -> CliResult<()> {
    let mut w = csv_writer(out);
    w.write_record(["index", "rep", "row", "col", "a0", "a1", "a2", "a3"]).map_err(csv_err)?;
    for (k, e) in items.iter().enumerate() {
        let cells: Vec<(String, String, [T; 4])> = match e.payload() {
            RepPayload::Matrix(m) => (0..m.dim())
                .flat_map(|i| (0..m.dim()).map(move |j| (i, j)))
                .map(|(i, j)| (i.to_string(), j.to_string(), m.get(i, j).coeffs()))
                .collect(),
            RepPayload::Grassmann(q) => vec![(String::new(), String::new(), q.coeffs())],
        };
        for (i, j, c) in cells {
            let mut rec = vec![k.to_string(), e.rep().name().to_string(), i, j];
            rec.extend(c.iter().map(ToString::to_string));
            w.write_record(rec).map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn run_typed<T: RandomScalar>(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> CliResult<i32> {
    let csv = cli.output == Some(OutputFormat::Csv);
    match &cli.command {
        Command::Compose(input) => {
            let m = cmd_compose(&parse_all::<GalileanMotion<T>>(input, stdin)?)?;
            if csv {
                let mut w = csv_writer(out);
                w.write_record(["a", "b", "theta"]).map_err(csv_err)?;
                w.write_record([m.a.to_string(), m.b.to_string(), m.theta.to_string()]).map_err(csv_err)?;
                w.flush()?;
            } else {
                write_json_lines(out, &[m])?;
            }
        }
        Command::Act { rep, motion, input } => {
            let m: GalileanMotion<T> = parse_as(motion)?;
            let points = cmd_act(&m, &parse_all::<GalileanPoint<T>>(input, stdin)?, *rep)?;
            if csv {
                let mut w = csv_writer(out);
                w.write_record(["x", "y"]).map_err(csv_err)?;
                for p in &points {
                    w.write_record([p.x.to_string(), p.y.to_string()]).map_err(csv_err)?;
                }
                w.flush()?;
            } else {
                write_json_lines(out, &points)?;
            }
        }
        Command::Convert { rep, input } => {
            let converted = gather(input, stdin)?
                .iter()
                .map(|s| cmd_convert(&parse_element::<T>(s)?, *rep))
                .collect::<CliResult<Vec<_>>>()?;
            if csv {
                write_element_csv(out, &converted)?;
            } else {
                write_json_lines(out, &converted)?;
            }
        }
        Command::Verify { seed, trials, inject_fault } => {
            let report = cmd_verify::<T>(*seed, *trials, *inject_fault)?;
            if csv {
                let mut w = csv_writer(out);
                w.write_record(verify::CSV_HEADER).map_err(csv_err)?;
                for row in report.csv_rows() {
                    w.write_record(row).map_err(csv_err)?;
                }
                w.flush()?;
            } else {
                writeln!(out, "{}", report.to_json())?;
            }
            return Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED });
        }
        Command::Project { grid, motion } => {
            let grid = GridSpec::parse(grid)?;
            let m: GalileanMotion<T> = parse_as(motion)?;
            let rows = cmd_project(&grid, &m)?;
            if cli.output == Some(OutputFormat::Json) {
                write_json_lines(out, &rows)?;
            } else {
                write_projection_csv(&rows, &mut *out)?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Runs a parsed command line; returns the process exit code.
pub fn run(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.scalar {
        ScalarKind::Rational => run_typed::<Rational>(cli, stdin, out),
        ScalarKind::Float => run_typed::<f64>(cli, stdin, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run_args<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdin, out, err),
        Err(e) => {
            let _ = write!(err, "{e}");
            if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            }
        }
    }
}
