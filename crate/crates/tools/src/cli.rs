//! Command-line driver.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage error,
//! 3 I/O or file-format error, 4 arithmetic overflow or internal
//! consistency failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_traits::CheckedMul;
use cyclo5::verify::{verify_snapshot, Check};
use cyclo5::{stats, Rational, Snapshot, Window};
use thiserror::Error;

use crate::io::{read_snapshot, write_snapshot, Format, FormatError, TOOL, VERSION};
use crate::json::{reports_to_json, stats_to_json};
use crate::parallel::{analyze_parallel, enumerate_parallel};
use crate::render::{render_svg, RenderOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_ARITHMETIC: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "cyclo5", version, about = "Enumerate, analyse, verify and draw the cut-and-project set {z in Z[zeta5] : |sigma(z)| <= r}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the points of S inside the disc of radius R.
    Generate(SnapshotArgs),
    /// Like generate, with nearest-neighbour classes filled in.
    Analyze(SnapshotArgs),
    /// Run the exact checks and print JSON reports.
    Verify(VerifyArgs),
    /// Print point counts, class counts and density as JSON.
    Stats(RegionArgs),
    /// Draw the points as SVG.
    Render(RenderArgs),
}

#[derive(Args, Debug)]
struct RegionArgs {
    /// Physical radius R (exact rational or decimal, e.g. 5, 5/2, 2.5).
    #[arg(long, group = "source", allow_hyphen_values = true)]
    radius: Option<String>,
    /// Squared physical radius R², given directly.
    #[arg(long, group = "source", allow_hyphen_values = true)]
    radius_sq: Option<String>,
    /// Read the snapshot from a file written by `generate`/`analyze`.
    #[arg(long, group = "source")]
    input: Option<PathBuf>,
    /// Squared radius w of the internal window.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    window_sq: String,
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SnapshotArgs {
    #[command(flatten)]
    region: RegionArgs,
    #[arg(long, default_value = "jsonl")]
    format: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    region: RegionArgs,
    /// all, separation, rotation, unit-lemma, two-distance, step-existence
    #[arg(long, default_value = "all")]
    check: String,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[command(flatten)]
    region: RegionArgs,
    /// Ring the origin and the fifth roots of unity.
    #[arg(long)]
    highlight_roots: bool,
    /// Colour points by nearest-neighbour class.
    #[arg(long)]
    color_classes: bool,
    #[arg(long, default_value_t = 1000)]
    canvas: u32,
    #[arg(long, default_value_t = 3.0)]
    dot_radius: f64,
    #[arg(long, default_value_t = 10.0)]
    highlight_radius: f64,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Arithmetic(#[from] cyclo5::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        use cyclo5::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Format(FormatError::UnsupportedFormat(_)) => EXIT_USAGE,
            CliError::Format(FormatError::Arithmetic(E::Overflow(_) | E::Inconsistent(_))) => {
                EXIT_ARITHMETIC
            }
            CliError::Format(_) => EXIT_IO,
            CliError::Arithmetic(E::Overflow(_) | E::Inconsistent(_) | E::NoNeighbour(_)) => {
                EXIT_ARITHMETIC
            }
            CliError::Arithmetic(_) => EXIT_USAGE,
        }
    }
}

/// Parses `7`, `-3`, `5/4` or `2.25` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let bad = || format!("not a rational number: `{s}`");
    if s.contains('/') {
        let (n, d) = s.split_once('/').ok_or_else(bad)?;
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 18 {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_abs: i64 = int.trim_start_matches(['-', '+']).parse().or_else(|_| {
            if int.trim_start_matches(['-', '+']).is_empty() { Ok(0) } else { Err(bad()) }
        })?;
        let scale = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let frac: i64 = frac.parse().map_err(|_| bad())?;
        let mag = int_abs
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(bad)?;
        return Ok(Rational::new(if negative { -mag } else { mag }, scale));
    }
    s.parse::<i64>().map(Rational::from_integer).map_err(|_| bad())
}

struct Region {
    radius_sq: Option<Rational>,
    window: Window,
}

impl RegionArgs {
    fn resolve(&self) -> Result<Region, CliError> {
        let window_sq = parse_rational(&self.window_sq).map_err(CliError::Usage)?;
        let window = Window::new(window_sq)
            .map_err(|_| CliError::Usage("--window-sq must be positive".into()))?;
        let radius_sq = match (&self.radius, &self.radius_sq, &self.input) {
            (Some(r), None, None) => {
                let r = parse_rational(r).map_err(CliError::Usage)?;
                if r < Rational::from_integer(0) {
                    return Err(CliError::Usage("--radius must be non-negative".into()));
                }
                Some(r.checked_mul(&r).ok_or(cyclo5::Error::Overflow("radius squared"))?)
            }
            (None, Some(r2), None) => {
                let r2 = parse_rational(r2).map_err(CliError::Usage)?;
                if r2 < Rational::from_integer(0) {
                    return Err(CliError::Usage("--radius-sq must be non-negative".into()));
                }
                Some(r2)
            }
            (None, None, Some(_)) => None,
            _ => {
                return Err(CliError::Usage(
                    "give exactly one of --radius, --radius-sq or --input".into(),
                ))
            }
        };
        Ok(Region { radius_sq, window })
    }

    fn threads(&self) -> usize {
        self.threads.max(1)
    }

    /// Enumerates, or loads `--input`.
    fn snapshot(&self) -> Result<Snapshot, CliError> {
        let region = self.resolve()?;
        match (region.radius_sq, &self.input) {
            (Some(r2), _) => Ok(enumerate_parallel(r2, region.window, self.threads())?),
            (None, Some(path)) => {
                let file = File::open(path)?;
                Ok(read_snapshot(BufReader::new(file))?)
            }
            (None, None) => unreachable!("resolve() guarantees a source"),
        }
    }

    fn analyzed(&self) -> Result<Snapshot, CliError> {
        let mut snap = self.snapshot()?;
        analyze_parallel(&mut snap, self.threads())?;
        Ok(snap)
    }

    fn sink<'a>(&self, stdout: &'a mut dyn Write) -> Result<Box<dyn Write + 'a>, CliError> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(stdout),
        })
    }
}

fn describe(name: &str, snap: &Snapshot, threads: usize) -> String {
    format!(
        "{TOOL} {VERSION}: {name} radius_sq={} window_sq={} threads={threads} points={}",
        snap.radius_sq,
        snap.window.radius_sq(),
        snap.len()
    )
}

fn parse_checks(s: &str) -> Result<Vec<Check>, CliError> {
    if s == "all" {
        return Ok(Check::ALL.to_vec());
    }
    s.split(',')
        .map(|name| {
            name.trim()
                .parse::<Check>()
                .map_err(|_| CliError::Usage(format!("unknown check `{name}`")))
        })
        .collect()
}

fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Generate(args) => {
            let format: Format = args.format.parse()?;
            let snap = args.region.snapshot()?;
            writeln!(stderr, "{}", describe("generate", &snap, args.region.threads()))?;
            write_snapshot(&snap, format, args.region.sink(stdout)?)?;
            Ok(EXIT_OK)
        }
        Command::Analyze(args) => {
            let format: Format = args.format.parse()?;
            let snap = args.region.analyzed()?;
            let c = cyclo5::ClassCounts::of(&snap);
            writeln!(
                stderr,
                "{} short={} long={} other={} unknown={}",
                describe("analyze", &snap, args.region.threads()),
                c.short,
                c.long,
                c.other,
                c.unknown
            )?;
            write_snapshot(&snap, format, args.region.sink(stdout)?)?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let checks = parse_checks(&args.check)?;
            let snap = args.region.analyzed()?;
            writeln!(stderr, "{}", describe("verify", &snap, args.region.threads()))?;
            let reports = verify_snapshot(&snap, &checks)?;
            let doc = reports_to_json(snap.radius_sq, snap.window.radius_sq(), &reports);
            let mut out = args.region.sink(stdout)?;
            serde_json::to_writer_pretty(&mut out, &doc).map_err(io::Error::from)?;
            writeln!(out)?;
            out.flush()?;
            Ok(if cyclo5::verify::all_pass(&reports) { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Stats(region) => {
            let snap = region.analyzed()?;
            writeln!(stderr, "{}", describe("stats", &snap, region.threads()))?;
            let doc = stats_to_json(snap.radius_sq, snap.window.radius_sq(), &stats(&snap));
            let mut out = region.sink(stdout)?;
            serde_json::to_writer_pretty(&mut out, &doc).map_err(io::Error::from)?;
            writeln!(out)?;
            out.flush()?;
            Ok(EXIT_OK)
        }
        Command::Render(args) => {
            let snap = if args.color_classes {
                args.region.analyzed()?
            } else {
                args.region.snapshot()?
            };
            writeln!(stderr, "{}", describe("render", &snap, args.region.threads()))?;
            let opts = RenderOptions {
                canvas: args.canvas,
                dot_radius: args.dot_radius,
                highlight_radius: args.highlight_radius,
                highlight_roots: args.highlight_roots,
                color_classes: args.color_classes,
            };
            let mut out = args.region.sink(stdout)?;
            out.write_all(render_svg(&snap, &opts).as_bytes())?;
            out.flush()?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// process exit code.
pub fn run_cli<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{}", e.render());
                EXIT_OK
            };
        }
    };
    match run(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "{TOOL}: error: {e}");
            e.exit_code()
        }
    }
}
