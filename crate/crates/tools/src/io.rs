//! Snapshot files: JSON Lines and CSV.
//!
//! Both formats start with a header carrying R², w and the tool version,
//! followed by one record per point in canonical order. Doubles are
//! written with 17 significant digits.
//!
//! JSONL:
//!
//! ```text
//! {"kind":"header","tool":"cyclo5","version":"0.1.0","radius_sq":"25","window_sq":"1"}
//! {"a":[0,0,0,0],"x":0.0000000000000000e0,"y":0.0000000000000000e0,"iabs":[0,0],"class":"long"}
//! ```
//!
//! CSV:
//!
//! ```text
//! #cyclo5,0.1.0,radius_sq=25,window_sq=1
//! a0,a1,a2,a3,x,y,iabs_p,iabs_q,class
//! 0,0,0,0,0.0000000000000000e0,0.0000000000000000e0,0,0,long
//! ```

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use cyclo5::{CycInt, DistClass, GoldenInt, PointRecord, Rational, Snapshot, Window};
use serde::Deserialize;
use thiserror::Error;

pub const TOOL: &str = "cyclo5";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

const CSV_COLUMNS: &str = "a0,a1,a2,a3,x,y,iabs_p,iabs_q,class";
// Stored float positions must agree with the recomputed ones this closely.
const POSITION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: stored {field} does not match the coordinates")]
    Mismatch { line: usize, field: &'static str },
    #[error("unsupported format `{0}`")]
    UnsupportedFormat(String),
    #[error(transparent)]
    Arithmetic(#[from] cyclo5::Error),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Jsonl,
    Csv,
}

impl FromStr for Format {
    type Err = FormatError;
    fn from_str(s: &str) -> Result<Self, FormatError> {
        match s {
            "jsonl" => Ok(Format::Jsonl),
            "csv" => Ok(Format::Csv),
            other => Err(FormatError::UnsupportedFormat(other.to_string())),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Jsonl => "jsonl",
            Format::Csv => "csv",
        })
    }
}

/// 17 significant digits, a valid JSON number.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_snapshot<W: Write>(snapshot: &Snapshot, format: Format, mut out: W) -> Result<(), FormatError> {
    let r2 = snapshot.radius_sq;
    let w = snapshot.window.radius_sq();
    match format {
        Format::Jsonl => {
            writeln!(
                out,
                r#"{{"kind":"header","tool":"{TOOL}","version":"{VERSION}","radius_sq":"{r2}","window_sq":"{w}"}}"#
            )?;
            for p in &snapshot.points {
                let [a0, a1, a2, a3] = p.z.coords();
                writeln!(
                    out,
                    r#"{{"a":[{a0},{a1},{a2},{a3}],"x":{},"y":{},"iabs":[{},{}],"class":"{}"}}"#,
                    fmt_f64(p.x),
                    fmt_f64(p.y),
                    p.abs_sq_internal.p,
                    p.abs_sq_internal.q,
                    p.dist_class
                )?;
            }
        }
        Format::Csv => {
            writeln!(out, "#{TOOL},{VERSION},radius_sq={r2},window_sq={w}")?;
            writeln!(out, "{CSV_COLUMNS}")?;
            for p in &snapshot.points {
                let [a0, a1, a2, a3] = p.z.coords();
                writeln!(
                    out,
                    "{a0},{a1},{a2},{a3},{},{},{},{},{}",
                    fmt_f64(p.x),
                    fmt_f64(p.y),
                    p.abs_sq_internal.p,
                    p.abs_sq_internal.q,
                    p.dist_class
                )?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonHeader {
    kind: String,
    tool: String,
    #[allow(dead_code)]
    version: String,
    radius_sq: String,
    window_sq: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRecord {
    a: [i64; 4],
    x: f64,
    y: f64,
    iabs: [i64; 2],
    class: String,
}

/// One point as stored on disk.
#[derive(Clone, Debug, PartialEq)]
pub struct PointFileRecord {
    pub a: [i64; 4],
    pub x: f64,
    pub y: f64,
    pub iabs: [i64; 2],
    pub class: DistClass,
}

/// Reads either format (detected from the header) and validates every
/// record against values recomputed from its coordinates.
pub fn read_snapshot<R: BufRead>(input: R) -> Result<Snapshot, FormatError> {
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, first) = lines.next().ok_or(FormatError::MissingHeader)?;
    let first = first?;
    let (format, radius_sq, window) = parse_header(&first)?;
    if format == Format::Csv {
        match lines.next() {
            Some((_, Ok(cols))) if cols.trim_end() == CSV_COLUMNS => {}
            Some((line, Ok(_))) => return Err(malformed(line, "unexpected CSV column header")),
            Some((_, Err(e))) => return Err(e.into()),
            None => return Err(FormatError::MissingHeader),
        }
    }
    let mut points = Vec::new();
    for (line, text) in lines {
        let text = text?;
        if text.trim().is_empty() {
            continue;
        }
        let rec = match format {
            Format::Jsonl => parse_json_record(line, &text)?,
            Format::Csv => parse_csv_record(line, &text)?,
        };
        points.push(validate(line, rec, radius_sq, window)?);
    }
    let mut snap = Snapshot { window, radius_sq, points };
    snap.sort_canonical();
    Ok(snap)
}

fn malformed(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Malformed { line, msg: msg.into() }
}

fn parse_ratio(line: usize, s: &str) -> Result<Rational, FormatError> {
    s.parse::<Rational>()
        .map_err(|_| malformed(line, format!("bad rational `{s}`")))
}

fn parse_header(text: &str) -> Result<(Format, Rational, Window), FormatError> {
    let (format, r2, w) = if text.starts_with('{') {
        let h: JsonHeader =
            serde_json::from_str(text).map_err(|e| malformed(1, format!("header: {e}")))?;
        if h.kind != "header" || h.tool != TOOL {
            return Err(FormatError::MissingHeader);
        }
        (Format::Jsonl, h.radius_sq, h.window_sq)
    } else if let Some(rest) = text.strip_prefix(&format!("#{TOOL},")) {
        let mut fields = rest.trim_end().split(',');
        let _version = fields.next();
        let r2 = fields
            .next()
            .and_then(|f| f.strip_prefix("radius_sq="))
            .ok_or_else(|| malformed(1, "header lacks radius_sq"))?;
        let w = fields
            .next()
            .and_then(|f| f.strip_prefix("window_sq="))
            .ok_or_else(|| malformed(1, "header lacks window_sq"))?;
        (Format::Csv, r2.to_string(), w.to_string())
    } else {
        return Err(FormatError::MissingHeader);
    };
    let radius_sq = parse_ratio(1, &r2)?;
    if radius_sq < Rational::from_integer(0) {
        return Err(malformed(1, "negative radius_sq"));
    }
    let window = Window::new(parse_ratio(1, &w)?).map_err(|e| malformed(1, e.to_string()))?;
    Ok((format, radius_sq, window))
}

fn parse_class(line: usize, s: &str) -> Result<DistClass, FormatError> {
    s.parse().map_err(|_| malformed(line, format!("unknown class `{s}`")))
}

fn parse_json_record(line: usize, text: &str) -> Result<PointFileRecord, FormatError> {
    let r: JsonRecord = serde_json::from_str(text).map_err(|e| malformed(line, e.to_string()))?;
    Ok(PointFileRecord { a: r.a, x: r.x, y: r.y, iabs: r.iabs, class: parse_class(line, &r.class)? })
}

fn parse_csv_record(line: usize, text: &str) -> Result<PointFileRecord, FormatError> {
    let fields: Vec<&str> = text.trim_end().split(',').collect();
    if fields.len() != 9 {
        return Err(malformed(line, format!("expected 9 fields, found {}", fields.len())));
    }
    let int = |i: usize| {
        fields[i]
            .parse::<i64>()
            .map_err(|_| malformed(line, format!("bad integer `{}`", fields[i])))
    };
    let float = |i: usize| {
        fields[i]
            .parse::<f64>()
            .map_err(|_| malformed(line, format!("bad number `{}`", fields[i])))
    };
    Ok(PointFileRecord {
        a: [int(0)?, int(1)?, int(2)?, int(3)?],
        x: float(4)?,
        y: float(5)?,
        iabs: [int(6)?, int(7)?],
        class: parse_class(line, fields[8])?,
    })
}

fn validate(
    line: usize,
    rec: PointFileRecord,
    radius_sq: Rational,
    window: Window,
) -> Result<PointRecord, FormatError> {
    let mut p = PointRecord::new(CycInt::from_coords(rec.a))?;
    if p.abs_sq_internal != GoldenInt::new(rec.iabs[0], rec.iabs[1]) {
        return Err(FormatError::Mismatch { line, field: "iabs" });
    }
    if (p.x - rec.x).abs() > POSITION_TOLERANCE || (p.y - rec.y).abs() > POSITION_TOLERANCE {
        return Err(FormatError::Mismatch { line, field: "position" });
    }
    if !window.contains(p.z)? || p.abs_sq_physical.cmp_rational(&radius_sq).is_gt() {
        return Err(FormatError::Mismatch { line, field: "membership" });
    }
    p.x = rec.x;
    p.y = rec.y;
    p.dist_class = rec.class;
    p.min_dist_sq = match rec.class {
        DistClass::Short => Some(GoldenInt::SHORT_SQ),
        DistClass::Long => Some(GoldenInt::LONG_SQ),
        DistClass::Other | DistClass::Unknown => None,
    };
    Ok(p)
}
