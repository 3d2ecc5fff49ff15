//! Exact checks of the structural properties of S over a snapshot.
//!
//! Every accept/reject decision is made in exact arithmetic. Floats never
//! enter a verdict.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::cyclotomic::{CycInt, Embedding};
use crate::enumerate::enumerate;
use crate::error::{Error, Result};
use crate::golden::{GoldenInt, Rational};
use crate::modelset::{DistClass, Snapshot, Window};
use crate::neighbors::{analyze, is_inner};

/// At most this many violations are stored per report; the rest are only
/// counted.
pub const MAX_STORED_VIOLATIONS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Check {
    Separation,
    Rotation,
    UnitLemma,
    TwoDistance,
    StepExistence,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Separation,
        Check::Rotation,
        Check::UnitLemma,
        Check::TwoDistance,
        Check::StepExistence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Separation => "separation",
            Check::Rotation => "rotation",
            Check::UnitLemma => "unit-lemma",
            Check::TwoDistance => "two-distance",
            Check::StepExistence => "step-existence",
        }
    }

    /// Checks whose statement is specific to the unit window.
    pub fn needs_unit_window(self) -> bool {
        matches!(self, Check::UnitLemma | Check::TwoDistance | Check::StepExistence)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = ();
    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

/// Typed annotation attached to a report.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Detail {
    Golden(GoldenInt),
    Rational(Rational),
    Bool(bool),
    Count(u64),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub points: Vec<CycInt>,
    pub message: String,
    pub value: Option<GoldenInt>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub check: Check,
    pub outcome: Outcome,
    pub tested_count: u64,
    /// Total number of violations found, including unstored ones.
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    pub radius_sq: Rational,
    pub window_sq: Rational,
    pub details: Vec<(&'static str, Detail)>,
}

impl VerificationReport {
    fn new(check: Check, snapshot: &Snapshot) -> Self {
        Self {
            check,
            outcome: Outcome::Pass,
            tested_count: 0,
            violation_count: 0,
            violations: Vec::new(),
            radius_sq: snapshot.radius_sq,
            window_sq: snapshot.window.radius_sq(),
            details: Vec::new(),
        }
    }

    /// A report for a check that does not apply to the given window.
    pub fn skipped(check: Check, radius_sq: Rational, window: Window) -> Self {
        Self {
            check,
            outcome: Outcome::Skipped,
            tested_count: 0,
            violation_count: 0,
            violations: Vec::new(),
            radius_sq,
            window_sq: window.radius_sq(),
            details: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn detail(&self, key: &str) -> Option<&Detail> {
        self.details.iter().find(|(k, _)| *k == key).map(|(_, d)| d)
    }

    fn violate(&mut self, points: Vec<CycInt>, message: String, value: Option<GoldenInt>) {
        self.violation_count += 1;
        self.outcome = Outcome::Fail;
        if self.violations.len() < MAX_STORED_VIOLATIONS {
            self.violations.push(Violation { points, message, value });
        }
    }
}

fn require_unit(snapshot: &Snapshot, check: Check) -> Result<()> {
    if snapshot.window.is_unit() {
        Ok(())
    } else {
        Err(Error::WindowNotUnit(check.name()))
    }
}

fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Uniform discreteness: every pair is at squared distance at least
/// 1/(16w), and the report also records whether the sharper 1/(4w) that
/// the norm argument yields holds.
pub fn verify_separation(snapshot: &Snapshot) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Check::Separation, snapshot);
    let diam_sq = snapshot.window.diam_sq();
    let stated = (diam_sq * 4).recip();
    let sharp = diam_sq.recip();
    let mut min_sq: Option<GoldenInt> = None;
    let mut sharp_holds = true;
    let pts = &snapshot.points;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let d = a.z.checked_sub(b.z)?.abs_sq(Embedding::Physical)?;
            if min_sq.is_none_or(|m| d < m) {
                min_sq = Some(d);
            }
            if d.cmp_rational(&stated) == Ordering::Less {
                report.violate(
                    alloc::vec![a.z, b.z],
                    format!("squared distance {d} below {stated}"),
                    Some(d),
                );
            }
            if d.cmp_rational(&sharp) == Ordering::Less {
                sharp_holds = false;
            }
        }
    }
    report.tested_count = pair_count(pts.len());
    report.details.push(("stated_bound_sq", Detail::Rational(stated)));
    report.details.push(("norm_bound_sq", Detail::Rational(sharp)));
    report.details.push(("norm_bound_holds", Detail::Bool(sharp_holds)));
    if let Some(m) = min_sq {
        report.details.push(("observed_min_sq", Detail::Golden(m)));
    }
    Ok(report)
}

/// Five-fold (in fact ten-fold) symmetry: μz is in the snapshot for every
/// point z and every tenth root of unity μ.
pub fn verify_rotation(snapshot: &Snapshot) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Check::Rotation, snapshot);
    let members: BTreeSet<CycInt> = snapshot.points.iter().map(|p| p.z).collect();
    let roots = CycInt::tenth_roots();
    for p in &snapshot.points {
        for mu in roots {
            let image = p.z.checked_mul(mu)?;
            if !members.contains(&image) {
                report.violate(
                    alloc::vec![p.z, mu],
                    format!("rotation of {} by {} is missing", p.z, mu),
                    None,
                );
            }
        }
    }
    report.tested_count = (snapshot.points.len() * roots.len()) as u64;
    Ok(report)
}

/// For every pair with |Δ|² < 5/4 the difference is a unit, and no
/// difference has norm 2, 3 or 4.
pub fn verify_unit_lemma(snapshot: &Snapshot) -> Result<VerificationReport> {
    require_unit(snapshot, Check::UnitLemma)?;
    let mut report = VerificationReport::new(Check::UnitLemma, snapshot);
    let close = Rational::new(5, 4);
    let mut close_pairs = 0u64;
    let mut unit_pairs = 0u64;
    let mut min_non_unit_norm: Option<i64> = None;
    let pts = &snapshot.points;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let delta = a.z.checked_sub(b.z)?;
            let norm = delta.field_norm()?;
            let d = delta.abs_sq(Embedding::Physical)?;
            if norm == 1 {
                unit_pairs += 1;
            } else if min_non_unit_norm.is_none_or(|m| norm < m) {
                min_non_unit_norm = Some(norm);
            }
            if d.cmp_rational(&close) == Ordering::Less {
                close_pairs += 1;
                if norm != 1 {
                    report.violate(
                        alloc::vec![a.z, b.z],
                        format!("|Δ|² = {d} < 5/4 but N(Δ) = {norm}"),
                        Some(d),
                    );
                }
            }
            if (2..=4).contains(&norm) {
                report.violate(
                    alloc::vec![a.z, b.z],
                    format!("difference has norm {norm}"),
                    Some(d),
                );
            }
        }
    }
    report.tested_count = pair_count(pts.len());
    report.details.push(("close_pairs", Detail::Count(close_pairs)));
    report.details.push(("unit_pairs", Detail::Count(unit_pairs)));
    if let Some(m) = min_non_unit_norm {
        report.details.push(("min_non_unit_norm", Detail::Count(m as u64)));
    }
    Ok(report)
}

/// Every inner point of an analysed snapshot has nearest-neighbour squared
/// distance exactly 2 − φ or 1, and once R ≥ 2 both values occur.
pub fn verify_two_distance(snapshot: &Snapshot) -> Result<VerificationReport> {
    require_unit(snapshot, Check::TwoDistance)?;
    let mut report = VerificationReport::new(Check::TwoDistance, snapshot);
    let (mut short, mut long, mut inner) = (0u64, 0u64, 0u64);
    for p in &snapshot.points {
        if !is_inner(p.abs_sq_physical, snapshot.radius_sq)? {
            continue;
        }
        inner += 1;
        match (p.dist_class, p.min_dist_sq) {
            (DistClass::Short, Some(GoldenInt::SHORT_SQ)) => short += 1,
            (DistClass::Long, Some(GoldenInt::LONG_SQ)) => long += 1,
            (DistClass::Unknown, None) => report.violate(
                alloc::vec![p.z],
                String::from("inner point was not classified"),
                None,
            ),
            (class, d) => report.violate(
                alloc::vec![p.z],
                match d {
                    Some(d) => format!("class {class}, nearest squared distance {d}"),
                    None => format!("class {class} without a distance"),
                },
                d,
            ),
        }
    }
    if snapshot.radius_sq >= Rational::from_integer(4) {
        if short == 0 {
            report.violate(Vec::new(), String::from("no point of class short"), None);
        }
        if long == 0 {
            report.violate(Vec::new(), String::from("no point of class long"), None);
        }
    }
    report.tested_count = inner;
    report.details.push(("short", Detail::Count(short)));
    report.details.push(("long", Detail::Count(long)));
    Ok(report)
}

/// Each point has a step z + μ, μ a tenth root of unity, that stays in S.
/// Membership of z + μ is tested directly, so boundary points of the
/// snapshot are covered too.
pub fn verify_step_existence(snapshot: &Snapshot) -> Result<VerificationReport> {
    require_unit(snapshot, Check::StepExistence)?;
    let mut report = VerificationReport::new(Check::StepExistence, snapshot);
    let roots = CycInt::tenth_roots();
    for p in &snapshot.points {
        let mut found = false;
        for mu in roots {
            if snapshot.window.contains(p.z.checked_add(mu)?)? {
                found = true;
                break;
            }
        }
        if !found {
            report.violate(
                alloc::vec![p.z],
                format!("no tenth-root step from {} stays in S", p.z),
                None,
            );
        }
    }
    report.tested_count = snapshot.points.len() as u64;
    Ok(report)
}

pub fn run_check(check: Check, snapshot: &Snapshot) -> Result<VerificationReport> {
    match check {
        Check::Separation => verify_separation(snapshot),
        Check::Rotation => verify_rotation(snapshot),
        Check::UnitLemma => verify_unit_lemma(snapshot),
        Check::TwoDistance => verify_two_distance(snapshot),
        Check::StepExistence => verify_step_existence(snapshot),
    }
}

/// Runs the selected checks on an analysed snapshot; unit-window checks
/// are reported as skipped for other windows.
pub fn verify_snapshot(snapshot: &Snapshot, checks: &[Check]) -> Result<Vec<VerificationReport>> {
    checks
        .iter()
        .map(|&c| {
            if c.needs_unit_window() && !snapshot.window.is_unit() {
                Ok(VerificationReport::skipped(c, snapshot.radius_sq, snapshot.window))
            } else {
                run_check(c, snapshot)
            }
        })
        .collect()
}

/// Enumerates, analyses, and runs every check.
pub fn verify_all(radius_sq: Rational, window: Window) -> Result<Vec<VerificationReport>> {
    let mut snapshot = enumerate(radius_sq, window)?;
    analyze(&mut snapshot)?;
    verify_snapshot(&snapshot, &Check::ALL)
}

/// True when no report failed (skipped ones do not count against).
pub fn all_pass(reports: &[VerificationReport]) -> bool {
    reports.iter().all(|r| r.outcome != Outcome::Fail)
}
