//! Complete enumeration of S_w inside a physical disc.
//!
//! Both routes rely on Q(a) = |z|² + |σ(z)|² ≤ R² + w for every wanted
//! point, where Q(a) = (5·Σaᵢ² − (Σaᵢ)²)/2 has Gram matrix (5I − J)/2.
//! Candidates passing that bound are then filtered with the two exact
//! disc tests.
//!
//! The naive route scans the box ‖a‖∞ ≤ ⌊√(2B)⌋, valid because the
//! smallest eigenvalue of the Gram matrix is 1/2. The layered route fixes
//! coordinates from a3 down to a0 and prunes with the exact minimum of Q
//! over the still-free coordinates: with m coordinates fixed, summing to
//! T1 with squares summing to T2, that minimum is (5/2)(T2 − T1²/(m+1)).

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::RangeInclusive;

use num_traits::CheckedAdd;

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::golden::Rational;
use crate::modelset::{sort_canonical, PointRecord, Snapshot, Window};

/// Layered enumeration of `{z : |z|² ≤ radius_sq, |σ(z)|² ≤ w}`.
pub fn enumerate(radius_sq: Rational, window: Window) -> Result<Snapshot> {
    Enumerator::new(radius_sq, window)?.run()
}

/// Box-scan enumeration; slow, used as the reference for [`enumerate`].
pub fn enumerate_naive(radius_sq: Rational, window: Window) -> Result<Snapshot> {
    let en = Enumerator::new(radius_sq, window)?;
    let m = isqrt(2 * en.bound as i128) as i64;
    let mut points = Vec::new();
    for a3 in -m..=m {
        for a2 in -m..=m {
            for a1 in -m..=m {
                for a0 in -m..=m {
                    let z = CycInt::new(a0, a1, a2, a3);
                    if z.trace_form()? <= en.bound {
                        en.push_if_member(z, &mut points)?;
                    }
                }
            }
        }
    }
    Ok(en.finish(points))
}

/// Enumeration split into independent slabs by the value of a3, so that
/// callers can farm the slabs out to worker threads.
#[derive(Clone, Debug)]
pub struct Enumerator {
    radius_sq: Rational,
    window: Window,
    /// ⌊R² + w⌋, the bound on the integer-valued trace form.
    bound: i64,
}

impl Enumerator {
    pub fn new(radius_sq: Rational, window: Window) -> Result<Self> {
        if radius_sq < Rational::from_integer(0) {
            return Err(Error::NegativeRadius);
        }
        let total = radius_sq
            .checked_add(&window.radius_sq())
            .ok_or(Error::Overflow("enumeration bound"))?;
        let bound = total.floor().to_integer();
        // Keep every intermediate of the layered search well inside i128 and
        // all coordinates inside i32.
        if bound > (1i64 << 60) {
            return Err(Error::Overflow("enumeration bound"));
        }
        Ok(Self { radius_sq, window, bound })
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Values of a3 that can occur.
    pub fn outer_range(&self) -> RangeInclusive<i64> {
        let (lo, hi) = coordinate_range(0, 0, 0, self.bound).unwrap_or((1, 0));
        lo as i64..=hi as i64
    }

    /// All members with the given a3, in no particular order.
    pub fn slab(&self, a3: i64) -> Result<Vec<PointRecord>> {
        let mut out = Vec::new();
        let b = self.bound;
        let (t1, t2) = (a3 as i128, (a3 as i128) * (a3 as i128));
        let Some((lo2, hi2)) = coordinate_range(1, t1, t2, b) else {
            return Ok(out);
        };
        for a2 in lo2..=hi2 {
            let (t1, t2) = (t1 + a2, t2 + a2 * a2);
            let Some((lo1, hi1)) = coordinate_range(2, t1, t2, b) else {
                continue;
            };
            for a1 in lo1..=hi1 {
                let (t1, t2) = (t1 + a1, t2 + a1 * a1);
                let Some((lo0, hi0)) = coordinate_range(3, t1, t2, b) else {
                    continue;
                };
                for a0 in lo0..=hi0 {
                    let z = CycInt::new(a0 as i64, a1 as i64, a2 as i64, a3);
                    self.push_if_member(z, &mut out)?;
                }
            }
        }
        Ok(out)
    }

    pub fn run(&self) -> Result<Snapshot> {
        let mut points = Vec::new();
        for a3 in self.outer_range() {
            points.extend(self.slab(a3)?);
        }
        Ok(self.finish(points))
    }

    /// Wraps merged slab output into a canonically ordered snapshot.
    pub fn finish(&self, mut points: Vec<PointRecord>) -> Snapshot {
        sort_canonical(&mut points);
        Snapshot { window: self.window, radius_sq: self.radius_sq, points }
    }

    fn push_if_member(&self, z: CycInt, out: &mut Vec<PointRecord>) -> Result<()> {
        let rec = PointRecord::new(z)?;
        if rec.abs_sq_internal.cmp_rational(&self.window.radius_sq()) != Ordering::Greater
            && rec.abs_sq_physical.cmp_rational(&self.radius_sq) != Ordering::Greater
        {
            out.push(rec);
        }
        Ok(())
    }
}

/// Integer values y of the next coordinate such that, with `fixed`
/// coordinates already chosen (sum `t1`, sum of squares `t2`), some real
/// completion of the free coordinates still has Q ≤ `bound`.
///
/// The condition is 5(m+1)y² − 10·t1·y + 5((m+2)t2 − t1²) − 2B(m+2) ≤ 0
/// with m = `fixed`; the float-free root estimate is corrected exactly.
fn coordinate_range(fixed: i128, t1: i128, t2: i128, bound: i64) -> Option<(i128, i128)> {
    let twice_bound = 2 * bound as i128;
    let qa = 5 * (fixed + 1);
    let qb = -10 * t1;
    let qc = 5 * ((fixed + 2) * t2 - t1 * t1) - twice_bound * (fixed + 2);
    let fits = |y: i128| qa * y * y + qb * y + qc <= 0;
    let disc = qb * qb - 4 * qa * qc;
    if disc < 0 {
        return None;
    }
    let s = isqrt(disc);
    let mut lo = (-qb - s).div_euclid(2 * qa);
    let mut hi = (-qb + s).div_euclid(2 * qa) + 1;
    while fits(lo - 1) {
        lo -= 1;
    }
    while lo <= hi && !fits(lo) {
        lo += 1;
    }
    while fits(hi + 1) {
        hi += 1;
    }
    while hi >= lo && !fits(hi) {
        hi -= 1;
    }
    (lo <= hi).then_some((lo, hi))
}

fn isqrt(v: i128) -> i128 {
    if v <= 0 {
        0
    } else {
        v.isqrt()
    }
}
