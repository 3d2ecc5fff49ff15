//! The point set S_w = {z ∈ Z[ζ] : |σ(z)|² ≤ w} and finite views of it.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::cyclotomic::{CycInt, Embedding};
use crate::error::{Error, Result};
use crate::golden::{GoldenInt, Rational};

/// Closed disc `|u|² ≤ w` in the internal embedding.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Window {
    w: Rational,
}

impl Window {
    pub fn new(w: Rational) -> Result<Self> {
        if w <= Rational::from_integer(0) {
            return Err(Error::NonPositiveWindow);
        }
        Ok(Self { w })
    }

    /// The closed unit disc.
    pub fn unit() -> Self {
        Self { w: Rational::from_integer(1) }
    }

    pub fn radius_sq(&self) -> Rational {
        self.w
    }

    pub fn is_unit(&self) -> bool {
        self.w == Rational::from_integer(1)
    }

    /// Squared diameter, 4w.
    pub fn diam_sq(&self) -> Rational {
        self.w * 4
    }

    /// Exact membership; the boundary circle is included.
    pub fn contains(&self, z: CycInt) -> Result<bool> {
        Ok(z.abs_sq(Embedding::Internal)?.cmp_rational(&self.w) != Ordering::Greater)
    }
}

impl Default for Window {
    fn default() -> Self {
        Self::unit()
    }
}

/// Nearest-neighbour class of a point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum DistClass {
    /// Squared distance 2 − φ.
    Short,
    /// Squared distance 1.
    Long,
    /// Any other value; never produced when the two-distance property holds.
    Other,
    /// Not classified, e.g. too close to the edge of the snapshot.
    Unknown,
}

impl DistClass {
    pub fn as_str(self) -> &'static str {
        match self {
            DistClass::Short => "short",
            DistClass::Long => "long",
            DistClass::Other => "other",
            DistClass::Unknown => "unknown",
        }
    }
}

impl fmt::Display for DistClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DistClass {
    type Err = ();
    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        match s {
            "short" => Ok(DistClass::Short),
            "long" => Ok(DistClass::Long),
            "other" => Ok(DistClass::Other),
            "unknown" => Ok(DistClass::Unknown),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct PointRecord {
    pub z: CycInt,
    pub abs_sq_physical: GoldenInt,
    pub abs_sq_internal: GoldenInt,
    pub x: f64,
    pub y: f64,
    pub min_dist_sq: Option<GoldenInt>,
    pub witness: Option<CycInt>,
    pub dist_class: DistClass,
}

impl PointRecord {
    /// Builds an unclassified record, computing the exact squared moduli
    /// and the float position.
    pub fn new(z: CycInt) -> Result<Self> {
        let pos = z.embed(Embedding::Physical);
        Ok(Self {
            z,
            abs_sq_physical: z.abs_sq(Embedding::Physical)?,
            abs_sq_internal: z.abs_sq(Embedding::Internal)?,
            x: pos.re,
            y: pos.im,
            min_dist_sq: None,
            witness: None,
            dist_class: DistClass::Unknown,
        })
    }
}

/// A finite piece of S_w: every member with `|z|² ≤ radius_sq`.
#[derive(Clone, PartialEq, Debug)]
pub struct Snapshot {
    pub window: Window,
    pub radius_sq: Rational,
    pub points: Vec<PointRecord>,
}

impl Snapshot {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Puts the points in canonical order (Q(a), then lexicographic).
    pub fn sort_canonical(&mut self) {
        sort_canonical(&mut self.points);
    }

    pub fn find(&self, z: CycInt) -> Option<&PointRecord> {
        self.points.iter().find(|p| p.z == z)
    }
}

pub(crate) fn sort_canonical(points: &mut [PointRecord]) {
    points.sort_unstable_by_key(|p| {
        let [a0, a1, a2, a3] = p.z.coords();
        // abs_sq components are bounded by the trace form, which fits i64.
        (p.abs_sq_physical.p + p.abs_sq_internal.p, a0, a1, a2, a3)
    });
}
