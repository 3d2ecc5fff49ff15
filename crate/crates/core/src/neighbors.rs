//! Nearest-neighbour distances in S_w and their classification.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::cyclotomic::{CycInt, Embedding};
use crate::enumerate::enumerate;
use crate::error::{Error, Result};
use crate::golden::{sign_golden, GoldenInt, Rational};
use crate::modelset::{DistClass, Snapshot, Window};

// Reach is quadrupled until a neighbour shows up; past this the window
// would have to be absurdly thin.
const MAX_REACH_SQ: i64 = 1 << 24;

/// All nonzero d with |d|² ≤ `reach_sq` and |σ(d)|² ≤ 4w, sorted by
/// (|d|², d).
///
/// Any two members of S_w differ by such a d once they are within
/// physical distance √reach_sq, because their internal images both lie in
/// a disc of diameter 2√w.
#[derive(Clone, Debug)]
pub struct DisplacementSet {
    reach_sq: i64,
    items: Vec<(GoldenInt, CycInt)>,
}

impl DisplacementSet {
    pub fn new(window: Window, reach_sq: i64) -> Result<Self> {
        let spread = Window::new(window.diam_sq())?;
        let snap = enumerate(Rational::from_integer(reach_sq), spread)?;
        let mut items: Vec<_> = snap
            .points
            .into_iter()
            .filter(|p| !p.z.is_zero())
            .map(|p| (p.abs_sq_physical, p.z))
            .collect();
        items.sort();
        Ok(Self { reach_sq, items })
    }

    pub fn reach_sq(&self) -> i64 {
        self.reach_sq
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(GoldenInt, CycInt)> {
        self.items.iter()
    }

    // Closest z + d in the window, ties to the lexicographically smallest.
    fn closest_member(&self, window: &Window, z: CycInt) -> Result<Option<(GoldenInt, CycInt)>> {
        let mut best: Option<(GoldenInt, CycInt)> = None;
        for &(dist, d) in &self.items {
            if let Some((b, _)) = best {
                if dist > b {
                    break;
                }
            }
            let other = z.checked_add(d)?;
            if window.contains(other)? && best.is_none_or(|cur| (dist, other) < cur) {
                best = Some((dist, other));
            }
        }
        Ok(best)
    }
}

/// Exact nearest-neighbour search in the infinite set S_w.
///
/// Holds the displacement set for reach 1, which suffices whenever some
/// neighbour lies within distance 1 (always the case for w ≥ 1). For
/// thinner windows larger reaches are built on demand.
#[derive(Clone, Debug)]
pub struct NeighborSearch {
    window: Window,
    base: DisplacementSet,
}

impl NeighborSearch {
    pub fn new(window: Window) -> Result<Self> {
        Ok(Self { window, base: DisplacementSet::new(window, 1)? })
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn displacements(&self) -> &DisplacementSet {
        &self.base
    }

    /// Squared distance from `z` to the rest of S_w, and the witness
    /// attaining it (lexicographically smallest among ties).
    pub fn min_distance(&self, z: CycInt) -> Result<(GoldenInt, CycInt)> {
        if !self.window.contains(z)? {
            return Err(Error::NotInWindow);
        }
        if let Some(hit) = self.base.closest_member(&self.window, z)? {
            return Ok(hit);
        }
        let mut reach = 4;
        while reach <= MAX_REACH_SQ {
            let set = DisplacementSet::new(self.window, reach)?;
            if let Some(hit) = set.closest_member(&self.window, z)? {
                return Ok(hit);
            }
            reach *= 4;
        }
        Err(Error::NoNeighbour(MAX_REACH_SQ))
    }
}

/// One-shot form of [`NeighborSearch::min_distance`].
pub fn min_distance(z: CycInt, window: Window) -> Result<(GoldenInt, CycInt)> {
    NeighborSearch::new(window)?.min_distance(z)
}

pub fn classify_distance(d_sq: GoldenInt) -> Result<DistClass> {
    if d_sq.signum() != Ordering::Greater {
        return Err(Error::NonPositiveDistance);
    }
    Ok(match d_sq {
        GoldenInt::SHORT_SQ => DistClass::Short,
        GoldenInt::LONG_SQ => DistClass::Long,
        _ => DistClass::Other,
    })
}

/// True when |z| + 1 ≤ R, decided exactly from |z|² and R².
///
/// Equivalent to t ≥ 0 and t² ≥ 4|z|² for t = R² − 1 − |z|².
pub fn is_inner(abs_sq: GoldenInt, radius_sq: Rational) -> Result<bool> {
    let ovf = || Error::Overflow("inner-region test");
    let n = (*radius_sq.numer() as i128)
        .checked_sub(*radius_sq.denom() as i128)
        .ok_or_else(ovf)?;
    let d = *radius_sq.denom() as i128;
    let (p, q) = (abs_sq.p as i128, abs_sq.q as i128);
    // d·t = u + vφ
    let u = d.checked_mul(p).and_then(|dp| n.checked_sub(dp)).ok_or_else(ovf)?;
    let v = d.checked_mul(q).and_then(|dq| dq.checked_neg()).ok_or_else(ovf)?;
    if sign_golden(u, v) == Ordering::Less {
        return Ok(false);
    }
    let squared = (|| {
        let uu = u.checked_mul(u)?;
        let vv = v.checked_mul(v)?;
        let uv2 = u.checked_mul(v)?.checked_mul(2)?;
        let dd4 = d.checked_mul(d)?.checked_mul(4)?;
        let x = uu.checked_add(vv)?.checked_sub(dd4.checked_mul(p)?)?;
        let y = uv2.checked_add(vv)?.checked_sub(dd4.checked_mul(q)?)?;
        Some((x, y))
    })();
    let (x, y) = squared.ok_or_else(ovf)?;
    Ok(sign_golden(x, y) != Ordering::Less)
}

/// Result of classifying one point of a snapshot.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Classification {
    pub min_dist_sq: Option<GoldenInt>,
    pub witness: Option<CycInt>,
    pub class: DistClass,
}

impl Classification {
    const UNKNOWN: Self = Self { min_dist_sq: None, witness: None, class: DistClass::Unknown };
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct ClassCounts {
    pub short: usize,
    pub long: usize,
    pub other: usize,
    pub unknown: usize,
}

impl ClassCounts {
    pub fn of(snapshot: &Snapshot) -> Self {
        let mut c = Self::default();
        for p in &snapshot.points {
            c.add(p.dist_class);
        }
        c
    }

    fn add(&mut self, class: DistClass) {
        match class {
            DistClass::Short => self.short += 1,
            DistClass::Long => self.long += 1,
            DistClass::Other => self.other += 1,
            DistClass::Unknown => self.unknown += 1,
        }
    }

    pub fn classified(&self) -> usize {
        self.short + self.long + self.other
    }

    pub fn total(&self) -> usize {
        self.classified() + self.unknown
    }
}

/// Read-only classifier over a snapshot; `classify` may be called from
/// several threads at once.
///
/// Points at least 1 inside the physical radius have every neighbour
/// within distance 1 present in the snapshot, so their nearest neighbour
/// is found among the snapshot points in nearby cells of a unit grid. The
/// grid only picks candidates; distances are compared exactly. When no
/// snapshot point lies within distance 1 (possible only for w < 1) the
/// displacement search takes over.
pub struct Analyzer<'a> {
    snapshot: &'a Snapshot,
    grid: BTreeMap<(i64, i64), Vec<usize>>,
    search: NeighborSearch,
}

// Slack on the query box so float error never hides a cell.
const GRID_SLACK: f64 = 1e-6;

fn cell(v: f64) -> i64 {
    libm::floor(v) as i64
}

impl<'a> Analyzer<'a> {
    pub fn new(snapshot: &'a Snapshot) -> Result<Self> {
        let mut grid: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
        for (i, p) in snapshot.points.iter().enumerate() {
            grid.entry((cell(p.x), cell(p.y))).or_default().push(i);
        }
        Ok(Self { snapshot, grid, search: NeighborSearch::new(snapshot.window)? })
    }

    pub fn is_inner(&self, idx: usize) -> Result<bool> {
        is_inner(self.snapshot.points[idx].abs_sq_physical, self.snapshot.radius_sq)
    }

    pub fn classify(&self, idx: usize) -> Result<Classification> {
        if !self.is_inner(idx)? {
            return Ok(Classification::UNKNOWN);
        }
        let p = &self.snapshot.points[idx];
        let reach = 1.0 + GRID_SLACK;
        let mut best: Option<(GoldenInt, CycInt)> = None;
        for cx in cell(p.x - reach)..=cell(p.x + reach) {
            for cy in cell(p.y - reach)..=cell(p.y + reach) {
                let Some(bucket) = self.grid.get(&(cx, cy)) else {
                    continue;
                };
                for &j in bucket {
                    if j == idx {
                        continue;
                    }
                    let other = self.snapshot.points[j].z;
                    let dist = other.checked_sub(p.z)?.abs_sq(Embedding::Physical)?;
                    if dist <= GoldenInt::ONE && best.is_none_or(|cur| (dist, other) < cur) {
                        best = Some((dist, other));
                    }
                }
            }
        }
        let (dist, witness) = match best {
            Some(hit) => hit,
            None => self.search.min_distance(p.z)?,
        };
        Ok(Classification {
            min_dist_sq: Some(dist),
            witness: Some(witness),
            class: classify_distance(dist)?,
        })
    }
}

/// Writes classifications back into the snapshot and tallies them.
pub fn apply_classifications(snapshot: &mut Snapshot, results: &[Classification]) -> ClassCounts {
    debug_assert_eq!(snapshot.points.len(), results.len());
    let mut counts = ClassCounts::default();
    for (p, c) in snapshot.points.iter_mut().zip(results) {
        p.min_dist_sq = c.min_dist_sq;
        p.witness = c.witness;
        p.dist_class = c.class;
        counts.add(c.class);
    }
    counts
}

/// Classifies every point at least 1 inside the radius; the rest become
/// `Unknown`. Any `Other` in the counts contradicts the two-distance
/// property.
pub fn analyze(snapshot: &mut Snapshot) -> Result<ClassCounts> {
    let results = {
        let analyzer = Analyzer::new(snapshot)?;
        (0..snapshot.points.len())
            .map(|i| analyzer.classify(i))
            .collect::<Result<Vec<_>>>()?
    };
    Ok(apply_classifications(snapshot, &results))
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Stats {
    pub count: usize,
    pub short: usize,
    pub long: usize,
    pub other: usize,
    pub unknown: usize,
    /// count / (πR²); absent for R = 0.
    pub density: Option<f64>,
    /// short / long; absent when no point is long.
    pub short_long_ratio: Option<f64>,
}

pub fn stats(snapshot: &Snapshot) -> Stats {
    let c = ClassCounts::of(snapshot);
    let r2 = *snapshot.radius_sq.numer() as f64 / *snapshot.radius_sq.denom() as f64;
    let count = snapshot.points.len();
    Stats {
        count,
        short: c.short,
        long: c.long,
        other: c.other,
        unknown: c.unknown,
        density: (r2 > 0.0).then(|| count as f64 / (core::f64::consts::PI * r2)),
        short_long_ratio: (c.long > 0).then(|| c.short as f64 / c.long as f64),
    }
}
