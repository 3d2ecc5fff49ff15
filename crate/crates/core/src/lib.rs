//! Exact arithmetic in the ring of integers Z[ζ] of the fifth cyclotomic
//! field, and the cut-and-project point set
//!
//! ```text
//! S_w = { z ∈ Z[ζ] : |σ(z)|² ≤ w },   σ: ζ ↦ ζ²
//! ```
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! * [`CycInt`] and [`GoldenInt`], exact elements of Z[ζ] and Z[φ], with
//!   Galois conjugates, field norms, squared moduli and exact comparison
//!   against rationals;
//! * [`decompose_unit`], writing a unit as ±ζᵏ·εʲ;
//! * [`enumerate`], the complete list of points of S_w in a disc;
//! * [`min_distance`] and [`analyze`], exact nearest-neighbour distances;
//! * [`verify`], exact checks of separation, symmetry, the unit gap,
//!   step existence and the two-distance property.
#![no_std]

extern crate alloc;

pub mod cyclotomic;
pub mod enumerate;
pub mod error;
pub mod golden;
pub mod modelset;
pub mod neighbors;
pub mod unit;
pub mod verify;

pub use cyclotomic::{Complex, CycInt, Embedding};
pub use enumerate::{enumerate, enumerate_naive, Enumerator};
pub use error::{Error, Result};
pub use golden::{sign_sqrt5, GoldenInt, Rational};
pub use modelset::{DistClass, PointRecord, Snapshot, Window};
pub use neighbors::{
    analyze, apply_classifications, classify_distance, is_inner, min_distance, stats, Analyzer,
    ClassCounts, Classification, DisplacementSet, NeighborSearch, Stats,
};
pub use unit::{decompose_unit, epsilon_pow, UnitDecomposition};
pub use verify::{
    verify_all, verify_rotation, verify_separation, verify_snapshot, verify_step_existence,
    verify_two_distance, verify_unit_lemma, Check, Outcome, VerificationReport,
};
