use thiserror::Error;

/// Everything that can go wrong in exact arithmetic, enumeration and the
/// verification checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A fixed-width intermediate left its range. Carries the name of the
    /// operation that overflowed.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("galois index must be in 1..=4, got {0}")]
    InvalidGaloisIndex(u8),
    #[error("element is not a unit (field norm {0})")]
    NotAUnit(i64),
    /// An identity that holds for every valid element failed. This is an
    /// arithmetic bug, not a user error.
    #[error("internal consistency failure in {0}")]
    Inconsistent(&'static str),
    #[error("window squared radius must be positive")]
    NonPositiveWindow,
    #[error("squared radius must be non-negative")]
    NegativeRadius,
    #[error("point is not a member of the window's point set")]
    NotInWindow,
    #[error("squared distance must be positive")]
    NonPositiveDistance,
    #[error("check `{0}` requires the unit window (w = 1)")]
    WindowNotUnit(&'static str),
    #[error("no neighbour found within squared reach {0}")]
    NoNeighbour(i64),
}

pub type Result<T> = core::result::Result<T, Error>;
