//! Exact integers of the real quadratic field Q(√5), written in the basis
//! (1, φ), together with exact order comparisons against rationals.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Exact rationals for radii and windows.
pub type Rational = Ratio<i64>;

/// Golden ratio as a float, for annotations and first guesses only.
pub const PHI_F64: f64 = 1.618_033_988_749_895;

/// The element `p + q·φ` of Z[φ], φ = (1+√5)/2.
///
/// Squared moduli and squared distances of cyclotomic integers all land
/// here. Equality is coordinate equality; `Ord` is the order of the real
/// numbers the values denote, decided exactly.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct GoldenInt {
    pub p: i64,
    pub q: i64,
}

impl GoldenInt {
    pub const ZERO: Self = Self::new(0, 0);
    pub const ONE: Self = Self::new(1, 0);
    pub const PHI: Self = Self::new(0, 1);
    /// 2 − φ = ((√5 − 1)/2)², the short squared nearest-neighbour distance.
    pub const SHORT_SQ: Self = Self::new(2, -1);
    /// 1, the long squared nearest-neighbour distance.
    pub const LONG_SQ: Self = Self::new(1, 0);

    pub const fn new(p: i64, q: i64) -> Self {
        Self { p, q }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        Ok(Self::new(
            self.p.checked_add(rhs.p).ok_or(Error::Overflow("GoldenInt add"))?,
            self.q.checked_add(rhs.q).ok_or(Error::Overflow("GoldenInt add"))?,
        ))
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        Ok(Self::new(
            self.p.checked_sub(rhs.p).ok_or(Error::Overflow("GoldenInt sub"))?,
            self.q.checked_sub(rhs.q).ok_or(Error::Overflow("GoldenInt sub"))?,
        ))
    }

    pub fn checked_neg(self) -> Result<Self> {
        Self::ZERO.checked_sub(self)
    }

    /// (p + qφ)(r + sφ) = pr + qs + (ps + qr + qs)φ, using φ² = φ + 1.
    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let ovf = || Error::Overflow("GoldenInt mul");
        let pr = self.p.checked_mul(rhs.p).ok_or_else(ovf)?;
        let qs = self.q.checked_mul(rhs.q).ok_or_else(ovf)?;
        let ps = self.p.checked_mul(rhs.q).ok_or_else(ovf)?;
        let qr = self.q.checked_mul(rhs.p).ok_or_else(ovf)?;
        let p = pr.checked_add(qs).ok_or_else(ovf)?;
        let q = ps
            .checked_add(qr)
            .and_then(|v| v.checked_add(qs))
            .ok_or_else(ovf)?;
        Ok(Self::new(p, q))
    }

    pub fn is_zero(self) -> bool {
        self.p == 0 && self.q == 0
    }

    /// Sign of the real number, decided exactly.
    pub fn signum(self) -> Ordering {
        sign_golden(self.p as i128, self.q as i128)
    }

    pub fn to_f64(self) -> f64 {
        self.p as f64 + self.q as f64 * PHI_F64
    }

    /// Exact comparison of `p + qφ` with the rational `r`.
    ///
    /// With `r = n/d`, `d > 0`, the difference scaled by `2d` is
    /// `A + B√5` where `A = 2dp + dq − 2n` and `B = dq`.
    pub fn cmp_rational(self, r: &Rational) -> Ordering {
        let (n, d) = (*r.numer() as i128, *r.denom() as i128);
        let (p, q) = (self.p as i128, self.q as i128);
        let fast = (|| {
            let a = d
                .checked_mul(p)?
                .checked_mul(2)?
                .checked_add(d.checked_mul(q)?)?
                .checked_sub(n.checked_mul(2)?)?;
            let b = d.checked_mul(q)?;
            Some((a, b))
        })();
        match fast {
            Some((a, b)) => sign_sqrt5(a, b),
            None => {
                let (n, d, p, q) = (
                    BigInt::from(n),
                    BigInt::from(d),
                    BigInt::from(p),
                    BigInt::from(q),
                );
                let a = &d * &p * 2 + &d * &q - n * 2;
                let b = d * q;
                sign_sqrt5_big(&a, &b)
            }
        }
    }
}

impl PartialOrd for GoldenInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenInt {
    fn cmp(&self, other: &Self) -> Ordering {
        sign_golden(
            self.p as i128 - other.p as i128,
            self.q as i128 - other.q as i128,
        )
    }
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p, self.q) {
            (p, 0) => write!(f, "{p}"),
            (0, q) => write!(f, "{q}φ"),
            (p, q) if q < 0 => write!(f, "{p}-{}φ", -(q as i128)),
            (p, q) => write!(f, "{p}+{q}φ"),
        }
    }
}

/// Sign of `a + bφ`, i.e. of `(2a + b) + b√5` halved.
pub(crate) fn sign_golden(a: i128, b: i128) -> Ordering {
    match a.checked_mul(2).and_then(|v| v.checked_add(b)) {
        Some(twice) => sign_sqrt5(twice, b),
        None => {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            sign_sqrt5_big(&(a * 2 + &b), &b)
        }
    }
}

/// Exact sign of `a + b√5`.
///
/// Same-sign coefficients settle it directly; mixed signs are decided by
/// comparing `a²` with `5b²`, the larger term carrying its sign.
pub fn sign_sqrt5(a: i128, b: i128) -> Ordering {
    match (a.cmp(&0), b.cmp(&0)) {
        (Ordering::Equal, Ordering::Equal) => Ordering::Equal,
        (Ordering::Less, Ordering::Less | Ordering::Equal)
        | (Ordering::Equal, Ordering::Less) => Ordering::Less,
        (Ordering::Greater, Ordering::Greater | Ordering::Equal)
        | (Ordering::Equal, Ordering::Greater) => Ordering::Greater,
        _ => {
            let squares = a
                .checked_mul(a)
                .zip(b.checked_mul(b).and_then(|bb| bb.checked_mul(5)));
            let rational_wins = match squares {
                Some((aa, bb5)) => aa.cmp(&bb5),
                None => {
                    let (a, b) = (BigInt::from(a), BigInt::from(b));
                    (&a * &a).cmp(&(&b * &b * 5))
                }
            };
            mixed_sign(a > 0, rational_wins)
        }
    }
}

fn sign_sqrt5_big(a: &BigInt, b: &BigInt) -> Ordering {
    let (sa, sb) = (sign_of(a), sign_of(b));
    match (sa, sb) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (x, y) if x == y => x,
        _ => {
            let aa: BigInt = a * a;
            let bb5: BigInt = b * b * 5;
            mixed_sign(a.is_positive(), aa.cmp(&bb5))
        }
    }
}

fn sign_of(v: &BigInt) -> Ordering {
    if v.is_positive() {
        Ordering::Greater
    } else if v.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

// a and b have strictly opposite signs; `rational_wins` compares a² to 5b².
// Equality is impossible because √5 is irrational.
fn mixed_sign(a_positive: bool, rational_wins: Ordering) -> Ordering {
    match (a_positive, rational_wins) {
        (true, Ordering::Greater) | (false, Ordering::Less) => Ordering::Greater,
        _ => Ordering::Less,
    }
}
