//! Exact arithmetic in Z[ζ], ζ = exp(2πi/5).
//!
//! Elements are stored in the integral basis (1, ζ, ζ², ζ³). Every product
//! is reduced with ζ⁵ = 1 and ζ⁴ = −1 − ζ − ζ² − ζ³, so the representation
//! is canonical and equality is coordinate equality. All arithmetic is
//! checked: the `checked_*` methods report overflow as [`Error::Overflow`],
//! and the operator impls panic rather than wrap.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::golden::GoldenInt;

/// Which complex embedding of the field to use.
///
/// `Physical` is the identity embedding, where points are drawn.
/// `Internal` is the Galois twist ζ ↦ ζ², where the window lives.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Embedding {
    Physical,
    Internal,
}

/// A complex double returned by [`CycInt::embed`].
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }
}

// cos/sin of 2πk/5 for k = 0..4, correctly rounded.
const COS: [f64; 5] = [
    1.0,
    0.309_016_994_374_947_45,
    -0.809_016_994_374_947_5,
    -0.809_016_994_374_947_5,
    0.309_016_994_374_947_45,
];
const SIN: [f64; 5] = [
    0.0,
    0.951_056_516_295_153_5,
    0.587_785_252_292_473_1,
    -0.587_785_252_292_473_1,
    -0.951_056_516_295_153_5,
];

/// The cyclotomic integer `a0 + a1·ζ + a2·ζ² + a3·ζ³`.
///
/// The derived `Ord` is lexicographic on coordinates. It carries no
/// arithmetic meaning and is used only for deterministic tie-breaking.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CycInt([i64; 4]);

impl CycInt {
    pub const ZERO: Self = Self([0, 0, 0, 0]);
    pub const ONE: Self = Self([1, 0, 0, 0]);
    pub const ZETA: Self = Self([0, 1, 0, 0]);
    /// The fundamental unit ε = ζ + ζ⁴ = φ − 1.
    pub const EPSILON: Self = Self([-1, 0, -1, -1]);
    /// ε⁻¹ = −ζ² − ζ³ = φ.
    pub const EPSILON_INV: Self = Self([0, 0, -1, -1]);

    pub const fn new(a0: i64, a1: i64, a2: i64, a3: i64) -> Self {
        Self([a0, a1, a2, a3])
    }

    pub const fn from_coords(a: [i64; 4]) -> Self {
        Self(a)
    }

    pub const fn coords(&self) -> [i64; 4] {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    /// ζᵏ for any integer exponent.
    pub fn zeta_pow(k: i64) -> Self {
        let mut c = [0i64; 5];
        c[k.rem_euclid(5) as usize] = 1;
        reduce_quartic(c).expect("reducing a root of unity cannot overflow")
    }

    /// The ten roots of unity ±ζᵏ, listed as e^{πij/5} for j = 0..9.
    pub fn tenth_roots() -> [Self; 10] {
        // e^{πij/5} = ζ^{j/2} for even j and −ζ^{(j+5)/2} for odd j.
        core::array::from_fn(|j| {
            let j = j as i64;
            if j % 2 == 0 {
                Self::zeta_pow(j / 2)
            } else {
                -Self::zeta_pow((j + 5) / 2)
            }
        })
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let mut out = [0i64; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i]
                .checked_add(rhs.0[i])
                .ok_or(Error::Overflow("CycInt add"))?;
        }
        Ok(Self(out))
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        let mut out = [0i64; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i]
                .checked_sub(rhs.0[i])
                .ok_or(Error::Overflow("CycInt sub"))?;
        }
        Ok(Self(out))
    }

    pub fn checked_neg(self) -> Result<Self> {
        Self::ZERO.checked_sub(self)
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let ovf = || Error::Overflow("CycInt mul");
        let mut wide = [0i64; 7];
        for (i, &x) in self.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in rhs.0.iter().enumerate() {
                let t = x.checked_mul(y).ok_or_else(ovf)?;
                wide[i + j] = wide[i + j].checked_add(t).ok_or_else(ovf)?;
            }
        }
        // ζ⁵ = 1, ζ⁶ = ζ
        let folded = [
            wide[0].checked_add(wide[5]).ok_or_else(ovf)?,
            wide[1].checked_add(wide[6]).ok_or_else(ovf)?,
            wide[2],
            wide[3],
            wide[4],
        ];
        reduce_quartic(folded)
    }

    pub fn checked_pow(self, mut exp: u32) -> Result<Self> {
        let mut base = self;
        let mut acc = Self::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.checked_mul(base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.checked_mul(base)?;
            }
        }
        Ok(acc)
    }

    /// Applies the automorphism ζ ↦ ζᵏ for k ∈ {1, 2, 3, 4}.
    ///
    /// k = 2 is the internal embedding σ, k = 3 its complex conjugate and
    /// k = 4 plain complex conjugation.
    pub fn galois(self, k: u8) -> Result<Self> {
        if !(1..=4).contains(&k) {
            return Err(Error::InvalidGaloisIndex(k));
        }
        let mut spread = [0i64; 5];
        for (i, &a) in self.0.iter().enumerate() {
            spread[(i * k as usize) % 5] = a;
        }
        reduce_quartic(spread)
    }

    pub fn conj(self) -> Self {
        self.galois(4).expect("conjugation permutes coordinates")
    }

    /// N(z) = z · σ₂(z) · σ₃(z) · σ₄(z), a non-negative rational integer.
    pub fn field_norm(self) -> Result<i64> {
        let product = self
            .checked_mul(self.galois(2)?)?
            .checked_mul(self.galois(3)?)?
            .checked_mul(self.galois(4)?)?;
        match product.0 {
            [n, 0, 0, 0] => Ok(n),
            _ => Err(Error::Inconsistent("field norm is not rational")),
        }
    }

    pub fn is_unit(self) -> Result<bool> {
        Ok(self.field_norm()? == 1)
    }

    /// |z|² (physical) or |σ(z)|² (internal) as an exact element of Z[φ].
    pub fn abs_sq(self, which: Embedding) -> Result<GoldenInt> {
        let product = match which {
            Embedding::Physical => self.checked_mul(self.galois(4)?)?,
            Embedding::Internal => self.galois(2)?.checked_mul(self.galois(3)?)?,
        };
        real_to_golden(product)
    }

    /// The positive definite form Q(a) = |z|² + |σ(z)|²
    /// = (5·Σaᵢ² − (Σaᵢ)²) / 2, always a non-negative integer.
    pub fn trace_form(self) -> Result<i64> {
        let coords = self.0.map(i128::from);
        let sum: i128 = coords.iter().sum();
        let q = coords
            .iter()
            .try_fold(0i128, |acc, &a| acc.checked_add(a.checked_mul(a)?))
            .and_then(|sq| sq.checked_mul(5)?.checked_sub(sum.checked_mul(sum)?))
            .map(|twice| twice / 2)
            .and_then(|q| i64::try_from(q).ok());
        q.ok_or(Error::Overflow("trace form"))
    }

    /// Double-precision value under the chosen embedding.
    ///
    /// Each term is one rounded product of an exact coordinate with a
    /// correctly rounded cosine or sine, so the absolute error of each
    /// component is at most about 4·‖a‖∞·2⁻⁵², i.e. below 10⁻¹² relative
    /// to ‖a‖∞ and below 10⁻⁹ absolutely for coordinates up to 10⁶.
    /// Relative to |z| itself the bound degrades when |z| is much smaller
    /// than ‖a‖∞ (high powers of ε); exact work goes through
    /// [`CycInt::abs_sq`].
    pub fn embed(self, which: Embedding) -> Complex {
        let step = match which {
            Embedding::Physical => 1,
            Embedding::Internal => 2,
        };
        let mut out = Complex::default();
        for (i, &a) in self.0.iter().enumerate() {
            let k = (i * step) % 5;
            out.re += a as f64 * COS[k];
            out.im += a as f64 * SIN[k];
        }
        out
    }
}

// Rewrites c0 + c1ζ + c2ζ² + c3ζ³ + c4ζ⁴ in the canonical basis.
fn reduce_quartic(c: [i64; 5]) -> Result<CycInt> {
    let ovf = || Error::Overflow("CycInt reduction");
    let mut out = [0i64; 4];
    for (i, o) in out.iter_mut().enumerate() {
        *o = c[i].checked_sub(c[4]).ok_or_else(ovf)?;
    }
    Ok(CycInt(out))
}

// A real element c0 + c1(ζ+ζ⁴) + c2(ζ²+ζ³) has canonical coordinates
// (c0−c1, 0, c2−c1, c2−c1), and equals x0 − x2·φ since ζ²+ζ³ = −φ.
fn real_to_golden(z: CycInt) -> Result<GoldenInt> {
    match z.0 {
        [x0, 0, x2, x3] if x2 == x3 => {
            let q = x2.checked_neg().ok_or(Error::Overflow("real part"))?;
            Ok(GoldenInt::new(x0, q))
        }
        _ => Err(Error::Inconsistent("conjugate product is not real")),
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a0, a1, a2, a3] = self.0;
        write!(f, "CycInt({a0}, {a1}, {a2}, {a3})")
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a0, a1, a2, a3] = self.0;
        write!(f, "[{a0},{a1},{a2},{a3}]")
    }
}

impl Add for CycInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("CycInt addition overflowed")
    }
}

impl Sub for CycInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("CycInt subtraction overflowed")
    }
}

impl Neg for CycInt {
    type Output = Self;
    fn neg(self) -> Self {
        self.checked_neg().expect("CycInt negation overflowed")
    }
}

impl Mul for CycInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("CycInt multiplication overflowed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(a0: i64, a1: i64, a2: i64, a3: i64) -> CycInt {
        CycInt::new(a0, a1, a2, a3)
    }

    #[test]
    fn ring_op_examples() {
        assert_eq!(c(0, 0, 1, 0) * c(0, 0, 0, 1), CycInt::ONE);
        assert_eq!(CycInt::ZETA + -CycInt::ZETA, CycInt::ZERO);
        // (ζ + ζ⁴)² = 2 + ζ² + ζ³
        assert_eq!(CycInt::EPSILON * CycInt::EPSILON, c(2, 0, 1, 1));
        assert_eq!(CycInt::EPSILON * CycInt::EPSILON_INV, CycInt::ONE);
    }

    #[test]
    fn zeta_powers() {
        assert_eq!(CycInt::zeta_pow(0), CycInt::ONE);
        assert_eq!(CycInt::zeta_pow(4), c(-1, -1, -1, -1));
        assert_eq!(CycInt::zeta_pow(5), CycInt::ONE);
        assert_eq!(CycInt::zeta_pow(-1), c(-1, -1, -1, -1));
        assert_eq!(CycInt::ZETA.checked_pow(5), Ok(CycInt::ONE));
        let roots = CycInt::tenth_roots();
        assert_eq!(roots[0], CycInt::ONE);
        assert_eq!(roots[5], -CycInt::ONE);
        // e^{πi/5} squared is ζ
        assert_eq!(roots[1] * roots[1], CycInt::ZETA);
        for r in roots {
            assert_eq!(r.checked_pow(10), Ok(CycInt::ONE));
        }
    }

    #[test]
    fn galois_examples() {
        assert_eq!(CycInt::ZETA.galois(2), Ok(c(0, 0, 1, 0)));
        assert_eq!(CycInt::EPSILON.galois(2), Ok(c(0, 0, 1, 1)));
        assert_eq!(CycInt::ZETA.galois(4), Ok(c(-1, -1, -1, -1)));
        assert_eq!(c(3, 1, 4, 1).galois(1), Ok(c(3, 1, 4, 1)));
        assert_eq!(CycInt::ZETA.galois(0), Err(Error::InvalidGaloisIndex(0)));
        assert_eq!(CycInt::ZETA.galois(5), Err(Error::InvalidGaloisIndex(5)));
    }

    #[test]
    fn norm_examples() {
        assert_eq!(CycInt::ZETA.field_norm(), Ok(1));
        assert_eq!(c(2, 0, 0, 0).field_norm(), Ok(16));
        assert_eq!(c(1, -1, 0, 0).field_norm(), Ok(5));
        assert_eq!(CycInt::ZERO.field_norm(), Ok(0));
        assert_eq!(CycInt::EPSILON.is_unit(), Ok(true));
        assert_eq!(c(2, 0, 0, 0).is_unit(), Ok(false));
        assert_eq!(CycInt::ZETA.is_unit(), Ok(true));
    }

    #[test]
    fn abs_sq_examples() {
        assert_eq!(c(1, -1, 0, 0).abs_sq(Embedding::Physical), Ok(GoldenInt::new(3, -1)));
        assert_eq!(CycInt::EPSILON.abs_sq(Embedding::Internal), Ok(GoldenInt::new(1, 1)));
        assert_eq!(CycInt::EPSILON.abs_sq(Embedding::Physical), Ok(GoldenInt::SHORT_SQ));
        assert_eq!(CycInt::ZERO.abs_sq(Embedding::Physical), Ok(GoldenInt::ZERO));
    }

    #[test]
    fn embed_examples() {
        let one = CycInt::ONE.embed(Embedding::Physical);
        assert_eq!((one.re, one.im), (1.0, 0.0));
        let z = CycInt::ZETA.embed(Embedding::Internal);
        assert!((z.re - -0.809_017).abs() < 1e-6 && (z.im - 0.587_785).abs() < 1e-6);
        let d = c(1, -1, 0, 0).embed(Embedding::Physical).norm_sqr();
        assert!((d - GoldenInt::new(3, -1).to_f64()).abs() < 1e-9);
        assert!((d - 1.381_966).abs() < 1e-6);
    }

    #[test]
    fn overflow_is_reported() {
        let big = c(i64::MAX, 0, 0, 0);
        assert_eq!(big.checked_add(CycInt::ONE), Err(Error::Overflow("CycInt add")));
        assert_eq!(big.checked_mul(c(2, 0, 0, 0)), Err(Error::Overflow("CycInt mul")));
        assert!(c(1 << 20, 1 << 20, 0, 0).field_norm().is_err());
    }

    #[test]
    #[should_panic(expected = "overflowed")]
    fn operators_panic_instead_of_wrapping() {
        let _ = c(i64::MAX, 0, 0, 0) + CycInt::ONE;
    }

    fn small() -> impl Strategy<Value = CycInt> {
        prop::array::uniform4(-50i64..=50).prop_map(CycInt::from_coords)
    }

    proptest! {
        #[test]
        fn conj_matches_float_conjugate(z in small()) {
            let a = z.embed(Embedding::Physical);
            let b = z.conj().embed(Embedding::Physical);
            prop_assert!((a.re - b.re).abs() < 1e-9 && (a.im + b.im).abs() < 1e-9);
        }

        #[test]
        fn internal_embedding_is_galois_two(z in small()) {
            let a = z.embed(Embedding::Internal);
            let b = z.galois(2).unwrap().embed(Embedding::Physical);
            prop_assert!((a.re - b.re).abs() < 1e-9 && (a.im - b.im).abs() < 1e-9);
        }
    }
}
