//! Decomposition of units as ±ζᵏ·εʲ with ε = ζ + ζ⁴.

use crate::cyclotomic::{CycInt, Embedding};
use crate::error::{Error, Result};
use crate::golden::PHI_F64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct UnitDecomposition {
    /// +1 or −1.
    pub sign: i8,
    /// Power of ζ, in `0..5`.
    pub k: u8,
    /// Power of ε. |u| = (φ − 1)ʲ, so j > 0 means |u| < 1.
    pub j: i64,
}

impl UnitDecomposition {
    pub fn recompose(&self) -> Result<CycInt> {
        let root = CycInt::zeta_pow(self.k as i64);
        let root = if self.sign < 0 { root.checked_neg()? } else { root };
        root.checked_mul(epsilon_pow(self.j)?)
    }
}

/// εʲ for any integer j, using ε⁻¹ = −ζ² − ζ³.
pub fn epsilon_pow(j: i64) -> Result<CycInt> {
    let exp = u32::try_from(j.unsigned_abs()).map_err(|_| Error::Overflow("epsilon power"))?;
    if j >= 0 {
        CycInt::EPSILON.checked_pow(exp)
    } else {
        CycInt::EPSILON_INV.checked_pow(exp)
    }
}

/// Writes the unit `u` as `sign·ζᵏ·εʲ`.
///
/// j is first estimated from the larger of |u| and |σ(u)| (their product
/// is 1), then each candidate in j−1..=j+1 is tested exactly by dividing
/// out εʲ and matching the quotient against the ten roots of unity.
pub fn decompose_unit(u: CycInt) -> Result<UnitDecomposition> {
    let norm = u.field_norm()?;
    if norm != 1 {
        return Err(Error::NotAUnit(norm));
    }
    let phys = u.embed(Embedding::Physical).norm_sqr();
    let int = u.embed(Embedding::Internal).norm_sqr();
    // |u| = φ^{-j}, |σ(u)| = φ^{j}
    let log_phi = libm::log(PHI_F64);
    let guess = if phys >= int {
        -0.5 * libm::log(phys) / log_phi
    } else {
        0.5 * libm::log(int) / log_phi
    };
    let guess = libm::round(guess) as i64;

    let roots = CycInt::tenth_roots();
    for j in [guess, guess - 1, guess + 1] {
        let quotient = u.checked_mul(epsilon_pow(-j)?)?;
        if let Some(idx) = roots.iter().position(|r| *r == quotient) {
            // roots[idx] = e^{πi·idx/5}: even idx is ζ^{idx/2}, odd is −ζ^{(idx+5)/2}.
            let (sign, k) = if idx % 2 == 0 {
                (1, idx / 2)
            } else {
                (-1, ((idx + 5) / 2) % 5)
            };
            let out = UnitDecomposition { sign, k: k as u8, j };
            if out.recompose()? != u {
                return Err(Error::Inconsistent("unit recomposition"));
            }
            return Ok(out);
        }
    }
    Err(Error::Inconsistent("unit outside ±ζ^k·ε^j near the estimated j"))
}
