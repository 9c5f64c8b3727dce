use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::exact::abs_gcd;
use crate::{Error, Result};

/// The locus `a_lift * |x|^2 + sum a_i x_i + a_0 = 0` in canonical form.
///
/// `a_lift != 0` is a sphere, `a_lift == 0` a hyperplane. Coefficients are
/// stored in the order `(a_lift, a_1, ..., a_d, a_0)`, divided by their gcd,
/// with the first nonzero one positive, so equal loci compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "Vec<i128>", into = "Vec<i128>"))]
pub struct GeneralizedSphere {
    coeffs: Vec<i128>,
}

impl GeneralizedSphere {
    /// Canonical form of a raw coefficient vector of length `d + 2`.
    pub fn canonicalize(raw: &[i128]) -> Result<Self> {
        if raw.len() < 3 {
            return Err(Error::InvalidParameter(alloc::format!(
                "surface needs at least 3 coefficients, got {}",
                raw.len()
            )));
        }
        let first = raw.iter().copied().find(|&c| c != 0).ok_or(Error::ZeroSurface)?;
        let g = raw.iter().fold(0u128, |g, &c| gcd_u128(g, c.unsigned_abs()));
        let coeffs = if g > i128::MAX as u128 {
            // Only reachable through i128::MIN entries.
            let big: Vec<BigInt> = raw.iter().map(|&c| BigInt::from(c)).collect();
            return Self::from_big(&big);
        } else {
            let g = g as i128;
            let sign = if first < 0 { -1 } else { 1 };
            raw.iter().map(|&c| sign * (c / g)).collect()
        };
        Ok(GeneralizedSphere { coeffs })
    }

    /// Canonical form of an arbitrary-precision coefficient vector.
    pub(crate) fn from_big(raw: &[BigInt]) -> Result<Self> {
        let first = raw.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroSurface)?;
        let negative = first.is_negative();
        let g = abs_gcd(raw);
        let coeffs = raw
            .iter()
            .map(|c| {
                let v = c / &g;
                let v = if negative { -v } else { v };
                v.to_i128().ok_or(Error::CoefficientOverflow)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneralizedSphere { coeffs })
    }

    /// Ambient dimension `d`.
    pub fn dim(&self) -> usize {
        self.coeffs.len() - 2
    }

    /// All coefficients, `(a_lift, a_1, ..., a_d, a_0)`.
    pub fn coefficients(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn lift_coefficient(&self) -> i128 {
        self.coeffs[0]
    }

    pub fn linear(&self) -> &[i128] {
        &self.coeffs[1..self.coeffs.len() - 1]
    }

    pub fn constant(&self) -> i128 {
        self.coeffs[self.coeffs.len() - 1]
    }

    pub fn is_hyperplane(&self) -> bool {
        self.coeffs[0] == 0
    }

    pub fn is_sphere(&self) -> bool {
        self.coeffs[0] != 0
    }

    /// Value of the defining polynomial at `x`; exact at any magnitude.
    pub fn evaluate(&self, x: &[i64]) -> BigInt {
        match self.evaluate_i128(x) {
            Some(v) => BigInt::from(v),
            None => {
                let a = self.lift_coefficient();
                let mut acc = BigInt::from(a) * x.iter().map(|&c| BigInt::from(c) * c).sum::<BigInt>();
                for (&ai, &xi) in self.linear().iter().zip(x) {
                    acc += BigInt::from(ai) * xi;
                }
                acc + self.constant()
            }
        }
    }

    fn evaluate_i128(&self, x: &[i64]) -> Option<i128> {
        let mut norm: i128 = 0;
        let mut lin: i128 = 0;
        for (&ai, &xi) in self.linear().iter().zip(x) {
            let xi = i128::from(xi);
            norm = norm.checked_add(xi * xi)?;
            lin = lin.checked_add(ai.checked_mul(xi)?)?;
        }
        self.lift_coefficient().checked_mul(norm)?.checked_add(lin)?.checked_add(self.constant())
    }

    /// Exact membership test; the dimension must already match.
    pub fn contains(&self, x: &[i64]) -> bool {
        debug_assert_eq!(x.len(), self.dim());
        match self.evaluate_i128(x) {
            Some(v) => v == 0,
            None => self.evaluate(x).is_zero(),
        }
    }

    /// Center `-a / (2 a_lift)` of a sphere; `None` for a hyperplane.
    pub fn center(&self) -> Option<Vec<BigRational>> {
        let a = self.lift_coefficient();
        if a == 0 {
            return None;
        }
        let den = BigInt::from(a) * 2u32;
        Some(self.linear().iter().map(|&ai| BigRational::new(BigInt::from(-ai), den.clone())).collect())
    }

    /// `(|a|^2 - 4 a_lift a_0) / (4 a_lift^2)`; `None` for a hyperplane.
    /// Nonpositive values describe an empty or degenerate real locus.
    pub fn squared_radius(&self) -> Option<BigRational> {
        let a = BigInt::from(self.lift_coefficient());
        if a.is_zero() {
            return None;
        }
        let num = self.scaled_squared_radius();
        let den = &a * &a * 4u32;
        Some(BigRational::new(num, den))
    }

    /// `|a|^2 - 4 a_lift a_0`, the squared radius scaled by `4 a_lift^2`.
    pub(crate) fn scaled_squared_radius(&self) -> BigInt {
        let norm: BigInt = self.linear().iter().map(|&ai| BigInt::from(ai) * ai).sum();
        norm - BigInt::from(self.lift_coefficient()) * self.constant() * 4u32
    }
}

impl TryFrom<Vec<i128>> for GeneralizedSphere {
    type Error = Error;

    fn try_from(raw: Vec<i128>) -> Result<Self> {
        let s = Self::canonicalize(&raw)?;
        if s.coeffs != raw {
            return Err(Error::InvalidParameter("surface coefficients are not canonical".into()));
        }
        Ok(s)
    }
}

impl From<GeneralizedSphere> for Vec<i128> {
    fn from(s: GeneralizedSphere) -> Self {
        s.coeffs
    }
}

impl fmt::Display for GeneralizedSphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
