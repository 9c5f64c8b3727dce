//! Fraction-free determinants.
//!
//! Every predicate in the crate bottoms out here. Bareiss elimination keeps
//! every intermediate value an exact minor of the input, so the only failure
//! mode is overflow of the machine type. The `i128` path reports overflow and
//! the caller retries with [`BigInt`].

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Integer type that Bareiss elimination can run on. The `i128` impl fails
/// with `None` on overflow; the `BigInt` impl never fails.
pub(crate) trait ExactInt: Clone {
    fn exact_zero() -> Self;
    fn exact_one() -> Self;
    fn exact_is_zero(&self) -> bool;
    fn neg(&self) -> Self;
    /// `a * b - c * d`
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self>;
    /// Division that is known to be exact.
    fn div_exact(&self, rhs: &Self) -> Self;
}

impl ExactInt for i128 {
    fn exact_zero() -> Self {
        0
    }
    fn exact_one() -> Self {
        1
    }
    fn exact_is_zero(&self) -> bool {
        *self == 0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl ExactInt for BigInt {
    fn exact_zero() -> Self {
        Zero::zero()
    }
    fn exact_one() -> Self {
        One::one()
    }
    fn exact_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_sub(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        Some(a * b - c * d)
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

/// Bareiss elimination on a row-major `k x k` matrix, consumed in place.
pub(crate) fn bareiss<T: ExactInt>(m: &mut [T], k: usize) -> Option<T> {
    debug_assert_eq!(m.len(), k * k);
    if k == 0 {
        return Some(T::exact_one());
    }
    let mut negate = false;
    let mut prev = T::exact_one();
    for i in 0..k - 1 {
        if m[i * k + i].exact_is_zero() {
            let pivot = (i + 1..k).find(|&r| !m[r * k + i].exact_is_zero());
            match pivot {
                Some(r) => {
                    for c in 0..k {
                        m.swap(i * k + c, r * k + c);
                    }
                    negate = !negate;
                }
                None => return Some(T::exact_zero()),
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                let v = T::mul_sub(&m[r * k + c], &m[i * k + i], &m[r * k + i], &m[i * k + c])?;
                m[r * k + c] = v.div_exact(&prev);
            }
        }
        prev = m[i * k + i].clone();
    }
    let last = m[k * k - 1].clone();
    Some(if negate { last.neg() } else { last })
}

/// Determinant of a row-major `k x k` matrix of `i128`, exact.
pub(crate) fn det_wide(m: &[i128], k: usize) -> BigInt {
    let mut work = m.to_vec();
    if let Some(v) = bareiss(&mut work, k) {
        return BigInt::from(v);
    }
    let mut big: Vec<BigInt> = m.iter().map(|&v| BigInt::from(v)).collect();
    bareiss(&mut big, k).expect("BigInt elimination cannot overflow")
}

/// Zero test for the determinant of a row-major `k x k` matrix.
pub(crate) fn det_is_zero(m: &[i128], k: usize) -> bool {
    let mut work = m.to_vec();
    match bareiss(&mut work, k) {
        Some(v) => v == 0,
        None => Zero::is_zero(&det_wide(m, k)),
    }
}

/// Exact determinant of a square integer matrix given as rows.
///
/// Entries may be any size; a 128-bit fast path is tried first and abandoned
/// on the first overflow.
pub fn det_exact<R, E>(rows: &[R]) -> Result<BigInt>
where
    R: AsRef<[E]>,
    E: Clone + Into<BigInt>,
{
    let k = rows.len();
    let mut big = Vec::with_capacity(k * k);
    for row in rows {
        let row = row.as_ref();
        if row.len() != k {
            return Err(Error::NotSquare { rows: k, cols: row.len() });
        }
        big.extend(row.iter().cloned().map(Into::into));
    }
    if k == 0 {
        return Err(Error::NotSquare { rows: 0, cols: 0 });
    }
    let small: Option<Vec<i128>> = big.iter().map(ToPrimitive::to_i128).collect();
    if let Some(mut small) = small {
        if let Some(v) = bareiss(&mut small, k) {
            return Ok(BigInt::from(v));
        }
    }
    Ok(bareiss(&mut big, k).expect("BigInt elimination cannot overflow"))
}

/// Signed maximal minors of an `r x (r+1)` row-major matrix: the vector
/// spanning its kernel when the rows are independent, all zero otherwise.
pub(crate) fn cofactor_kernel(m: &[i128], r: usize) -> Vec<BigInt> {
    let cols = r + 1;
    debug_assert_eq!(m.len(), r * cols);
    let mut minor = Vec::with_capacity(r * r);
    (0..cols)
        .map(|skip| {
            minor.clear();
            for row in m.chunks_exact(cols) {
                minor.extend(row.iter().enumerate().filter(|&(c, _)| c != skip).map(|(_, &v)| v));
            }
            let det = det_wide(&minor, r);
            if skip % 2 == 1 {
                -det
            } else {
                det
            }
        })
        .collect()
}

pub(crate) fn abs_gcd(values: &[BigInt]) -> BigInt {
    use num_integer::Integer;
    values.iter().fold(BigInt::zero(), |g, v| g.gcd(v)).abs()
}
