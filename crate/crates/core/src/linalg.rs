//! Small dense linear algebra over the rationals.
//!
//! Used on the slow paths only: kernels of rank-deficient lifted systems,
//! affine frames for the VC refuter, rank of lattice point sets.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type Rat = BigRational;

pub(crate) fn rat(v: i128) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Reduces `m` to reduced row echelon form in place and returns the pivot
/// columns. Zero rows are dropped.
pub(crate) fn rref(m: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub(crate) fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : m x = 0}`, returned in reduced row echelon form so that
/// equal kernels produce identical bases.
pub(crate) fn kernel(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    rref(&mut basis);
    basis
}

/// Integer basis of `{x : r . x = 0 for every row r}`, built by cutting the
/// standard basis with one row at a time and keeping each vector primitive.
/// `None` if an intermediate value leaves `i128`.
pub(crate) fn kernel_i128(rows: &[Vec<i128>], cols: usize) -> Option<Vec<Vec<i128>>> {
    let mut basis: Vec<Vec<i128>> = (0..cols)
        .map(|i| {
            let mut v = vec![0; cols];
            v[i] = 1;
            v
        })
        .collect();
    for r in rows {
        let dots: Vec<i128> = basis.iter().map(|b| dot_i128(b, r)).collect::<Option<_>>()?;
        let Some(p) = dots.iter().position(|&x| x != 0) else { continue };
        let pivot = basis.swap_remove(p);
        let dp = dots[p];
        let mut others = dots;
        others.swap_remove(p);
        for (b, &db) in basis.iter_mut().zip(&others) {
            for (x, &y) in b.iter_mut().zip(&pivot) {
                *x = dp.checked_mul(*x)?.checked_sub(db.checked_mul(y)?)?;
            }
            let g = b.iter().fold(0i128, |g, v| g.gcd(v));
            if g > 1 {
                b.iter_mut().for_each(|x| *x /= g);
            }
        }
    }
    Some(basis)
}

pub(crate) fn dot_i128(a: &[i128], b: &[i128]) -> Option<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (x, y)| acc.checked_add(x.checked_mul(*y)?))
}

/// Scales a rational vector to integers by the lcm of its denominators.
pub(crate) fn clear_denominators(row: &[Rat]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
}

/// Primitive integer multiple of a nonzero rational vector whose first
/// nonzero entry is positive.
pub(crate) fn primitive(row: &[Rat]) -> Vec<BigInt> {
    let ints = clear_denominators(row);
    let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    let negative = ints.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative());
    ints.into_iter()
        .map(|v| {
            let v = v / &g;
            if negative {
                -v
            } else {
                v
            }
        })
        .collect()
}

/// Solves `sum_j coeffs[j] * basis[j] = target` for linearly independent
/// `basis`; `None` when `target` is outside their span.
pub(crate) fn solve_in_span(basis: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let dim = target.len();
    let k = basis.len();
    // Augmented system: one row per coordinate.
    let mut m: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&k) || pivots.len() != k {
        return None;
    }
    Some(m.iter().map(|row| row[k].clone()).collect())
}

pub(crate) fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// `x^T g x`
pub(crate) fn quad_form(g: &[Vec<Rat>], x: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (i, row) in g.iter().enumerate() {
        acc += &x[i] * dot(row, x);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i128]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = kernel(&[r(&[1, 2, 3])], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(dot(v, &r(&[1, 2, 3])).is_zero());
        }
        // Canonical: scaling the input row gives the same basis.
        assert_eq!(k, kernel(&[r(&[-2, -4, -6])], 3));
    }

    #[test]
    fn integer_kernel_spans_the_rational_one() {
        let rows = [vec![14i128, 1, 2, 3, 1], vec![3, 1, 1, 1, 1], vec![6, 1, 1, 2, 1]];
        for k in 0..=rows.len() {
            let int = kernel_i128(&rows[..k], 5).unwrap();
            let rational: Vec<Vec<Rat>> = rows[..k].iter().map(|row| r(row)).collect();
            let expect = kernel(&rational, 5);
            assert_eq!(int.len(), expect.len());
            let as_rat: Vec<Vec<Rat>> = int.iter().map(|v| r(v)).collect();
            assert_eq!(rank(&as_rat), int.len());
            for v in &as_rat {
                assert!(solve_in_span(&expect, v).is_some());
            }
        }
        assert!(kernel_i128(&[vec![1, 2], vec![i128::MAX, i128::MAX]], 2).is_none());
    }

    #[test]
    fn primitive_fixes_sign_and_gcd() {
        let v = vec![Rat::new(BigInt::from(-2), BigInt::from(3)), Rat::from_integer(BigInt::from(4))];
        assert_eq!(primitive(&v), vec![BigInt::from(1), BigInt::from(-6)]);
    }

    #[test]
    fn solve_recovers_coordinates() {
        let basis = [r(&[1, 1, 0]), r(&[0, 1, 1])];
        let target = r(&[2, 5, 3]);
        assert_eq!(solve_in_span(&basis, &target), Some(r(&[2, 3])));
        assert_eq!(solve_in_span(&basis, &r(&[1, 0, 0])), None);
    }
}
