//! Guessing algebraic equations `P(x, Y) = 0` from finitely many terms.
//!
//! The coefficients `c_ij` of `Σ c_ij x^i Y^j` are unknowns of a linear
//! system that asks `P(x, U)` to vanish through a prefix of the available
//! terms. A kernel vector is then checked against the withheld terms.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{algebraic_residual, IntPoly, PowerSeries};

pub use crate::series::AlgebraicEquation;

pub const DEFAULT_MARGIN: usize = 4;
pub const MIN_MARGIN: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuessSpec {
    pub terms: Vec<BigInt>,
    pub dx: usize,
    pub dy: usize,
    pub margin: usize,
}

impl GuessSpec {
    pub fn new(terms: Vec<BigInt>, dx: usize, dy: usize, margin: usize) -> Result<Self> {
        let spec = Self { terms, dx, dy, margin };
        spec.validate()?;
        Ok(spec)
    }

    pub fn unknowns(&self) -> usize {
        (self.dx + 1) * (self.dy + 1)
    }

    /// Terms needed for these bounds and margin.
    pub fn required_terms(&self) -> usize {
        self.unknowns() + self.margin
    }

    pub fn validate(&self) -> Result<()> {
        if self.margin < MIN_MARGIN {
            return Err(Error::Domain(format!("margin {} is below the minimum {MIN_MARGIN}", self.margin)));
        }
        if self.terms.len() < self.required_terms() {
            return Err(Error::Domain(format!(
                "bounds (dx, dy) = ({}, {}) with margin {} need N >= {} terms, got {}",
                self.dx,
                self.dy,
                self.margin,
                self.required_terms(),
                self.terms.len()
            )));
        }
        Ok(())
    }
}

/// Truncated powers `U^0, …, U^dy` of the integer series `terms`.
fn powers(terms: &[BigInt], dy: usize) -> Vec<Vec<BigInt>> {
    let n = terms.len();
    let mut out = Vec::with_capacity(dy + 1);
    let mut cur = vec![BigInt::zero(); n];
    if n > 0 {
        cur[0] = BigInt::one();
    }
    for _ in 0..=dy {
        let next = (0..n)
            .map(|m| (0..=m).map(|a| &cur[a] * &terms[m - a]).sum())
            .collect();
        out.push(core::mem::replace(&mut cur, next));
    }
    out
}

/// Reduced row echelon form in place; returns the pivot column of each row.
fn rref(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        m[row].iter_mut().for_each(|x| *x *= &inv);
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let f = other[col].clone();
                other.iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= &f * y);
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Finds an equation with `deg_x ≤ dx`, `deg_Y ≤ dy` annihilating the
/// series of `spec.terms`.
///
/// The kernel is computed from the first `N - margin` coefficients. Among
/// kernel vectors the one whose largest monomial is smallest under
/// `(i + j, j, i)` is returned, normalized, and only if it also annihilates
/// the withheld terms. Otherwise the result is `None`.
pub fn guess_algebraic(spec: &GuessSpec) -> Result<Option<AlgebraicEquation>> {
    spec.validate()?;
    let n = spec.terms.len();
    let rows = n - spec.margin;
    let pow = powers(&spec.terms, spec.dy);
    let mut monomials: Vec<(usize, usize)> =
        (0..=spec.dy).flat_map(|j| (0..=spec.dx).map(move |i| (i, j))).collect();
    monomials.sort_by_key(|&(i, j)| (i + j, j, i));
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            monomials
                .iter()
                .map(|&(i, j)| {
                    if r >= i {
                        BigRational::from_integer(pow[j][r - i].clone())
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let cols = monomials.len();
    let pivots = rref(&mut m, cols);
    let Some(free) = (0..cols).find(|c| !pivots.contains(c)) else {
        return Ok(None);
    };
    let mut kernel = vec![BigRational::zero(); cols];
    kernel[free] = BigRational::one();
    for (r, &p) in pivots.iter().enumerate() {
        kernel[p] = -m[r][free].clone();
    }
    let lcm = kernel.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut grid = vec![vec![BigInt::zero(); spec.dx + 1]; spec.dy + 1];
    for (&(i, j), c) in monomials.iter().zip(&kernel) {
        grid[j][i] = (c * BigRational::from_integer(lcm.clone())).to_integer();
    }
    let eq = AlgebraicEquation::from_grid(grid)?;
    Ok(verify_annihilation(&eq, &spec.terms).then_some(eq))
}

/// Whether `eq` annihilates the series of `terms` through order `terms.len() - 1`.
pub fn verify_annihilation(eq: &AlgebraicEquation, terms: &[BigInt]) -> bool {
    !terms.is_empty() && algebraic_residual(eq, &PowerSeries::from_integers(terms)).is_zero()
}

/// `λ^dy P(x, Y/λ)`, normalized: the equation satisfied by `λU` when `P(x, U) = 0`.
pub fn scale_solution(eq: &AlgebraicEquation, lambda: &BigInt) -> Result<AlgebraicEquation> {
    let dy = eq.y_degree();
    let rows: Vec<IntPoly> = eq
        .y_coefficients()
        .iter()
        .enumerate()
        .map(|(j, p)| p.scale(&num_traits::pow(lambda.clone(), dy - j)))
        .collect();
    AlgebraicEquation::new(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn fib(count: usize) -> Vec<BigInt> {
        let mut f = vec![BigInt::from(1), BigInt::from(2)];
        while f.len() < count {
            let next = &f[f.len() - 1] + &f[f.len() - 2];
            f.push(next);
        }
        f.truncate(count);
        f
    }

    #[test]
    fn fibonacci_equation() {
        let spec = GuessSpec::new(fib(15), 2, 1, DEFAULT_MARGIN).unwrap();
        let eq = guess_algebraic(&spec).unwrap().unwrap();
        assert_eq!(eq.to_expression(), "x^2*Y + x*Y - Y + x + 1");
        assert!(verify_annihilation(&eq, &fib(40)));
    }

    #[test]
    fn spec_violations() {
        assert!(GuessSpec::new(fib(9), 2, 1, DEFAULT_MARGIN).is_err());
        assert!(GuessSpec::new(fib(20), 2, 1, 1).is_err());
        let msg = format!("{}", GuessSpec::new(fib(9), 2, 1, 4).unwrap_err());
        assert!(msg.contains("N >= 10"), "{msg}");
    }

    #[test]
    fn trivial_kernel_and_checks() {
        // 2^n is not annihilated by anything with dx = 0, dy = 1 except 0
        let pow2: Vec<BigInt> = (0..8).map(|k| BigInt::from(1i64 << k)).collect();
        assert_eq!(guess_algebraic(&GuessSpec::new(pow2, 0, 1, 4).unwrap()).unwrap(), None);
        let y_minus_one = AlgebraicEquation::new(vec![IntPoly::from_i64s(&[-1]), IntPoly::one()]).unwrap();
        assert!(verify_annihilation(&y_minus_one, &big(&[1, 0, 0, 0])));
        assert!(!verify_annihilation(&y_minus_one, &big(&[1, 0, 1, 0])));
        assert!(!verify_annihilation(&y_minus_one, &[]));
    }
}
