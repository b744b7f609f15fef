use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntPoly, PowerSeries, RatFunc};
use crate::error::{Error, Result};

/// `P(x, Y) = Σ_j p_j(x) Y^j` with integer coefficients.
///
/// Stored as one polynomial in `x` per power of `Y`. Normalized: content one,
/// and the coefficient with the largest `(j, i)` is positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicEquation {
    rows: Vec<IntPoly>,
}

impl AlgebraicEquation {
    /// `rows[j]` is the coefficient of `Y^j`. The zero polynomial is rejected.
    pub fn new(mut rows: Vec<IntPoly>) -> Result<Self> {
        while rows.last().is_some_and(IntPoly::is_zero) {
            rows.pop();
        }
        let Some(top) = rows.last() else {
            return Err(Error::Domain("the zero polynomial is not an equation".into()));
        };
        let mut g = rows.iter().fold(BigInt::zero(), |g, r| g.gcd(&r.content()));
        if top.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        if !g.is_one() {
            rows = rows.iter().map(|r| r.div_scalar_exact(&g)).collect();
        }
        Ok(Self { rows })
    }

    /// Builds from a grid `c[j][i]`, the coefficient of `x^i Y^j`.
    pub fn from_grid(grid: Vec<Vec<BigInt>>) -> Result<Self> {
        Self::new(grid.into_iter().map(IntPoly::new).collect())
    }

    /// `den(x) Y - num(x)`, the linear equation of a rational function.
    pub fn from_rational(f: &RatFunc) -> Self {
        Self::new(alloc::vec![-f.numerator(), f.denominator().clone()])
            .unwrap_or_else(|_| Self { rows: alloc::vec![IntPoly::one()] })
    }

    pub fn y_coefficients(&self) -> &[IntPoly] {
        &self.rows
    }

    /// Coefficient of `x^i Y^j`.
    pub fn coefficient(&self, i: usize, j: usize) -> BigInt {
        self.rows.get(j).map(|r| r.coeff(i)).unwrap_or_default()
    }

    pub fn y_degree(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn x_degree(&self) -> usize {
        self.rows.iter().filter_map(IntPoly::degree).max().unwrap_or(0)
    }

    /// Dense grid `c[j][i]` padded to `x_degree() + 1` columns.
    pub fn grid(&self) -> Vec<Vec<BigInt>> {
        let dx = self.x_degree();
        self.rows.iter().map(|r| (0..=dx).map(|i| r.coeff(i)).collect()).collect()
    }

    /// Expanded form with monomials ordered by descending `(j, i)`, e.g. `x*Y^3 - 2*Y^2 + 3*Y - 1`.
    pub fn to_expression(&self) -> String {
        let mut out = String::new();
        for (j, row) in self.rows.iter().enumerate().rev() {
            for (i, c) in row.coeffs().iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                write_monomial(&mut out, c, i, j);
            }
        }
        out
    }
}

fn write_monomial(out: &mut String, c: &BigInt, i: usize, j: usize) {
    let first = out.is_empty();
    if c.is_negative() {
        out.push_str(if first { "-" } else { " - " });
    } else if !first {
        out.push_str(" + ");
    }
    let mag = c.abs();
    let mut factors: Vec<String> = Vec::new();
    if !mag.is_one() || (i == 0 && j == 0) {
        let mut s = String::new();
        let _ = write!(s, "{mag}");
        factors.push(s);
    }
    for (var, e) in [("x", i), ("Y", j)] {
        match e {
            0 => {}
            1 => factors.push(var.into()),
            _ => {
                let mut s = String::new();
                let _ = write!(s, "{var}^{e}");
                factors.push(s);
            }
        }
    }
    out.push_str(&factors.join("*"));
}

impl fmt::Debug for AlgebraicEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expression())
    }
}

impl fmt::Display for AlgebraicEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expression())
    }
}

/// `Σ c_ij x^i u^j`, truncated to the order of `u`.
pub fn algebraic_residual(eq: &AlgebraicEquation, u: &PowerSeries) -> PowerSeries {
    let order = u.order();
    let mut acc = PowerSeries::zero(order);
    for row in eq.rows.iter().rev() {
        acc = acc.mul(u).add(&PowerSeries::from_poly(row, order));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn normalization_and_text() {
        let cubic = AlgebraicEquation::new(vec![p(&[1]), p(&[-3]), p(&[2]), p(&[0, -1])]).unwrap();
        assert_eq!(cubic.to_expression(), "x*Y^3 - 2*Y^2 + 3*Y - 1");
        assert_eq!(cubic.coefficient(1, 3), BigInt::from(1));
        assert_eq!(cubic.x_degree(), 1);
        assert_eq!(cubic.y_degree(), 3);
        let scaled = AlgebraicEquation::new(vec![p(&[4]), p(&[-2, 6])]).unwrap();
        assert_eq!(scaled.y_coefficients(), &[p(&[2]), p(&[-1, 3])]);
        assert!(AlgebraicEquation::new(vec![IntPoly::zero()]).is_err());
    }

    #[test]
    fn residual_examples() {
        let ones = PowerSeries::from_integers(&[BigInt::from(1), BigInt::zero(), BigInt::zero()]);
        let y_minus_one = AlgebraicEquation::new(vec![p(&[-1]), p(&[1])]).unwrap();
        assert!(algebraic_residual(&y_minus_one, &ones).is_zero());
        let fib: Vec<BigInt> = [1, 2, 3, 5, 8, 13, 21, 34].map(BigInt::from).to_vec();
        let eq = AlgebraicEquation::new(vec![p(&[-1, -1]), p(&[1, -1, -1])]).unwrap();
        assert!(algebraic_residual(&eq, &PowerSeries::from_integers(&fib)).is_zero());
        let bad = AlgebraicEquation::new(vec![p(&[-1, -1]), p(&[1, -1, -2])]).unwrap();
        assert!(!algebraic_residual(&bad, &PowerSeries::from_integers(&fib)).is_zero());
    }
}
