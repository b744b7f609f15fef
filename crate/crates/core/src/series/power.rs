use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntPoly, RatFunc};
use crate::error::{Error, Result};

/// Power series known modulo `x^order`: exactly `order` rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        Self { coeffs }
    }

    pub fn from_integers(terms: &[BigInt]) -> Self {
        Self::new(terms.iter().map(|t| BigRational::from_integer(t.clone())).collect())
    }

    pub fn from_naturals(terms: &[BigUint]) -> Self {
        Self::new(terms.iter().map(|t| BigRational::from_integer(BigInt::from(t.clone()))).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![BigRational::zero(); order])
    }

    pub fn one(order: usize) -> Self {
        Self::from_poly(&IntPoly::one(), order)
    }

    /// Truncation of a polynomial to `order` coefficients.
    pub fn from_poly(p: &IntPoly, order: usize) -> Self {
        Self::new((0..order).map(|k| BigRational::from_integer(p.coeff(k))).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&BigRational> {
        self.coeffs.get(k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().take(order).cloned().collect())
    }

    /// Coefficients as integers, if all of them are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn add(&self, rhs: &PowerSeries) -> PowerSeries {
        Self::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, rhs: &PowerSeries) -> PowerSeries {
        Self::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }

    /// Product truncated to the smaller of the two orders.
    pub fn mul(&self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `p * self`, keeping this series' order.
    pub fn mul_poly(&self, p: &IntPoly) -> PowerSeries {
        self.mul(&Self::from_poly(p, self.order()))
    }

    pub fn scale(&self, c: &BigRational) -> PowerSeries {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: usize) -> PowerSeries {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "] + O(x^{})", self.order())
    }
}

/// Taylor coefficients `0..order` of `f`, by the recurrence read off the denominator.
pub fn series_expand(f: &RatFunc, order: usize) -> Result<PowerSeries> {
    let den = f.denominator();
    let d0 = den.constant_term();
    if d0.is_zero() {
        return Err(Error::Domain("denominator vanishes at x = 0 (pole at the origin)".into()));
    }
    let num = f.numerator();
    let d0 = BigRational::from_integer(d0);
    let den_tail: Vec<(usize, BigRational)> = den
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, BigRational::from_integer(c.clone())))
        .collect();
    let mut out: Vec<BigRational> = Vec::with_capacity(order);
    for m in 0..order {
        let mut acc = BigRational::from_integer(num.coeff(m));
        for (k, c) in &den_tail {
            if *k > m {
                break;
            }
            acc -= c * &out[m - k];
        }
        out.push(if d0.is_one() { acc } else { acc / &d0 });
    }
    Ok(PowerSeries::new(out))
}
