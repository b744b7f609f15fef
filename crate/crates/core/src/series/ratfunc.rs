use alloc::format;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Quotient of integer polynomials in lowest terms.
///
/// The denominator has a positive leading coefficient and the pair has
/// content one, so two equal functions are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    /// Normalizes `num / den`. A zero denominator is a domain error.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = match (num.div_exact(&g), den.div_exact(&g)) {
            (Some(n), Some(d)) => (n, d),
            _ => return Err(Error::Internal("polynomial gcd does not divide".into())),
        };
        let content = num.content().gcd(&den.content());
        if !content.is_zero() && content != BigInt::from(1) {
            num = num.div_scalar_exact(&content);
            den = den.div_scalar_exact(&content);
        }
        if den.leading().is_some_and(Signed::is_negative) {
            num = -num;
            den = -den;
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: IntPoly) -> Self {
        Self { num: p, den: IntPoly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(IntPoly::from_i64s(&[c]))
    }

    pub fn zero() -> Self {
        Self::from_poly(IntPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(IntPoly::one())
    }

    pub fn x() -> Self {
        Self::from_poly(IntPoly::x())
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Domain("division by the zero function".into()));
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// `(numerator)/(denominator)` in the human-readable polynomial syntax.
    pub fn to_expression(&self) -> String {
        format!("({})/({})", self.num.to_expression("x"), self.den.to_expression("x"))
    }

    fn normalized(num: IntPoly, den: IntPoly) -> Self {
        // Both operands were valid, so the denominator product is nonzero.
        Self::new(num, den).unwrap_or_else(|_| Self::zero())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expression())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expression())
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::normalized(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc { (&self).$m(&rhs) }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn normalization() {
        let f = RatFunc::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(f.numerator(), &p(&[1, 1]));
        assert_eq!(f.denominator(), &p(&[1]));
        let q = p(&[3, 0, 2, 7]);
        assert_eq!(RatFunc::new(q.clone(), q).unwrap(), RatFunc::one());
        let printed = RatFunc::new(-p(&[1, 1, 2]), p(&[-1, 1, 1, 2])).unwrap();
        assert_eq!(printed.numerator(), &-p(&[1, 1, 2]));
        assert_eq!(printed.denominator(), &p(&[-1, 1, 1, 2]));
        assert!(RatFunc::new(p(&[1]), IntPoly::zero()).is_err());
        assert_eq!(RatFunc::new(p(&[2, 4]), p(&[6])).unwrap().to_expression(), "(2*x + 1)/(3)");
    }

    #[test]
    fn field_operations() {
        let a = RatFunc::new(p(&[1]), p(&[1, -1])).unwrap();
        let b = RatFunc::new(p(&[1]), p(&[1, 1])).unwrap();
        let sum = &a + &b;
        assert_eq!(sum, RatFunc::new(p(&[2]), p(&[1, 0, -1])).unwrap());
        assert_eq!(&(&sum - &a) - &b, RatFunc::zero());
        assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
        assert!(a.checked_div(&RatFunc::zero()).is_err());
    }
}
