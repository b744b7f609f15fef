use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{IntPoly, RatFunc};
use crate::error::{Error, Result};

/// `matrix * unknowns = rhs` over rational functions in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    matrix: Vec<Vec<RatFunc>>,
    rhs: Vec<RatFunc>,
    unknowns: Vec<String>,
}

impl LinearSystem {
    /// Requires one right-hand side per row, one column per unknown, and at
    /// least as many rows as unknowns.
    pub fn new(matrix: Vec<Vec<RatFunc>>, rhs: Vec<RatFunc>, unknowns: Vec<String>) -> Result<Self> {
        if matrix.len() != rhs.len() {
            return Err(Error::Contract(format!(
                "{} rows but {} right-hand sides",
                matrix.len(),
                rhs.len()
            )));
        }
        if let Some(row) = matrix.iter().position(|r| r.len() != unknowns.len()) {
            return Err(Error::Contract(format!(
                "row {row} has {} entries, expected {}",
                matrix[row].len(),
                unknowns.len()
            )));
        }
        if matrix.len() < unknowns.len() {
            return Err(Error::Contract(format!(
                "underdetermined: {} equations for {} unknowns",
                matrix.len(),
                unknowns.len()
            )));
        }
        Ok(Self { matrix, rhs, unknowns })
    }

    pub fn matrix(&self) -> &[Vec<RatFunc>] {
        &self.matrix
    }

    pub fn rhs(&self) -> &[RatFunc] {
        &self.rhs
    }

    pub fn unknowns(&self) -> &[String] {
        &self.unknowns
    }

    /// `row · solution - rhs` for every equation.
    pub fn residuals(&self, solution: &[RatFunc]) -> Vec<RatFunc> {
        self.matrix
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| {
                let lhs = row
                    .iter()
                    .zip(solution)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(RatFunc::zero(), |acc, (a, s)| acc + a * s);
                lhs - b
            })
            .collect()
    }
}

/// Clears the denominators of one equation, returning polynomial entries.
fn polynomial_row(row: &[RatFunc], b: &RatFunc) -> Vec<IntPoly> {
    let mut common = IntPoly::one();
    for f in row.iter().chain(core::iter::once(b)) {
        let d = f.denominator();
        if d.degree() == Some(0) && common.degree() == Some(0) && d == &common {
            continue;
        }
        let g = common.gcd(d);
        let prod = &common * d;
        common = prod.div_exact(&g).unwrap_or(prod);
    }
    row.iter()
        .chain(core::iter::once(b))
        .map(|f| {
            let scale = common.div_exact(f.denominator()).unwrap_or_else(IntPoly::zero);
            f.numerator() * &scale
        })
        .collect()
}

/// Exact solution by fraction-free (Bareiss) elimination over `Z[x]`.
///
/// Every intermediate division is exact, and the solution is only turned
/// into normalized rational functions at the end. A zero pivot column is
/// reported as [`Error::Singular`] with the row where elimination stopped;
/// an overdetermined system whose surplus equations disagree is a domain error.
pub fn solve_linear(sys: &LinearSystem) -> Result<Vec<RatFunc>> {
    let n = sys.unknowns.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let rows = sys.matrix.len();
    let mut m: Vec<Vec<IntPoly>> = sys
        .matrix
        .iter()
        .zip(&sys.rhs)
        .map(|(row, b)| polynomial_row(row, b))
        .collect();
    let mut prev = IntPoly::one();
    for k in 0..n {
        let pivot = (k..rows)
            .filter(|&r| !m[r][k].is_zero())
            .min_by_key(|&r| {
                let nonzero = m[r][k + 1..n].iter().filter(|e| !e.is_zero()).count();
                (m[r][k].degree(), nonzero)
            })
            .ok_or(Error::Singular { row: k })?;
        m.swap(k, pivot);
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pk = &pivot_row[k];
        for row in tail.iter_mut() {
            let lead = core::mem::take(&mut row[k]);
            for j in k + 1..=n {
                let mut v = pk * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v = v - &lead * &pivot_row[j];
                }
                row[j] = v
                    .div_exact(&prev)
                    .ok_or_else(|| Error::Internal("inexact fraction-free division".into()))?;
            }
        }
        prev = pk.clone();
    }
    if let Some(extra) = (n..rows).find(|&r| !m[r][n].is_zero()) {
        return Err(Error::Domain(format!("inconsistent system: equation {extra} is not implied")));
    }
    // y_k = det * x_k is a polynomial; back-substitute on it to stay in Z[x].
    let det = m[n - 1][n - 1].clone();
    let mut y: Vec<IntPoly> = alloc::vec![IntPoly::zero(); n];
    for k in (0..n).rev() {
        let mut acc = &m[k][n] * &det;
        for j in k + 1..n {
            if !m[k][j].is_zero() {
                acc = acc - &m[k][j] * &y[j];
            }
        }
        y[k] = acc
            .div_exact(&m[k][k])
            .ok_or_else(|| Error::Internal("back substitution left a remainder".into()))?;
    }
    y.into_iter().map(|yk| RatFunc::new(yk, det.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn c(v: i64) -> RatFunc {
        RatFunc::from_int(v)
    }

    fn names(k: usize) -> Vec<String> {
        (0..k).map(|i| format!("w{i}")).collect()
    }

    #[test]
    fn identity_system() {
        let f = vec![RatFunc::x(), RatFunc::new(IntPoly::one(), IntPoly::from_i64s(&[1, -1])).unwrap()];
        let sys = LinearSystem::new(vec![vec![c(1), c(0)], vec![c(0), c(1)]], f.clone(), names(2)).unwrap();
        assert_eq!(solve_linear(&sys).unwrap(), f);
    }

    #[test]
    fn hand_solved_rational_system() {
        // x + y = 3, x - y = 1  =>  x = 2, y = 1
        let sys = LinearSystem::new(vec![vec![c(1), c(1)], vec![c(1), c(-1)]], vec![c(3), c(1)], names(2)).unwrap();
        assert_eq!(solve_linear(&sys).unwrap(), vec![c(2), c(1)]);
        // w = 1 + x w  =>  w = 1/(1-x)
        let one_minus_x = RatFunc::from_poly(IntPoly::from_i64s(&[1, -1]));
        let sys = LinearSystem::new(vec![vec![one_minus_x]], vec![c(1)], names(1)).unwrap();
        let sol = solve_linear(&sys).unwrap();
        assert_eq!(sol[0], RatFunc::new(IntPoly::one(), IntPoly::from_i64s(&[1, -1])).unwrap());
        assert!(sys.residuals(&sol).iter().all(RatFunc::is_zero));
    }

    #[test]
    fn singular_and_inconsistent() {
        let sys = LinearSystem::new(vec![vec![c(1), c(2)], vec![c(2), c(4)]], vec![c(1), c(2)], names(2)).unwrap();
        assert_eq!(solve_linear(&sys), Err(Error::Singular { row: 1 }));
        let over = LinearSystem::new(vec![vec![c(1)], vec![c(2)]], vec![c(1), c(3)], names(1)).unwrap();
        assert!(matches!(solve_linear(&over), Err(Error::Domain(_))));
        let consistent = LinearSystem::new(vec![vec![c(1)], vec![c(2)]], vec![c(1), c(2)], names(1)).unwrap();
        assert_eq!(solve_linear(&consistent).unwrap(), vec![c(1)]);
        assert!(LinearSystem::new(vec![vec![c(1), c(1)]], vec![c(1)], names(2)).is_err());
        assert!(LinearSystem::new(vec![vec![c(1)]], vec![], vec!["a".to_string()]).is_err());
    }
}
