//! Rational generating functions for two restricted families of
//! `(n+1,n+2)`-cores.
//!
//! * `F_k`: labels of the ideal contain no run of more than `k` consecutive
//!   integers, i.e. no part is repeated more than `k` times.
//! * `G_k`: odd parts only, with the ideal confined to the `k` outermost
//!   diagonals.
//!
//! `G_k` is computed from a finite automaton. An ideal of `A_n` is built
//! from one of `A_{n-1}` by shifting it one row up and adding a run of
//! x-axis points; the state records the profile in label parities, the
//! number of occupied x-axis points and the parity of `n`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{catalan, CountSequence};
use crate::profiledp::Profile;
use crate::series::{series_expand, IntPoly, LinearSystem, RatFunc, solve_linear};

/// Parts repeated at most `k` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepeatFamily {
    pub k: usize,
    /// `P_k = Σ_{j ≤ k} Catalan(j) x^j`.
    pub base_polynomial: IntPoly,
    pub gf: RatFunc,
}

impl RepeatFamily {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("repeat bound k must be at least 1".into()));
        }
        let base = IntPoly::new((0..=k).map(|j| BigInt::from(catalan(j))).collect());
        // F = P + x P F
        let den = IntPoly::one() - IntPoly::x() * &base;
        let gf = RatFunc::new(base.clone(), den)?;
        Ok(Self { k, base_polynomial: base, gf })
    }
}

pub fn repeats_gf(k: usize) -> Result<RatFunc> {
    Ok(RepeatFamily::new(k)?.gf)
}

/// Coefficients `f_0, …, f_{count-1}` of `F_k` by series expansion.
pub fn repeats_terms(k: usize, count: usize) -> Result<CountSequence> {
    let gf = repeats_gf(k)?;
    let terms = naturals(&series_expand(&gf, count)?.integer_coeffs())?;
    Ok(CountSequence::new(format!("repeats_at_most_{k}"), 0, terms))
}

/// Same coefficients from `f_n = Σ_{j=0}^{min(k,n)} Catalan(j) f_{n-1-j}`, `f_{-1} = 1`.
pub fn repeats_terms_by_recurrence(k: usize, count: usize) -> Result<CountSequence> {
    if k == 0 {
        return Err(Error::Domain("repeat bound k must be at least 1".into()));
    }
    let cat: Vec<BigUint> = (0..=k).map(catalan).collect();
    // f[0] holds f_{-1}
    let mut f = vec![BigUint::from(1u8)];
    for n in 0..count {
        let term = (0..=k.min(n)).map(|j| &cat[j] * &f[n - j]).sum();
        f.push(term);
    }
    Ok(CountSequence::new(format!("repeats_at_most_{k}"), 0, f.split_off(1)))
}

fn naturals(coeffs: &Option<Vec<BigInt>>) -> Result<Vec<BigUint>> {
    let coeffs = coeffs
        .as_ref()
        .ok_or_else(|| Error::Internal("generating function has non-integer coefficients".into()))?;
    coeffs
        .iter()
        .map(|c| {
            c.to_biguint()
                .ok_or_else(|| Error::Internal("generating function has a negative coefficient".into()))
        })
        .collect()
}

/// Type of an ideal confined to the outer `k` diagonals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagonalTypeState {
    /// Parity of the lattice order `n`.
    pub parity: u8,
    /// `(first, last)` label parities per occupied diagonal, outermost first.
    pub profile: Profile,
    /// Number of occupied x-axis points.
    pub axis: usize,
}

impl DiagonalTypeState {
    /// The empty ideal of `A_0`.
    pub const START: DiagonalTypeState = DiagonalTypeState { parity: 0, profile: Profile::EMPTY, axis: 0 };

    /// Odd first label and opposite parities across every diagonal boundary.
    pub fn is_good(&self) -> bool {
        let pairs = self.profile.pairs();
        match pairs.first() {
            None => true,
            Some(&(first, _)) => first == 1 && pairs.windows(2).all(|w| w[0].1 != w[1].0),
        }
    }

    /// States of `A_{n+1}` obtained by shifting this ideal up one row and
    /// adding `0..=min(k, axis+1)` x-axis points, with parity alternation
    /// inside each diagonal enforced.
    pub fn successors(&self, k: usize) -> Vec<DiagonalTypeState> {
        let parity = 1 - self.parity;
        let old = self.profile.pairs();
        let mut out = Vec::new();
        'grow: for axis in 0..=k.min(self.axis + 1) {
            let depth = axis.max(old.len());
            let mut pairs = Vec::with_capacity(depth);
            for d in 0..depth {
                // shifting up a row moves labels by n+2 on diagonal d, i.e. parity flips on even d
                let flip = ((d + 1) & 1) as u8;
                let shifted = old.get(d).map(|&(a, b)| (a ^ flip, b ^ flip));
                if d < axis {
                    let xc = ((1 + parity as usize * d) & 1) as u8;
                    match shifted {
                        Some((a, _)) if a == xc => continue 'grow,
                        Some((_, b)) => pairs.push((xc, b)),
                        None => pairs.push((xc, xc)),
                    }
                } else if let Some(p) = shifted {
                    pairs.push(p);
                }
            }
            let profile = Profile::new(&pairs).unwrap_or(Profile::EMPTY);
            out.push(DiagonalTypeState { parity, profile, axis });
        }
        out
    }
}

/// Reachable state space for confinement depth `k`, in breadth-first order
/// from [`DiagonalTypeState::START`], with the successor indices of each state.
pub fn odd_diag_automaton(k: usize) -> Result<(Vec<DiagonalTypeState>, Vec<Vec<usize>>)> {
    if k == 0 {
        return Err(Error::Domain("diagonal bound k must be at least 1".into()));
    }
    if k > crate::profiledp::MAX_PROFILE_LEN {
        return Err(Error::Domain(format!(
            "diagonal bound k = {k} exceeds {}",
            crate::profiledp::MAX_PROFILE_LEN
        )));
    }
    let mut states = vec![DiagonalTypeState::START];
    let mut index: HashMap<DiagonalTypeState, usize> = HashMap::new();
    index.insert(DiagonalTypeState::START, 0);
    let mut succ = Vec::new();
    let mut at = 0;
    while at < states.len() {
        let next: Vec<usize> = states[at]
            .successors(k)
            .into_iter()
            .map(|s| {
                *index.entry(s).or_insert_with(|| {
                    states.push(s);
                    states.len() - 1
                })
            })
            .collect();
        succ.push(next);
        at += 1;
    }
    Ok((states, succ))
}

pub fn odd_diag_states(k: usize) -> Result<Vec<DiagonalTypeState>> {
    Ok(odd_diag_automaton(k)?.0)
}

/// Coarsest partition of the automaton that keeps goodness and the number of
/// transitions into each block. Returns the block of every state.
fn lump(states: &[DiagonalTypeState], succ: &[Vec<usize>]) -> Vec<usize> {
    let mut block: Vec<usize> = states.iter().map(|s| usize::from(s.is_good())).collect();
    let mut blocks = if block.contains(&0) && block.contains(&1) { 2 } else { 1 };
    loop {
        let mut ids: HashMap<(usize, Vec<(usize, usize)>), usize> = HashMap::new();
        let next: Vec<usize> = (0..states.len())
            .map(|s| {
                let mut counts: Vec<(usize, usize)> = Vec::new();
                let mut targets: Vec<usize> = succ[s].iter().map(|&t| block[t]).collect();
                targets.sort_unstable();
                for t in targets {
                    match counts.last_mut() {
                        Some((b, c)) if *b == t => *c += 1,
                        _ => counts.push((t, 1)),
                    }
                }
                let fresh = ids.len();
                *ids.entry((block[s], counts)).or_insert(fresh)
            })
            .collect();
        let count = ids.len();
        block = next;
        if count == blocks {
            return block;
        }
        blocks = count;
    }
}

/// Lumped type system: one unknown per block of equivalent states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeSystem {
    /// `transitions[b]` lists `(b', m)`: each state of block `b` has `m` successors in `b'`.
    pub transitions: Vec<Vec<(usize, u64)>>,
    pub good: Vec<bool>,
    pub start: usize,
}

impl TypeSystem {
    pub fn len(&self) -> usize {
        self.good.len()
    }

    pub fn is_empty(&self) -> bool {
        self.good.is_empty()
    }

    /// `W_b - x Σ m(b→b') W_{b'} = [b good]`.
    pub fn linear_system(&self) -> Result<LinearSystem> {
        let size = self.len();
        let mut matrix = vec![vec![RatFunc::zero(); size]; size];
        for (b, row) in self.transitions.iter().enumerate() {
            matrix[b][b] = RatFunc::one();
            for &(c, m) in row {
                let m = i64::try_from(m).map_err(|_| Error::Internal("transition multiplicity overflow".into()))?;
                matrix[b][c] = &matrix[b][c] - &RatFunc::from_poly(IntPoly::from_i64s(&[0, m]));
            }
        }
        let rhs = self.good.iter().map(|&g| RatFunc::from_int(i64::from(g))).collect();
        LinearSystem::new(matrix, rhs, (0..size).map(|b| format!("W{b}")).collect())
    }

    fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.transitions
            .iter()
            .map(|row| row.iter().map(|&(c, m)| &v[c] * BigInt::from(m)).sum())
            .collect()
    }
}

/// Lumps the automaton for depth `k` into its [`TypeSystem`].
pub fn odd_diag_type_system(k: usize) -> Result<TypeSystem> {
    let (states, succ) = odd_diag_automaton(k)?;
    let block = lump(&states, &succ);
    let size = block.iter().max().map_or(0, |b| b + 1);
    let mut rep = vec![usize::MAX; size];
    for (s, &b) in block.iter().enumerate() {
        if rep[b] == usize::MAX {
            rep[b] = s;
        }
    }
    let mut transitions = Vec::with_capacity(size);
    let mut good = Vec::with_capacity(size);
    for &s in &rep {
        let mut row: Vec<(usize, u64)> = Vec::new();
        let mut targets: Vec<usize> = succ[s].iter().map(|&t| block[t]).collect();
        targets.sort_unstable();
        for t in targets {
            match row.last_mut() {
                Some((b, m)) if *b == t => *m += 1,
                _ => row.push((t, 1)),
            }
        }
        transitions.push(row);
        good.push(states[s].is_good());
    }
    Ok(TypeSystem { transitions, good, start: block[0] })
}

/// Projects `(I - xM) W = u` onto the Krylov space spanned by `u, Mu, M²u, …`.
///
/// With `v_i = M^i u` for `i < d` a basis and `M v_{d-1} = Σ c_i v_i`, the
/// start component equals `Σ v_i[start] Z_i` where `(I - xA) Z = e_0` and
/// `A` is the companion matrix of `c`. Returns that system and the weights.
fn krylov_system(ts: &TypeSystem) -> Result<(LinearSystem, Vec<BigInt>)> {
    let mut krylov: Vec<Vec<BigInt>> = Vec::new();
    let mut echelon: Vec<(usize, Vec<BigInt>)> = Vec::new();
    let mut v: Vec<BigInt> = ts.good.iter().map(|&g| BigInt::from(u8::from(g))).collect();
    loop {
        let mut r = v.clone();
        for (p, b) in &echelon {
            if !r[*p].is_zero() {
                let (bp, rp) = (b[*p].clone(), r[*p].clone());
                r = r.iter().zip(b).map(|(x, y)| &bp * x - &rp * y).collect();
                let g = r.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
                if !g.is_zero() && !g.is_one() {
                    r.iter_mut().for_each(|x| *x /= &g);
                }
            }
        }
        match r.iter().position(|x| !x.is_zero()) {
            Some(p) => echelon.push((p, r)),
            None => break,
        }
        let next = ts.apply(&v);
        krylov.push(core::mem::replace(&mut v, next));
    }
    let d = krylov.len();
    if d == 0 {
        return Err(Error::Internal("type system has no good states".into()));
    }
    // c solves Σ c_i v_i = v_d, an overdetermined but consistent constant system
    let cols: Vec<Vec<RatFunc>> = (0..ts.len())
        .map(|row| krylov.iter().map(|kv| RatFunc::from_poly(IntPoly::constant(kv[row].clone()))).collect())
        .collect();
    let rhs = v.iter().map(|x| RatFunc::from_poly(IntPoly::constant(x.clone()))).collect();
    let c = solve_linear(&LinearSystem::new(cols, rhs, (0..d).map(|i| format!("c{i}")).collect())?)?;
    let mut matrix = vec![vec![RatFunc::zero(); d]; d];
    let minus_x = RatFunc::from_poly(IntPoly::from_i64s(&[0, -1]));
    for (i, row) in matrix.iter_mut().enumerate() {
        row[i] = RatFunc::one();
        // A e_j = e_{j+1} for j < d-1, A e_{d-1} = c
        if i > 0 {
            row[i - 1] = &row[i - 1] + &minus_x;
        }
        row[d - 1] = &row[d - 1] + &(&minus_x * &c[i]);
    }
    let mut rhs = vec![RatFunc::zero(); d];
    rhs[0] = RatFunc::one();
    let weights = krylov.iter().map(|kv| kv[ts.start].clone()).collect();
    Ok((LinearSystem::new(matrix, rhs, (0..d).map(|i| format!("Z{i}")).collect())?, weights))
}

fn singular_is_internal(e: Error) -> Error {
    match e {
        Error::Singular { row } => Error::Internal(format!("type system is singular at row {row}")),
        other => other,
    }
}

/// `G_k`, solved on the Krylov projection of the lumped type system.
pub fn odd_diag_gf(k: usize) -> Result<RatFunc> {
    let ts = odd_diag_type_system(k)?;
    let (sys, weights) = krylov_system(&ts)?;
    let z = solve_linear(&sys).map_err(singular_is_internal)?;
    Ok(z.iter()
        .zip(&weights)
        .filter(|(_, w)| !w.is_zero())
        .fold(RatFunc::zero(), |acc, (zi, w)| acc + zi * &RatFunc::from_poly(IntPoly::constant(w.clone())))
    )
}

/// `G_k` by solving the full lumped type system; cubic in its size.
pub fn odd_diag_gf_direct(k: usize) -> Result<RatFunc> {
    let ts = odd_diag_type_system(k)?;
    let solution = solve_linear(&ts.linear_system()?).map_err(singular_is_internal)?;
    Ok(solution[ts.start].clone())
}

/// Coefficients of `G_k` by series expansion of [`odd_diag_gf`].
pub fn odd_diag_terms(k: usize, count: usize) -> Result<CountSequence> {
    let gf = odd_diag_gf(k)?;
    let terms = naturals(&series_expand(&gf, count)?.integer_coeffs())?;
    Ok(CountSequence::new(format!("odd_parts_outer_{k}_diagonals"), 0, terms))
}

/// Same coefficients by iterating the unlumped automaton.
pub fn odd_diag_terms_by_transfer(k: usize, count: usize) -> Result<CountSequence> {
    let (states, succ) = odd_diag_automaton(k)?;
    let mut weights = vec![BigUint::default(); states.len()];
    weights[0] = BigUint::from(1u8);
    let mut terms = Vec::with_capacity(count);
    for _ in 0..count {
        terms.push(
            states
                .iter()
                .zip(&weights)
                .filter(|(s, _)| s.is_good())
                .map(|(_, w)| w)
                .sum(),
        );
        let mut next = vec![BigUint::default(); states.len()];
        for (s, w) in weights.iter().enumerate() {
            for &t in &succ[s] {
                next[t] += w;
            }
        }
        weights = next;
    }
    Ok(CountSequence::new(format!("odd_parts_outer_{k}_diagonals"), 0, terms))
}
