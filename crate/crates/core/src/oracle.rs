//! Brute-force ground truth.
//!
//! Everything here is deliberately naive: hook lengths are computed cell by
//! cell, `(s,t)`-cores come from down-closed subsets of the semigroup gaps,
//! and filtered counts walk every order ideal of `A_n`. The fast paths in
//! [`crate::profiledp`] and [`crate::families`] are tested against these.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::lattice::{catalan, ideal_to_partition, low_bits, supported, OrderIdeal};
use crate::{Error, Result};

/// A partition: non-increasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain(format!("partition parts must be positive: {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("partition parts must be non-increasing: {parts:?}")));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Partition whose first-column hook lengths are `beta` (any order,
    /// distinct): with `a_1 > ... > a_k`, part `m` is `a_m - (k - m)`.
    pub fn from_beta_set(beta: &[u64]) -> Self {
        let mut sorted = beta.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let k = sorted.len() as u64;
        let parts = sorted.iter().enumerate().map(|(m, &a)| a - (k - 1 - m as u64)).collect();
        Self { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width).map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u64).collect();
        Self { parts }
    }

    pub fn has_distinct_parts(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    pub fn has_odd_parts(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 1)
    }

    /// Largest number of times any part value occurs.
    pub fn max_multiplicity(&self) -> usize {
        self.parts.chunk_by(|a, b| a == b).map(<[u64]>::len).max().unwrap_or(0)
    }

    /// First-column hook lengths, decreasing.
    pub fn beta_set(&self) -> Vec<u64> {
        let k = self.parts.len() as u64;
        self.parts.iter().enumerate().map(|(m, &p)| p + (k - 1 - m as u64)).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("empty");
        }
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Hook length of every cell, row by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HookTable {
    rows: Vec<Vec<u64>>,
}

impl HookTable {
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn hook_set(&self) -> BTreeSet<u64> {
        self.rows.iter().flatten().copied().collect()
    }

    pub fn contains(&self, h: u64) -> bool {
        self.rows.iter().flatten().any(|&x| x == h)
    }
}

pub fn hook_lengths(p: &Partition) -> HookTable {
    let conj = p.conjugate();
    let rows = p
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &row)| {
            (0..row as usize)
                .map(|j| row + conj.parts()[j] - i as u64 - j as u64 - 1)
                .collect()
        })
        .collect();
    HookTable { rows }
}

/// No cell has hook length `s` or `t`.
pub fn is_st_core(p: &Partition, s: u64, t: u64) -> bool {
    let table = hook_lengths(p);
    !table.contains(s) && !table.contains(t)
}

/// Gaps of the numerical semigroup generated by coprime `s` and `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapPoset {
    pub s: u64,
    pub t: u64,
    pub gaps: Vec<u64>,
}

impl GapPoset {
    pub fn contains(&self, y: u64) -> bool {
        self.gaps.binary_search(&y).is_ok()
    }
}

pub fn semigroup_gaps(s: u64, t: u64) -> Result<GapPoset> {
    if s == 0 || t == 0 || s.gcd(&t) != 1 {
        return Err(Error::Domain(format!("({s},{t}) must be coprime positive integers")));
    }
    // every gap is at most the Frobenius number st - s - t
    let bound = (s * t).saturating_sub(s + t) as usize;
    let mut representable = vec![false; bound + 1];
    for y in 0..=bound {
        let yu = y as u64;
        representable[y] = y == 0
            || (yu >= s && representable[(yu - s) as usize])
            || (yu >= t && representable[(yu - t) as usize]);
    }
    let gaps = (0..=bound).filter(|&y| !representable[y]).map(|y| y as u64).collect();
    Ok(GapPoset { s, t, gaps })
}

/// Anderson's count `(s+t-1)! / (s! t!)`.
pub fn anderson_count(s: u64, t: u64) -> BigUint {
    let mut num = BigUint::from(1u32);
    for k in 1..=(s + t - 1) {
        num *= k;
    }
    let fact = |m: u64| (1..=m).fold(BigUint::from(1u32), |acc, k| acc * k);
    num / (fact(s) * fact(t))
}

/// All `(s,t)`-cores, from the down-closed subsets of the gap poset.
pub fn enumerate_st_cores(s: u64, t: u64) -> Result<Vec<Partition>> {
    let poset = semigroup_gaps(s, t)?;
    let max = poset.gaps.last().map_or(0, |&g| g as usize + 1);
    let mut chosen = vec![false; max];
    let mut current = Vec::new();
    let mut out = Vec::new();
    down_sets(&poset, 0, &mut chosen, &mut current, &mut out);
    Ok(out)
}

fn down_sets(poset: &GapPoset, idx: usize, chosen: &mut [bool], current: &mut Vec<u64>, out: &mut Vec<Partition>) {
    let Some(&y) = poset.gaps.get(idx) else {
        out.push(Partition::from_beta_set(current));
        return;
    };
    down_sets(poset, idx + 1, chosen, current, out);
    let below_ok = |step: u64| y < step || chosen[(y - step) as usize];
    if below_ok(poset.s) && below_ok(poset.t) {
        chosen[y as usize] = true;
        current.push(y);
        down_sets(poset, idx + 1, chosen, current, out);
        current.pop();
        chosen[y as usize] = false;
    }
}

/// Predicate on `(ideal, partition)` pairs used by [`count_filtered`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreFilter {
    All,
    DistinctParts,
    OddParts,
    /// No part value occurs more than `k` times.
    RepeatsAtMost(usize),
    /// Occupied points lie in the `k` outermost diagonals.
    DiagonalsAtMost(usize),
    And(Vec<CoreFilter>),
}

impl CoreFilter {
    pub fn and(self, other: CoreFilter) -> CoreFilter {
        match self {
            CoreFilter::And(mut fs) => {
                fs.push(other);
                CoreFilter::And(fs)
            }
            f => CoreFilter::And(vec![f, other]),
        }
    }

    pub fn accepts(&self, ideal: &OrderIdeal, partition: &Partition) -> bool {
        match self {
            CoreFilter::All => true,
            CoreFilter::DistinctParts => partition.has_distinct_parts(),
            CoreFilter::OddParts => partition.has_odd_parts(),
            CoreFilter::RepeatsAtMost(k) => partition.max_multiplicity() <= *k,
            CoreFilter::DiagonalsAtMost(k) => ideal.depth() <= *k,
            CoreFilter::And(fs) => fs.iter().all(|f| f.accepts(ideal, partition)),
        }
    }
}

/// Cap on the number of ideals an exhaustive walk may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_ideals: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self { max_ideals: 10_000_000 }
    }
}

impl EnumerationBudget {
    /// Fails unless `Catalan(n+1)`, the number of ideals of `A_n`, fits the cap.
    pub fn check(&self, n: usize) -> Result<()> {
        let predicted = catalan(n + 1);
        if predicted > BigUint::from(self.max_ideals) {
            return Err(Error::Resource(format!(
                "A_{n} has {predicted} order ideals, above the enumeration budget of {}",
                self.max_ideals
            )));
        }
        Ok(())
    }
}

/// Calls `visit` on every order ideal of `A_n`, generated diagonal by
/// diagonal from the outside in.
pub fn for_each_ideal(n: usize, budget: EnumerationBudget, mut visit: impl FnMut(&OrderIdeal)) -> Result<()> {
    budget.check(n)?;
    let mut ideal = OrderIdeal::empty(n);
    if n == 0 {
        visit(&ideal);
        return Ok(());
    }
    walk(n - 1, low_bits(n), &mut ideal, &mut visit);
    Ok(())
}

// Inner diagonals are zero on entry and restored to zero on exit.
fn walk(d: usize, allowed: u64, ideal: &mut OrderIdeal, visit: &mut impl FnMut(&OrderIdeal)) {
    let mut sub = allowed;
    loop {
        ideal.set_mask(d, sub);
        if sub == 0 || d == 0 {
            visit(ideal);
        } else {
            walk(d - 1, supported(sub), ideal, visit);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & allowed;
    }
}

pub fn all_ideals(n: usize, budget: EnumerationBudget) -> Result<Vec<OrderIdeal>> {
    let mut out = Vec::new();
    for_each_ideal(n, budget, |s| out.push(s.clone()))?;
    Ok(out)
}

pub fn count_filtered(n: usize, filter: &CoreFilter) -> Result<BigUint> {
    count_filtered_with_budget(n, filter, EnumerationBudget::default())
}

pub fn count_filtered_with_budget(n: usize, filter: &CoreFilter, budget: EnumerationBudget) -> Result<BigUint> {
    let mut count = 0u64;
    for_each_ideal(n, budget, |ideal| {
        if filter.accepts(ideal, &ideal_to_partition(ideal)) {
            count += 1;
        }
    })?;
    Ok(BigUint::from(count))
}
