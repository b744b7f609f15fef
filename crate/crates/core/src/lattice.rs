//! The triangular poset `A_n` that encodes the gap set of `(n+1, n+2)`.
//!
//! A point `(i, j)` with `i + j <= n - 1` carries the label
//! `(n+1)n - 1 - (n+2)i - (n+1)j`; the labels of `A_n` are exactly the
//! gaps of the numerical semigroup generated by `n+1` and `n+2`. Points on
//! the diagonal `d = i + j` are stored as one bitmask per diagonal, bit `i`
//! standing for `(i, d - i)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::oracle::Partition;
use crate::{Error, Result};

/// Largest lattice order an [`OrderIdeal`] can hold (one `u64` per diagonal).
pub const MAX_IDEAL_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrianglePoint {
    pub i: usize,
    pub j: usize,
}

impl TrianglePoint {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    /// Index of the diagonal `i + j` the point lies on.
    pub const fn diagonal(&self) -> usize {
        self.i + self.j
    }

    pub const fn in_lattice(&self, n: usize) -> bool {
        self.i + self.j < n
    }
}

impl fmt::Display for TrianglePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// The lattice `A_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TriangleLattice {
    n: usize,
}

impl TriangleLattice {
    pub const fn new(n: usize) -> Self {
        Self { n }
    }

    pub const fn order(&self) -> usize {
        self.n
    }

    /// Number of points, `(n+1)n/2`.
    pub const fn len(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    pub const fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub const fn contains(&self, p: TrianglePoint) -> bool {
        p.in_lattice(self.n)
    }

    /// Points of diagonal `d` in increasing label order (bottom-right first).
    pub fn diagonal(&self, d: usize) -> impl Iterator<Item = TrianglePoint> {
        let len = if d < self.n { d + 1 } else { 0 };
        (0..len).rev().map(move |i| TrianglePoint::new(i, d - i))
    }

    /// All points in increasing label order.
    pub fn points(&self) -> impl Iterator<Item = TrianglePoint> + '_ {
        (0..self.n).rev().flat_map(move |d| self.diagonal(d))
    }

    pub fn label(&self, p: TrianglePoint) -> Result<u64> {
        label(self.n, p)
    }
}

/// Label of `p` in `A_n`: `(n+1)n - 1 - (n+2)i - (n+1)j`.
pub fn label(n: usize, p: TrianglePoint) -> Result<u64> {
    if !p.in_lattice(n) {
        return Err(Error::Domain(format!("point {p} is outside A_{n}")));
    }
    Ok(label_on_diagonal(n, p.diagonal(), p.i))
}

/// Label of position `i` on diagonal `d`. Caller guarantees `i <= d < n`.
#[inline]
pub(crate) fn label_on_diagonal(n: usize, d: usize, i: usize) -> u64 {
    let (n, d, i) = (n as u64, d as u64, i as u64);
    (n + 1) * n - 1 - (n + 1) * d - i
}

/// Colour `1 + c*i + (1-c)*j (mod 2)` of a point under colouring parameter `c`.
#[inline]
pub fn color(c: u8, p: TrianglePoint) -> u8 {
    debug_assert!(c <= 1, "colouring parameter must be 0 or 1");
    let c = (c & 1) as usize;
    ((1 + c * p.i + (1 - c) * p.j) & 1) as u8
}

/// Points of `A_n` sorted by ascending label.
pub fn reading_order(n: usize) -> Vec<TrianglePoint> {
    TriangleLattice::new(n).points().collect()
}

/// Checks up-right closure of a point set.
pub fn is_order_ideal(n: usize, points: &[TrianglePoint]) -> Result<bool> {
    if let Some(p) = points.iter().find(|p| !p.in_lattice(n)) {
        return Err(Error::Domain(format!("point {p} is outside A_{n}")));
    }
    let occupied: Vec<TrianglePoint> = {
        let mut v = points.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    };
    let has = |p: &TrianglePoint| occupied.binary_search(p).is_ok();
    Ok(occupied.iter().all(|p| {
        let right = TrianglePoint::new(p.i + 1, p.j);
        let up = TrianglePoint::new(p.i, p.j + 1);
        (!right.in_lattice(n) || has(&right)) && (!up.in_lattice(n) || has(&up))
    }))
}

/// An up-right-closed subset of `A_n`, one bitmask per diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderIdeal {
    n: usize,
    diags: Vec<u64>,
}

impl OrderIdeal {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_IDEAL_ORDER, "lattice order {n} exceeds {MAX_IDEAL_ORDER}");
        Self { n, diags: vec![0; n] }
    }

    pub fn full(n: usize) -> Self {
        let mut ideal = Self::empty(n);
        for (d, mask) in ideal.diags.iter_mut().enumerate() {
            *mask = low_bits(d + 1);
        }
        ideal
    }

    /// Builds an ideal from explicit points, rejecting sets that are not up-right closed.
    pub fn from_points(n: usize, points: &[TrianglePoint]) -> Result<Self> {
        if n > MAX_IDEAL_ORDER {
            return Err(Error::Domain(format!("lattice order {n} exceeds {MAX_IDEAL_ORDER}")));
        }
        let mut ideal = Self::empty(n);
        for &p in points {
            if !p.in_lattice(n) {
                return Err(Error::Domain(format!("point {p} is outside A_{n}")));
            }
            ideal.diags[p.diagonal()] |= 1 << p.i;
        }
        ideal.validate()?;
        Ok(ideal)
    }

    /// Builds an ideal from the labels of its points.
    pub fn from_labels(n: usize, labels: &[u64]) -> Result<Self> {
        let lattice = TriangleLattice::new(n);
        let mut points = Vec::with_capacity(labels.len());
        for &l in labels {
            let p = lattice
                .points()
                .find(|&p| label_on_diagonal(n, p.diagonal(), p.i) == l)
                .ok_or_else(|| Error::Domain(format!("{l} is not a label of A_{n}")))?;
            points.push(p);
        }
        Self::from_points(n, &points)
    }

    /// Builds an ideal from per-diagonal masks (`masks[d]`, bit `i` = point `(i, d-i)`).
    pub fn from_diagonal_masks(n: usize, masks: Vec<u64>) -> Result<Self> {
        if masks.len() != n {
            return Err(Error::Contract(format!(
                "expected {n} diagonal masks, got {}",
                masks.len()
            )));
        }
        if n > MAX_IDEAL_ORDER {
            return Err(Error::Domain(format!("lattice order {n} exceeds {MAX_IDEAL_ORDER}")));
        }
        let ideal = Self { n, diags: masks };
        ideal.validate()?;
        Ok(ideal)
    }

    pub(crate) fn from_masks_unchecked(n: usize, diags: Vec<u64>) -> Self {
        debug_assert_eq!(diags.len(), n);
        Self { n, diags }
    }

    pub(crate) fn set_mask(&mut self, d: usize, mask: u64) {
        self.diags[d] = mask;
    }

    fn validate(&self) -> Result<()> {
        for d in 0..self.n {
            let mask = self.diags[d];
            if mask & !low_bits(d + 1) != 0 {
                return Err(Error::Contract(format!("diagonal {d} has bits outside A_{}", self.n)));
            }
            if d + 1 < self.n && mask & !supported(self.diags[d + 1]) != 0 {
                return Err(Error::Contract(format!(
                    "diagonal {d} is not supported by diagonal {}: not an order ideal",
                    d + 1
                )));
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn lattice(&self) -> TriangleLattice {
        TriangleLattice::new(self.n)
    }

    /// Occupancy mask of diagonal `d` (bit `i` is the point `(i, d-i)`).
    pub fn diagonal_mask(&self, d: usize) -> u64 {
        self.diags.get(d).copied().unwrap_or(0)
    }

    pub fn diagonal_masks(&self) -> &[u64] {
        &self.diags
    }

    pub fn contains(&self, p: TrianglePoint) -> bool {
        p.in_lattice(self.n) && self.diags[p.diagonal()] >> p.i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.diags.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.diags.iter().all(|&m| m == 0)
    }

    /// Number of occupied diagonals; they always form an outermost block.
    pub fn depth(&self) -> usize {
        self.diags.iter().rev().take_while(|&&m| m != 0).count()
    }

    /// Occupied points in increasing label order.
    pub fn points(&self) -> impl Iterator<Item = TrianglePoint> + '_ {
        (0..self.n).rev().flat_map(move |d| {
            let mask = self.diags[d];
            (0..=d).rev().filter(move |&i| mask >> i & 1 == 1).map(move |i| TrianglePoint::new(i, d - i))
        })
    }

    /// Labels of the occupied points, ascending.
    pub fn labels(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.len());
        self.labels_into(&mut out);
        out
    }

    pub(crate) fn labels_into(&self, out: &mut Vec<u64>) {
        out.clear();
        for d in (0..self.n).rev() {
            let mut mask = self.diags[d];
            if mask == 0 {
                break;
            }
            // highest bit first = smallest label first
            while mask != 0 {
                let i = 63 - mask.leading_zeros() as usize;
                out.push(label_on_diagonal(self.n, d, i));
                mask &= !(1 << i);
            }
        }
    }

    /// No two occupied points carry consecutive labels.
    pub fn has_no_adjacent_labels(&self) -> bool {
        let labels = self.labels();
        labels.windows(2).all(|w| w[1] - w[0] != 1)
    }
}

impl fmt::Debug for OrderIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderIdeal").field("n", &self.n).field("labels", &self.labels()).finish()
    }
}

#[inline]
pub(crate) const fn low_bits(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Positions on diagonal `d` whose up and right neighbours on diagonal
/// `d+1` are both in `outer`.
#[inline]
pub(crate) const fn supported(outer: u64) -> u64 {
    outer & (outer >> 1)
}

/// Partition of an ideal: with labels sorted decreasingly `a_1 > ... > a_k`,
/// part `m` is `a_m - (k - m)`.
pub fn ideal_to_partition(ideal: &OrderIdeal) -> Partition {
    Partition::from_beta_set(&ideal.labels())
}

/// The canonical decomposition `S -> (i, S_1, S_2)`.
///
/// `split_index` is the first `i` with `(n-1-i, i)` unoccupied. `lower`
/// holds the points strictly right of that cell minus the `i` forced
/// outer-diagonal cells, as an ideal of `A_{i-1}`; `upper` holds the points
/// strictly above it, as an ideal of `A_{n-1-i}`. The empty lattice `A_{-1}`
/// (lower part when `i = 0`, upper part when `i = n`) is represented by `A_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTriple {
    /// Order `n` of the decomposed ideal's lattice.
    pub order: usize,
    pub split_index: usize,
    pub lower: OrderIdeal,
    pub upper: OrderIdeal,
}

impl DecompositionTriple {
    /// Inverse of [`canonical_decompose`].
    pub fn recompose(&self) -> Result<OrderIdeal> {
        let (n, i) = (self.order, self.split_index);
        if i > n {
            return Err(Error::Contract(format!("split index {i} exceeds lattice order {n}")));
        }
        let lower_order = i.saturating_sub(1);
        let upper_order = (n - i).saturating_sub(1);
        if self.lower.order() != lower_order || self.upper.order() != upper_order {
            return Err(Error::Contract(format!(
                "parts must live on A_{} and A_{}, got A_{} and A_{}",
                i as isize - 1,
                n as isize - 1 - i as isize,
                self.lower.order(),
                self.upper.order()
            )));
        }
        if n == 0 {
            return Ok(OrderIdeal::empty(0));
        }
        let mut diags = vec![0u64; n];
        // forced outer cells (n-1, 0) ... (n-i, i-1)
        diags[n - 1] |= low_bits(n) & !low_bits(n - i);
        // lower: (x, y) in A_{i-1} sits at (x + n - i, y), diagonal d + n - i
        for d in 0..self.lower.order() {
            diags[d + n - i] |= self.lower.diagonal_mask(d) << (n - i);
        }
        // upper: (x, y) in A_{n-1-i} sits at (x, y + i + 1), diagonal d + i + 1
        for d in 0..self.upper.order() {
            diags[d + i + 1] |= self.upper.diagonal_mask(d);
        }
        OrderIdeal::from_diagonal_masks(n, diags)
    }
}

pub fn canonical_decompose(ideal: &OrderIdeal) -> DecompositionTriple {
    let n = ideal.order();
    if n == 0 {
        return DecompositionTriple { order: 0, split_index: 0, lower: OrderIdeal::empty(0), upper: OrderIdeal::empty(0) };
    }
    let outer = ideal.diagonal_mask(n - 1);
    // outer-diagonal cell (n-1-i, i) is bit n-1-i; count the run of set bits from the top
    let split = (outer << (64 - n)).leading_ones() as usize;
    let split = split.min(n);
    if split == n {
        // whole outer diagonal occupied: there is no upper part
        let mut lower = vec![0u64; n - 1];
        for (d, mask) in lower.iter_mut().enumerate() {
            *mask = ideal.diagonal_mask(d);
        }
        return DecompositionTriple {
            order: n,
            split_index: n,
            lower: OrderIdeal::from_masks_unchecked(n - 1, lower),
            upper: OrderIdeal::empty(0),
        };
    }
    let i = split;
    let lower_order = i.saturating_sub(1);
    let upper_order = n - 1 - i;
    let mut lower = vec![0u64; lower_order];
    for (d, mask) in lower.iter_mut().enumerate() {
        *mask = ideal.diagonal_mask(d + n - i) >> (n - i);
    }
    let mut upper = vec![0u64; upper_order];
    for (d, mask) in upper.iter_mut().enumerate() {
        *mask = ideal.diagonal_mask(d + i + 1) & low_bits(d + 1);
    }
    DecompositionTriple {
        order: n,
        split_index: i,
        lower: OrderIdeal::from_masks_unchecked(lower_order, lower),
        upper: OrderIdeal::from_masks_unchecked(upper_order, upper),
    }
}

/// Number of order ideals of `A_n`, from the decomposition recurrence
/// `a_n = sum_{i=0}^{n} a_{i-1} a_{n-1-i}`, `a_{-1} = 1`.
pub fn count_all_ideals(n: usize) -> BigUint {
    // shifted[m] = a_{m-1}
    let mut shifted: Vec<BigUint> = vec![BigUint::one()];
    for m in 0..=n {
        let total = (0..=m).fold(BigUint::zero(), |acc, i| acc + &shifted[i] * &shifted[m - i]);
        shifted.push(total);
    }
    shifted.pop().unwrap_or_else(BigUint::one)
}

/// Catalan number `(2m)! / (m! (m+1)!)`.
pub fn catalan(m: usize) -> BigUint {
    binomial(2 * m, m) / BigUint::from(m + 1)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, r| acc * BigUint::from(n - r) / BigUint::from(r + 1))
}

/// Number of ideals whose partitions have distinct parts, via
/// `d_n = d_{n-1} + d_{n-2}` with `d_0 = 1`, `d_1 = 2`.
pub fn count_distinct_ideals(n: usize) -> BigUint {
    // d_{-1} = 1 makes d_1 = d_0 + d_{-1} = 2
    let (mut prev, mut cur) = (BigUint::one(), BigUint::one());
    for _ in 0..n {
        let next = &prev + &cur;
        prev = core::mem::replace(&mut cur, next);
    }
    cur
}

/// An exact integer sequence with its starting index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSequence {
    pub name: String,
    pub offset: i64,
    pub terms: Vec<BigUint>,
}

impl CountSequence {
    pub fn new(name: impl Into<String>, offset: i64, terms: Vec<BigUint>) -> Self {
        Self { name: name.into(), offset, terms }
    }

    pub fn from_u64(name: impl Into<String>, offset: i64, terms: &[u64]) -> Self {
        Self::new(name, offset, terms.iter().map(|&t| BigUint::from(t)).collect())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(index, term)` pairs.
    pub fn indexed(&self) -> impl Iterator<Item = (i64, &BigUint)> {
        self.terms.iter().enumerate().map(move |(k, t)| (self.offset + k as i64, t))
    }
}
