//! Profile-refined canonical decomposition.
//!
//! An ideal of `A_n` corresponds to a core partition into odd parts exactly
//! when its labels, read in increasing order, start odd and alternate in
//! parity. With the colouring `C(i,j) = 1 + c*i + (1-c)*j` and `c = n mod 2`
//! colour equals label parity, so the question becomes one about colour
//! alternation. The canonical decomposition `S -> (i, S_1, S_2)` does not
//! preserve alternation across diagonals, so the dynamic program counts the
//! larger family of ideals that alternate *within* each diagonal, refined by
//! their [`Profile`], and sums the good profiles at the end.
//!
//! In `A_n`, the lower part `S_1` (an ideal of `A_{i-1}`) sits one diagonal
//! further in and its colours shift by `c(n-i)`; the upper part `S_2` (an ideal
//! of `A_{n-1-i}`) keeps its diagonal index and its colours shift by
//! `(1-c)(i+1)`. On each diagonal of `S` the cells of `S_1` are read before
//! the cells of `S_2`; on the outer diagonal the `i` forced cells come first.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::lattice::{binomial, color, CountSequence, OrderIdeal, TrianglePoint};
use crate::{Error, Result};

const FIRST_BITS: u64 = 0x5555_5555_5555_5555;
const LAST_BITS: u64 = 0xAAAA_AAAA_AAAA_AAAA;

/// Longest profile the packed representation holds.
pub const MAX_PROFILE_LEN: usize = 32;

/// Per occupied diagonal, outermost first: the colours of the lowest-label
/// and highest-label occupied cells.
///
/// Packed two bits per diagonal: bit `2k` is the first colour of diagonal
/// `k`, bit `2k+1` the last.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Profile {
    len: u8,
    bits: u64,
}

impl Profile {
    pub const EMPTY: Profile = Profile { len: 0, bits: 0 };

    pub fn new(pairs: &[(u8, u8)]) -> Result<Self> {
        if pairs.len() > MAX_PROFILE_LEN {
            return Err(Error::Domain(format!("profiles hold at most {MAX_PROFILE_LEN} diagonals")));
        }
        let mut bits = 0u64;
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if a > 1 || b > 1 {
                return Err(Error::Domain(format!("profile colours must be 0 or 1, got [{a},{b}]")));
            }
            bits |= (a as u64) << (2 * k) | (b as u64) << (2 * k + 1);
        }
        Ok(Self { len: pairs.len() as u8, bits })
    }

    #[inline]
    fn from_raw(len: usize, bits: u64) -> Self {
        Self { len: len as u8, bits }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `(first, last)` colours of diagonal `k` (outermost is 0).
    pub fn get(&self, k: usize) -> Option<(u8, u8)> {
        (k < self.len()).then(|| ((self.bits >> (2 * k) & 1) as u8, (self.bits >> (2 * k + 1) & 1) as u8))
    }

    pub fn pairs(&self) -> Vec<(u8, u8)> {
        (0..self.len()).filter_map(|k| self.get(k)).collect()
    }

    /// Every colour complemented when `flip` is set.
    #[inline]
    pub fn flipped(self, flip: u8) -> Self {
        if flip & 1 == 0 {
            self
        } else {
            Self { len: self.len, bits: self.bits ^ mask_diagonals(0, self.len()) }
        }
    }

    #[inline]
    fn first_color(&self) -> u8 {
        (self.bits & 1) as u8
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, (a, b)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "[{a},{b}]")?;
        }
        f.write_str("]")
    }
}

/// Bits of diagonals `from..to`.
#[inline]
const fn mask_diagonals(from: usize, to: usize) -> u64 {
    crate::lattice::low_bits(2 * to) & !crate::lattice::low_bits(2 * from)
}

/// Memo key of the dynamic program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DpKey {
    pub n: usize,
    pub c: u8,
    pub profile: Profile,
}

/// Colouring parameter together with the colour the first occupied cell
/// must have so that its label is odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlternationClass {
    pub c: u8,
    pub first_color: u8,
}

impl AlternationClass {
    /// On the outer diagonal of `A_n` colour equals label parity plus
    /// `c(n-1)`, so an odd first label means first colour `1 + c(n-1)`.
    pub fn new(n: usize, c: u8) -> Self {
        let first_color = ((1 + c as usize * n.saturating_sub(1)) & 1) as u8;
        Self { c: c & 1, first_color }
    }
}

/// Profile of `ideal` under colouring `c`.
pub fn profile_of_ideal(c: u8, ideal: &OrderIdeal) -> Profile {
    let n = ideal.order();
    let mut pairs = Vec::new();
    for d in (0..n).rev() {
        let mask = ideal.diagonal_mask(d);
        if mask == 0 {
            break;
        }
        // lowest label = largest i
        let hi = 63 - mask.leading_zeros() as usize;
        let lo = mask.trailing_zeros() as usize;
        pairs.push((color(c, TrianglePoint::new(hi, d - hi)), color(c, TrianglePoint::new(lo, d - lo))));
    }
    Profile::new(&pairs).expect("ideal depth fits a profile")
}

/// Colours of the occupied cells alternate within every diagonal.
pub fn alternates_within_diagonals(c: u8, ideal: &OrderIdeal) -> bool {
    let n = ideal.order();
    (0..n).all(|d| {
        let colors: Vec<u8> = bit_positions_desc(ideal.diagonal_mask(d))
            .map(|i| color(c, TrianglePoint::new(i, d - i)))
            .collect();
        colors.windows(2).all(|w| w[0] != w[1])
    })
}

fn bit_positions_desc(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).rev().filter(move |&i| mask >> i & 1 == 1)
}

pub fn is_good_profile(profile: &Profile, first_color: u8) -> bool {
    if profile.is_empty() {
        return true;
    }
    if profile.first_color() != first_color {
        return false;
    }
    // last colour of diagonal k must differ from first colour of k+1
    let len = profile.len();
    let lasts = (profile.bits & LAST_BITS) >> 1;
    let next_firsts = (profile.bits & FIRST_BITS) >> 2;
    let boundaries = FIRST_BITS & mask_diagonals(0, len - 1);
    (lasts ^ next_firsts) & boundaries == boundaries
}

/// Largest `k` accepted by [`good_profiles`]; there are `2^k` results.
pub const MAX_GOOD_PROFILE_LEN: usize = 24;

/// All good profiles of exactly `k` diagonals, in increasing order.
///
/// The first colour is `first_color`, each last colour is free and fixes the
/// next first colour, so there are `2^k` of them.
pub fn good_profiles(k: usize, first_color: u8) -> Result<Vec<Profile>> {
    if k > MAX_GOOD_PROFILE_LEN {
        return Err(Error::Domain(format!(
            "good_profiles lists 2^k profiles; k = {k} exceeds {MAX_GOOD_PROFILE_LEN}"
        )));
    }
    let mut out: Vec<Profile> = (0..1u64 << k)
        .map(|lasts| {
            let mut first = first_color & 1;
            let pairs: Vec<(u8, u8)> = (0..k)
                .map(|d| {
                    let last = ((lasts >> d) & 1) as u8;
                    let pair = (first, last);
                    first = 1 - last;
                    pair
                })
                .collect();
            Profile::new(&pairs).unwrap_or(Profile::EMPTY)
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Table of within-diagonal-alternating ideals of one lattice, by profile.
#[derive(Debug, Clone, Default)]
struct Table {
    /// Entries split by the first colour of the outer diagonal, each sorted by profile.
    by_first: [Vec<(Profile, u128)>; 2],
    empty: u128,
}

impl Table {
    fn from_map(map: HashMap<Profile, u128>) -> Self {
        let mut table = Table::default();
        for (p, v) in map {
            if p.is_empty() {
                table.empty = v;
            } else {
                table.by_first[p.first_color() as usize].push((p, v));
            }
        }
        for bucket in &mut table.by_first {
            bucket.sort_unstable_by_key(|e| e.0);
        }
        table
    }

    fn len(&self) -> usize {
        self.by_first[0].len() + self.by_first[1].len() + usize::from(self.empty != 0)
    }

    fn get(&self, p: &Profile) -> u128 {
        if p.is_empty() {
            return self.empty;
        }
        let bucket = &self.by_first[p.first_color() as usize];
        bucket.binary_search_by_key(p, |e| e.0).map_or(0, |k| bucket[k].1)
    }

    fn iter(&self) -> impl Iterator<Item = (Profile, u128)> + '_ {
        let empty = (self.empty != 0).then_some((Profile::EMPTY, self.empty));
        empty.into_iter().chain(self.by_first.iter().flatten().copied())
    }
}

/// Memoized counts `count_by_profile(n, c, P)` for one colouring parameter.
///
/// Tables are built bottom-up for `A_{-1}, A_0, A_1, ...` and kept, so
/// later terms reuse every earlier entry. Profiles longer than `depth_cap`
/// are dropped; since combining never shortens a profile, every entry of
/// length at most the cap is exact.
#[derive(Debug, Clone)]
pub struct ProfileDp {
    c: u8,
    depth_cap: usize,
    max_entries: usize,
    entries: usize,
    /// `tables[m + 1]` describes `A_m`.
    tables: Vec<Table>,
}

impl ProfileDp {
    pub fn new(c: u8, depth_cap: usize) -> Self {
        let base = Table { empty: 1, ..Table::default() };
        Self {
            c: c & 1,
            depth_cap: depth_cap.min(MAX_PROFILE_LEN),
            max_entries: usize::MAX,
            entries: 1,
            tables: vec![base],
        }
    }

    /// Depth cap sufficient for every alternating ideal of `A_m`, `m <= max_n`.
    pub fn for_sequence(c: u8, max_n: usize) -> Self {
        Self::new(c, max_n / 2 + 1)
    }

    /// Fails with a resource error once the memo would exceed `max_entries`.
    pub fn with_max_entries(mut self, max_entries: usize) -> Self {
        self.max_entries = max_entries;
        self
    }

    pub fn c(&self) -> u8 {
        self.c
    }

    pub fn depth_cap(&self) -> usize {
        self.depth_cap
    }

    /// Total memo entries across all tables.
    pub fn entries(&self) -> usize {
        self.entries
    }

    /// Largest `n` whose table is built, if any.
    pub fn built_up_to(&self) -> Option<usize> {
        self.tables.len().checked_sub(2)
    }

    fn table(&self, m: isize) -> &Table {
        &self.tables[(m + 1) as usize]
    }

    /// Builds tables up to `A_n`.
    pub fn extend_to(&mut self, n: usize) -> Result<()> {
        while self.tables.len() < n + 2 {
            let m = self.tables.len() - 1;
            let table = self.build(m)?;
            self.entries += table.len();
            if self.entries > self.max_entries {
                return Err(Error::Resource(format!(
                    "profile memo reached {} entries at n = {m}, above the cap of {}",
                    self.entries, self.max_entries
                )));
            }
            self.tables.push(table);
        }
        Ok(())
    }

    fn build(&self, n: usize) -> Result<Table> {
        let c = self.c as usize;
        let cap = self.depth_cap;
        let mut map: HashMap<Profile, u128> = HashMap::new();
        let mut add = |p: Profile, v: u128| -> Result<()> {
            let slot = map.entry(p).or_insert(0);
            *slot = slot.checked_add(v).ok_or_else(overflow)?;
            Ok(())
        };
        // i = 0: (n-1, 0) unoccupied, S is an ideal of A_{n-1} shifted up a row
        let f2 = ((1 - c) & 1) as u8;
        for (p2, v) in self.table(n as isize - 1).iter() {
            add(p2.flipped(f2), v)?;
        }
        if cap == 0 {
            return Ok(Table::from_map(map));
        }
        for i in 1..=n {
            let lower = self.table(i as isize - 1);
            let upper = self.table(n as isize - 1 - i as isize);
            let f1 = ((c * (n - i)) & 1) as u8;
            let f2 = (((1 - c) * (i + 1)) & 1) as u8;
            // colours of the forced cells (n-1, 0) and (n-i, i-1)
            let forced_first = ((1 + c * (n - 1)) & 1) as u64;
            let forced_last = ((1 + c * (n - i) + (1 - c) * (i - 1)) & 1) as u64;
            // an upper part whose outer diagonal starts with the forced run's
            // last colour breaks alternation; its flipped first colour must differ
            let upper_first_ok = (forced_last as u8 ^ 1) ^ f2;
            for (p1, v1) in lower.iter() {
                let q1 = p1.flipped(f1);
                let l1 = q1.len();
                if l1 + 1 > cap {
                    continue;
                }
                let shifted = q1.bits << 2;
                // upper part empty
                let bits = shifted | forced_first | forced_last << 1;
                add(Profile::from_raw(l1 + 1, bits), v1.checked_mul(upper.empty).ok_or_else(overflow)?)?;
                for &(p2, v2) in &upper.by_first[upper_first_ok as usize] {
                    let q2 = p2.flipped(f2);
                    let l2 = q2.len();
                    let len = l2.max(l1 + 1);
                    if len > cap {
                        continue;
                    }
                    let overlap = mask_diagonals(1, l2.min(l1 + 1));
                    let junction = FIRST_BITS & overlap;
                    if ((shifted >> 1) ^ q2.bits) & junction != junction {
                        continue;
                    }
                    let inner = ((shifted & FIRST_BITS) | (q2.bits & LAST_BITS)) & overlap
                        | (shifted | q2.bits) & !overlap & !mask_diagonals(0, 1);
                    let outer = forced_first | (q2.bits & 2);
                    let v = v1.checked_mul(v2).ok_or_else(overflow)?;
                    add(Profile::from_raw(len, inner | outer), v)?;
                }
            }
        }
        Ok(Table::from_map(map))
    }

    /// `count_by_profile(n, c, P)`; extends the tables as needed.
    pub fn count(&mut self, n: usize, profile: &Profile) -> Result<BigUint> {
        if profile.len() > self.depth_cap {
            return Err(Error::Domain(format!(
                "profile of length {} exceeds the depth cap {} of this table",
                profile.len(),
                self.depth_cap
            )));
        }
        if profile.len() > n {
            return Ok(BigUint::zero());
        }
        self.extend_to(n)?;
        Ok(BigUint::from(self.table(n as isize).get(profile)))
    }

    /// Memo lookup; `None` when the key's table is not built, belongs to the
    /// other colouring, or lies beyond the depth cap.
    pub fn get(&self, key: &DpKey) -> Option<BigUint> {
        if key.c != self.c || key.profile.len() > self.depth_cap || key.n + 2 > self.tables.len() {
            return None;
        }
        Some(BigUint::from(self.table(key.n as isize).get(&key.profile)))
    }

    /// Every nonzero `(profile, count)` of `A_n` within the depth cap.
    pub fn profiles(&mut self, n: usize) -> Result<Vec<(Profile, BigUint)>> {
        self.extend_to(n)?;
        Ok(self.table(n as isize).iter().map(|(p, v)| (p, BigUint::from(v))).collect())
    }

    /// `e^{(c)}_n`: ideals of `A_n` whose colours alternate in reading order
    /// and whose first label is odd.
    pub fn alternating_count(&mut self, n: usize) -> Result<BigUint> {
        if self.depth_cap < (n / 2 + 1).min(n) {
            return Err(Error::Domain(format!(
                "depth cap {} is too small for alternating ideals of A_{n}",
                self.depth_cap
            )));
        }
        self.extend_to(n)?;
        let class = AlternationClass::new(n, self.c);
        let mut total = 0u128;
        for (p, v) in self.table(n as isize).iter() {
            if is_good_profile(&p, class.first_color) {
                total = total.checked_add(v).ok_or_else(overflow)?;
            }
        }
        Ok(BigUint::from(total))
    }
}

fn overflow() -> Error {
    Error::Resource(String::from("count exceeds 128-bit accumulator"))
}

/// Standalone `count_by_profile`.
pub fn count_by_profile(n: usize, c: u8, profile: &Profile) -> Result<BigUint> {
    ProfileDp::new(c, profile.len()).count(n, profile)
}

/// Standalone `alternating_count`.
pub fn alternating_count(n: usize, c: u8) -> Result<BigUint> {
    ProfileDp::for_sequence(c, n).alternating_count(n)
}

/// The pair of engines (one per colouring) behind both sequences.
#[derive(Debug, Clone)]
pub struct SequenceEngine {
    engines: [ProfileDp; 2],
}

impl SequenceEngine {
    pub fn new(max_n: usize) -> Self {
        Self { engines: [ProfileDp::for_sequence(0, max_n), ProfileDp::for_sequence(1, max_n)] }
    }

    pub fn with_max_entries(self, max_entries: usize) -> Self {
        let [a, b] = self.engines;
        Self { engines: [a.with_max_entries(max_entries / 2), b.with_max_entries(max_entries / 2)] }
    }

    pub fn engine_mut(&mut self, c: u8) -> &mut ProfileDp {
        &mut self.engines[(c & 1) as usize]
    }

    /// Both engines, for callers that want to build them on separate threads.
    pub fn engines_mut(&mut self) -> (&mut ProfileDp, &mut ProfileDp) {
        let [a, b] = &mut self.engines;
        (a, b)
    }

    pub fn straub(&mut self, max_n: usize) -> Result<CountSequence> {
        self.sequence("straub", max_n, |n| (n & 1) as u8)
    }

    pub fn sister(&mut self, max_n: usize) -> Result<CountSequence> {
        self.sequence("sister", max_n, |n| ((n + 1) & 1) as u8)
    }

    fn sequence(&mut self, name: &str, max_n: usize, coloring: impl Fn(usize) -> u8) -> Result<CountSequence> {
        let mut terms = vec![BigUint::one()];
        for n in 1..=max_n {
            terms.push(self.engine_mut(coloring(n)).alternating_count(n)?);
        }
        Ok(CountSequence::new(name, 0, terms))
    }
}

/// `s_0 .. s_max_n`: `(n+1,n+2)`-cores into odd parts.
pub fn straub_sequence(max_n: usize) -> Result<CountSequence> {
    SequenceEngine::new(max_n).straub(max_n)
}

/// `t_0 .. t_max_n`: the companion count with the opposite colouring.
pub fn sister_sequence(max_n: usize) -> Result<CountSequence> {
    SequenceEngine::new(max_n).sister(max_n)
}

/// Closed form of the companion sequence (A047749 at index `n + 2`).
pub fn sister_closed_form(n: usize) -> Result<BigUint> {
    let (num, den) = if n.is_even() {
        let m = (n + 2) / 2;
        (binomial(3 * m, m), BigUint::from(2 * m + 1))
    } else {
        let m = Integer::div_ceil(&n, &2);
        (binomial(3 * m + 1, m + 1), BigUint::from(2 * m + 1))
    };
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Contract(format!("closed form is not integral at n = {n}")));
    }
    Ok(q)
}

/// A047749 from index 0: `1, 1, 1, 2, 3, 7, 12, ...`.
pub fn a047749(len: usize) -> Result<Vec<BigUint>> {
    let mut out: Vec<BigUint> = [1u32, 1].iter().take(len).map(|&v| BigUint::from(v)).collect();
    for n in 0..len.saturating_sub(2) {
        out.push(sister_closed_form(n)?);
    }
    Ok(out)
}
