//! Factorizations, length sets and the max/min length functions.
//!
//! [`LengthTables`] stores `M(n)` and `m(n)` only up to the points where both
//! functions become quasilinear: past `(g_1 - 1) g_k` the maximum length
//! satisfies `M(n) = M(n - g_1) + 1`, and past `(g_k - 1) g_{k-1}` the minimum
//! length satisfies `m(n) = m(n - g_k) + 1`. Larger elements are reduced into
//! the table window in constant time.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::NumericalMonoid;
use crate::rational::Rational;

/// Default cap on the number of entries in a single length table.
pub const DEFAULT_TABLE_LIMIT: u64 = 50_000_000;

/// Default cap on search nodes visited while enumerating factorizations.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 10_000_000;

const ABSENT: u32 = u32::MAX;

/// Exponent vector over the generators of the ambient monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    exponents: Vec<u64>,
}

impl Factorization {
    pub fn new(exponents: Vec<u64>) -> Self {
        Factorization { exponents }
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn len(&self) -> u64 {
        self.exponents.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The element this vector factors in `monoid`.
    pub fn evaluate(&self, monoid: &NumericalMonoid) -> u64 {
        self.exponents
            .iter()
            .zip(monoid.generators())
            .map(|(e, g)| e * g)
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthStats {
    pub n: u64,
    pub max_len: u64,
    pub min_len: u64,
    #[serde(skip)]
    pub elasticity: Rational,
}

/// `M` and `m` tables up to their quasilinearity thresholds.
#[derive(Clone, Debug)]
pub struct LengthTables {
    monoid: NumericalMonoid,
    max_threshold: u64,
    min_threshold: u64,
    max_len: Vec<u32>,
    min_len: Vec<u32>,
}

impl LengthTables {
    pub fn new(monoid: &NumericalMonoid) -> Result<Self> {
        Self::with_limit(monoid, DEFAULT_TABLE_LIMIT)
    }

    pub fn with_limit(monoid: &NumericalMonoid, limit: u64) -> Result<Self> {
        let g1 = monoid.multiplicity();
        let gk = monoid.largest();
        let max_threshold = (g1 - 1) * gk;
        let min_threshold = (gk - 1) * monoid.second_largest();
        let size = max_threshold.max(min_threshold) + 1;
        if size > limit {
            return Err(Error::TableTooLarge {
                requested: size,
                limit,
            });
        }
        let gens: Vec<usize> = monoid.generators().iter().map(|&g| g as usize).collect();
        let max_len = build_table(&gens, max_threshold as usize, |a, b| a.max(b))?;
        let min_len = build_table(&gens, min_threshold as usize, |a, b| a.min(b))?;
        Ok(LengthTables {
            monoid: monoid.clone(),
            max_threshold,
            min_threshold,
            max_len,
            min_len,
        })
    }

    pub fn monoid(&self) -> &NumericalMonoid {
        &self.monoid
    }

    /// `(g_1 - 1) g_k`
    pub fn max_threshold(&self) -> u64 {
        self.max_threshold
    }

    /// `(g_k - 1) g_{k-1}`
    pub fn min_threshold(&self) -> u64 {
        self.min_threshold
    }

    pub fn contains(&self, n: u64) -> bool {
        n > self.max_threshold || self.max_len[n as usize] != ABSENT
    }

    pub fn max_length(&self, n: u64) -> Result<u64> {
        lookup(
            &self.max_len,
            self.max_threshold,
            self.monoid.multiplicity(),
            n,
        )
    }

    pub fn min_length(&self, n: u64) -> Result<u64> {
        lookup(&self.min_len, self.min_threshold, self.monoid.largest(), n)
    }

    /// `M(n) / m(n)`, with the convention that the elasticity of `0` is `1`.
    pub fn elasticity(&self, n: u64) -> Result<Rational> {
        let (max, min) = (self.max_length(n)?, self.min_length(n)?);
        if n == 0 {
            return Ok(Rational::one());
        }
        Ok(Rational::from_u64s(max, min))
    }

    pub fn stats(&self, n: u64) -> Result<LengthStats> {
        let max_len = self.max_length(n)?;
        let min_len = self.min_length(n)?;
        let elasticity = if n == 0 {
            Rational::one()
        } else {
            Rational::from_u64s(max_len, min_len)
        };
        Ok(LengthStats {
            n,
            max_len,
            min_len,
            elasticity,
        })
    }

    /// Stats for every element of the monoid in `[lo, hi]`, ascending.
    pub fn stats_range(&self, lo: u64, hi: u64) -> Vec<LengthStats> {
        if lo > hi {
            return Vec::new();
        }
        (lo..=hi)
            .into_par_iter()
            .filter(|&n| self.contains(n))
            .map(|n| self.stats(n).expect("membership checked"))
            .collect()
    }

    /// Overwrites one stored maximum length. Used by the verification
    /// command to demonstrate that a corrupted table is detected.
    #[doc(hidden)]
    pub fn corrupt_max_entry(&mut self, n: u64) {
        if let Some(v) = self.max_len.get_mut(n as usize) {
            *v = v.wrapping_add(1);
        }
    }
}

fn build_table(gens: &[usize], upto: usize, pick: impl Fn(u32, u32) -> u32) -> Result<Vec<u32>> {
    let mut table = vec![ABSENT; upto + 1];
    table[0] = 0;
    for n in 1..=upto {
        let mut best = None;
        for &g in gens {
            if g > n {
                break;
            }
            let prev = table[n - g];
            if prev != ABSENT {
                best = Some(best.map_or(prev, |b| pick(b, prev)));
            }
        }
        if let Some(b) = best {
            let len = b
                .checked_add(1)
                .filter(|&l| l != ABSENT)
                .ok_or(Error::Overflow)?;
            table[n] = len;
        }
    }
    Ok(table)
}

fn lookup(table: &[u32], threshold: u64, step: u64, n: u64) -> Result<u64> {
    if n <= threshold {
        return match table[n as usize] {
            ABSENT => Err(Error::NotInMonoid(n)),
            len => Ok(len as u64),
        };
    }
    let shifts = (n - threshold).div_ceil(step);
    let base = n - shifts * step;
    match table[base as usize] {
        ABSENT => Err(Error::NotInMonoid(n)),
        len => (len as u64).checked_add(shifts).ok_or(Error::Overflow),
    }
}

pub fn max_length(monoid: &NumericalMonoid, n: u64) -> Result<u64> {
    LengthTables::new(monoid)?.max_length(n)
}

pub fn min_length(monoid: &NumericalMonoid, n: u64) -> Result<u64> {
    LengthTables::new(monoid)?.min_length(n)
}

pub fn elasticity(monoid: &NumericalMonoid, n: u64) -> Result<Rational> {
    LengthTables::new(monoid)?.elasticity(n)
}

pub fn length_stats_range(monoid: &NumericalMonoid, lo: u64, hi: u64) -> Result<Vec<LengthStats>> {
    Ok(LengthTables::new(monoid)?.stats_range(lo, hi))
}

/// All factorizations of `n`, ordered lexicographically descending starting
/// from the exponent of the largest generator. Empty when `n` is not in the
/// monoid.
pub fn factorizations(monoid: &NumericalMonoid, n: u64) -> Result<Vec<Factorization>> {
    factorizations_with_limit(monoid, n, DEFAULT_ENUMERATION_LIMIT)
}

pub fn factorizations_with_limit(
    monoid: &NumericalMonoid,
    n: u64,
    limit: u64,
) -> Result<Vec<Factorization>> {
    let gens = monoid.generators();
    let mut out = Vec::new();
    let mut exps = vec![0u64; gens.len()];
    let mut visited = 0u64;
    enumerate(
        gens,
        gens.len(),
        n,
        &mut exps,
        &mut out,
        &mut visited,
        limit,
    )?;
    Ok(out)
}

fn enumerate(
    gens: &[u64],
    upto: usize,
    rest: u64,
    exps: &mut [u64],
    out: &mut Vec<Factorization>,
    visited: &mut u64,
    limit: u64,
) -> Result<()> {
    *visited += 1;
    if *visited > limit {
        return Err(Error::EnumerationTooLarge(limit));
    }
    if upto == 1 {
        if rest.is_multiple_of(gens[0]) {
            exps[0] = rest / gens[0];
            out.push(Factorization::new(exps.to_vec()));
            exps[0] = 0;
        }
        return Ok(());
    }
    let g = gens[upto - 1];
    for e in (0..=rest / g).rev() {
        exps[upto - 1] = e;
        enumerate(gens, upto - 1, rest - e * g, exps, out, visited, limit)?;
    }
    exps[upto - 1] = 0;
    Ok(())
}

/// Length set of every integer in `[0, hi]`; `None` marks non-members.
///
/// Built by the union recurrence `L(n) = U_i (L(n - g_i) + 1)` on bitsets.
pub fn length_sets_upto(monoid: &NumericalMonoid, hi: u64) -> Vec<Option<BTreeSet<u64>>> {
    let gens = monoid.generators();
    let width = (hi / monoid.multiplicity()) as usize + 1;
    let words = width.div_ceil(64);
    let mut bits: Vec<Option<Vec<u64>>> = vec![None; hi as usize + 1];
    let mut zero = vec![0u64; words];
    zero[0] = 1;
    bits[0] = Some(zero);
    for n in 1..=hi as usize {
        let mut acc: Option<Vec<u64>> = None;
        for &g in gens {
            let g = g as usize;
            if g > n {
                break;
            }
            if let Some(prev) = &bits[n - g] {
                let slot = acc.get_or_insert_with(|| vec![0u64; words]);
                // shift left by one: every length grows by one
                let mut carry = 0u64;
                for (dst, &src) in slot.iter_mut().zip(prev) {
                    *dst |= (src << 1) | carry;
                    carry = src >> 63;
                }
            }
        }
        bits[n] = acc;
    }
    bits.into_iter()
        .map(|b| {
            b.map(|words| {
                let mut set = BTreeSet::new();
                for (w, &word) in words.iter().enumerate() {
                    let mut word = word;
                    while word != 0 {
                        let bit = word.trailing_zeros() as u64;
                        set.insert(w as u64 * 64 + bit);
                        word &= word - 1;
                    }
                }
                set
            })
        })
        .collect()
}

pub fn length_set(monoid: &NumericalMonoid, n: u64) -> Result<BTreeSet<u64>> {
    length_sets_upto(monoid, n)
        .pop()
        .flatten()
        .ok_or(Error::NotInMonoid(n))
}

/// Finds `T`, a proper subset of `{1, ..., r}` (1-based), whose sum is
/// congruent to the full sum modulo `k`. For `k = 0` congruence means
/// equality.
///
/// Two prefix sums that agree modulo `k` bound a block whose removal keeps
/// the residue; the first such pair is used.
pub fn find_proper_subcollection(k: u64, c: &[i64]) -> Result<BTreeSet<usize>> {
    let reduce = |x: i128| if k == 0 { x } else { x.rem_euclid(k as i128) };
    let mut seen: HashMap<i128, usize> = HashMap::new();
    let mut prefix = 0i128;
    seen.insert(reduce(0), 0);
    for (j, &value) in c.iter().enumerate() {
        prefix += value as i128;
        let j = j + 1;
        if let Some(&i) = seen.get(&reduce(prefix)) {
            return Ok((1..=c.len()).filter(|&t| t <= i || t > j).collect());
        }
        seen.insert(reduce(prefix), j);
    }
    Err(Error::NoSubcollection)
}
