//! Exact description of the elasticity set of an arbitrary numerical monoid.
//!
//! For `n >= B = g_{k-1} g_k` the max and min length functions are both
//! quasilinear, so `rho(n + t g_1 g_k) = (M(n) + t g_k) / (m(n) + t g_1)`.
//! The elasticity set is therefore the set of values attained below
//! `B + g_1 g_k` together with `g_1 g_k` increasing sequences, one per
//! residue window element, each converging to `g_k / g_1`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arithmetical::{maximal_coprime_tuple, tuple_elasticity};
use crate::error::{Error, Result};
use crate::factorizations::LengthTables;
use crate::monoid::NumericalMonoid;
use crate::rational::Rational;

pub const DEFAULT_T_MAX: u64 = 50;

/// Largest residue modulus the tail certificate will split a sequence into.
const MODULUS_CAP: u64 = 1_000_000;

/// Largest number of leading sequence terms checked one by one.
const HEAD_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub n0: u64,
    pub max_len: u64,
    pub min_len: u64,
    /// `max_len / min_len == g_k / g_1`, so every term equals the limit.
    pub constant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElasticityProfile {
    monoid: NumericalMonoid,
    base: u64,
    period: u64,
    /// Each value attained below `base + period`, with its smallest witness.
    finite_part: BTreeMap<Rational, u64>,
    sequences: Vec<SequenceRecord>,
}

impl ElasticityProfile {
    pub fn build(monoid: &NumericalMonoid) -> Result<Self> {
        let tables = LengthTables::new(monoid)?;
        Self::from_tables(&tables)
    }

    pub fn from_tables(tables: &LengthTables) -> Result<Self> {
        let monoid = tables.monoid();
        if monoid.embedding_dimension() < 2 {
            return Err(Error::SingleGenerator);
        }
        let (g1, gk) = (monoid.multiplicity(), monoid.largest());
        let base = monoid.second_largest() * gk;
        let period = g1 * gk;
        assert!(
            (base as i64) > monoid.frobenius(),
            "window base {base} must exceed the Frobenius number"
        );

        let stats = tables.stats_range(0, base + period - 1);
        let mut finite_part = BTreeMap::new();
        // rho(0) = 1 by convention; g_1 already attains 1
        for st in stats.iter().filter(|st| st.n > 0) {
            finite_part.entry(st.elasticity.clone()).or_insert(st.n);
        }
        let sequences = stats
            .iter()
            .filter(|st| st.n >= base)
            .map(|st| SequenceRecord {
                n0: st.n,
                max_len: st.max_len,
                min_len: st.min_len,
                constant: st.max_len * g1 == st.min_len * gk,
            })
            .collect::<Vec<_>>();
        assert_eq!(sequences.len() as u64, period);
        Ok(ElasticityProfile {
            monoid: monoid.clone(),
            base,
            period,
            finite_part,
            sequences,
        })
    }

    pub fn monoid(&self) -> &NumericalMonoid {
        &self.monoid
    }

    /// `g_{k-1} g_k`
    pub fn base(&self) -> u64 {
        self.base
    }

    /// `g_1 g_k`
    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn finite_part(&self) -> &BTreeMap<Rational, u64> {
        &self.finite_part
    }

    pub fn sequences(&self) -> &[SequenceRecord] {
        &self.sequences
    }

    pub fn limit(&self) -> Rational {
        self.monoid.max_elasticity()
    }

    /// Index of the sequence through `n0`, if `n0` lies in the window.
    pub fn sequence_index(&self, n0: u64) -> Option<usize> {
        (self.base..self.base + self.period)
            .contains(&n0)
            .then(|| (n0 - self.base) as usize)
    }

    /// `(M_0 + t g_k) / (m_0 + t g_1)` for the given sequence.
    pub fn sequence_value(&self, index: usize, t: u64) -> Result<Rational> {
        let seq = self.sequences.get(index).ok_or(Error::IndexOutOfRange {
            index,
            len: self.sequences.len(),
        })?;
        let (g1, gk) = (
            self.monoid.multiplicity() as u128,
            self.monoid.largest() as u128,
        );
        let t = t as u128;
        let num = seq.max_len as u128 + t * gk;
        let den = seq.min_len as u128 + t * g1;
        Rational::new(num, den)
    }

    /// The elasticity of any element, read off the profile.
    pub fn elasticity_of(&self, n: u64) -> Option<Rational> {
        if n < self.base {
            return None;
        }
        let offset = n - self.base;
        self.sequence_value((offset % self.period) as usize, offset / self.period)
            .ok()
    }

    /// Whether `q` is the elasticity of some element; returns the smallest
    /// such element.
    pub fn contains_elasticity(&self, q: &Rational) -> Option<u64> {
        if *q < Rational::one() {
            return None;
        }
        if let Some(&n) = self.finite_part.get(q) {
            return Some(n);
        }
        if *q == self.limit() {
            return Some(self.period);
        }
        if let Some((p, r)) = q.to_u64_pair() {
            return self.solve_sequences_small(p as i128, r as i128);
        }
        let (p, r) = q.to_bigint_pair();
        let (g1, gk) = (
            BigInt::from(self.monoid.multiplicity()),
            BigInt::from(self.monoid.largest()),
        );
        // p (m0 + t g1) = r (M0 + t gk)
        let coeff = &p * &g1 - &r * &gk;
        if coeff.is_zero() {
            return None;
        }
        self.sequences
            .iter()
            .filter_map(|seq| {
                let rhs = &r * BigInt::from(seq.max_len) - &p * BigInt::from(seq.min_len);
                let (t, rem) = rhs.div_rem(&coeff);
                if !rem.is_zero() || t.is_negative() {
                    return None;
                }
                let t = t.to_u64()?;
                t.checked_mul(self.period)?.checked_add(seq.n0)
            })
            .min()
    }

    /// Same equation as above in machine integers; every product stays
    /// below `2^64 * 2^64`.
    fn solve_sequences_small(&self, p: i128, r: i128) -> Option<u64> {
        let (g1, gk) = (
            self.monoid.multiplicity() as i128,
            self.monoid.largest() as i128,
        );
        let coeff = p * g1 - r * gk;
        if coeff == 0 {
            return None;
        }
        self.sequences
            .iter()
            .filter_map(|seq| {
                let rhs = r * seq.max_len as i128 - p * seq.min_len as i128;
                if rhs % coeff != 0 {
                    return None;
                }
                let t = u64::try_from(rhs / coeff).ok()?;
                t.checked_mul(self.period)?.checked_add(seq.n0)
            })
            .min()
    }

    /// The `count` smallest distinct elasticities, in increasing order.
    ///
    /// Non-constant sequences increase strictly, so only their first
    /// `count` terms can matter; the zeroth terms already sit in the finite
    /// part.
    pub fn smallest_values(&self, count: usize) -> Vec<Rational> {
        let mut values: BTreeSet<Rational> = self.finite_part.keys().take(count).cloned().collect();
        for (i, seq) in self.sequences.iter().enumerate() {
            if seq.constant {
                continue;
            }
            for t in 1..count as u64 {
                values.insert(self.sequence_value(i, t).expect("index in range"));
            }
        }
        values.into_iter().take(count).collect()
    }

    pub fn to_document(&self) -> Result<ProfileDocument> {
        let finite_part = self
            .finite_part
            .iter()
            .map(|(q, &n)| {
                let (num, den) = q.to_u64_pair().ok_or(Error::Overflow)?;
                Ok([num, den, n])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ProfileDocument {
            generators: self.monoid.generators().to_vec(),
            base: self.base,
            period: self.period,
            finite_part,
            sequences: self
                .sequences
                .iter()
                .map(|s| [s.n0, s.max_len, s.min_len])
                .collect(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(&self.to_document()?)
            .map_err(|e| Error::InvalidInput(e.to_string()))
    }

    /// Parses a profile document and checks it against a fresh computation.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ProfileDocument =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let monoid = NumericalMonoid::new(&doc.generators)?;
        let profile = Self::build(&monoid)?;
        if profile.to_document()? != doc {
            return Err(Error::InvalidInput(
                "profile document disagrees with its generators".into(),
            ));
        }
        Ok(profile)
    }
}

/// Serialized form of a profile. Finite-part entries are
/// `[numerator, denominator, witness]` in increasing order of value;
/// sequence entries are `[n0, M(n0), m(n0)]` in increasing `n0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileDocument {
    pub generators: Vec<u64>,
    pub base: u64,
    pub period: u64,
    pub finite_part: Vec<[u64; 3]>,
    pub sequences: Vec<[u64; 3]>,
}

pub fn build_profile(monoid: &NumericalMonoid) -> Result<ElasticityProfile> {
    ElasticityProfile::build(monoid)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Equal,
    NotEqual,
    Unknown,
}

/// Terms `t = residue + modulus * u` (for `u >= start`) of a source sequence
/// coincide with terms `t' = alpha * u + beta` of the target sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineAlignment {
    pub target: usize,
    pub modulus: u64,
    pub residue: u64,
    pub alpha: BigInt,
    pub beta: BigInt,
    pub start: u64,
}

impl AffineAlignment {
    /// Checks the alignment as a polynomial identity in `u` (both sides have
    /// degree at most two, so three sample points decide it).
    pub fn holds(
        &self,
        source: &ElasticityProfile,
        index: usize,
        target: &ElasticityProfile,
    ) -> bool {
        let (Some(s), Some(t)) = (
            source.sequences.get(index),
            target.sequences.get(self.target),
        ) else {
            return false;
        };
        let big = |x: u64| BigInt::from(x);
        let (g1, gk) = (
            big(source.monoid.multiplicity()),
            big(source.monoid.largest()),
        );
        let (h1, hk) = (
            big(target.monoid.multiplicity()),
            big(target.monoid.largest()),
        );
        (0..3u64).all(|u| {
            let t_src = big(self.residue) + big(self.modulus) * big(u);
            let t_dst = &self.alpha * big(u) + &self.beta;
            let lhs = (big(s.max_len) + &t_src * &gk) * (big(t.min_len) + &t_dst * &h1);
            let rhs = (big(t.max_len) + &t_dst * &hk) * (big(s.min_len) + &t_src * &g1);
            lhs == rhs
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceCertificate {
    pub source: usize,
    pub constant: bool,
    /// Alignments covering every residue class of `t` modulo their lcm.
    pub alignments: Vec<AffineAlignment>,
    /// Terms with `t` below this were checked individually.
    pub head: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Certificate {
    /// Sequences of the first profile placed inside the second set.
    pub forward: Vec<SequenceCertificate>,
    /// Sequences of the second profile placed inside the first set.
    pub backward: Vec<SequenceCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonVerdict {
    pub outcome: Outcome,
    /// An elasticity in exactly one of the two sets; present iff `NotEqual`.
    pub witness: Option<Rational>,
    pub checked_bound: u64,
    pub certificate: Option<Certificate>,
}

impl ComparisonVerdict {
    fn not_equal(witness: Rational, checked_bound: u64) -> Self {
        ComparisonVerdict {
            outcome: Outcome::NotEqual,
            witness: Some(witness),
            checked_bound,
            certificate: None,
        }
    }
}

/// Compares the elasticity sets of two monoids.
///
/// `Equal` is returned only with a complete two-sided certificate, and
/// `NotEqual` only with a witness that one profile contains and the other
/// does not.
pub fn compare_profiles(
    first: &ElasticityProfile,
    second: &ElasticityProfile,
    t_max: u64,
) -> ComparisonVerdict {
    let (lim1, lim2) = (first.limit(), second.limit());
    if lim1 != lim2 {
        return ComparisonVerdict::not_equal(lim1.max(lim2), 0);
    }

    if let Some(w) = arithmetical_separator(first, second) {
        return ComparisonVerdict::not_equal(w, 0);
    }

    let mut misses = BTreeSet::new();
    bounded_cross_check(first, second, t_max, &mut misses);
    bounded_cross_check(second, first, t_max, &mut misses);

    let forward = certify_direction(first, second, &mut misses);
    let backward = certify_direction(second, first, &mut misses);

    if let Some(w) = misses.into_iter().next() {
        return ComparisonVerdict::not_equal(w, t_max);
    }
    match (forward, backward) {
        (Some(forward), Some(backward)) => ComparisonVerdict {
            outcome: Outcome::Equal,
            witness: None,
            checked_bound: t_max,
            certificate: Some(Certificate { forward, backward }),
        },
        _ => ComparisonVerdict {
            outcome: Outcome::Unknown,
            witness: None,
            checked_bound: t_max,
            certificate: None,
        },
    }
}

/// For two arithmetical monoids with equal `d` and `a/k` where exactly one
/// has `gcd(a, k) >= 2`, the maximal coprime tuple of that one gives an
/// elasticity the other set lacks.
fn arithmetical_separator(p: &ElasticityProfile, q: &ElasticityProfile) -> Option<Rational> {
    let (pa, qa) = (
        p.monoid.detect_arithmetical()?,
        q.monoid.detect_arithmetical()?,
    );
    let coarse = |x: &crate::monoid::ArithmeticalParams| x.a().gcd(&x.k()) >= 2;
    if pa.d() != qa.d() || pa.a() * qa.k() != qa.a() * pa.k() || coarse(&pa) == coarse(&qa) {
        return None;
    }
    let (owner, other, params) = if coarse(&pa) { (p, q, pa) } else { (q, p, qa) };
    let tuple = maximal_coprime_tuple(&params).ok()?;
    let w = tuple_elasticity(&params, &tuple).ok()?;
    (owner.contains_elasticity(&w).is_some() && other.contains_elasticity(&w).is_none())
        .then_some(w)
}

fn bounded_cross_check(
    from: &ElasticityProfile,
    into: &ElasticityProfile,
    t_max: u64,
    misses: &mut BTreeSet<Rational>,
) {
    for q in from.finite_part.keys() {
        if into.contains_elasticity(q).is_none() {
            misses.insert(q.clone());
        }
    }
    for (i, seq) in from.sequences.iter().enumerate() {
        if seq.constant {
            continue;
        }
        for t in 1..=t_max {
            let q = from.sequence_value(i, t).expect("index in range");
            if into.contains_elasticity(&q).is_none() {
                misses.insert(q);
            }
        }
    }
}

/// `D = g_k m0 - g_1 M0`, positive for every non-constant sequence.
fn defect(profile: &ElasticityProfile, seq: &SequenceRecord) -> BigInt {
    BigInt::from(profile.monoid.largest()) * BigInt::from(seq.min_len)
        - BigInt::from(profile.monoid.multiplicity()) * BigInt::from(seq.max_len)
}

/// The terms of `from`'s sequence `i` that equal terms of `into`'s sequence
/// `j` form one residue class of `t`; returns its alignment.
fn align(
    from: &ElasticityProfile,
    i: usize,
    into: &ElasticityProfile,
    j: usize,
) -> Option<AffineAlignment> {
    let (s, t) = (&from.sequences[i], &into.sequences[j]);
    if never_meet(from, s, into, t) {
        return None;
    }
    let g = BigInt::from(from.monoid.multiplicity());
    let h = BigInt::from(into.monoid.multiplicity());
    let (d_s, d_t) = (defect(from, s), defect(into, t));
    // t' = (A + B t) / C
    let a = &d_t * &g * BigInt::from(s.min_len) - &d_s * &h * BigInt::from(t.min_len);
    let b = &d_t * &g * &g;
    let c = &d_s * &h * &h;
    let gcd = b.gcd(&c);
    if !(-&a).is_multiple_of(&gcd) {
        return None;
    }
    let modulus = &c / &gcd;
    let alpha = &b / &gcd;
    let residue = if modulus.is_one() {
        BigInt::zero()
    } else {
        let inv = mod_inverse(&alpha, &modulus)?;
        ((-&a / &gcd) * inv).mod_floor(&modulus)
    };
    let beta_num = &a + &b * &residue;
    debug_assert!(beta_num.is_multiple_of(&c));
    let beta = beta_num / &c;
    let start = if beta.is_negative() {
        (-&beta).div_ceil(&alpha)
    } else {
        BigInt::zero()
    };
    Some(AffineAlignment {
        target: j,
        modulus: modulus.to_u64()?,
        residue: residue.to_u64()?,
        alpha,
        beta,
        start: start.to_u64()?,
    })
}

/// Machine-integer version of the solvability test in [`align`]; `false`
/// when undecided because of overflow.
fn never_meet(
    from: &ElasticityProfile,
    s: &SequenceRecord,
    into: &ElasticityProfile,
    t: &SequenceRecord,
) -> bool {
    let run = || -> Option<bool> {
        let g = from.monoid.multiplicity() as i128;
        let h = into.monoid.multiplicity() as i128;
        let defect = |p: &ElasticityProfile, r: &SequenceRecord| {
            (p.monoid.largest() as i128)
                .checked_mul(r.min_len as i128)?
                .checked_sub((p.monoid.multiplicity() as i128).checked_mul(r.max_len as i128)?)
        };
        let (d_s, d_t) = (defect(from, s)?, defect(into, t)?);
        let a = d_t
            .checked_mul(g)?
            .checked_mul(s.min_len as i128)?
            .checked_sub(d_s.checked_mul(h)?.checked_mul(t.min_len as i128)?)?;
        let b = d_t.checked_mul(g)?.checked_mul(g)?;
        let c = d_s.checked_mul(h)?.checked_mul(h)?;
        Some(a % b.gcd(&c) != 0)
    };
    run().unwrap_or(false)
}

fn mod_inverse(x: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = x.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Certifies that every sequence of `from` lies in the elasticity set of
/// `into`. Terms proven absent are added to `misses`. Returns `None` when
/// some sequence could not be settled within the caps.
fn certify_direction(
    from: &ElasticityProfile,
    into: &ElasticityProfile,
    misses: &mut BTreeSet<Rational>,
) -> Option<Vec<SequenceCertificate>> {
    let mut certs = Vec::with_capacity(from.sequences.len());
    let mut settled = true;
    for (i, seq) in from.sequences.iter().enumerate() {
        if seq.constant {
            // every term is the limit, which both sets attain
            certs.push(SequenceCertificate {
                source: i,
                constant: true,
                alignments: Vec::new(),
                head: 0,
            });
            continue;
        }
        match certify_sequence(from, i, into, misses) {
            Some(cert) => certs.push(cert),
            None => settled = false,
        }
    }
    settled.then_some(certs)
}

fn certify_sequence(
    from: &ElasticityProfile,
    i: usize,
    into: &ElasticityProfile,
    misses: &mut BTreeSet<Rational>,
) -> Option<SequenceCertificate> {
    let candidates: Vec<AffineAlignment> = into
        .sequences
        .iter()
        .enumerate()
        .filter(|(_, t)| !t.constant)
        .filter_map(|(j, _)| align(from, i, into, j))
        .collect();

    let mut lcm = 1u64;
    for al in &candidates {
        lcm = lcm.lcm(&al.modulus);
        if lcm > MODULUS_CAP {
            return None;
        }
    }

    let mut used: BTreeMap<usize, AffineAlignment> = BTreeMap::new();
    let mut head = 0u64;
    let mut complete = true;
    for class in 0..lcm {
        let Some((idx, al)) = candidates
            .iter()
            .enumerate()
            .find(|(_, al)| class % al.modulus == al.residue)
        else {
            // No sequence of `into` ever meets this class, so only finitely
            // many of its terms can be in the other set.
            complete = false;
            if let Some(w) = uncovered_witness(from, i, into, class, lcm) {
                misses.insert(w);
            }
            continue;
        };
        let first = al.residue + al.modulus * al.start;
        let first = class + (first.saturating_sub(class)).div_ceil(lcm) * lcm;
        head = head.max(first);
        used.entry(idx).or_insert_with(|| al.clone());
    }
    if !complete {
        return None;
    }
    if head > HEAD_CAP {
        return None;
    }
    for t in 0..head {
        let q = from.sequence_value(i, t).expect("index in range");
        if into.contains_elasticity(&q).is_none() {
            misses.insert(q);
            complete = false;
        }
    }
    let alignments: Vec<_> = used.into_values().collect();
    debug_assert!(alignments.iter().all(|al| al.holds(from, i, into)));
    complete.then_some(SequenceCertificate {
        source: i,
        constant: false,
        alignments,
        head,
    })
}

fn uncovered_witness(
    from: &ElasticityProfile,
    i: usize,
    into: &ElasticityProfile,
    class: u64,
    lcm: u64,
) -> Option<Rational> {
    // at most |finite part| terms of the class can be absorbed
    let tries = into.finite_part.len() as u64 + 1;
    (0..=tries).find_map(|step| {
        let t = class.checked_add(step.checked_mul(lcm)?)?;
        let q = from.sequence_value(i, t).ok()?;
        into.contains_elasticity(&q).is_none().then_some(q)
    })
}
