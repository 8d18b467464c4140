//! Elasticity tuples for arithmetical monoids `<a, a+d, ..., a+kd>`.
//!
//! A tuple `(c, s, x)` with `c >= 0`, `0 <= s < k` and
//! `ceil(sa/k) <= x <= floor((sa + 2(a-1))/k) + d` has elasticity
//! `(c(a+kd) + x + sd) / (ca + x)`, and these values are exactly the
//! elasticity set of the monoid. The slice of a tuple is `ck + s`; its row
//! is `x`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::monoid::{ArithmeticalParams, NumericalMonoid};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElasticityTuple {
    pub c: u64,
    pub s: u64,
    pub x: u64,
}

impl ElasticityTuple {
    pub fn new(c: u64, s: u64, x: u64) -> Self {
        ElasticityTuple { c, s, x }
    }

    pub fn slice(&self, params: &ArithmeticalParams) -> u64 {
        self.c * params.k() + self.s
    }

    pub fn validate(&self, params: &ArithmeticalParams) -> Result<()> {
        let invalid = || Error::InvalidTuple {
            c: self.c,
            s: self.s,
            x: self.x,
        };
        let (lo, hi) = tuple_bounds(params, self.s).map_err(|_| invalid())?;
        if self.x < lo || self.x > hi {
            return Err(invalid());
        }
        Ok(())
    }

    pub fn is_minimal(&self, params: &ArithmeticalParams) -> bool {
        matches!(tuple_bounds(params, self.s), Ok((lo, _)) if lo == self.x)
    }

    pub fn is_maximal(&self, params: &ArithmeticalParams) -> bool {
        matches!(tuple_bounds(params, self.s), Ok((_, hi)) if hi == self.x)
    }
}

/// A tuple together with its position inside its slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumeratedTuple {
    pub tuple: ElasticityTuple,
    pub minimal: bool,
    pub maximal: bool,
}

/// Admissible rows `(x_min, x_max)` for a given `s`.
pub fn tuple_bounds(params: &ArithmeticalParams, s: u64) -> Result<(u64, u64)> {
    let (a, d, k) = (params.a(), params.d(), params.k());
    if s >= k {
        return Err(Error::SOutOfRange { s, k });
    }
    let lo = (s * a).div_ceil(k);
    let hi = (s * a + 2 * (a - 1)) / k + d;
    assert!(lo <= hi, "empty row range for s = {s} in {params}");
    Ok((lo, hi))
}

/// Every tuple with slice at most `max_slice`, ordered by `(slice, x)`.
pub fn enumerate_tuples(params: &ArithmeticalParams, max_slice: u64) -> Vec<EnumeratedTuple> {
    let k = params.k();
    let mut out = Vec::new();
    for slice in 0..=max_slice {
        let (c, s) = (slice / k, slice % k);
        let (lo, hi) = tuple_bounds(params, s).expect("s < k");
        for x in lo..=hi {
            out.push(EnumeratedTuple {
                tuple: ElasticityTuple::new(c, s, x),
                minimal: x == lo,
                maximal: x == hi,
            });
        }
    }
    out
}

/// Numerator and denominator of the tuple's elasticity before reduction.
fn raw_elasticity(params: &ArithmeticalParams, t: &ElasticityTuple) -> (u64, u64) {
    let (a, d) = (params.a(), params.d());
    let num = t.c * params.top() + t.x + t.s * d;
    let den = t.c * a + t.x;
    (num, den)
}

pub fn tuple_elasticity(params: &ArithmeticalParams, t: &ElasticityTuple) -> Result<Rational> {
    t.validate(params)?;
    let (num, den) = raw_elasticity(params, t);
    if den == 0 {
        return Ok(Rational::one());
    }
    Ok(Rational::from_u64s(num, den))
}

/// An element of the monoid whose elasticity equals that of `t`.
///
/// Splits `xk - sa = y' + y''` with `y' < a`, `y'' < a + kd`, taking the
/// smallest admissible `y'`, and returns `(c(a+kd) + x + sd) a + y' d`.
pub fn witness_element(params: &ArithmeticalParams, t: &ElasticityTuple) -> Result<u64> {
    t.validate(params)?;
    let (a, d, k) = (params.a(), params.d(), params.k());
    let spread = t.x * k - t.s * a;
    let y_low = spread.saturating_sub(params.top() - 1);
    debug_assert!(y_low < a && spread - y_low < params.top());
    let (num, _) = raw_elasticity(params, t);
    Ok(num * a + y_low * d)
}

/// Which inequality between two tuple elasticities holds, and why.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TupleOrder {
    /// Same tuple.
    Identical,
    /// Same row, with `c` and `s` both no larger in one tuple: that tuple
    /// has the smaller elasticity. The ordering compares `rho(t1)` with
    /// `rho(t2)` and is never strict in the wrong direction.
    ///
    /// A lower slice alone is not enough: in `<3,4,5>` the tuple `(0,1,2)`
    /// has elasticity `3/2` while `(1,0,2)` has `7/5`.
    SameRow(Ordering),
    /// Same `(c, s)`: the lower row has the larger elasticity.
    SameSlice(Ordering),
    /// No monotonicity shortcut applies; exact comparison.
    Exact(Ordering),
}

impl TupleOrder {
    /// Whether `actual`, the exact ordering of `rho(t1)` against `rho(t2)`,
    /// is consistent with this prediction.
    pub fn admits(&self, actual: Ordering) -> bool {
        match *self {
            TupleOrder::Identical => actual == Ordering::Equal,
            TupleOrder::SameRow(o) | TupleOrder::SameSlice(o) => {
                actual == Ordering::Equal || actual == o
            }
            TupleOrder::Exact(o) => actual == o,
        }
    }
}

pub fn compare_tuples(
    params: &ArithmeticalParams,
    t1: &ElasticityTuple,
    t2: &ElasticityTuple,
) -> Result<TupleOrder> {
    t1.validate(params)?;
    t2.validate(params)?;
    if t1 == t2 {
        return Ok(TupleOrder::Identical);
    }
    if t1.x == t2.x {
        let (c, s) = (t1.c.cmp(&t2.c), t1.s.cmp(&t2.s));
        if c == s || s == Ordering::Equal {
            return Ok(TupleOrder::SameRow(c));
        }
        if c == Ordering::Equal {
            return Ok(TupleOrder::SameRow(s));
        }
    }
    if (t1.c, t1.s) == (t2.c, t2.s) {
        return Ok(TupleOrder::SameSlice(t2.x.cmp(&t1.x)));
    }
    let r1 = tuple_elasticity(params, t1)?;
    let r2 = tuple_elasticity(params, t2)?;
    Ok(TupleOrder::Exact(r1.cmp(&r2)))
}

/// Recovers the step `d = (g-1)(f-1)/(g-f)` from the second and third
/// smallest elasticities `f < g`.
pub fn recover_d(f: &Rational, g: &Rational) -> Result<u64> {
    let one = Rational::one();
    if !(one < *f && f < g) {
        return Err(Error::InvalidInput(format!(
            "need 1 < f < g, got f={f}, g={g}"
        )));
    }
    let g1 = g.checked_sub(&one).expect("g > 1");
    let f1 = f.checked_sub(&one).expect("f > 1");
    let gap = g.checked_sub(f).expect("g > f");
    let d = &(&g1 * &f1) / &gap;
    if !d.is_integer() || d.is_zero() {
        return Err(Error::NonIntegerResult(d.to_string()));
    }
    d.to_u64_pair()
        .map(|(n, _)| n)
        .ok_or_else(|| Error::NonIntegerResult(d.to_string()))
}

/// Recovers `a/k = d / (sup - 1)`.
pub fn recover_a_over_k(sup: &Rational, d: u64) -> Result<Rational> {
    let excess = sup
        .checked_sub(&Rational::one())
        .filter(|e| !e.is_zero())
        .ok_or_else(|| Error::InvalidInput(format!("supremum {sup} must exceed 1")))?;
    Ok(&Rational::from_integer(d) / &excess)
}

/// The three smallest values of the elasticity set, in increasing order,
/// read off the tuples of slices `0..=2k+2`.
pub fn three_minimal_elasticities(monoid: &NumericalMonoid) -> Result<[Rational; 3]> {
    let params = monoid.detect_arithmetical().ok_or(Error::NotArithmetical)?;
    Ok(three_minimal_from_params(&params))
}

pub fn three_minimal_from_params(params: &ArithmeticalParams) -> [Rational; 3] {
    let values: BTreeSet<Rational> = enumerate_tuples(params, 2 * params.k() + 2)
        .iter()
        .map(|e| tuple_elasticity(params, &e.tuple).expect("enumerated tuples are valid"))
        .collect();
    let mut it = values.into_iter();
    let mut next = || it.next().expect("at least three distinct values");
    [next(), next(), next()]
}

/// For `k >= 2`, the second and third smallest elasticities are
/// `(B + d)/B` and `(B - 1 + d)/(B - 1)` with `B = floor((3a-2)/k) + d`.
pub fn closed_form_minimal_pair(params: &ArithmeticalParams) -> Option<(Rational, Rational)> {
    if params.k() < 2 {
        return None;
    }
    let (a, d, k) = (params.a(), params.d(), params.k());
    let b = (3 * a - 2) / k + d;
    Some((
        Rational::from_u64s(b + d, b),
        Rational::from_u64s(b - 1 + d, b - 1),
    ))
}

/// A maximal tuple `(c, s, x)` with `a'(s+2) = 1 (mod k')` and
/// `gcd(ca + x, ck + s) = 1`, where `g = gcd(a, k)`, `a' = a/g`, `k' = k/g`.
///
/// The integer `b` in the construction is the valid one of smallest
/// magnitude.
pub fn maximal_coprime_tuple(params: &ArithmeticalParams) -> Result<ElasticityTuple> {
    let (a, d, k) = (params.a(), params.d(), params.k());
    let g = a.gcd(&k);
    if g < 2 {
        return Err(Error::NotApplicable);
    }
    let (a1, k1) = ((a / g) as i128, (k / g) as i128);
    let s0 = (0..k1)
        .find(|s| (a1 * (s + 2)).rem_euclid(k1) == 1 % k1)
        .expect("a' is invertible mod k'");
    let x0 = ((s0 + 2) * a1 - 1) / k1 + d as i128;

    let egcd = a1.extended_gcd(&k1);
    let (p, q) = (egcd.x, egcd.y);
    debug_assert_eq!(p * a1 + q * k1, 1);

    // b (s a' - x k') > p x + q s, where s a' - x k' < 0
    let slope = s0 * a1 - x0 * k1;
    assert!(slope < 0);
    let rhs = p * x0 + q * s0;
    let b_max = -Integer::div_floor(&rhs, &(-slope)) - 1;
    let b = b_max.min(0);
    assert!(b * slope > rhs);

    let m = 1 - (p + b * k1) * x0 - (q - b * a1) * s0;
    assert!(m > 0);
    let (c, r) = m.div_rem(&(g as i128));
    let tuple = ElasticityTuple::new(
        u64::try_from(c).map_err(|_| Error::Overflow)?,
        u64::try_from(s0 + r * k1).map_err(|_| Error::Overflow)?,
        u64::try_from(x0 + r * a1).map_err(|_| Error::Overflow)?,
    );

    assert!(tuple.is_maximal(params), "{tuple:?} is not maximal");
    assert_eq!((a1 * (tuple.s as i128 + 2)).rem_euclid(k1), 1 % k1);
    assert_eq!((tuple.c * a + tuple.x).gcd(&(tuple.c * k + tuple.s)), 1);
    Ok(tuple)
}

/// Maps a tuple of `<a', ..., a'+k'd>` to one of `<ga', ..., ga'+gk'd>` with
/// the same elasticity: `(c', s', x') -> (q, s' + rk', x' + ra')` where
/// `c' = qg + r`.
pub fn phi_embed(
    from: &ArithmeticalParams,
    to: &ArithmeticalParams,
    t: &ElasticityTuple,
) -> Result<ElasticityTuple> {
    let g = to.a().gcd(&to.k());
    if from.d() != to.d() || g < 2 || to.a() / g != from.a() || to.k() / g != from.k() {
        return Err(Error::IncompatibleParams);
    }
    t.validate(from)?;
    let (q, r) = t.c.div_rem(&g);
    let image = ElasticityTuple::new(q, t.s + r * from.k(), t.x + r * from.a());
    debug_assert!(image.validate(to).is_ok());
    Ok(image)
}

fn equality_conditions(p: &ArithmeticalParams, q: &ArithmeticalParams) -> bool {
    if p == q {
        return true;
    }
    p.d() == q.d()
        && p.a() * q.k() == q.a() * p.k()
        && p.a().gcd(&p.k()) >= 2
        && q.a().gcd(&q.k()) >= 2
}

/// Whether two arithmetical monoids have the same elasticity set.
pub fn elasticity_sets_equal_arithmetical(p: &ArithmeticalParams, q: &ArithmeticalParams) -> bool {
    equality_conditions(p, q)
}

/// Whether two arithmetical monoids have the same set of length sets.
pub fn length_sets_equal_arithmetical(p: &ArithmeticalParams, q: &ArithmeticalParams) -> bool {
    equality_conditions(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: u64, d: u64, k: u64) -> ArithmeticalParams {
        ArithmeticalParams::new(a, d, k).unwrap()
    }

    fn r(n: u64, d: u64) -> Rational {
        Rational::from_u64s(n, d)
    }

    #[test]
    fn bounds() {
        assert_eq!(tuple_bounds(&params(7, 5, 3), 1).unwrap(), (3, 11));
        assert_eq!(tuple_bounds(&params(7, 5, 3), 0).unwrap(), (0, 9));
        assert_eq!(tuple_bounds(&params(3, 2, 1), 0).unwrap(), (0, 6));
        assert_eq!(
            tuple_bounds(&params(7, 5, 3), 3),
            Err(Error::SOutOfRange { s: 3, k: 3 })
        );
    }

    #[test]
    fn enumeration() {
        let p = params(7, 5, 3);
        let ts = enumerate_tuples(&p, 0);
        let got: Vec<_> = ts.iter().map(|e| e.tuple).collect();
        let want: Vec<_> = (0..=9).map(|x| ElasticityTuple::new(0, 0, x)).collect();
        assert_eq!(got, want);
        assert!(ts[0].minimal && !ts[0].maximal);
        assert!(ts[9].maximal);

        let p = params(3, 2, 1);
        let got: Vec<_> = enumerate_tuples(&p, 1).iter().map(|e| e.tuple).collect();
        let want: Vec<_> = (0..2)
            .flat_map(|c| (0..=6).map(move |x| ElasticityTuple::new(c, 0, x)))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn elasticity_values() {
        let p = params(7, 5, 3);
        assert_eq!(
            tuple_elasticity(&p, &ElasticityTuple::new(0, 1, 3)).unwrap(),
            r(8, 3)
        );
        for x in 0..=9 {
            assert_eq!(
                tuple_elasticity(&p, &ElasticityTuple::new(0, 0, x)).unwrap(),
                r(1, 1)
            );
        }
        let p = params(14, 3, 6);
        assert_eq!(
            tuple_elasticity(&p, &ElasticityTuple::new(7, 5, 19)).unwrap(),
            r(86, 39)
        );
        assert!(matches!(
            tuple_elasticity(&p, &ElasticityTuple::new(0, 1, 0)),
            Err(Error::InvalidTuple { .. })
        ));
    }

    #[test]
    fn witnesses() {
        let p = params(7, 5, 3);
        assert_eq!(
            witness_element(&p, &ElasticityTuple::new(0, 0, 0)).unwrap(),
            0
        );
        assert_eq!(
            witness_element(&p, &ElasticityTuple::new(0, 1, 3)).unwrap(),
            56
        );
        let p = params(3, 2, 1);
        assert_eq!(
            witness_element(&p, &ElasticityTuple::new(1, 0, 6)).unwrap(),
            37
        );
    }

    #[test]
    fn tuple_comparisons() {
        let p = params(7, 5, 3);
        let t1 = ElasticityTuple::new(0, 1, 5);
        let t2 = ElasticityTuple::new(0, 2, 5);
        assert_eq!(
            compare_tuples(&p, &t1, &t2).unwrap(),
            TupleOrder::SameRow(Ordering::Less)
        );
        let t3 = ElasticityTuple::new(0, 1, 3);
        assert_eq!(
            compare_tuples(&p, &t3, &t1).unwrap(),
            TupleOrder::SameSlice(Ordering::Greater)
        );
        assert_eq!(compare_tuples(&p, &t1, &t1).unwrap(), TupleOrder::Identical);
        let t4 = ElasticityTuple::new(1, 0, 6);
        assert!(matches!(
            compare_tuples(&p, &t1, &t4).unwrap(),
            TupleOrder::Exact(_)
        ));
        assert_eq!(
            compare_tuples(&p, &t1, &ElasticityTuple::new(1, 1, 5)).unwrap(),
            TupleOrder::SameRow(Ordering::Less)
        );

        // lower slice, larger elasticity
        let p = params(3, 1, 2);
        let (u, v) = (ElasticityTuple::new(0, 1, 2), ElasticityTuple::new(1, 0, 2));
        assert_eq!(tuple_elasticity(&p, &u).unwrap(), r(3, 2));
        assert_eq!(tuple_elasticity(&p, &v).unwrap(), r(7, 5));
        assert_eq!(
            compare_tuples(&p, &u, &v).unwrap(),
            TupleOrder::Exact(Ordering::Greater)
        );
    }

    #[test]
    fn recovery() {
        assert_eq!(recover_d(&r(16, 11), &r(3, 2)).unwrap(), 5);
        assert_eq!(recover_d(&r(11, 9), &r(5, 4)).unwrap(), 2);
        assert_eq!(recover_d(&r(3, 2), &r(2, 1)).unwrap(), 1);
        assert!(matches!(
            recover_d(&r(6, 5), &r(4, 3)),
            Err(Error::NonIntegerResult(_))
        ));
        assert!(recover_d(&r(3, 2), &r(3, 2)).is_err());
        assert_eq!(recover_a_over_k(&r(22, 7), 5).unwrap(), r(7, 3));
        assert_eq!(recover_a_over_k(&r(5, 3), 2).unwrap(), r(3, 1));
        assert_eq!(recover_a_over_k(&r(4, 1), 3).unwrap(), r(1, 1));
        assert!(recover_a_over_k(&r(1, 1), 3).is_err());
    }

    #[test]
    fn minimal_elasticities() {
        let s = NumericalMonoid::new(&[7, 12, 17, 22]).unwrap();
        assert_eq!(
            three_minimal_elasticities(&s).unwrap(),
            [r(1, 1), r(16, 11), r(3, 2)]
        );
        let s = NumericalMonoid::new(&[3, 5]).unwrap();
        assert_eq!(
            three_minimal_elasticities(&s).unwrap(),
            [r(1, 1), r(11, 9), r(5, 4)]
        );
        let s = NumericalMonoid::new(&[20, 21, 45]).unwrap();
        assert_eq!(three_minimal_elasticities(&s), Err(Error::NotArithmetical));
        assert_eq!(
            closed_form_minimal_pair(&params(7, 5, 3)).unwrap(),
            (r(16, 11), r(3, 2))
        );
    }

    #[test]
    fn coprime_tuple_construction() {
        let t = maximal_coprime_tuple(&params(14, 3, 6)).unwrap();
        assert_eq!(t, ElasticityTuple::new(7, 5, 19));
        let t = maximal_coprime_tuple(&params(4, 1, 2)).unwrap();
        assert_eq!(t, ElasticityTuple::new(2, 1, 6));
        assert_eq!(
            maximal_coprime_tuple(&params(7, 3, 3)),
            Err(Error::NotApplicable)
        );
    }

    #[test]
    fn embedding() {
        let from = params(7, 3, 3);
        let to = params(14, 3, 6);
        let t = ElasticityTuple::new(5, 1, 3);
        let image = phi_embed(&from, &to, &t).unwrap();
        assert_eq!(image, ElasticityTuple::new(2, 4, 10));
        assert_eq!(tuple_elasticity(&from, &t).unwrap(), r(43, 19));
        assert_eq!(tuple_elasticity(&to, &image).unwrap(), r(43, 19));
        let t = ElasticityTuple::new(0, 2, 5);
        assert_eq!(phi_embed(&from, &to, &t).unwrap(), t);
        assert_eq!(phi_embed(&to, &from, &t), Err(Error::IncompatibleParams));
    }

    #[test]
    fn equality_criterion() {
        assert!(!elasticity_sets_equal_arithmetical(
            &params(14, 3, 6),
            &params(7, 3, 3)
        ));
        assert!(elasticity_sets_equal_arithmetical(
            &params(4, 1, 2),
            &params(6, 1, 3)
        ));
        assert!(elasticity_sets_equal_arithmetical(
            &params(7, 3, 3),
            &params(7, 3, 3)
        ));
        assert!(length_sets_equal_arithmetical(
            &params(4, 1, 2),
            &params(6, 1, 3)
        ));
        assert!(!length_sets_equal_arithmetical(
            &params(14, 3, 6),
            &params(7, 3, 3)
        ));
    }
}
