//! Invariant suites behind the `verify` command.
//!
//! Every check compares a library result against an independent route:
//! exhaustive coefficient enumeration, a full-range length DP without the
//! quasilinear shortcut, or exact rational identities.

use std::collections::BTreeSet;

use crate::arithmetical::{
    enumerate_tuples, recover_a_over_k, recover_d, three_minimal_elasticities, tuple_elasticity,
    witness_element,
};
use crate::factorizations::{factorizations, LengthTables};
use crate::monoid::NumericalMonoid;
use crate::profile::{compare_profiles, ElasticityProfile, Outcome};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Core,
    Arith,
    Profile,
    All,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Corrupt one stored table entry before checking; the suite must fail.
    pub tamper: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

pub const FIXTURES: &[&[u64]] = &[
    &[3, 5],
    &[3, 5, 7],
    &[7, 41],
    &[20, 21, 45],
    &[7, 12, 17, 22],
    &[5, 16, 17, 18, 19],
    &[6, 10, 13, 14],
];

pub fn run(suite: Suite, options: VerifyOptions) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Core | Suite::All) {
        core_suite(options, &mut out);
    }
    if matches!(suite, Suite::Arith | Suite::All) {
        arith_suite(&mut out);
    }
    if matches!(suite, Suite::Profile | Suite::All) {
        profile_suite(&mut out);
    }
    out
}

fn fixture(g: &[u64]) -> NumericalMonoid {
    NumericalMonoid::new(g).expect("fixture generators are valid")
}

fn record(out: &mut Vec<CheckOutcome>, name: String, failure: Option<String>) {
    out.push(CheckOutcome {
        name,
        passed: failure.is_none(),
        detail: failure.unwrap_or_default(),
    });
}

/// `M` and `m` for every integer in `[0, upto]` by the plain recurrence.
pub fn direct_lengths(monoid: &NumericalMonoid, upto: u64) -> Vec<Option<(u64, u64)>> {
    let mut table: Vec<Option<(u64, u64)>> = vec![None; upto as usize + 1];
    table[0] = Some((0, 0));
    for n in 1..=upto as usize {
        for &g in monoid.generators() {
            let g = g as usize;
            if g > n {
                break;
            }
            if let Some((hi, lo)) = table[n - g] {
                table[n] = Some(match table[n] {
                    None => (hi + 1, lo + 1),
                    Some((h, l)) => (h.max(hi + 1), l.min(lo + 1)),
                });
            }
        }
    }
    table
}

fn exhaustive_member(gens: &[u64], n: u64) -> bool {
    match gens.split_last() {
        None => n == 0,
        Some((&g, rest)) => (0..=n / g).any(|e| exhaustive_member(rest, n - e * g)),
    }
}

fn core_suite(options: VerifyOptions, out: &mut Vec<CheckOutcome>) {
    for g in FIXTURES {
        let s = fixture(g);

        let again = NumericalMonoid::new(s.generators()).ok();
        record(
            out,
            format!("core/normalization-idempotent {s}"),
            (again.as_ref() != Some(&s)).then(|| format!("renormalized to {again:?}")),
        );

        if s.largest() <= 25 {
            let bound = (s.frobenius() + 1) as u64 + s.multiplicity() * s.largest();
            let bad = (0..=bound).find(|&n| s.contains(n) != exhaustive_member(s.generators(), n));
            record(
                out,
                format!("core/membership-vs-enumeration {s}"),
                bad.map(|n| format!("disagree at {n}")),
            );
        }

        let f = s.frobenius();
        let scan_ok = f < 0
            || (!exhaustive_member(s.generators(), f as u64)
                && (f as u64 + 1..=f as u64 + s.multiplicity())
                    .all(|n| exhaustive_member(s.generators(), n)));
        record(
            out,
            format!("core/frobenius {s}"),
            (!scan_ok).then(|| format!("frobenius {f} not confirmed")),
        );

        let roundtrip = s
            .detect_arithmetical()
            .is_none_or(|p| p.monoid() == s && p.monoid().detect_arithmetical() == Some(p));
        record(
            out,
            format!("core/arithmetical-roundtrip {s}"),
            (!roundtrip).then(|| "params do not regenerate the monoid".to_string()),
        );

        let mut tables = LengthTables::new(&s).expect("fixture tables fit");
        if options.tamper {
            tables.corrupt_max_entry(s.multiplicity());
        }
        let upto = 2 * s.second_largest() * s.largest();
        let direct = direct_lengths(&s, upto);
        let mut bad = None;
        for n in 0..=upto {
            let lib = tables.max_length(n).ok().zip(tables.min_length(n).ok());
            if lib != direct[n as usize] {
                bad = Some(format!(
                    "n = {n}: tables {lib:?}, direct {:?}",
                    direct[n as usize]
                ));
                break;
            }
            if s.largest() <= 30 && n <= 300 {
                let z = factorizations(&s, n).expect("small enumeration");
                let lens = z.iter().map(|f| f.len());
                let brute = lens.clone().max().zip(lens.min());
                if brute != direct[n as usize] {
                    bad = Some(format!("n = {n}: enumeration {brute:?}"));
                    break;
                }
            }
        }
        record(out, format!("core/length-tables-vs-oracle {s}"), bad);

        let top = s.max_elasticity();
        let bad = (0..=upto).filter(|&n| tables.contains(n)).find(|&n| {
            let r = tables.elasticity(n).unwrap();
            r < Rational::one() || r > top
        });
        record(
            out,
            format!("core/elasticity-bounds {s}"),
            bad.map(|n| format!("rho({n}) outside [1, {top}]")),
        );
    }
}

fn arith_suite(out: &mut Vec<CheckOutcome>) {
    for g in [&[3u64, 5][..], &[7, 12, 17, 22], &[4, 5, 6], &[6, 7, 8, 9]] {
        let s = fixture(g);
        let p = s.detect_arithmetical().expect("arithmetical fixture");
        let tables = LengthTables::new(&s).unwrap();

        // enough slices for every element up to `bound`
        let bound = 600u64;
        let max_slice = bound / p.a() / p.d() + 2;
        let tuples = enumerate_tuples(&p, max_slice);
        let values: BTreeSet<Rational> = tuples
            .iter()
            .map(|e| tuple_elasticity(&p, &e.tuple).unwrap())
            .collect();
        let missing = (1..=bound)
            .filter(|&n| tables.contains(n))
            .find(|&n| !values.contains(&tables.elasticity(n).unwrap()));
        record(
            out,
            format!("arith/elasticities-are-tuple-values {s}"),
            missing.map(|n| format!("rho({n}) not parametrized")),
        );

        let bad = tuples.iter().find(|e| {
            let n = witness_element(&p, &e.tuple).unwrap();
            tables.elasticity(n).ok() != tuple_elasticity(&p, &e.tuple).ok()
        });
        record(
            out,
            format!("arith/tuple-witnesses {s}"),
            bad.map(|e| format!("witness of {:?} has the wrong elasticity", e.tuple)),
        );

        let recovered = three_minimal_elasticities(&s).ok().and_then(|[_, f, g]| {
            let d = recover_d(&f, &g).ok()?;
            Some((d, recover_a_over_k(&s.max_elasticity(), d).ok()?))
        });
        let expected = (p.d(), Rational::from_u64s(p.a(), p.k()));
        record(
            out,
            format!("arith/recover-d-and-a-over-k {s}"),
            (recovered.as_ref() != Some(&expected))
                .then(|| format!("recovered {recovered:?}, expected {expected:?}")),
        );

        let bad = (1..=bound).filter(|&n| tables.contains(n)).find(|&n| {
            let (hi, lo) = (tables.max_length(n).unwrap(), tables.min_length(n).unwrap());
            (hi - lo) % p.d() != 0
        });
        record(
            out,
            format!("arith/length-gap-divisible-by-d {s}"),
            bad.map(|n| format!("M({n}) - m({n}) not a multiple of d")),
        );
    }
}

fn profile_suite(out: &mut Vec<CheckOutcome>) {
    for g in [&[3u64, 5][..], &[7, 41], &[20, 21, 45], &[7, 12, 17, 22]] {
        let s = fixture(g);
        let profile = ElasticityProfile::build(&s).unwrap();
        let upto = profile.base() + 10 * profile.period();
        let direct = direct_lengths(&s, upto);
        let bad = (profile.base()..=upto).find(|&n| {
            let (hi, lo) = direct[n as usize].expect("window elements are in the monoid");
            profile.elasticity_of(n) != Some(Rational::from_u64s(hi, lo))
        });
        record(
            out,
            format!("profile/decomposition {s}"),
            bad.map(|n| format!("sequence value differs at n = {n}")),
        );

        let bad = (1..=upto).find(|&n| match direct[n as usize] {
            Some((hi, lo)) => profile
                .contains_elasticity(&Rational::from_u64s(hi, lo))
                .is_none(),
            None => false,
        });
        record(
            out,
            format!("profile/membership-complete {s}"),
            bad.map(|n| format!("rho({n}) reported absent")),
        );

        let bad = (0..profile.sequences().len()).find(|&i| {
            (0..20).any(|t| {
                profile.sequence_value(i, t + 1).unwrap() < profile.sequence_value(i, t).unwrap()
            })
        });
        record(
            out,
            format!("profile/monotone-sequences {s}"),
            bad.map(|i| format!("sequence {i} decreases")),
        );

        let v = compare_profiles(&profile, &profile, 5);
        record(
            out,
            format!("profile/reflexive-comparison {s}"),
            (v.outcome != Outcome::Equal).then(|| format!("got {:?}", v.outcome)),
        );
    }
}
