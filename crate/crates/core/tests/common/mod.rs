//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's length machinery.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_integer::Integer;

/// Max and min factorization length of `n` by walking every coefficient
/// vector; `None` when `n` is not representable.
pub fn enumerate_lengths(gens: &[u64], n: u64) -> Option<(u64, u64)> {
    let mut best: Option<(u64, u64)> = None;
    walk(gens, n, 0, &mut |len| {
        best = Some(match best {
            None => (len, len),
            Some((hi, lo)) => (hi.max(len), lo.min(len)),
        });
    });
    best
}

/// Every factorization length of `n`, with multiplicity collapsed.
pub fn enumerate_length_set(gens: &[u64], n: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    walk(gens, n, 0, &mut |len| {
        out.insert(len);
    });
    out
}

/// Number of factorizations of `n`.
pub fn count_factorizations(gens: &[u64], n: u64) -> u64 {
    let mut count = 0;
    walk(gens, n, 0, &mut |_| count += 1);
    count
}

fn walk(gens: &[u64], rest: u64, len: u64, visit: &mut impl FnMut(u64)) {
    match gens.split_last() {
        None => {
            if rest == 0 {
                visit(len)
            }
        }
        Some((&g, [])) => {
            if rest.is_multiple_of(g) {
                visit(len + rest / g)
            }
        }
        Some((&g, others)) => {
            for e in 0..=rest / g {
                walk(others, rest - e * g, len + e, visit);
            }
        }
    }
}

/// `(M(n), m(n))` for every `n` in `[0, upto]` by the plain recurrence over
/// the whole range.
pub fn dp_lengths(gens: &[u64], upto: u64) -> Vec<Option<(u64, u64)>> {
    let mut table: Vec<Option<(u64, u64)>> = vec![None; upto as usize + 1];
    table[0] = Some((0, 0));
    for n in 1..table.len() {
        let mut cell: Option<(u64, u64)> = None;
        for &g in gens {
            let g = g as usize;
            if g <= n {
                if let Some((hi, lo)) = table[n - g] {
                    cell = Some(
                        cell.map_or((hi + 1, lo + 1), |(h, l)| (h.max(hi + 1), l.min(lo + 1))),
                    );
                }
            }
        }
        table[n] = cell;
    }
    table
}

/// Length sets of every `n` in `[0, upto]`.
pub fn dp_length_sets(gens: &[u64], upto: u64) -> Vec<Option<BTreeSet<u64>>> {
    let mut table: Vec<Option<BTreeSet<u64>>> = vec![None; upto as usize + 1];
    table[0] = Some(BTreeSet::from([0]));
    for n in 1..table.len() {
        let mut cell: Option<BTreeSet<u64>> = None;
        for &g in gens {
            let g = g as usize;
            if g <= n {
                if let Some(prev) = &table[n - g] {
                    cell.get_or_insert_with(BTreeSet::new)
                        .extend(prev.iter().map(|l| l + 1));
                }
            }
        }
        table[n] = cell;
    }
    table
}

/// Reduced fraction as a plain pair, so oracle values never touch the
/// library's rational type.
pub fn reduced(num: u64, den: u64) -> (u64, u64) {
    let g = num.gcd(&den);
    (num / g, den / g)
}

/// Elasticity of every element in `[1, upto]`, reduced.
pub fn elasticities_upto(gens: &[u64], upto: u64) -> Vec<Option<(u64, u64)>> {
    dp_lengths(gens, upto)
        .into_iter()
        .enumerate()
        .map(|(n, cell)| match (n, cell) {
            (0, Some(_)) => Some((1, 1)),
            (_, Some((hi, lo))) => Some(reduced(hi, lo)),
            _ => None,
        })
        .collect()
}

/// Cross-multiplied comparison of two non-negative fractions.
pub fn frac_lt(a: (u64, u64), b: (u64, u64)) -> bool {
    (a.0 as u128) * (b.1 as u128) < (b.0 as u128) * (a.1 as u128)
}

/// Elasticity of the tuple `(c, s, x)` of `<a, a+d, ..., a+kd>` straight
/// from the defining formula, with admissibility checked by hand.
pub fn tuple_value(a: u64, d: u64, k: u64, c: u64, s: u64, x: u64) -> Option<(u64, u64)> {
    if s >= k || x * k < s * a || x > (s * a + 2 * (a - 1)) / k + d {
        return None;
    }
    let num = c * (a + k * d) + x + s * d;
    let den = c * a + x;
    Some(if den == 0 { (1, 1) } else { reduced(num, den) })
}

/// Every tuple value with slice at most `max_slice`.
pub fn tuple_values(a: u64, d: u64, k: u64, max_slice: u64) -> BTreeSet<(u64, u64)> {
    let mut out = BTreeSet::new();
    for slice in 0..=max_slice {
        let (c, s) = (slice / k, slice % k);
        for x in 0..=(s * a + 2 * (a - 1)) / k + d {
            if let Some(v) = tuple_value(a, d, k, c, s, x) {
                out.insert(v);
            }
        }
    }
    out
}

pub fn arithmetic_generators(a: u64, d: u64, k: u64) -> Vec<u64> {
    (0..=k).map(|i| a + i * d).collect()
}
