//! Numerical monoids: construction, membership, Frobenius number and
//! detection of arithmetic-sequence generating sets.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Default upper bound on the largest generator.
pub const DEFAULT_MAX_GENERATOR: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonoidConfig {
    pub max_generator: u64,
}

impl Default for MonoidConfig {
    fn default() -> Self {
        MonoidConfig {
            max_generator: DEFAULT_MAX_GENERATOR,
        }
    }
}

/// A numerical monoid, stored by its minimal generating set in increasing
/// order. The generators always have gcd 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalMonoid {
    generators: Vec<u64>,
}

/// Parameters `(a, d, k)` of the arithmetical monoid `<a, a+d, ..., a+kd>`,
/// with `gcd(a, d) = 1` and `1 <= k < a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArithmeticalParams {
    a: u64,
    d: u64,
    k: u64,
}

impl ArithmeticalParams {
    pub fn new(a: u64, d: u64, k: u64) -> Result<Self> {
        if a == 0 || d == 0 || k == 0 {
            return Err(Error::InvalidInput(format!(
                "arithmetical parameters must be positive: ({a}, {d}, {k})"
            )));
        }
        if a.gcd(&d) != 1 {
            return Err(Error::InvalidInput(format!("gcd({a}, {d}) != 1")));
        }
        if k >= a {
            return Err(Error::InvalidInput(format!(
                "k = {k} must be below a = {a}"
            )));
        }
        if a.checked_add(k.checked_mul(d).ok_or(Error::Overflow)?)
            .is_none()
        {
            return Err(Error::Overflow);
        }
        Ok(ArithmeticalParams { a, d, k })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// The largest generator `a + kd`.
    pub fn top(&self) -> u64 {
        self.a + self.k * self.d
    }

    pub fn generators(&self) -> Vec<u64> {
        (0..=self.k).map(|i| self.a + i * self.d).collect()
    }

    pub fn monoid(&self) -> NumericalMonoid {
        // a, a+d, ..., a+kd with k < a is always minimal and coprime.
        NumericalMonoid {
            generators: self.generators(),
        }
    }
}

impl fmt::Display for ArithmeticalParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, d={}, k={})", self.a, self.d, self.k)
    }
}

impl NumericalMonoid {
    /// Builds the monoid generated by `raw` with the default configuration.
    pub fn new(raw: &[u64]) -> Result<Self> {
        Self::with_config(raw, &MonoidConfig::default())
    }

    /// Sorts, deduplicates and drops non-minimal generators.
    pub fn with_config(raw: &[u64], config: &MonoidConfig) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        if raw.contains(&0) {
            return Err(Error::ZeroGenerator);
        }
        let mut gens = raw.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let top = *gens.last().unwrap();
        if top > config.max_generator {
            return Err(Error::GeneratorTooLarge {
                generator: top,
                cap: config.max_generator,
            });
        }
        let g = gens.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::NonCoprime(g));
        }

        // A generator is redundant iff it is reachable from the smaller ones.
        let mut reach = vec![false; top as usize + 1];
        reach[0] = true;
        let mut minimal = Vec::new();
        let mut filled = 0usize;
        for &g in &gens {
            extend_reach(&mut reach, &minimal, filled + 1, g as usize);
            filled = g as usize;
            if !reach[g as usize] {
                minimal.push(g);
                reach[g as usize] = true;
            }
        }
        Ok(NumericalMonoid {
            generators: minimal,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Number of minimal generators.
    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    /// Smallest generator `g_1`.
    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    /// Largest generator `g_k`.
    pub fn largest(&self) -> u64 {
        *self.generators.last().unwrap()
    }

    /// Second-largest generator `g_{k-1}`; equals `g_k` for `<1>`.
    pub fn second_largest(&self) -> u64 {
        let k = self.generators.len();
        if k >= 2 {
            self.generators[k - 2]
        } else {
            self.generators[0]
        }
    }

    /// Every integer at or above this value lies in the monoid.
    pub fn conductor_bound(&self) -> u64 {
        (self.multiplicity() - 1) * (self.largest() - 1)
    }

    /// Reachability table over `[0, n]`.
    pub fn membership_table(&self, n: u64) -> Vec<bool> {
        let mut reach = vec![false; n as usize + 1];
        reach[0] = true;
        extend_reach(&mut reach, &self.generators, 1, n as usize);
        reach
    }

    pub fn contains(&self, n: u64) -> bool {
        if n >= self.conductor_bound() {
            return true;
        }
        self.membership_table(n)[n as usize]
    }

    /// Largest integer outside the monoid, or `-1` for `<1>`.
    pub fn frobenius(&self) -> i64 {
        let bound = self.conductor_bound();
        if bound == 0 {
            return -1;
        }
        let table = self.membership_table(bound);
        table
            .iter()
            .rposition(|&inside| !inside)
            .map_or(-1, |f| f as i64)
    }

    /// `g_k / g_1`, the supremum (and maximum) of the elasticity set.
    pub fn max_elasticity(&self) -> Rational {
        Rational::from_u64s(self.largest(), self.multiplicity())
    }

    /// `(a, d, k)` when the generators form `a, a+d, ..., a+kd`.
    pub fn detect_arithmetical(&self) -> Option<ArithmeticalParams> {
        let gens = &self.generators;
        if gens.len() < 2 {
            return None;
        }
        let a = gens[0];
        let d = gens[1] - gens[0];
        if gens.windows(2).any(|w| w[1] - w[0] != d) {
            return None;
        }
        ArithmeticalParams::new(a, d, gens.len() as u64 - 1).ok()
    }
}

impl fmt::Display for NumericalMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

fn extend_reach(reach: &mut [bool], gens: &[u64], from: usize, to: usize) {
    for n in from..=to {
        reach[n] = gens
            .iter()
            .any(|&g| g as usize <= n && reach[n - g as usize]);
    }
}

/// Parses a comma-separated generator list such as `3,5,7`.
pub fn parse_generators(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("not a generator: {s:?}")))
        })
        .collect()
}
