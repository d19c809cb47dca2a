//! Brute-force ground truth over the space of candy distributions.
//!
//! A distribution of `c` candies over `n` vertices is a composition of `c`
//! into `n` non-negative parts; there are `C(c+n-1, n-1)` of them. They are
//! enumerated and ranked in lexicographic order, so `(0, ..., 0, c)` has rank
//! 0 and `(c, 0, ..., 0)` is last.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{self, VerificationReport};
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::parallel::{self, ClassifyLimits, Outcome};
use crate::rng;

/// Default limit on the number of compositions an exhaustive pass visits.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Compositions checked per parallel batch in [`exhaustive_verify`].
const BATCH: usize = 2048;

/// `C(a, b)` exactly.
pub fn binomial(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Number of compositions of `c` into `n` parts.
pub fn composition_count(n: usize, c: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidParameter("compositions need at least one part".into()));
    }
    let top = c
        .checked_add(n as u64 - 1)
        .ok_or(Error::Overflow("c + n - 1 does not fit in 64 bits"))?;
    Ok(binomial(top, n as u64 - 1))
}

/// Lexicographic cursor over all compositions of `c` into `n` parts.
#[derive(Debug, Clone)]
pub struct CompositionCursor {
    n: usize,
    c: u64,
    current: Vec<u64>,
    rank: u64,
    done: bool,
}

impl CompositionCursor {
    pub fn new(n: usize, c: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("compositions need at least one part".into()));
        }
        let mut current = vec![0; n];
        current[n - 1] = c;
        Ok(CompositionCursor { n, c, current, rank: 0, done: false })
    }

    pub fn parts(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> u64 {
        self.c
    }

    /// Rank of the composition the next call to `next` returns.
    pub fn rank(&self) -> u64 {
        self.rank
    }

    fn advance(&mut self) {
        // Move one unit from the last nonzero part (other than the first) to
        // its left neighbor, and park the rest of that part at the end.
        let Some(j) = (1..self.n).rev().find(|&j| self.current[j] > 0) else {
            self.done = true;
            return;
        };
        let moved = self.current[j];
        self.current[j] = 0;
        self.current[j - 1] += 1;
        self.current[self.n - 1] = moved - 1;
    }
}

impl Iterator for CompositionCursor {
    type Item = Configuration;

    fn next(&mut self) -> Option<Configuration> {
        if self.done {
            return None;
        }
        let out = Configuration::from_parts_unchecked(self.current.clone(), self.c);
        self.rank += 1;
        self.advance();
        Some(out)
    }
}

/// All compositions of `c` into `n` parts, lexicographically, provided there
/// are at most `cap` of them.
pub fn enumerate_configs_capped(n: usize, c: u64, cap: u64) -> Result<CompositionCursor> {
    Configuration::new(vec![c])?;
    let count = composition_count(n, c)?;
    if count > BigUint::from(cap) {
        return Err(Error::ResourceExhausted { what: "composition enumeration", cap });
    }
    CompositionCursor::new(n, c)
}

pub fn enumerate_configs(n: usize, c: u64) -> Result<CompositionCursor> {
    enumerate_configs_capped(n, c, DEFAULT_ENUMERATION_CAP)
}

/// Lexicographic rank of a composition.
pub fn rank(parts: &[u64]) -> BigUint {
    let mut rank = BigUint::zero();
    let mut remaining: u64 = parts.iter().sum();
    for (i, &v) in parts.iter().enumerate() {
        let k = (parts.len() - i) as u64;
        if k == 1 {
            break;
        }
        // compositions of `remaining` into k parts whose first part is < v
        rank += binomial(remaining + k - 1, k - 1) - binomial(remaining - v + k - 1, k - 1);
        remaining -= v;
    }
    rank
}

/// Composition of `c` into `n` parts with lexicographic rank `rank`.
pub fn unrank(n: usize, c: u64, rank: &BigUint) -> Result<Vec<u64>> {
    let count = composition_count(n, c)?;
    if rank >= &count {
        return Err(Error::InvalidParameter(format!("rank {rank} out of range for {count} compositions")));
    }
    let mut r = rank.clone();
    let mut remaining = c;
    let mut parts = Vec::with_capacity(n);
    for i in 0..n - 1 {
        let k = (n - i) as u64;
        let all = binomial(remaining + k - 1, k - 1);
        // smaller(v): compositions whose first part is below v; monotone in v
        let smaller = |v: u64| &all - binomial(remaining - v + k - 1, k - 1);
        let (mut lo, mut hi) = (0u64, remaining);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if smaller(mid) <= r {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        r -= smaller(lo);
        parts.push(lo);
        remaining -= lo;
    }
    parts.push(remaining);
    Ok(parts)
}

/// Uniform random composition: a rank drawn uniformly below the composition
/// count from the ChaCha8 stream of `seed`, then unranked.
pub fn random_config(n: usize, c: u64, seed: u64) -> Result<Configuration> {
    Configuration::new(vec![c])?;
    let count = composition_count(n, c)?;
    let mut rng = rng::seeded(seed);
    let rank = rng.gen_biguint_below(&count);
    Configuration::new(unrank(n, c, &rank)?)
}

/// What [`exhaustive_verify`] checks for every composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// The game reaches a fixed point.
    Stabilizes,
    CoreInvariants,
    Lemma1,
    Lemma2,
    Theorem,
    /// Everything above.
    All,
}

impl std::str::FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "stabilizes" => Property::Stabilizes,
            "core" | "core_invariants" => Property::CoreInvariants,
            "lemma1" => Property::Lemma1,
            "lemma2" => Property::Lemma2,
            "theorem" => Property::Theorem,
            "all" => Property::All,
            other => return Err(Error::InvalidParameter(format!("unknown property {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass { configs: u64 },
    Counterexample {
        config: Configuration,
        /// Lexicographic rank of `config`.
        rank: u64,
        detail: String,
        report: Option<Box<VerificationReport>>,
    },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveOptions {
    pub enumeration_cap: u64,
    pub classify: ClassifyLimits,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        ExhaustiveOptions { enumeration_cap: DEFAULT_ENUMERATION_CAP, classify: ClassifyLimits::default() }
    }
}

/// Checks `property` on the game started from `init`. `Ok(None)` means it
/// holds; otherwise a description and, for trace checks, the full report.
pub fn check_one(
    g: &Graph,
    init: &Configuration,
    property: Property,
    limits: ClassifyLimits,
) -> Result<Option<(String, Option<Box<VerificationReport>>)>> {
    if property == Property::Stabilizes {
        return Ok(match parallel::classify_with(g, init, limits)? {
            Outcome::Stabilized { .. } => None,
            Outcome::EventuallyPeriodic { preperiod, period } => Some((
                format!("eventually periodic: preperiod {preperiod}, period {period}"),
                None,
            )),
        });
    }
    let (full, _) = analysis::verify_instance_with(g, init, limits)?;
    let report = match property {
        Property::All => full,
        Property::CoreInvariants => full.only(analysis::CORE_CHECKS),
        Property::Lemma1 => full.only(analysis::LEMMA1_CHECKS),
        Property::Lemma2 => full.only(analysis::LEMMA2_CHECKS),
        Property::Theorem => full.only(analysis::THEOREM_CHECKS),
        Property::Stabilizes => unreachable!(),
    };
    Ok(report.first_failure().map(|check| (check.describe(), Some(Box::new(report.clone())))))
}

/// Applies `property` to every composition of `c` over the vertices of `g`.
/// The counterexample returned, if any, is the lexicographically first.
pub fn exhaustive_verify(g: &Graph, c: u64, property: Property) -> Result<Verdict> {
    exhaustive_verify_with(g, c, property, &ExhaustiveOptions::default())
}

pub fn exhaustive_verify_with(g: &Graph, c: u64, property: Property, opts: &ExhaustiveOptions) -> Result<Verdict> {
    let mut cursor = enumerate_configs_capped(g.n(), c, opts.enumeration_cap)?;
    let mut checked = 0u64;
    loop {
        let base = cursor.rank();
        let batch: Vec<Configuration> = cursor.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            return Ok(Verdict::Pass { configs: checked });
        }
        // find_map_first keeps the lowest index, so the lexicographic minimum
        // survives parallel evaluation.
        let hit = batch
            .par_iter()
            .enumerate()
            .map(|(i, init)| check_one(g, init, property, opts.classify).map(|r| r.map(|found| (i, found))))
            .find_map_first(|res| match res {
                Ok(None) => None,
                other => Some(other),
            });
        match hit {
            Some(Err(e)) => return Err(e),
            Some(Ok(Some((i, (detail, report))))) => {
                return Ok(Verdict::Counterexample {
                    config: batch[i].clone(),
                    rank: base + i as u64,
                    detail,
                    report,
                })
            }
            _ => checked += batch.len() as u64,
        }
    }
}
