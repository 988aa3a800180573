//! Exact counting of integer compositions.
//!
//! Two conventions appear side by side here and are kept apart on purpose:
//! *positive* compositions (every part at least 1, counted by
//! `C(K - 1, n - 1)`) and *nonnegative* compositions (parts may be zero,
//! counted by `C(K + n - 1, n - 1)`). Coefficient vectors of admissible
//! polynomials are nonnegative compositions with a per-part cap.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// Default ceiling on `(cap + 1)^parts` for [`brute_force_compositions`].
pub const DEFAULT_ORACLE_LIMIT: u64 = 100_000_000;

/// Upper limit on each part of a composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cap {
    Bounded(BigUint),
    Unbounded,
}

/// Number of parts, target sum and per-part cap of a composition count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionQuery {
    parts: u64,
    target: BigUint,
    cap: Cap,
}

impl CompositionQuery {
    pub fn new(parts: u64, target: impl Into<BigUint>, cap: Cap) -> Result<Self> {
        if parts == 0 {
            return Err(Error::InvalidArgument(
                "a composition needs at least one part".into(),
            ));
        }
        Ok(CompositionQuery {
            parts,
            target: target.into(),
            cap,
        })
    }

    /// Shorthand for a query with a finite cap.
    pub fn bounded(
        parts: u64,
        target: impl Into<BigUint>,
        cap: impl Into<BigUint>,
    ) -> Result<Self> {
        Self::new(parts, target, Cap::Bounded(cap.into()))
    }

    pub fn parts(&self) -> u64 {
        self.parts
    }

    pub fn target(&self) -> &BigUint {
        &self.target
    }

    pub fn cap(&self) -> &Cap {
        &self.cap
    }
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigCount {
    if k < 0 {
        return BigUint::zero();
    }
    binomial_big(&BigInt::from(n), k as u64)
}

/// `C(n, k)` for an arbitrary-precision upper index.
///
/// A negative upper index yields zero rather than the generalized binomial.
pub(crate) fn binomial_big(n: &BigInt, k: u64) -> BigCount {
    if n.sign() == Sign::Minus {
        return BigUint::zero();
    }
    let n = n.magnitude();
    let k_big = BigUint::from(k);
    if &k_big > n {
        return BigUint::zero();
    }
    // Use the smaller of k and n - k; the running product stays integral
    // because each prefix is itself a binomial coefficient.
    let complement = n - &k_big;
    let k = if complement < k_big {
        complement.to_u64().expect("complement is below k")
    } else {
        k
    };
    let mut acc = BigUint::one();
    let base = n - BigUint::from(k);
    for i in 1..=k {
        acc *= &base + BigUint::from(i);
        acc /= BigUint::from(i);
    }
    acc
}

/// Ordered sums of `parts` positive integers equal to `target`: `C(target - 1, parts - 1)`.
pub fn count_positive_compositions(parts: u64, target: &BigUint) -> BigCount {
    assert!(parts >= 1, "parts must be at least 1");
    if target.is_zero() {
        return BigUint::zero();
    }
    binomial_big(&(BigInt::from(target.clone()) - 1), parts - 1)
}

/// Ordered sums of `parts` nonnegative integers equal to `target`: `C(target + parts - 1, parts - 1)`.
pub fn count_nonneg_compositions(parts: u64, target: &BigUint) -> BigCount {
    assert!(parts >= 1, "parts must be at least 1");
    binomial_big(&BigInt::from(target + BigUint::from(parts - 1)), parts - 1)
}

/// Number of `(a_1, ..., a_n)` with `sum a_i = target` and `0 <= a_i <= cap`.
///
/// Inclusion–exclusion over the set of parts forced above the cap:
/// `sum_j (-1)^j C(n, j) C(S - j(H + 1) + n - 1, n - 1)`, stopping once
/// `S - j(H + 1)` turns negative.
pub fn count_bounded_compositions(q: &CompositionQuery) -> BigCount {
    let cap = match &q.cap {
        Cap::Unbounded => return count_nonneg_compositions(q.parts, &q.target),
        Cap::Bounded(cap) if cap >= &q.target => {
            return count_nonneg_compositions(q.parts, &q.target)
        }
        Cap::Bounded(cap) => cap,
    };
    let n = q.parts;
    let step = BigInt::from(cap + 1u32);
    let mut remaining = BigInt::from(q.target.clone());
    let mut total = BigInt::zero();
    let mut j = 0u64;
    while j <= n && remaining.sign() != Sign::Minus {
        let term = BigInt::from(binomial(n, j as i64))
            * BigInt::from(binomial_big(&(&remaining + (n - 1)), n - 1));
        if j.is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
        remaining -= &step;
        j += 1;
    }
    total
        .to_biguint()
        .expect("inclusion-exclusion count is nonnegative")
}

/// Exhaustive count over every tuple in `[0, cap]^parts`.
///
/// Independent of the closed forms above; refuses to run when
/// `(cap + 1)^parts` exceeds `limit`. An unbounded cap is replaced by the
/// target, which changes nothing about the count.
pub fn brute_force_compositions(q: &CompositionQuery, limit: u64) -> Result<BigCount> {
    let cap = match &q.cap {
        Cap::Bounded(c) => c.clone(),
        Cap::Unbounded => q.target.clone(),
    };
    let size = (&cap + 1u32).pow(q.parts as u32);
    if size > BigUint::from(limit) {
        return Err(Error::OracleTooLarge { size, limit });
    }
    // size fits in u64, so cap and target (when reachable) do too.
    let cap = cap.to_u64().expect("cap fits after the size check");
    let target = match q.target.to_u64() {
        Some(t) => t,
        None => return Ok(BigUint::zero()),
    };
    let parts = q.parts as usize;
    if parts == 1 {
        return Ok(BigUint::from(u8::from(target <= cap)));
    }
    // Split on the first coordinate; each worker runs an odometer over the rest.
    let count: u64 = (0..=cap)
        .into_par_iter()
        .map(|first| {
            let mut digits = vec![0u64; parts - 1];
            let mut sum = first;
            let mut hits = 0u64;
            loop {
                if sum == target {
                    hits += 1;
                }
                let mut i = 0;
                loop {
                    if i == digits.len() {
                        return hits;
                    }
                    if digits[i] < cap {
                        digits[i] += 1;
                        sum += 1;
                        break;
                    }
                    sum -= digits[i];
                    digits[i] = 0;
                    i += 1;
                }
            }
        })
        .sum();
    Ok(BigUint::from(count))
}
