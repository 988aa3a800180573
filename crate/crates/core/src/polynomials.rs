//! Monic integer polynomials and the admissible set.
//!
//! A degree-`n` polynomial is admissible when all of its coefficients,
//! leading one included, sum to `n!`. For monic polynomials with
//! coefficients in `[0, H]` this is the set of bounded compositions of
//! `n! - 1` into `n` parts, which is what [`enumerate_admissible`] walks.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial_big, count_bounded_compositions, BigCount, CompositionQuery};
use crate::error::{Error, Result};

/// Default ceiling on the size of an enumerated admissible set.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 50_000_000;

/// `x^n + a_{n-1} x^{n-1} + ... + a_0`, stored as `(a_0, ..., a_{n-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "CoeffVector", into = "CoeffVector")]
pub struct MonicIntPolynomial {
    coeffs: Vec<i64>,
}

/// JSON shape `{"degree":3,"coeffs":[1,2,2]}`.
#[derive(Serialize, Deserialize)]
struct CoeffVector {
    degree: usize,
    coeffs: Vec<i64>,
}

impl TryFrom<CoeffVector> for MonicIntPolynomial {
    type Error = String;

    fn try_from(v: CoeffVector) -> std::result::Result<Self, String> {
        if v.degree != v.coeffs.len() {
            return Err(format!(
                "degree {} does not match {} coefficients",
                v.degree,
                v.coeffs.len()
            ));
        }
        MonicIntPolynomial::new(v.coeffs).map_err(|e| e.to_string())
    }
}

impl From<MonicIntPolynomial> for CoeffVector {
    fn from(p: MonicIntPolynomial) -> Self {
        CoeffVector {
            degree: p.degree(),
            coeffs: p.coeffs,
        }
    }
}

impl MonicIntPolynomial {
    /// Builds the polynomial from its non-leading coefficients `(a_0, ..., a_{n-1})`.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DegreeZero);
        }
        Ok(MonicIntPolynomial { coeffs })
    }

    /// Builds from a full coefficient list `(a_0, ..., a_{n-1}, 1)`.
    pub fn from_full(full: &[i64]) -> Result<Self> {
        match full.split_last() {
            Some((&1, rest)) if !rest.is_empty() => Self::new(rest.to_vec()),
            Some((&1, _)) => Err(Error::DegreeZero),
            Some((lead, _)) => Err(Error::InvalidArgument(format!(
                "leading coefficient {lead} is not 1"
            ))),
            None => Err(Error::DegreeZero),
        }
    }

    /// `x^degree`.
    pub fn monomial(degree: usize) -> Result<Self> {
        Self::new(vec![0; degree])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Non-leading coefficients, constant term first.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// All coefficients, constant term first, ending with the leading 1.
    pub fn full_coeffs(&self) -> Vec<i64> {
        let mut v = self.coeffs.clone();
        v.push(1);
        v
    }

    pub fn constant_term(&self) -> i64 {
        self.coeffs[0]
    }

    /// Evaluates at an integer point in 128-bit arithmetic.
    pub fn eval(&self, x: i128) -> i128 {
        self.full_coeffs()
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * x + c as i128)
    }

    pub fn is_admissible(&self) -> bool {
        is_admissible(&self.full_coeffs()).expect("degree is at least 1")
    }
}

/// Descending powers, zero terms omitted, unit coefficients dropped on `x^k`.
impl fmt::Display for MonicIntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        write_power(f, n)?;
        for power in (0..n).rev() {
            let c = self.coeffs[power];
            if c == 0 {
                continue;
            }
            f.write_str(if c < 0 { " - " } else { " + " })?;
            let mag = c.unsigned_abs();
            if power == 0 {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}")?;
                }
                write_power(f, power)?;
            }
        }
        Ok(())
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, power: usize) -> fmt::Result {
    match power {
        0 => f.write_str("1"),
        1 => f.write_str("x"),
        k => write!(f, "x^{k}"),
    }
}

/// `n!`
pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Whether `(a_0, ..., a_n)` (leading coefficient last) sums to `n!`.
///
/// Coefficients may be any integers; the leading one is not required to be 1.
pub fn is_admissible(coeffs_with_leading: &[i64]) -> Result<bool> {
    if coeffs_with_leading.len() < 2 {
        return Err(Error::DegreeZero);
    }
    let degree = (coeffs_with_leading.len() - 1) as u64;
    let sum: BigInt = coeffs_with_leading.iter().map(|&c| BigInt::from(c)).sum();
    Ok(sum == BigInt::from(factorial(degree)))
}

/// `n! - 1`, the sum of the non-leading coefficients of a monic admissible polynomial.
pub fn target_sum(degree: u64) -> BigCount {
    assert!(degree >= 1, "degree must be at least 1");
    factorial(degree) - 1u32
}

/// `N(H)`: monic admissible polynomials of the given degree with coefficients in `[0, H]`.
pub fn count_admissible_exact(degree: u64, height: u64) -> BigCount {
    let q = CompositionQuery::bounded(degree, target_sum(degree), height)
        .expect("degree is at least 1");
    count_bounded_compositions(&q)
}

/// `C(H - 2, n - 1)`, the claimed lower bound on `N(H)`, counted as positive compositions.
pub fn claimed_lower_bound(degree: u64, height: u64) -> BigCount {
    assert!(degree >= 1, "degree must be at least 1");
    binomial_big(&(BigInt::from(height) - 2), degree - 1)
}

/// `C(H n, n - 1)`, the claimed upper bound on `N(H)`, counted as positive compositions.
pub fn claimed_upper_bound(degree: u64, height: u64) -> BigCount {
    assert!(degree >= 1, "degree must be at least 1");
    binomial_big(&(BigInt::from(height) * degree), degree - 1)
}

/// Exact `N(H)` next to the two claimed bounds for one height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsAuditReport {
    pub degree: u64,
    pub height: u64,
    pub exact_count: BigCount,
    pub claimed_lower: BigCount,
    pub claimed_upper: BigCount,
    /// `N(H) / H^(n-1)`; absent for `H = 0`.
    pub density_ratio: Option<BigRational>,
    pub lower_violated: bool,
    pub upper_violated: bool,
}

impl BoundsAuditReport {
    pub fn new(degree: u64, height: u64) -> Self {
        let exact_count = count_admissible_exact(degree, height);
        let claimed_lower = claimed_lower_bound(degree, height);
        let claimed_upper = claimed_upper_bound(degree, height);
        let density_ratio = (height >= 1).then(|| {
            BigRational::new(
                BigInt::from(exact_count.clone()),
                BigInt::from(height).pow((degree - 1) as u32),
            )
        });
        BoundsAuditReport {
            degree,
            height,
            lower_violated: claimed_lower > exact_count,
            upper_violated: claimed_upper < exact_count,
            exact_count,
            claimed_lower,
            claimed_upper,
            density_ratio,
        }
    }
}

/// One report per height; violations are recorded, never suppressed.
pub fn audit_bounds(degree: u64, heights: RangeInclusive<u64>) -> Result<Vec<BoundsAuditReport>> {
    if degree < 3 {
        return Err(Error::InvalidArgument(format!(
            "bounds audit needs degree >= 3, got {degree}"
        )));
    }
    let ceiling = factorial(degree);
    if BigUint::from(*heights.end()) > ceiling {
        return Err(Error::InvalidArgument(format!(
            "height {} exceeds {degree}! = {ceiling}",
            heights.end()
        )));
    }
    Ok(heights.map(|h| BoundsAuditReport::new(degree, h)).collect())
}

/// Lexicographic walk over `[0, cap]^parts` restricted to sum `target`.
#[derive(Debug, Clone)]
pub struct BoundedCompositions {
    cap: u64,
    current: Option<Vec<u64>>,
}

impl BoundedCompositions {
    pub fn new(parts: usize, target: u64, cap: u64) -> Self {
        assert!(parts >= 1, "parts must be at least 1");
        let feasible = (parts as u128) * (cap as u128) >= target as u128;
        let current = feasible.then(|| {
            let mut v = vec![0; parts];
            fill_minimal(&mut v, target, cap);
            v
        });
        BoundedCompositions { cap, current }
    }
}

/// Lexicographically smallest fill of `slots` summing to `total` under `cap`.
/// Assumes `total <= slots.len() * cap`.
fn fill_minimal(slots: &mut [u64], mut total: u64, cap: u64) {
    let len = slots.len();
    for (i, slot) in slots.iter_mut().enumerate() {
        let after = (len - 1 - i) as u128 * cap as u128;
        let v = (total as u128).saturating_sub(after) as u64;
        *slot = v;
        total -= v;
    }
}

impl Iterator for BoundedCompositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.current.as_mut()?;
        let out = current.clone();
        // Rightmost position that can grow while the suffix still absorbs the change.
        let mut suffix = 0u64;
        let mut advanced = false;
        for i in (0..current.len().saturating_sub(1)).rev() {
            suffix += current[i + 1];
            if current[i] < self.cap && suffix >= 1 {
                current[i] += 1;
                fill_minimal(&mut current[i + 1..], suffix - 1, self.cap);
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.current = None;
        }
        Some(out)
    }
}

/// Stream of monic admissible polynomials in ascending lexicographic order of
/// `(a_0, ..., a_{n-1})`.
#[derive(Debug, Clone)]
pub struct AdmissibleIter {
    inner: BoundedCompositions,
    prefix: Option<u64>,
}

impl Iterator for AdmissibleIter {
    type Item = MonicIntPolynomial;

    fn next(&mut self) -> Option<MonicIntPolynomial> {
        let tail = self.inner.next()?;
        let coeffs = self
            .prefix
            .into_iter()
            .chain(tail)
            .map(|c| c as i64)
            .collect();
        Some(MonicIntPolynomial { coeffs })
    }
}

fn enumeration_target(degree: u64, height: u64, limit: u64) -> Result<u64> {
    if degree == 0 {
        return Err(Error::DegreeZero);
    }
    let count = count_admissible_exact(degree, height);
    if count > BigUint::from(limit) {
        return Err(Error::EnumerationTooLarge { count, limit });
    }
    // A nonempty set with i64 coefficients needs n! - 1 <= n * H.
    target_sum(degree)
        .to_u64()
        .filter(|&t| t <= i64::MAX as u64)
        .ok_or_else(|| Error::InvalidArgument(format!("degree {degree} is too large to enumerate")))
}

/// Every monic admissible polynomial of the given degree with coefficients in `[0, H]`.
pub fn enumerate_admissible(degree: u64, height: u64, limit: u64) -> Result<AdmissibleIter> {
    let target = enumeration_target(degree, height, limit)?;
    Ok(AdmissibleIter {
        inner: BoundedCompositions::new(degree as usize, target, height.min(target)),
        prefix: None,
    })
}

/// The admissible set split by constant term, in ascending order.
///
/// Concatenating the chunks reproduces [`enumerate_admissible`]; the chunks
/// are independent and may be consumed on different threads.
pub fn admissible_chunks(degree: u64, height: u64, limit: u64) -> Result<Vec<AdmissibleIter>> {
    let target = enumeration_target(degree, height, limit)?;
    let cap = height.min(target);
    if degree == 1 {
        return Ok(vec![enumerate_admissible(degree, height, limit)?]);
    }
    let rest = degree - 1;
    let lo = target.saturating_sub(rest.saturating_mul(cap));
    let hi = cap.min(target);
    if (degree as u128) * (cap as u128) < target as u128 {
        return Ok(Vec::new());
    }
    Ok((lo..=hi)
        .map(|a0| AdmissibleIter {
            inner: BoundedCompositions::new(rest as usize, target - a0, cap),
            prefix: Some(a0),
        })
        .collect())
}

/// `H^(n-1) / (n-1)!` in floating point, a reference magnitude only.
pub fn main_term_magnitude(degree: u64, height: u64) -> f64 {
    let denom = factorial(degree - 1).to_f64().unwrap_or(f64::INFINITY);
    (height as f64).powi((degree - 1) as i32) / denom
}
