//! Exact irreducibility of monic integer polynomials, with a factor witness.
//!
//! Monic polynomials have content 1, so irreducibility over `Z` and over `Q`
//! coincide. The decision runs in three stages: a zero constant term gives
//! the factor `x` directly; irreducibility modulo any probe prime settles the
//! question (monic reduction keeps the degree, so a factorization over `Z`
//! would survive reduction); otherwise every monic candidate factor within
//! the Mignotte bound is tried by exact division.

use num_bigint::BigUint;
use num_integer::Roots;
use rayon::prelude::*;

use crate::combinatorics::{binomial, BigCount};
use crate::error::{Error, Result};
use crate::finite_field::monic_irreducible_mod;
use crate::polynomials::{admissible_chunks, MonicIntPolynomial};
use crate::Limits;

/// Primes tried, in order, before falling back to the factor search.
pub const PROBE_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// Default ceiling on candidate factors visited per polynomial.
pub const DEFAULT_SEARCH_LIMIT: u64 = 1_000_000_000;

/// Outcome of an irreducibility test over `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorizationWitness {
    Irreducible,
    /// `small * large = f` with `1 <= deg small <= deg large`.
    Reducible {
        small: MonicIntPolynomial,
        large: MonicIntPolynomial,
    },
}

impl FactorizationWitness {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, FactorizationWitness::Irreducible)
    }
}

/// Which stage produced the answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecidedBy {
    Linear,
    ZeroConstantTerm,
    IrreducibleModPrime(u64),
    FactorSearch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub witness: FactorizationWitness,
    pub decided_by: DecidedBy,
}

/// Decides irreducibility over `Z`; see [`classify`] for the stage that decided it.
pub fn is_irreducible_over_z(
    f: &MonicIntPolynomial,
    max_search: u64,
) -> Result<FactorizationWitness> {
    classify(f, max_search).map(|v| v.witness)
}

pub fn classify(f: &MonicIntPolynomial, max_search: u64) -> Result<Verdict> {
    let n = f.degree();
    if n == 1 {
        return Ok(Verdict {
            witness: FactorizationWitness::Irreducible,
            decided_by: DecidedBy::Linear,
        });
    }
    if f.constant_term() == 0 {
        let small = MonicIntPolynomial::monomial(1).expect("degree 1");
        let large = MonicIntPolynomial::new(f.coeffs()[1..].to_vec()).expect("degree n - 1 >= 1");
        return Ok(Verdict {
            witness: FactorizationWitness::Reducible { small, large },
            decided_by: DecidedBy::ZeroConstantTerm,
        });
    }
    if let Some(&p) = PROBE_PRIMES.iter().find(|&&p| monic_irreducible_mod(f, p)) {
        return Ok(Verdict {
            witness: FactorizationWitness::Irreducible,
            decided_by: DecidedBy::IrreducibleModPrime(p),
        });
    }
    Ok(Verdict {
        witness: factor_search(f, max_search)?,
        decided_by: DecidedBy::FactorSearch,
    })
}

/// `ceil(||f||_2)` over all coefficients including the leading 1.
pub fn norm_ceiling(f: &MonicIntPolynomial) -> u128 {
    let sq: u128 = f
        .full_coeffs()
        .iter()
        .map(|&c| (c as i128 * c as i128) as u128)
        .sum();
    let r = sq.sqrt();
    if r * r < sq {
        r + 1
    } else {
        r
    }
}

/// Mignotte bounds `C(m-1, i) * ||f|| + C(m-1, i-1)` on the coefficients
/// `b_0..b_{m-1}` of a monic degree-`m` factor.
pub fn mignotte_bounds(f: &MonicIntPolynomial, m: usize) -> Vec<u128> {
    let norm = norm_ceiling(f);
    (0..m)
        .map(|i| {
            let a = u128::try_from(binomial(m as u64 - 1, i as i64)).expect("small binomial");
            let b = u128::try_from(binomial(m as u64 - 1, i as i64 - 1)).expect("small binomial");
            a * norm + b
        })
        .collect()
}

fn signed_divisors(n: i64) -> Vec<i64> {
    let a = n.unsigned_abs();
    let mut pos = Vec::new();
    let mut d = 1u64;
    while d * d <= a {
        if a.is_multiple_of(d) {
            pos.push(d as i64);
            if d * d != a {
                pos.push((a / d) as i64);
            }
        }
        d += 1;
    }
    pos.sort_unstable();
    let mut out: Vec<i64> = pos.iter().rev().map(|&d| -d).collect();
    out.extend(pos);
    out
}

/// Quotient of `num / den` for monic `den`, or `None` if the remainder is nonzero.
/// Coefficients are constant term first, leading coefficient included.
pub(crate) fn exact_monic_division(num: &[i128], den: &[i128]) -> Option<Vec<i128>> {
    let dn = den.len() - 1;
    if num.len() < den.len() {
        return None;
    }
    let mut r = num.to_vec();
    let mut q = vec![0i128; num.len() - dn];
    for shift in (0..q.len()).rev() {
        let factor = r[shift + dn];
        q[shift] = factor;
        if factor != 0 {
            for (i, &c) in den.iter().enumerate() {
                r[shift + i] = r[shift + i].checked_sub(factor.checked_mul(c)?)?;
            }
        }
    }
    r[..dn].iter().all(|&c| c == 0).then_some(q)
}

fn eval_i128(coeffs: &[i128], x: i128) -> i128 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
}

/// Exhaustive search for a monic factor of degree `1..=n/2`, bounded by Mignotte.
fn factor_search(f: &MonicIntPolynomial, max_search: u64) -> Result<FactorizationWitness> {
    let n = f.degree();
    let full: Vec<i128> = f.full_coeffs().iter().map(|&c| c as i128).collect();
    let at_one = eval_i128(&full, 1);
    let at_minus_one = eval_i128(&full, -1);
    let constants = signed_divisors(f.constant_term());
    let mut visited = 0u64;
    for m in 1..=n / 2 {
        let bounds = mignotte_bounds(f, m);
        let mut g = vec![0i128; m + 1];
        g[m] = 1;
        for &b0 in &constants {
            if (b0.unsigned_abs() as u128) > bounds[0] {
                continue;
            }
            g[0] = b0 as i128;
            for (i, &b) in bounds.iter().enumerate().skip(1) {
                g[i] = -(b as i128);
            }
            loop {
                visited += 1;
                if visited > max_search {
                    return Err(Error::SearchSpaceExceeded { limit: max_search });
                }
                // A factor's values at +-1 divide the polynomial's values there.
                let prune = [(1i128, at_one), (-1, at_minus_one)]
                    .iter()
                    .any(|&(x, fx)| {
                        let gx = eval_i128(&g, x);
                        fx != 0 && (gx == 0 || fx % gx != 0)
                    });
                if !prune {
                    if let Some(h) = exact_monic_division(&full, &g) {
                        return Ok(FactorizationWitness::Reducible {
                            small: to_monic(&g),
                            large: to_monic(&h),
                        });
                    }
                }
                // Odometer over b_1..b_{m-1}.
                let mut i = 1;
                while i < m {
                    if g[i] < bounds[i] as i128 {
                        g[i] += 1;
                        break;
                    }
                    g[i] = -(bounds[i] as i128);
                    i += 1;
                }
                if i == m {
                    break;
                }
            }
        }
    }
    Ok(FactorizationWitness::Irreducible)
}

fn to_monic(full: &[i128]) -> MonicIntPolynomial {
    let coeffs = full[..full.len() - 1]
        .iter()
        .map(|&c| i64::try_from(c).expect("factor coefficient fits in i64"))
        .collect();
    MonicIntPolynomial::new(coeffs).expect("degree at least 1")
}

/// Product of two monic integer polynomials.
pub fn multiply(a: &MonicIntPolynomial, b: &MonicIntPolynomial) -> MonicIntPolynomial {
    let (x, y) = (a.full_coeffs(), b.full_coeffs());
    let mut out = vec![0i128; x.len() + y.len() - 1];
    for (i, &u) in x.iter().enumerate() {
        for (j, &v) in y.iter().enumerate() {
            out[i + j] += u as i128 * v as i128;
        }
    }
    to_monic(&out)
}

/// `A(H)`: admissible polynomials that are irreducible over `Z`.
pub fn count_admissible_irreducible(degree: u64, height: u64, limits: &Limits) -> Result<BigCount> {
    let chunks = admissible_chunks(degree, height, limits.max_enum)?;
    let count = chunks
        .into_par_iter()
        .map(|chunk| {
            let mut c = 0u64;
            for f in chunk {
                if is_irreducible_over_z(&f, limits.max_search)?.is_irreducible() {
                    c += 1;
                }
            }
            Ok(c)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(BigUint::from(count))
}

/// Every admissible polynomial with its verdict, in enumeration order.
pub fn classify_admissible(
    degree: u64,
    height: u64,
    limits: &Limits,
) -> Result<Vec<(MonicIntPolynomial, Verdict)>> {
    let chunks = admissible_chunks(degree, height, limits.max_enum)?;
    let parts: Vec<Vec<_>> = chunks
        .into_par_iter()
        .map(|chunk| {
            chunk
                .map(|f| classify(&f, limits.max_search).map(|v| (f, v)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}
