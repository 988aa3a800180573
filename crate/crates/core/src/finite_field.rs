//! Polynomials over a prime field `F_p`, Rabin's irreducibility test, and
//! exact counts of monic irreducibles.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::combinatorics::BigCount;
use crate::error::{Error, Result};
use crate::polynomials::MonicIntPolynomial;

/// Default ceiling on `p^n` for [`count_irreducibles_exhaustive`].
pub const DEFAULT_FIELD_ORACLE_LIMIT: u64 = 10_000_000;

/// Moduli above this are rejected so residue products fit in `u64`.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn check_modulus(p: u64) -> Result<()> {
    if p > MAX_MODULUS {
        return Err(Error::ModulusTooLarge(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Möbius function.
pub fn mobius(n: u64) -> i32 {
    assert!(n >= 1);
    let mut m = n;
    let mut sign = 1;
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Polynomial over `F_p`, coefficients stored constant term first with no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeFieldPolynomial {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl PrimeFieldPolynomial {
    /// Validates the modulus and the residues, then trims trailing zeros.
    pub fn new(modulus: u64, coeffs: Vec<u64>) -> Result<Self> {
        check_modulus(modulus)?;
        if let Some(&r) = coeffs.iter().find(|&&r| r >= modulus) {
            return Err(Error::InvalidArgument(format!(
                "residue {r} is not below the modulus {modulus}"
            )));
        }
        Ok(Self::raw(modulus, coeffs))
    }

    /// Reduces arbitrary integers into `[0, p)`.
    pub fn from_ints(modulus: u64, coeffs: &[i64]) -> Result<Self> {
        check_modulus(modulus)?;
        let m = modulus as i64;
        Ok(Self::raw(
            modulus,
            coeffs.iter().map(|&c| c.rem_euclid(m) as u64).collect(),
        ))
    }

    fn raw(modulus: u64, mut coeffs: Vec<u64>) -> Self {
        trim(&mut coeffs);
        PrimeFieldPolynomial { modulus, coeffs }
    }

    pub fn zero(modulus: u64) -> Result<Self> {
        Self::new(modulus, Vec::new())
    }

    pub fn one(modulus: u64) -> Result<Self> {
        Self::new(modulus, vec![1])
    }

    /// The indeterminate `x`.
    pub fn x(modulus: u64) -> Result<Self> {
        Self::new(modulus, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Scales to leading coefficient 1; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lead) => {
                let p = self.modulus;
                let inv = inv_mod(lead, p);
                Self::raw(p, self.coeffs.iter().map(|&c| c * inv % p).collect())
            }
        }
    }

    fn same_field(&self, other: &Self) -> Result<u64> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(self.modulus)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let p = self.same_field(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % p
            })
            .collect();
        Ok(Self::raw(p, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let p = self.same_field(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        Ok(Self::raw(p, coeffs))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let p = self.same_field(other)?;
        Ok(Self::raw(p, mul_raw(&self.coeffs, &other.coeffs, p)))
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let p = self.same_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let (q, r) = div_rem_raw(&self.coeffs, &divisor.coeffs, p);
        Ok((Self::raw(p, q), Self::raw(p, r)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let p = self.same_field(other)?;
        Ok(Self::raw(p, gcd_raw(&self.coeffs, &other.coeffs, p)))
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, exp: &BigUint, modulus: &Self) -> Result<Self> {
        let p = self.same_field(modulus)?;
        if modulus.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let base = rem_raw(&self.coeffs, &modulus.coeffs, p);
        let mut acc = rem_raw(&[1], &modulus.coeffs, p);
        for i in (0..exp.bits()).rev() {
            acc = mul_mod_raw(&acc, &acc, &modulus.coeffs, p);
            if exp.bit(i) {
                acc = mul_mod_raw(&acc, &base, &modulus.coeffs, p);
            }
        }
        Ok(Self::raw(p, acc))
    }

    /// Rabin's test. Constants and the zero polynomial are not irreducible.
    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(_) => rabin_irreducible(&self.monic().coeffs, self.modulus),
        }
    }
}

impl fmt::Display for PrimeFieldPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod {})", self.modulus);
        }
        let mut first = true;
        for (power, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (power, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, c) => write!(f, "{c}x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, c) => write!(f, "{c}x^{k}")?,
            }
        }
        write!(f, " (mod {})", self.modulus)
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pow_mod_u64(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod_u64(a, p - 2, p)
}

fn mul_raw(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder in place; `m` must be nonzero and trimmed.
fn rem_in_place(r: &mut Vec<u64>, m: &[u64], p: u64) {
    let dm = m.len() - 1;
    let inv_lead = inv_mod(m[dm], p);
    trim(r);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = r[r.len() - 1] * inv_lead % p;
        if factor != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - factor * c % p) % p;
            }
        }
        r.pop();
        trim(r);
    }
}

fn rem_raw(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    rem_in_place(&mut r, m, p);
    r
}

fn div_rem_raw(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let dm = m.len() - 1;
    let inv_lead = inv_mod(m[dm], p);
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= dm {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - dm];
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = r[r.len() - 1] * inv_lead % p;
        q[shift] = factor;
        for (i, &c) in m.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - factor * c % p) % p;
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn mul_mod_raw(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = mul_raw(a, b, p);
    rem_in_place(&mut prod, m, p);
    prod
}

fn gcd_raw(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        rem_in_place(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lead) = a.last() {
        if lead != 1 {
            let inv = inv_mod(lead, p);
            a.iter_mut().for_each(|c| *c = *c * inv % p);
        }
    }
    a
}

/// `h^p mod f` using square-and-multiply on the small exponent `p`.
fn frobenius(h: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut e = p;
    let mut base = h.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_raw(&acc, &base, f, p);
        }
        e >>= 1;
        if e > 0 {
            base = mul_mod_raw(&base, &base, f, p);
        }
    }
    acc
}

/// Rabin: a monic `f` of degree `n >= 2` is irreducible iff
/// `x^(p^n) = x (mod f)` and `gcd(x^(p^(n/q)) - x, f) = 1` for every prime `q | n`.
fn rabin_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    let x = rem_raw(&[0, 1], f, p);
    let checkpoints: Vec<usize> = prime_factors(n as u64)
        .into_iter()
        .map(|q| n / q as usize)
        .collect();
    let mut h = x.clone();
    for k in 1..=n {
        h = frobenius(&h, f, p);
        if checkpoints.contains(&k) {
            // h - x
            let len = h.len().max(x.len());
            let mut diff: Vec<u64> = (0..len)
                .map(|i| {
                    let a = h.get(i).copied().unwrap_or(0);
                    let b = x.get(i).copied().unwrap_or(0);
                    (a + p - b) % p
                })
                .collect();
            trim(&mut diff);
            if gcd_raw(&diff, f, p).len() != 1 {
                return false;
            }
        }
    }
    h == x
}

/// Coefficientwise reduction of a monic integer polynomial; the result keeps its degree.
pub fn reduce_mod_p(f: &MonicIntPolynomial, p: u64) -> Result<PrimeFieldPolynomial> {
    PrimeFieldPolynomial::from_ints(p, &f.full_coeffs())
}

/// Whether `f` is irreducible in `F_p[x]`.
pub fn is_irreducible_mod_p(f: &PrimeFieldPolynomial) -> bool {
    f.is_irreducible()
}

/// Shortcut used by the sieve: reduce and test without surfacing errors.
/// `p` must already be a validated prime.
pub(crate) fn monic_irreducible_mod(f: &MonicIntPolynomial, p: u64) -> bool {
    let m = p as i64;
    let mut coeffs: Vec<u64> = f.coeffs().iter().map(|&c| c.rem_euclid(m) as u64).collect();
    coeffs.push(1);
    if coeffs.len() == 2 {
        return true;
    }
    rabin_irreducible(&coeffs, p)
}

/// Number of monic irreducibles of the given degree in `F_p[x]`:
/// `(1/n) sum_{d | n} mu(d) p^(n/d)`.
pub fn count_irreducibles_exact(degree: u64, p: u64) -> Result<BigCount> {
    if degree == 0 {
        return Err(Error::DegreeZero);
    }
    check_modulus(p)?;
    let base = BigInt::from(p);
    let mut sum = BigInt::zero();
    for d in (1..=degree).filter(|d| degree.is_multiple_of(*d)) {
        let mu = mobius(d);
        if mu != 0 {
            sum += BigInt::from(mu) * base.pow((degree / d) as u32);
        }
    }
    debug_assert!((&sum % degree).is_zero());
    Ok((sum / degree).to_biguint().expect("count is nonnegative"))
}

/// Runs the irreducibility test on all `p^n` monic polynomials of degree `n`.
pub fn count_irreducibles_exhaustive(degree: u64, p: u64, limit: u64) -> Result<BigCount> {
    if degree == 0 {
        return Err(Error::DegreeZero);
    }
    check_modulus(p)?;
    let size = BigUint::from(p).pow(degree as u32);
    if size > BigUint::from(limit) {
        return Err(Error::OracleTooLarge { size, limit });
    }
    let total = size.to_u64().expect("bounded by the limit");
    let n = degree as usize;
    let count = (0..total)
        .into_par_iter()
        .filter(|&index| {
            let mut coeffs = Vec::with_capacity(n + 1);
            let mut rest = index;
            for _ in 0..n {
                coeffs.push(rest % p);
                rest /= p;
            }
            coeffs.push(1);
            PrimeFieldPolynomial::raw(p, coeffs).is_irreducible()
        })
        .count();
    Ok(BigUint::from(count))
}

/// One prime's line in the irreducible-count audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleCountRow {
    pub prime: u64,
    pub exact: BigCount,
    /// Exhaustive count when `p^n` is within the oracle limit.
    pub exhaustive: Option<BigCount>,
    /// `p^n / n`
    pub main_term: BigRational,
    /// `(N_n - p^n/n)^2 / p^n`, the square of the error normalized by `p^(n/2)`.
    pub squared_normalized_error: BigRational,
    /// `|N_n - p^n/n| / p^(n/2)`, present when `n` is even and the value is rational.
    pub normalized_error: Option<BigRational>,
    /// Whether the squared normalized error is at most 1.
    pub within_unit_bound: bool,
}

/// Exact irreducible counts against the main term `p^n / n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleCountAudit {
    pub degree: u64,
    pub rows: Vec<IrreducibleCountRow>,
    pub max_squared_normalized_error: Option<BigRational>,
}

/// Audits `N_n(p)` for each listed prime. The error is compared in squared form
/// so that everything stays rational.
pub fn audit_irreducible_counts(
    degree: u64,
    primes: &[u64],
    oracle_limit: u64,
) -> Result<IrreducibleCountAudit> {
    if degree < 2 {
        return Err(Error::InvalidArgument(format!(
            "irreducible-count audit needs degree >= 2, got {degree}"
        )));
    }
    let mut rows = Vec::with_capacity(primes.len());
    for &p in primes {
        let exact = count_irreducibles_exact(degree, p)?;
        let exhaustive = match count_irreducibles_exhaustive(degree, p, oracle_limit) {
            Ok(c) => Some(c),
            Err(Error::OracleTooLarge { .. }) => None,
            Err(e) => return Err(e),
        };
        let p_n = BigInt::from(p).pow(degree as u32);
        let main_term = BigRational::new(p_n.clone(), BigInt::from(degree));
        let error = BigRational::from_integer(BigInt::from(exact.clone())) - &main_term;
        let squared = &error * &error / BigRational::from_integer(p_n);
        let normalized_error = degree.is_multiple_of(2).then(|| {
            error.abs() / BigRational::from_integer(BigInt::from(p).pow((degree / 2) as u32))
        });
        rows.push(IrreducibleCountRow {
            prime: p,
            exact,
            exhaustive,
            main_term,
            within_unit_bound: squared <= BigRational::one(),
            squared_normalized_error: squared,
            normalized_error,
        });
    }
    let max_squared_normalized_error = rows
        .iter()
        .map(|r| r.squared_normalized_error.clone())
        .max();
    Ok(IrreducibleCountAudit {
        degree,
        rows,
        max_squared_normalized_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u64, c: &[u64]) -> PrimeFieldPolynomial {
        PrimeFieldPolynomial::new(p, c.to_vec()).unwrap()
    }

    fn int_poly(c: &[i64]) -> MonicIntPolynomial {
        MonicIntPolynomial::new(c.to_vec()).unwrap()
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Monic polynomial of the given degree decoded from a base-`p` index.
    fn monic_from_index(p: u64, degree: usize, mut index: u64) -> PrimeFieldPolynomial {
        let mut c = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            c.push(index % p);
            index /= p;
        }
        c.push(1);
        fp(p, &c)
    }

    /// Irreducible iff no monic polynomial of degree `1..=n/2` divides it.
    fn trial_division_irreducible(f: &PrimeFieldPolynomial) -> bool {
        let p = f.modulus();
        let n = f.degree().unwrap();
        for d in 1..=n / 2 {
            for idx in 0..p.pow(d as u32) {
                let g = monic_from_index(p, d, idx);
                if f.rem(&g).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(999_983));
        assert!(!is_prime(999_981));
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
    }

    #[test]
    fn construction_validates() {
        assert_eq!(
            PrimeFieldPolynomial::new(4, vec![1]),
            Err(Error::NotPrime(4))
        );
        assert!(PrimeFieldPolynomial::new(5, vec![5]).is_err());
        assert_eq!(fp(5, &[1, 0, 0]).coeffs(), &[1]);
        assert_eq!(fp(5, &[0, 0]).degree(), None);
        assert_eq!(
            PrimeFieldPolynomial::from_ints(3, &[-1, 4])
                .unwrap()
                .coeffs(),
            &[2, 1]
        );
    }

    #[test]
    fn reduction_examples() {
        let r = reduce_mod_p(&int_poly(&[1, 2, 2]), 2).unwrap();
        assert_eq!(r, fp(2, &[1, 0, 0, 1]));
        let r = reduce_mod_p(&int_poly(&[1, 3, 1]), 3).unwrap();
        assert_eq!(r, fp(3, &[1, 0, 1, 1]));
        let r = reduce_mod_p(&int_poly(&[1, 0]), 5).unwrap();
        assert_eq!(r, fp(5, &[1, 0, 1]));
        assert_eq!(reduce_mod_p(&int_poly(&[1, 0]), 6), Err(Error::NotPrime(6)));
    }

    #[test]
    fn arithmetic_examples() {
        let g = fp(2, &[1, 0, 1]).gcd(&fp(2, &[1, 1])).unwrap();
        assert_eq!(g, fp(2, &[1, 1]));

        let x = PrimeFieldPolynomial::x(3).unwrap();
        let prod = x.mul(&x).unwrap().rem(&fp(3, &[1, 0, 1])).unwrap();
        assert_eq!(prod, fp(3, &[2]));

        let r = x_pow(2, 4, &fp(2, &[1, 1, 1]));
        assert_eq!(r, fp(2, &[0, 1]));

        let zero = PrimeFieldPolynomial::zero(3).unwrap();
        assert_eq!(x.div_rem(&zero), Err(Error::ZeroDivisor));
        assert_eq!(
            x.add(&PrimeFieldPolynomial::x(5).unwrap()),
            Err(Error::ModulusMismatch(3, 5))
        );
        let zero7 = PrimeFieldPolynomial::zero(7).unwrap();
        assert_eq!(fp(7, &[3, 0, 2]).gcd(&zero7).unwrap(), fp(7, &[5, 0, 1]));
    }

    fn x_pow(p: u64, e: u64, m: &PrimeFieldPolynomial) -> PrimeFieldPolynomial {
        PrimeFieldPolynomial::x(p)
            .unwrap()
            .pow_mod(&BigUint::from(e), m)
            .unwrap()
    }

    #[test]
    fn pow_mod_with_huge_exponent() {
        // x^(2^100) mod an irreducible quadratic over F_2 cycles with period 2 in the exponent of 2.
        let m = fp(2, &[1, 1, 1]);
        let e = BigUint::one() << 100u32;
        let r = PrimeFieldPolynomial::x(2).unwrap().pow_mod(&e, &m).unwrap();
        assert_eq!(r, fp(2, &[0, 1]));
        assert_eq!(x_pow(2, 0, &m), fp(2, &[1]));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(fp(2, &[1, 1, 1]).is_irreducible());
        assert!(!fp(2, &[1, 0, 1]).is_irreducible());
        assert!(fp(3, &[1, 2, 0, 1]).is_irreducible());
        assert!(!fp(5, &[1, 0, 1]).is_irreducible());
        assert!(fp(7, &[3, 1]).is_irreducible());
        assert!(!fp(7, &[3]).is_irreducible());
        // Non-monic input is normalized first.
        assert!(fp(3, &[2, 1, 2]).is_irreducible() == fp(3, &[1, 2, 1]).is_irreducible());
    }

    #[test]
    fn exact_count_examples() {
        let c = |n, p| count_irreducibles_exact(n, p).unwrap();
        assert_eq!(c(2, 2), BigUint::from(1u32));
        assert_eq!(c(2, 3), BigUint::from(3u32));
        assert_eq!(c(1, 5), BigUint::from(5u32));
        assert_eq!(c(4, 2), BigUint::from(3u32));
        assert_eq!(c(3, 2), BigUint::from(2u32));
        assert_eq!(count_irreducibles_exact(2, 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn exhaustive_count_examples() {
        let c = |n, p| count_irreducibles_exhaustive(n, p, DEFAULT_FIELD_ORACLE_LIMIT).unwrap();
        assert_eq!(c(2, 2), BigUint::from(1u32));
        assert_eq!(c(3, 2), BigUint::from(2u32));
        assert_eq!(c(1, 7), BigUint::from(7u32));
        assert!(matches!(
            count_irreducibles_exhaustive(9, 7, DEFAULT_FIELD_ORACLE_LIMIT),
            Err(Error::OracleTooLarge { .. })
        ));
    }

    #[test]
    fn gauss_identity() {
        for p in [2u64, 3, 5, 7, 11] {
            for n in 1..=8u64 {
                let total: BigUint = (1..=n)
                    .filter(|d| n % d == 0)
                    .map(|d| count_irreducibles_exact(d, p).unwrap() * d)
                    .sum();
                assert_eq!(total, BigUint::from(p).pow(n as u32));
            }
        }
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let mut n = 1usize;
            while p.pow(n as u32) <= 100_000 {
                for idx in 0..p.pow(n as u32) {
                    let f = monic_from_index(p, n, idx);
                    assert_eq!(f.is_irreducible(), trial_division_irreducible(&f), "{f}");
                }
                n += 1;
            }
        }
    }

    #[test]
    fn audit_examples() {
        let a = audit_irreducible_counts(2, &[2], DEFAULT_FIELD_ORACLE_LIMIT).unwrap();
        assert_eq!(a.rows[0].normalized_error, Some(ratio(1, 2)));
        assert_eq!(a.rows[0].squared_normalized_error, ratio(1, 4));
        let a = audit_irreducible_counts(2, &[3], DEFAULT_FIELD_ORACLE_LIMIT).unwrap();
        assert_eq!(a.rows[0].normalized_error, Some(ratio(1, 2)));
        let a = audit_irreducible_counts(3, &[2], DEFAULT_FIELD_ORACLE_LIMIT).unwrap();
        // (2 - 8/3)^2 / 8 = 1/18
        assert_eq!(a.rows[0].squared_normalized_error, ratio(1, 18));
        assert_eq!(a.rows[0].normalized_error, None);
        assert!(a.rows[0].within_unit_bound);
        assert_eq!(a.rows[0].exhaustive, Some(BigUint::from(2u32)));
        assert!(audit_irreducible_counts(1, &[2], 10).is_err());
        assert!(audit_irreducible_counts(2, &[4], 10).is_err());
    }

    #[test]
    fn sieve_shortcut_matches_public_path() {
        for c0 in -3..=3 {
            for c1 in -3..=3 {
                let f = int_poly(&[c0, c1, 2]);
                for p in [2, 3, 5, 7] {
                    assert_eq!(
                        monic_irreducible_mod(&f, p),
                        is_irreducible_mod_p(&reduce_mod_p(&f, p).unwrap())
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn reduction_preserves_degree(c in proptest::collection::vec(-1000i64..1000, 1..8), pi in 0usize..6) {
            let p = [2u64, 3, 5, 7, 11, 13][pi];
            let f = MonicIntPolynomial::new(c).unwrap();
            prop_assert_eq!(reduce_mod_p(&f, p).unwrap().degree(), Some(f.degree()));
        }

        #[test]
        fn division_identity(a in proptest::collection::vec(0u64..7, 0..8), b in proptest::collection::vec(0u64..7, 1..5)) {
            let a = fp(7, &a);
            let b = fp(7, &b);
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
            prop_assert!(r.degree() < b.degree());
        }
    }
}
