//! Primes, prime counting, and the Turán sieve.
//!
//! The Turán engine is generic over a per-prime membership predicate. The
//! admissible instance uses "reduces to an irreducible polynomial modulo p"
//! as membership, with density `1/n` for every prime, and counts every
//! `|A_p|` and `|A_p ∩ A_q|` exactly by enumeration.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::combinatorics::BigCount;
use crate::error::{Error, Result};
use crate::finite_field::{is_prime, monic_irreducible_mod, reduce_mod_p};
use crate::integer_irreducibility::is_irreducible_over_z;
use crate::polynomials::{admissible_chunks, main_term_magnitude, MonicIntPolynomial};
use crate::Limits;

/// All primes strictly below `z`, ascending (sieve of Eratosthenes).
pub fn primes_below(z: u64) -> Vec<u64> {
    if z < 3 {
        return Vec::new();
    }
    let n = z as usize;
    let mut composite = vec![false; n];
    let mut i = 2usize;
    while i * i < n {
        if !composite[i] {
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    (2..n)
        .filter(|&k| !composite[k])
        .map(|k| k as u64)
        .collect()
}

/// `π(z)`: primes at most `z`.
pub fn prime_pi(z: u64) -> u64 {
    primes_below(z.saturating_add(1)).len() as u64
}

/// `π(z)` by Lucy Hedgehog's recursion on the values `⌊z/k⌋`; no sieve array.
pub fn prime_pi_lucy(z: u64) -> u64 {
    if z < 2 {
        return 0;
    }
    let r = z.isqrt();
    // Distinct values of z / k, descending.
    let mut values: Vec<u64> = (1..=r).map(|k| z / k).collect();
    let last = *values.last().expect("r >= 1");
    values.extend((1..last).rev());
    let len = values.len();
    let index = |v: u64| -> usize {
        if v < last {
            len - v as usize
        } else {
            (z / v) as usize - 1
        }
    };
    let mut s: Vec<i64> = values.iter().map(|&v| v as i64 - 1).collect();
    for p in 2..=r {
        if s[index(p)] > s[index(p - 1)] {
            let sp = s[index(p - 1)];
            let p2 = p * p;
            for i in 0..values.len() {
                let v = values[i];
                if v < p2 {
                    break;
                }
                s[i] -= s[index(v / p)] - sp;
            }
        }
    }
    s[0] as u64
}

/// `π(z) log z / z` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChebyshevSample {
    pub z: u64,
    pub pi: u64,
    pub ratio: f64,
}

/// Scan of `π(z) log z / z` over every integer `3 <= z <= z_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevAudit {
    pub z_max: u64,
    /// Fixed checkpoints: 3, 17, powers of ten, and `z_max`.
    pub samples: Vec<ChebyshevSample>,
    pub min: ChebyshevSample,
    pub max: ChebyshevSample,
    /// Band checked on `[BAND_FROM, min(z_max, BAND_TO)]`.
    pub band_min: Option<ChebyshevSample>,
    pub band_max: Option<ChebyshevSample>,
    pub band_holds: bool,
}

impl ChebyshevAudit {
    pub const BAND_LOW: f64 = 0.9;
    pub const BAND_HIGH: f64 = 1.3;
    pub const BAND_FROM: u64 = 17;
    pub const BAND_TO: u64 = 1_000_000;
}

pub fn audit_chebyshev(z_max: u64) -> Result<ChebyshevAudit> {
    if z_max < 3 {
        return Err(Error::InvalidArgument(format!(
            "Chebyshev audit needs z_max >= 3, got {z_max}"
        )));
    }
    let primes = primes_below(z_max + 1);
    let mut checkpoints = vec![3, ChebyshevAudit::BAND_FROM, z_max];
    let mut pow = 10u64;
    while pow <= z_max {
        checkpoints.push(pow);
        pow = pow.saturating_mul(10);
    }
    checkpoints.retain(|&z| z <= z_max);
    checkpoints.sort_unstable();
    checkpoints.dedup();

    let mut samples = Vec::new();
    let mut min: Option<ChebyshevSample> = None;
    let mut max: Option<ChebyshevSample> = None;
    let mut band_min: Option<ChebyshevSample> = None;
    let mut band_max: Option<ChebyshevSample> = None;
    let mut pi = 0u64;
    let mut next = primes.iter().peekable();
    let band_to = z_max.min(ChebyshevAudit::BAND_TO);
    for z in 2..=z_max {
        while next.peek().is_some_and(|&&p| p <= z) {
            next.next();
            pi += 1;
        }
        if z < 3 {
            continue;
        }
        let s = ChebyshevSample {
            z,
            pi,
            ratio: pi as f64 * (z as f64).ln() / z as f64,
        };
        if checkpoints.binary_search(&z).is_ok() {
            samples.push(s);
        }
        let lower = |cur: &Option<ChebyshevSample>| cur.is_none_or(|c| s.ratio < c.ratio);
        let higher = |cur: &Option<ChebyshevSample>| cur.is_none_or(|c| s.ratio > c.ratio);
        if lower(&min) {
            min = Some(s);
        }
        if higher(&max) {
            max = Some(s);
        }
        if (ChebyshevAudit::BAND_FROM..=band_to).contains(&z) {
            if lower(&band_min) {
                band_min = Some(s);
            }
            if higher(&band_max) {
                band_max = Some(s);
            }
        }
    }
    let band_holds = match (band_min, band_max) {
        (Some(lo), Some(hi)) => {
            lo.ratio >= ChebyshevAudit::BAND_LOW && hi.ratio <= ChebyshevAudit::BAND_HIGH
        }
        _ => true,
    };
    Ok(ChebyshevAudit {
        z_max,
        samples,
        min: min.expect("z_max >= 3"),
        max: max.expect("z_max >= 3"),
        band_min,
        band_max,
        band_holds,
    })
}

/// One sifting prime with its density `δ_p` and exact `|A_p|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiftingPrime {
    pub prime: u64,
    pub density: BigRational,
    pub members: BigCount,
}

/// A sifting problem: ambient set size, per-prime data and pairwise intersections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuranInstance {
    ambient_size: BigCount,
    z: u64,
    primes: Vec<SiftingPrime>,
    /// `|A_p ∩ A_q|` keyed by `(p, q)` with `p < q`.
    pair_counts: BTreeMap<(u64, u64), BigCount>,
}

impl TuranInstance {
    pub fn new(
        ambient_size: BigCount,
        z: u64,
        primes: Vec<SiftingPrime>,
        pair_counts: BTreeMap<(u64, u64), BigCount>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidInstance(msg));
        let zero = BigRational::zero();
        let one = BigRational::from_integer(BigInt::from(1));
        for (i, sp) in primes.iter().enumerate() {
            if !is_prime(sp.prime) || sp.prime >= z {
                return bad(format!("{} is not a prime below z = {z}", sp.prime));
            }
            if primes[..i].iter().any(|o| o.prime == sp.prime) {
                return bad(format!("prime {} listed twice", sp.prime));
            }
            if sp.density < zero || sp.density >= one {
                return bad(format!("density for {} is outside [0, 1)", sp.prime));
            }
            if sp.members > ambient_size {
                return bad(format!("|A_{}| exceeds the ambient size", sp.prime));
            }
        }
        for (i, a) in primes.iter().enumerate() {
            for b in &primes[i + 1..] {
                let key = (a.prime.min(b.prime), a.prime.max(b.prime));
                match pair_counts.get(&key) {
                    None => return bad(format!("missing pair count for {key:?}")),
                    Some(c) if c > &a.members || c > &b.members => {
                        return bad(format!("pair count for {key:?} exceeds a member count"))
                    }
                    Some(_) => {}
                }
            }
        }
        if pair_counts.len() != primes.len() * primes.len().saturating_sub(1) / 2 {
            return bad("pair counts reference primes outside the instance".into());
        }
        Ok(TuranInstance {
            ambient_size,
            z,
            primes,
            pair_counts,
        })
    }

    /// Builds an instance by testing each ambient element against each prime below `z`.
    pub fn from_membership<T, I, D, F>(items: I, z: u64, density: D, member: F) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        D: Fn(u64) -> BigRational,
        F: Fn(&T, u64) -> bool,
    {
        let primes = primes_below(z);
        let mut tally = SiftTally::new(primes.len());
        for item in items {
            let hits: Vec<bool> = primes.iter().map(|&p| member(&item, p)).collect();
            tally.record(&hits);
        }
        tally.to_instance(z, &primes, density)
    }

    pub fn ambient_size(&self) -> &BigCount {
        &self.ambient_size
    }

    pub fn z(&self) -> u64 {
        self.z
    }

    pub fn primes(&self) -> &[SiftingPrime] {
        &self.primes
    }

    pub fn pair_counts(&self) -> &BTreeMap<(u64, u64), BigCount> {
        &self.pair_counts
    }

    /// `|A_p ∩ A_q|`, with `|A_p ∩ A_p| = |A_p|`.
    pub fn intersection(&self, p: u64, q: u64) -> Option<&BigCount> {
        if p == q {
            return self
                .primes
                .iter()
                .find(|s| s.prime == p)
                .map(|s| &s.members);
        }
        self.pair_counts.get(&(p.min(q), p.max(q)))
    }

    /// `U(z) = Σ δ_p`
    pub fn density_sum(&self) -> BigRational {
        self.primes
            .iter()
            .fold(BigRational::zero(), |acc, s| acc + &s.density)
    }

    /// `R_p = |A_p| - δ_p |A|`
    pub fn remainder(&self, sp: &SiftingPrime) -> BigRational {
        rational(&sp.members) - &sp.density * rational(&self.ambient_size)
    }

    /// `R_{p,q} = |A_p ∩ A_q| - δ_p δ_q |A|`
    pub fn pair_remainder(&self, a: &SiftingPrime, b: &SiftingPrime) -> BigRational {
        let inter = self
            .intersection(a.prime, b.prime)
            .expect("validated on construction");
        rational(inter) - &a.density * &b.density * rational(&self.ambient_size)
    }
}

fn rational(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// The three terms of the Turán bound and their sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuranBound {
    pub density_sum: BigRational,
    /// `|A| / U`
    pub main_term: BigRational,
    /// `(2 / U) Σ_p |R_p|`
    pub linear_term: BigRational,
    /// `(1 / U²) Σ_{p,q} |R_{p,q}|` over ordered pairs, diagonal included.
    pub quadratic_term: BigRational,
    pub total: BigRational,
}

/// Exact evaluation of the Turán upper bound on the sifted count.
pub fn turan_upper_bound(inst: &TuranInstance) -> Result<TuranBound> {
    let u = inst.density_sum();
    if u.is_zero() {
        return Err(Error::EmptySieve);
    }
    let main_term = rational(&inst.ambient_size) / &u;
    let linear_sum = inst.primes.iter().fold(BigRational::zero(), |acc, sp| {
        acc + inst.remainder(sp).abs()
    });
    let linear_term = BigRational::from_integer(BigInt::from(2)) * linear_sum / &u;
    let mut quad_sum = BigRational::zero();
    for a in &inst.primes {
        for b in &inst.primes {
            quad_sum += inst.pair_remainder(a, b).abs();
        }
    }
    let quadratic_term = quad_sum / (&u * &u);
    let total = &main_term + &linear_term + &quadratic_term;
    Ok(TuranBound {
        density_sum: u,
        main_term,
        linear_term,
        quadratic_term,
        total,
    })
}

/// Running membership counts for a fixed list of primes.
#[derive(Debug, Clone, Default)]
struct SiftTally {
    ambient: u64,
    members: Vec<u64>,
    /// Upper triangle, row-major: `pairs[i][j - i - 1]` for `i < j`.
    pairs: Vec<Vec<u64>>,
    sifted: u64,
    irreducible: u64,
    reducible_not_sifted: u64,
}

impl SiftTally {
    fn new(k: usize) -> Self {
        SiftTally {
            members: vec![0; k],
            pairs: (0..k).map(|i| vec![0; k - i - 1]).collect(),
            ..Default::default()
        }
    }

    /// Returns whether the element avoids every sifting set.
    fn record(&mut self, hits: &[bool]) -> bool {
        self.ambient += 1;
        for (i, &hi) in hits.iter().enumerate() {
            if hi {
                self.members[i] += 1;
                for (j, &hj) in hits.iter().enumerate().skip(i + 1) {
                    if hj {
                        self.pairs[i][j - i - 1] += 1;
                    }
                }
            }
        }
        let sifted = !hits.iter().any(|&h| h);
        if sifted {
            self.sifted += 1;
        }
        sifted
    }

    fn merge(mut self, other: SiftTally) -> SiftTally {
        self.ambient += other.ambient;
        self.sifted += other.sifted;
        self.irreducible += other.irreducible;
        self.reducible_not_sifted += other.reducible_not_sifted;
        for (a, b) in self.members.iter_mut().zip(other.members) {
            *a += b;
        }
        for (ra, rb) in self.pairs.iter_mut().zip(other.pairs) {
            for (a, b) in ra.iter_mut().zip(rb) {
                *a += b;
            }
        }
        self
    }

    fn to_instance<D: Fn(u64) -> BigRational>(
        &self,
        z: u64,
        primes: &[u64],
        density: D,
    ) -> Result<TuranInstance> {
        let sifting = primes
            .iter()
            .zip(&self.members)
            .map(|(&prime, &m)| SiftingPrime {
                prime,
                density: density(prime),
                members: BigUint::from(m),
            })
            .collect();
        let mut pair_counts = BTreeMap::new();
        for (i, row) in self.pairs.iter().enumerate() {
            for (off, &c) in row.iter().enumerate() {
                pair_counts.insert((primes[i], primes[i + off + 1]), BigUint::from(c));
            }
        }
        TuranInstance::new(BigUint::from(self.ambient), z, sifting, pair_counts)
    }
}

/// Elements of `ambient` whose reduction is reducible modulo every prime below `z`.
pub fn exact_sifted_count<I>(ambient: I, z: u64) -> BigCount
where
    I: IntoIterator<Item = MonicIntPolynomial>,
{
    let primes = primes_below(z);
    let count = ambient
        .into_iter()
        .filter(|f| {
            primes.iter().all(|&p| {
                let r = reduce_mod_p(f, p).expect("p is prime");
                !r.is_irreducible()
            })
        })
        .count();
    BigUint::from(count)
}

/// Density `1/n` used for every prime in the admissible instance.
pub fn admissible_density(degree: u64) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(degree))
}

/// One parallel pass over the admissible set collecting membership counts,
/// the sifted count, and optionally verdicts over `Z`.
#[derive(Debug, Clone)]
pub struct AdmissibleScan {
    pub instance: TuranInstance,
    pub sifted: BigCount,
    /// Present when the scan also decided irreducibility over `Z`.
    pub irreducible: Option<BigCount>,
    /// Reducible polynomials that escaped the sifted set; zero whenever the
    /// reduction argument holds.
    pub reducible_not_sifted: Option<BigCount>,
}

pub fn scan_admissible(
    degree: u64,
    height: u64,
    z: u64,
    limits: &Limits,
    decide_over_z: bool,
) -> Result<AdmissibleScan> {
    let primes = primes_below(z);
    let chunks = admissible_chunks(degree, height, limits.max_enum)?;
    let k = primes.len();
    let tally = chunks
        .into_par_iter()
        .map(|chunk| -> Result<SiftTally> {
            let mut t = SiftTally::new(k);
            let mut hits = vec![false; k];
            for f in chunk {
                for (h, &p) in hits.iter_mut().zip(&primes) {
                    *h = monic_irreducible_mod(&f, p);
                }
                let sifted = t.record(&hits);
                if decide_over_z {
                    if is_irreducible_over_z(&f, limits.max_search)?.is_irreducible() {
                        t.irreducible += 1;
                    } else if !sifted {
                        t.reducible_not_sifted += 1;
                    }
                }
            }
            Ok(t)
        })
        .try_reduce(|| SiftTally::new(k), |a, b| Ok(a.merge(b)))?;
    let instance = tally.to_instance(z, &primes, |_| admissible_density(degree))?;
    Ok(AdmissibleScan {
        instance,
        sifted: BigUint::from(tally.sifted),
        irreducible: decide_over_z.then(|| BigUint::from(tally.irreducible)),
        reducible_not_sifted: decide_over_z.then(|| BigUint::from(tally.reducible_not_sifted)),
    })
}

/// The admissible sifting instance with density `1/n` and exact counts.
pub fn build_admissible_instance(
    degree: u64,
    height: u64,
    z: u64,
    limits: &Limits,
) -> Result<TuranInstance> {
    Ok(scan_admissible(degree, height, z, limits, false)?.instance)
}

/// `round(H^(1/3) (ln H)^(1/3))`, rounding half away from zero.
pub fn sieve_level(height: u64) -> Result<u64> {
    if height < 2 {
        return Err(Error::InvalidArgument(format!(
            "sieve level needs height >= 2, got {height}"
        )));
    }
    let h = height as f64;
    Ok((h.cbrt() * h.ln().cbrt()).round() as u64)
}

/// Reference shape `H^(n-1)/p^(n/2) + H^(n-2) p` for `R_p` (floating point).
pub fn remainder_shape(degree: u64, height: u64, p: u64) -> f64 {
    let (n, h, p) = (degree as f64, height as f64, p as f64);
    h.powf(n - 1.0) / p.powf(n / 2.0) + h.powf(n - 2.0) * p
}

/// Reference shape `H^(n-1)/p^(n/2) + H^(n-1)/q^(n/2) + H^(n-2) p q` for `R_{p,q}`.
pub fn pair_remainder_shape(degree: u64, height: u64, p: u64, q: u64) -> f64 {
    let (n, h) = (degree as f64, height as f64);
    let (pf, qf) = (p as f64, q as f64);
    h.powf(n - 1.0) / pf.powf(n / 2.0)
        + h.powf(n - 1.0) / qf.powf(n / 2.0)
        + h.powf(n - 2.0) * pf * qf
}

/// `H^(n-4/3) (ln H)^(2/3)`, zero for `H <= 1`.
pub fn error_term_magnitude(degree: u64, height: u64) -> f64 {
    if height <= 1 {
        return 0.0;
    }
    let h = height as f64;
    h.powf(degree as f64 - 4.0 / 3.0) * h.ln().powf(2.0 / 3.0)
}

/// Where the sieve level came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelSource {
    /// `round(H^(1/3) (ln H)^(1/3))`
    Rule,
    /// Height below 2: the rule is undefined, so the sieve is empty (`z = 1`).
    Degenerate,
    Override,
}

/// Per-prime remainder: exact value next to its reference shape.
#[derive(Debug, Clone, PartialEq)]
pub struct RemainderRow {
    pub prime: u64,
    pub exact: BigRational,
    pub shape: f64,
}

/// Per-pair remainder (`p < q`): exact value next to its reference shape.
#[derive(Debug, Clone, PartialEq)]
pub struct PairRemainderRow {
    pub p: u64,
    pub q: u64,
    pub exact: BigRational,
    pub shape: f64,
}

/// Everything computed by [`pipeline_lower_bound`].
#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub degree: u64,
    pub height: u64,
    pub z: u64,
    pub level_source: LevelSource,
    pub instance: TuranInstance,
    /// `N(H)`
    pub admissible: BigCount,
    /// `A(H)`
    pub irreducible: BigCount,
    /// `N(H) - A(H)`
    pub reducible: BigCount,
    /// Exact sifted count `S`.
    pub sifted: BigCount,
    /// `None` when no prime lies below `z` (the bound is infinite).
    pub bound: Option<TuranBound>,
    /// `S <= bound`; `None` for an empty sieve.
    pub turan_holds: Option<bool>,
    /// `A(H) >= N(H) - S`, and every reducible polynomial lies in the sifted set.
    pub chain_holds: bool,
    pub remainders: Vec<RemainderRow>,
    pub pair_remainders: Vec<PairRemainderRow>,
    /// `H^(n-1) / (n-1)!`, floating point.
    pub main_term_magnitude: f64,
    /// `H^(n-4/3) (ln H)^(2/3)`, floating point.
    pub error_term_magnitude: f64,
}

/// Runs the full sieve pipeline on the admissible set of the given degree and height.
pub fn pipeline_lower_bound(
    degree: u64,
    height: u64,
    z_override: Option<u64>,
    limits: &Limits,
) -> Result<PipelineReport> {
    if degree < 3 {
        return Err(Error::InvalidArgument(format!(
            "pipeline needs degree >= 3, got {degree}"
        )));
    }
    let (z, level_source) = match z_override {
        Some(z) if z >= 1 => (z, LevelSource::Override),
        Some(_) => return Err(Error::InvalidArgument("z must be at least 1".into())),
        None if height >= 2 => (sieve_level(height)?, LevelSource::Rule),
        None => (1, LevelSource::Degenerate),
    };
    let scan = scan_admissible(degree, height, z, limits, true)?;
    let inst = scan.instance;
    let admissible = inst.ambient_size().clone();
    let irreducible = scan.irreducible.expect("decided over Z");
    let reducible = &admissible - &irreducible;
    let sifted = scan.sifted;
    let bound = match turan_upper_bound(&inst) {
        Ok(b) => Some(b),
        Err(Error::EmptySieve) => None,
        Err(e) => return Err(e),
    };
    let turan_holds = bound.as_ref().map(|b| rational(&sifted) <= b.total);
    let chain_holds = scan.reducible_not_sifted.is_some_and(|c| c.is_zero())
        && &irreducible + &sifted >= admissible;
    let remainders = inst
        .primes()
        .iter()
        .map(|sp| RemainderRow {
            prime: sp.prime,
            exact: inst.remainder(sp),
            shape: remainder_shape(degree, height, sp.prime),
        })
        .collect();
    let mut pair_remainders = Vec::new();
    for (i, a) in inst.primes().iter().enumerate() {
        for b in &inst.primes()[i + 1..] {
            pair_remainders.push(PairRemainderRow {
                p: a.prime,
                q: b.prime,
                exact: inst.pair_remainder(a, b),
                shape: pair_remainder_shape(degree, height, a.prime, b.prime),
            });
        }
    }
    Ok(PipelineReport {
        degree,
        height,
        z,
        level_source,
        admissible,
        irreducible,
        reducible,
        sifted,
        bound,
        turan_holds,
        chain_holds,
        remainders,
        pair_remainders,
        main_term_magnitude: main_term_magnitude(degree, height),
        error_term_magnitude: error_term_magnitude(degree, height),
        instance: inst,
    })
}
