//! Oracles shared by the integration tests. Nothing here calls into the
//! algorithms it is used to check.

#![allow(dead_code)]

/// `C(n, k)` by the multiplicative formula in `u128`.
pub fn small_binomial(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of tuples in `[0, cap]^parts` with the given sum, by odometer.
pub fn tuples_with_sum(parts: usize, target: u64, cap: u64) -> u64 {
    let mut t = vec![0u64; parts];
    let mut hits = 0;
    loop {
        if t.iter().sum::<u64>() == target {
            hits += 1;
        }
        let mut i = 0;
        loop {
            if i == parts {
                return hits;
            }
            if t[i] < cap {
                t[i] += 1;
                break;
            }
            t[i] = 0;
            i += 1;
        }
    }
}

/// All tuples in `[0, cap]^parts` summing to `target`, lexicographic order.
pub fn tuples_listing(parts: usize, target: i64, cap: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut t = vec![0i64; parts];
    loop {
        if t.iter().sum::<i64>() == target {
            out.push(t.clone());
        }
        let mut i = parts;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if t[i] < cap {
                t[i] += 1;
                break;
            }
            t[i] = 0;
        }
    }
}

/// Whether the monic polynomial with non-leading coefficients `coeffs`
/// factors over the integers: every monic `g` of degree `1..=n/2` with all
/// coefficients in `[-B, B]` (B the largest Mignotte bound) is tried, and the
/// cofactor from naive long division is multiplied back.
pub fn reducible_by_factor_pairs(coeffs: &[i64]) -> bool {
    let n = coeffs.len();
    let mut full: Vec<i64> = coeffs.to_vec();
    full.push(1);
    let norm_sq: i64 = full.iter().map(|c| c * c).sum();
    let mut norm = (norm_sq as f64).sqrt() as i64;
    while norm * norm < norm_sq {
        norm += 1;
    }
    for m in 1..=n / 2 {
        let b = (0..m as i64)
            .map(|i| {
                small_binomial(m as i64 - 1, i) as i64 * norm
                    + small_binomial(m as i64 - 1, i - 1) as i64
            })
            .max()
            .unwrap();
        let mut g = vec![-b; m];
        loop {
            let mut gf = g.clone();
            gf.push(1);
            let mut r = full.clone();
            let mut q = vec![0i64; n - m + 1];
            for k in (0..=n - m).rev() {
                q[k] = r[k + m];
                for (i, &c) in gf.iter().enumerate() {
                    r[k + i] -= q[k] * c;
                }
            }
            if r.iter().all(|&c| c == 0) {
                let mut prod = vec![0i64; n + 1];
                for (i, &x) in gf.iter().enumerate() {
                    for (j, &y) in q.iter().enumerate() {
                        prod[i + j] += x * y;
                    }
                }
                assert_eq!(prod, full);
                return true;
            }
            let mut i = 0;
            while i < m {
                if g[i] < b {
                    g[i] += 1;
                    break;
                }
                g[i] = -b;
                i += 1;
            }
            if i == m {
                break;
            }
        }
    }
    false
}

/// Odd-only sieve of Eratosthenes counting primes `<= z`.
pub fn odd_sieve_pi(z: u64) -> u64 {
    if z < 2 {
        return 0;
    }
    let half = ((z - 1) / 2) as usize; // odd numbers 3, 5, ..., <= z
    let mut composite = vec![false; half + 1];
    let mut i = 1usize;
    while (2 * i + 1) * (2 * i + 1) <= z as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = (p * p - 1) / 2;
            while j <= half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    1 + (1..=half).filter(|&k| !composite[k]).count() as u64
}
