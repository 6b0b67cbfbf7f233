//! Integer primality and factorization support for multiplicative-order work.
//!
//! Orders of the audit fields reach 71^24, so `q - 1` is factored through its
//! cyclotomic pieces `Phi_e(p)`, each small enough for 64-bit Pollard rho.

use num::BigUint;
use num::{Integer, One, Zero};

/// Deterministic Miller-Rabin for u64 (the fixed witness set is exact below
/// 3.3 * 10^24, which covers all of u64).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Pollard rho (Brent cycle finding); `n` must be odd composite > 1.
fn pollard_rho(n: u64, seed: u64) -> u64 {
    let mut c = seed;
    loop {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = num::integer::gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of a u64 as (prime, exponent) pairs, ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "cannot factor zero");
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    for p in [2u64, 3, 5] {
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
    }
    let mut d = 7u64;
    let wheel = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut wi = 0;
    while d * d <= n && d < 1_000_00 {
        while n % d == 0 {
            push(d, &mut out);
            n /= d;
        }
        d += wheel[wi];
        wi = (wi + 1) % wheel.len();
    }
    // Remaining cofactor: prime, or cracked by rho.
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            push(m, &mut out);
            continue;
        }
        let d = pollard_rho(m, 1);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out
}

/// Distinct prime factors of `p^k - 1`, computed through the factorization
/// `p^k - 1 = prod_{e | k} Phi_e(p)` so that each piece stays within u64.
pub fn distinct_prime_factors_of_order(p: u64, k: u32) -> Vec<BigUint> {
    let mut primes: Vec<BigUint> = Vec::new();
    for e in 1..=k as u64 {
        if k as u64 % e != 0 {
            continue;
        }
        let phi = crate::exactnum::cyclotomic::cyclotomic_poly(e);
        let val = phi.eval_bigint(&num::BigInt::from(p));
        let val: BigUint = val.to_biguint().expect("Phi_e(p) > 0 for p >= 2");
        if val.is_one() {
            continue;
        }
        let chunk: u64 = val
            .to_u64_digits()
            .first()
            .copied()
            .filter(|_| val.bits() <= 64)
            .unwrap_or_else(|| panic!("cyclotomic chunk Phi_{e}({p}) exceeds u64"));
        for (q, _) in factor_u64(chunk) {
            let q = BigUint::from(q);
            if !primes.contains(&q) {
                primes.push(q);
            }
        }
    }
    primes.sort();
    primes
}

/// Prime factorization of a `BigUint` that is small enough for u64 machinery.
pub fn factor_biguint(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    if n.bits() <= 64 {
        let v = n.to_u64_digits().first().copied().unwrap_or(0);
        return factor_u64(v)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
    }
    // Big inputs only arise as p^k - 1 of constructed fields; peel small
    // primes, then insist the cofactor is a u64 problem.
    let mut n = n.clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in 2u64..100_000 {
        let bp = BigUint::from(p);
        while (&n % &bp).is_zero() {
            if let Some(e) = out.iter_mut().find(|(q, _)| *q == bp) {
                e.1 += 1;
            } else {
                out.push((bp.clone(), 1));
            }
            n /= &bp;
        }
        if n.is_one() {
            break;
        }
    }
    if !n.is_one() {
        assert!(
            n.bits() <= 64,
            "factor_biguint: cofactor too large ({} bits)",
            n.bits()
        );
        let v = n.to_u64_digits()[0];
        for (p, e) in factor_u64(v) {
            out.push((BigUint::from(p), e));
        }
    }
    out.sort();
    out
}

/// Exact power decomposition: returns (p, k) with n = p^k and p prime, if any.
pub fn as_prime_power(n: &BigUint) -> Option<(u64, u32)> {
    if n.bits() <= 64 {
        let v = n.to_u64_digits().first().copied()?;
        let f = factor_u64(v);
        if f.len() == 1 {
            return Some(f[0]);
        }
        return None;
    }
    // Large n: try small prime bases.
    for p in 2u64..10_000 {
        let bp = BigUint::from(p);
        let mut m = n.clone();
        let mut k = 0u32;
        while (&m % &bp).is_zero() {
            m /= &bp;
            k += 1;
        }
        if m.is_one() && is_prime_u64(p) {
            return Some((p, k));
        }
    }
    None
}

/// Integer gcd helpers re-exported for callers working with BigUint orders.
pub fn gcd_biguint(a: &BigUint, b: &BigUint) -> BigUint {
    a.gcd(b)
}
