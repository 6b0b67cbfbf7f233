//! Minimal polynomial arithmetic over the prime field F_p on raw `Vec<u64>`
//! coefficient vectors (ascending degree). This is the bootstrap layer under
//! `FqElt`; everything higher up uses the generic `Poly<FqElt>`.

use super::factor::{mul_mod_u64, pow_mod_u64};
use num::BigUint;

pub fn normalize(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn degree(v: &[u64]) -> isize {
    v.len() as isize - 1
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    normalize(&mut out);
    out
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    let cap = u128::MAX - (p as u128 - 1) * (p as u128 - 1);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let idx = i + j;
            if acc[idx] >= cap {
                acc[idx] %= p as u128;
            }
            acc[idx] += x as u128 * y as u128;
        }
    }
    let mut out: Vec<u64> = acc.into_iter().map(|c| (c % p as u128) as u64).collect();
    normalize(&mut out);
    out
}

pub fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|&x| mul_mod_u64(x, c, p)).collect();
    normalize(&mut out);
    out
}

pub fn inv_scalar(c: u64, p: u64) -> u64 {
    assert!(c % p != 0, "inverse of zero in F_p");
    pow_mod_u64(c, p - 2, p)
}

/// Remainder of a by b (b nonzero).
pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    normalize(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_scalar(b[db], p);
    while r.len() > db {
        let i = r.len() - 1;
        let q = mul_mod_u64(r[i], lead_inv, p);
        if q != 0 {
            for j in 0..db {
                let t = mul_mod_u64(q, b[j], p);
                r[i - db + j] = (r[i - db + j] + p - t) % p;
            }
        }
        r.pop();
        normalize(&mut r);
    }
    r
}

pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    normalize(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (vec![], r);
    }
    let lead_inv = inv_scalar(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = mul_mod_u64(r[i], lead_inv, p);
        if c != 0 {
            q[i - db] = c;
            for j in 0..=db {
                let t = mul_mod_u64(c, b[j], p);
                r[i - db + j] = (r[i - db + j] + p - t) % p;
            }
        }
    }
    normalize(&mut q);
    normalize(&mut r);
    (q, r)
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    normalize(&mut x);
    normalize(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&l) = x.last() {
        x = scale(&x, inv_scalar(l, p), p);
    }
    x
}

/// Extended gcd: (g, s, t) with s*a + t*b = g, g monic.
pub fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    normalize(&mut r0);
    normalize(&mut r1);
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let ns = sub(&s0, &mul(&q, &s1, p), p);
        let nt = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    if let Some(&l) = r0.clone().last() {
        let li = inv_scalar(l, p);
        r0 = scale(&r0, li, p);
        s0 = scale(&s0, li, p);
        t0 = scale(&t0, li, p);
    }
    (r0, s0, t0)
}

/// x^e mod m for a BigUint exponent.
pub fn pow_x_mod(e: &BigUint, m: &[u64], p: u64) -> Vec<u64> {
    powmod(&[0, 1], e, m, p)
}

pub fn powmod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let b = rem(base, m, p);
    let bits = crate::exactnum::poly::biguint_bits(e);
    for bit in bits {
        acc = rem(&mul(&acc, &acc, p), m, p);
        if bit {
            acc = rem(&mul(&acc, &b, p), m, p);
        }
    }
    acc
}

/// Irreducibility over F_p: x^(p^k) = x mod f and gcd(x^(p^(k/l)) - x, f) = 1
/// for every prime l | k.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = degree(f);
    if k < 1 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let k = k as u32;
    let pk = BigUint::from(p).pow(k);
    let frob_k = pow_x_mod(&pk, f, p);
    if frob_k != vec![0, 1] {
        return false;
    }
    for (l, _) in super::factor::factor_u64(k as u64) {
        let e = BigUint::from(p).pow(k / l as u32);
        let h = pow_x_mod(&e, f, p);
        let diff = sub(&h, &[0, 1], p);
        let g = gcd(&diff, f, p);
        if degree(&g) != 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_gcd_inverts() {
        let p = 71;
        let f = vec![1, 0, 1]; // x^2 + 1, irreducible mod 71
        let a = vec![3, 5];
        let (g, _, t) = ext_gcd(&f, &a, p);
        assert_eq!(g, vec![1]);
        let prod = rem(&mul(&a, &t, p), &f, p);
        assert_eq!(prod, vec![1]);
    }

    #[test]
    fn irreducibility_known_cases() {
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2)); // x^4 + x + 1 over F_2
        assert!(!is_irreducible(&[1, 0, 0, 0, 1], 2)); // x^4 + 1 = (x+1)^4
        assert!(is_irreducible(&[1, 0, 1], 71)); // x^2 + 1, -1 nonresidue
        assert!(!is_irreducible(&[1, 0, 1], 13)); // -1 is a residue mod 13
    }
}
