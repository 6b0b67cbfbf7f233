//! The ring `R = Z[T] / (phi_{n,d})` acting on the Jacobian through the
//! order-nd coordinate scaling.

use super::poly::IntPoly;
use crate::Error;
use num::{BigInt, One};

/// `phi_{n,d}(T) = ((T^{nd} - 1)(T - 1)) / ((T^n - 1)(T^d - 1))`, exactly.
pub fn build_phi(n: u64, d: u64) -> Result<IntPoly, Error> {
    if n < 2 || d < 2 {
        return Err(Error::Domain(format!("need n, d >= 2, got ({n}, {d})")));
    }
    if num::integer::gcd(n, d) != 1 {
        return Err(Error::Domain(format!("n = {n} and d = {d} must be coprime")));
    }
    let num = IntPoly::x_pow_minus_one((n * d) as usize).mul(&IntPoly::x_pow_minus_one(1));
    let den = IntPoly::x_pow_minus_one(n as usize).mul(&IntPoly::x_pow_minus_one(d as usize));
    num.exact_div(&den)
        .ok_or_else(|| Error::Internal("phi_{n,d} division left a remainder".into()))
}

/// `Z[T]/(phi_{n,d})` together with the monomial basis data used by the
/// homology picture.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub n: u64,
    pub d: u64,
    pub modulus: IntPoly,
    /// `{ d*a + n*b mod nd : a in [0, n-2], b in [0, d-2] }`.
    pub basis_exponents: Vec<u64>,
}

impl QuotientRing {
    pub fn new(n: u64, d: u64) -> Result<Self, Error> {
        let modulus = build_phi(n, d)?;
        debug_assert_eq!(modulus.degree() as u64, (n - 1) * (d - 1));
        debug_assert!(modulus.is_monic());
        let nd = n * d;
        let mut basis_exponents = Vec::with_capacity(((n - 1) * (d - 1)) as usize);
        for a in 0..=n.saturating_sub(2) {
            for b in 0..=d.saturating_sub(2) {
                basis_exponents.push((d * a + n * b) % nd);
            }
        }
        Ok(QuotientRing {
            n,
            d,
            modulus,
            basis_exponents,
        })
    }

    pub fn rank(&self) -> usize {
        self.modulus.degree() as usize
    }

    /// Canonical representative of `p` modulo `phi_{n,d}`, as a coefficient
    /// vector of length `(n-1)(d-1)`.
    pub fn reduce(&self, p: &IntPoly) -> Vec<BigInt> {
        let (_, rem) = p.divrem_monic(&self.modulus);
        let mut out = vec![BigInt::from(0); self.rank()];
        for (i, c) in rem.coeffs.into_iter().enumerate() {
            out[i] = c;
        }
        out
    }

    /// Matrix sending the monomial basis `T^(basis_exponents[i])` to the
    /// reduced power basis; rows are reductions of the basis monomials.
    pub fn basis_change_matrix(&self) -> Vec<Vec<BigInt>> {
        self.basis_exponents
            .iter()
            .map(|&e| self.reduce(&IntPoly::monomial(BigInt::one(), e as usize)))
            .collect()
    }
}
