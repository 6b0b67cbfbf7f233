//! Field abstraction shared by the exact coefficient domains.
//!
//! Elements carry enough context to produce their own zero and one, so a
//! polynomial or matrix routine never needs a separate field handle. This
//! matters for `FqElt` and `CycElt`, whose arithmetic depends on a modulus
//! stored behind the element.

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

/// An element of a field with exact arithmetic.
///
/// `zero_like`/`one_like` return constants in the same field as `self`;
/// `inv` panics on zero (callers check `is_zero` first).
pub trait FieldElem: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;

    /// Characteristic of the field, with 0 for characteristic zero.
    fn characteristic(&self) -> u64 {
        0
    }

    /// Small-integer constant in the same field as `self`.
    fn from_i64_like(&self, v: i64) -> Self {
        let mut acc = self.zero_like();
        let one = self.one_like();
        for _ in 0..v.unsigned_abs() {
            acc = acc.add(&one);
        }
        if v < 0 {
            acc.neg()
        } else {
            acc
        }
    }

    /// Exponentiation by a nonnegative integer.
    fn pow_u64(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// All field elements `r` with `r^n = self`. The default has no root
    /// extraction; domains that support it override.
    fn nth_roots(&self, _n: u64) -> Vec<Self> {
        unimplemented!("nth_roots not supported in this coefficient domain")
    }
}

impl FieldElem for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "division by zero");
        self.recip()
    }

    fn from_i64_like(&self, v: i64) -> Self {
        BigRational::from(BigInt::from(v))
    }

    /// Exact rational n-th roots: checks that numerator and denominator are
    /// perfect n-th powers.
    fn nth_roots(&self, n: u64) -> Vec<Self> {
        assert!(n >= 1);
        if Zero::is_zero(self) {
            return vec![BigRational::zero()];
        }
        if self.is_negative() && n % 2 == 0 {
            return vec![];
        }
        let (num, den) = (self.numer(), self.denom());
        let root = |v: &BigInt| -> Option<BigInt> {
            let (mag, neg) = (v.abs(), v.is_negative());
            let r = num::integer::Roots::nth_root(&mag, n as u32);
            if num::traits::Pow::pow(r.clone(), n as u32) != mag {
                return None;
            }
            Some(if neg { -r } else { r })
        };
        match (root(num), root(den)) {
            (Some(a), Some(b)) => {
                let r = BigRational::new(a, b);
                if n % 2 == 0 {
                    vec![r.clone(), -r]
                } else {
                    vec![r]
                }
            }
            _ => vec![],
        }
    }
}

/// Convenience constructor for rational constants.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor for integer rationals.
pub fn rat_int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}
