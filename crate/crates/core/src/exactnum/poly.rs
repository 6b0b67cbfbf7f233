//! Dense univariate polynomials.
//!
//! Two flavors: [`IntPoly`] over `BigInt` (cyclotomic moduli, quotient-ring
//! reduction, where divisions must stay in `Z[T]`) and the generic [`Poly<K>`]
//! over any [`FieldElem`] (finite fields, rationals, cyclotomic fields).
//!
//! Both store coefficients in ascending degree order and keep the canonical
//! invariant: the vector is empty for the zero polynomial, and the last
//! coefficient is nonzero otherwise.

use super::field::FieldElem;
use num::{BigInt, One, Zero};

// ---------------------------------------------------------------------------
// Integer polynomials
// ---------------------------------------------------------------------------

/// Dense polynomial with `BigInt` coefficients, ascending degree order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly::new(vec![BigInt::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// x^n - 1.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = -BigInt::one();
        c[n] = BigInt::one();
        IntPoly::new(c)
    }

    /// c * x^deg.
    pub fn monomial(c: BigInt, deg: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); deg + 1];
        v[deg] = c;
        IntPoly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports -1.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Quotient and remainder by a monic divisor; stays in `Z[T]`.
    pub fn divrem_monic(&self, div: &Self) -> (Self, Self) {
        assert!(div.is_monic(), "divisor must be monic");
        let d = div.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let q = std::mem::replace(&mut rem[i], BigInt::zero());
            if q.is_zero() {
                continue;
            }
            for (j, c) in div.coeffs.iter().enumerate().take(d) {
                rem[i - d + j] -= &q * c;
            }
            quot[i - d] = q;
        }
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Exact division; returns `None` when the remainder is nonzero.
    ///
    /// The divisor need not be monic: the quotient is checked exactly.
    pub fn exact_div(&self, div: &Self) -> Option<Self> {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.coeffs.len() < div.coeffs.len() {
            return None;
        }
        let d = div.coeffs.len() - 1;
        let lead = div.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let top = std::mem::replace(&mut rem[i], BigInt::zero());
            if top.is_zero() {
                continue;
            }
            let (q, r) = num::Integer::div_rem(&top, &lead);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in div.coeffs.iter().enumerate().take(d) {
                rem[i - d + j] -= &q * c;
            }
            quot[i - d] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(quot))
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Generic polynomials over a field
// ---------------------------------------------------------------------------

/// Dense polynomial over a [`FieldElem`] domain, ascending degree order.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<K: FieldElem> {
    pub coeffs: Vec<K>,
}

impl<K: FieldElem> Poly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: K) -> Self {
        Poly::new(vec![c])
    }

    /// c * x^deg.
    pub fn monomial(c: K, deg: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![c.zero_like(); deg + 1];
        v[deg] = c;
        Poly::new(v)
    }

    /// Build from integer coefficients using `like` for the field context.
    pub fn from_i64(like: &K, coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| like.from_i64_like(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeff(&self, i: usize) -> Option<&K> {
        self.coeffs.get(i)
    }

    /// Coefficient of x^i as an owned value, using `like` for zero context.
    pub fn coeff_or_zero(&self, i: usize, like: &K) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(|| like.zero_like())
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let zero = self.coeffs[0].zero_like();
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = rhs.coeffs.get(i).unwrap_or(&zero);
            out.push(a.add(b));
        }
        Poly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(!self.is_zero() || e > 0, "0^0 is undefined here");
        if self.is_zero() {
            return Poly::zero();
        }
        let mut base = self.clone();
        let mut acc = Poly::constant(self.coeffs[0].one_like());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; the divisor's leading coefficient is inverted.
    pub fn divrem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < div.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = div.leading().unwrap().inv();
        let d = div.coeffs.len() - 1;
        let zero = self.coeffs[0].zero_like();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![zero.clone(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].mul(&lead_inv);
            rem[i] = zero.clone();
            for (j, c) in div.coeffs.iter().enumerate().take(d) {
                rem[i - d + j] = rem[i - d + j].sub(&q.mul(c));
            }
            quot[i - d] = q;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, div: &Self) -> Self {
        self.divrem(div).1
    }

    /// Monic generator of the ideal (self, rhs).
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&c.from_i64_like(i as i64)))
            .collect();
        Poly::new(out)
    }

    /// self^e mod m by square-and-multiply, exponent given in base-2 digits
    /// (most significant first) so arbitrary-precision exponents work.
    pub fn powmod_bits(&self, bits: &[bool], m: &Self) -> Self {
        let one = Poly::constant(m.coeffs[0].one_like());
        let mut acc = one;
        let base = self.rem(m);
        for &bit in bits {
            acc = acc.mul(&acc).rem(m);
            if bit {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Composition self(g).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Resultant of self and rhs via the Euclidean remainder sequence.
    pub fn resultant(&self, rhs: &Self) -> K {
        let sample = self
            .coeffs
            .first()
            .or_else(|| rhs.coeffs.first())
            .expect("resultant of two zero polynomials");
        let one = sample.one_like();
        let mut a = self.clone();
        let mut b = rhs.clone();
        let mut acc = one.clone();
        loop {
            if b.is_zero() {
                return sample.zero_like();
            }
            if b.degree() == 0 {
                return acc.mul(&b.coeffs[0].pow_u64(a.degree() as u64));
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return sample.zero_like();
            }
            let lb = b.leading().unwrap().clone();
            let exp = (a.degree() - r.degree()) as u64;
            let sign = if (a.degree() * b.degree()) % 2 == 1 {
                one.neg()
            } else {
                one.clone()
            };
            acc = acc.mul(&sign).mul(&lb.pow_u64(exp));
            a = b;
            b = r;
        }
    }

    /// Formal n-th root: the unique monic-compatible `v` with `v^n = self`,
    /// determined from the leading coefficient down. `lead_root` supplies the
    /// chosen n-th root of the leading coefficient. Returns `None` when no
    /// polynomial root exists with that leading choice.
    pub fn formal_nth_root(&self, n: u64, lead_root: &K) -> Option<Self> {
        if self.is_zero() || n == 0 {
            return None;
        }
        let deg = self.degree() as u64;
        if deg % n != 0 {
            return None;
        }
        let e = (deg / n) as usize;
        let zero = self.coeffs[0].zero_like();
        let mut v = vec![zero.clone(); e + 1];
        v[e] = lead_root.clone();
        // Coefficient of x^(deg - i) in v^n is n*lead^(n-1)*v[e-i] + (terms in
        // higher-known coefficients); solve top-down.
        let scale = lead_root
            .pow_u64(n - 1)
            .mul(&lead_root.from_i64_like(n as i64));
        if scale.is_zero() {
            return None;
        }
        let scale_inv = scale.inv();
        for i in 1..=e {
            let partial = Poly::new(v[e - i + 1..=e].to_vec());
            // v so far, shifted: current guess has terms x^(e-i+1)..x^e.
            let guess = Poly {
                coeffs: {
                    let mut g = vec![zero.clone(); e - i + 1];
                    g.extend_from_slice(&partial.coeffs);
                    g
                },
            };
            let p = Poly::new(guess.coeffs).pow(n);
            let idx = (deg as usize) - i;
            let have = p.coeff_or_zero(idx, &zero);
            let want = self.coeff_or_zero(idx, &zero);
            v[e - i] = want.sub(&have).mul(&scale_inv);
        }
        let cand = Poly::new(v);
        if cand.pow(n) == *self {
            Some(cand)
        } else {
            None
        }
    }
}

/// Significant bits of a `BigUint`, most significant first.
pub fn biguint_bits(e: &num::BigUint) -> Vec<bool> {
    if e.is_zero() {
        return vec![];
    }
    let n = e.bits();
    (0..n).rev().map(|i| e.bit(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::field::rat_int;
    use num::BigUint;

    #[test]
    fn intpoly_exact_division() {
        // (x^2 - 1) / (x - 1) = x + 1
        let num = IntPoly::from_i64(&[-1, 0, 1]);
        let den = IntPoly::from_i64(&[-1, 1]);
        assert_eq!(num.exact_div(&den).unwrap(), IntPoly::from_i64(&[1, 1]));
        // (x^2 + 1) / (x - 1) is not exact
        assert!(IntPoly::from_i64(&[1, 0, 1]).exact_div(&den).is_none());
    }

    #[test]
    fn poly_divrem_and_gcd() {
        let f = Poly::from_i64(&rat_int(0), &[-1, 0, 0, 0, 1]); // x^4 - 1
        let g = Poly::from_i64(&rat_int(0), &[-1, 0, 1]); // x^2 - 1
        let (q, r) = f.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_i64(&rat_int(0), &[1, 0, 1]));
        assert_eq!(f.gcd(&g), g.monic());
    }

    #[test]
    fn formal_root_recovers_square() {
        let v = Poly::from_i64(&rat_int(0), &[3, 2, 1]);
        let sq = v.mul(&v);
        let got = sq.formal_nth_root(2, &rat_int(1)).unwrap();
        assert_eq!(got, v);
        let miss = Poly::from_i64(&rat_int(0), &[1, 1, 1, 1]);
        assert!(miss.formal_nth_root(2, &rat_int(1)).is_none());
    }

    #[test]
    fn resultant_matches_discriminant_shape() {
        // res(x^2 - 1, x - 2) = (2-1)(2+1) = 3 up to sign convention
        let f = Poly::from_i64(&rat_int(0), &[-1, 0, 1]);
        let g = Poly::from_i64(&rat_int(0), &[-2, 1]);
        let r = f.resultant(&g);
        assert_eq!(r, rat_int(3));
    }

    #[test]
    fn powmod_bits_matches_pow() {
        let m = Poly::from_i64(&rat_int(0), &[1, 1, 1]); // x^2 + x + 1
        let x = Poly::from_i64(&rat_int(0), &[0, 1]);
        let e = BigUint::from(10u32);
        let got = x.powmod_bits(&biguint_bits(&e), &m);
        assert_eq!(got, x.pow(10).rem(&m));
    }
}
