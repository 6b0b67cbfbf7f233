//! Finite fields `F_{p^k}` with canonical deterministic construction.
//!
//! Every choice is pinned so downstream objects are bit-reproducible:
//! the defining polynomial is the lexicographically least monic irreducible
//! of degree k (coefficient tuples compared as base-p integers), the
//! canonical generator is the least element of full multiplicative order,
//! and embeddings send the small field's algebra generator to the least root
//! of its defining polynomial in the big field.

pub mod factor;
mod fppoly;
pub mod roots;

use crate::exactnum::FieldElem;
use crate::Error;
use factor::{distinct_prime_factors_of_order, is_prime_u64};
use num::{BigUint, One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Fields above this size refuse to build dense discrete-log tables.
pub const DLOG_CAP: u64 = 1_000_000;

struct FqInner {
    p: u64,
    k: u32,
    /// Monic, length k+1, coefficients in [0, p).
    defining: Vec<u64>,
    order: BigUint,
    generator: OnceLock<Vec<u64>>,
    order_primes: OnceLock<Vec<BigUint>>,
    dlog: OnceLock<Vec<u32>>,
}

/// A handle to a canonically constructed finite field.
#[derive(Clone)]
pub struct FqField(Arc<FqInner>);

impl std::fmt::Debug for FqField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{{{}^{}}}", self.0.p, self.0.k)
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.k == other.0.k)
    }
}
impl Eq for FqField {}

fn field_cache() -> &'static Mutex<HashMap<(u64, u32), FqField>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), FqField>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn embedding_cache() -> &'static Mutex<HashMap<(u64, u32, u32), Vec<u64>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32, u32), Vec<u64>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Construct (or fetch) the canonical `F_{p^k}`.
pub fn make_field(p: u64, k: u32) -> Result<FqField, Error> {
    if !is_prime_u64(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::Domain("extension degree must be >= 1".into()));
    }
    if let Some(f) = field_cache().lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let defining = least_irreducible(p, k);
    let order = BigUint::from(p).pow(k);
    let field = FqField(Arc::new(FqInner {
        p,
        k,
        defining,
        order,
        generator: OnceLock::new(),
        order_primes: OnceLock::new(),
        dlog: OnceLock::new(),
    }));
    field_cache()
        .lock()
        .unwrap()
        .insert((p, k), field.clone());
    Ok(field)
}

/// Lexicographically least monic irreducible of degree k over F_p, with the
/// coefficient tuple (c_{k-1}, ..., c_0) compared as a base-p integer.
fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    if k == 1 {
        // T itself: linear polynomials are irreducible; N = 0 is least.
        return vec![0, 1];
    }
    let k = k as usize;
    let mut digits = vec![0u64; k]; // digits[i] = c_i
    loop {
        let mut f = digits.clone();
        f.push(1);
        if fppoly::is_irreducible(&f, p) {
            return f;
        }
        // Increment (c_{k-1}, ..., c_0) as a base-p integer: c_0 fastest.
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < k, "no irreducible polynomial found (impossible)");
        }
    }
}

impl FqField {
    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> &BigUint {
        &self.0.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        if self.0.order.bits() <= 63 {
            Some(self.0.order.to_u64_digits()[0])
        } else {
            None
        }
    }

    pub fn defining_poly(&self) -> &[u64] {
        &self.0.defining
    }

    pub fn zero(&self) -> FqElt {
        FqElt {
            field: self.clone(),
            coeffs: vec![0; self.0.k as usize],
        }
    }

    pub fn one(&self) -> FqElt {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> FqElt {
        let mut coeffs = vec![0; self.0.k as usize];
        coeffs[0] = v % self.0.p;
        FqElt {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn from_i64(&self, v: i64) -> FqElt {
        let p = self.0.p as i64;
        self.from_u64(v.rem_euclid(p) as u64)
    }

    /// The image of T in F_p[T]/(defining), i.e. the algebra generator.
    pub fn gen_t(&self) -> FqElt {
        if self.0.k == 1 {
            // Defining poly is T: the residue of T is 0; not useful, but
            // degree-1 fields never use the algebra generator.
            return self.zero();
        }
        let mut coeffs = vec![0; self.0.k as usize];
        coeffs[1] = 1;
        FqElt {
            field: self.clone(),
            coeffs,
        }
    }

    /// Element from an explicit coefficient vector (reduced mod p, padded).
    pub fn from_coeffs(&self, mut coeffs: Vec<u64>) -> FqElt {
        assert!(coeffs.len() <= self.0.k as usize, "coefficient vector too long");
        for c in coeffs.iter_mut() {
            *c %= self.0.p;
        }
        coeffs.resize(self.0.k as usize, 0);
        FqElt {
            field: self.clone(),
            coeffs,
        }
    }

    /// Element from its base-p integer encoding.
    pub fn decode(&self, mut n: u64) -> FqElt {
        let mut coeffs = vec![0; self.0.k as usize];
        for c in coeffs.iter_mut() {
            *c = n % self.0.p;
            n /= self.0.p;
        }
        FqElt {
            field: self.clone(),
            coeffs,
        }
    }

    /// Distinct prime factors of p^k - 1.
    pub fn order_minus_one_primes(&self) -> &[BigUint] {
        self.0
            .order_primes
            .get_or_init(|| distinct_prime_factors_of_order(self.0.p, self.0.k))
    }

    /// The least element of full multiplicative order p^k - 1.
    pub fn canonical_generator(&self) -> FqElt {
        let coeffs = self
            .0
            .generator
            .get_or_init(|| {
                let q1 = self.order() - BigUint::one();
                let primes = self.order_minus_one_primes().to_vec();
                let mut n = 1u64;
                loop {
                    let x = self.decode(n);
                    debug_assert!(!x.is_zero());
                    let full = primes.iter().all(|l| {
                        let e = &q1 / l;
                        !x.pow_biguint(&e).is_one()
                    });
                    if full {
                        return x.coeffs;
                    }
                    n += 1;
                }
            })
            .clone();
        FqElt {
            field: self.clone(),
            coeffs,
        }
    }

    /// Dense discrete-log table base the canonical generator. Fields larger
    /// than [`DLOG_CAP`] are rejected.
    pub fn dlog_table(&self) -> Result<&[u32], Error> {
        let q = self.order_u64().filter(|&q| q <= DLOG_CAP).ok_or_else(|| {
            Error::Domain(format!(
                "field of order {} exceeds the dlog table cap {DLOG_CAP}",
                self.order()
            ))
        })?;
        Ok(self.0.dlog.get_or_init(|| {
            let g = self.canonical_generator();
            let mut table = vec![u32::MAX; q as usize];
            let mut acc = self.one();
            for i in 0..(q - 1) {
                let idx = acc.encode_u64().expect("small field encodes in u64") as usize;
                table[idx] = i as u32;
                acc = acc.mul(&g);
            }
            table
        }))
    }

    /// Discrete log of x base the canonical generator.
    pub fn dlog(&self, x: &FqElt) -> Result<u64, Error> {
        if x.is_zero() {
            return Err(Error::Domain("dlog of zero".into()));
        }
        let table = self.dlog_table()?;
        let idx = x.encode_u64().expect("capped field") as usize;
        Ok(table[idx] as u64)
    }

    /// All elements, in encoding order (small fields only).
    pub fn elements(&self) -> impl Iterator<Item = FqElt> + '_ {
        let q = self
            .order_u64()
            .expect("element iteration requires a small field");
        (0..q).map(move |n| self.decode(n))
    }
}

/// An element of `F_{p^k}`: a length-k residue vector on the power basis of
/// the defining polynomial.
#[derive(Clone)]
pub struct FqElt {
    field: FqField,
    coeffs: Vec<u64>,
}

impl std::fmt::Debug for FqElt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Fq({:?} in {:?})", self.coeffs, self.field)
    }
}

impl PartialEq for FqElt {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for FqElt {}

impl PartialOrd for FqElt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordering by base-p encoding (most significant coefficient first).
impl Ord for FqElt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        assert!(self.field == other.field, "ordering across fields");
        self.coeffs
            .iter()
            .rev()
            .cmp(other.coeffs.iter().rev())
    }
}

impl FqElt {
    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs.iter().skip(1).all(|&c| c == 0)
    }

    /// Base-p integer encoding, when it fits in u64.
    pub fn encode_u64(&self) -> Option<u64> {
        let p = self.field.p();
        let mut acc: u64 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(p)?.checked_add(c)?;
        }
        Some(acc)
    }

    pub fn encode_biguint(&self) -> BigUint {
        let p = BigUint::from(self.field.p());
        let mut acc = BigUint::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * &p + BigUint::from(c);
        }
        acc
    }

    pub fn pow_biguint(&self, e: &BigUint) -> FqElt {
        let mut acc = self.field.one();
        let bits = crate::exactnum::poly::biguint_bits(e);
        for bit in bits {
            acc = acc.mul(&acc);
            if bit {
                acc = acc.mul(self);
            }
        }
        acc
    }

    /// Frobenius x -> x^p.
    pub fn frobenius(&self) -> FqElt {
        self.pow_biguint(&BigUint::from(self.field.p()))
    }

    /// Multiplicative order (nonzero elements only).
    pub fn multiplicative_order(&self) -> BigUint {
        assert!(!self.is_zero(), "order of zero");
        let q1 = self.field.order() - BigUint::one();
        let mut ord = q1.clone();
        for l in self.field.order_minus_one_primes() {
            while (&ord % l).is_zero() && self.pow_biguint(&(&ord / l)).is_one() {
                ord /= l;
            }
        }
        ord
    }

    /// Does this element lie in the subfield F_{p^d}? (d must divide k.)
    pub fn in_subfield(&self, d: u32) -> bool {
        assert!(self.field.k() % d == 0);
        let e = BigUint::from(self.field.p()).pow(d);
        self.pow_biguint(&e) == *self
    }
}

impl FieldElem for FqElt {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
    fn add(&self, rhs: &Self) -> Self {
        assert!(self.field == rhs.field, "mixed fields");
        let p = self.field.p();
        FqElt {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| (a + b) % p)
                .collect(),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        assert!(self.field == rhs.field, "mixed fields");
        let p = self.field.p();
        FqElt {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| (a + p - b) % p)
                .collect(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        assert!(self.field == rhs.field, "mixed fields");
        let p = self.field.p();
        let k = self.field.k() as usize;
        if k == 1 {
            return FqElt {
                field: self.field.clone(),
                coeffs: vec![factor::mul_mod_u64(self.coeffs[0], rhs.coeffs[0], p)],
            };
        }
        let prod = fppoly::mul(&self.coeffs, &rhs.coeffs, p);
        let red = fppoly::rem(&prod, self.field.defining_poly(), p);
        let mut coeffs = vec![0u64; k];
        coeffs[..red.len()].copy_from_slice(&red);
        FqElt {
            field: self.field.clone(),
            coeffs,
        }
    }
    fn neg(&self) -> Self {
        let p = self.field.p();
        FqElt {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&a| (p - a) % p).collect(),
        }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero field element");
        let p = self.field.p();
        let k = self.field.k() as usize;
        if k == 1 {
            return FqElt {
                field: self.field.clone(),
                coeffs: vec![fppoly::inv_scalar(self.coeffs[0], p)],
            };
        }
        let (g, _, t) = fppoly::ext_gcd(self.field.defining_poly(), &self.coeffs, p);
        assert_eq!(g, vec![1], "defining polynomial must be irreducible");
        let mut coeffs = vec![0u64; k];
        coeffs[..t.len()].copy_from_slice(&t);
        FqElt {
            field: self.field.clone(),
            coeffs,
        }
    }
    fn characteristic(&self) -> u64 {
        self.field.p()
    }
    fn from_i64_like(&self, v: i64) -> Self {
        self.field.from_i64(v)
    }
    fn nth_roots(&self, n: u64) -> Vec<Self> {
        if self.is_zero() {
            return vec![self.clone()];
        }
        roots::all_eth_roots(self, n)
    }
}

/// Deterministic embedding `F_{p^a} -> F_{p^(a*b)}`: the small field's algebra
/// generator maps to the least root of its defining polynomial.
#[derive(Clone, Debug)]
pub struct Embedding {
    small: FqField,
    big: FqField,
    image_of_t: FqElt,
}

impl Embedding {
    pub fn new(small: &FqField, big: &FqField) -> Result<Embedding, Error> {
        if small.p() != big.p() || big.k() % small.k() != 0 {
            return Err(Error::Domain(format!(
                "{small:?} does not embed into {big:?}"
            )));
        }
        if small.k() == 1 {
            return Ok(Embedding {
                small: small.clone(),
                big: big.clone(),
                image_of_t: big.zero(),
            });
        }
        let key = (small.p(), small.k(), big.k());
        if let Some(c) = embedding_cache().lock().unwrap().get(&key) {
            return Ok(Embedding {
                small: small.clone(),
                big: big.clone(),
                image_of_t: FqElt {
                    field: big.clone(),
                    coeffs: c.clone(),
                },
            });
        }
        // Least root of the small defining polynomial in the big field.
        let f: crate::exactnum::Poly<FqElt> = crate::exactnum::Poly::new(
            small
                .defining_poly()
                .iter()
                .map(|&c| big.from_u64(c))
                .collect(),
        );
        let mut rs: Vec<FqElt> = roots::roots_in_field(&f, roots::DEFAULT_SEED)
            .into_iter()
            .map(|(r, _)| r)
            .collect();
        rs.sort();
        let image = rs
            .into_iter()
            .next()
            .ok_or_else(|| Error::Internal("defining polynomial has no root upstairs".into()))?;
        embedding_cache()
            .lock()
            .unwrap()
            .insert(key, image.coeffs.clone());
        Ok(Embedding {
            small: small.clone(),
            big: big.clone(),
            image_of_t: image,
        })
    }

    pub fn small(&self) -> &FqField {
        &self.small
    }

    pub fn big(&self) -> &FqField {
        &self.big
    }

    pub fn apply(&self, x: &FqElt) -> FqElt {
        assert!(x.field == self.small, "element not in the source field");
        let mut acc = self.big.zero();
        for &c in x.coeffs.iter().rev() {
            acc = acc.mul(&self.image_of_t).add(&self.big.from_u64(c));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_field_canonical_constructions() {
        let f16 = make_field(2, 4).unwrap();
        assert_eq!(f16.defining_poly(), &[1, 1, 0, 0, 1]); // T^4 + T + 1
        assert_eq!(f16.order(), &BigUint::from(16u32));

        let f71 = make_field(71, 1).unwrap();
        // Least primitive root mod 71, against brute force.
        let g = f71.canonical_generator();
        assert_eq!(g.encode_u64(), Some(7));
        let brute = (2u64..71)
            .find(|&c| {
                let mut seen = 1u64;
                for e in 1..70 {
                    seen = seen * c % 71;
                    if seen == 1 && e < 70 {
                        return false;
                    }
                }
                true
            })
            .unwrap();
        assert_eq!(brute, 7);

        assert!(make_field(6, 2).is_err());
        assert!(make_field(54001, 1).is_ok());
    }

    #[test]
    fn deep_extension_field_constructs() {
        let f = make_field(71, 24).unwrap();
        assert_eq!(f.order(), &BigUint::from(71u64).pow(24));
        let g = f.canonical_generator();
        let q1 = f.order() - BigUint::one();
        assert!(g.pow_biguint(&q1).is_one());
        assert_eq!(g.multiplicative_order(), q1);
    }

    #[test]
    fn generator_order_exact_small_fields() {
        for (p, k) in [(2u64, 4u32), (13, 2), (3, 3), (71, 2), (547, 1)] {
            let f = make_field(p, k).unwrap();
            let g = f.canonical_generator();
            let q1 = f.order() - BigUint::one();
            assert_eq!(g.multiplicative_order(), q1, "generator order in {f:?}");
        }
    }

    #[test]
    fn frobenius_is_automorphism() {
        let f = make_field(13, 2).unwrap();
        for a in [f.decode(5), f.decode(17), f.decode(100)] {
            for b in [f.decode(3), f.decode(29), f.decode(168)] {
                assert_eq!(
                    a.add(&b).frobenius(),
                    a.frobenius().add(&b.frobenius())
                );
                assert_eq!(
                    a.mul(&b).frobenius(),
                    a.frobenius().mul(&b.frobenius())
                );
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = make_field(71, 2).unwrap();
        for n in [1u64, 5, 70, 71, 100, 5040] {
            let x = f.decode(n);
            assert!(x.mul(&x.inv()).is_one());
        }
    }

    #[test]
    fn embedding_respects_operations() {
        let small = make_field(71, 2).unwrap();
        let big = make_field(71, 4).unwrap();
        let emb = Embedding::new(&small, &big).unwrap();
        let a = small.decode(123);
        let b = small.decode(4567);
        assert_eq!(emb.apply(&a.mul(&b)), emb.apply(&a).mul(&emb.apply(&b)));
        assert_eq!(emb.apply(&a.add(&b)), emb.apply(&a).add(&emb.apply(&b)));
        assert!(emb.apply(&a).in_subfield(2));
    }

    #[test]
    fn dlog_table_round_trip() {
        let f = make_field(13, 2).unwrap();
        let g = f.canonical_generator();
        for e in [0u64, 1, 5, 100, 167] {
            let x = g.pow_biguint(&BigUint::from(e));
            assert_eq!(f.dlog(&x).unwrap(), e % 168);
        }
        let huge = make_field(71, 24).unwrap();
        assert!(huge.dlog_table().is_err());
    }
}
