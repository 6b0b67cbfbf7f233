//! The rational function field K(t), used to run coefficient arguments with a
//! symbolic parameter (e.g. the x-coordinate `c` in the residual torsion
//! test).

use super::field::FieldElem;
use super::poly::Poly;

/// A rational function num/den over a field, normalized so the denominator is
/// monic and gcd(num, den) = 1.
#[derive(Clone, Debug)]
pub struct RatFunc<K: FieldElem> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: FieldElem> RatFunc<K> {
    pub fn new(num: Poly<K>, den: Poly<K>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFunc { num, den };
        r.normalize();
        r
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        let one = p
            .coeffs
            .first()
            .map(|c| c.one_like())
            .map(Poly::constant)
            .unwrap_or_else(|| Poly::new(vec![]));
        if p.is_zero() {
            // Zero with no context: represent as 0/1 lazily; den fixed on use.
            return RatFunc {
                num: p,
                den: one,
            };
        }
        RatFunc { num: p, den: one }
    }

    /// The variable t over the given coefficient context.
    pub fn var(like: &K) -> Self {
        RatFunc {
            num: Poly::monomial(like.one_like(), 1),
            den: Poly::constant(like.one_like()),
        }
    }

    pub fn constant(c: K) -> Self {
        let one = Poly::constant(c.one_like());
        RatFunc {
            num: Poly::constant(c),
            den: one,
        }
    }

    pub fn numerator(&self) -> &Poly<K> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<K> {
        &self.den
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::constant(self.den.leading().unwrap().one_like());
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() > 0 {
            self.num = self.num.divrem(&g).0;
            self.den = self.den.divrem(&g).0;
        }
        let lead_inv = self.den.leading().unwrap().inv();
        self.num = self.num.scale(&lead_inv);
        self.den = self.den.scale(&lead_inv);
    }
}

impl<K: FieldElem> PartialEq for RatFunc<K> {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl<K: FieldElem> FieldElem for RatFunc<K> {
    fn zero_like(&self) -> Self {
        let one = self.den.leading().unwrap().one_like();
        RatFunc {
            num: Poly::new(vec![]),
            den: Poly::constant(one),
        }
    }
    fn one_like(&self) -> Self {
        let one = self.den.leading().unwrap().one_like();
        RatFunc {
            num: Poly::constant(one.clone()),
            den: Poly::constant(one),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        RatFunc::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        RatFunc::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero rational function");
        RatFunc::new(self.den.clone(), self.num.clone())
    }
    fn characteristic(&self) -> u64 {
        self.den.leading().unwrap().characteristic()
    }

    fn from_i64_like(&self, v: i64) -> Self {
        let c = self.den.leading().unwrap().from_i64_like(v);
        RatFunc::constant(c)
    }

    /// n-th roots that are themselves rational functions: numerator and
    /// denominator must both admit polynomial n-th roots.
    fn nth_roots(&self, n: u64) -> Vec<Self> {
        if self.is_zero() {
            return vec![self.clone()];
        }
        let base = self.den.leading().unwrap();
        let mut out = Vec::new();
        let num_lead = self.num.leading().unwrap().clone();
        for lead_root in num_lead.nth_roots(n) {
            if let Some(num_root) = self.num.formal_nth_root(n, &lead_root) {
                if let Some(den_root) = self.den.formal_nth_root(n, &base.one_like()) {
                    let cand = RatFunc::new(num_root, den_root);
                    if cand.pow_u64(n) == *self && !out.contains(&cand) {
                        out.push(cand);
                    }
                }
            }
        }
        out
    }
}
