//! Genus-1 support: short Weierstrass models, the affine group law, division
//! polynomials, torsion enumeration over extensions, and conversion of the
//! genus-1 superelliptic shapes `y^2 = cubic` and `y^3 = quadratic` to short
//! Weierstrass form.

use crate::exactnum::{FieldElem, Poly};
use crate::ffield::{make_field, roots, Embedding, FqElt};
use crate::scurve::{CurveSpec, Pt};
use crate::Error;

/// `y^2 = x^3 + a x + b` with nonzero discriminant.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve<K: FieldElem> {
    pub a: K,
    pub b: K,
}

/// A point of the Weierstrass model.
#[derive(Clone, Debug, PartialEq)]
pub enum EcPoint<K: FieldElem> {
    Identity,
    Affine(K, K),
}

impl<K: FieldElem> WeierstrassCurve<K> {
    pub fn new(a: K, b: K) -> Result<Self, Error> {
        let p = a.characteristic();
        if p == 2 || p == 3 {
            return Err(Error::Domain(
                "short Weierstrass form needs characteristic away from 6".into(),
            ));
        }
        let four = a.from_i64_like(4);
        let twenty_seven = a.from_i64_like(27);
        let disc = four
            .mul(&a.pow_u64(3))
            .add(&twenty_seven.mul(&b.pow_u64(2)));
        if disc.is_zero() {
            return Err(Error::Domain("singular cubic: 4a^3 + 27b^2 = 0".into()));
        }
        Ok(WeierstrassCurve { a, b })
    }

    /// x^3 + a x + b.
    pub fn rhs_poly(&self) -> Poly<K> {
        Poly::new(vec![
            self.b.clone(),
            self.a.clone(),
            self.a.zero_like(),
            self.a.one_like(),
        ])
    }

    pub fn is_on_curve(&self, p: &EcPoint<K>) -> bool {
        match p {
            EcPoint::Identity => true,
            EcPoint::Affine(x, y) => y.mul(y) == self.rhs_poly().eval(x),
        }
    }

    pub fn neg(&self, p: &EcPoint<K>) -> EcPoint<K> {
        match p {
            EcPoint::Identity => EcPoint::Identity,
            EcPoint::Affine(x, y) => EcPoint::Affine(x.clone(), y.neg()),
        }
    }

    pub fn add(&self, p: &EcPoint<K>, q: &EcPoint<K>) -> EcPoint<K> {
        match (p, q) {
            (EcPoint::Identity, _) => q.clone(),
            (_, EcPoint::Identity) => p.clone(),
            (EcPoint::Affine(x1, y1), EcPoint::Affine(x2, y2)) => {
                if x1 == x2 && y1.add(y2).is_zero() {
                    return EcPoint::Identity;
                }
                let lambda = if x1 == x2 {
                    // tangent: (3x^2 + a) / (2y)
                    let num = x1
                        .mul(x1)
                        .mul(&x1.from_i64_like(3))
                        .add(&self.a);
                    let den = y1.mul(&y1.from_i64_like(2));
                    num.mul(&den.inv())
                } else {
                    y2.sub(y1).mul(&x2.sub(x1).inv())
                };
                let x3 = lambda.mul(&lambda).sub(x1).sub(x2);
                let y3 = lambda.mul(&x1.sub(&x3)).sub(y1);
                EcPoint::Affine(x3, y3)
            }
        }
    }

    pub fn scalar_mul(&self, mut k: u64, p: &EcPoint<K>) -> EcPoint<K> {
        let mut acc = EcPoint::Identity;
        let mut base = p.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Division polynomials
// ---------------------------------------------------------------------------

/// Element of K[x][y]/(y^2 - F): a + b*y.
#[derive(Clone, Debug, PartialEq)]
struct YElt<K: FieldElem> {
    a: Poly<K>,
    b: Poly<K>,
}

impl<K: FieldElem> YElt<K> {
    fn x_only(p: Poly<K>) -> Self {
        YElt { a: p, b: Poly::zero() }
    }

    fn y_times(p: Poly<K>) -> Self {
        YElt { a: Poly::zero(), b: p }
    }

    fn mul(&self, rhs: &Self, f: &Poly<K>) -> Self {
        // (a1 + b1 y)(a2 + b2 y) = a1a2 + b1b2 F + (a1b2 + a2b1) y
        YElt {
            a: self.a.mul(&rhs.a).add(&self.b.mul(&rhs.b).mul(f)),
            b: self.a.mul(&rhs.b).add(&rhs.a.mul(&self.b)),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        YElt {
            a: self.a.sub(&rhs.a),
            b: self.b.sub(&rhs.b),
        }
    }

    /// Exact division by 2y: (a + b y)/(2y) = b/2 + (a/F)(y/2); requires
    /// F | a.
    fn div_2y(&self, f: &Poly<K>, half: &K) -> Self {
        let b_part = self.b.scale(half);
        let a_part = if self.a.is_zero() {
            Poly::zero()
        } else {
            let (q, r) = self.a.divrem(f);
            assert!(r.is_zero(), "division polynomial recurrence broke");
            q.scale(half)
        };
        YElt { a: b_part, b: a_part }
    }
}

/// The m-th division polynomial in x-only normal form: its roots are exactly
/// the x-coordinates of the nontrivial m-torsion (for even m the 2-torsion
/// factor `x^3 + ax + b` is included).
pub fn division_poly<K: FieldElem>(curve: &WeierstrassCurve<K>, m: u64) -> Result<Poly<K>, Error> {
    let p = curve.a.characteristic();
    if p != 0 && (2 * m) % p == 0 {
        return Err(Error::Domain(format!(
            "division polynomial needs characteristic away from 2m = {}",
            2 * m
        )));
    }
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let f = curve.rhs_poly();
    let psi = psi_table(curve, m as usize, &f);
    let pm = &psi[m as usize];
    if m % 2 == 1 {
        debug_assert!(pm.b.is_zero());
        Ok(pm.a.clone())
    } else {
        debug_assert!(pm.a.is_zero());
        Ok(pm.b.mul(&f))
    }
}

fn psi_table<K: FieldElem>(
    curve: &WeierstrassCurve<K>,
    m: usize,
    f: &Poly<K>,
) -> Vec<YElt<K>> {
    let one = curve.a.one_like();
    let zero = curve.a.zero_like();
    let half = one.from_i64_like(2).inv();
    let a = &curve.a;
    let b = &curve.b;
    let mut psi: Vec<YElt<K>> = Vec::with_capacity(m.max(5) + 1);
    psi.push(YElt::x_only(Poly::zero())); // psi_0 = 0
    psi.push(YElt::x_only(Poly::constant(one.clone()))); // psi_1 = 1
    psi.push(YElt::y_times(Poly::constant(one.from_i64_like(2)))); // psi_2 = 2y
    // psi_3 = 3x^4 + 6a x^2 + 12b x - a^2
    psi.push(YElt::x_only(Poly::new(vec![
        a.mul(a).neg(),
        b.mul(&one.from_i64_like(12)),
        a.mul(&one.from_i64_like(6)),
        zero.clone(),
        one.from_i64_like(3),
    ])));
    // psi_4 = 4y (x^6 + 5a x^4 + 20b x^3 - 5a^2 x^2 - 4ab x - 8b^2 - a^3)
    psi.push(YElt::y_times(
        Poly::new(vec![
            b.mul(b)
                .mul(&one.from_i64_like(-8))
                .sub(&a.pow_u64(3)),
            a.mul(b).mul(&one.from_i64_like(-4)),
            a.mul(a).mul(&one.from_i64_like(-5)),
            b.mul(&one.from_i64_like(20)),
            a.mul(&one.from_i64_like(5)),
            zero,
            one.clone(),
        ])
        .scale(&one.from_i64_like(4)),
    ));
    for i in 5..=m {
        let k = i / 2;
        let next = if i % 2 == 1 {
            // psi_{2k+1} = psi_{k+2} psi_k^3 - psi_{k-1} psi_{k+1}^3
            let t1 = psi[k + 2].mul(&psi[k].mul(&psi[k], f).mul(&psi[k], f), f);
            let t2 = psi[k - 1].mul(&psi[k + 1].mul(&psi[k + 1], f).mul(&psi[k + 1], f), f);
            t1.sub(&t2)
        } else {
            // psi_{2k} = psi_k (psi_{k+2} psi_{k-1}^2 - psi_{k-2} psi_{k+1}^2) / (2y)
            let t1 = psi[k + 2].mul(&psi[k - 1].mul(&psi[k - 1], f), f);
            let t2 = psi[k - 2].mul(&psi[k + 1].mul(&psi[k + 1], f), f);
            psi[k].mul(&t1.sub(&t2), f).div_2y(f, &half)
        };
        psi.push(next);
    }
    psi.truncate(m + 1);
    psi
}

// ---------------------------------------------------------------------------
// Torsion enumeration over extensions
// ---------------------------------------------------------------------------

/// All m-torsion points with coordinates in `F_{q^t}` for some
/// `t <= max_ext_degree`, each geometric point exactly once, in the canonical
/// field of its minimal degree. The identity is implicit (not returned).
/// Every point is re-verified by a group-law scalar multiplication.
pub fn torsion_points(
    curve: &WeierstrassCurve<FqElt>,
    m: u64,
    max_ext_degree: u32,
    seed: u64,
) -> Result<Vec<EcPoint<FqElt>>, Error> {
    let base = curve.a.field().clone();
    let dp = division_poly(curve, m)?;
    let mut out = Vec::new();
    let xroots = roots::roots_by_minimal_field(&dp, max_ext_degree, seed)?;
    for (x0, _) in xroots {
        let xfield = x0.field().clone();
        let rel = xfield.k() / base.k();
        let emb = Embedding::new(&base, &xfield)?;
        let curve_up = WeierstrassCurve {
            a: emb.apply(&curve.a),
            b: emb.apply(&curve.b),
        };
        let v = curve_up.rhs_poly().eval(&x0);
        if v.is_zero() {
            push_checked(&curve_up, EcPoint::Affine(x0, v), m, &mut out);
            continue;
        }
        let ys = roots::all_eth_roots(&v, 2);
        if !ys.is_empty() {
            for y in ys {
                push_checked(&curve_up, EcPoint::Affine(x0.clone(), y), m, &mut out);
            }
        } else {
            // y lives one quadratic step up.
            if 2 * rel > max_ext_degree {
                continue;
            }
            let big = make_field(base.p(), 2 * xfield.k())?;
            let emb2 = Embedding::new(&xfield, &big)?;
            let embb = Embedding::new(&base, &big)?;
            let curve_big = WeierstrassCurve {
                a: embb.apply(&curve.a),
                b: embb.apply(&curve.b),
            };
            let x_up = emb2.apply(&x0);
            let v_up = emb2.apply(&v);
            let ys = roots::all_eth_roots(&v_up, 2);
            assert!(!ys.is_empty(), "square root must exist upstairs");
            for y in ys {
                push_checked(&curve_big, EcPoint::Affine(x_up.clone(), y), m, &mut out);
            }
        }
    }
    Ok(out)
}

fn push_checked(
    curve: &WeierstrassCurve<FqElt>,
    p: EcPoint<FqElt>,
    m: u64,
    out: &mut Vec<EcPoint<FqElt>>,
) {
    assert!(curve.is_on_curve(&p), "torsion candidate not on curve");
    assert!(
        curve.scalar_mul(m, &p) == EcPoint::Identity,
        "division-polynomial root is not m-torsion"
    );
    out.push(p);
}

// ---------------------------------------------------------------------------
// Genus-1 superelliptic shapes
// ---------------------------------------------------------------------------

/// Coordinate change between a genus-1 `CurveSpec` and its short Weierstrass
/// model, with infinity mapping to the identity.
#[derive(Clone, Debug)]
pub enum BirationalMap<K: FieldElem> {
    /// `y^2 = x^3 + c2 x^2 + c1 x + c0`: `(u, w) = (x + c2/3, y)`.
    ShiftX { shift: K },
    /// `y^3 = x^2 + c1 x + c0`: `(u, w) = (4y, 8x + 4c1)`.
    SquareCompletion { c1: K },
}

impl<K: FieldElem> BirationalMap<K> {
    pub fn forward(&self, p: &Pt<K>) -> EcPoint<K> {
        match p {
            Pt::Infinity => EcPoint::Identity,
            Pt::Affine(x, y) => match self {
                BirationalMap::ShiftX { shift } => {
                    EcPoint::Affine(x.add(shift), y.clone())
                }
                BirationalMap::SquareCompletion { c1 } => EcPoint::Affine(
                    y.mul(&y.from_i64_like(4)),
                    x.mul(&x.from_i64_like(8))
                        .add(&c1.mul(&c1.from_i64_like(4))),
                ),
            },
        }
    }

    pub fn inverse(&self, p: &EcPoint<K>) -> Pt<K> {
        match p {
            EcPoint::Identity => Pt::Infinity,
            EcPoint::Affine(u, w) => match self {
                BirationalMap::ShiftX { shift } => {
                    Pt::Affine(u.sub(shift), w.clone())
                }
                BirationalMap::SquareCompletion { c1 } => {
                    let eighth = u.from_i64_like(8).inv();
                    let quarter = u.from_i64_like(4).inv();
                    Pt::Affine(
                        w.sub(&c1.mul(&c1.from_i64_like(4))).mul(&eighth),
                        u.mul(&quarter),
                    )
                }
            },
        }
    }
}

/// Convert a genus-1 superelliptic curve (`(n, d)` equal to (2,3) or (3,2))
/// to short Weierstrass form. Characteristic must be away from 6.
pub fn to_weierstrass<K: FieldElem>(
    curve: &CurveSpec<K>,
) -> Result<(WeierstrassCurve<K>, BirationalMap<K>), Error> {
    let one = curve.f().leading().unwrap().one_like();
    let p = one.characteristic();
    if p == 2 || p == 3 {
        return Err(Error::Domain("characteristic must be away from 6".into()));
    }
    match (curve.n(), curve.d()) {
        (2, 3) => {
            // y^2 = x^3 + c2 x^2 + c1 x + c0: depress the cubic.
            let c2 = curve.f().coeff_or_zero(2, &one);
            let c1 = curve.f().coeff_or_zero(1, &one);
            let c0 = curve.f().coeff_or_zero(0, &one);
            let third = one.from_i64_like(3).inv();
            let shift = c2.mul(&third);
            // (u - s)^3 + c2 (u - s)^2 + c1 (u - s) + c0 with s = c2/3:
            // a = c1 - c2^2/3, b = c0 - c1 c2 / 3 + 2 c2^3 / 27.
            let a = c1.sub(&c2.mul(&c2).mul(&third));
            let b = c0
                .sub(&c1.mul(&c2).mul(&third))
                .add(&c2.pow_u64(3).mul(&one.from_i64_like(27).inv()).mul(&one.from_i64_like(2)));
            let w = WeierstrassCurve::new(a, b)?;
            let map = BirationalMap::ShiftX { shift };
            verify_map_on_samples(curve, &w, &map)?;
            Ok((w, map))
        }
        (3, 2) => {
            // y^3 = x^2 + c1 x + c0: complete the square, scale by 64:
            // (8x + 4c1)^2 = (4y)^3 + 16 c1^2 - 64 c0.
            let c1 = curve.f().coeff_or_zero(1, &one);
            let c0 = curve.f().coeff_or_zero(0, &one);
            let b = c1
                .mul(&c1)
                .mul(&one.from_i64_like(16))
                .sub(&c0.mul(&one.from_i64_like(64)));
            let w = WeierstrassCurve::new(one.zero_like(), b)?;
            let map = BirationalMap::SquareCompletion { c1 };
            verify_map_on_samples(curve, &w, &map)?;
            Ok((w, map))
        }
        (n, d) => Err(Error::Domain(format!(
            "to_weierstrass supports (2,3) and (3,2), got ({n},{d})"
        ))),
    }
}

/// Check the coordinate change on the ramification-free locus: forward maps
/// curve points onto the model and the round trip is the identity.
fn verify_map_on_samples<K: FieldElem>(
    curve: &CurveSpec<K>,
    w: &WeierstrassCurve<K>,
    map: &BirationalMap<K>,
) -> Result<(), Error> {
    let one = curve.f().leading().unwrap().one_like();
    let mut checked = 0;
    for i in 0..40i64 {
        let x = one.from_i64_like(i);
        let v = curve.f().eval(&x);
        for y in v.nth_roots(curve.n()) {
            let p = Pt::Affine(x.clone(), y);
            if !curve.is_on_curve(&p) {
                continue;
            }
            let q = map.forward(&p);
            if !w.is_on_curve(&q) {
                return Err(Error::Internal("forward map leaves the model".into()));
            }
            if map.inverse(&q) != p {
                return Err(Error::Internal("round trip is not the identity".into()));
            }
            checked += 1;
        }
        if checked >= 6 {
            break;
        }
    }
    if map.inverse(&map.forward(&Pt::Infinity)) != Pt::Infinity {
        return Err(Error::Internal("infinity must map to the identity".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_int;
    use num::BigUint;

    fn curve_q(a: i64, b: i64) -> WeierstrassCurve<num::rational::BigRational> {
        WeierstrassCurve::new(rat_int(a), rat_int(b)).unwrap()
    }

    #[test]
    fn group_law_sanity() {
        let e = curve_q(0, 1); // y^2 = x^3 + 1
        let p = EcPoint::Affine(rat_int(2), rat_int(3));
        assert!(e.is_on_curve(&p));
        assert_eq!(e.add(&p, &EcPoint::Identity), p);
        assert_eq!(e.add(&p, &e.neg(&p)), EcPoint::Identity);
        // associativity on a few combinations
        let q = EcPoint::Affine(rat_int(0), rat_int(1));
        let r = EcPoint::Affine(rat_int(-1), rat_int(0));
        let lhs = e.add(&e.add(&p, &q), &r);
        let rhs = e.add(&p, &e.add(&q, &r));
        assert_eq!(lhs, rhs);
        // (0,1) is a flex: 3*(0,1) = O.
        assert_eq!(e.scalar_mul(3, &q), EcPoint::Identity);
        assert_eq!(e.scalar_mul(2, &r), EcPoint::Identity);
    }

    #[test]
    fn division_poly_base_cases() {
        let e = curve_q(-7, 10);
        assert_eq!(division_poly(&e, 1).unwrap(), Poly::constant(rat_int(1)));
        // m = 3: 3x^4 + 6a x^2 + 12b x - a^2
        let p3 = division_poly(&e, 3).unwrap();
        let expect = Poly::new(vec![
            rat_int(-49),
            rat_int(120),
            rat_int(-42),
            rat_int(0),
            rat_int(3),
        ]);
        assert_eq!(p3, expect);
        // m = 2 normal form: the 2-torsion cubic itself.
        let p2 = division_poly(&e, 2).unwrap();
        assert_eq!(p2, e.rhs_poly().scale(&rat_int(2)));
    }

    #[test]
    fn division_poly_roots_are_torsion() {
        // Over F_31, roots of psi_m correspond to m-torsion x-coordinates.
        let f31 = make_field(31, 1).unwrap();
        let e = WeierstrassCurve::new(f31.from_i64(-7), f31.from_i64(10)).unwrap();
        for m in [3u64, 5, 6] {
            let dp = division_poly(&e, m).unwrap();
            for (x0, _) in roots::roots_in_field(&dp, roots::DEFAULT_SEED) {
                let v = e.rhs_poly().eval(&x0);
                for y in roots::all_eth_roots_or_zero(&v, 2) {
                    let p = EcPoint::Affine(x0.clone(), y);
                    assert!(e.is_on_curve(&p));
                    assert_eq!(e.scalar_mul(m, &p), EcPoint::Identity, "m = {m}");
                }
            }
        }
    }

    #[test]
    fn torsion_count_is_m_squared() {
        // y^2 = x^3 + 1 over F_71 is supersingular: full m-torsion lands in
        // F_{71^2} for m | 72.
        let f71 = make_field(71, 1).unwrap();
        let e = WeierstrassCurve::new(f71.zero(), f71.one()).unwrap();
        for m in [2u64, 3, 6] {
            let pts = torsion_points(&e, m, 24, roots::DEFAULT_SEED).unwrap();
            assert_eq!(pts.len() as u64 + 1, m * m, "m = {m}");
        }
    }

    #[test]
    fn to_weierstrass_shapes() {
        // y^2 = x^3 + 1 maps to itself.
        let f = Poly::from_i64(&rat_int(0), &[1, 0, 0, 1]);
        let c = CurveSpec::new(2, f).unwrap();
        let (w, _) = to_weierstrass(&c).unwrap();
        assert_eq!(w, curve_q(0, 1));
        // y^2 = x^3 + x + 1 maps to itself.
        let f = Poly::from_i64(&rat_int(0), &[1, 1, 0, 1]);
        let c = CurveSpec::new(2, f).unwrap();
        let (w, _) = to_weierstrass(&c).unwrap();
        assert_eq!(w, curve_q(1, 1));
        // y^3 = x^2 + x + 1 maps to w^2 = u^3 - 48 via (u, w) = (4y, 8x + 4).
        let f = Poly::from_i64(&rat_int(0), &[1, 1, 1]);
        let c = CurveSpec::new(3, f).unwrap();
        let (w, map) = to_weierstrass(&c).unwrap();
        assert_eq!(w, curve_q(0, -48));
        // Spot point: (0, 1) on the curve -> (4, 4) on the model.
        let img = map.forward(&Pt::Affine(rat_int(0), rat_int(1)));
        assert_eq!(img, EcPoint::Affine(rat_int(4), rat_int(4)));
        assert!(w.is_on_curve(&img));
        // unsupported shapes are rejected
        let f = Poly::from_i64(&rat_int(0), &[1, 0, 0, 0, 0, 1]);
        let c = CurveSpec::new(2, f).unwrap();
        assert!(to_weierstrass(&c).is_err());
    }

    #[test]
    fn birational_map_transports_torsion() {
        // m-torsion on the model matches principality of m(Q - inf) on the
        // superelliptic side.
        let f13 = make_field(13, 1).unwrap();
        let f = Poly::new(vec![f13.one(), f13.one(), f13.one()]); // x^2+x+1
        let c = CurveSpec::new(3, f).unwrap();
        let (w, map) = to_weierstrass(&c).unwrap();
        let pts = torsion_points(&w, 2, 2, roots::DEFAULT_SEED).unwrap();
        for p in pts {
            if p.clone() != EcPoint::Identity {
                // only test points staying over F_13
                let EcPoint::Affine(x, _) = &p else { continue };
                if x.field() != &f13 {
                    continue;
                }
                let q = map.inverse(&p);
                assert!(c.is_on_curve(&q));
                let div = crate::scurve::DivisorSpec::point_multiple(&q, 2).unwrap();
                assert!(crate::scurve::is_principal(&c, &div).unwrap().is_some());
            }
        }
    }

    #[test]
    fn torsion_field_of_471_supersingular() {
        // The audit baseline: y^2 = x^3 + 1 over F_71 with m = 18 has all
        // 324 points within F_{71^2} (and so within the degree-24 bound).
        let f71 = make_field(71, 1).unwrap();
        let e = WeierstrassCurve::new(f71.zero(), f71.one()).unwrap();
        let pts = torsion_points(&e, 18, 24, roots::DEFAULT_SEED).unwrap();
        assert_eq!(pts.len(), 18 * 18 - 1);
        for p in &pts {
            let EcPoint::Affine(x, _) = p else { unreachable!() };
            assert!(x.field().k() <= 2);
        }
        let _ = BigUint::from(0u32);
    }
}
