//! `(1 - zeta_n)`-torsion combinatorics and the x - T descent map over finite
//! fields containing all branch roots.
//!
//! Classes in `K^x / K^(x n)` are encoded as discrete-log exponents mod n, so
//! the ambient field must satisfy `n | q - 1` and stay under the dlog cap.

use crate::exactnum::FieldElem;
use crate::ffield::{roots, FqElt, FqField};
use crate::scurve::{CurveSpec, Pt};
use crate::Error;

/// Image of `[P - infinity]` in `ker(L^x/L^(x n) -> K^x/K^(x n))`: one
/// exponent class per branch root, summing to zero mod n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerClassVector {
    pub n: u64,
    pub entries: Vec<u64>,
}

impl KummerClassVector {
    pub fn norm_condition_holds(&self) -> bool {
        self.entries.iter().sum::<u64>() % self.n == 0
    }
}

/// The normal form of an element of `J[1 - zeta_n]` as residues summing to
/// zero mod n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneMinusZetaClass {
    pub n: u64,
    pub entries: Vec<u64>,
}

/// Normalize a raw coefficient vector on `[W_i - infinity]` into the unique
/// representative with entries summing to 0 mod n: subtract
/// `d^(-1) * (sum of entries)` from each coordinate (the kernel of the raw
/// representation is exactly the constant vectors).
pub fn normalize_class(raw: &[i64], n: u64) -> Result<OneMinusZetaClass, Error> {
    let d = raw.len() as u64;
    if d == 0 {
        return Err(Error::Domain("empty coefficient vector".into()));
    }
    if num::integer::gcd(n, d) != 1 {
        return Err(Error::Domain(format!("gcd(n, d) = gcd({n}, {d}) != 1")));
    }
    let n_i = n as i64;
    let sum: i64 = raw.iter().map(|&a| a.rem_euclid(n_i)).sum();
    let d_inv = if n == 1 {
        0
    } else {
        (1..n)
            .find(|&v| (v * (d % n)) % n == 1)
            .ok_or_else(|| Error::Internal("d must be invertible mod n".into()))?
    };
    let shift = (d_inv as i64 * sum).rem_euclid(n_i);
    let entries: Vec<u64> = raw
        .iter()
        .map(|&a| (a - shift).rem_euclid(n_i) as u64)
        .collect();
    debug_assert_eq!(entries.iter().sum::<u64>() % n, 0);
    Ok(OneMinusZetaClass { n, entries })
}

/// The branch constants of the factorization `f(x) = prod (x + alpha_i)`:
/// `alpha_i = -(root of f)`, sorted canonically. Fails unless f splits
/// completely over its own field.
pub fn branch_alphas(curve: &CurveSpec<FqElt>) -> Result<Vec<FqElt>, Error> {
    let f = curve.f();
    let roots = roots::roots_in_field(f, roots::DEFAULT_SEED);
    let total: usize = roots.iter().map(|(_, m)| m).sum();
    if total != curve.d() as usize {
        return Err(Error::Domain(
            "f must split completely over the base field".into(),
        ));
    }
    let mut alphas: Vec<FqElt> = roots.into_iter().map(|(r, _)| r.neg()).collect();
    alphas.sort();
    Ok(alphas)
}

/// The x - T image of `[P - infinity]`: entry i is the class of
/// `x_P + alpha_i` away from the branch locus; at `W_j` the entries come from
/// evaluating the displayed element
/// `(-alpha_j - T) + prod_{i != j} (-alpha_i - T)^(n-1)` componentwise.
pub fn x_minus_t_image(
    curve: &CurveSpec<FqElt>,
    p: &Pt<FqElt>,
) -> Result<KummerClassVector, Error> {
    let Pt::Affine(xp, yp) = p else {
        return Err(Error::Domain("the descent map is not defined at infinity".into()));
    };
    if !curve.is_on_curve(p) {
        return Err(Error::Domain("point is not on the curve".into()));
    }
    let n = curve.n();
    let field: &FqField = xp.field();
    let q1 = field.order() - num::BigUint::from(1u32);
    if !num::Zero::is_zero(&(&q1 % num::BigUint::from(n))) {
        return Err(Error::Domain(format!(
            "Kummer classes need n | q - 1 (n = {n})"
        )));
    }
    let alphas = branch_alphas(curve)?;
    let class = |v: &FqElt| -> Result<u64, Error> { Ok(field.dlog(v)? % n) };
    let entries = if !yp.is_zero() {
        alphas
            .iter()
            .map(|alpha| class(&xp.add(alpha)))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        // P = W_j with x_P = -alpha_j.
        let j = alphas
            .iter()
            .position(|alpha| xp.add(alpha).is_zero())
            .ok_or_else(|| Error::Internal("ramification point off the branch set".into()))?;
        let mut entries = Vec::with_capacity(alphas.len());
        for (i, alpha_i) in alphas.iter().enumerate() {
            if i == j {
                // product term: prod_{i != j} (alpha_j - alpha_i)^(n-1)
                let mut prod = field.one();
                for (k, alpha_k) in alphas.iter().enumerate() {
                    if k != j {
                        prod = prod.mul(&alphas[j].sub(alpha_k));
                    }
                }
                entries.push(class(&prod)? * (n - 1) % n);
            } else {
                entries.push(class(&alpha_i.sub(&alphas[j]))?);
            }
        }
        entries
    };
    let v = KummerClassVector { n, entries };
    if !v.norm_condition_holds() {
        return Err(Error::Internal(
            "x - T image violates the norm condition".into(),
        ));
    }
    Ok(v)
}

/// Kummer generators of the `(1 - zeta_n)^2`-division field: the multiset
/// `{alpha_i - alpha_j : i != j}` reduced modulo n-th powers (one canonical
/// representative per class), sorted.
pub fn kummer_generators_1mz_squared(
    n: u64,
    alphas: &[FqElt],
) -> Result<Vec<FqElt>, Error> {
    if alphas.len() <= 1 {
        return Ok(vec![]);
    }
    let field = alphas[0].field().clone();
    let mut seen_classes: Vec<u64> = Vec::new();
    let mut reps: Vec<FqElt> = Vec::new();
    let mut diffs: Vec<FqElt> = Vec::new();
    for (i, a) in alphas.iter().enumerate() {
        for (j, b) in alphas.iter().enumerate() {
            if i != j {
                diffs.push(a.sub(b));
            }
        }
    }
    diffs.sort();
    for d in diffs {
        if d.is_zero() {
            return Err(Error::Domain("branch constants must be distinct".into()));
        }
        let c = field.dlog(&d)? % n;
        if !seen_classes.contains(&c) {
            seen_classes.push(c);
            reps.push(d);
        }
    }
    Ok(reps)
}
