//! Exact arithmetic: arbitrary-precision rationals, dense polynomials,
//! cyclotomic fields `Q(zeta_m)`, the quotient ring `Z[T]/(phi_{n,d})`,
//! Galois actions, relative norms and `(1 - zeta_p)`-divisibility.

pub mod cyclotomic;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod quotient;
pub mod ratfunc;

pub use cyclotomic::{
    cast_to_subfield, cyclotomic_poly, euler_phi, one_minus_zeta_divisions,
    rel_norm_to_subcyclotomic, CycElt, CycField, Valuation,
};
pub use field::{rat, rat_int, FieldElem};
pub use poly::{biguint_bits, IntPoly, Poly};
pub use quotient::{build_phi, QuotientRing};
pub use ratfunc::RatFunc;
