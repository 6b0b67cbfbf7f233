//! Exact verification toolkit for torsion-point computations on superelliptic
//! Catalan curves `y^n = x^d + 1`.
//!
//! The crate recomputes, with no floating point anywhere, the concrete
//! evidence behind the classification of exceptional torsion points on these
//! curves: Jacobi-sum valuation criteria for torsion-field splitting,
//! principal-divisor audits over finite reductions, and exact certificates
//! for the exceptional orbits on `C_{2,5}` and `C_{4,3}`.
//!
//! Module map:
//! - [`exactnum`]: rationals, polynomials, cyclotomic fields, `Z[T]/(phi_{n,d})`
//! - [`ffield`]: canonical finite fields, roots, factorization, dlog tables
//! - [`charjac`]: characters, Jacobi sums, the eta families, split levels
//! - [`scurve`]: superelliptic curves, Riemann-Roch bases, principality
//! - [`ecell`]: genus-1 support (Weierstrass models, division polynomials)
//! - [`descent`]: `(1 - zeta_n)`-torsion normal forms and the x - T map
//! - [`gaps`]: numerical semigroups, Weierstrass weights, Castelnuovo-Severi
//! - [`audit`]: the end-to-end curve audits and exceptional-orbit certificates

pub mod audit;
pub mod charjac;
pub mod descent;
pub mod ecell;
pub mod exactnum;
pub mod ffield;
pub mod gaps;
pub mod scurve;

pub use audit::{AuditPlan, AuditReport};
pub use charjac::SplitLevelReport;
pub use ecell::{EcPoint, WeierstrassCurve};
pub use exactnum::{CycElt, CycField, FieldElem, IntPoly, Poly, QuotientRing, Valuation};
pub use ffield::{make_field, FqElt, FqField};
pub use scurve::{CurveSpec, DivisorSpec, GroupRingElt, Pt};

/// Errors surfaced by fallible toolkit operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on the inputs does not hold.
    #[error("domain error: {0}")]
    Domain(String),
    /// An internal consistency check failed; indicates a bug or a genuine
    /// mismatch with the claimed mathematics.
    #[error("internal check failed: {0}")]
    Internal(String),
}
