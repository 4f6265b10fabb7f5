//! Exact arithmetic in `F_p` and in extension towers over it.

pub mod ext;
pub mod linalg;
pub mod ops;
pub mod poly;
pub mod prime;

pub use ext::{generic_extension, FieldCtx, FieldElement, FieldKind};
pub use ops::FieldOps;
pub use poly::{Poly, PolyRing};
pub use prime::{fp_inv, is_prime, FpScalar, PrimeModulus};
