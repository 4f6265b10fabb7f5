pub mod artin_schreier;
pub mod bench;
pub mod error;
pub mod field;
pub mod file;
pub mod kummer;
pub mod oracle;
pub mod tables;

pub use artin_schreier::{AsLevel, TowerSpec};
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElement, FieldKind, FieldOps, FpScalar, Poly, PolyRing, PrimeModulus};
pub use oracle::{Oracle, VerificationReport};
pub use tables::{MultTable, SparseRow, SparsityReport};
