//! Exact arithmetic and exact linear algebra.

pub mod cyclo;
pub mod field;
pub mod finite;
pub mod matrix;
pub mod numtheory;
pub mod poly;
pub mod snf;

pub use field::{field_context, FieldCtx, FieldElem};
pub use matrix::{matrix_rank, FieldMatrix, IntMatrix};
pub use numtheory::euler_phi;
pub use poly::{cyclotomic_poly, IntPoly};
pub use snf::{smith_normal_form, SnfResult};
