//! Linear algebra over the finite field F_q: canonical forms, kernels,
//! subspace arithmetic and fiber products.

mod field;
mod matrix;
mod subspace;

pub use field::{default_modulus, FieldSpec, FqField, MAX_ORDER};
pub use matrix::{kernel_basis, pullback, FqMatrix};
pub use subspace::Subspace;
