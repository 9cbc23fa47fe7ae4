//! Prime fields, sparse linear algebra, forms on P1xP1 and P2, exterior bases.

pub mod exterior;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod tensor;
pub mod univariate;

pub use exterior::{binomial, ExteriorBasis};
pub use field::{PrimeField, Scalar, DEFAULT_PRIME, SECOND_PRIME};
pub use matrix::{echelon, kernel_basis, rank, Echelon, ExactMatrix, Rref, SparseVec};
pub use poly::{monomial_basis, Ambient, Degree, Monomial, MultiForm};
pub use tensor::{MultiplicationTensor, Sym2Index};
pub use univariate::UniPoly;
