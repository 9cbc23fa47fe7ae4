//! Exact linear algebra over prime fields for syzygies of curves on P1xP1 and in P2:
//! Koszul strands, rational normal scrolls, pencil quadrics, K3 lattice certificates
//! and tautological class bookkeeping on the Hurwitz space.

pub mod algebra;
pub mod curvelab;
pub mod error;
pub mod hurcalc;
pub mod k3cert;
pub mod koszul;
pub mod quadrics;
pub mod scrolls;

pub use algebra::{
    Ambient, Degree, ExactMatrix, MultiplicationTensor, PrimeField, Scalar, DEFAULT_PRIME,
    SECOND_PRIME,
};
pub use curvelab::CurveModel;
pub use error::{Error, Result};
