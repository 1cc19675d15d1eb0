//! Algebraic Jacobi functions `𝒥_l^{m,q}(x)`, the twelve ladder operators that
//! move between them, and checks that the whole construction realizes a
//! unitary representation of `su(2,2)`.
//!
//! * [`indices`]: exact labels and the unitary range
//! * [`jacobi`]: numerical evaluation of the functions
//! * [`operators`]: algebraic generator action, commutators, Casimirs
//! * [`analytic`]: differential realizations of the generators
//! * [`quadrature`]: orthonormality and spectral expansion on `(-1, 1)`
//! * [`verify`]: the verification suites behind the `ajf verify` command

pub mod analytic;
pub mod cli;
pub mod display;
pub mod error;
pub mod half;
pub mod indices;
pub mod jacobi;
pub mod operators;
pub mod quadrature;
pub mod verify;

pub use error::{Error, Result};
pub use half::HalfInt;
pub use indices::{ClassicalIndex, IndexTriple};
pub use jacobi::{ajf, ajf_eval, EvalPoint};
pub use operators::{Family, Generator, StateVector, Step};
