//! Exact symbolic laboratory for a family of superintegrable planar quantum
//! Hamiltonians built around a deformed harmonic oscillator.
//!
//! Everything here is exact: coefficients are arbitrary-precision rationals or
//! sparse rational polynomials in the four model parameters `a`, `b`, `w`
//! (the oscillator frequency) and `l` (the sector deformation strength).
//! No floating point enters any computation or report.
//!
//! The crate is organized as four layers:
//!
//! * [`scalar`], [`weyl`], [`textfmt`]: a two-variable Weyl algebra with
//!   normal-ordered differential operators in `(t, u)`, their coefficient
//!   rings, and a line-oriented text format with exact round-tripping.
//! * [`catalog`]: the operator family itself (Hamiltonians `h_k`, integrals
//!   `x_k` and `y_2k`, the finite-sector Hamiltonian), hidden-algebra
//!   generators, orthogonal-polynomial eigenfunctions and closed-form spectra.
//! * [`flag`] and [`qes`]: polynomial flag spaces, exact matrix
//!   representations, graded spectra, and finite-sector characteristic
//!   polynomials with certified real-root isolation.
//! * [`jet`] and [`cartesian`]: truncated Taylor jets at exact rational
//!   points and the Cartesian form of the same operators, used to cross-check
//!   the algebraic catalog against an independent analytic route.
//!
//! With the default `parallel` feature the heavy composition and
//! certification loops run on rayon; results are bit-identical to the
//! sequential build because every reduction is an exact commutative merge.

pub mod cartesian;
pub mod catalog;
mod error;
pub mod flag;
pub mod grid;
pub mod jet;
pub mod linalg;
pub mod qes;
pub mod report;
pub mod scalar;
pub mod textfmt;
pub mod unipoly;
pub mod weyl;

pub use error::{Error, Result};
