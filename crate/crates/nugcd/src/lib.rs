//! Numerical GCD of univariate polynomials with inexact coefficients.
//!
//! Exact GCD computation is ill-posed: an arbitrarily small coefficient
//! perturbation generically collapses a nontrivial GCD to a constant. This
//! crate computes the numerical GCD within a tolerance instead — the exact
//! GCD of a nearby pair on the highest-codimension GCD stratum — via a
//! two-stage algorithm:
//!
//! 1. a Sylvester-matrix QR sweep over the index j = n, ..., 1, updating the
//!    triangular factor by column insertion and estimating the smallest
//!    singular value of each S_j by inverse iteration, to detect candidate
//!    degrees and extract initial cofactors;
//! 2. Gauss-Newton refinement of the quadratic system
//!    [h^H u; u*v; u*w] = [beta; p; q], which certifies the candidate when
//!    the residual clears the tolerance and yields a condition estimate
//!    from the final triangular factor.
//!
//! Entry point: [`uvgcd`] with a [`GcdConfig`]. The `bench` module holds the
//! benchmark generators, the polynomial expression parser, and the CSV
//! suite runner behind the `nugcd` CLI.

pub mod bench;
mod compensated;
mod error;
pub mod matrix;
pub mod poly;
pub mod refine;
pub mod subspace;
pub mod sylvester;

mod driver;

pub use driver::{uvgcd, verify_result, GcdConfig, GcdResult, VerifyReport};
pub use error::{Error, Result};
pub use poly::{pair_distance, Polynomial, PolynomialPair};
pub use refine::GcdTriplet;

pub type Complex64 = num_complex::Complex64;
