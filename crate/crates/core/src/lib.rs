//! Arithmetic-function tables, Dirichlet convolution, summatory functions
//! and partial Dirichlet series, plus verifiers that test classical
//! asymptotic laws for summatory functions at finite `x`.
//!
//! The usual flow: sieve a table ([`funcs`]), combine tables with
//! [`convolve::dirichlet_convolve`], accumulate with [`sums`], then hand a
//! law from [`verify`] and a sum provider to [`verify::evaluate_law`].

pub mod catalog;
pub mod constants;
pub mod convolve;
pub mod error;
pub mod funcs;
pub mod presets;
mod quadrature;
pub mod report;
pub mod sums;
pub mod verify;

pub use error::{Error, Result};
