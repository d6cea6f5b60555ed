//! Exact verification of spectral-parameter solutions to the reflection
//! equation with a Hecke-type R-matrix.
//!
//! Layers, bottom up: exact scalars and Laurent polynomials ([`exact`]),
//! matrices and tensor legs ([`tensor`]), R-matrices ([`rmatrix`]), the
//! cyclotomic Hecke algebra ([`hecke`]), and the solutions themselves
//! ([`baxter`]). [`cli`] and [`report`] wrap them for the command line.

pub mod acceptance;
pub mod baxter;
pub mod cli;
pub mod exact;
pub mod hecke;
pub mod poly;
pub mod report;
pub mod rmatrix;
pub mod tensor;
