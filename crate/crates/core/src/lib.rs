//! Exact search and proof-step verification for isosceles perfect triangles.
//!
//! An isosceles triangle with rational sides, medians and area would give a
//! nontrivial square value of `4t^4 - 5t^2 s^2 + s^4`, which lifts to
//! `x^4 + 10x^2 y^2 + 9y^4`. This crate implements the geometry, the
//! parametrizations and the descent steps behind the nonexistence argument,
//! and exhaustive searches that emit verifiable certificates.

pub mod decimal;
pub mod descent;
pub mod exact;
pub mod exec;
pub mod parametrize;
pub mod quartic;
pub mod triangle;

pub use exact::{ExactInt, ExactRational};
pub use exec::Execution;
pub use quartic::{QuarticForm, SearchCertificate, SearchOptions, Solution};
