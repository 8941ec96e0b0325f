//! Exact computations relating the Bergman fan of a matroid to its Orlik-Solomon algebra.
//!
//! The crate builds matroids ([`matroid`]), the integer exterior algebra and lattice
//! subgroups ([`exterior`], [`lattice`]), the fans `Σ(M)` and `Σ₀(M)` with their tropical
//! homology ([`fan`]), the Orlik-Solomon ideals ([`orlik_solomon`]), and a verification
//! battery comparing the two sides degree by degree ([`verify`]).

pub mod cli;
pub mod error;
pub mod exterior;
pub mod fan;
pub mod fixtures;
pub mod input;
pub mod lattice;
pub mod matroid;
pub mod orlik_solomon;
pub mod random;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
