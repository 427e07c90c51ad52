//! Planted clique recovery in the semirandom model.
//!
//! The crate is organized bottom-up:
//!
//! - [`linear`]: bit-packed ±1 vectors and the signed adjacency matrix.
//! - [`instance`]: instance generation with adversarial `G[V \ S]`.
//! - [`solvers`]: degree, spectral, single-vertex and triple-sampling solvers.
//! - [`verifier`]: Monte Carlo checks of the ℓ¹ aggregate bounds.
//! - [`harness`]: deterministic sweeps writing CSV results.

pub mod error;
pub mod harness;
pub mod instance;
pub mod linear;
pub mod plot;
pub mod rng;
pub mod solvers;
pub mod verifier;

pub use error::{Error, Result};
pub use instance::{generate, AdversaryStrategy, Instance, InstanceParams};
pub use linear::{IndexSet, IntVector, SignedGraph, SignedVector, Triple};
