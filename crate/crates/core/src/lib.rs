//! Exact analysis of two-qubit circuit depth through the monodromy polytope.
//!
//! The crate is organised bottom-up: [`su4`] handles unitary numerics and the
//! alcove invariant, [`polytope`] is an exact rational polytope engine,
//! [`monodromy`] produces the inequality systems, [`coverage`] builds the
//! depth sets, [`approx`] does fidelity-driven approximate compilation, and
//! [`circuits`] holds explicit realizations and the leakiness test.

pub mod alcove;
pub mod approx;
pub mod circuits;
pub mod coverage;
pub mod error;
pub mod gates;
pub mod monodromy;
pub mod polytope;
pub mod rational;
pub mod su4;

pub use error::{Error, Result};
