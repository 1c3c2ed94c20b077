//! Exact computation with nilpotent Lie algebras, their coordinate groups and lattices.
//!
//! Everything is exact: rationals are arbitrary precision and no floating
//! point enters any decision.

pub mod automorphisms;
pub mod error;
pub mod forms;
pub mod group;
pub mod io;
pub mod lattice;
pub mod lie;
pub mod matrix;
pub mod par;
pub mod rational;
pub mod snf;
pub mod subspace;
pub mod symplectic;

pub use error::{Error, Result};
pub use rational::Rational;
