//! Exact tools for checking total nonnegativity of Toeplitz and
//! Hurwitz-type matrices built from doubly infinite series.

pub mod cli;
pub mod error;
pub mod harness;
pub mod laurent;
pub mod matrices;
pub mod rational;
pub mod sfunc;
pub mod tnn;
pub mod transforms;

pub use error::{Error, Result};
pub use rational::Rational;
