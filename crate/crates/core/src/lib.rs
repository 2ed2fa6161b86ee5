//! Exact-arithmetic toolkit for rational Diophantine tuples: verification and
//! structure classification, the Lasić triple parametrization, the one-parameter
//! sextuple family, the elliptic curve behind it, and batch sweeps.

pub mod curve;
pub mod error;
pub mod param;
pub mod poly;
pub mod rational;
pub mod record;
pub mod search;
pub mod tuple;

pub use error::{Error, Result};
pub use rational::Rational;
pub use record::Tag;
