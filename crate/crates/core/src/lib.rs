//! Exact arithmetic on Jacobians of superelliptic curves y^n = f(x).
//!
//! The group law is geometric: an interpolation curve through the points of
//! two reduced divisors cuts the curve in the opposite of their sum, and a
//! second interpolation inverts it — the chord-and-tangent construction for
//! cubics, carried to arbitrary genus through bases adapted to the point at
//! infinity. Everything is cross-checked against Cantor's algorithm in the
//! hyperelliptic case and against group-order annihilation oracles.

pub mod algebra;
pub mod basis;
pub mod curve;
pub mod error;
pub mod jacobian;

pub use error::{Error, Result};
