//! Exact evaluation of the sums and alternating sums of reciprocals of
//! generalized triangular numbers T_k(n) = C(n+k−1, k).
//!
//! Everything convergent here is an exact element of Q ⊕ Q·log 2, so the
//! library never rounds until a decimal rendering is requested, and every
//! identity can be confirmed by exact equality rather than tolerance:
//!
//! - [`combinatorics`]: T_k(n), binomials, harmonic numbers, and the
//!   integration constants C_j, each with two independent routes.
//! - [`series`]: closed forms, the order-lowering recursion, the
//!   power-series route, exact partial sums, and exact telescoping
//!   remainders.
//! - [`analysis`]: numeric checks of the master power-series identity at
//!   rational points with rigorous tail bounds, and Euler acceleration of
//!   the alternating series.
//! - [`verify`]: exhaustive identity sweeps producing machine-readable
//!   reports.
//! - [`exact`]: the scalar types underneath it all.

pub mod analysis;
pub mod combinatorics;
pub mod exact;
pub mod series;
pub mod verify;

pub use exact::{DecimalApprox, LogTwoLinear, RatInterval, Rational};
pub use series::{SeriesSpec, SeriesValue};
