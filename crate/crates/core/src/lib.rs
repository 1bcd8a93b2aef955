//! Numerical laboratory for the Riemann Xi function, Dirichlet theta kernels,
//! Jensen positivity functionals and ultraspherical surrogate polynomials.
//!
//! The crate is organized around the objects it verifies:
//!
//! * [`specfun`] — Gamma, shifted factorials, Jacobi/ultraspherical
//!   polynomials and Bessel functions, with identity self-checks.
//! * [`characters`] — real primitive Dirichlet characters (Kronecker symbols
//!   of fundamental discriminants) and their theta series.
//! * [`kernels`] — the fast-decreasing even kernels whose Fourier cosine
//!   transforms are the Xi functions.
//! * [`transform`] — oscillation-aware composite Gauss–Legendre quadrature of
//!   those kernels, Xi evaluation and real-zero location.
//! * [`jensen`] — Jensen's positivity functionals by three independent routes
//!   and the finite-degree ultraspherical surrogate with its I1/I2 split.
//! * [`asymptotics`] — empirical verification of the polynomial-to-Bessel
//!   limits and growth bounds, with measured constants.
//! * [`report`] — deterministic JSON/CSV emission for all of the above.

pub mod asymptotics;
pub mod characters;
pub mod error;
pub mod extf;
pub mod jensen;
pub mod kernels;
pub mod report;
pub mod specfun;
pub mod transform;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
