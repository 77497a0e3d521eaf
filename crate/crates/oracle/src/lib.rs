//! Reference computations for tests. Everything here is deliberately
//! written differently from the library: double-double accumulation,
//! Lanczos gamma, brute-force series, tanh-sinh quadrature of defining
//! integrals and direct polygamma sums.

pub mod dd;
pub mod gamma;
pub mod quad;
pub mod series;

pub use dd::Dd;
