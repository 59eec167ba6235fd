//! Exact scalar kernel: Gaussian rationals, bivariate polynomials, and
//! gcd-reduced rational functions in `z` and `zb`.

pub mod gaussian;
mod gcd;
mod modular;
pub mod poly;
pub mod rational;
pub mod univariate;

pub use gaussian::{rational_to_string, GaussianRational, ParseGaussianError};
pub use gcd::poly_gcd;
pub use poly::BiPoly;
pub use rational::RationalFunction;
