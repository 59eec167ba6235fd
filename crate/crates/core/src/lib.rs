//! Exact-arithmetic verification of conformal minimal immersions of the
//! two-sphere into the complex Grassmannian `G(2, N)`.
//!
//! Maps are Hermitian projections whose entries are rational functions of a
//! chart coordinate `z` and its formal conjugate `zb`. Everything from the
//! metric to the parallelism residuals is computed without rounding.

// Matrix code reads best with explicit index loops.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod ambient;
pub mod catalog;
pub mod dsl;
pub mod error;
pub mod invariants;
pub mod pointwise;
pub mod sequences;

pub use algebra::{poly_gcd, BiPoly, GaussianRational, RationalFunction};
pub use ambient::{MatRF, VecRF, WeightedSpace};
pub use error::{Error, Result};
pub use invariants::{geometry_report, geometry_report_with, GeometryReport, Invariant, ReportOptions};
pub use sequences::{BundleMap, IsotropyOrder, KahlerFlag};
