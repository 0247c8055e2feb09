//! Complete elliptic integral of the first kind, K(k), by power series,
//! arithmetic-geometric mean, Gauss-Chebyshev and Gauss-Legendre quadrature,
//! together with the generic layers they are built from.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cei1;
pub mod error;
pub mod fixed_point;
pub mod oracles;
pub mod ortho_poly;
pub mod quadrature;
pub mod root_finding;
pub mod selftest;
pub mod series;

pub use cei1::{
    k_agm, k_from_m, k_gc, k_gl, k_series, Cei1Request, Diagnostics, Evaluation, Method,
};
pub use error::{Error, Result};
pub use fixed_point::{agm, euclid_dist, FixedPoint, FixedPointProblem};
pub use ortho_poly::{Family, OrthoRecurrence};
pub use quadrature::{QuadFamily, QuadratureRule};
pub use root_finding::{legendre_roots, NewtonProblem};
pub use selftest::{Check, Report, SelftestOptions};
pub use series::{sum_series, SeriesSpec, SeriesSum};
