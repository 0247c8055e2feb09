//! The complete elliptic integral of the first kind,
//!
//! ```text
//! K(k) = ∫_0^{π/2} du / √(1 - k² sin² u),   0 ≤ k < 1,
//! ```
//!
//! by four independent routes: the power series in `k²`, the
//! arithmetic-geometric mean, Gauss-Chebyshev quadrature after `t = sin u`,
//! and Gauss-Legendre quadrature of the trigonometric form.
//!
//! All solvers take the modulus `k`. Libraries that take the parameter
//! `m = k²` are matched by [`k_from_m`].

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fixed_point::agm_counted;
use crate::quadrature::{integrate_gc, integrate_gl, Kernel, DEFAULT_NODES};
use crate::series::{sum_series_counted, Cei1Coefficients, SeriesSpec};

pub const DEFAULT_EPS: f64 = 1e-9;
pub const DEFAULT_N: usize = DEFAULT_NODES;

/// Upper end of the modulus range on which the Gauss-Chebyshev kernel is
/// documented to be accurate (`√2/2`).
pub const GC_ACCURATE_BELOW: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Series,
    Agm,
    GaussChebyshev,
    GaussLegendre,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Series,
        Method::Agm,
        Method::GaussChebyshev,
        Method::GaussLegendre,
    ];

    /// Short name used on the command line and in output headers.
    pub fn name(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Agm => "agm",
            Method::GaussChebyshev => "gc",
            Method::GaussLegendre => "gl",
        }
    }

    pub fn is_quadrature(self) -> bool {
        matches!(self, Method::GaussChebyshev | Method::GaussLegendre)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "series" => Ok(Method::Series),
            "agm" => Ok(Method::Agm),
            "gc" | "gauss-chebyshev" => Ok(Method::GaussChebyshev),
            "gl" | "gauss-legendre" => Ok(Method::GaussLegendre),
            other => Err(Error::InvalidInput(format!(
                "unknown method '{other}' (expected series, agm, gc or gl)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cei1Request {
    pub k: f64,
    pub method: Method,
    /// Tolerance for the series and AGM methods.
    pub eps: f64,
    /// Node count for the quadrature methods.
    pub n: usize,
}

impl Cei1Request {
    pub fn new(k: f64, method: Method) -> Self {
        Cei1Request {
            k,
            method,
            eps: DEFAULT_EPS,
            n: DEFAULT_N,
        }
    }

    pub fn eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    /// The request for modulus `√m`.
    pub fn from_parameter(m: f64, method: Method) -> Result<Self> {
        if !(0.0..1.0).contains(&m) {
            return Err(Error::domain(format!("parameter m = {m} outside [0, 1)")));
        }
        Ok(Cei1Request::new(m.sqrt(), method))
    }

    pub fn evaluate(&self) -> Result<Evaluation> {
        check_modulus(self.k)?;
        let (value, diagnostics) = match self.method {
            Method::Series => {
                let s = series_sum(self.k, self.eps)?;
                (FRAC_PI_2 * s.value, Diagnostics::SeriesTerms(s.terms))
            }
            Method::Agm => {
                let (mean, iterations) = agm_counted(1.0, (1.0 - self.k * self.k).sqrt(), self.eps)?;
                (FRAC_PI_2 / mean, Diagnostics::AgmIterations(iterations))
            }
            Method::GaussChebyshev => (k_gc(self.k, self.n)?, Diagnostics::QuadratureNodes(self.n)),
            Method::GaussLegendre => (k_gl(self.k, self.n)?, Diagnostics::QuadratureNodes(self.n)),
        };
        Ok(Evaluation { value, diagnostics })
    }
}

/// Work a solver did to produce its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diagnostics {
    SeriesTerms(usize),
    AgmIterations(usize),
    QuadratureNodes(usize),
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostics::SeriesTerms(t) => write!(f, "terms={t}"),
            Diagnostics::AgmIterations(i) => write!(f, "iterations={i}"),
            Diagnostics::QuadratureNodes(n) => write!(f, "n={n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub diagnostics: Diagnostics,
}

fn check_modulus(k: f64) -> Result<()> {
    if (0.0..1.0).contains(&k) {
        Ok(())
    } else {
        Err(Error::domain(format!("modulus k = {k} outside [0, 1)")))
    }
}

/// `0.5 / √(1 - k²t²)`, the integrand against the Chebyshev weight.
pub fn ker_gc(t: f64, k: f64) -> Result<f64> {
    let u = k * t;
    let s = 1.0 - u * u;
    if !(s > 0.0) {
        return Err(Error::domain(format!("k·t = {u} gives a singular Chebyshev kernel")));
    }
    Ok(0.5 / s.sqrt())
}

/// `1 / √(1 - k² sin² t)`.
pub fn ker_gl(t: f64, k: f64) -> Result<f64> {
    let u = k * t.sin();
    let s = 1.0 - u * u;
    if !(s > 0.0) {
        return Err(Error::domain(format!("k·sin t = {u} gives a singular Legendre kernel")));
    }
    Ok(1.0 / s.sqrt())
}

fn series_sum(k: f64, eps: f64) -> Result<crate::series::SeriesSum> {
    let coefficients = Cei1Coefficients::new();
    sum_series_counted(&SeriesSpec::new(|j| coefficients.get(j), k * k).eps(eps)).map_err(|e| match e {
        Error::NonConvergence { what, steps, .. } => Error::NonConvergence {
            what,
            steps,
            hint: Some("k is too close to 1 for the series; the AGM method converges quadratically for every k < 1"),
        },
        other => other,
    })
}

/// `(π/2) Σ c_j k^{2j}`.
pub fn k_series(k: f64, eps: f64) -> Result<f64> {
    Cei1Request::new(k, Method::Series).eps(eps).evaluate().map(|e| e.value)
}

/// `(π/2) / AGM(1, √(1 - k²))`.
pub fn k_agm(k: f64, eps: f64) -> Result<f64> {
    Cei1Request::new(k, Method::Agm).eps(eps).evaluate().map(|e| e.value)
}

/// Gauss-Chebyshev with `n` nodes. Accurate for `k` below `√2/2`; larger
/// moduli up to 1 are accepted but need more nodes.
pub fn k_gc(k: f64, n: usize) -> Result<f64> {
    check_modulus(k)?;
    integrate_gc(&Kernel::with_domain(ker_gc, 0.0..1.0), k, n, 1.0)
}

/// Gauss-Legendre with `n` nodes on `[0, π/2]`.
pub fn k_gl(k: f64, n: usize) -> Result<f64> {
    check_modulus(k)?;
    integrate_gl(&Kernel::with_domain(ker_gl, 0.0..1.0), k, n, 0.0, FRAC_PI_2)
}

/// `K` as a function of the parameter `m = k²`.
pub fn k_from_m(m: f64, method: Method, eps: f64, n: usize) -> Result<f64> {
    Cei1Request::from_parameter(m, method)?
        .eps(eps)
        .n(n)
        .evaluate()
        .map(|e| e.value)
}

// reference values are the 7-decimal published ones, not π/2
#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn kernels() {
        assert_eq!(ker_gc(0.0, 0.9).unwrap(), 0.5);
        assert_abs_diff_eq!(ker_gc(1.0, 0.5).unwrap(), 0.5773503, epsilon = 1e-7);
        assert!(ker_gc(1.0, 1.0).unwrap_err().is_domain());
        assert_eq!(ker_gl(0.0, 0.7).unwrap(), 1.0);
        assert_abs_diff_eq!(ker_gl(FRAC_PI_2, 0.5).unwrap(), 1.1547005, epsilon = 1e-7);
        assert!(ker_gl(FRAC_PI_2, 1.0).unwrap_err().is_domain());
    }

    #[test]
    fn series_examples() {
        assert_abs_diff_eq!(k_series(0.0, 1e-9).unwrap(), 1.5707963, epsilon = 5e-8);
        assert_abs_diff_eq!(k_series(0.3, 1e-9).unwrap(), 1.6080486, epsilon = 5e-8);
        assert_abs_diff_eq!(k_series(0.5, 1e-9).unwrap(), 1.6857504, epsilon = 5e-8);
    }

    #[test]
    fn agm_examples() {
        assert_eq!(k_agm(0.0, 1e-9).unwrap(), FRAC_PI_2);
        assert_abs_diff_eq!(k_agm(0.1, 1e-9).unwrap(), 1.5747456, epsilon = 5e-8);
        assert_abs_diff_eq!(k_agm(0.4, 1e-9).unwrap(), 1.6399999, epsilon = 5e-8);
    }

    #[test]
    fn quadrature_examples() {
        assert_abs_diff_eq!(k_gc(0.0, 8).unwrap(), FRAC_PI_2, epsilon = 1e-12);
        assert_abs_diff_eq!(k_gc(0.3, 6).unwrap(), 1.6080486199305128, epsilon = 1e-9);
        assert_abs_diff_eq!(k_gc(0.5, 8).unwrap(), 1.685_750_354_812_596, epsilon = 1e-9);
        assert_abs_diff_eq!(k_gl(0.0, 4).unwrap(), FRAC_PI_2, epsilon = 1e-12);
        assert_abs_diff_eq!(k_gl(0.5, 50).unwrap(), 1.6857504, epsilon = 5e-8);
    }

    #[test]
    fn two_node_legendre_error_is_about_two_micro() {
        // the tabulated claim of 1e-9 does not hold; record the measured size
        let err = (k_gl(0.1, 2).unwrap() - k_series(0.1, 1e-12).unwrap()).abs();
        assert!(err > 1.7e-6 && err < 1.9e-6, "measured {err:e}");
    }

    #[test]
    fn parameter_convention() {
        assert_abs_diff_eq!(k_from_m(0.25, Method::Series, 1e-9, 50).unwrap(), 1.6857504, epsilon = 5e-8);
        assert_eq!(k_from_m(0.0, Method::Agm, 1e-9, 50).unwrap(), FRAC_PI_2);
        assert_abs_diff_eq!(k_from_m(0.09, Method::Series, 1e-9, 50).unwrap(), 1.6080486, epsilon = 5e-8);
        assert!(k_from_m(1.0, Method::Agm, 1e-9, 50).unwrap_err().is_domain());
        assert!(k_from_m(-0.1, Method::Agm, 1e-9, 50).unwrap_err().is_domain());
    }

    #[test]
    fn domain_is_half_open_unit_interval() {
        for method in Method::ALL {
            for k in [1.0, 1.5, -0.1, f64::NAN] {
                let err = Cei1Request::new(k, method).evaluate().unwrap_err();
                assert!(err.is_domain(), "{method} at {k}: {err}");
            }
        }
    }

    #[test]
    fn series_near_one_recommends_agm() {
        let err = k_series(0.999_999_99, 1e-9).unwrap_err();
        assert!(err.is_non_convergence());
        assert!(err.to_string().contains("AGM"));
        assert!(k_agm(0.999_999_99, 1e-9).is_ok());
    }

    #[test]
    fn diagnostics_are_reported() {
        let e = Cei1Request::new(0.5, Method::Agm).evaluate().unwrap();
        assert!(matches!(e.diagnostics, Diagnostics::AgmIterations(i) if i > 0 && i < 10));
        let e = Cei1Request::new(0.5, Method::Series).evaluate().unwrap();
        assert!(matches!(e.diagnostics, Diagnostics::SeriesTerms(t) if t > 5));
        let e = Cei1Request::new(0.5, Method::GaussLegendre).n(12).evaluate().unwrap();
        assert_eq!(e.diagnostics, Diagnostics::QuadratureNodes(12));
        assert_eq!(e.diagnostics.to_string(), "n=12");
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("simpson".parse::<Method>().is_err());
    }
}
