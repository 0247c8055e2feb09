//! Summation of convergent power series `Σ c_j x^j` with a relative stopping rule.

use crate::error::{Error, Result};

/// Guard added to the running sum in the relative-error test.
pub const NEGLIGIBLE_GUARD: f64 = 1e-10;
pub const DEFAULT_EPS: f64 = 1e-9;
pub const DEFAULT_MAX_TERMS: usize = 10_000_000;

/// A power series `Σ coef(j) x^j` to be summed at a fixed point.
#[derive(Clone, Copy)]
pub struct SeriesSpec<F> {
    pub coef: F,
    pub x: f64,
    pub eps: f64,
    pub max_terms: usize,
}

impl<F: Fn(usize) -> f64> SeriesSpec<F> {
    pub fn new(coef: F, x: f64) -> Self {
        SeriesSpec {
            coef,
            x,
            eps: DEFAULT_EPS,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }

    pub fn eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0) {
            return Err(Error::InvalidInput(format!("eps must be positive, got {}", self.eps)));
        }
        if self.max_terms == 0 {
            return Err(Error::InvalidInput("max_terms must be at least 1".into()));
        }
        if !self.x.is_finite() {
            return Err(Error::domain(format!("series point {} is not finite", self.x)));
        }
        Ok(())
    }
}

/// Value of a summed series together with the number of terms consumed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: usize,
}

/// Coefficient `[(2j-1)!!/(2j)!!]^2` of the series for `K(k)` in powers of `k^2`.
///
/// The double-factorial ratio is accumulated as `Π_{t=1..j} (1 - 0.5/t)`, so no
/// factorial is ever formed.
pub fn cei1_coefficient(j: usize) -> f64 {
    if j == 0 {
        return 1.0;
    }
    let mut prod = 1.0;
    for t in 1..=j {
        prod *= 1.0 - 0.5 / t as f64;
    }
    prod * prod
}

/// [`cei1_coefficient`] for sequential `j`, extending one running product
/// instead of restarting it on every call. Values are bit-identical to
/// `cei1_coefficient(j)`; out-of-order requests restart the product.
#[derive(Debug, Default)]
pub struct Cei1Coefficients {
    state: std::cell::Cell<(usize, f64)>,
}

impl Cei1Coefficients {
    pub fn new() -> Self {
        Cei1Coefficients {
            state: std::cell::Cell::new((0, 1.0)),
        }
    }

    pub fn get(&self, j: usize) -> f64 {
        let (mut t, mut prod) = self.state.get();
        if j < t {
            (t, prod) = (0, 1.0);
        }
        while t < j {
            t += 1;
            prod *= 1.0 - 0.5 / t as f64;
        }
        self.state.set((t, prod));
        prod * prod
    }
}

/// `|term| / (|sum| + 1e-10) < eps`.
pub fn is_negligible(term: f64, sum: f64, eps: f64) -> bool {
    term.abs() / (sum.abs() + NEGLIGIBLE_GUARD) < eps
}

/// Sums the series, returning only the value.
pub fn sum_series<F: Fn(usize) -> f64>(spec: &SeriesSpec<F>) -> Result<f64> {
    sum_series_counted(spec).map(|s| s.value)
}

/// Sums the series until the first negligible term (which is included in the
/// result).
///
/// Terms whose coefficient is exactly zero are structural gaps (odd terms of
/// `cos`, even terms of `arctan`) and are skipped by the stopping test.
pub fn sum_series_counted<F: Fn(usize) -> f64>(spec: &SeriesSpec<F>) -> Result<SeriesSum> {
    spec.validate()?;
    let mut sum = 0.0;
    let mut power = 1.0;
    for j in 0..spec.max_terms {
        let c = (spec.coef)(j);
        let term = c * power;
        sum += term;
        if c != 0.0 && is_negligible(term, sum, spec.eps) {
            return Ok(SeriesSum { value: sum, terms: j + 1 });
        }
        power *= spec.x;
    }
    Err(Error::NonConvergence {
        what: "series summation",
        steps: spec.max_terms,
        hint: None,
    })
}
