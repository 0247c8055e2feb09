//! Gauss-Chebyshev and Gauss-Legendre rules and parametric integrals
//! evaluated as inner products of weights with kernel samples.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::ops::Range;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::ortho_poly::legendre_derivative;
use crate::root_finding::legendre_roots;

/// Node count used by the elliptic-integral quadrature solvers.
pub const DEFAULT_NODES: usize = 50;

/// Largest order tried by the node-count estimators.
pub const MAX_ESTIMATED_ORDER: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadFamily {
    /// `∫_{-1}^{1} f(x) / √(1 - x²) dx`
    GaussChebyshev,
    /// `∫_{-1}^{1} f(x) dx`
    GaussLegendre,
}

type RuleCache = HashMap<(QuadFamily, usize), Arc<QuadratureRule>>;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub family: QuadFamily,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn new(family: QuadFamily, n: usize) -> Result<Self> {
        match family {
            QuadFamily::GaussChebyshev => Self::gauss_chebyshev(n),
            QuadFamily::GaussLegendre => Self::gauss_legendre(n),
        }
    }

    pub fn gauss_chebyshev(n: usize) -> Result<Self> {
        Ok(QuadratureRule {
            family: QuadFamily::GaussChebyshev,
            nodes: chebyshev_nodes(n)?,
            weights: chebyshev_weights(n)?,
        })
    }

    /// Nodes ascending.
    pub fn gauss_legendre(n: usize) -> Result<Self> {
        let nodes = legendre_roots(n)?;
        let weights = legendre_weights(&nodes, n)?;
        Ok(QuadratureRule {
            family: QuadFamily::GaussLegendre,
            nodes,
            weights,
        })
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    /// Shared copy of the rule from a process-wide cache.
    pub fn cached(family: QuadFamily, n: usize) -> Result<Arc<Self>> {
        static CACHE: OnceLock<RwLock<RuleCache>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(rule) = cache.read().unwrap_or_else(|e| e.into_inner()).get(&(family, n)) {
            return Ok(Arc::clone(rule));
        }
        let rule = Arc::new(Self::new(family, n)?);
        let mut map = cache.write().unwrap_or_else(|e| e.into_inner());
        Ok(Arc::clone(map.entry((family, n)).or_insert(rule)))
    }
}

/// `cos((2i - 1)π / 2n)` for `i = 1..=n` (descending).
pub fn chebyshev_nodes(n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    Ok((1..=n)
        .map(|i| ((2 * i - 1) as f64 * PI / (2 * n) as f64).cos())
        .collect())
}

pub fn chebyshev_weights(n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    Ok(vec![PI / n as f64; n])
}

/// `w_i = 2 / ((1 - x_i²) P'_n(x_i)²)`.
pub fn legendre_weights(roots: &[f64], n: usize) -> Result<Vec<f64>> {
    if roots.len() != n {
        return Err(Error::DimensionMismatch {
            left: roots.len(),
            right: n,
        });
    }
    roots
        .iter()
        .map(|&x| {
            if !(x.abs() < 1.0) {
                return Err(Error::domain(format!("Gauss-Legendre node {x} outside (-1, 1)")));
            }
            let d = legendre_derivative(x, n);
            Ok(2.0 / ((1.0 - x * x) * d * d))
        })
        .collect()
}

pub fn inner_product(w: &[f64], v: &[f64]) -> Result<f64> {
    if w.len() != v.len() {
        return Err(Error::DimensionMismatch {
            left: w.len(),
            right: v.len(),
        });
    }
    Ok(w.iter().zip(v).map(|(a, b)| a * b).sum())
}

/// Integrand `f(t, k)` of a parametric integral, with the range of `k` it
/// accepts.
#[derive(Clone)]
pub struct Kernel<F> {
    pub f: F,
    pub k_domain: Range<f64>,
}

impl<F: Fn(f64, f64) -> Result<f64>> Kernel<F> {
    /// A kernel accepting any finite `k`.
    pub fn new(f: F) -> Self {
        Kernel {
            f,
            k_domain: f64::NEG_INFINITY..f64::INFINITY,
        }
    }

    pub fn with_domain(f: F, k_domain: Range<f64>) -> Self {
        Kernel { f, k_domain }
    }

    pub fn eval(&self, t: f64, k: f64) -> Result<f64> {
        (self.f)(t, k)
    }

    fn check_k(&self, k: f64) -> Result<()> {
        if self.k_domain.contains(&k) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "parameter k = {k} outside [{}, {})",
                self.k_domain.start, self.k_domain.end
            )))
        }
    }
}

/// `∫_{-a}^{a} f(x, k) / √(a² - x²) dx` with an `n`-node Gauss-Chebyshev rule.
pub fn integrate_gc<F>(kernel: &Kernel<F>, k: f64, n: usize, a: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let rule = QuadratureRule::cached(QuadFamily::GaussChebyshev, n)?;
    integrate_gc_with(&rule, kernel, k, a)
}

pub fn integrate_gc_with<F>(rule: &QuadratureRule, kernel: &Kernel<F>, k: f64, a: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    if !(a > 0.0) {
        return Err(Error::domain(format!("half-width a must be positive, got {a}")));
    }
    kernel.check_k(k)?;
    let samples = rule
        .nodes
        .iter()
        .map(|&x| kernel.eval(a * x, k))
        .collect::<Result<Vec<_>>>()?;
    inner_product(&rule.weights, &samples)
}

/// `∫_a^b f(x, k) dx` with an `n`-node Gauss-Legendre rule.
pub fn integrate_gl<F>(kernel: &Kernel<F>, k: f64, n: usize, a: f64, b: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    if !(a < b) {
        return Err(Error::InvalidInterval { a, b });
    }
    let rule = QuadratureRule::cached(QuadFamily::GaussLegendre, n)?;
    integrate_gl_with(&rule, kernel, k, a, b)
}

pub fn integrate_gl_with<F>(
    rule: &QuadratureRule,
    kernel: &Kernel<F>,
    k: f64,
    a: f64,
    b: f64,
) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    if !(a < b) {
        return Err(Error::InvalidInterval { a, b });
    }
    kernel.check_k(k)?;
    let half = 0.5 * (b - a);
    let samples = rule
        .nodes
        .iter()
        .map(|&x| Ok(kernel.eval(0.5 * (b + a + (b - a) * x), k)? * half))
        .collect::<Result<Vec<_>>>()?;
    inner_product(&rule.weights, &samples)
}

/// Test integrands with a closed-form bound on every even derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKernel {
    /// `cos(kx)`: `|f^(2n)| ≤ k^{2n}`.
    Cos,
    /// `e^{kx}`: `|f^(2n)| ≤ k^{2n} e^k`.
    Exp,
}

/// Smallest Gauss-Chebyshev order whose error bound drops below `eps`, in the
/// tabulated convention `2π (k/2)^n / (2n)!` (times `e^k` for [`BoundKernel::Exp`]).
///
/// This is the convention of the published `(k, n)` table. It undercounts
/// the rigorous bound for `k > 2`; see [`estimate_n_gc_rigorous`].
pub fn estimate_n_gc(kernel: BoundKernel, k: f64, eps: f64) -> Result<usize> {
    first_order_below(kernel, k, eps, 1)
}

/// Smallest order with `2π k^{2n} / (2^{2n} (2n)!) < eps` (times `e^k` for the
/// exponential kernel), i.e. a guaranteed absolute error below `eps`.
pub fn estimate_n_gc_rigorous(kernel: BoundKernel, k: f64, eps: f64) -> Result<usize> {
    first_order_below(kernel, k, eps, 2)
}

fn first_order_below(kernel: BoundKernel, k: f64, eps: f64, power_per_order: u32) -> Result<usize> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::domain(format!("bound estimate needs k > 0, got {k}")));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidInput(format!("eps must be positive, got {eps}")));
    }
    let log_eps = eps.ln();
    let log_half_k = (0.5 * k).ln() * power_per_order as f64;
    // log of 2π (k/2)^{pn} / (2n)! [e^k], advanced one order at a time
    let mut log_bound = (2.0 * PI).ln()
        + match kernel {
            BoundKernel::Cos => 0.0,
            BoundKernel::Exp => k,
        };
    for n in 1..=MAX_ESTIMATED_ORDER {
        let two_n = (2 * n) as f64;
        log_bound += log_half_k - two_n.ln() - (two_n - 1.0).ln();
        if log_bound < log_eps {
            return Ok(n);
        }
    }
    Err(Error::NonConvergence {
        what: "Gauss-Chebyshev order estimate",
        steps: MAX_ESTIMATED_ORDER,
        hint: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn constant(_: f64, _: f64) -> Result<f64> {
        Ok(1.0)
    }

    #[test]
    fn chebyshev_rule() {
        assert_abs_diff_eq!(chebyshev_nodes(1).unwrap()[0], 0.0, epsilon = 1e-16);
        let n2 = chebyshev_nodes(2).unwrap();
        assert_abs_diff_eq!(n2[0], 0.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(n2[1], -(0.5f64.sqrt()), epsilon = 1e-15);
        assert_eq!(chebyshev_weights(1).unwrap(), vec![PI]);
        assert_eq!(chebyshev_weights(4).unwrap(), vec![PI / 4.0; 4]);
        let total: f64 = chebyshev_weights(50).unwrap().iter().sum();
        assert_abs_diff_eq!(total, PI, epsilon = 1e-12);
        assert!(matches!(chebyshev_nodes(0), Err(Error::InvalidOrder(0))));
        assert!(matches!(chebyshev_weights(0), Err(Error::InvalidOrder(0))));
    }

    #[test]
    fn chebyshev_nodes_are_roots_of_t4() {
        use crate::ortho_poly::{eval_recurrence, Family};
        let rec = Family::Chebyshev.recurrence();
        for x in chebyshev_nodes(4).unwrap() {
            assert!(eval_recurrence(x, 4, &rec).abs() < 1e-12);
        }
    }

    #[test]
    fn legendre_weights_small() {
        assert_eq!(legendre_weights(&[0.0], 1).unwrap(), vec![2.0]);
        let r = 1.0 / 3f64.sqrt();
        let w = legendre_weights(&[-r, r], 2).unwrap();
        assert_abs_diff_eq!(w[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(w[1], 1.0, epsilon = 1e-14);
        let rule = QuadratureRule::gauss_legendre(8).unwrap();
        assert_abs_diff_eq!(rule.weights.iter().sum::<f64>(), 2.0, epsilon = 1e-10);
        assert!(legendre_weights(&[1.0], 1).unwrap_err().is_domain());
    }

    #[test]
    fn inner_products() {
        assert_eq!(inner_product(&[1.0, 2.0], &[3.0, 4.0]).unwrap(), 11.0);
        assert_eq!(inner_product(&[1.0, 2.0], &[0.0, 0.0]).unwrap(), 0.0);
        let w = chebyshev_weights(5).unwrap();
        assert_abs_diff_eq!(inner_product(&w, &[1.0; 5]).unwrap(), PI, epsilon = 1e-12);
        assert!(matches!(inner_product(&[1.0], &[1.0, 2.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn gc_integrals() {
        let one = Kernel::new(constant);
        assert_abs_diff_eq!(integrate_gc(&one, 0.0, 8, 1.0).unwrap(), PI, epsilon = 1e-12);
        assert_abs_diff_eq!(integrate_gc(&one, 0.0, 8, 0.5).unwrap(), PI, epsilon = 1e-12);
        assert!(integrate_gc(&one, 0.0, 8, 0.0).unwrap_err().is_domain());
    }

    #[test]
    fn gl_integrals() {
        let cos_shift = Kernel::new(|x: f64, k: f64| Ok((x + k).cos()));
        assert_abs_diff_eq!(integrate_gl(&cos_shift, 0.0, 10, 0.0, PI / 2.0).unwrap(), 1.0, epsilon = 1e-12);
        let quad = Kernel::new(|x: f64, k: f64| Ok((x + k).powi(2) / 3.0));
        assert_abs_diff_eq!(integrate_gl(&quad, 1.0, 4, 0.0, 2.0).unwrap(), 26.0 / 9.0, epsilon = 1e-12);
        let exp = Kernel::new(|x: f64, k: f64| Ok((k * x).exp()));
        assert_abs_diff_eq!(integrate_gl(&exp, 1e-8, 10, 0.0, 1.0).unwrap(), 1.0, epsilon = 1e-7);
        assert!(matches!(
            integrate_gl(&exp, 1.0, 4, 1.0, 1.0),
            Err(Error::InvalidInterval { .. })
        ));
    }

    #[test]
    fn kernel_domain_is_enforced() {
        let k = Kernel::with_domain(constant, 0.0..1.0);
        assert!(integrate_gl(&k, 1.0, 4, 0.0, 1.0).unwrap_err().is_domain());
        assert!(integrate_gc(&k, -0.1, 4, 1.0).unwrap_err().is_domain());
        assert!(integrate_gc(&k, 0.5, 4, 1.0).is_ok());
    }

    #[test]
    fn kernel_errors_propagate() {
        let bad = Kernel::new(|_: f64, _: f64| Err(Error::domain("nope")));
        assert!(integrate_gl(&bad, 0.0, 3, 0.0, 1.0).unwrap_err().is_domain());
    }

    #[test]
    fn node_count_table_examples() {
        assert_eq!(estimate_n_gc(BoundKernel::Cos, 0.1, 1e-9).unwrap(), 4);
        assert_eq!(estimate_n_gc(BoundKernel::Exp, 10.0, 1e-9).unwrap(), 12);
        assert_eq!(estimate_n_gc(BoundKernel::Cos, 400.0, 1e-9).unwrap(), 28);
        assert!(estimate_n_gc(BoundKernel::Cos, 0.0, 1e-9).unwrap_err().is_domain());
        assert!(estimate_n_gc(BoundKernel::Cos, 1.0, 0.0).is_err());
    }

    #[test]
    fn order_estimate_overflow_guard() {
        let err = estimate_n_gc_rigorous(BoundKernel::Cos, 1e6, 1e-9).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
    }

    #[test]
    fn cache_is_bit_identical() {
        for n in [1, 2, 7, 50] {
            for family in [QuadFamily::GaussChebyshev, QuadFamily::GaussLegendre] {
                let fresh = QuadratureRule::new(family, n).unwrap();
                let cached = QuadratureRule::cached(family, n).unwrap();
                let again = QuadratureRule::cached(family, n).unwrap();
                assert_eq!(*cached, fresh);
                assert!(Arc::ptr_eq(&cached, &again));
            }
        }
    }
}
