//! Newton iteration for polynomial roots, and the node set of Gauss-Legendre
//! rules.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fixed_point::{euclid_dist, FixedPointProblem};
use crate::ortho_poly::{legendre, legendre_derivative};

pub const DEFAULT_EPS: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 100;
pub const SLOPE_GUARD: f64 = 1e-10;

/// Root of `f(·, order) = 0` sought by Newton's method from `x0`.
///
/// `f` and `df` take the polynomial order as their second argument so a
/// whole family can be passed as plain functions.
#[derive(Clone, Copy)]
pub struct NewtonProblem<F, DF> {
    pub f: F,
    pub df: DF,
    pub x0: f64,
    pub order: usize,
    pub eps: f64,
    pub max_iter: usize,
    pub slope_guard: f64,
}

impl<F, DF> NewtonProblem<F, DF>
where
    F: Fn(f64, usize) -> f64,
    DF: Fn(f64, usize) -> f64,
{
    pub fn new(f: F, df: DF, x0: f64, order: usize) -> Self {
        NewtonProblem {
            f,
            df,
            x0,
            order,
            eps: DEFAULT_EPS,
            max_iter: DEFAULT_MAX_ITER,
            slope_guard: SLOPE_GUARD,
        }
    }

    pub fn eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }
}

/// One Newton step `x - f(x)/f'(x)`.
pub fn newton_update<F, DF>(p: &NewtonProblem<F, DF>, x: f64) -> Result<f64>
where
    F: Fn(f64, usize) -> f64,
    DF: Fn(f64, usize) -> f64,
{
    let slope = (p.df)(x, p.order);
    if !(slope.abs() >= p.slope_guard) {
        return Err(Error::ZeroSlope {
            x,
            slope,
            guard: p.slope_guard,
        });
    }
    Ok(x - (p.f)(x, p.order) / slope)
}

/// Newton's method run as a one-dimensional fixed-point iteration; stops at
/// the first step shorter than `eps`.
pub fn solve_root<F, DF>(p: &NewtonProblem<F, DF>) -> Result<f64>
where
    F: Fn(f64, usize) -> f64,
    DF: Fn(f64, usize) -> f64,
{
    FixedPointProblem::new(vec![p.x0], |x: &[f64]| Ok(vec![newton_update(p, x[0])?]))
        .with_dist(euclid_dist)
        .eps(p.eps)
        .max_iter(p.max_iter)
        .solve()
        .map(|fp| fp.point[0])
}

/// Initial guess for the `i`-th (zero-based) root of `P_n`, counted from the
/// largest.
pub fn legendre_seed(i: usize, n: usize) -> f64 {
    (PI * (i as f64 + 0.75) / (n as f64 + 0.25)).cos()
}

/// The `n` roots of `P_n`, ascending.
///
/// Fails if two seeds converge to the same root rather than silently
/// returning fewer nodes.
pub fn legendre_roots(n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let mut roots = (0..n)
        .map(|i| {
            let p = NewtonProblem::new(legendre, legendre_derivative, legendre_seed(i, n), n);
            solve_root(&p).map_err(|e| Error::Root {
                index: i + 1,
                order: n,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    roots.sort_by(f64::total_cmp);
    for (i, pair) in roots.windows(2).enumerate() {
        if pair[1] - pair[0] <= 1e-12 {
            return Err(Error::Root {
                index: i + 2,
                order: n,
                source: Box::new(Error::InvalidInput(format!(
                    "duplicate root {} from distinct seeds",
                    pair[1]
                ))),
            });
        }
    }
    if let Some(r) = roots.iter().find(|r| r.abs() >= 1.0) {
        return Err(Error::domain(format!("root {r} of P_{n} outside (-1, 1)")));
    }
    Ok(roots)
}
