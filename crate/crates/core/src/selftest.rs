//! Verification suite behind the `selftest` command: reference tables,
//! cross-method agreement, rule invariants and closed-form oracles.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::cei1::{k_agm, k_gc, k_gl, k_series, DEFAULT_EPS, DEFAULT_N};
use crate::error::Result;
use crate::fixed_point::agm;
use crate::oracles::{bessel_j0, closed_form_integral, product_polynomial, OracleCase, ERRATA};
use crate::ortho_poly::{eval_recurrence, eval_recurrence_derivative, legendre, Family};
use crate::quadrature::{
    chebyshev_weights, estimate_n_gc, integrate_gc, integrate_gl, BoundKernel, Kernel,
    QuadratureRule,
};
use crate::root_finding::{legendre_roots, solve_root, NewtonProblem};
use crate::series::{cei1_coefficient, sum_series, SeriesSpec};

/// Published K(k) values, 7 decimals, for k = 0, 0.1, ..., 0.5.
#[allow(clippy::approx_constant)]
pub const TABLE1: [(f64, f64); 6] = [
    (0.0, 1.5707963),
    (0.1, 1.5747456),
    (0.2, 1.5868678),
    (0.3, 1.6080486),
    (0.4, 1.6399999),
    (0.5, 1.6857504),
];

/// Gauss-Chebyshev orders claimed to reach 1e-9 on K(k).
pub const TABLE2_GC: [(f64, usize); 5] = [(0.1, 4), (0.2, 5), (0.3, 6), (0.4, 7), (0.5, 8)];

/// Published node-count estimates at eps = 1e-9.
pub const N_TABLE: [(BoundKernel, f64, usize); 18] = [
    (BoundKernel::Cos, 0.1, 4),
    (BoundKernel::Cos, 0.5, 6),
    (BoundKernel::Cos, 1.5, 7),
    (BoundKernel::Cos, 5.0, 8),
    (BoundKernel::Cos, 10.0, 10),
    (BoundKernel::Cos, 50.0, 14),
    (BoundKernel::Cos, 100.0, 18),
    (BoundKernel::Cos, 200.0, 22),
    (BoundKernel::Cos, 400.0, 28),
    (BoundKernel::Exp, 0.1, 5),
    (BoundKernel::Exp, 0.5, 6),
    (BoundKernel::Exp, 1.5, 7),
    (BoundKernel::Exp, 5.0, 9),
    (BoundKernel::Exp, 10.0, 12),
    (BoundKernel::Exp, 50.0, 26),
    (BoundKernel::Exp, 100.0, 42),
    (BoundKernel::Exp, 200.0, 69),
    (BoundKernel::Exp, 400.0, 117),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelftestOptions {
    /// Added to every computed K(k) before comparison. Non-zero only when
    /// exercising the failure path.
    pub perturbation: f64,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions { perturbation: 0.0 }
    }
}

/// One asserted comparison: the worst error seen against its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn within(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            measured,
            tolerance,
            passed: measured < tolerance,
        }
    }

    /// Count of mismatches, passing only at zero.
    fn exact(name: impl Into<String>, mismatches: usize) -> Self {
        Check {
            name: name.into(),
            measured: mismatches as f64,
            tolerance: 0.0,
            passed: mismatches == 0,
        }
    }
}

/// A reported value that is deliberately not asserted.
#[derive(Debug, Clone, PartialEq)]
pub struct Note {
    pub name: String,
    pub text: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
    pub notes: Vec<Note>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }
}

type Solver = fn(f64) -> Result<f64>;
type Computation = Box<dyn Fn() -> Result<f64>>;
type Coefficients = fn(usize) -> f64;

/// Absolute error, infinite when the computation failed.
fn abs_err(got: Result<f64>, want: f64) -> f64 {
    match got {
        Ok(v) if v.is_finite() => (v - want).abs(),
        _ => f64::INFINITY,
    }
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |m, e| if e.is_nan() || e > m { e } else { m })
}

pub fn run(opts: &SelftestOptions) -> Report {
    let mut report = Report::default();
    table1(&mut report, opts.perturbation);
    table2(&mut report);
    n_table(&mut report);
    cross_method(&mut report);
    gl_exactness(&mut report);
    rule_invariants(&mut report);
    ortho_suite(&mut report);
    agm_identities(&mut report);
    oracle_suite(&mut report);
    report
}

fn table1(report: &mut Report, bump: f64) {
    let solvers: [(&str, Solver); 4] = [
        ("series", |k| k_series(k, DEFAULT_EPS)),
        ("agm", |k| k_agm(k, DEFAULT_EPS)),
        ("gc", |k| k_gc(k, DEFAULT_N)),
        ("gl", |k| k_gl(k, DEFAULT_N)),
    ];
    for (name, solve) in solvers {
        let err = max_of(
            TABLE1
                .iter()
                .map(|&(k, want)| abs_err(solve(k).map(|v| v + bump), want)),
        );
        report.push(Check::within(format!("table1/{name}"), err, 5e-8));
    }
}

fn table2(report: &mut Report) {
    let err = max_of(
        TABLE2_GC
            .iter()
            .map(|&(k, n)| match k_series(k, DEFAULT_EPS) {
                Ok(reference) => abs_err(k_gc(k, n), reference),
                Err(_) => f64::INFINITY,
            }),
    );
    report.push(Check::within("table2/gc-orders", err, 1e-9));

    let gl2 = match k_series(0.1, DEFAULT_EPS) {
        Ok(reference) => abs_err(k_gl(0.1, 2), reference),
        Err(_) => f64::INFINITY,
    };
    report.push(Check::within("table2/gl-two-nodes", gl2, 1e-6));
    report.notes.push(Note {
        name: "table2/gl-two-nodes".into(),
        text: format!("|gl(0.1, 2) - series(0.1)| = {gl2:.3e}; tabulated as below 1e-9"),
    });
}

fn n_table(report: &mut Report) {
    let misses = N_TABLE
        .iter()
        .filter(|&&(kernel, k, n)| estimate_n_gc(kernel, k, 1e-9).ok() != Some(n))
        .count();
    report.push(Check::exact("n-table/estimate", misses));
}

fn cross_method(report: &mut Report) {
    let mut worst = 0.0_f64;
    for i in 0..=18 {
        let k = 0.05 * i as f64;
        let mut values = vec![
            k_series(k, DEFAULT_EPS),
            k_agm(k, DEFAULT_EPS),
            k_gl(k, DEFAULT_N),
        ];
        if k <= 0.70 + 1e-12 {
            values.push(k_gc(k, DEFAULT_N));
        }
        let values: Vec<f64> = values
            .into_iter()
            .map(|v| v.unwrap_or(f64::NAN))
            .collect();
        let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let spread = if values.iter().any(|v| !v.is_finite()) {
            f64::INFINITY
        } else {
            hi - lo
        };
        worst = max_of([worst, spread]);
    }
    report.push(Check::within("sweep/pairwise", worst, 1e-8));
}

fn gl_exactness(report: &mut Report) {
    let mut worst = 0.0_f64;
    for n in 2..=10 {
        let rule = QuadratureRule::gauss_legendre(n);
        for d in 0..2 * n {
            let moment = if d % 2 == 1 { 0.0 } else { 2.0 / (d as f64 + 1.0) };
            let err = match &rule {
                Ok(rule) => {
                    let got: f64 = rule
                        .nodes
                        .iter()
                        .zip(&rule.weights)
                        .map(|(x, w)| w * x.powi(d as i32))
                        .sum();
                    (got - moment).abs()
                }
                Err(_) => f64::INFINITY,
            };
            worst = max_of([worst, err]);
        }
    }
    report.push(Check::within("gl/monomial-exactness", worst, 1e-10));
}

fn rule_invariants(report: &mut Report) {
    let (mut sum_gl, mut sum_gc, mut residual, mut symmetry) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for n in 1..=64 {
        match QuadratureRule::gauss_legendre(n) {
            Ok(rule) => {
                sum_gl = max_of([sum_gl, (rule.weights.iter().sum::<f64>() - 2.0).abs()]);
                for (i, &r) in rule.nodes.iter().enumerate() {
                    residual = max_of([residual, legendre(r, n).abs()]);
                    let mirror = rule.nodes[n - 1 - i];
                    symmetry = max_of([symmetry, (r + mirror).abs()]);
                }
            }
            Err(_) => {
                sum_gl = f64::INFINITY;
                residual = f64::INFINITY;
            }
        }
        let gc = chebyshev_weights(n).map(|w| (w.iter().sum::<f64>() - PI).abs());
        sum_gc = max_of([sum_gc, gc.unwrap_or(f64::INFINITY)]);
    }
    report.push(Check::within("rules/gl-weight-sum", sum_gl, 1e-10));
    report.push(Check::within("rules/gc-weight-sum", sum_gc, 1e-12));
    report.push(Check::within("rules/gl-root-residual", residual, 1e-9));
    report.push(Check::within("rules/gl-root-symmetry", symmetry, 1e-9));
}

/// Sample points inside the natural interval of each family.
fn sample_points(family: Family) -> Vec<f64> {
    let (lo, hi) = match family {
        Family::Legendre | Family::Chebyshev | Family::ChebyshevSecondKind => (-0.95, 0.95),
        Family::Laguerre => (0.05, 12.0),
        Family::Hermite => (-3.0, 3.0),
    };
    (0..=16).map(|i| lo + (hi - lo) * i as f64 / 16.0).collect()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Value at the family's distinguished endpoint (x = 1, or x = 0 for
/// Laguerre and Hermite).
fn endpoint_value(family: Family, n: usize) -> (f64, f64) {
    match family {
        Family::Legendre | Family::Chebyshev => (1.0, 1.0),
        Family::ChebyshevSecondKind => (1.0, n as f64 + 1.0),
        Family::Laguerre => (0.0, 1.0),
        Family::Hermite => {
            let v = if n % 2 == 1 {
                0.0
            } else {
                let sign = alternating(n / 2);
                sign * factorial(n) / factorial(n / 2)
            };
            (0.0, v)
        }
    }
}

fn ortho_suite(report: &mut Report) {
    let (mut parity, mut endpoint, mut closed, mut derivative) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for family in Family::ALL {
        let rec = family.recurrence();
        for n in 0..=15 {
            let (x0, want) = endpoint_value(family, n);
            let got = eval_recurrence(x0, n, &rec);
            endpoint = max_of([endpoint, (got - want).abs() / want.abs().max(1.0)]);
            for x in sample_points(family) {
                let y = eval_recurrence(x, n, &rec);
                if family != Family::Laguerre {
                    let sign = alternating(n);
                    let mirrored = eval_recurrence(-x, n, &rec);
                    parity = max_of([parity, (mirrored - sign * y).abs() / y.abs().max(1.0)]);
                }
                if family == Family::Chebyshev {
                    let want = (n as f64 * x.acos()).cos();
                    closed = max_of([closed, (y - want).abs()]);
                }
                let h = 1e-6 * x.abs().max(1.0);
                let fd = (eval_recurrence(x + h, n, &rec) - eval_recurrence(x - h, n, &rec))
                    / (2.0 * h);
                let d = eval_recurrence_derivative(x, n, &rec);
                derivative = max_of([derivative, (d - fd).abs() / d.abs().max(1.0)]);
            }
        }
    }
    report.push(Check::within("ortho/parity", parity, 1e-12));
    report.push(Check::within("ortho/endpoints", endpoint, 1e-12));
    report.push(Check::within("ortho/chebyshev-closed-form", closed, 1e-12));
    report.push(Check::within("ortho/derivative-fd", derivative, 1e-6));
}

fn agm_identities(report: &mut Report) {
    let pairs = [(1.0, 2.0), (0.3, 7.0), (24.0, 6.0), (1.0, 1e-3), (5.0, 5.0)];
    let mut symmetry = 0.0_f64;
    let mut homogeneity = 0.0_f64;
    let mut iterative = 0.0_f64;
    for (a, b) in pairs {
        let (Ok(ab), Ok(ba)) = (agm(a, b, 1e-15), agm(b, a, 1e-15)) else {
            symmetry = f64::INFINITY;
            continue;
        };
        symmetry = max_of([symmetry, (ab - ba).abs() / ab]);
        let scaled = agm(3.5 * a, 3.5 * b, 1e-15).map(|v| v / 3.5);
        homogeneity = max_of([homogeneity, abs_err(scaled, ab) / ab]);
        let stepped = agm(0.5 * (a + b), (a * b).sqrt(), 1e-15);
        iterative = max_of([iterative, abs_err(stepped, ab) / ab]);
    }
    report.push(Check::within("agm/symmetry", symmetry, 1e-12));
    report.push(Check::within("agm/homogeneity", homogeneity, 1e-12));
    report.push(Check::within("agm/iterative", iterative, 1e-12));

    let mut reciprocity = 0.0_f64;
    for i in 0..=5 {
        let x = 0.1 * i as f64;
        let series = sum_series(&SeriesSpec::new(cei1_coefficient, x * x).eps(1e-12));
        let err = match (agm(1.0 + x, 1.0 - x, 1e-15), series) {
            (Ok(m), Ok(s)) => (1.0 / m - s).abs(),
            _ => f64::INFINITY,
        };
        reciprocity = max_of([reciprocity, err]);
    }
    report.push(Check::within("agm/series-reciprocity", reciprocity, 1e-8));
}

fn oracle_suite(report: &mut Report) {
    const TOL: f64 = 1e-9;

    // name, coefficients, point, exact sum
    let series_rows: [(&str, Coefficients, f64, f64); 4] = [
        ("series/exp", |j| 1.0 / factorial(j), 1.0, std::f64::consts::E),
        ("series/cos", |j| cos_coefficient(j), PI, -1.0),
        ("series/sin", |j| sin_coefficient(j), FRAC_PI_2, 1.0),
        ("series/arctan", |j| arctan_coefficient(j), 0.5, 0.5_f64.atan()),
    ];
    for (name, coef, x, want) in series_rows {
        let got = sum_series(&SeriesSpec::new(coef, x).eps(1e-12));
        report.push(Check::within(format!("oracle/{name}"), abs_err(got, want), TOL));
    }

    let legendre_values = [
        (0, 0.3, 1.0),
        (1, 0.3, 0.3),
        (2, 0.3, 0.5 * (3.0 * 0.09 - 1.0)),
        (3, 0.3, 0.5 * (5.0 * 0.027 - 3.0 * 0.3)),
    ];
    let err = max_of(legendre_values.iter().map(|&(n, x, want)| (legendre(x, n) - want).abs()));
    report.push(Check::within("oracle/legendre-values", err, TOL));
    let err = max_of(
        [(1usize, 1.0), (2, 0.9), (3, 0.5 * (15.0 * 0.09 - 3.0))]
            .iter()
            .map(|&(n, want)| (crate::ortho_poly::legendre_derivative(0.3, n) - want).abs()),
    );
    report.push(Check::within("oracle/legendre-derivatives", err, TOL));

    let s = 3.0_f64.sqrt();
    let root_sets: [(usize, Vec<f64>); 3] = [
        (1, vec![0.0]),
        (2, vec![-1.0 / s, 1.0 / s]),
        (3, vec![-(0.6_f64).sqrt(), 0.0, (0.6_f64).sqrt()]),
    ];
    let err = max_of(root_sets.iter().map(|(n, want)| match legendre_roots(*n) {
        Ok(got) if got.len() == want.len() => {
            max_of(got.iter().zip(want).map(|(g, w)| (g - w).abs()))
        }
        _ => f64::INFINITY,
    }));
    report.push(Check::within("oracle/legendre-roots", err, TOL));

    let mut worst = 0.0_f64;
    for n in 1..=6 {
        let gammas: Vec<f64> = (1..=n).map(|g| g as f64).collect();
        let Ok(poly) = product_polynomial(&gammas) else {
            worst = f64::INFINITY;
            continue;
        };
        for &g in poly.roots() {
            let p = NewtonProblem::new(|x, _| poly.f(x), |x, _| poly.df(x), g - 0.2, n);
            worst = max_of([worst, abs_err(solve_root(&p), g)]);
        }
    }
    report.push(Check::within("oracle/product-polynomial-roots", worst, TOL));

    let closed_rows: [(&str, OracleCase, Computation); 8] = [
        (
            "gc-constant-full",
            OracleCase::ChebyshevConstant { a: 1.0 },
            Box::new(|| integrate_gc(&Kernel::new(|_, _| Ok(1.0)), 0.0, 8, 1.0)),
        ),
        (
            "gc-constant-half",
            OracleCase::ChebyshevConstant { a: 0.5 },
            Box::new(|| {
                // f/√(a²-x²) = 1/√(1-x²) on [-a, a]
                let f = |x: f64, a: f64| Ok(((a * a - x * x) / (1.0 - x * x)).sqrt());
                integrate_gc(&Kernel::new(f), 0.5, 400_000, 0.5)
            }),
        ),
        (
            "gc-cosine-0.5",
            OracleCase::ChebyshevCosine { k: 0.5 },
            Box::new(|| integrate_gc(&cos_kernel(), 0.5, 20, 1.0)),
        ),
        (
            "gc-cosine-1",
            OracleCase::ChebyshevCosine { k: 1.0 },
            Box::new(|| integrate_gc(&cos_kernel(), 1.0, 20, 1.0)),
        ),
        (
            "gc-cosine-2",
            OracleCase::ChebyshevCosine { k: 2.0 },
            Box::new(|| integrate_gc(&cos_kernel(), 2.0, 20, 1.0)),
        ),
        (
            "gl-cosine",
            OracleCase::LegendreCosine { k: 0.3, a: 0.0, b: FRAC_PI_2 },
            Box::new(|| {
                integrate_gl(&Kernel::new(|x: f64, k: f64| Ok((x + k).cos())), 0.3, 20, 0.0, FRAC_PI_2)
            }),
        ),
        (
            "gl-quadratic",
            OracleCase::LegendreQuadratic { k: 1.0, a: 0.0, b: 2.0 },
            Box::new(|| {
                integrate_gl(&Kernel::new(|x: f64, k: f64| Ok((x + k).powi(2) / 3.0)), 1.0, 2, 0.0, 2.0)
            }),
        ),
        (
            "gl-exp",
            OracleCase::LegendreExp { k: 1.0, a: 0.0, b: 1.0 },
            Box::new(|| integrate_gl(&Kernel::new(|x: f64, k: f64| Ok((k * x).exp())), 1.0, 20, 0.0, 1.0)),
        ),
    ];
    for (name, case, compute) in closed_rows {
        let err = match closed_form_integral(case) {
            Ok(want) => abs_err(compute(), want),
            Err(_) => f64::INFINITY,
        };
        report.push(Check::within(format!("oracle/{name}"), err, TOL));
    }

    // J0 itself, against values independent of the quadrature path
    let j0 = [(0.5, 0.938_469_807_240_813), (1.0, 0.765_197_686_557_966_5), (2.0, 0.223_890_779_141_235_6)];
    let err = max_of(j0.iter().map(|&(x, want)| (bessel_j0(x) - want).abs()));
    report.push(Check::within("oracle/bessel-j0", err, TOL));

    let agm_integral = integrate_gl(
        &Kernel::new(|t: f64, _| Ok(1.0 / (4.0 * t.cos().powi(2) + 9.0 * t.sin().powi(2)).sqrt())),
        0.0,
        50,
        0.0,
        FRAC_PI_2,
    )
    .map(|i| FRAC_PI_2 / i);
    let err = match agm(2.0, 3.0, 1e-15) {
        Ok(m) => abs_err(agm_integral, m),
        Err(_) => f64::INFINITY,
    };
    report.push(Check::within("oracle/agm-integral", err, TOL));

    let tabulated = (1.0_f64 + 2.0).powi(3) - 1.0;
    report.notes.push(Note {
        name: "erratum/gl-quadratic".into(),
        text: format!(
            "tabulated (k+b)³-(k+a)³ = {tabulated} at k=1, [0,2]; integral is {}",
            tabulated / 9.0
        ),
    });
    report.notes.push(Note {
        name: "erratum/gc-exp".into(),
        text: "tabulated π·e^{kx} has a free variable; not asserted".into(),
    });
    for e in ERRATA.iter().filter(|e| e.id != "gc-exp" && e.id != "gl-quadratic") {
        report.notes.push(Note {
            name: format!("erratum/{}", e.id),
            text: e.note.into(),
        });
    }
}

/// `(-1)^i`
fn alternating(i: usize) -> f64 {
    if i.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn cos_kernel() -> Kernel<fn(f64, f64) -> Result<f64>> {
    Kernel::new(|x, k| Ok((k * x).cos()))
}

fn cos_coefficient(j: usize) -> f64 {
    if j % 2 == 1 {
        0.0
    } else {
        let sign = alternating(j / 2);
        sign / factorial(j)
    }
}

fn sin_coefficient(j: usize) -> f64 {
    if j.is_multiple_of(2) {
        0.0
    } else {
        let sign = alternating(j / 2);
        sign / factorial(j)
    }
}

fn arctan_coefficient(j: usize) -> f64 {
    if j.is_multiple_of(2) {
        0.0
    } else {
        let sign = alternating(j / 2);
        sign / j as f64
    }
}
