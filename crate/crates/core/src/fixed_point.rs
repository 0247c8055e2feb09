//! Generic fixed-point iteration `x ← A(x)` and its use for the
//! arithmetic-geometric mean.

use crate::error::{Error, Result};

pub const DEFAULT_MAX_ITER: usize = 200;

/// Euclidean distance between two points of equal dimension.
pub fn euclid_dist(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt())
}

/// A fixed-point problem: an update map, a distance, a starting point and a
/// stopping tolerance on the distance between consecutive iterates.
///
/// The distance defaults to [`euclid_dist`]; swap it with [`with_dist`](Self::with_dist).
pub struct FixedPointProblem<U, D> {
    pub x0: Vec<f64>,
    pub update: U,
    pub dist: D,
    pub eps: f64,
    pub max_iter: usize,
}

type DistFn = fn(&[f64], &[f64]) -> Result<f64>;

impl<U> FixedPointProblem<U, DistFn>
where
    U: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    pub fn new(x0: Vec<f64>, update: U) -> Self {
        FixedPointProblem {
            x0,
            update,
            dist: euclid_dist,
            eps: 1e-9,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

impl<U, D> FixedPointProblem<U, D>
where
    U: FnMut(&[f64]) -> Result<Vec<f64>>,
    D: Fn(&[f64], &[f64]) -> Result<f64>,
{
    pub fn with_dist<D2>(self, dist: D2) -> FixedPointProblem<U, D2>
    where
        D2: Fn(&[f64], &[f64]) -> Result<f64>,
    {
        FixedPointProblem {
            x0: self.x0,
            update: self.update,
            dist,
            eps: self.eps,
            max_iter: self.max_iter,
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

    /// Iterates until two consecutive iterates are closer than `eps` and
    /// returns the later one.
    pub fn solve(mut self) -> Result<FixedPoint> {
        if !(self.eps > 0.0) {
            return Err(Error::InvalidInput(format!("eps must be positive, got {}", self.eps)));
        }
        let dim = self.x0.len();
        let mut guess = std::mem::take(&mut self.x0);
        let mut improve = self.step(&guess, dim)?;
        let mut iterations = 1;
        while !((self.dist)(&guess, &improve)? < self.eps) {
            if iterations >= self.max_iter {
                return Err(Error::NonConvergence {
                    what: "fixed-point iteration",
                    steps: iterations,
                    hint: None,
                });
            }
            guess = improve;
            improve = self.step(&guess, dim)?;
            iterations += 1;
        }
        Ok(FixedPoint {
            point: improve,
            iterations,
        })
    }

    fn step(&mut self, x: &[f64], dim: usize) -> Result<Vec<f64>> {
        let y = (self.update)(x)?;
        if y.len() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: y.len(),
            });
        }
        Ok(y)
    }
}

/// Result of a fixed-point solve.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPoint {
    pub point: Vec<f64>,
    /// Number of applications of the update map.
    pub iterations: usize,
}

/// One arithmetic/geometric mean pair `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgmState {
    pub u: f64,
    pub v: f64,
}

impl AgmState {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        if !(u >= 0.0 && v >= 0.0) {
            return Err(Error::domain(format!("AGM needs non-negative arguments, got ({u}, {v})")));
        }
        Ok(AgmState { u, v })
    }
}

/// `(u, v) ↦ ((u + v)/2, √(uv))`.
pub fn agm_update(s: AgmState) -> Result<AgmState> {
    let s = AgmState::new(s.u, s.v)?;
    Ok(AgmState {
        u: 0.5 * (s.u + s.v),
        v: (s.u * s.v).sqrt(),
    })
}

fn agm_update_vec(x: &[f64]) -> Result<Vec<f64>> {
    let next = agm_update(AgmState { u: x[0], v: x[1] })?;
    Ok(vec![next.u, next.v])
}

/// Arithmetic-geometric mean with its iteration count.
pub fn agm_counted(a: f64, b: f64, eps: f64) -> Result<(f64, usize)> {
    AgmState::new(a, b)?;
    if a == 0.0 || b == 0.0 {
        // the geometric track is pinned at 0; iterating would only halve u
        return Ok((0.0, 0));
    }
    let fp = FixedPointProblem::new(vec![a, b], agm_update_vec)
        .eps(eps)
        .solve()?;
    // both tracks agree to within eps here; report the arithmetic one
    Ok((fp.point[0], fp.iterations))
}

/// Arithmetic-geometric mean of two non-negative numbers.
///
/// `agm(0, b)` is 0: the geometric track stays at 0.
pub fn agm(a: f64, b: f64, eps: f64) -> Result<f64> {
    agm_counted(a, b, eps).map(|(m, _)| m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    #[test]
    fn distances() {
        assert_eq!(euclid_dist(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
        assert_eq!(euclid_dist(&[1.0], &[1.0]).unwrap(), 0.0);
        assert_eq!(euclid_dist(&[1.0, 2.0, 3.0], &[2.0, 2.0, 3.0]).unwrap(), 1.0);
        assert!(matches!(
            euclid_dist(&[1.0, 2.0], &[1.0]),
            Err(Error::DimensionMismatch { left: 2, right: 1 })
        ));
    }

    #[test]
    fn agm_update_steps() {
        let s = agm_update(AgmState { u: 1.0, v: 1.0 }).unwrap();
        assert_eq!(s, AgmState { u: 1.0, v: 1.0 });
        let s = agm_update(AgmState { u: 2.0, v: 3.0 }).unwrap();
        assert_eq!(s.u, 2.5);
        assert_abs_diff_eq!(s.v, 6f64.sqrt(), epsilon = 1e-15);
        let s = agm_update(AgmState { u: 1.0, v: 0.0 }).unwrap();
        assert_eq!(s, AgmState { u: 0.5, v: 0.0 });
        assert!(agm_update(AgmState { u: -1.0, v: 1.0 }).unwrap_err().is_domain());
    }

    #[test]
    fn affine_contraction() {
        let fp = FixedPointProblem::new(vec![0.0], |x: &[f64]| Ok(vec![0.5 * x[0] + 1.0]))
            .with_dist(|a: &[f64], b: &[f64]| Ok((a[0] - b[0]).abs()))
            .eps(1e-12)
            .solve()
            .unwrap();
        assert_abs_diff_eq!(fp.point[0], 2.0, epsilon = 1e-11);
    }

    #[test]
    fn already_fixed() {
        let fp = FixedPointProblem::new(vec![1.0, 1.0], agm_update_vec)
            .solve()
            .unwrap();
        assert_eq!(fp.point, vec![1.0, 1.0]);
        assert_eq!(fp.iterations, 1);
    }

    #[test]
    fn agm_one_two_matches_integral() {
        // AGM(a,b) = (π/2) / ∫_0^{π/2} dθ / √(a² cos²θ + b² sin²θ); the integral
        // is evaluated here by a composite midpoint rule, independent of the
        // quadrature module.
        let fp = FixedPointProblem::new(vec![1.0, 2.0], agm_update_vec)
            .eps(1e-12)
            .solve()
            .unwrap();
        let m = 20_000;
        let h = std::f64::consts::FRAC_PI_2 / m as f64;
        let integral: f64 = (0..m)
            .map(|i| {
                let t = (i as f64 + 0.5) * h;
                h / (t.cos().powi(2) + 4.0 * t.sin().powi(2)).sqrt()
            })
            .sum();
        let expected = std::f64::consts::FRAC_PI_2 / integral;
        assert_abs_diff_eq!(fp.point[0], expected, epsilon = 1e-10);
        assert_abs_diff_eq!(fp.point[1], expected, epsilon = 1e-10);
        assert_abs_diff_eq!(expected, 1.4567910310469068, epsilon = 1e-12);
    }

    #[test]
    fn non_convergence_is_reported() {
        let err = FixedPointProblem::new(vec![1.0], |x: &[f64]| Ok(vec![x[0] + 1.0]))
            .max_iter(10)
            .solve()
            .unwrap_err();
        assert!(matches!(err, Error::NonConvergence { steps: 10, .. }));
    }

    #[test]
    fn dimension_change_is_rejected() {
        let err = FixedPointProblem::new(vec![1.0], |_: &[f64]| Ok(vec![1.0, 2.0]))
            .solve()
            .unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn agm_examples() {
        assert_eq!(agm(5.0, 5.0, 1e-9).unwrap(), 5.0);
        let m = agm(1.0, (1.0f64 - 0.25).sqrt(), 1e-12).unwrap();
        assert_abs_diff_eq!(m, std::f64::consts::FRAC_PI_2 / 1.685_750_354_812_596, epsilon = 1e-12);
        assert_eq!(agm(2.0, 3.0, 1e-12).unwrap(), agm(3.0, 2.0, 1e-12).unwrap());
        assert_eq!(agm(0.0, 3.0, 1e-12).unwrap(), 0.0);
        assert!(agm(-1.0, 3.0, 1e-12).unwrap_err().is_domain());
    }

    #[test]
    fn agm_series_identity() {
        use crate::series::{cei1_coefficient, sum_series, SeriesSpec};
        for i in 0..=5 {
            let x = i as f64 / 10.0;
            let lhs = 1.0 / agm(1.0 + x, 1.0 - x, 1e-12).unwrap();
            let rhs = sum_series(&SeriesSpec::new(cei1_coefficient, x * x)).unwrap();
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-8);
        }
    }

    proptest! {
        #[test]
        fn symmetric(a in 1e-6f64..=100.0, b in 1e-6f64..=100.0) {
            let ab = agm(a, b, 1e-12).unwrap();
            let ba = agm(b, a, 1e-12).unwrap();
            prop_assert!((ab - ba).abs() <= 1e-12);
        }

        #[test]
        fn iterative_property(a in 1e-3f64..=100.0, b in 1e-3f64..=100.0) {
            let eps = 1e-12;
            let lhs = agm(a, b, eps).unwrap();
            let rhs = agm(0.5 * (a + b), (a * b).sqrt(), eps).unwrap();
            prop_assert!((lhs - rhs).abs() <= eps);
        }

        #[test]
        fn homogeneous(a in 1e-3f64..=100.0, b in 1e-3f64..=100.0, li in 0usize..3) {
            let lambda = [0.5, 2.0, 10.0][li];
            let scaled = agm(lambda * a, lambda * b, 1e-12).unwrap();
            let base = agm(a, b, 1e-12).unwrap();
            prop_assert!((scaled - lambda * base).abs() <= 1e-12 * lambda);
        }

        #[test]
        fn bracketed_by_arguments(a in 0.0f64..=100.0, b in 0.0f64..=100.0) {
            let m = agm(a, b, 1e-12).unwrap();
            prop_assert!(m >= a.min(b) - 1e-12 && m <= a.max(b) + 1e-12);
        }

        #[test]
        fn tracks_are_monotone(a in 1e-3f64..=100.0, b in 1e-3f64..=100.0) {
            let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
            let mut s = AgmState { u: hi, v: lo };
            for _ in 0..8 {
                let next = agm_update(s).unwrap();
                // one ulp of slack once the tracks have met
                let ulp = 4.0 * f64::EPSILON * s.u;
                prop_assert!(next.u <= s.u + ulp);
                prop_assert!(next.v >= s.v - ulp);
                prop_assert!(next.v <= next.u + ulp);
                s = next;
            }
        }
    }

    #[test]
    fn relative_scale_of_homogeneity_example() {
        assert_relative_eq!(agm(20.0, 30.0, 1e-12).unwrap(), 10.0 * agm(2.0, 3.0, 1e-12).unwrap(), max_relative = 1e-14);
    }
}
