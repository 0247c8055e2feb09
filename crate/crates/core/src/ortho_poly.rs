//! Orthogonal polynomials from the three-term recurrence
//!
//! ```text
//! Y_0 = c0,  Y_1 = c1 x + c2,  Y_n = (A(n) x + B(n)) Y_{n-1} - C(n) Y_{n-2}
//! ```
//!
//! and their derivatives from the differentiated recurrence.

/// Constants and coefficient functions of a three-term recurrence.
#[derive(Clone, Copy)]
pub struct OrthoRecurrence {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub a: fn(usize) -> f64,
    pub b: fn(usize) -> f64,
    pub c: fn(usize) -> f64,
}

impl std::fmt::Debug for OrthoRecurrence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OrthoRecurrence")
            .field("c0", &self.c0)
            .field("c1", &self.c1)
            .field("c2", &self.c2)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `P_n`, orthogonal on `[-1, 1]` with unit weight.
    Legendre,
    /// `T_n(x) = cos(n arccos x)`.
    Chebyshev,
    /// `U_n`, the recurrence with `Y_1 = 2x`.
    ChebyshevSecondKind,
    /// `L_n`, orthogonal on `[0, ∞)` with weight `e^{-x}`.
    Laguerre,
    /// Physicists' `H_n`, weight `e^{-x²}`.
    Hermite,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Legendre,
        Family::Chebyshev,
        Family::ChebyshevSecondKind,
        Family::Laguerre,
        Family::Hermite,
    ];

    pub fn recurrence(self) -> OrthoRecurrence {
        fn zero(_: usize) -> f64 {
            0.0
        }
        fn one(_: usize) -> f64 {
            1.0
        }
        fn two(_: usize) -> f64 {
            2.0
        }
        match self {
            Family::Legendre => LEGENDRE,
            Family::Chebyshev => OrthoRecurrence {
                c0: 1.0,
                c1: 1.0,
                c2: 0.0,
                a: two,
                b: zero,
                c: one,
            },
            Family::ChebyshevSecondKind => OrthoRecurrence {
                c0: 1.0,
                c1: 2.0,
                c2: 0.0,
                a: two,
                b: zero,
                c: one,
            },
            Family::Laguerre => OrthoRecurrence {
                c0: 1.0,
                c1: -1.0,
                c2: 1.0,
                a: |n| -1.0 / n as f64,
                b: |n| 2.0 - 1.0 / n as f64,
                c: |n| 1.0 - 1.0 / n as f64,
            },
            Family::Hermite => OrthoRecurrence {
                c0: 1.0,
                c1: 2.0,
                c2: 0.0,
                a: two,
                b: zero,
                c: |n| 2.0 * (n as f64 - 1.0),
            },
        }
    }
}

fn legendre_a(n: usize) -> f64 {
    2.0 - 1.0 / n as f64
}

fn legendre_b(_: usize) -> f64 {
    0.0
}

fn legendre_c(n: usize) -> f64 {
    1.0 - 1.0 / n as f64
}

const LEGENDRE: OrthoRecurrence = OrthoRecurrence {
    c0: 1.0,
    c1: 1.0,
    c2: 0.0,
    a: legendre_a,
    b: legendre_b,
    c: legendre_c,
};

/// `Y_n(x)` by forward recurrence.
pub fn eval_recurrence(x: f64, n: usize, rec: &OrthoRecurrence) -> f64 {
    let mut y0 = rec.c0;
    let mut y1 = rec.c1 * x + rec.c2;
    match n {
        0 => return y0,
        1 => return y1,
        _ => {}
    }
    for k in 2..=n {
        let yk = ((rec.a)(k) * x + (rec.b)(k)) * y1 - (rec.c)(k) * y0;
        y0 = y1;
        y1 = yk;
    }
    y1
}

/// `Y'_n(x)`, co-iterating the value and derivative recurrences.
pub fn eval_recurrence_derivative(x: f64, n: usize, rec: &OrthoRecurrence) -> f64 {
    let mut y0 = rec.c0;
    let mut y1 = rec.c1 * x + rec.c2;
    let mut d0 = 0.0;
    let mut d1 = rec.c1;
    match n {
        0 => return d0,
        1 => return d1,
        _ => {}
    }
    for k in 2..=n {
        let (a, b, c) = ((rec.a)(k), (rec.b)(k), (rec.c)(k));
        let yk = (a * x + b) * y1 - c * y0;
        let dk = a * y1 + (a * x + b) * d1 - c * d0;
        y0 = y1;
        y1 = yk;
        d0 = d1;
        d1 = dk;
    }
    d1
}

pub fn legendre(x: f64, n: usize) -> f64 {
    eval_recurrence(x, n, &LEGENDRE)
}

pub fn legendre_derivative(x: f64, n: usize) -> f64 {
    eval_recurrence_derivative(x, n, &LEGENDRE)
}
