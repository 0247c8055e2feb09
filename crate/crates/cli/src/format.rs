//! Text layouts shared by the commands.

use ellipk_core::Method;
use serde::{Deserialize, Serialize};

/// Largest number of table rows accepted from a `--kmin/--kmax/--step` range.
pub const MAX_ROWS: usize = 1_000_000;

/// Smallest number of decimals (at most 12) that prints `x` exactly.
pub fn decimals(x: f64) -> usize {
    (0..=12)
        .find(|&d| {
            let scaled = x * 10f64.powi(d as i32);
            (scaled - scaled.round()).abs() < 1e-6
        })
        .unwrap_or(12)
}

/// Evenly spaced moduli from `kmin` to `kmax`, snapped to the decimal grid
/// implied by the inputs so that 0.1 + 0.2 prints and evaluates as 0.3.
///
/// Returns the points and the number of decimals to print them with.
pub fn k_grid(kmin: f64, kmax: f64, step: f64) -> Result<(Vec<f64>, usize), String> {
    if !(0.0 <= kmin && kmin <= kmax && kmax < 1.0) {
        return Err(format!("need 0 <= kmin <= kmax < 1, got kmin={kmin}, kmax={kmax}"));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(format!("step must be positive, got {step}"));
    }
    let span = (kmax - kmin) / step;
    if span >= MAX_ROWS as f64 {
        return Err(format!("range produces more than {MAX_ROWS} rows"));
    }
    let d = decimals(kmin).max(decimals(step)).max(2);
    let scale = 10f64.powi(d as i32);
    let rows = (span + 1e-9).floor() as usize + 1;
    let ks = (0..rows)
        .map(|i| ((kmin + i as f64 * step) * scale).round() / scale)
        .filter(|&k| k <= kmax)
        .collect();
    Ok((ks, d))
}

/// How a value was computed: tolerance for series/AGM, node count for
/// quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    Eps(f64),
    N(usize),
}

impl Param {
    pub fn for_method(method: Method, eps: f64, n: usize) -> Self {
        if method.is_quadrature() {
            Param::N(n)
        } else {
            Param::Eps(eps)
        }
    }

    /// `eps=1e-9` or `n=50`.
    pub fn label(self) -> String {
        match self {
            Param::Eps(e) => format!("eps={e:e}"),
            Param::N(n) => format!("n={n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub k: f64,
    #[serde(rename = "K")]
    pub value: f64,
    pub method: String,
    pub param: Param,
}

/// One table row: the modulus and one value per requested method.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub k: f64,
    pub values: Vec<f64>,
}

fn column_name(method: Method) -> String {
    format!("K_{}", method.name())
}

/// Right-aligned columns `k  m  K_<method>...`, values to 7 decimals.
pub fn plain_table(rows: &[Row], methods: &[Method], k_decimals: usize) -> String {
    let mut header = vec!["k".to_string(), "m".to_string()];
    header.extend(methods.iter().map(|&m| column_name(m)));
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut cells = vec![
                format!("{:.*}", k_decimals, r.k),
                format!("{:.*}", 2 * k_decimals, r.k * r.k),
            ];
            cells.extend(r.values.iter().map(|v| format!("{v:.7}")));
            cells
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            body.iter()
                .map(|cells| cells[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for cells in std::iter::once(&header).chain(&body) {
        let line: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect();
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    out
}

/// Header `k,K` for one method, `k,K_<method>,...` otherwise; values at
/// round-trip precision.
pub fn csv_table(rows: &[Row], methods: &[Method]) -> String {
    let mut out = String::from("k");
    if methods.len() == 1 {
        out.push_str(",K");
    } else {
        for &m in methods {
            out.push(',');
            out.push_str(&column_name(m));
        }
    }
    out.push('\n');
    for r in rows {
        out.push_str(&r.k.to_string());
        for v in &r.values {
            out.push(',');
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}

pub fn records(rows: &[Row], methods: &[Method], eps: f64, n: usize) -> Vec<Record> {
    rows.iter()
        .flat_map(|r| {
            methods.iter().zip(&r.values).map(move |(&m, &v)| Record {
                k: r.k,
                value: v,
                method: m.name().to_string(),
                param: Param::for_method(m, eps, n),
            })
        })
        .collect()
}

/// Two-column `k K` dump with a `#` header, for a single method.
pub fn kvalues_file(rows: &[Row], method: Method, param: Param) -> String {
    let mut out = format!("# k K(k) method={} {}\n", method.name(), param.label());
    for r in rows {
        out.push_str(&format!("{:.7} {:.7}\n", r.k, r.values[0]));
    }
    out
}

/// `%.15g`: 15 significant digits, trailing zeros dropped.
pub fn g15(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent in scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let fixed = format!("{:.*}", (14 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_snaps_to_decimals() {
        let (ks, d) = k_grid(0.0, 0.5, 0.1).unwrap();
        assert_eq!(ks, [0.0, 0.1, 0.2, 0.3, 0.4, 0.5]);
        assert_eq!(d, 2);
        let (ks, d) = k_grid(0.0, 0.0, 0.1).unwrap();
        assert_eq!(ks, [0.0]);
        assert_eq!(d, 2);
        let (ks, d) = k_grid(0.1, 0.2, 0.025).unwrap();
        assert_eq!(ks, [0.1, 0.125, 0.15, 0.175, 0.2]);
        assert_eq!(d, 3);
    }

    #[test]
    fn grid_rejects_bad_ranges() {
        assert!(k_grid(0.5, 0.4, 0.1).is_err());
        assert!(k_grid(0.0, 1.0, 0.1).is_err());
        assert!(k_grid(-0.1, 0.5, 0.1).is_err());
        assert!(k_grid(0.0, 0.5, 0.0).is_err());
        assert!(k_grid(0.0, 0.5, f64::NAN).is_err());
        assert!(k_grid(0.0, 0.9, 1e-9).is_err());
    }

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(g15(1.0), "1");
        assert_eq!(g15(-1.0 / 3f64.sqrt()), "-0.577350269189626");
        assert_eq!(g15(std::f64::consts::PI), "3.14159265358979");
        assert_eq!(g15(1.5e-7), "1.5e-07");
        assert_eq!(g15(0.0), "0");
        assert_eq!(g15(123456.0), "123456");
    }

    #[test]
    fn plain_columns_are_aligned() {
        let rows = [
            Row { k: 0.0, values: vec![std::f64::consts::FRAC_PI_2] },
            Row { k: 0.1, values: vec![1.5747455615173558] },
        ];
        let out = plain_table(&rows, &[Method::Agm], 2);
        assert_eq!(
            out,
            "   k       m      K_agm\n0.00  0.0000  1.5707963\n0.10  0.0100  1.5747456\n"
        );
    }

    #[test]
    fn kvalues_header() {
        let rows = [Row { k: 0.5, values: vec![1.685750354812596] }];
        assert_eq!(
            kvalues_file(&rows, Method::Series, Param::Eps(1e-9)),
            "# k K(k) method=series eps=1e-9\n0.5000000 1.6857504\n"
        );
        assert_eq!(
            kvalues_file(&rows, Method::GaussLegendre, Param::N(50)),
            "# k K(k) method=gl n=50\n0.5000000 1.6857504\n"
        );
    }
}
