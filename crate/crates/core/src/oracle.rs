//! Brute-force spectral oracle.
//!
//! Independent verification path for the congruence engine: build the dense
//! adjacency matrix and diagonalize it numerically with cyclic Jacobi
//! rotations carried out in double-double arithmetic (~106-bit significand).
//! Convergence is declared when the off-diagonal Frobenius norm drops below
//! 1e-12, which also certifies the per-eigenvalue error bound.

use crate::cotree::{AdjacencyMatrix, Cotree};
use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_SIZE_CAP: u64 = 500;

const OFF_NORM_TARGET: f64 = 1e-12;
const ROTATION_SKIP: f64 = 1e-16;
const MAX_SWEEPS: usize = 60;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, exceeding the oracle size cap {cap}")]
    SizeCap { n: u64, cap: u64 },
    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),
}

/// Unevaluated double-double value: an unnormalized sum `hi + lo` with
/// `|lo| <= ulp(hi)/2`, giving roughly 31 significant decimal digits.
#[derive(Clone, Copy, Debug, Default)]
struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    fn renorm(hi: f64, lo: f64) -> Dd {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        Dd::renorm(s1, s2 + t2)
    }

    #[inline]
    fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        Dd::renorm(p1, p2 + self.hi * other.lo + self.lo * other.hi)
    }

    #[inline]
    fn mul_f64(self, x: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, x);
        Dd::renorm(p1, p2 + self.lo * x)
    }

    #[inline]
    fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd::renorm(s, e + q3)
    }

    #[inline]
    fn sqrt(self) -> Dd {
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        debug_assert!(self.hi > 0.0);
        let seed = Dd::from_f64(self.hi.sqrt());
        // One Newton step doubles the seed's 53 accurate bits.
        seed.add(self.div(seed)).mul_f64(0.5)
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// Approximate eigenvalues with a certified per-entry error bound.
#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    values: Vec<f64>,
    error_bound: f64,
}

impl Spectrum {
    /// Eigenvalues sorted ascending.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn error_bound(&self) -> f64 {
        self.error_bound
    }

    /// Counts relative to `a`, leaving a guard band: entries within `margin`
    /// of `a` are reported separately as boundary hits rather than guessed.
    pub fn counts_with_margin(&self, a: f64, margin: f64) -> (u64, u64, u64) {
        let mut greater = 0;
        let mut boundary = 0;
        let mut less = 0;
        for &v in &self.values {
            if v > a + margin {
                greater += 1;
            } else if v < a - margin {
                less += 1;
            } else {
                boundary += 1;
            }
        }
        (greater, boundary, less)
    }

    /// One eigenvalue per line, 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for &v in &self.values {
            out.push_str(&format_significant(v, 12));
            out.push('\n');
        }
        out
    }
}

/// Formats with the given number of significant digits in plain decimal
/// notation.
pub fn format_significant(value: f64, digits: u32) -> String {
    if value == 0.0 {
        return "0".to_owned();
    }
    if !value.is_finite() {
        return format!("{value}");
    }
    let exponent = value.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    format!("{value:.decimals$}")
}

fn off_norm(matrix: &[Dd], n: usize) -> f64 {
    let mut sum = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let v = matrix[i * n + j].to_f64();
            sum += v * v;
        }
    }
    (2.0 * sum).sqrt()
}

fn rotate(matrix: &mut [Dd], n: usize, p: usize, q: usize) {
    let apq = matrix[p * n + q];
    let app = matrix[p * n + p];
    let aqq = matrix[q * n + q];

    let theta = aqq.sub(app).div(apq.mul_f64(2.0));
    let abs_theta = if theta.hi < 0.0 { theta.neg() } else { theta };
    let t_mag = Dd::from_f64(1.0).div(abs_theta.add(abs_theta.mul(abs_theta).add(Dd::from_f64(1.0)).sqrt()));
    let t = if theta.hi < 0.0 { t_mag.neg() } else { t_mag };
    let c = Dd::from_f64(1.0).div(t.mul(t).add(Dd::from_f64(1.0)).sqrt());
    let s = t.mul(c);

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = matrix[k * n + p];
        let akq = matrix[k * n + q];
        let new_kp = c.mul(akp).sub(s.mul(akq));
        let new_kq = s.mul(akp).add(c.mul(akq));
        matrix[k * n + p] = new_kp;
        matrix[p * n + k] = new_kp;
        matrix[k * n + q] = new_kq;
        matrix[q * n + k] = new_kq;
    }
    matrix[p * n + p] = app.sub(t.mul(apq));
    matrix[q * n + q] = aqq.add(t.mul(apq));
    matrix[p * n + q] = Dd::ZERO;
    matrix[q * n + p] = Dd::ZERO;
}

fn jacobi_eigenvalues(mut matrix: Vec<Dd>, n: usize) -> Result<(Vec<f64>, f64), OracleError> {
    let mut final_off = off_norm(&matrix, n);
    let mut converged = final_off < OFF_NORM_TARGET;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                if matrix[p * n + q].hi.abs() > ROTATION_SKIP {
                    rotate(&mut matrix, n, p, q);
                }
            }
        }
        final_off = off_norm(&matrix, n);
        converged = final_off < OFF_NORM_TARGET;
    }
    if !converged {
        return Err(OracleError::NoConvergence(MAX_SWEEPS));
    }
    let mut values: Vec<f64> = (0..n).map(|i| matrix[i * n + i].to_f64()).collect();
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok((values, final_off))
}

/// Eigenvalues of the adjacency matrix of `c`, under the default size cap.
pub fn oracle_spectrum(c: &Cotree) -> Result<Spectrum, OracleError> {
    oracle_spectrum_capped(c, DEFAULT_SIZE_CAP)
}

pub fn oracle_spectrum_capped(c: &Cotree, cap: u64) -> Result<Spectrum, OracleError> {
    let n = c.vertex_count();
    if n > cap {
        return Err(OracleError::SizeCap { n, cap });
    }
    let adjacency = AdjacencyMatrix::from_binary(&c.to_binary());
    let n = adjacency.n();
    let mut matrix = vec![Dd::ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            if adjacency.get(i, j) {
                matrix[i * n + j] = Dd::from_f64(1.0);
            }
        }
    }
    let (values, off) = jacobi_eigenvalues(matrix, n)?;
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let error_bound = off + scale * f64::EPSILON;
    Ok(Spectrum {
        values,
        error_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(parts: &[u64]) -> Cotree {
        Cotree::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn dd_arithmetic_sanity() {
        let third = Dd::from_f64(1.0).div(Dd::from_f64(3.0));
        let reconstructed = third.mul_f64(3.0).sub(Dd::from_f64(1.0));
        assert!(reconstructed.to_f64().abs() < 1e-30);

        let root2 = Dd::from_f64(2.0).sqrt();
        let err = root2.mul(root2).sub(Dd::from_f64(2.0));
        assert!(err.to_f64().abs() < 1e-30);

        let sum = Dd::from_f64(1e16).add(Dd::from_f64(1.0)).sub(Dd::from_f64(1e16));
        assert_eq!(sum.to_f64(), 1.0);
    }

    #[test]
    fn spectrum_of_k2() {
        let spec = oracle_spectrum(&ct(&[2])).unwrap();
        assert_eq!(spec.values().len(), 2);
        assert!((spec.values()[0] + 1.0).abs() < 1e-12);
        assert!((spec.values()[1] - 1.0).abs() < 1e-12);
        assert!(spec.error_bound() < 1e-9);
    }

    #[test]
    fn spectrum_of_k5() {
        let spec = oracle_spectrum(&ct(&[5])).unwrap();
        for v in &spec.values()[..4] {
            assert!((v + 1.0).abs() < 1e-12);
        }
        assert!((spec.values()[4] - 4.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_of_p3() {
        // T(1,2) is the path on three vertices: eigenvalues -sqrt2, 0, sqrt2.
        let spec = oracle_spectrum(&ct(&[1, 2])).unwrap();
        let sqrt2 = 2.0f64.sqrt();
        assert!((spec.values()[0] + sqrt2).abs() < 1e-12);
        assert!(spec.values()[1].abs() < 1e-12);
        assert!((spec.values()[2] - sqrt2).abs() < 1e-12);
    }

    #[test]
    fn spectrum_counts_for_t234() {
        let spec = oracle_spectrum(&ct(&[2, 3, 4])).unwrap();
        let (greater, boundary, less) = spec.counts_with_margin(1.0, 1e-8);
        assert_eq!((greater, boundary, less), (2, 0, 7));
    }

    #[test]
    fn spectrum_trace_is_zero() {
        let spec = oracle_spectrum(&ct(&[3, 1, 4, 1, 5])).unwrap();
        let trace: f64 = spec.values().iter().sum();
        let n = spec.values().len() as f64;
        assert!(trace.abs() < n * spec.error_bound() + 1e-10, "trace {trace}");
    }

    #[test]
    fn anti_regular_8_vertices_known_thetas() {
        let spec = oracle_spectrum(&ct(&[1, 1, 1, 1, 1, 1, 2])).unwrap();
        let theta_plus = spec
            .values()
            .iter()
            .copied()
            .filter(|v| *v > 1e-6)
            .fold(f64::INFINITY, f64::min);
        let theta_minus = spec
            .values()
            .iter()
            .copied()
            .filter(|v| *v < -1.0 - 1e-6)
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((theta_plus - 0.231890667597).abs() < 1e-9);
        assert!((theta_minus + 1.24338010982).abs() < 1e-9);
    }

    #[test]
    fn size_cap_is_enforced() {
        let big = ct(&[600]);
        assert_eq!(
            oracle_spectrum(&big).unwrap_err(),
            OracleError::SizeCap { n: 600, cap: 500 }
        );
        assert!(oracle_spectrum_capped(&big, 600).is_ok());
    }

    #[test]
    fn csv_uses_twelve_significant_digits() {
        let spec = oracle_spectrum(&ct(&[2])).unwrap();
        let csv = spec.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("-1.0000000000"));
        assert!(lines[1].starts_with("1.0000000000"));
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_significant(4.80000053517, 12), "4.80000053517");
        assert_eq!(format_significant(0.231890667597, 12), "0.231890667597");
        assert_eq!(format_significant(-1.24338010982, 12), "-1.24338010982");
        assert_eq!(format_significant(-3.30000464177, 12), "-3.30000464177");
        assert_eq!(format_significant(0.0, 12), "0");
        assert_eq!(format_significant(144.0, 3), "144");
    }
}
