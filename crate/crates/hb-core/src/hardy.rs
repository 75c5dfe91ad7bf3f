//! Truncated analytic power series: the coefficient-side representation of
//! Hardy-space functions.

use crate::error::{HbError, Result};
use crate::fft;
use num_complex::Complex64;

/// A finite power series sum c_n z^n, evaluable in the closed unit disk.
///
/// Trailing coefficients that are exactly zero are trimmed on construction;
/// the zero function is represented by the single coefficient 0.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyFunction {
    coeffs: Vec<Complex64>,
}

impl HardyFunction {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::ZERO) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::ZERO);
        }
        HardyFunction { coeffs }
    }

    pub fn zero() -> Self {
        HardyFunction {
            coeffs: vec![Complex64::ZERO],
        }
    }

    pub fn constant(c: Complex64) -> Self {
        HardyFunction { coeffs: vec![c] }
    }

    /// The monomial z^k.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Complex64::ZERO; k + 1];
        coeffs[k] = Complex64::ONE;
        HardyFunction { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The Cauchy kernel k_lambda(z) = 1/(1 - conj(lambda) z) truncated at
    /// `max_degree`, with the numerically negligible tail trimmed.
    pub fn cauchy_kernel(lambda: Complex64, max_degree: usize) -> Self {
        let q = lambda.conj();
        let mut coeffs = Vec::with_capacity(max_degree + 1);
        let mut p = Complex64::ONE;
        for _ in 0..=max_degree {
            coeffs.push(p);
            p *= q;
        }
        Self::new(coeffs).trimmed(1e-15)
    }

    /// Power-series quotient num/den to degree `max_degree` via the division
    /// recurrence c_n = (num_n - sum_{k>=1} den_k c_{n-k}) / den_0.
    pub fn from_ratio(num: &[Complex64], den: &[Complex64], max_degree: usize) -> Result<Self> {
        let d0 = *den.first().unwrap_or(&Complex64::ZERO);
        if d0.norm() < 1e-12 {
            return Err(HbError::InvalidInput(
                "denominator vanishes at 0; the quotient is not analytic there".into(),
            ));
        }
        let mut c = vec![Complex64::ZERO; max_degree + 1];
        for n in 0..=max_degree {
            let mut s = *num.get(n).unwrap_or(&Complex64::ZERO);
            for k in 1..den.len().min(n + 1) {
                s -= den[k] * c[n - k];
            }
            c[n] = s / d0;
        }
        Ok(Self::new(c))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient c_n, zero beyond the stored degree.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or(Complex64::ZERO)
    }

    /// Horner evaluation at a point of the closed disk.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut r = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            r = r * z + c;
        }
        r
    }

    /// l2 norm of the coefficients, i.e. the H^2 norm of the series.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// <self, other> = sum_n self_n conj(other_n).
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(u, v)| u * v.conj())
            .sum()
    }

    /// Drop trailing coefficients below `rel` times the largest magnitude.
    pub fn trimmed(&self, rel: f64) -> Self {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let tol = rel * if scale > 0.0 { scale } else { 1.0 };
        let mut end = 0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.norm() > tol {
                end = i + 1;
            }
        }
        if end == 0 {
            return Self::zero();
        }
        Self::new(self.coeffs[..end].to_vec())
    }

    /// Product truncated at degree `max_degree`; also returns the l2 norm of
    /// the discarded tail so callers can assert it is negligible.
    pub fn product_truncated(&self, other: &Self, max_degree: usize) -> (Self, f64) {
        let full_len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut full = vec![Complex64::ZERO; full_len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == Complex64::ZERO {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                full[i + j] += a * b;
            }
        }
        let keep = full_len.min(max_degree + 1);
        let dropped = full[keep..]
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt();
        (Self::new(full[..keep].to_vec()), dropped)
    }

    /// Linear combination alpha*self + beta*other.
    pub fn combine(&self, alpha: Complex64, other: &Self, beta: Complex64) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Complex64::ZERO; len];
        for (i, o) in out.iter_mut().enumerate() {
            *o = alpha * self.coeff(i) + beta * other.coeff(i);
        }
        Self::new(out)
    }

    pub fn scaled(&self, alpha: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| alpha * c).collect())
    }

    /// Multiply by z, i.e. shift the coefficients up by one.
    pub fn shifted_up(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Complex64::ZERO);
        out.extend_from_slice(&self.coeffs);
        Self::new(out)
    }

    /// Samples on a uniform circle grid of `npoints` points (a power of two
    /// at least the coefficient count).
    pub fn samples(&self, npoints: usize) -> Vec<Complex64> {
        fft::sample_power_series(&self.coeffs, npoints)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::ZERO)
    }
}
