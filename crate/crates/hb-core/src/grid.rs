//! Uniform grids on the unit circle.

use crate::error::{HbError, Result};
use num_complex::Complex64;

/// Default floor applied before logarithms of nonnegative boundary data.
pub const DEFAULT_EPS_FLOOR: f64 = 1e-12;

/// Default bound on |lambda| for kernel and evaluation points.
pub const DEFAULT_LAMBDA_MAX: f64 = 0.95;

/// A uniform grid of `n` points zeta_j = exp(2 pi i j / n) together with the
/// truncation degree `m` (highest retained Fourier mode) and the numerical
/// guard parameters used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    n: usize,
    m: usize,
    lambda_max: f64,
    eps_floor: f64,
}

impl Grid {
    /// Grid with the default guards (lambda_max 0.95, eps floor 1e-12).
    ///
    /// `n` must be a power of two and `m` must satisfy 1 <= m <= n/2.
    pub fn new(n: usize, m: usize) -> Result<Self> {
        Self::with_guards(n, m, DEFAULT_LAMBDA_MAX, DEFAULT_EPS_FLOOR)
    }

    pub fn with_guards(n: usize, m: usize, lambda_max: f64, eps_floor: f64) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(HbError::InvalidInput(format!(
                "grid size {n} must be a power of two and at least 8"
            )));
        }
        if m < 1 || m > n / 2 {
            return Err(HbError::InvalidInput(format!(
                "truncation degree {m} must lie in 1..={}",
                n / 2
            )));
        }
        if !(0.0 < lambda_max && lambda_max < 1.0) {
            return Err(HbError::InvalidInput(format!(
                "lambda_max {lambda_max} must lie strictly between 0 and 1"
            )));
        }
        if !(eps_floor > 0.0 && eps_floor < 1e-3) {
            return Err(HbError::InvalidInput(format!(
                "eps_floor {eps_floor} must be a small positive number"
            )));
        }
        Ok(Grid {
            n,
            m,
            lambda_max,
            eps_floor,
        })
    }

    /// The workhorse grid: N = 4096 points, modes retained up to M = 1024.
    pub fn standard() -> Self {
        Grid {
            n: 4096,
            m: 1024,
            lambda_max: DEFAULT_LAMBDA_MAX,
            eps_floor: DEFAULT_EPS_FLOOR,
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> usize {
        self.m
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn eps_floor(&self) -> f64 {
        self.eps_floor
    }

    /// The grid point zeta_j.
    pub fn point(&self, j: usize) -> Complex64 {
        let theta = 2.0 * std::f64::consts::PI * (j as f64) / (self.n as f64);
        Complex64::new(theta.cos(), theta.sin())
    }

    /// All grid points in order.
    pub fn points(&self) -> Vec<Complex64> {
        (0..self.n).map(|j| self.point(j)).collect()
    }

    /// Rejects kernel or evaluation points beyond the reliable modulus.
    pub(crate) fn check_lambda(&self, lambda: Complex64) -> Result<()> {
        let r = lambda.norm();
        if r > self.lambda_max {
            return Err(HbError::Conditioning {
                modulus: r,
                limit: self.lambda_max,
            });
        }
        Ok(())
    }
}
