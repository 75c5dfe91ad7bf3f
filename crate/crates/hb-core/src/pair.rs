//! The Pythagorean mate: for a non-extreme Schur function b, the outer
//! function a with a(0) > 0 and |a|^2 + |b|^2 = 1 on the circle.

use crate::error::{HbError, Result};
use crate::grid::Grid;
use crate::hardy::HardyFunction;
use crate::outer;
use num_complex::Complex64;

/// A Schur function b together with its Pythagorean mate a and the grid data
/// both were resolved on.
#[derive(Debug, Clone)]
pub struct PythagoreanPair {
    grid: Grid,
    b: HardyFunction,
    a: HardyFunction,
    b_samples: Vec<Complex64>,
    a_samples: Vec<Complex64>,
    eps_zone: Vec<usize>,
    pyth_deviation: f64,
}

/// Construct the mate of b.
///
/// b must be a polynomial of degree at most the retention degree with
/// sup |b| <= 1 on the grid (a 1e-9 slack absorbs round-off on the samples).
/// Fails with `NotNonExtreme` when 1 - |b|^2 falls below the epsilon floor
/// on more than half of the grid: the defining log-integral does not exist
/// at this resolution and no mate can be produced.
pub fn mate(b: &HardyFunction, grid: Grid) -> Result<PythagoreanPair> {
    let n = grid.size();
    let m = grid.truncation();
    let b = b.trimmed(1e-15);
    if b.degree() > m {
        return Err(HbError::DegreeOverflow {
            needed: b.degree(),
            max: m,
        });
    }
    let b_samples = b.samples(n);
    let sup = b_samples.iter().map(|s| s.norm()).fold(0.0, f64::max);
    if sup > 1.0 + 1e-9 {
        return Err(HbError::InvalidInput(format!(
            "not a Schur function: sup |b| = {sup:.6} exceeds 1"
        )));
    }
    let t: Vec<f64> = b_samples.iter().map(|s| 1.0 - s.norm_sqr()).collect();
    let eps_zone: Vec<usize> = (0..n).filter(|&j| t[j] < grid.eps_floor()).collect();
    if eps_zone.len() > n / 2 {
        return Err(HbError::NotNonExtreme {
            floored: eps_zone.len(),
            total: n,
        });
    }
    // pass the unfloored modulus through: the factorization has its own
    // floor and must see the true boundary zeros to subtract them
    let w: Vec<f64> = t.iter().map(|&v| v.max(0.0).sqrt()).collect();
    let a = outer::outer_from_modulus(&w, grid)?.trimmed(1e-15);
    let a_samples = a.samples(n);
    let mut pyth_deviation = 0.0f64;
    let mut in_zone = eps_zone.iter().peekable();
    for j in 0..n {
        if in_zone.peek() == Some(&&j) {
            in_zone.next();
            continue;
        }
        let dev = (a_samples[j].norm_sqr() + b_samples[j].norm_sqr() - 1.0).abs();
        pyth_deviation = pyth_deviation.max(dev);
    }
    Ok(PythagoreanPair {
        grid,
        b,
        a,
        b_samples,
        a_samples,
        eps_zone,
        pyth_deviation,
    })
}

impl PythagoreanPair {
    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn b(&self) -> &HardyFunction {
        &self.b
    }

    pub fn a(&self) -> &HardyFunction {
        &self.a
    }

    pub fn b_at(&self, z: Complex64) -> Complex64 {
        self.b.eval(z)
    }

    pub fn a_at(&self, z: Complex64) -> Complex64 {
        self.a.eval(z)
    }

    pub fn b_samples(&self) -> &[Complex64] {
        &self.b_samples
    }

    pub fn a_samples(&self) -> &[Complex64] {
        &self.a_samples
    }

    /// Grid indices where 1 - |b|^2 fell below the epsilon floor; the
    /// Pythagorean identity is not certified there.
    pub fn eps_zone(&self) -> &[usize] {
        &self.eps_zone
    }

    /// Largest | |a|^2 + |b|^2 - 1 | over the grid outside the epsilon zone.
    pub fn pyth_deviation(&self) -> f64 {
        self.pyth_deviation
    }

    /// Operator norm of the shift on H(b): sqrt(1 - |b(0)|^2) / |a(0)|.
    pub fn shift_norm(&self) -> f64 {
        (1.0 - self.b_at(Complex64::ZERO).norm_sqr())
            .max(0.0)
            .sqrt()
            / self.a_at(Complex64::ZERO).norm()
    }

    /// Same underlying space: identical grid and identical b coefficients.
    pub fn matches(&self, other: &PythagoreanPair) -> bool {
        self.grid.size() == other.grid.size()
            && self.grid.truncation() == other.grid.truncation()
            && self.b.coeffs() == other.b.coeffs()
    }
}
