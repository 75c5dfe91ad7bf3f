//! Clark measures: for unimodular alpha, the positive measure whose Poisson
//! integral is (1 - |b|^2)/|1 - conj(alpha) b|^2. In the non-extreme case
//! its absolutely continuous part has density |F_alpha|^2 with
//! F_alpha = a/(1 - conj(alpha) b); the total mass comes from evaluating the
//! Poisson integral at 0, and the singular mass is whatever the density
//! misses.

use crate::element::{lift, HbElement};
use crate::error::{HbError, Result};
use crate::hardy::HardyFunction;
use crate::pair::PythagoreanPair;
use num_complex::Complex64;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct ClarkData {
    pub alpha: Complex64,
    /// F_alpha = a/(1 - conj(alpha) b) as a power series.
    pub f_alpha: HardyFunction,
    /// |F_alpha|^2 on the grid.
    pub density: Vec<f64>,
    pub total_mass: f64,
    pub ac_mass: f64,
    pub singular_mass: f64,
}

fn check_unimodular(alpha: Complex64) -> Result<()> {
    if (alpha.norm() - 1.0).abs() > 1e-12 {
        return Err(HbError::InvalidInput(format!(
            "alpha must be unimodular, got |alpha| = {}",
            alpha.norm()
        )));
    }
    Ok(())
}

/// Coefficients of 1 - conj(alpha) b.
fn clark_denominator(alpha: Complex64, pair: &PythagoreanPair) -> Vec<Complex64> {
    let b = pair.b();
    let mut den = vec![Complex64::ZERO; b.degree() + 1];
    for (k, d) in den.iter_mut().enumerate() {
        *d = -alpha.conj() * b.coeff(k);
    }
    den[0] += Complex64::ONE;
    den
}

/// Clark data at anchor alpha.
///
/// Fails with `DegenerateSymbol` when 1 - conj(alpha) b nearly vanishes on
/// a macroscopic part of the grid; the rational division for F_alpha is
/// meaningless there.
pub fn clark(alpha: Complex64, pair: &PythagoreanPair) -> Result<ClarkData> {
    check_unimodular(alpha)?;
    let grid = pair.grid();
    let n = grid.size();
    let den = clark_denominator(alpha, pair);
    let den_fn = HardyFunction::new(den.clone());
    let small = den_fn.samples(n).iter().filter(|s| s.norm() < 1e-8).count();
    if small > n / 16 {
        return Err(HbError::DegenerateSymbol {
            count: small,
            total: n,
        });
    }
    let f_alpha = HardyFunction::from_ratio(pair.a().coeffs(), &den, grid.truncation())?;
    let density: Vec<f64> = f_alpha.samples(n).iter().map(|s| s.norm_sqr()).collect();
    let b0 = pair.b_at(Complex64::ZERO);
    let total_mass = (1.0 - b0.norm_sqr()) / (Complex64::ONE - alpha.conj() * b0).norm_sqr();
    let ac_mass = density.iter().sum::<f64>() / n as f64;
    Ok(ClarkData {
        alpha,
        f_alpha,
        density,
        total_mass,
        ac_mass,
        singular_mass: total_mass - ac_mass,
    })
}

/// One instance of the Clark isometry check: the H(b) norm of
/// (1 - conj(alpha) b) * sum_j c_j conj(F_alpha(mu_j)) k_mu_j against the
/// plain H^2 norm of sum_j c_j k_mu_j, which it should equal.
#[derive(Debug, Clone)]
pub struct ClarkIsometryCheck {
    pub element: HbElement,
    pub hb_norm: f64,
    pub h2_norm: f64,
}

pub fn clark_isometry(
    alpha: Complex64,
    combo: &[(Complex64, Complex64)],
    pair: &Arc<PythagoreanPair>,
) -> Result<ClarkIsometryCheck> {
    let grid = pair.grid();
    let m = grid.truncation();
    let cd = clark(alpha, pair)?;
    let mut v = HardyFunction::zero();
    for &(coef, mu) in combo {
        grid.check_lambda(mu)?;
        let k = HardyFunction::cauchy_kernel(mu, m);
        let weight = coef * cd.f_alpha.eval(mu).conj();
        v = v.combine(Complex64::ONE, &k, weight);
    }
    let den = HardyFunction::new(clark_denominator(alpha, pair));
    let (w, _) = den.product_truncated(&v, m);
    let element = lift(&w, pair)?;
    let hb_norm = element.hb_norm();
    // closed form for the Gram of Cauchy kernels: <k_mu, k_nu>_2 = 1/(1 - conj(mu) nu)
    let mut s = Complex64::ZERO;
    for &(ci, mi) in combo {
        for &(cj, mj) in combo {
            s += ci * cj.conj() / (Complex64::ONE - mi * mj.conj());
        }
    }
    let h2_norm = s.re.max(0.0).sqrt();
    Ok(ClarkIsometryCheck {
        element,
        hb_norm,
        h2_norm,
    })
}
