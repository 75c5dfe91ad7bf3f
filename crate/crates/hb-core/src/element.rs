//! Membership and the norm calculus for H(b).
//!
//! An element is stored as the triple (f, f+, g): f+ is the unique Hardy
//! function with T_abar f+ = T_bbar f, and g collects the strictly negative
//! modes of bbar f - abar f+ on the circle, i.e. bbar f - abar f+ = conj(z g)
//! a.e. The squared H(b) norm is then ||f||_2^2 + ||f+||_2^2.
//!
//! The Toeplitz system is upper triangular on the coefficient section, so it
//! is solved exactly by back substitution; the section residual, the leakage
//! of analytic modes into the recovered g, and the boundary-identity defect
//! are all recorded on the element as quality witnesses.

use crate::error::{HbError, Result};
use crate::fft;
use crate::hardy::HardyFunction;
use crate::pair::PythagoreanPair;
use num_complex::Complex64;
use std::sync::Arc;

/// Residual gate for membership: larger section residuals mean f is not
/// recognizably in H(b) at this resolution.
pub const MEMBERSHIP_GATE: f64 = 1e-4;

/// An element of H(b) with its lift f+ and boundary witness g.
#[derive(Debug, Clone)]
pub struct HbElement {
    pair: Arc<PythagoreanPair>,
    f: HardyFunction,
    f_plus: HardyFunction,
    g: HardyFunction,
    lift_residual: f64,
    g_leakage: f64,
    boundary_residual: f64,
}

/// y_j = sum_k conj(phi_k) f_{j+k} for j = 0..m: the analytic section of
/// the Toeplitz operator with symbol conj(phi) applied to f.
pub(crate) fn toeplitz_conj_apply(
    phi: &HardyFunction,
    f: &HardyFunction,
    m: usize,
) -> Vec<Complex64> {
    let mut y = vec![Complex64::ZERO; m + 1];
    for (j, yj) in y.iter_mut().enumerate() {
        let mut s = Complex64::ZERO;
        for k in 0..=phi.degree() {
            if j + k <= f.degree() {
                s += phi.coeff(k).conj() * f.coeff(j + k);
            }
        }
        *yj = s;
    }
    y
}

fn l2_diff(x: &[Complex64], y: &[Complex64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Solve T_abar x = T_bbar f on the coefficient section 0..m.
///
/// conj(a_0) sits on the diagonal and a is outer with a(0) > 0, so the
/// section is genuinely invertible; the back substitution is exact up to
/// round-off and the returned residual witnesses it.
fn solve_section(pair: &PythagoreanPair, f: &HardyFunction) -> (HardyFunction, f64) {
    let m = pair.grid().truncation();
    let a = pair.a();
    let y = toeplitz_conj_apply(pair.b(), f, m);
    let a0c = a.coeff(0).conj();
    let mut x = vec![Complex64::ZERO; m + 1];
    for j in (0..=m).rev() {
        let mut s = y[j];
        for k in 1..=a.degree() {
            if j + k <= m {
                s -= a.coeff(k).conj() * x[j + k];
            }
        }
        x[j] = s / a0c;
    }
    let fp = HardyFunction::new(x);
    let residual = l2_diff(&toeplitz_conj_apply(a, &fp, m), &y);
    (fp, residual)
}

/// Recover g and the boundary witnesses from (f, f+), then assemble the
/// element. X = bbar f - abar f+ is formed on a grid of twice the base size
/// so that its full mode range [-m, m] is alias-free even at m = n/2.
pub(crate) fn assemble(
    pair: Arc<PythagoreanPair>,
    f: HardyFunction,
    f_plus: HardyFunction,
    lift_residual: f64,
) -> HbElement {
    let grid = pair.grid();
    let m = grid.truncation();
    let npad = 2 * grid.size();
    let fs = f.samples(npad);
    let xs = f_plus.samples(npad);
    let bs = pair.b().samples(npad);
    let as_ = pair.a().samples(npad);
    let mut xc: Vec<Complex64> = (0..npad)
        .map(|j| bs[j].conj() * fs[j] - as_[j].conj() * xs[j])
        .collect();
    fft::forward_coeffs(&mut xc);
    let g_leakage = xc[..npad / 2]
        .iter()
        .map(|c| c.norm_sqr())
        .sum::<f64>()
        .sqrt();
    let gcoef: Vec<Complex64> = (0..=m)
        .map(|i| xc[(-1 - (i as i64)).rem_euclid(npad as i64) as usize].conj())
        .collect();
    let g = HardyFunction::new(gcoef).trimmed(1e-13);
    // defect of bbar f - abar f+ = conj(z g) across all retained modes
    for i in 0..=g.degree() {
        let bin = (-1 - (i as i64)).rem_euclid(npad as i64) as usize;
        xc[bin] -= g.coeff(i).conj();
    }
    let boundary_residual = xc.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    HbElement {
        pair,
        f,
        f_plus,
        g,
        lift_residual,
        g_leakage,
        boundary_residual,
    }
}

/// Lift f into H(b): solve for f+ and recover g.
///
/// Fails with `DegreeOverflow` when f exceeds the retention degree and with
/// `NotInHb` when the section residual is too large for f to be certified
/// as a member at this resolution.
pub fn lift(f: &HardyFunction, pair: &Arc<PythagoreanPair>) -> Result<HbElement> {
    let m = pair.grid().truncation();
    if f.degree() > m {
        return Err(HbError::DegreeOverflow {
            needed: f.degree(),
            max: m,
        });
    }
    let (f_plus, residual) = solve_section(pair, f);
    let limit = MEMBERSHIP_GATE * (1.0 + f.norm());
    if !residual.is_finite() || residual > limit {
        return Err(HbError::NotInHb { residual, limit });
    }
    Ok(assemble(Arc::clone(pair), f.clone(), f_plus, residual))
}

/// <x, y>_b = <f_x, f_y>_2 + <f_x+, f_y+>_2; both elements must live over
/// the same pair.
pub fn hb_inner(x: &HbElement, y: &HbElement) -> Result<Complex64> {
    if !x.same_space(y) {
        return Err(HbError::PairMismatch);
    }
    Ok(x.f.inner(&y.f) + x.f_plus.inner(&y.f_plus))
}

impl HbElement {
    pub fn pair(&self) -> &Arc<PythagoreanPair> {
        &self.pair
    }

    pub fn f(&self) -> &HardyFunction {
        &self.f
    }

    pub fn f_plus(&self) -> &HardyFunction {
        &self.f_plus
    }

    pub fn g(&self) -> &HardyFunction {
        &self.g
    }

    /// l2 residual of the section system T_abar f+ = T_bbar f.
    pub fn lift_residual(&self) -> f64 {
        self.lift_residual
    }

    /// l2 mass of analytic modes in bbar f - abar f+ (should be pure
    /// conj(z g), i.e. strictly anti-analytic).
    pub fn g_leakage(&self) -> f64 {
        self.g_leakage
    }

    /// l2 defect of bbar f - abar f+ = conj(z g) over all retained modes.
    pub fn boundary_residual(&self) -> f64 {
        self.boundary_residual
    }

    pub fn same_space(&self, other: &HbElement) -> bool {
        Arc::ptr_eq(&self.pair, &other.pair) || self.pair.matches(&other.pair)
    }

    pub fn hb_norm_sqr(&self) -> f64 {
        self.f.norm().powi(2) + self.f_plus.norm().powi(2)
    }

    pub fn hb_norm(&self) -> f64 {
        self.hb_norm_sqr().max(0.0).sqrt()
    }

    pub fn scaled(&self, alpha: Complex64) -> HbElement {
        HbElement {
            pair: Arc::clone(&self.pair),
            f: self.f.scaled(alpha),
            f_plus: self.f_plus.scaled(alpha),
            g: self.g.scaled(alpha),
            lift_residual: alpha.norm() * self.lift_residual,
            g_leakage: alpha.norm() * self.g_leakage,
            boundary_residual: alpha.norm() * self.boundary_residual,
        }
    }

    /// alpha * self + beta * other, componentwise on (f, f+, g); the quality
    /// witnesses are combined by the triangle inequality.
    pub fn combine(
        &self,
        alpha: Complex64,
        other: &HbElement,
        beta: Complex64,
    ) -> Result<HbElement> {
        if !self.same_space(other) {
            return Err(HbError::PairMismatch);
        }
        let an = alpha.norm();
        let bn = beta.norm();
        Ok(HbElement {
            pair: Arc::clone(&self.pair),
            f: self.f.combine(alpha, &other.f, beta),
            f_plus: self.f_plus.combine(alpha, &other.f_plus, beta),
            g: self.g.combine(alpha, &other.g, beta),
            lift_residual: an * self.lift_residual + bn * other.lift_residual,
            g_leakage: an * self.g_leakage + bn * other.g_leakage,
            boundary_residual: an * self.boundary_residual + bn * other.boundary_residual,
        })
    }
}
