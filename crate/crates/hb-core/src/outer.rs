//! Outer functions from boundary modulus data.
//!
//! The log-FFT construction (exponentiate the analytic completion of log w)
//! degrades badly when w has boundary zeros: the log develops integrable
//! singularities that a truncated Fourier series resolves poorly. We detect
//! grid-zero clusters, estimate the local vanishing order, subtract the
//! matching factors log|1 - conj(z0) z| before transforming, and multiply
//! the factors back at the end. The grid mean of each subtracted term is
//! exactly zero, so log-mean based quantities stay consistent.

use crate::error::{HbError, Result};
use crate::fft;
use crate::grid::Grid;
use crate::hardy::HardyFunction;
use num_complex::Complex64;

/// Relative threshold under which a modulus sample counts as a zero.
const ZERO_DETECT_REL: f64 = 1e-6;

/// A detected boundary zero: grid index of the (cluster-centered) zero and
/// the estimated vanishing order of the modulus there.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BoundaryZero {
    pub index: usize,
    pub order: u32,
}

/// Indices where w is numerically zero, grouped into consecutive runs.
/// A run wrapping through index 0 is merged; its leading entries are then
/// negative (counted back from the end of the grid).
fn detect_zero_clusters(w: &[f64]) -> Vec<Vec<i64>> {
    let n = w.len() as i64;
    let scale = w.iter().copied().fold(0.0, f64::max);
    let small: Vec<i64> = (0..w.len())
        .filter(|&j| w[j] < ZERO_DETECT_REL * scale)
        .map(|j| j as i64)
        .collect();
    if small.is_empty() {
        return Vec::new();
    }
    let mut clusters: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![small[0]];
    for &j in &small[1..] {
        if j == cur[cur.len() - 1] + 1 {
            cur.push(j);
        } else {
            clusters.push(std::mem::replace(&mut cur, vec![j]));
        }
    }
    clusters.push(cur);
    if clusters.len() > 1
        && clusters[0][0] == 0
        && *clusters.last().unwrap().last().unwrap() == n - 1
    {
        let last = clusters.pop().unwrap();
        let mut merged: Vec<i64> = last.into_iter().map(|j| j - n).collect();
        merged.extend_from_slice(&clusters[0]);
        clusters[0] = merged;
    }
    clusters
}

fn wrap(j: i64, n: usize) -> usize {
    j.rem_euclid(n as i64) as usize
}

/// log w floored at the grid's epsilon, with every detected boundary-zero
/// factor subtracted out and the cluster samples replaced by linear
/// interpolation from just outside the cluster.
pub(crate) fn zero_corrected_log(w: &[f64], grid: Grid) -> (Vec<f64>, Vec<BoundaryZero>) {
    let n = grid.size();
    let eps = grid.eps_floor();
    let points = grid.points();
    let mut u: Vec<f64> = w.iter().map(|&v| v.max(eps).ln()).collect();
    let mut zeros = Vec::new();
    for cl in detect_zero_clusters(w) {
        let half = (cl.len() - 1) / 2;
        let j0 = cl[0] + half as i64;
        let r = half as i64 + 1;
        // vanishing order from log2 ratios one and two probe-steps out
        let mut probes = Vec::new();
        for s in [1i64, -1] {
            let w1 = w[wrap(j0 + s * r, n)];
            let w2 = w[wrap(j0 + 2 * s * r, n)];
            if w1 > 0.0 && w2 > 0.0 {
                probes.push((w2 / w1).ln() / std::f64::consts::LN_2);
            }
        }
        let k = if probes.is_empty() {
            1
        } else {
            let mean = probes.iter().sum::<f64>() / probes.len() as f64;
            (mean.round() as i64).clamp(1, 8) as u32
        };
        let zc = points[wrap(j0, n)];
        for j in 0..n {
            if cl.iter().any(|&cj| wrap(cj, n) == j) {
                continue; // overwritten below
            }
            let d = (Complex64::ONE - zc.conj() * points[j]).norm();
            u[j] -= k as f64 * d.ln();
        }
        let ulo = u[wrap(cl[0] - 1, n)];
        let uhi = u[wrap(cl[cl.len() - 1] + 1, n)];
        for (t, &j) in cl.iter().enumerate() {
            let frac = (t + 1) as f64 / (cl.len() + 1) as f64;
            u[wrap(j, n)] = ulo * (1.0 - frac) + uhi * frac;
        }
        zeros.push(BoundaryZero {
            index: wrap(j0, n),
            order: k,
        });
    }
    (u, zeros)
}

/// The outer function O with |O| = w on the circle and O(0) > 0, as a power
/// series truncated at the grid's retention degree.
///
/// Fails with `LogIntegrability` when w is floored on more than half of the
/// grid, since the log-mean is then meaningless at this resolution.
pub fn outer_from_modulus(w: &[f64], grid: Grid) -> Result<HardyFunction> {
    let n = grid.size();
    let m = grid.truncation();
    if w.len() != n {
        return Err(HbError::LengthMismatch {
            got: w.len(),
            expected: n,
        });
    }
    if w.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(HbError::InvalidInput(
            "modulus data must be finite and nonnegative".into(),
        ));
    }
    let floored = w.iter().filter(|&&v| v < grid.eps_floor()).count();
    if floored > n / 2 {
        return Err(HbError::LogIntegrability { floored, total: n });
    }
    let (u, zeros) = zero_corrected_log(w, grid);
    let mut buf: Vec<Complex64> = u.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fft::forward_coeffs(&mut buf);
    // analytic completion of log w: U = u_hat(0) + 2 sum_{k>=1} u_hat(k) z^k
    let mut cap = vec![Complex64::ZERO; m + 1];
    cap[0] = Complex64::new(buf[0].re, 0.0);
    for k in 1..=m {
        cap[k] = 2.0 * buf[k];
    }
    // exp of a power series by the first-order recurrence n O_n = sum k U_k O_{n-k}
    let mut out = vec![Complex64::ZERO; m + 1];
    out[0] = Complex64::new(cap[0].re.exp(), 0.0);
    for j in 1..=m {
        let mut s = Complex64::ZERO;
        for k in 1..=j {
            s += (k as f64) * cap[k] * out[j - k];
        }
        out[j] = s / j as f64;
    }
    let mut outer = HardyFunction::new(out);
    let points = grid.points();
    for z in &zeros {
        let factor = HardyFunction::new(vec![Complex64::ONE, -points[z.index].conj()]);
        for _ in 0..z.order {
            outer = outer.product_truncated(&factor, m).0;
        }
    }
    Ok(outer)
}

/// Grid mean of log|f| with boundary-zero subtraction.
fn log_mean_zero_subtracted(samples_abs: &[f64], grid: Grid) -> f64 {
    let (u, _) = zero_corrected_log(samples_abs, grid);
    u.iter().sum::<f64>() / u.len() as f64
}

/// log|f(0)| minus the grid mean of log|f| on the circle. Zero (up to grid
/// error) exactly when f is outer; inner factors push it negative. Returns
/// -inf when f(0) = 0.
pub fn outer_defect(f: &HardyFunction, grid: Grid) -> Result<f64> {
    if f.degree() >= grid.size() {
        return Err(HbError::DegreeOverflow {
            needed: f.degree(),
            max: grid.size() - 1,
        });
    }
    let c0 = f.coeff(0).norm();
    if c0 == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let abs: Vec<f64> = f.samples(grid.size()).iter().map(|s| s.norm()).collect();
    Ok(c0.ln() - log_mean_zero_subtracted(&abs, grid))
}
