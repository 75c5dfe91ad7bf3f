//! Discrete harmonic analysis on the circle grid: boundary functions, the
//! Riesz projection, Toeplitz application, Cauchy transforms, conjugate
//! functions and distribution profiles.

use crate::error::{HbError, Result};
use crate::fft;
use crate::grid::Grid;
use crate::hardy::HardyFunction;
use num_complex::Complex64;

/// How close to the circle the Cauchy transform is still evaluated.
pub const CAUCHY_DELTA: f64 = 0.05;

/// Complex samples on the uniform grid together with the retained Fourier
/// coefficients f_hat(n), n in [-m, m].
#[derive(Debug, Clone)]
pub struct BoundaryFunction {
    grid: Grid,
    samples: Vec<Complex64>,
    /// Mode n stored at index n + m.
    coeffs: Vec<Complex64>,
}

/// Discrete Fourier analysis of `samples` on `grid`, retaining modes up to
/// the truncation degree.
pub fn analyze(samples: Vec<Complex64>, grid: Grid) -> Result<BoundaryFunction> {
    let n = grid.size();
    if samples.len() != n {
        return Err(HbError::LengthMismatch {
            got: samples.len(),
            expected: n,
        });
    }
    let m = grid.truncation();
    let mut buf = samples.clone();
    fft::forward_coeffs(&mut buf);
    let mut coeffs = vec![Complex64::ZERO; 2 * m + 1];
    for (i, c) in coeffs.iter_mut().enumerate() {
        let mode = i as i64 - m as i64;
        *c = buf[mode.rem_euclid(n as i64) as usize];
    }
    Ok(BoundaryFunction {
        grid,
        samples,
        coeffs,
    })
}

impl BoundaryFunction {
    /// Boundary function with the prescribed modes (length 2m+1, mode n at
    /// index n+m); samples are synthesized on the grid.
    pub fn from_modes(coeffs: Vec<Complex64>, grid: Grid) -> Result<Self> {
        let m = grid.truncation();
        if coeffs.len() != 2 * m + 1 {
            return Err(HbError::LengthMismatch {
                got: coeffs.len(),
                expected: 2 * m + 1,
            });
        }
        let samples = fft::sample_modes(&coeffs, grid.size());
        Ok(BoundaryFunction {
            grid,
            samples,
            coeffs,
        })
    }

    /// Boundary trace of an analytic power series.
    pub fn from_hardy(f: &HardyFunction, grid: Grid) -> Result<Self> {
        let m = grid.truncation();
        if f.degree() > m {
            return Err(HbError::DegreeOverflow {
                needed: f.degree(),
                max: m,
            });
        }
        let mut coeffs = vec![Complex64::ZERO; 2 * m + 1];
        for n in 0..=f.degree() {
            coeffs[n + m] = f.coeff(n);
        }
        let samples = f.samples(grid.size());
        Ok(BoundaryFunction {
            grid,
            samples,
            coeffs,
        })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// Fourier coefficient of mode n (zero outside [-m, m]).
    pub fn coeff(&self, n: i64) -> Complex64 {
        let m = self.grid.truncation() as i64;
        if n < -m || n > m {
            return Complex64::ZERO;
        }
        self.coeffs[(n + m) as usize]
    }

    pub fn modes(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Samples rebuilt from the retained modes only; equals `samples` up to
    /// round-off whenever the function is band-limited to [-m, m].
    pub fn resynthesize(&self) -> Vec<Complex64> {
        fft::sample_modes(&self.coeffs, self.grid.size())
    }

    /// L2 norm over the circle computed from the samples.
    pub fn sample_norm(&self) -> f64 {
        let n = self.samples.len() as f64;
        (self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() / n).sqrt()
    }

    /// l2 norm of the retained coefficients; equals `sample_norm` for
    /// band-limited data (discrete Parseval).
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        let scale = 1.0 + self.samples.iter().map(|s| s.norm()).fold(0.0, f64::max);
        self.samples.iter().all(|s| s.im.abs() <= tol * scale)
    }
}

/// Orthogonal projection onto the nonnegative modes.
pub fn riesz_project(f: &BoundaryFunction) -> HardyFunction {
    let m = f.grid().truncation();
    HardyFunction::new((0..=m as i64).map(|n| f.coeff(n)).collect())
}

/// The Toeplitz operator: P_+(phi * f) with the product formed alias-free on
/// a zero-padded grid, truncated at the grid's retention degree.
///
/// Fails when the analytic part of phi pushes the product beyond the
/// retention degree, since the projection would silently lose those modes.
pub fn toeplitz_apply(phi: &BoundaryFunction, f: &HardyFunction) -> Result<HardyFunction> {
    let m = phi.grid().truncation();
    let mut pos_band = 0usize;
    for n in 1..=m {
        if phi.coeff(n as i64) != Complex64::ZERO {
            pos_band = n;
        }
    }
    if !f.is_zero() && pos_band + f.degree() > m {
        return Err(HbError::DegreeOverflow {
            needed: pos_band + f.degree(),
            max: m,
        });
    }
    // alias-free product needs every mode of phi*f, spanning [-m, m + deg f],
    // to land in a distinct bin
    let span = 2 * (m + f.degree()) + 2;
    let npad = span.next_power_of_two();
    let phi_s = fft::sample_modes(phi.modes(), npad);
    let f_s = f.samples(npad);
    let mut prod: Vec<Complex64> = phi_s.iter().zip(&f_s).map(|(p, q)| p * q).collect();
    fft::forward_coeffs(&mut prod);
    Ok(HardyFunction::new(prod[..=m].to_vec()))
}

/// Cauchy transform sum_{n >= 0} f_hat(n) z^n over the retained modes,
/// evaluated strictly inside the disk.
pub fn cauchy_transform(f: &BoundaryFunction, z: Complex64) -> Result<Complex64> {
    let r = z.norm();
    if r > 1.0 - CAUCHY_DELTA {
        return Err(HbError::Conditioning {
            modulus: r,
            limit: 1.0 - CAUCHY_DELTA,
        });
    }
    Ok(riesz_project(f).eval(z))
}

/// Grid sup of |C(f) - f - f_hat(0) + conj(C(conj f))| with the boundary
/// values of both Cauchy transforms taken as analytic-mode partial sums.
///
/// Vanishes (to round-off) on trigonometric polynomials of degree <= m; for
/// band-limited f the coefficients of conj(f) are conj(f_hat(-n)).
pub fn cauchy_boundary_identity_residual(f: &BoundaryFunction) -> f64 {
    let grid = f.grid();
    let m = grid.truncation() as i64;
    let n = grid.size();
    let cf = fft::sample_power_series(&(0..=m).map(|k| f.coeff(k)).collect::<Vec<_>>(), n);
    let cfbar =
        fft::sample_power_series(&(0..=m).map(|k| f.coeff(-k).conj()).collect::<Vec<_>>(), n);
    let f0 = f.coeff(0);
    f.samples()
        .iter()
        .zip(cf.iter().zip(&cfbar))
        .map(|(s, (c, cb))| (c - s - f0 + cb.conj()).norm())
        .fold(0.0, f64::max)
}

/// Harmonic conjugate: v_hat(n) = -i sign(n) u_hat(n), v_hat(0) = 0, so that
/// u + iv has only nonnegative modes.
pub fn conjugate_function(u: &BoundaryFunction) -> Result<BoundaryFunction> {
    if !u.is_real(1e-10) {
        return Err(HbError::InvalidInput(
            "conjugate_function expects a real-valued boundary function".into(),
        ));
    }
    let m = u.grid().truncation() as i64;
    let mut modes = vec![Complex64::ZERO; (2 * m + 1) as usize];
    for nmode in -m..=m {
        let sign = match nmode {
            0 => continue,
            n if n > 0 => 1.0,
            _ => -1.0,
        };
        modes[(nmode + m) as usize] = Complex64::new(0.0, -sign) * u.coeff(nmode);
    }
    BoundaryFunction::from_modes(modes, u.grid())
}

/// Empirical distribution data for |h|: fraction of grid points above each
/// threshold.
#[derive(Debug, Clone)]
pub struct DistributionProfile {
    pub thresholds: Vec<f64>,
    pub masses: Vec<f64>,
}

pub fn distribution_profile(
    h: &BoundaryFunction,
    thresholds: &[f64],
) -> Result<DistributionProfile> {
    if thresholds.windows(2).any(|w| w[0] >= w[1]) || thresholds.first().is_some_and(|&t| t <= 0.0)
    {
        return Err(HbError::InvalidInput(
            "thresholds must be strictly increasing and positive".into(),
        ));
    }
    let n = h.samples().len() as f64;
    let mut abs: Vec<f64> = h.samples().iter().map(|s| s.norm()).collect();
    abs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let masses = thresholds
        .iter()
        .map(|&t| {
            // count of |h| > t via binary search in the sorted magnitudes
            let idx = abs.partition_point(|&v| v <= t);
            (abs.len() - idx) as f64 / n
        })
        .collect();
    Ok(DistributionProfile {
        thresholds: thresholds.to_vec(),
        masses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid {
        Grid::new(256, 64).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn analyze_constant() {
        let g = grid();
        let f = analyze(vec![Complex64::ONE; g.size()], g).unwrap();
        assert!((f.coeff(0) - Complex64::ONE).norm() < 1e-14);
        for n in 1..=5 {
            assert!(f.coeff(n).norm() < 1e-14);
            assert!(f.coeff(-n).norm() < 1e-14);
        }
    }

    #[test]
    fn analyze_single_mode() {
        let g = grid();
        let f = analyze(g.points(), g).unwrap();
        assert!((f.coeff(1) - Complex64::ONE).norm() < 1e-13);
        assert!(f.coeff(0).norm() < 1e-13);
        assert!(f.coeff(-1).norm() < 1e-13);
    }

    #[test]
    fn analyze_rejects_wrong_length() {
        let g = grid();
        assert!(matches!(
            analyze(vec![Complex64::ZERO; 7], g),
            Err(HbError::LengthMismatch { got: 7, .. })
        ));
    }

    #[test]
    fn riesz_kills_antianalytic_modes() {
        let g = grid();
        let conj_z: Vec<Complex64> = g.points().iter().map(|z| z.conj()).collect();
        let p = riesz_project(&analyze(conj_z, g).unwrap());
        assert!(p.norm() < 1e-13);

        // 1 + zeta + conj(zeta) -> 1 + z
        let samples: Vec<Complex64> = g
            .points()
            .iter()
            .map(|z| Complex64::ONE + z + z.conj())
            .collect();
        let q = riesz_project(&analyze(samples, g).unwrap());
        assert!((q.coeff(0) - Complex64::ONE).norm() < 1e-13);
        assert!((q.coeff(1) - Complex64::ONE).norm() < 1e-13);
        assert_eq!(q.trimmed(1e-12).degree(), 1);
    }

    #[test]
    fn riesz_is_idempotent_and_contractive() {
        let g = grid();
        let samples: Vec<Complex64> = g
            .points()
            .iter()
            .map(|z| z.conj() * 2.0 + Complex64::ONE + z * z * c(0.0, 1.5))
            .collect();
        let f = analyze(samples, g).unwrap();
        let p1 = riesz_project(&f);
        let p2 = riesz_project(&BoundaryFunction::from_hardy(&p1, g).unwrap());
        assert!(p1
            .coeffs()
            .iter()
            .zip(p2.coeffs())
            .all(|(a, b)| (a - b).norm() < 1e-13));
        assert!(p1.norm() <= f.coeff_norm() + 1e-12);
    }

    #[test]
    fn toeplitz_identity_and_backward_shift() {
        let g = grid();
        let one = analyze(vec![Complex64::ONE; g.size()], g).unwrap();
        let f = HardyFunction::new(vec![c(1.0, 0.0), c(2.0, -1.0)]);
        let tf = toeplitz_apply(&one, &f).unwrap();
        assert!((tf.coeff(0) - f.coeff(0)).norm() < 1e-13);
        assert!((tf.coeff(1) - f.coeff(1)).norm() < 1e-13);

        let conj_z = analyze(g.points().iter().map(|z| z.conj()).collect(), g).unwrap();
        let shifted = toeplitz_apply(&conj_z, &HardyFunction::constant(Complex64::ONE)).unwrap();
        assert!(shifted.norm() < 1e-13);
    }

    #[test]
    fn toeplitz_conjugate_symbol_example() {
        // phi = conj((1+zeta)/2), f = 1  ->  P_+ of (1 + conj(zeta))/2 = 1/2
        let g = grid();
        let phi = analyze(
            g.points()
                .iter()
                .map(|z| ((Complex64::ONE + z) / 2.0).conj())
                .collect(),
            g,
        )
        .unwrap();
        let y = toeplitz_apply(&phi, &HardyFunction::constant(Complex64::ONE)).unwrap();
        assert!((y.coeff(0) - c(0.5, 0.0)).norm() < 1e-13);
        assert!(y.coeff(1).norm() < 1e-13);
    }

    #[test]
    fn toeplitz_degree_overflow() {
        let g = grid();
        let m = g.truncation();
        let zeta = analyze(g.points(), g).unwrap();
        let f = HardyFunction::monomial(m);
        assert!(matches!(
            toeplitz_apply(&zeta, &f),
            Err(HbError::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn cauchy_transform_basics() {
        let g = grid();
        let one = analyze(vec![Complex64::ONE; g.size()], g).unwrap();
        let z0 = c(0.3, -0.2);
        assert!((cauchy_transform(&one, z0).unwrap() - Complex64::ONE).norm() < 1e-13);

        let conj_z = analyze(g.points().iter().map(|z| z.conj()).collect(), g).unwrap();
        assert!(cauchy_transform(&conj_z, z0).unwrap().norm() < 1e-13);

        let zeta = analyze(g.points(), g).unwrap();
        assert!((cauchy_transform(&zeta, z0).unwrap() - z0).norm() < 1e-13);

        assert!(matches!(
            cauchy_transform(&one, c(0.97, 0.0)),
            Err(HbError::Conditioning { .. })
        ));
    }

    #[test]
    fn boundary_identity_residual_small_cases() {
        let g = grid();
        let one = analyze(vec![Complex64::ONE; g.size()], g).unwrap();
        assert!(cauchy_boundary_identity_residual(&one) < 1e-14);

        // f = zeta + conj(zeta): C(f) = z, C(conj f) = z, f_hat(0) = 0
        let f = analyze(g.points().iter().map(|z| z + z.conj()).collect(), g).unwrap();
        assert!(cauchy_boundary_identity_residual(&f) < 1e-10);
    }

    #[test]
    fn conjugate_of_cosine_is_sine() {
        let g = grid();
        let cos: Vec<Complex64> = g.points().iter().map(|z| c(z.re, 0.0)).collect();
        let v = conjugate_function(&analyze(cos, g).unwrap()).unwrap();
        for (j, z) in g.points().iter().enumerate() {
            assert!((v.samples()[j] - c(z.im, 0.0)).norm() < 1e-12);
        }

        let constant = analyze(vec![c(2.0, 0.0); g.size()], g).unwrap();
        let vc = conjugate_function(&constant).unwrap();
        assert!(vc.sample_norm() < 1e-13);

        let not_real = analyze(g.points(), g).unwrap();
        assert!(conjugate_function(&not_real).is_err());
    }

    #[test]
    fn conjugate_involution() {
        // v(v(u)) = -u + mean(u)
        let g = grid();
        let u_samples: Vec<Complex64> = g
            .points()
            .iter()
            .map(|z| c(1.5 + z.re - 0.7 * (2.0 * z.arg()).cos(), 0.0))
            .collect();
        let u = analyze(u_samples, g).unwrap();
        let vv = conjugate_function(&conjugate_function(&u).unwrap()).unwrap();
        let mean = u.coeff(0);
        for j in 0..g.size() {
            assert!((vv.samples()[j] - (mean - u.samples()[j])).norm() < 1e-11);
        }
    }

    #[test]
    fn profile_of_unimodular_function() {
        let g = grid();
        let h = analyze(g.points(), g).unwrap();
        let p = distribution_profile(&h, &[0.5, 0.99, 1.0, 1.5]).unwrap();
        assert_eq!(p.masses[0], 1.0);
        assert_eq!(p.masses[1], 1.0);
        // |h| = 1 is not strictly above t = 1
        assert_eq!(p.masses[2], 0.0);
        assert_eq!(p.masses[3], 0.0);
    }

    #[test]
    fn profile_of_half_circle_indicator() {
        let g = grid();
        let samples: Vec<Complex64> = (0..g.size())
            .map(|j| {
                if j < g.size() / 2 {
                    c(2.0, 0.0)
                } else {
                    Complex64::ZERO
                }
            })
            .collect();
        let h = analyze(samples, g).unwrap();
        let p = distribution_profile(&h, &[1.0]).unwrap();
        assert!((p.masses[0] - 0.5).abs() < 1e-15);

        assert!(distribution_profile(&h, &[1.0, 0.5]).is_err());
        assert!(distribution_profile(&h, &[0.0, 0.5]).is_err());
    }
}
