//! Thin FFT layer with the normalization used everywhere in this crate:
//! forward transforms divide by the grid size so bin n holds the Fourier
//! coefficient of mode n, and synthesis is the unnormalized inverse.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::cell::RefCell;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// In-place forward DFT followed by division by the length, so that
/// `buf[k] = (1/n) * sum_j x_j exp(-2 pi i j k / n)`.
pub(crate) fn forward_coeffs(buf: &mut [Complex64]) {
    let n = buf.len();
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(n).process(buf));
    let scale = 1.0 / n as f64;
    for v in buf.iter_mut() {
        *v *= scale;
    }
}

/// In-place unnormalized inverse DFT: `buf[j] = sum_k c_k exp(+2 pi i j k / n)`,
/// i.e. evaluation of the mode expansion at the grid points.
pub(crate) fn synthesize_in_place(buf: &mut [Complex64]) {
    let n = buf.len();
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n).process(buf));
}

/// Samples of the analytic power series `coeffs` on a uniform grid of
/// `npoints` points (npoints must be a power of two and exceed the degree).
pub(crate) fn sample_power_series(coeffs: &[Complex64], npoints: usize) -> Vec<Complex64> {
    debug_assert!(npoints.is_power_of_two());
    debug_assert!(coeffs.len() <= npoints);
    let mut buf = vec![Complex64::ZERO; npoints];
    buf[..coeffs.len()].copy_from_slice(coeffs);
    synthesize_in_place(&mut buf);
    buf
}

/// Samples on `npoints` grid points from two-sided modes `c[-m..=m]`, stored
/// as a slice of length 2m+1 with mode n at position n+m.
pub(crate) fn sample_modes(modes: &[Complex64], npoints: usize) -> Vec<Complex64> {
    debug_assert!(modes.len() % 2 == 1);
    let m = (modes.len() - 1) / 2;
    debug_assert!(2 * m < npoints);
    let mut buf = vec![Complex64::ZERO; npoints];
    for (i, &c) in modes.iter().enumerate() {
        let n = i as i64 - m as i64;
        buf[n.rem_euclid(npoints as i64) as usize] += c;
    }
    synthesize_in_place(&mut buf);
    buf
}
