//! The shift S_b: multiplication by z on H(b), which is bounded exactly in
//! the non-extreme case with norm sqrt(1 - |b(0)|^2)/|a(0)|. Finite sections
//! of the monomial Gram matrix give a computable lower approximation of the
//! norm through the generalized eigenproblem A x = s^2 B x, where B is the
//! Gram of (z^k)_{k<=d} and A the Gram of the shifted family.

use crate::element::{hb_inner, lift, HbElement};
use crate::error::{HbError, Result};
use crate::hardy::HardyFunction;
use crate::pair::PythagoreanPair;
use nalgebra::{Cholesky, DMatrix, SymmetricEigen};
use num_complex::Complex64;
use std::sync::Arc;

/// Apply S_b to an element: lift z f.
///
/// Fails when f genuinely carries the top retained mode, since z f would
/// then fall outside the representable degree range; a top coefficient at
/// round-off level is dropped instead.
pub fn shift_apply(e: &HbElement) -> Result<HbElement> {
    let pair = e.pair();
    let m = pair.grid().truncation();
    let f = e.f();
    if f.degree() == m && f.coeff(m).norm() > 1e-12 * (1.0 + f.norm()) {
        return Err(HbError::DegreeOverflow {
            needed: m + 1,
            max: m,
        });
    }
    let top = f.degree().min(m - 1);
    let mut coeffs = Vec::with_capacity(top + 2);
    coeffs.push(Complex64::ZERO);
    for k in 0..=top {
        coeffs.push(f.coeff(k));
    }
    lift(&HardyFunction::new(coeffs), pair)
}

/// Lifts of 1, z, ..., z^dmax.
pub fn monomial_lifts(pair: &Arc<PythagoreanPair>, dmax: usize) -> Result<Vec<HbElement>> {
    (0..=dmax)
        .map(|k| lift(&HardyFunction::monomial(k), pair))
        .collect()
}

/// Norm of the compression of S_b to the span of the monomials up to
/// degree d. Nondecreasing in d and converging to the shift norm from below.
pub fn finite_section_shift_norm(pair: &Arc<PythagoreanPair>, d: usize) -> Result<f64> {
    Ok(finite_section_shift_norms(pair, &[d])?[0])
}

/// Section norms for several degrees at once, sharing the monomial lifts and
/// the Gram matrix of the largest section.
pub fn finite_section_shift_norms(pair: &Arc<PythagoreanPair>, ds: &[usize]) -> Result<Vec<f64>> {
    let dmax = match ds.iter().max() {
        Some(&d) => d,
        None => return Ok(Vec::new()),
    };
    let els = monomial_lifts(pair, dmax + 1)?;
    let size = dmax + 2;
    let mut gram = DMatrix::<Complex64>::zeros(size, size);
    for i in 0..size {
        for j in 0..=i {
            let v = hb_inner(&els[j], &els[i])?;
            gram[(i, j)] = v;
            gram[(j, i)] = v.conj();
        }
    }
    ds.iter().map(|&d| section_norm(&gram, d)).collect()
}

fn section_norm(gram: &DMatrix<Complex64>, d: usize) -> Result<f64> {
    let b_sec = gram.view((0, 0), (d + 1, d + 1)).into_owned();
    let a_sec = gram.view((1, 1), (d + 1, d + 1)).into_owned();
    let chol = Cholesky::new(b_sec).ok_or_else(|| {
        HbError::InvalidInput("monomial Gram section is not positive definite".into())
    })?;
    let l = chol.l();
    // whiten: C = L^-1 A L^-H, then the top eigenvalue of C is the squared
    // section norm
    let y = l
        .solve_lower_triangular(&a_sec)
        .ok_or_else(|| HbError::InvalidInput("singular Cholesky factor".into()))?;
    let z = l
        .solve_lower_triangular(&y.adjoint())
        .ok_or_else(|| HbError::InvalidInput("singular Cholesky factor".into()))?;
    let c = z.adjoint();
    let herm = (&c + c.adjoint()).scale(0.5);
    let eigen = SymmetricEigen::new(herm);
    let top = eigen
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(top.max(0.0).sqrt())
}
