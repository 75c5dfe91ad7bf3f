//! Distances to spans of H(b) elements.
//!
//! Identifying an element with the concatenated coefficient vector [f; f+]
//! turns the H(b) inner product into the plain euclidean one, so span
//! distances reduce to orthogonal projection in C^{2(m+1)}. Projection is
//! done by modified Gram-Schmidt with a second reorthogonalization pass,
//! which keeps the residual curves monotone in the family size even when
//! the family is numerically dependent (nearly coincident kernel points);
//! dependent directions are simply dropped. The Gram matrix is still
//! assembled for its condition number, which the reports carry as a
//! diagnostic.

use crate::element::{hb_inner, HbElement};
use crate::error::Result;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Directions whose norm collapses below this fraction of their original
/// size after orthogonalization are treated as dependent and dropped.
const MGS_DROP_TOL: f64 = 1e-13;

/// Condition numbers beyond this get flagged in reports.
pub const ILL_CONDITION_LIMIT: f64 = 1e12;

/// The element as a euclidean vector [f; f+] of length 2(m+1).
pub(crate) fn elem_vec(e: &HbElement, m: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::ZERO; 2 * (m + 1)];
    let f = e.f();
    v[..=f.degree().min(m)].copy_from_slice(&f.coeffs()[..=f.degree().min(m)]);
    let fp = e.f_plus();
    let dp = fp.degree().min(m);
    v[m + 1..=m + 1 + dp].copy_from_slice(&fp.coeffs()[..=dp]);
    v
}

fn vdot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn l2(x: &[Complex64]) -> f64 {
    x.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Euclidean distance from target to the span of the vectors.
/// Returns the residual norm and the number of independent directions kept.
pub(crate) fn mgs_project(vectors: &[Vec<Complex64>], target: &[Complex64]) -> (f64, usize) {
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        let nrm0 = l2(&w);
        for _ in 0..2 {
            for q in &basis {
                let c = vdot(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= c * qi;
                }
            }
        }
        let nrm = l2(&w);
        if nrm > MGS_DROP_TOL * nrm0.max(1e-300) {
            for wi in &mut w {
                *wi /= nrm;
            }
            basis.push(w);
        }
    }
    let mut r = target.to_vec();
    for _ in 0..2 {
        for q in &basis {
            let c = vdot(q, &r);
            for (ri, qi) in r.iter_mut().zip(q) {
                *ri -= c * qi;
            }
        }
    }
    (l2(&r), basis.len())
}

/// Gram matrix G[i][j] = <e_j, e_i>_b, so that c* G c = ||sum c_j e_j||_b^2.
pub fn gram(elements: &[HbElement]) -> Result<DMatrix<Complex64>> {
    let n = elements.len();
    let mut g = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = hb_inner(&elements[j], &elements[i])?;
            g[(i, j)] = v;
            g[(j, i)] = v.conj();
        }
    }
    Ok(g)
}

/// Spectral condition number of the Gram matrix (after Hermitian
/// symmetrization); effectively infinite values saturate near 1e300.
pub fn gram_condition(elements: &[HbElement]) -> Result<f64> {
    let g = gram(elements)?;
    let herm = (&g + g.adjoint()).scale(0.5);
    let eigen = nalgebra::SymmetricEigen::new(herm);
    let max = eigen
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let min = eigen
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    Ok(max / min.max(max * 1e-300))
}
