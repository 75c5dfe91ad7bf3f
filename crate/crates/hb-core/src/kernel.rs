//! Reproducing kernels and evaluation functionals.
//!
//! Three kernel families are exposed: the Cauchy kernel k_lambda, its image
//! b k_lambda, and the reproducing kernel of H(b) itself,
//! k^b_lambda = (1 - conj(b(lambda)) b) k_lambda. The Cauchy kernel's lift
//! has the closed form (k_lambda)+ = (conj b(lambda)/conj a(lambda))
//! k_lambda; the other two go through the solver.

use crate::element::{assemble, lift, toeplitz_conj_apply, HbElement};
use crate::error::{HbError, Result};
use crate::hardy::HardyFunction;
use crate::pair::PythagoreanPair;
use num_complex::Complex64;
use std::str::FromStr;
use std::sync::Arc;

/// Denominators |a(lambda)| below this are treated as numerically singular.
const EVAL_GUARD: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    /// k_lambda(z) = 1/(1 - conj(lambda) z)
    Cauchy,
    /// b k_lambda
    BCauchy,
    /// k^b_lambda, the reproducing kernel of H(b)
    Hb,
}

impl FromStr for KernelKind {
    type Err = HbError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cauchy" => Ok(KernelKind::Cauchy),
            "b_cauchy" => Ok(KernelKind::BCauchy),
            "hb" => Ok(KernelKind::Hb),
            other => Err(HbError::InvalidInput(format!(
                "unknown kernel kind {other:?} (expected cauchy, b_cauchy or hb)"
            ))),
        }
    }
}

impl std::fmt::Display for KernelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            KernelKind::Cauchy => "cauchy",
            KernelKind::BCauchy => "b_cauchy",
            KernelKind::Hb => "hb",
        })
    }
}

fn guarded_a_at(pair: &PythagoreanPair, lambda: Complex64) -> Result<Complex64> {
    let alam = pair.a_at(lambda);
    if alam.norm() <= EVAL_GUARD {
        return Err(HbError::Singularity { lambda });
    }
    Ok(alam)
}

/// The kernel element of the requested kind at lambda, as a member of H(b).
pub fn kernel(
    lambda: Complex64,
    kind: KernelKind,
    pair: &Arc<PythagoreanPair>,
) -> Result<HbElement> {
    let grid = pair.grid();
    grid.check_lambda(lambda)?;
    let m = grid.truncation();
    let k = HardyFunction::cauchy_kernel(lambda, m);
    match kind {
        KernelKind::Cauchy => {
            let alam = guarded_a_at(pair, lambda)?;
            let c = pair.b_at(lambda).conj() / alam.conj();
            let f_plus = k.scaled(c);
            let residual = section_residual(pair, &k, &f_plus);
            Ok(assemble(Arc::clone(pair), k, f_plus, residual))
        }
        KernelKind::BCauchy => {
            let (bk, _) = pair.b().product_truncated(&k, m);
            lift(&bk, pair)
        }
        KernelKind::Hb => {
            let (bk, _) = pair.b().product_truncated(&k, m);
            let f = k.combine(Complex64::ONE, &bk, -pair.b_at(lambda).conj());
            lift(&f, pair)
        }
    }
}

/// l2 residual of T_abar f+ = T_bbar f on the coefficient section.
fn section_residual(pair: &PythagoreanPair, f: &HardyFunction, f_plus: &HardyFunction) -> f64 {
    let m = pair.grid().truncation();
    let lhs = toeplitz_conj_apply(pair.a(), f_plus, m);
    let rhs = toeplitz_conj_apply(pair.b(), f, m);
    lhs.iter()
        .zip(&rhs)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// The two evaluation functionals carried by the kernels:
/// <F, k_lambda>_b = f(lambda) + (b(lambda)/a(lambda)) f+(lambda) and
/// <F, b k_lambda>_b = f+(lambda)/a(lambda).
pub fn eval_functionals(e: &HbElement, lambda: Complex64) -> Result<(Complex64, Complex64)> {
    let pair = e.pair();
    pair.grid().check_lambda(lambda)?;
    let alam = guarded_a_at(pair, lambda)?;
    let blam = pair.b_at(lambda);
    let flam = e.f().eval(lambda);
    let fplam = e.f_plus().eval(lambda);
    Ok((flam + blam / alam * fplam, fplam / alam))
}

/// Lift of the product f k_lambda by the closed formula
/// (f k_lambda)+ = f+ k_lambda + (conj(lambda g(lambda))/conj(a(lambda))) k_lambda,
/// avoiding a second solve. The section residual is still computed and
/// recorded as an a posteriori witness.
pub fn product_kernel_lift(e: &HbElement, lambda: Complex64) -> Result<HbElement> {
    let pair = e.pair();
    let grid = pair.grid();
    grid.check_lambda(lambda)?;
    let alam = guarded_a_at(pair, lambda)?;
    let m = grid.truncation();
    let k = HardyFunction::cauchy_kernel(lambda, m);
    let (fk, _) = e.f().product_truncated(&k, m);
    let glam = e.g().eval(lambda);
    let c = (lambda * glam).conj() / alam.conj();
    let (fpk, _) = e.f_plus().product_truncated(&k, m);
    let f_plus = fpk.combine(Complex64::ONE, &k, c);
    let residual = section_residual(pair, &fk, &f_plus);
    Ok(assemble(Arc::clone(pair), fk, f_plus, residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::hb_inner;
    use crate::grid::Grid;
    use crate::pair::mate;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn half_pair() -> Arc<PythagoreanPair> {
        let g = Grid::new(256, 64).unwrap();
        let b = HardyFunction::new(vec![c(0.5, 0.0), c(0.5, 0.0)]);
        Arc::new(mate(&b, g).unwrap())
    }

    #[test]
    fn cauchy_kernel_closed_form_matches_solver() {
        let p = half_pair();
        let lam = c(0.3, -0.4);
        let closed = kernel(lam, KernelKind::Cauchy, &p).unwrap();
        let solved = lift(closed.f(), &p).unwrap();
        let diff = closed
            .combine(Complex64::ONE, &solved, -Complex64::ONE)
            .unwrap();
        assert!(diff.hb_norm() < 1e-8, "gap = {}", diff.hb_norm());
        assert!(closed.lift_residual() < 1e-9);
    }

    #[test]
    fn hb_kernel_reproduces_point_values() {
        let p = half_pair();
        let f = HardyFunction::new(vec![c(2.0, 0.0), Complex64::ONE]);
        let e = lift(&f, &p).unwrap();
        for lam in [c(0.0, 0.0), c(0.5, 0.0), c(0.0, 0.5), c(-0.7, 0.0)] {
            let kb = kernel(lam, KernelKind::Hb, &p).unwrap();
            let got = hb_inner(&e, &kb).unwrap();
            assert!((got - f.eval(lam)).norm() < 1e-8, "lambda = {lam}");
        }
    }

    #[test]
    fn evaluation_functionals_match_kernel_inner_products() {
        let p = half_pair();
        let f = HardyFunction::new(vec![Complex64::ONE, c(0.0, -0.5), c(0.25, 0.0)]);
        let e = lift(&f, &p).unwrap();
        let lam = c(0.4, 0.2);
        let (v1, v2) = eval_functionals(&e, lam).unwrap();
        let k = kernel(lam, KernelKind::Cauchy, &p).unwrap();
        let bk = kernel(lam, KernelKind::BCauchy, &p).unwrap();
        assert!((hb_inner(&e, &k).unwrap() - v1).norm() < 1e-8);
        assert!((hb_inner(&e, &bk).unwrap() - v2).norm() < 1e-8);
    }

    #[test]
    fn explicit_functional_values_for_one() {
        // b = (1+z)/2, f = 1, lambda = 1/2: b/a = 3 there, so both
        // functionals equal 4
        let p = half_pair();
        let e = lift(&HardyFunction::constant(Complex64::ONE), &p).unwrap();
        let (v1, v2) = eval_functionals(&e, c(0.5, 0.0)).unwrap();
        assert!((v1 - c(4.0, 0.0)).norm() < 1e-7);
        assert!((v2 - c(4.0, 0.0)).norm() < 1e-7);
    }

    #[test]
    fn product_lift_agrees_with_direct_solve() {
        let p = half_pair();
        let _ = p.grid().truncation();
        let f = HardyFunction::new(vec![c(2.0, 0.0), Complex64::ONE]);
        let e = lift(&f, &p).unwrap();
        for lam in [c(0.5, 0.0), c(0.0, 0.5), c(-0.7, 0.0)] {
            let fast = product_kernel_lift(&e, lam).unwrap();
            let direct = lift(fast.f(), &p).unwrap();
            let gap = fast
                .f_plus()
                .combine(Complex64::ONE, direct.f_plus(), -Complex64::ONE)
                .norm();
            let rel = gap / direct.f_plus().norm();
            assert!(rel < 1e-6, "lambda = {lam}, rel = {rel}");
        }
        // lambda = 0 collapses to f+ exactly
        let at_zero = product_kernel_lift(&e, Complex64::ZERO).unwrap();
        let gap = at_zero
            .f_plus()
            .combine(Complex64::ONE, e.f_plus(), -Complex64::ONE)
            .norm();
        assert_eq!(gap, 0.0);
    }

    #[test]
    fn lambda_guard_is_enforced() {
        let p = half_pair();
        assert!(matches!(
            kernel(c(0.96, 0.0), KernelKind::Cauchy, &p),
            Err(HbError::Conditioning { .. })
        ));
        let e = lift(&HardyFunction::constant(Complex64::ONE), &p).unwrap();
        assert!(eval_functionals(&e, c(0.0, 0.99)).is_err());
    }

    #[test]
    fn kernel_kind_round_trips_through_strings() {
        for kind in [KernelKind::Cauchy, KernelKind::BCauchy, KernelKind::Hb] {
            assert_eq!(kind.to_string().parse::<KernelKind>().unwrap(), kind);
        }
        assert!("poisson".parse::<KernelKind>().is_err());
    }
}
