//! Completeness and cyclicity experiments: distances from target elements
//! to spans of kernel-multiple families, polynomial-multiple families, and
//! the bookkeeping around them (g_r approximants, the shift recurrence, the
//! b/f boundedness hypothesis, and the 1 - cb cyclicity classifier).

use crate::clark::clark;
use crate::element::{lift, HbElement};
use crate::error::{HbError, Result};
use crate::hardy::HardyFunction;
use crate::kernel::product_kernel_lift;
use crate::lambda::LambdaSequence;
use crate::outer::outer_defect;
use crate::pair::PythagoreanPair;
use crate::report::{CompletenessReport, ReportRow};
use crate::shift::shift_apply;
use crate::span::{elem_vec, gram_condition, mgs_project, ILL_CONDITION_LIMIT};
use num_complex::Complex64;
use std::sync::Arc;

/// Result of one span-distance computation.
#[derive(Debug, Clone, Copy)]
pub struct SpanResidual {
    /// H(b) distance from the target to the span.
    pub residual: f64,
    pub gram_condition: f64,
    /// Condition number beyond the reporting limit.
    pub ill_conditioned: bool,
    /// Independent directions kept by the orthogonalizer.
    pub kept: usize,
}

/// Distance from target to span{ f k_lambda : lambda in points[..n] }.
pub fn span_residual(
    target: &HbElement,
    family: &HbElement,
    points: &[Complex64],
    n: usize,
) -> Result<SpanResidual> {
    if n == 0 || n > points.len() {
        return Err(HbError::InvalidInput(format!(
            "family size {n} out of range for {} points",
            points.len()
        )));
    }
    if !target.same_space(family) {
        return Err(HbError::PairMismatch);
    }
    let els: Vec<HbElement> = points[..n]
        .iter()
        .map(|&lam| product_kernel_lift(family, lam))
        .collect::<Result<_>>()?;
    project_onto(&els, target)
}

fn project_onto(els: &[HbElement], target: &HbElement) -> Result<SpanResidual> {
    let m = target.pair().grid().truncation();
    let cond = gram_condition(els)?;
    let vecs: Vec<Vec<Complex64>> = els.iter().map(|e| elem_vec(e, m)).collect();
    let (residual, kept) = mgs_project(&vecs, &elem_vec(target, m));
    Ok(SpanResidual {
        residual,
        gram_condition: cond,
        ill_conditioned: cond > ILL_CONDITION_LIMIT,
        kept,
    })
}

/// Distance from 1 to span{ z^k f : k <= d }: the quantity whose decay to
/// zero characterizes cyclicity of f.
pub fn cyclicity_residual(f_elem: &HbElement, d: usize) -> Result<SpanResidual> {
    let pair = f_elem.pair();
    let m = pair.grid().truncation();
    let f = f_elem.f();
    let mut els = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let (zkf, dropped) = HardyFunction::monomial(k).product_truncated(f, m);
        if dropped >= 1e-12 {
            return Err(HbError::DegreeOverflow {
                needed: k + f.degree(),
                max: m,
            });
        }
        els.push(lift(&zkf, pair)?);
    }
    let one = lift(&HardyFunction::constant(Complex64::ONE), pair)?;
    project_onto(&els, &one)
}

/// Residual table for targets against growing prefixes of the kernel-multiple
/// family { f k_lambda }. Kernel elements are lifted once per point; each
/// prefix gets a fresh orthogonalization so the rows are exactly the
/// individual span distances.
pub fn completeness_experiment(
    family: &HbElement,
    targets: &[(String, HbElement)],
    seq: &LambdaSequence,
    ns: &[usize],
    label: &str,
) -> Result<CompletenessReport> {
    if targets.is_empty() {
        return Err(HbError::InvalidInput("no targets given".into()));
    }
    if ns.is_empty() || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(HbError::InvalidInput(
            "family sizes must be nonempty and strictly increasing".into(),
        ));
    }
    let max_n = *ns.last().unwrap();
    if max_n > seq.len() {
        return Err(HbError::InvalidInput(format!(
            "family size {max_n} exceeds the {} available points",
            seq.len()
        )));
    }
    for (_, tgt) in targets {
        if !tgt.same_space(family) {
            return Err(HbError::PairMismatch);
        }
    }
    let m = family.pair().grid().truncation();
    let els: Vec<HbElement> = seq.points()[..max_n]
        .iter()
        .map(|&lam| product_kernel_lift(family, lam))
        .collect::<Result<_>>()?;
    let vecs: Vec<Vec<Complex64>> = els.iter().map(|e| elem_vec(e, m)).collect();
    let tvecs: Vec<(String, Vec<Complex64>)> = targets
        .iter()
        .map(|(name, tgt)| (name.clone(), elem_vec(tgt, m)))
        .collect();
    let mut rows = Vec::with_capacity(ns.len() * targets.len());
    for &n in ns {
        let cond = gram_condition(&els[..n])?;
        let mut flags = Vec::new();
        if cond > ILL_CONDITION_LIMIT {
            flags.push("ill_conditioned".to_string());
        }
        if seq.capped_within(n) {
            flags.push("capped".to_string());
        }
        for (name, tvec) in &tvecs {
            let (residual, _) = mgs_project(&vecs[..n], tvec);
            rows.push(ReportRow {
                n,
                target: name.clone(),
                residual,
                gram_condition: cond,
                flags: flags.clone(),
            });
        }
    }
    let mut verdicts = Vec::new();
    for (name, _) in targets {
        let curve: Vec<f64> = rows
            .iter()
            .filter(|r| &r.target == name)
            .map(|r| r.residual)
            .collect();
        let first = curve.first().copied().unwrap_or(f64::NAN);
        let last = curve.last().copied().unwrap_or(f64::NAN);
        let ratio = if first > 0.0 { last / first } else { f64::NAN };
        verdicts.push(format!(
            "target {name}: residual {first:.6e} -> {last:.6e} (ratio {ratio:.4})"
        ));
    }
    Ok(CompletenessReport {
        label: label.to_string(),
        cap: seq.cap(),
        rows,
        blaschke_sums: seq.partial_blaschke_sums()[..max_n].to_vec(),
        verdicts,
    })
}

/// A target element referred to by name in configs and reports.
pub fn named_target(name: &str, pair: &Arc<PythagoreanPair>) -> Result<HbElement> {
    match name {
        "1" => lift(&HardyFunction::constant(Complex64::ONE), pair),
        "z" => lift(&HardyFunction::monomial(1), pair),
        "b" => lift(&pair.b().clone(), pair),
        "a" => lift(&pair.a().clone(), pair),
        other => Err(HbError::InvalidInput(format!(
            "unknown target {other:?} (expected 1, z, b or a)"
        ))),
    }
}

/// Density experiment for aH^2: runs the completeness table with family
/// generator a against the named targets.
pub fn a_density_experiment(
    pair: &Arc<PythagoreanPair>,
    seq: &LambdaSequence,
    ns: &[usize],
    target_names: &[String],
) -> Result<CompletenessReport> {
    let family = lift(&pair.a().clone(), pair)?;
    let targets: Vec<(String, HbElement)> = target_names
        .iter()
        .map(|name| Ok((name.clone(), named_target(name, pair)?)))
        .collect::<Result<_>>()?;
    completeness_experiment(
        &family,
        &targets,
        seq,
        ns,
        "a-density experiment: family { a k_lambda }",
    )
}

/// The lacunary approximant g_r = sum_{l>=1} r^{(l-1)n} z^{ln} truncated at
/// max_degree.
pub fn gr_series(n: usize, r: f64, max_degree: usize) -> Result<HardyFunction> {
    if n == 0 || !(0.0 < r && r < 1.0) {
        return Err(HbError::InvalidInput(format!(
            "need n >= 1 and r in (0, 1), got n = {n}, r = {r}"
        )));
    }
    let mut coeffs = vec![Complex64::ZERO; max_degree + 1];
    let mut l = 1usize;
    while l * n <= max_degree {
        coeffs[l * n] = Complex64::new(r.powi(((l - 1) * n) as i32), 0.0);
        l += 1;
    }
    Ok(HardyFunction::new(coeffs))
}

/// One verification of the approximation bound
/// ||(g_r - z^n) h||_b <= [r^n s^{2n} / (1 - r^n s^n)] ||h||_b, s = ||S_b||.
#[derive(Debug, Clone)]
pub struct GrCheck {
    pub series: HardyFunction,
    /// The bracketed factor above.
    pub bound_factor: f64,
    /// Measured ||(g_r - z^n) h||_b.
    pub measured: f64,
    /// bound_factor * ||h||_b.
    pub allowed: f64,
    pub within_bound: bool,
}

/// Check the g_r bound against a concrete h in H(b).
///
/// Fails with `Divergence` when r ||S_b|| >= 1: the geometric series behind
/// the bound does not converge and no approximation statement is made.
pub fn gr_approximant(n: usize, r: f64, h: &HbElement) -> Result<GrCheck> {
    let pair = h.pair();
    let m = pair.grid().truncation();
    let s = pair.shift_norm();
    if r * s >= 1.0 {
        return Err(HbError::Divergence { product: r * s });
    }
    let series = gr_series(n, r, m)?;
    let mut diff = series.clone();
    diff = diff.combine(Complex64::ONE, &HardyFunction::monomial(n), -Complex64::ONE);
    let (prod, _) = diff.product_truncated(h.f(), m);
    let e = lift(&prod, pair)?;
    let rn = r.powi(n as i32);
    let sn = s.powi(n as i32);
    let bound_factor = rn * sn * sn / (1.0 - rn * sn);
    let measured = e.hb_norm();
    let allowed = bound_factor * h.hb_norm();
    Ok(GrCheck {
        series,
        bound_factor,
        measured,
        allowed,
        within_bound: measured <= allowed + 1e-8,
    })
}

/// H(b) norm of S_b(f k_lambda) + (1/conj(lambda)) (f - f k_lambda), which
/// vanishes identically; the measured value is pure numerical defect.
pub fn shift_recurrence_check(e: &HbElement, lambda: Complex64) -> Result<f64> {
    if lambda.norm() < 1e-15 {
        return Err(HbError::InvalidInput(
            "the recurrence needs lambda != 0".into(),
        ));
    }
    let pk = product_kernel_lift(e, lambda)?;
    let shifted = shift_apply(&pk)?;
    let diff = e.combine(Complex64::ONE, &pk, -Complex64::ONE)?;
    let rec = shifted.combine(Complex64::ONE, &diff, Complex64::ONE / lambda.conj())?;
    Ok(rec.hb_norm())
}

/// Grid evidence for the hypothesis b/f in L^infinity.
#[derive(Debug, Clone, Copy)]
pub struct BfBoundedCheck {
    /// sup |b/f| over the base grid (points where |f| clears the floor).
    pub sup_coarse: f64,
    /// The same on a doubled grid.
    pub sup_fine: f64,
    /// sup_fine / sup_coarse; a bounded quotient is refinement-stable,
    /// while a pole doubles roughly with the resolution.
    pub ratio: f64,
    pub bounded: bool,
}

pub fn hypothesis_bf_bounded(f: &HardyFunction, pair: &PythagoreanPair) -> Result<BfBoundedCheck> {
    let grid = pair.grid();
    let eps = grid.eps_floor();
    let mut sups = [0.0f64; 2];
    for (i, npts) in [grid.size(), 2 * grid.size()].into_iter().enumerate() {
        let bs = pair.b().samples(npts);
        let fs = f.samples(npts);
        let mut sup = f64::NEG_INFINITY;
        for j in 0..npts {
            let af = fs[j].norm();
            if af > eps {
                sup = sup.max(bs[j].norm() / af);
            }
        }
        if !sup.is_finite() {
            return Err(HbError::InvalidInput(
                "f vanishes on the whole grid; the quotient b/f is undefined".into(),
            ));
        }
        sups[i] = sup;
    }
    let ratio = sups[1] / sups[0];
    Ok(BfBoundedCheck {
        sup_coarse: sups[0],
        sup_fine: sups[1],
        ratio,
        bounded: ratio <= 1.5,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OneMinusCbCase {
    ModulusLt1,
    UnimodularAc,
    UnimodularSingular,
    ModulusGt1Outer,
    ModulusGt1NotOuter,
}

impl std::fmt::Display for OneMinusCbCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OneMinusCbCase::ModulusLt1 => "modulus_lt_1",
            OneMinusCbCase::UnimodularAc => "unimodular_ac",
            OneMinusCbCase::UnimodularSingular => "unimodular_singular",
            OneMinusCbCase::ModulusGt1Outer => "modulus_gt_1_outer",
            OneMinusCbCase::ModulusGt1NotOuter => "modulus_gt_1_not_outer",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub case: OneMinusCbCase,
    pub cyclic: bool,
    /// The number the verdict rests on: the infimum bound 1 - |c|, the
    /// singular mass, or the outer defect, depending on the case.
    pub value: f64,
    pub evidence: String,
}

/// Cyclicity verdict for 1 - cb.
///
/// |c| < 1 settles it outright (inf |1 - cb| >= 1 - |c| > 0); |c| = 1
/// consults the Clark measure at conj(c); |c| > 1 consults the outer defect
/// of 1 - cb.
pub fn classify_one_minus_cb(c: Complex64, pair: &PythagoreanPair) -> Result<Classification> {
    let modulus = c.norm();
    if modulus < 1.0 - 1e-12 {
        let value = 1.0 - modulus;
        return Ok(Classification {
            case: OneMinusCbCase::ModulusLt1,
            cyclic: true,
            value,
            evidence: format!("inf |1 - cb| >= {value:.6}"),
        });
    }
    if (modulus - 1.0).abs() <= 1e-12 {
        let cd = clark(c.conj(), pair)?;
        let ac = cd.singular_mass <= 1e-3 * cd.total_mass;
        return Ok(Classification {
            case: if ac {
                OneMinusCbCase::UnimodularAc
            } else {
                OneMinusCbCase::UnimodularSingular
            },
            cyclic: ac,
            value: cd.singular_mass,
            evidence: format!(
                "singular_mass = {:.6e} of total {:.6e}",
                cd.singular_mass, cd.total_mass
            ),
        });
    }
    let fc = HardyFunction::constant(Complex64::ONE).combine(Complex64::ONE, pair.b(), -c);
    let defect = outer_defect(&fc, pair.grid())?;
    let outer = defect >= -1e-4;
    Ok(Classification {
        case: if outer {
            OneMinusCbCase::ModulusGt1Outer
        } else {
            OneMinusCbCase::ModulusGt1NotOuter
        },
        cyclic: outer,
        value: defect,
        evidence: format!("outer_defect = {defect:.6e}"),
    })
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

    fn rz_pair() -> Arc<PythagoreanPair> {
        let g = Grid::new(256, 64).unwrap();
        let b = HardyFunction::new(vec![Complex64::ZERO, c(0.5, 0.0)]);
        Arc::new(mate(&b, g).unwrap())
    }

    #[test]
    fn span_residuals_shrink_with_more_points() {
        let p = half_pair();
        let family = lift(&HardyFunction::new(vec![c(2.0, 0.0), Complex64::ONE]), &p).unwrap();
        let target = named_target("1", &p).unwrap();
        let seq = LambdaSequence::harmonic(10, 0.95).unwrap();
        let mut prev = f64::INFINITY;
        for n in [1, 3, 6, 10] {
            let sp = span_residual(&target, &family, seq.points(), n).unwrap();
            assert!(sp.residual <= prev + 1e-10, "n = {n}");
            prev = sp.residual;
        }
        assert!(prev < 0.9);
    }

    #[test]
    fn one_point_residual_matches_the_two_by_two_gram() {
        // dist(1, span{A})^2 = ||1||^2 - |<1, A>|^2/||A||^2
        let p = rz_pair();
        let family = lift(&p.a().clone(), &p).unwrap();
        let target = named_target("1", &p).unwrap();
        let pk = product_kernel_lift(&family, Complex64::ZERO).unwrap();
        let n1 = hb_inner(&target, &target).unwrap().re;
        let aa = hb_inner(&pk, &pk).unwrap().re;
        let x = hb_inner(&target, &pk).unwrap();
        let oracle = (n1 - x.norm_sqr() / aa).max(0.0).sqrt();
        let sp = span_residual(&target, &family, &[Complex64::ZERO], 1).unwrap();
        assert!((sp.residual - oracle).abs() < 1e-10);
    }

    #[test]
    fn monomial_is_far_from_one_but_z_minus_i_is_not() {
        let p = half_pair();
        let z = lift(&HardyFunction::monomial(1), &p).unwrap();
        let sp = cyclicity_residual(&z, 8).unwrap();
        assert!(sp.residual >= 1.0 - 1e-9);

        let zi = lift(&HardyFunction::new(vec![c(0.0, -1.0), Complex64::ONE]), &p).unwrap();
        let r4 = cyclicity_residual(&zi, 4).unwrap().residual;
        let r8 = cyclicity_residual(&zi, 8).unwrap().residual;
        assert!(r8 < r4 && r4 < 1.0);
    }

    #[test]
    fn experiment_rows_are_ordered_and_flagged() {
        let p = half_pair();
        let family = lift(&HardyFunction::new(vec![c(2.0, 0.0), Complex64::ONE]), &p).unwrap();
        let targets = vec![
            ("1".to_string(), named_target("1", &p).unwrap()),
            ("z".to_string(), named_target("z", &p).unwrap()),
        ];
        let seq = LambdaSequence::harmonic(25, 0.95).unwrap();
        let rep = completeness_experiment(&family, &targets, &seq, &[2, 5, 25], "demo").unwrap();
        assert_eq!(rep.rows.len(), 6);
        assert_eq!(rep.rows[0].n, 2);
        assert_eq!(rep.rows[0].target, "1");
        assert_eq!(rep.rows[1].target, "z");
        assert_eq!(rep.rows[4].n, 25);
        // the clamp fires at n = 19, repeating 0.95: dependent family
        let last = &rep.rows[5];
        assert!(last.flags.iter().any(|f| f == "capped"));
        assert!(last.flags.iter().any(|f| f == "ill_conditioned"));
        // monotone per target regardless of conditioning
        for t in ["1", "z"] {
            let curve = rep.residual_curve(t);
            assert!(curve.windows(2).all(|w| w[1] <= w[0] + 1e-10));
        }
        assert_eq!(rep.blaschke_sums.len(), 25);
    }

    #[test]
    fn a_density_covers_named_targets() {
        let p = rz_pair();
        let seq = LambdaSequence::harmonic(8, 0.95).unwrap();
        let rep = a_density_experiment(
            &p,
            &seq,
            &[1, 4, 8],
            &["1".to_string(), "z".to_string(), "b".to_string()],
        )
        .unwrap();
        assert_eq!(rep.rows.len(), 9);
        let curve = rep.residual_curve("1");
        assert!(curve.last().unwrap() < &curve[0]);
    }

    #[test]
    fn gr_series_and_bound() {
        // n = 1: the series telescopes to z/(1 - rz)
        let m = 64;
        for r in [0.1, 0.2] {
            let s = gr_series(1, r, m).unwrap();
            let rat = HardyFunction::from_ratio(
                &[Complex64::ZERO, Complex64::ONE],
                &[Complex64::ONE, c(-r, 0.0)],
                m,
            )
            .unwrap();
            let gap = s.combine(Complex64::ONE, &rat, -Complex64::ONE).norm();
            assert!(gap < 1e-10);
        }

        let p = half_pair();
        let one = named_target("1", &p).unwrap();
        let chk = gr_approximant(2, 0.1, &one).unwrap();
        assert!(
            chk.within_bound,
            "measured {} allowed {}",
            chk.measured, chk.allowed
        );

        // sqrt(3) * 0.6 > 1: the bound's series diverges
        assert!(matches!(
            gr_approximant(1, 0.6, &one),
            Err(HbError::Divergence { .. })
        ));
    }

    #[test]
    fn recurrence_defect_is_tiny() {
        let p = half_pair();
        let e = lift(&HardyFunction::new(vec![c(2.0, 0.0), Complex64::ONE]), &p).unwrap();
        // at this truncation the kernel tail of lambda = -0.8 saturates the
        // shift gate, so the strongest pole here is -0.6; the verify suite
        // covers -0.8 at the full grid
        for lam in [c(0.5, 0.0), c(0.0, 0.3), c(-0.6, 0.0)] {
            let defect = shift_recurrence_check(&e, lam).unwrap();
            assert!(
                defect <= 1e-7 * e.hb_norm(),
                "lambda = {lam}, defect = {defect}"
            );
        }
        assert!(shift_recurrence_check(&e, Complex64::ZERO).is_err());
    }

    #[test]
    fn bf_quotient_detects_boundary_zeros_of_f() {
        let p = half_pair();
        let ok = hypothesis_bf_bounded(&HardyFunction::new(vec![c(2.0, 0.0), Complex64::ONE]), &p)
            .unwrap();
        assert!(ok.bounded, "ratio = {}", ok.ratio);

        let self_quot = hypothesis_bf_bounded(p.b(), &p).unwrap();
        assert!(self_quot.bounded);

        // z - i vanishes at a grid point; the quotient has a genuine pole
        let pole =
            hypothesis_bf_bounded(&HardyFunction::new(vec![c(0.0, -1.0), Complex64::ONE]), &p)
                .unwrap();
        assert!(!pole.bounded, "ratio = {}", pole.ratio);
    }

    #[test]
    fn classifier_hits_all_documented_cases() {
        let ph = half_pair();
        let prz = rz_pair();

        let small = classify_one_minus_cb(Complex64::ZERO, &ph).unwrap();
        assert_eq!(small.case, OneMinusCbCase::ModulusLt1);
        assert!(small.cyclic);

        let singular = classify_one_minus_cb(Complex64::ONE, &ph).unwrap();
        assert_eq!(singular.case, OneMinusCbCase::UnimodularSingular);
        assert!(!singular.cyclic);
        assert!((singular.value - 2.0).abs() < 1e-6);

        let ac = classify_one_minus_cb(Complex64::ONE, &prz).unwrap();
        assert_eq!(ac.case, OneMinusCbCase::UnimodularAc);
        assert!(ac.cyclic);
        assert!(ac.value.abs() < 1e-6);

        // 1 - 2b = -z for the half pair: inner, so maximally non-outer
        let inner = classify_one_minus_cb(c(2.0, 0.0), &ph).unwrap();
        assert_eq!(inner.case, OneMinusCbCase::ModulusGt1NotOuter);
        assert!(!inner.cyclic);
        assert_eq!(inner.value, f64::NEG_INFINITY);

        let outer = classify_one_minus_cb(c(2.0, 0.0), &prz).unwrap();
        assert_eq!(outer.case, OneMinusCbCase::ModulusGt1Outer);
        assert!(outer.cyclic);
    }
}
