//! The verification suite: every advertised identity checked against
//! closed-form oracles or recorded baselines, per symbol preset, with one
//! row per check. The CLI renders the rows as a pass/fail table and the
//! acceptance tests assert on them criterion by criterion.

use crate::circle::{
    analyze, cauchy_boundary_identity_residual, cauchy_transform, distribution_profile,
    riesz_project, BoundaryFunction,
};
use crate::clark::{clark, clark_isometry};
use crate::completeness::{
    classify_one_minus_cb, completeness_experiment, cyclicity_residual, gr_approximant, gr_series,
    named_target, shift_recurrence_check, OneMinusCbCase,
};
use crate::element::{hb_inner, lift};
use crate::error::Result;
use crate::grid::Grid;
use crate::hardy::HardyFunction;
use crate::kernel::{eval_functionals, kernel, product_kernel_lift, KernelKind};
use crate::lambda::LambdaSequence;
use crate::pair::PythagoreanPair;
use crate::preset::Preset;
use crate::shift::finite_section_shift_norms;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// One verified identity.
#[derive(Debug, Clone)]
pub struct CheckRow {
    /// Criterion group, 1 through 13.
    pub criterion: u8,
    pub name: String,
    /// Preset the check ran against, or "global".
    pub preset: String,
    /// The number the verdict was made on (deviation, ratio, mass, ...).
    pub measured: f64,
    pub passed: bool,
}

/// The preset list the acceptance suite runs with.
pub fn standard_presets() -> Vec<Preset> {
    vec![
        Preset::HalfOnePlusZ,
        Preset::Rz(0.3),
        Preset::Rz(0.5),
        Preset::Rz(0.9),
    ]
}

/// Run every check that applies to the given presets. An empty preset list
/// produces an empty table.
pub fn run_suite(presets: &[Preset], grid: Grid, seed: u64) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for preset in presets {
        let pair = preset.pair(grid)?;
        let pname = preset.name();
        mate_oracle(&mut rows, preset, &pair, &pname)?;
        if *preset == Preset::HalfOnePlusZ {
            lift_oracle(&mut rows, &pair, &pname)?;
        }
        key_lemma(&mut rows, &pair, &pname)?;
        reproducing(&mut rows, preset, &pair, &pname)?;
        clark_masses(&mut rows, preset, &pair, &pname)?;
        clark_unitarity(&mut rows, &pair, &pname)?;
        shift_sections(&mut rows, preset, &pair, &pname)?;
        if *preset == Preset::HalfOnePlusZ {
            gr_bounds(&mut rows, &pair, &pname)?;
        }
        recurrence(&mut rows, &pair, &pname)?;
        if *preset == Preset::HalfOnePlusZ {
            cyclicity_curves(&mut rows, &pair, &pname)?;
            completeness_curves(&mut rows, &pair, &pname)?;
        }
        classifier(&mut rows, preset, &pair, &pname)?;
    }
    if !presets.is_empty() {
        cauchy_identities(&mut rows, grid, seed)?;
    }
    Ok(rows)
}

/// Fixed-width pass/fail table over the rows, with a totals line.
pub fn render_table(rows: &[CheckRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<4} {:<6} {:<18} {:<14} {}\n",
        "crit", "status", "preset", "measured", "check"
    ));
    for row in rows {
        out.push_str(&format!(
            "C{:<3} {:<6} {:<18} {:<14.3e} {}\n",
            row.criterion,
            if row.passed { "PASS" } else { "FAIL" },
            row.preset,
            row.measured,
            row.name
        ));
    }
    let passed = rows.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed} of {} checks passed\n", rows.len()));
    out
}

fn push(
    rows: &mut Vec<CheckRow>,
    criterion: u8,
    preset: &str,
    name: impl Into<String>,
    measured: f64,
    passed: bool,
) {
    rows.push(CheckRow {
        criterion,
        name: name.into(),
        preset: preset.to_string(),
        measured,
        passed,
    });
}

fn coeff_gap(f: &HardyFunction, target: &HardyFunction, up_to: usize) -> f64 {
    (0..=up_to)
        .map(|k| (f.coeff(k) - target.coeff(k)).norm())
        .fold(0.0, f64::max)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn panel_functions(m: usize) -> Vec<(String, HardyFunction)> {
    vec![
        ("1".into(), HardyFunction::constant(Complex64::ONE)),
        (
            "2+z".into(),
            HardyFunction::new(vec![c(2.0, 0.0), Complex64::ONE]),
        ),
        ("k0.3".into(), HardyFunction::cauchy_kernel(c(0.3, 0.0), m)),
    ]
}

// criterion 1: the mate against its closed forms

fn mate_oracle(
    rows: &mut Vec<CheckRow>,
    preset: &Preset,
    pair: &Arc<PythagoreanPair>,
    pname: &str,
) -> Result<()> {
    let m = pair.grid().truncation();
    match *preset {
        Preset::HalfOnePlusZ => {
            let target = HardyFunction::new(vec![c(0.5, 0.0), c(-0.5, 0.0)]);
            let gap = coeff_gap(pair.a(), &target, m);
            push(
                rows,
                1,
                pname,
                "mate of (1+z)/2 equals (1-z)/2",
                gap,
                gap <= 1e-6,
            );
        }
        Preset::Rz(r) => {
            let target = HardyFunction::constant(c((1.0 - r * r).sqrt(), 0.0));
            let gap = coeff_gap(pair.a(), &target, m);
            push(
                rows,
                1,
                pname,
                format!("mate of {r}z is the constant sqrt(1-{r}^2)"),
                gap,
                gap <= 1e-8,
            );
        }
    }
    Ok(())
}

// criterion 2: lift closed forms for b = (1+z)/2

fn lift_oracle(rows: &mut Vec<CheckRow>, pair: &Arc<PythagoreanPair>, pname: &str) -> Result<()> {
    let m = pair.grid().truncation();
    let one = HardyFunction::constant(Complex64::ONE);
    let e1 = lift(&one, pair)?;
    let gap_fp = coeff_gap(e1.f_plus(), &one, m);
    push(
        rows,
        2,
        pname,
        "lift of 1 has 1+ = 1",
        gap_fp,
        gap_fp <= 1e-8,
    );
    let gap_g = coeff_gap(e1.g(), &one, m);
    push(
        rows,
        2,
        pname,
        "lift of 1 has boundary witness g = 1",
        gap_g,
        gap_g <= 1e-8,
    );
    let gap_n = (e1.hb_norm_sqr() - 2.0).abs();
    push(
        rows,
        2,
        pname,
        "squared norm of 1 equals 2",
        gap_n,
        gap_n <= 1e-8,
    );

    let eb = lift(&pair.b().clone(), pair)?;
    let bp = HardyFunction::new(vec![c(1.5, 0.0), c(0.5, 0.0)]);
    let gap_bp = coeff_gap(eb.f_plus(), &bp, m);
    push(
        rows,
        2,
        pname,
        "lift of b gives b+ = (3+z)/2",
        gap_bp,
        gap_bp <= 1e-6,
    );

    let mut worst = 0.0f64;
    for (_, f) in panel_functions(m).into_iter().chain([
        ("b".to_string(), pair.b().clone()),
        ("z".to_string(), HardyFunction::monomial(1)),
    ]) {
        worst = worst.max(lift(&f, pair)?.lift_residual());
    }
    push(
        rows,
        2,
        pname,
        "section residual across the lift panel",
        worst,
        worst <= 1e-8,
    );
    Ok(())
}

// criterion 3: closed-form product lift against the direct solve

fn key_lemma(rows: &mut Vec<CheckRow>, pair: &Arc<PythagoreanPair>, pname: &str) -> Result<()> {
    let m = pair.grid().truncation();
    let lambdas = [c(0.0, 0.0), c(0.5, 0.0), c(0.0, 0.5), c(-0.7, 0.0)];
    for (fname, f) in panel_functions(m) {
        let e = lift(&f, pair)?;
        for lam in lambdas {
            let fast = product_kernel_lift(&e, lam)?;
            let direct = lift(fast.f(), pair)?;
            let gap = fast
                .f_plus()
                .combine(Complex64::ONE, direct.f_plus(), -Complex64::ONE)
                .norm();
            if lam == Complex64::ZERO {
                push(
                    rows,
                    3,
                    pname,
                    format!("product lift of {fname} at lambda=0 degenerates exactly"),
                    gap,
                    gap == 0.0,
                );
            } else {
                let rel = gap / direct.f_plus().norm().max(1e-300);
                push(
                    rows,
                    3,
                    pname,
                    format!("product lift of {fname} at lambda={lam}"),
                    rel,
                    rel <= 1e-6,
                );
            }
        }
    }
    Ok(())
}

// criterion 4: kernel inner products against the evaluation functionals

fn reproducing(
    rows: &mut Vec<CheckRow>,
    preset: &Preset,
    pair: &Arc<PythagoreanPair>,
    pname: &str,
) -> Result<()> {
    let m = pair.grid().truncation();
    let lambdas = [c(0.0, 0.0), c(0.5, 0.0), c(0.0, 0.5), c(-0.7, 0.0)];
    for (fname, f) in panel_functions(m) {
        let e = lift(&f, pair)?;
        for lam in lambdas {
            let (v1, v2) = eval_functionals(&e, lam)?;
            let k = kernel(lam, KernelKind::Cauchy, pair)?;
            let bk = kernel(lam, KernelKind::BCauchy, pair)?;
            let d1 = (hb_inner(&e, &k)? - v1).norm();
            let d2 = (hb_inner(&e, &bk)? - v2).norm();
            let gap = d1.max(d2);
            push(
                rows,
                4,
                pname,
                format!("kernel functionals for {fname} at lambda={lam}"),
                gap,
                gap <= 1e-6,
            );
        }
    }
    if *preset == Preset::HalfOnePlusZ {
        let e = lift(&HardyFunction::constant(Complex64::ONE), pair)?;
        let (v1, v2) = eval_functionals(&e, c(0.5, 0.0))?;
        let gap = (v1 - c(4.0, 0.0)).norm().max((v2 - c(4.0, 0.0)).norm());
        push(
            rows,
            4,
            pname,
            "both functionals of 1 equal 4 at lambda=1/2",
            gap,
            gap <= 1e-6,
        );
    }
    Ok(())
}

// criterion 5: Clark mass bookkeeping

fn clark_masses(
    rows: &mut Vec<CheckRow>,
    preset: &Preset,
    pair: &Arc<PythagoreanPair>,
    pname: &str,
) -> Result<()> {
    let cd = clark(Complex64::ONE, pair)?;
    match *preset {
        Preset::HalfOnePlusZ => {
            let m = pair.grid().truncation();
            let gap = coeff_gap(&cd.f_alpha, &HardyFunction::constant(Complex64::ONE), m);
            push(rows, 5, pname, "F_1 is the constant 1", gap, gap <= 1e-8);
            let dt = (cd.total_mass - 3.0).abs();
            push(
                rows,
                5,
                pname,
                "total mass at alpha=1 equals 3",
                dt,
                dt <= 1e-9,
            );
            let da = (cd.ac_mass - 1.0).abs();
            push(
                rows,
                5,
                pname,
                "density mean at alpha=1 equals 1",
                da,
                da <= 1e-6,
            );
            let ds = (cd.singular_mass - 2.0).abs();
            push(
                rows,
                5,
                pname,
                "singular mass at alpha=1 equals 2",
                ds,
                ds <= 1e-6,
            );
        }
        Preset::Rz(_) => {
            let s = cd.singular_mass.abs();
            push(
                rows,
                5,
                pname,
                "measure at alpha=1 is absolutely continuous",
                s,
                s <= 1e-6,
            );
        }
    }
    Ok(())
}

// criterion 6: the Clark isometry on kernel combinations

fn clark_unitarity(
    rows: &mut Vec<CheckRow>,
    pair: &Arc<PythagoreanPair>,
    pname: &str,
) -> Result<()> {
    let combos: Vec<(&str, Vec<(Complex64, Complex64)>)> = vec![
        ("1", vec![(Complex64::ONE, Complex64::ZERO)]),
        ("k0.3", vec![(Complex64::ONE, c(0.3, 0.0))]),
        (
            "k0.3-k-0.3",
            vec![
                (Complex64::ONE, c(0.3, 0.0)),
                (-Complex64::ONE, c(-0.3, 0.0)),
            ],
        ),
        ("k0.5i", vec![(Complex64::ONE, c(0.0, 0.5))]),
    ];
    for alpha in [Complex64::ONE, -Complex64::ONE, c(0.0, 1.0)] {
        for (hname, combo) in &combos {
            let chk = clark_isometry(alpha, combo, pair)?;
            let rel = (chk.hb_norm - chk.h2_norm).abs() / chk.h2_norm.max(1e-300);
            push(
                rows,
                6,
                pname,
                format!("isometry for h={hname} at alpha={alpha}"),
                rel,
                rel <= 1e-6,
            );
        }
    }
    Ok(())
}

// criterion 7: finite sections of the shift against the closed-form norm

fn shift_sections(
    rows: &mut Vec<CheckRow>,
    preset: &Preset,
    pair: &Arc<PythagoreanPair>,
    pname: &str,
) -> Result<()> {
    let m = pair.grid().truncation();
    let cf = pair.shift_norm();
    if *preset == Preset::HalfOnePlusZ {
        let gap = (cf - 3f64.sqrt()).abs();
        push(
            rows,
            7,
            pname,
            "closed-form shift norm equals sqrt(3)",
            gap,
            gap <= 1e-9,
        );
    }
    // lifting z^{d+1} requires d < m
    let ds: Vec<usize> = [32usize, 64, 128, 256]
        .into_iter()
        .filter(|&d| d < m)
        .collect();
    if ds.is_empty() {
        return Ok(());
    }
    let sections = finite_section_shift_norms(pair, &ds)?;
    let max_inc_violation = sections
        .windows(2)
        .map(|w| w[0] - w[1])
        .fold(f64::NEG_INFINITY, f64::max);
    push(
        rows,
        7,
        pname,
        "section norms nondecreasing in the degree",
        max_inc_violation,
        max_inc_violation <= 1e-9,
    );
    let last = *sections.last().unwrap();
    let d_last = *ds.last().unwrap();
    push(
        rows,
        7,
        pname,
        format!("section d={d_last} inside [closed-0.05, closed+1e-3]"),
        last - cf,
        last >= cf - 0.05 && last <= cf + 1e-3,
    );
    Ok(())
}

// criterion 8: the lacunary approximant bound

fn gr_bounds(rows: &mut Vec<CheckRow>, pair: &Arc<PythagoreanPair>, pname: &str) -> Result<()> {
    let m = pair.grid().truncation();
    let hs = vec![
        (
            "1".to_string(),
            lift(&HardyFunction::constant(Complex64::ONE), pair)?,
        ),
        (
            "khb0.4".to_string(),
            kernel(c(0.4, 0.0), KernelKind::Hb, pair)?,
        ),
    ];
    for n in 1..=3usize {
        for r in [0.1, 0.2] {
            for (hname, h) in &hs {
                let chk = gr_approximant(n, r, h)?;
                push(
                    rows,
                    8,
                    pname,
                    format!("approximant bound n={n} r={r} h={hname}"),
                    chk.measured - chk.allowed,
                    chk.within_bound,
                );
            }
        }
    }
    for r in [0.1, 0.2] {
        let series = gr_series(1, r, m)?;
        let rational = HardyFunction::from_ratio(
            &[Complex64::ZERO, Complex64::ONE],
            &[Complex64::ONE, c(-r, 0.0)],
            m,
        )?;
        let gap = series
            .combine(Complex64::ONE, &rational, -Complex64::ONE)
            .norm();
        push(
            rows,
            8,
            pname,
            format!("n=1 series telescopes to z/(1-{r}z)"),
            gap,
            gap <= 1e-10,
        );
    }
    Ok(())
}

// criterion 9: the backward recurrence for shifted kernel multiples

fn recurrence(rows: &mut Vec<CheckRow>, pair: &Arc<PythagoreanPair>, pname: &str) -> Result<()> {
    let m = pair.grid().truncation();
    for (fname, f) in panel_functions(m) {
        let e = lift(&f, pair)?;
        for lam in [c(0.5, 0.0), c(0.0, 0.3), c(-0.8, 0.0)] {
            let defect = shift_recurrence_check(&e, lam)?;
            let rel = defect / e.hb_norm().max(1e-300);
            push(
                rows,
                9,
                pname,
                format!("shift recurrence for {fname} at lambda={lam}"),
                rel,
                rel <= 1e-7,
            );
        }
    }
    Ok(())
}

// criterion 10: cyclicity residual curves

fn cyclicity_curves(
    rows: &mut Vec<CheckRow>,
    pair: &Arc<PythagoreanPair>,
    pname: &str,
) -> Result<()> {
    let ds = [8usize, 16, 32, 64];
    let z = lift(&HardyFunction::monomial(1), pair)?;
    let mut z_min = f64::INFINITY;
    for d in ds {
        z_min = z_min.min(cyclicity_residual(&z, d)?.residual);
    }
    push(
        rows,
        10,
        pname,
        "z stays non-cyclic through d=64",
        z_min,
        z_min >= 1.0 - 1e-9,
    );

    let zi = lift(
        &HardyFunction::new(vec![c(0.0, -1.0), Complex64::ONE]),
        pair,
    )?;
    let curve: Vec<f64> = ds
        .iter()
        .map(|&d| cyclicity_residual(&zi, d).map(|s| s.residual))
        .collect::<Result<_>>()?;
    let min_drop = curve
        .windows(2)
        .map(|w| w[0] - w[1])
        .fold(f64::INFINITY, f64::min);
    push(
        rows,
        10,
        pname,
        "z-i residuals strictly decrease over d=8..64",
        min_drop,
        min_drop > 0.0,
    );
    let ratio = curve[3] / curve[0];
    push(
        rows,
        10,
        pname,
        "z-i residual(64)/residual(8) at most 0.5",
        ratio,
        ratio <= 0.5,
    );
    Ok(())
}

// criterion 11: completeness decay and the Blaschke stall control

fn completeness_curves(
    rows: &mut Vec<CheckRow>,
    pair: &Arc<PythagoreanPair>,
    pname: &str,
) -> Result<()> {
    let ns = [1usize, 2, 3, 5, 8, 12, 16, 19, 20, 25, 30, 40];
    let family = lift(&HardyFunction::new(vec![c(2.0, 0.0), Complex64::ONE]), pair)?;
    let targets = vec![("1".to_string(), named_target("1", pair)?)];
    let seq = LambdaSequence::harmonic(40, pair.grid().lambda_max())?;
    let rep = completeness_experiment(&family, &targets, &seq, &ns, "harmonic decay")?;
    let curve = rep.residual_curve("1");
    let max_inc = curve
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    push(
        rows,
        11,
        pname,
        "harmonic-family residuals of 1 nonincreasing",
        max_inc,
        max_inc <= 1e-10,
    );
    let ratio = curve.last().unwrap() / curve[0];
    push(
        rows,
        11,
        pname,
        "harmonic-family final/initial at most 0.5",
        ratio,
        ratio <= 0.5,
    );

    let seq_b = LambdaSequence::geometric(0.5, 40, pair.grid().lambda_max())?;
    let one = named_target("1", pair)?;
    let targets_b = vec![("z".to_string(), named_target("z", pair)?)];
    let rep_b = completeness_experiment(&one, &targets_b, &seq_b, &ns, "blaschke control")?;
    let floor = *rep_b.residual_curve("z").last().unwrap();
    push(
        rows,
        11,
        pname,
        "blaschke-sequence family stalls above 1.06 on z",
        floor,
        floor >= 1.06,
    );
    Ok(())
}

// criterion 12: the 1 - cb cyclicity classifier

fn classifier(
    rows: &mut Vec<CheckRow>,
    preset: &Preset,
    pair: &Arc<PythagoreanPair>,
    pname: &str,
) -> Result<()> {
    match *preset {
        Preset::HalfOnePlusZ => {
            let v = classify_one_minus_cb(Complex64::ZERO, pair)?;
            push(
                rows,
                12,
                pname,
                "c=0 is cyclic outright",
                v.value,
                v.cyclic && v.case == OneMinusCbCase::ModulusLt1,
            );
            let v = classify_one_minus_cb(Complex64::ONE, pair)?;
            push(
                rows,
                12,
                pname,
                "c=1 blocked by singular mass 2",
                v.value,
                !v.cyclic
                    && v.case == OneMinusCbCase::UnimodularSingular
                    && (v.value - 2.0).abs() <= 1e-6,
            );
            let v = classify_one_minus_cb(c(2.0, 0.0), pair)?;
            push(
                rows,
                12,
                pname,
                "c=2 flagged non-outer (1-2b = -z)",
                v.value,
                !v.cyclic && v.case == OneMinusCbCase::ModulusGt1NotOuter,
            );
        }
        Preset::Rz(_) => {
            let v = classify_one_minus_cb(Complex64::ONE, pair)?;
            push(
                rows,
                12,
                pname,
                "c=1 cyclic via vanishing singular mass",
                v.value,
                v.cyclic && v.case == OneMinusCbCase::UnimodularAc && v.value <= 1e-6,
            );
        }
    }
    Ok(())
}

// criterion 13: Cauchy transform identities and the weak-type profile

fn cauchy_identities(rows: &mut Vec<CheckRow>, grid: Grid, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = grid.size();
    let m = grid.truncation();
    let lam = c(0.37, -0.21);
    let mut worst_boundary = 0.0f64;
    let mut worst_pairing = 0.0f64;
    let band = 32i64.min(m as i64);
    for _ in 0..5 {
        // random trigonometric polynomial of degree 32 (clamped by the
        // truncation on very small grids)
        let mut modes = vec![Complex64::ZERO; 2 * m + 1];
        for kk in -band..=band {
            modes[(kk + m as i64) as usize] =
                c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        }
        let f = BoundaryFunction::from_modes(modes, grid)?;
        worst_boundary = worst_boundary.max(cauchy_boundary_identity_residual(&f));

        // pairing <f, g k_lambda>_2 = C(f conj g)(lambda) for analytic g
        let gcoef: Vec<Complex64> = (0..=band)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let gfun = HardyFunction::new(gcoef);
        let gs = gfun.samples(n);
        let prod: Vec<Complex64> = f
            .samples()
            .iter()
            .zip(&gs)
            .map(|(x, y)| x * y.conj())
            .collect();
        let prod_bf = analyze(prod, grid)?;
        let rhs = cauchy_transform(&prod_bf, lam)?;
        let (gk, _) = gfun.product_truncated(&HardyFunction::cauchy_kernel(lam, m), m);
        let lhs = riesz_project(&f).inner(&gk);
        worst_pairing = worst_pairing.max((lhs - rhs).norm());
    }
    push(
        rows,
        13,
        "global",
        "boundary identity on random trig polynomials",
        worst_boundary,
        worst_boundary <= 1e-9,
    );
    push(
        rows,
        13,
        "global",
        "kernel pairing equals the transform of f conj(g)",
        worst_pairing,
        worst_pairing <= 1e-9,
    );

    let sup = kolmogorov_profile_sup(grid.size())?;
    push(
        rows,
        13,
        "global",
        "weak-type profile of the capped inverse-root transform stays under 0.93",
        sup,
        sup <= 0.93,
    );
    Ok(())
}

/// sup over thresholds t of t * |{ |C f| > t }| for the capped test function
/// f = min(|1 - zeta|^{-1/2}, sqrt(N)); bounded uniformly in the resolution.
fn kolmogorov_profile_sup(n: usize) -> Result<f64> {
    let grid = Grid::new(n, n / 4)?;
    let points = grid.points();
    let cap = (n as f64).sqrt();
    let samples: Vec<Complex64> = (0..n)
        .map(|j| {
            if j == 0 {
                c(cap, 0.0)
            } else {
                let d = (Complex64::ONE - points[j]).norm();
                c(d.powf(-0.5).min(cap), 0.0)
            }
        })
        .collect();
    let transform = riesz_project(&analyze(samples, grid)?);
    let h = analyze(transform.samples(n), grid)?;
    let max_abs = h.samples().iter().map(|s| s.norm()).fold(0.0, f64::max);
    let ts = geomspace(0.05, max_abs * 1.0001, 200);
    let prof = distribution_profile(&h, &ts)?;
    Ok(prof
        .thresholds
        .iter()
        .zip(&prof.masses)
        .map(|(t, lam)| t * lam)
        .fold(0.0, f64::max))
}

fn geomspace(a: f64, b: f64, k: usize) -> Vec<f64> {
    let la = a.ln();
    let lb = b.ln();
    (0..k)
        .map(|i| (la + (lb - la) * i as f64 / (k - 1) as f64).exp())
        .collect()
}
