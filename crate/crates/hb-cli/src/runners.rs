//! One runner per experiment kind. Each builds its inputs from the
//! resolved configuration, runs the core computation, and emits
//! report.csv + summary.txt (and debug dumps when asked) through the
//! provenance-tagging reporter.

use crate::config::Resolved;
use crate::output::Reporter;
use crate::CliError;
use hb_core::{
    a_density_experiment, clark, classify_one_minus_cb, cyclicity_residual, eval_functionals,
    gr_approximant, kernel, lift, mate, run_suite, HardyFunction, HbElement, KernelKind,
    LambdaSequence, Preset, PythagoreanPair,
};
use num_complex::Complex64;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

fn domain(e: hb_core::HbError) -> CliError {
    CliError::Domain(e.to_string())
}

fn cpx(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn coeffs_from(list: &[[f64; 2]]) -> Vec<Complex64> {
    list.iter().map(|&p| cpx(p)).collect()
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// The symbol b, from either a preset name or explicit coefficients.
fn build_pair(res: &Resolved) -> Result<(Arc<PythagoreanPair>, String), CliError> {
    if let Some(name) = &res.cfg.preset {
        let preset = Preset::from_str(name).map_err(|e| CliError::Validation(e.to_string()))?;
        let pair = preset.pair(res.grid).map_err(domain)?;
        return Ok((pair, preset.name()));
    }
    if let Some(num) = &res.cfg.b_numerator {
        let num = coeffs_from(num);
        let b = match &res.cfg.b_denominator {
            Some(den) => HardyFunction::from_ratio(&num, &coeffs_from(den), res.grid.truncation())
                .map_err(domain)?,
            None => HardyFunction::new(num),
        };
        let desc = format!("rational b, degree {}", b.degree());
        let pair = Arc::new(mate(&b, res.grid).map_err(domain)?);
        return Ok((pair, desc));
    }
    Err(CliError::Validation(
        "a symbol is required: set \"preset\" or \"b_numerator\" in the config".into(),
    ))
}

/// Input function for lift / cyclicity / gr; defaults to the constant 1.
fn input_f(res: &Resolved) -> HardyFunction {
    match &res.cfg.f {
        Some(list) => HardyFunction::new(coeffs_from(list)),
        None => HardyFunction::constant(Complex64::ONE),
    }
}

fn element_csv(e: &HbElement) -> String {
    let m = e.pair().grid().truncation();
    let kmax = e
        .f()
        .degree()
        .max(e.f_plus().degree())
        .max(e.g().degree())
        .max(8)
        .min(m);
    let mut out = String::from("index,f_re,f_im,fplus_re,fplus_im,g_re,g_im\n");
    for k in 0..=kmax {
        let (f, fp, g) = (e.f().coeff(k), e.f_plus().coeff(k), e.g().coeff(k));
        out.push_str(&format!(
            "{k},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}\n",
            f.re, f.im, fp.re, fp.im, g.re, g.im
        ));
    }
    out
}

fn lambda_sequence(res: &Resolved) -> Result<LambdaSequence, CliError> {
    let cap = res.grid.lambda_max();
    let count = res.cfg.lambda_count.unwrap_or(40);
    let generator = res.cfg.lambda_generator.as_deref().unwrap_or("harmonic");
    match generator {
        "harmonic" => LambdaSequence::harmonic(count, cap).map_err(domain),
        "geometric" => {
            LambdaSequence::geometric(res.cfg.lambda_q.unwrap_or(0.5), count, cap).map_err(domain)
        }
        "constant" => {
            let x = cpx(res.cfg.lambda_x.unwrap_or([0.3, 0.0]));
            LambdaSequence::constant(x, count, cap).map_err(domain)
        }
        "explicit" => {
            let points = res.cfg.lambda_points.as_ref().ok_or_else(|| {
                CliError::Validation("lambda_generator \"explicit\" needs lambda_points".into())
            })?;
            LambdaSequence::explicit(coeffs_from(points), cap).map_err(domain)
        }
        other => Err(CliError::Validation(format!(
            "unknown lambda_generator {other:?}; use harmonic, geometric, constant, or explicit"
        ))),
    }
}

pub fn run_verify(res: &Resolved, out: &Path, cli_presets: &[String]) -> Result<usize, CliError> {
    let names: Vec<String> = if cli_presets.is_empty() {
        res.cfg.presets.clone().unwrap_or_default()
    } else {
        cli_presets.to_vec()
    };
    let presets: Vec<Preset> = names
        .iter()
        .map(|n| Preset::from_str(n).map_err(|e| CliError::Validation(e.to_string())))
        .collect::<Result<_, _>>()?;

    let rows = run_suite(&presets, res.grid, res.seed).map_err(domain)?;

    let mut rep = Reporter::new(out, "verify", &res.hash);
    let mut csv = String::from("criterion,preset,status,measured,name\n");
    for row in &rows {
        csv.push_str(&format!(
            "{},{},{},{:.12e},{}\n",
            row.criterion,
            row.preset,
            if row.passed { "pass" } else { "fail" },
            row.measured,
            csv_quote(&row.name)
        ));
    }
    rep.write_report_csv(&csv)?;

    let mut failed = 0;
    for crit in 1..=13u8 {
        let group: Vec<_> = rows.iter().filter(|r| r.criterion == crit).collect();
        if group.is_empty() {
            continue;
        }
        let bad = group.iter().filter(|r| !r.passed).count();
        failed += bad;
        rep.note(format!(
            "criterion {crit}: {} ({} checks)",
            if bad == 0 { "PASS" } else { "FAIL" },
            group.len()
        ));
    }
    rep.note(format!(
        "{} of {} checks passed over {} presets",
        rows.len() - failed,
        rows.len(),
        presets.len()
    ));
    rep.write_summary()?;
    Ok(failed)
}

pub fn run_mate(res: &Resolved, out: &Path, debug: bool) -> Result<(), CliError> {
    let (pair, desc) = build_pair(res)?;
    let mut rep = Reporter::new(out, "mate", &res.hash);

    let kmax = pair
        .b()
        .degree()
        .max(pair.a().degree())
        .max(8)
        .min(res.grid.truncation());
    let mut csv = String::from("index,b_re,b_im,a_re,a_im\n");
    for k in 0..=kmax {
        let (b, a) = (pair.b().coeff(k), pair.a().coeff(k));
        csv.push_str(&format!(
            "{k},{:.12e},{:.12e},{:.12e},{:.12e}\n",
            b.re, b.im, a.re, a.im
        ));
    }
    rep.write_report_csv(&csv)?;

    rep.note(format!("symbol: {desc}"));
    rep.note(format!(
        "grid: N = {}, M = {}",
        res.grid.size(),
        res.grid.truncation()
    ));
    rep.note(format!("a(0) = {:.12e}", pair.a_at(Complex64::ZERO).re));
    rep.note(format!(
        "pythagorean deviation = {:.12e}",
        pair.pyth_deviation()
    ));
    rep.note(format!("shift norm = {:.12e}", pair.shift_norm()));
    rep.note(format!(
        "samples inside the eps zone: {} of {}",
        pair.eps_zone().len(),
        res.grid.size()
    ));
    rep.write_summary()?;

    if debug {
        let mut dump = String::from("index,b_re,b_im,a_re,a_im\n");
        for (j, (b, a)) in pair.b_samples().iter().zip(pair.a_samples()).enumerate() {
            dump.push_str(&format!(
                "{j},{:.12e},{:.12e},{:.12e},{:.12e}\n",
                b.re, b.im, a.re, a.im
            ));
        }
        rep.write_debug_csv("boundary_samples.csv", &dump)?;
    }
    Ok(())
}

pub fn run_lift(res: &Resolved, out: &Path, debug: bool) -> Result<(), CliError> {
    let (pair, desc) = build_pair(res)?;
    let f = input_f(res);
    let e = lift(&f, &pair).map_err(domain)?;

    let mut rep = Reporter::new(out, "lift", &res.hash);
    rep.write_report_csv(&element_csv(&e))?;
    rep.note(format!("symbol: {desc}"));
    rep.note(format!("f degree = {}", f.degree()));
    rep.note(format!("hb_norm = {:.12e}", e.hb_norm()));
    rep.note(format!("hb_norm_sqr = {:.12e}", e.hb_norm_sqr()));
    rep.note(format!("lift_residual = {:.12e}", e.lift_residual()));
    rep.note(format!("g_leakage = {:.12e}", e.g_leakage()));
    rep.note(format!(
        "boundary_residual = {:.12e}",
        e.boundary_residual()
    ));
    rep.write_summary()?;

    if debug {
        let n = res.grid.size();
        let samples = e.f().samples(n);
        let mut dump = String::from("index,f_re,f_im\n");
        for (j, s) in samples.iter().enumerate() {
            dump.push_str(&format!("{j},{:.12e},{:.12e}\n", s.re, s.im));
        }
        rep.write_debug_csv("f_samples.csv", &dump)?;
    }
    Ok(())
}

pub fn run_kernel(res: &Resolved, out: &Path) -> Result<(), CliError> {
    let (pair, desc) = build_pair(res)?;
    let kind_name = res.cfg.kernel_kind.as_deref().unwrap_or("hb");
    let kind = KernelKind::from_str(kind_name).map_err(|e| CliError::Validation(e.to_string()))?;
    let lambda = cpx(res.cfg.lambda_point.ok_or_else(|| {
        CliError::Validation("kernel needs lambda_point = [re, im] in the config".into())
    })?);
    let e = kernel(lambda, kind, &pair).map_err(domain)?;
    let (v1, v2) = eval_functionals(&e, lambda).map_err(domain)?;

    let mut rep = Reporter::new(out, "kernel", &res.hash);
    rep.write_report_csv(&element_csv(&e))?;
    rep.note(format!("symbol: {desc}"));
    rep.note(format!("kind = {kind}, lambda = {lambda}"));
    rep.note(format!("hb_norm = {:.12e}", e.hb_norm()));
    rep.note(format!("value functional at lambda = {v1}"));
    rep.note(format!("fplus functional at lambda = {v2}"));
    rep.note(format!("lift_residual = {:.12e}", e.lift_residual()));
    rep.write_summary()?;
    Ok(())
}

pub fn run_clark(res: &Resolved, out: &Path, debug: bool) -> Result<(), CliError> {
    let (pair, desc) = build_pair(res)?;
    let alpha = cpx(res.cfg.alpha.unwrap_or([1.0, 0.0]));
    let data = clark(alpha, &pair).map_err(domain)?;

    let mut rep = Reporter::new(out, "clark", &res.hash);
    let f0 = data.f_alpha.coeff(0);
    let csv = format!(
        "quantity,value\nalpha_re,{:.12e}\nalpha_im,{:.12e}\ntotal_mass,{:.12e}\nac_mass,{:.12e}\nsingular_mass,{:.12e}\nf_alpha0_re,{:.12e}\nf_alpha0_im,{:.12e}\n",
        alpha.re, alpha.im, data.total_mass, data.ac_mass, data.singular_mass, f0.re, f0.im
    );
    rep.write_report_csv(&csv)?;
    rep.note(format!("symbol: {desc}"));
    rep.note(format!("alpha = {alpha}"));
    rep.note(format!("total_mass = {:.12e}", data.total_mass));
    rep.note(format!("ac_mass = {:.12e}", data.ac_mass));
    rep.note(format!("singular_mass = {:.12e}", data.singular_mass));
    rep.write_summary()?;

    if debug {
        let mut dump = String::from("index,density\n");
        for (j, d) in data.density.iter().enumerate() {
            dump.push_str(&format!("{j},{d:.12e}\n"));
        }
        rep.write_debug_csv("density.csv", &dump)?;
    }
    Ok(())
}

pub fn run_cyclicity(res: &Resolved, out: &Path) -> Result<(), CliError> {
    let (pair, desc) = build_pair(res)?;
    let f = input_f(res);
    let e = lift(&f, &pair).map_err(domain)?;
    let degrees = res
        .cfg
        .degrees
        .clone()
        .unwrap_or_else(|| vec![8, 16, 32, 64]);

    let mut rep = Reporter::new(out, "cyclicity", &res.hash);
    let mut csv = String::from("d,residual,gram_condition,flags\n");
    let mut curve = Vec::new();
    for &d in &degrees {
        let sr = cyclicity_residual(&e, d).map_err(domain)?;
        let flags = if sr.ill_conditioned {
            "ill_conditioned"
        } else {
            ""
        };
        csv.push_str(&format!(
            "{d},{:.12e},{:.12e},{flags}\n",
            sr.residual, sr.gram_condition
        ));
        curve.push(sr.residual);
    }
    rep.write_report_csv(&csv)?;
    rep.note(format!("symbol: {desc}"));
    rep.note(format!(
        "f degree = {}, hb_norm = {:.12e}",
        f.degree(),
        e.hb_norm()
    ));
    if let (Some(&first), Some(&last)) = (curve.first(), curve.last()) {
        rep.note(format!(
            "residual {first:.6e} -> {last:.6e} over d = {degrees:?} (ratio {:.4})",
            last / first.max(1e-300)
        ));
    }
    rep.write_summary()?;
    Ok(())
}

pub fn run_completeness(res: &Resolved, out: &Path) -> Result<(), CliError> {
    let (pair, desc) = build_pair(res)?;
    let seq = lambda_sequence(res)?;
    let default_ns = vec![1, 2, 3, 5, 8, 12, 16, 19, 20, 25, 30, 40];
    let ns: Vec<usize> = res
        .cfg
        .degrees
        .clone()
        .unwrap_or(default_ns)
        .into_iter()
        .filter(|&n| n <= seq.len())
        .collect();
    if ns.is_empty() {
        return Err(CliError::Validation(
            "no usable family sizes: every entry of degrees exceeds the sequence length".into(),
        ));
    }
    let targets = res
        .cfg
        .targets
        .clone()
        .unwrap_or_else(|| vec!["1".into(), "z".into(), "b".into()]);

    let report = a_density_experiment(&pair, &seq, &ns, &targets).map_err(domain)?;

    let mut rep = Reporter::new(out, "completeness", &res.hash);
    rep.write_report_csv(&report.to_csv())?;
    rep.note(format!("symbol: {desc}"));
    rep.note(format!("{} (cap {})", report.label, report.cap));
    let sums: Vec<String> = report
        .blaschke_sums
        .iter()
        .map(|s| format!("{s:.6}"))
        .collect();
    rep.note(format!("blaschke partial sums: {}", sums.join(", ")));
    for verdict in &report.verdicts {
        rep.note(verdict);
    }
    rep.write_summary()?;
    Ok(())
}

pub fn run_classify(res: &Resolved, out: &Path) -> Result<(), CliError> {
    let (pair, desc) = build_pair(res)?;
    let c = cpx(res
        .cfg
        .c
        .ok_or_else(|| CliError::Validation("classify needs c = [re, im] in the config".into()))?);
    let v = classify_one_minus_cb(c, &pair).map_err(domain)?;

    let mut rep = Reporter::new(out, "classify", &res.hash);
    let csv = format!(
        "key,value\ncase,{}\ncyclic,{}\nvalue,{:.12e}\n",
        v.case, v.cyclic, v.value
    );
    rep.write_report_csv(&csv)?;
    rep.note(format!("symbol: {desc}"));
    rep.note(format!("c = {c}"));
    rep.note(format!("case = {}, cyclic = {}", v.case, v.cyclic));
    rep.note(format!("evidence: {}", v.evidence));
    rep.write_summary()?;
    Ok(())
}

pub fn run_gr(res: &Resolved, out: &Path) -> Result<(), CliError> {
    let (pair, desc) = build_pair(res)?;
    let n = res.cfg.gr_n.ok_or_else(|| {
        CliError::Validation("gr needs gr_n (the lacunary gap) in the config".into())
    })?;
    let r = res
        .cfg
        .gr_r
        .ok_or_else(|| CliError::Validation("gr needs gr_r in (0, 1) in the config".into()))?;
    let h = lift(&input_f(res), &pair).map_err(domain)?;
    let chk = gr_approximant(n, r, &h).map_err(domain)?;

    let mut rep = Reporter::new(out, "gr", &res.hash);
    let csv = format!(
        "n,r,measured,allowed,within_bound\n{n},{r:.12e},{:.12e},{:.12e},{}\n",
        chk.measured, chk.allowed, chk.within_bound
    );
    rep.write_report_csv(&csv)?;
    rep.note(format!("symbol: {desc}"));
    rep.note(format!("series degree = {}", chk.series.degree()));
    rep.note(format!("bound factor = {:.12e}", chk.bound_factor));
    rep.note(format!(
        "measured = {:.12e}, allowed = {:.12e}, within bound: {}",
        chk.measured, chk.allowed, chk.within_bound
    ));
    rep.write_summary()?;
    Ok(())
}
