use std::f64::consts::{FRAC_PI_2, PI};
use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use varmin_core::certify::{self, Verdict};
use varmin_core::euler_lagrange::{
    analyze_structure, c1_mismatch, euler_residual, three_interval_system, StructureReport,
};
use varmin_core::fourier::{default_grid, rayleigh_j};
use varmin_core::isoperimetric::{bound_check, nl_constraints, perturb_project, richardson_limit};
use varmin_core::minimizer::{
    cauchy_schwarz_bound, constrained_quadratic_baseline, minimize_rayleigh, wirtinger_baseline, MinimizeOptions,
};
use varmin_core::{FourierSeries, Multipliers, PiecewiseSolution, MINIMUM_VALUE};

use crate::report::Report;
use crate::{CertifyArgs, EulerArgs, MinimizeArgs, ReportArgs, ShapeArgs, UsageError, VerifyArgs};

fn config<T: serde::Serialize>(args: &T) -> Value {
    serde_json::to_value(args).expect("arguments serialize")
}

fn read_series(path: &Path) -> Result<FourierSeries, UsageError> {
    let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn structure_checks(report: &mut Report, s: &StructureReport, length_tol: f64, mult_tol: f64) {
    report.at_least("nodal_intervals_at_least_4", s.partition.count() as f64, 4.0);
    let dev = s.lengths.iter().fold(0.0f64, |a, l| a.max((l - FRAC_PI_2).abs()));
    report.flag("exactly_4_nodal_intervals", s.partition.count() == 4);
    report.at_most("max_length_deviation_from_half_pi", dev, length_tol);
    let m = &s.multipliers;
    report.at_most("abs_lambda0", m.lambda0.abs(), mult_tol);
    report.at_most("abs_lambda1", m.lambda1.abs(), mult_tol);
    report.at_most("abs_lambda2", m.lambda2.abs(), mult_tol);
}

pub fn minimize(a: &MinimizeArgs) -> Result<Report, UsageError> {
    let opts = MinimizeOptions {
        max_mode: a.modes,
        grid_size: a.grid,
        restarts: a.restarts,
        max_iters: a.max_iters,
        grad_tol: a.grad_tol,
        seed: a.seed,
        warm_start: !a.no_warm_start,
        ..MinimizeOptions::default()
    };
    let res = minimize_rayleigh(&opts)?;
    let mut report = Report::new("minimize", config(a));
    report.at_most("abs_value_minus_expect", (res.value - a.expect).abs(), a.tol);
    let lower = cauchy_schwarz_bound();
    let upper = 3.0 * PI / 16.0;
    report.at_least("value_above_cauchy_schwarz_bound", res.value, lower);
    report.at_most("value_below_cos2_quotient", res.value, upper);
    report.flag("wirtinger_baseline_is_1", wirtinger_baseline(a.modes)? == 1.0);
    report.flag("quadratic_baseline_is_3", constrained_quadratic_baseline(a.modes)? == 3.0);
    let structure = analyze_structure(&res.minimizer, a.grid);
    match &structure {
        Ok(s) => structure_checks(&mut report, s, a.structure_tol, a.structure_tol),
        Err(_) => report.flag("nodal_structure_available", false),
    }
    if let Some(path) = &a.save_series {
        fs::write(path, serde_json::to_string(&res.minimizer)?)?;
    }
    if let Some(path) = &a.samples {
        let mut file = fs::File::create(path)?;
        res.minimizer.sample(a.grid)?.write_csv(&mut file)?;
    }
    report.result = json!({
        "value": res.value,
        "target": MINIMUM_VALUE,
        "bounds": { "cauchy_schwarz": lower, "cos2": upper },
        "converged": res.converged,
        "iterations": res.iterations,
        "grad_norm": res.grad_norm,
        "restart_index": res.restart_index,
        "restarts": res.restarts,
        "structure": structure.ok(),
    });
    Ok(report)
}

pub fn verify_closed_form(a: &VerifyArgs) -> Result<Report, UsageError> {
    let m = MINIMUM_VALUE;
    let pw = PiecewiseSolution::closed_form(m);
    let ints = pw.integrals(a.grid);
    let mult = Multipliers::trivial(m);
    let mut report = Report::new("verify-closed-form", config(a));
    report.at_most("abs_j_minus_minimum", (ints.rayleigh() - m).abs(), a.tol);
    report.at_most("abs_mean", ints.mean.abs(), 1e-10);
    report.at_most("abs_first_cos_moment", ints.cos1.abs(), 1e-10);
    report.at_most("abs_first_sin_moment", ints.sin1.abs(), 1e-10);
    report.at_most("abs_l1_minus_one", (ints.l1 - 1.0).abs(), 1e-10);
    let normalization = 16.0 * m * m * (2.0 - FRAC_PI_2).powi(2);
    report.at_most("abs_normalization_identity", (normalization - 1.0).abs(), 1e-10);
    let residual = euler_residual(&pw, &mult);
    let c1 = c1_mismatch(&pw);
    report.at_most("euler_residual", residual, 1e-12);
    report.at_most("c1_mismatch", c1, 1e-10);
    let quarter = three_interval_system([FRAC_PI_2; 4], 0.0, 1e-9)?;
    report.at_most("three_interval_det_equal_lengths", quarter.det.abs(), 1e-12);

    // the same function through the spectral pipeline
    let series = pw.fourier_series(a.modes);
    let grid = default_grid(a.modes).max(4 * a.modes);
    let j_series = rayleigh_j(&series, grid)?;
    let structure = analyze_structure(&series, grid)?;
    report.at_most("spectral_abs_j_minus_minimum", (j_series - m).abs(), 1e-4);
    structure_checks(&mut report, &structure, 1e-4, 1e-4);
    report.at_most("spectral_max_relation_residual", structure.max_relation_residual(), 1e-4);
    report.result = json!({
        "minimum": m,
        "j": ints.rayleigh(),
        "integrals": ints,
        "euler_residual": residual,
        "c1_mismatch": c1,
        "pieces": pw.pieces,
        "spectral": { "modes": a.modes, "grid": grid, "j": j_series, "structure": structure },
    });
    Ok(report)
}

pub fn euler(a: &EulerArgs) -> Result<Report, UsageError> {
    let series = read_series(&a.input)?;
    let grid = a.grid.unwrap_or_else(|| default_grid(series.max_mode()));
    let s = analyze_structure(&series, grid)?;
    let mut report = Report::new("euler", config(a));
    report.at_least("nodal_intervals_at_least_4", s.partition.count() as f64, 4.0);
    report.at_most("max_relation_residual", s.max_relation_residual(), a.tol);
    report.flag("multiplier_signs_admissible", s.multipliers.signs_admissible());
    report.result = serde_json::to_value(&s)?;
    Ok(report)
}

pub fn certify(a: &CertifyArgs) -> Result<Report, UsageError> {
    // resolve ids before any scanning
    let specs = if a.lemma == "all" { certify::catalog() } else { vec![certify::lookup(&a.lemma)?] };
    let mut report = Report::new("certify", config(a));
    let mut out = Vec::with_capacity(specs.len());
    for spec in &specs {
        let r = certify::certify(spec, a.step.unwrap_or(spec.default_step))?;
        report.flag(&format!("{}_certified", r.id), r.verdict == Verdict::Certified);
        out.push(r);
    }
    report.result = json!({ "reports": out });
    Ok(report)
}

pub fn shape(a: &ShapeArgs) -> Result<Report, UsageError> {
    let (v, target_label) = match &a.input {
        Some(path) => (read_series(path)?.project_constraints(), "input"),
        None => (PiecewiseSolution::closed_form(MINIMUM_VALUE).fourier_series(a.modes).project_constraints(), "closed_form"),
    };
    let rich = richardson_limit(&v, a.epsilon, a.grid)?;
    let bounds = bound_check();
    let mut report = Report::new("shape", config(a));
    report.at_most("abs_limit_minus_target", (rich.limit - rich.target).abs(), a.tol);
    if a.input.is_none() {
        report.at_most("abs_limit_minus_pi_over_4_m", (rich.limit - bounds.pi4m).abs(), a.tol);
    }
    report.flag("pi_over_4_m_exceeds_0.406", bounds.threshold_ok);
    report.flag("cauchy_schwarz_fallback_insufficient", !bounds.fallback_ok);
    let mut area = 0.0f64;
    let mut constraints = Vec::new();
    for &e in &rich.epsilons {
        let c = nl_constraints(&perturb_project(&v, e, a.grid)?);
        area = area.max(c[0].abs());
        constraints.push(c);
    }
    report.at_most("area_constraint_residual", area, 1e-12);
    report.result = json!({
        "direction": target_label,
        "richardson": rich,
        "bound_check": bounds,
        "constraints": constraints,
    });
    Ok(report)
}

pub fn aggregate(a: &ReportArgs) -> Result<Report, UsageError> {
    let mut report = Report::new("report", config(a));
    let mut rows = Vec::new();
    for path in &a.inputs {
        let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        let r: Report = serde_json::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        report.flag(&format!("{}:{}", path.display(), r.command), r.passed);
        rows.push(json!({
            "path": path,
            "command": r.command,
            "passed": r.passed,
            "schema_version": r.schema_version,
            "failing": r.failing().map(|c| c.name.clone()).collect::<Vec<_>>(),
        }));
    }
    report.result = json!({ "inputs": rows });
    Ok(report)
}
