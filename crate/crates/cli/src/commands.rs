use qthermo::accounting::SIGMA_FLOOR;
use qthermo::{
    free_energy_difference, gibbs_state, jarzynski_average, otto_carnot_deficit, propagator,
    relative_entropy, run_carnot_traced, run_otto_traced, sweep, thermalize, thermalize_exact,
    tpm_distribution, unitary_propagate, von_neumann_entropy, BathTemperature, CycleReport,
    DensityOperator, DriveSchedule, Error, QubitHamiltonian, Sample, StrokeRecord, SweepPoint,
    TpmProtocol, Trajectory,
};
use serde_json::{json, Value};

use crate::config::{
    CycleParams, Invocation, JarzynskiConfig, RelaxConfig, RunConfig, SweepConfig,
};
use crate::output::{Cell, Outcome, Table};
use crate::CliError;

/// Tolerance of the Jarzynski equality and of `⟨W⟩ ≥ ΔF`.
pub const JARZYNSKI_TOL: f64 = 1e-10;
/// Tolerance of the deficit identity.
pub const DEFICIT_TOL: f64 = 1e-9;
/// Allowed increase of the relative entropy to the Gibbs state per sample.
pub const SPOHN_SLACK: f64 = 1e-10;

fn core_error(e: Error) -> CliError {
    match e {
        Error::Domain(_) | Error::StepSize(_) => CliError::Config(e.to_string()),
        Error::Stroke { ref source, .. }
            if matches!(**source, Error::Domain(_) | Error::StepSize(_)) =>
        {
            CliError::Config(e.to_string())
        }
        _ => CliError::Invariant(e.to_string()),
    }
}

pub fn execute(inv: &Invocation) -> Result<Outcome, CliError> {
    match &inv.config {
        RunConfig::Otto(c) => {
            let run = run_otto_traced(&c.spec()).map_err(core_error)?;
            let (closure, ret) = c.integration.tolerances();
            let eta_formula = 1.0 - c.params.wc / c.params.wh;
            cycle_outcome(
                &run.report,
                run.full_trajectory().map_err(core_error)?,
                closure,
                ret,
                Some(eta_formula),
            )
        }
        RunConfig::Carnot(c) => {
            let run = run_carnot_traced(&c.spec()).map_err(core_error)?;
            cycle_outcome(
                &run.report,
                run.full_trajectory().map_err(core_error)?,
                1e-9,
                1e-8,
                None,
            )
        }
        RunConfig::Deficit(p) => deficit(p),
        RunConfig::Jarzynski(c) => jarzynski(c),
        RunConfig::Relax(c) => relax(c),
        RunConfig::Sweep(c) => sweep_grid(c, inv.jobs),
    }
}

const STROKE_COLUMNS: [&str; 8] = ["index", "label", "W", "Q", "dE", "dS", "Sigma", "T_bath"];

fn stroke_table(strokes: &[StrokeRecord]) -> Table {
    let mut t = Table::new(&STROKE_COLUMNS);
    for (i, s) in strokes.iter().enumerate() {
        t.push(vec![
            (i + 1).into(),
            s.label.as_str().into(),
            s.work.into(),
            s.heat.into(),
            s.delta_energy.into(),
            s.delta_entropy.into(),
            s.entropy_production.into(),
            s.bath_temperature.into(),
        ]);
    }
    t
}

fn cycle_outcome(
    r: &CycleReport,
    traj: Trajectory,
    closure_tol: f64,
    return_tol: f64,
    otto_formula: Option<f64>,
) -> Result<Outcome, CliError> {
    let sigma = r.total_entropy_production();
    let mut result = json!({
        "w_ext": r.extracted_work,
        "eta": r.efficiency,
        "eta_carnot": r.carnot_efficiency,
        "is_engine": r.is_engine,
        "q_hot": r.heat_hot,
        "q_cold": r.heat_cold,
        "closure_residual": r.closure_residual,
        "state_return_error": r.state_return_error,
        "total_entropy_production": sigma,
        "strokes": r.strokes,
    });
    if let Some(eta) = otto_formula {
        result["eta_otto_formula"] = json!(eta);
    }
    Ok(Outcome {
        result,
        summary: vec![
            ("w_ext", r.extracted_work),
            ("eta", r.efficiency),
            ("eta_carnot", r.carnot_efficiency),
            ("q_hot", r.heat_hot),
            ("q_cold", r.heat_cold),
            ("closure_residual", r.closure_residual),
            ("state_return_error", r.state_return_error),
            ("total_entropy_production", sigma),
        ],
        table: stroke_table(&r.strokes),
        trajectory: Some(traj),
        violations: r.violations(closure_tol, return_tol),
    })
}

fn deficit(p: &CycleParams) -> Result<Outcome, CliError> {
    let spec = qthermo::OttoSpec::new(p.tc, p.th, p.wc, p.wh, qthermo::OttoMode::Exact)
        .map_err(core_error)?;
    let d = otto_carnot_deficit(&spec).map_err(core_error)?;
    let mut violations = Vec::new();
    if d.residual > DEFICIT_TOL {
        violations.push(format!(
            "deficit identity: residual {:.3e} exceeds {DEFICIT_TOL:e}",
            d.residual
        ));
    }
    if d.dissipation < SIGMA_FLOOR {
        violations.push(format!("dissipation {:.3e} < 0", d.dissipation));
    }
    let fields = [
        ("w_otto", d.w_otto),
        ("w_matched_carnot", d.w_matched_carnot),
        ("dissipation", d.dissipation),
        ("residual", d.residual),
        ("delta_s_hot", d.delta_s_hot),
        ("sigma_hot", d.sigma_hot),
        ("sigma_cold", d.sigma_cold),
    ];
    let mut table = Table::new(&fields.map(|(k, _)| k));
    table.push(fields.iter().map(|&(_, x)| x.into()).collect());
    Ok(Outcome {
        result: serde_json::to_value(d).expect("report serializes"),
        summary: fields.to_vec(),
        table,
        trajectory: None,
        violations,
    })
}

fn jarzynski(c: &JarzynskiConfig) -> Result<Outcome, CliError> {
    let h_i = QubitHamiltonian::new(c.wi, c.delta).map_err(core_error)?;
    let h_f = QubitHamiltonian::new(c.wf, c.delta).map_err(core_error)?;
    let (protocol, trajectory) = if c.duration > 0.0 {
        let (wi, wf, delta, duration) = (c.wi, c.wf, c.delta, c.duration);
        let drive = DriveSchedule::new(
            duration,
            c.dt.min(duration),
            move |t| wi + (wf - wi) * t / duration,
            move |_| delta,
        )
        .map_err(core_error)?;
        let u = propagator(&drive).map_err(core_error)?;
        let p = TpmProtocol::new(c.beta, h_i, h_f, u).map_err(core_error)?;
        let traj = unitary_propagate(&p.initial_state(), &drive).map_err(core_error)?;
        (p, traj)
    } else {
        let p = TpmProtocol::sudden_quench(c.beta, h_i, h_f).map_err(core_error)?;
        let rho = p.initial_state();
        let traj = Trajectory::new(vec![
            Sample {
                time: 0.0,
                state: rho,
                hamiltonian: h_i,
            },
            Sample {
                time: qthermo::cycles::QUENCH_INTERVAL,
                state: rho,
                hamiltonian: h_f,
            },
        ])
        .map_err(core_error)?;
        (p, traj)
    };

    let d = tpm_distribution(&protocol);
    let df = free_energy_difference(&h_i, &h_f, c.beta).map_err(core_error)?;
    let lhs = jarzynski_average(&d, c.beta);
    let rhs = (-c.beta * df).exp();
    let gap = (lhs - rhs).abs();
    let mean_work = d.mean_work();
    let mut violations = Vec::new();
    if gap > JARZYNSKI_TOL {
        violations.push(format!(
            "Jarzynski equality: gap {gap:.3e} exceeds {JARZYNSKI_TOL:e}"
        ));
    }
    if mean_work < df - JARZYNSKI_TOL {
        violations.push(format!("second law: <W> = {mean_work} < ΔF = {df}"));
    }
    let mut table = Table::new(&["work", "probability"]);
    for o in &d.outcomes {
        table.push(vec![o.work.into(), o.probability.into()]);
    }
    Ok(Outcome {
        result: json!({
            "lhs": lhs,
            "rhs": rhs,
            "gap": gap,
            "mean_work": mean_work,
            "free_energy_difference": df,
            "second_law_slack": mean_work - df,
            "total_probability": d.total_probability(),
            "transition_matrix": protocol.transition_matrix(),
            "distribution": d.outcomes,
        }),
        summary: vec![
            ("lhs", lhs),
            ("rhs", rhs),
            ("gap", gap),
            ("mean_work", mean_work),
            ("free_energy_difference", df),
        ],
        table,
        trajectory: Some(trajectory),
        violations,
    })
}

fn relax(c: &RelaxConfig) -> Result<Outcome, CliError> {
    let h = c.hamiltonian();
    let bath = c.bath();
    let t = BathTemperature::new(c.temp).map_err(core_error)?;
    let rho0 = DensityOperator::diagonal(c.p0).map_err(core_error)?;
    let run = if c.exact {
        thermalize_exact
    } else {
        thermalize
    };
    let traj =
        run(&rho0, &h, &bath, c.effective_duration(), c.effective_dt()).map_err(core_error)?;
    let record = StrokeRecord::from_trajectory("relax", &traj, Some(t)).map_err(core_error)?;
    let gibbs = gibbs_state(&h, t);

    let mut table = Table::new(&[
        "t",
        "p_excited",
        "coherence_re",
        "coherence_im",
        "entropy",
        "relative_entropy",
    ]);
    let mut violations: Vec<String> = record.violation().into_iter().collect();
    let mut previous = f64::INFINITY;
    for s in traj.samples() {
        let d = relative_entropy(&s.state, &gibbs);
        if d > previous + SPOHN_SLACK && violations.iter().all(|v| !v.starts_with("Spohn")) {
            violations.push(format!(
                "Spohn monotonicity: relative entropy rises at t = {}",
                s.time
            ));
        }
        previous = d;
        let coh = s.state.coherence();
        table.push(vec![
            s.time.into(),
            s.state.p_excited().into(),
            coh.re.into(),
            coh.im.into(),
            von_neumann_entropy(&s.state).into(),
            Cell::Num(d),
        ]);
    }
    let last = traj.last().state;
    let distance = last.trace_distance(&gibbs);
    Ok(Outcome {
        result: json!({
            "relaxation_rate": c.relaxation_rate(),
            "duration": c.effective_duration(),
            "dt": c.effective_dt(),
            "samples": traj.len(),
            "final_p_excited": last.p_excited(),
            "gibbs_p_excited": gibbs.p_excited(),
            "final_distance_to_gibbs": distance,
            "stroke": record,
        }),
        summary: vec![
            ("relaxation_rate", c.relaxation_rate()),
            ("heat", record.heat),
            (
                "entropy_production",
                record.entropy_production.unwrap_or(f64::NAN),
            ),
            ("final_distance_to_gibbs", distance),
        ],
        table,
        trajectory: Some(traj),
        violations,
    })
}

const SWEEP_COLUMNS: [&str; 17] = [
    "tc",
    "th",
    "wc",
    "wh",
    "engine_flag",
    "w_ext",
    "eta",
    "eta_carnot",
    "index",
    "steps",
    "status",
    "q_hot",
    "q_cold",
    "closure_residual",
    "state_return_error",
    "total_entropy_production",
    "reason",
];

fn sweep_grid(c: &SweepConfig, jobs: usize) -> Result<Outcome, CliError> {
    let points = sweep(&c.grid, jobs).map_err(core_error)?;
    let (closure, ret) = c.integration.map_or((1e-9, 1e-8), |i| i.tolerances());
    let mut table = Table::new(&SWEEP_COLUMNS);
    let mut violations = Vec::new();
    let mut rows = Vec::with_capacity(points.len());
    for p in &points {
        table.push(sweep_row(p));
        if let Some(r) = p.report() {
            violations.extend(
                r.violations(closure, ret)
                    .into_iter()
                    .map(|v| format!("point {}: {v}", p.index)),
            );
        }
        rows.push(sweep_json(p));
    }
    let completed = points.iter().filter(|p| p.report().is_some()).count();
    Ok(Outcome {
        result: json!({
            "points": rows,
            "completed": completed,
            "skipped": points.len() - completed,
        }),
        summary: vec![],
        table,
        trajectory: None,
        violations,
    })
}

fn sweep_row(p: &SweepPoint) -> Vec<Cell> {
    let mut row: Vec<Cell> = vec![
        p.t_cold.into(),
        p.t_hot.into(),
        p.omega_c.into(),
        p.omega_h.into(),
        p.is_engine.into(),
    ];
    let r = p.report();
    let num = |f: fn(&CycleReport) -> f64| r.map_or(Cell::Empty, |r| Cell::Num(f(r)));
    row.extend([
        num(|r| r.extracted_work),
        num(|r| r.efficiency),
        num(|r| r.carnot_efficiency),
    ]);
    row.push(p.index.into());
    row.push(p.isotherm_steps.map_or(Cell::Empty, Cell::Int));
    row.push(if r.is_some() { "ok" } else { "skipped" }.into());
    row.extend([
        num(|r| r.heat_hot),
        num(|r| r.heat_cold),
        num(|r| r.closure_residual),
        num(|r| r.state_return_error),
        num(CycleReport::total_entropy_production),
    ]);
    row.push(match &p.outcome {
        qthermo::SweepOutcome::Skipped { reason } => reason.as_str().into(),
        qthermo::SweepOutcome::Completed { .. } => Cell::Empty,
    });
    row
}

fn sweep_json(p: &SweepPoint) -> Value {
    let mut v = json!({
        "index": p.index,
        "tc": p.t_cold,
        "th": p.t_hot,
        "wc": p.omega_c,
        "wh": p.omega_h,
        "steps": p.isotherm_steps,
        "engine_flag": p.is_engine,
    });
    match &p.outcome {
        qthermo::SweepOutcome::Completed { report: r } => {
            v["status"] = json!("ok");
            v["w_ext"] = json!(r.extracted_work);
            v["eta"] = json!(r.efficiency);
            v["eta_carnot"] = json!(r.carnot_efficiency);
            v["q_hot"] = json!(r.heat_hot);
            v["q_cold"] = json!(r.heat_cold);
            v["closure_residual"] = json!(r.closure_residual);
            v["state_return_error"] = json!(r.state_return_error);
            v["total_entropy_production"] = json!(r.total_entropy_production());
        }
        qthermo::SweepOutcome::Skipped { reason } => {
            v["status"] = json!("skipped");
            v["reason"] = json!(reason);
        }
    }
    v
}
