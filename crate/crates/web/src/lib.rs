//! WebAssembly bindings for the browser demo. Every export returns a JSON
//! string, or an error message for invalid parameters.

use qthermo::{
    gibbs_state, relative_entropy, run_otto_traced, thermalize_exact, tpm_distribution, BathSpec,
    BathTemperature, DensityOperator, DriveSchedule, OttoMode, OttoSpec, QubitHamiltonian,
    TpmProtocol,
};
use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Exact-mode Otto cycle with its path in the (ω, p_excited) plane.
#[wasm_bindgen]
pub fn otto_cycle(tc: f64, th: f64, wc: f64, wh: f64) -> Result<String, String> {
    let spec = OttoSpec::new(tc, th, wc, wh, OttoMode::Exact).map_err(err)?;
    let run = run_otto_traced(&spec).map_err(err)?;
    let traj = run.full_trajectory().map_err(err)?;
    let r = &run.report;
    Ok(json!({
        "w_ext": r.extracted_work,
        "eta": r.efficiency,
        "eta_carnot": r.carnot_efficiency,
        "is_engine": r.is_engine,
        "q_hot": r.heat_hot,
        "q_cold": r.heat_cold,
        "strokes": r.strokes,
        "path": {
            "omega": traj.samples().iter().map(|s| s.hamiltonian.gap).collect::<Vec<_>>(),
            "p_excited": traj.states().map(DensityOperator::p_excited).collect::<Vec<_>>(),
        },
    })
    .to_string())
}

/// Closed-form relaxation of the excited population and of the relative
/// entropy to the Gibbs state.
#[wasm_bindgen]
pub fn relaxation_curve(
    omega: f64,
    temp: f64,
    gamma: f64,
    p0: f64,
    duration: f64,
    points: usize,
) -> Result<String, String> {
    let h = QubitHamiltonian::with_gap(omega).map_err(err)?;
    let t = BathTemperature::new(temp).map_err(err)?;
    let bath = BathSpec::new(t, gamma).map_err(err)?;
    let rho = DensityOperator::diagonal(p0).map_err(err)?;
    let traj = thermalize_exact(&rho, &h, &bath, duration, duration / points.max(1) as f64)
        .map_err(err)?;
    let g = gibbs_state(&h, t);
    Ok(json!({
        "relaxation_rate": bath.relaxation_rate(omega),
        "p_eq": g.p_excited(),
        "t": traj.samples().iter().map(|s| s.time).collect::<Vec<_>>(),
        "p_excited": traj.states().map(DensityOperator::p_excited).collect::<Vec<_>>(),
        "relative_entropy": traj.states().map(|s| relative_entropy(s, &g)).collect::<Vec<_>>(),
    })
    .to_string())
}

/// Two-point-measurement work distribution of a linear gap ramp
/// (`duration = 0` is a sudden quench) with a fixed transverse field.
#[wasm_bindgen]
pub fn work_distribution(
    beta: f64,
    wi: f64,
    wf: f64,
    delta: f64,
    duration: f64,
) -> Result<String, String> {
    let h_i = QubitHamiltonian::new(wi, delta).map_err(err)?;
    let h_f = QubitHamiltonian::new(wf, delta).map_err(err)?;
    let protocol = if duration > 0.0 {
        let drive = DriveSchedule::new(
            duration,
            0.01f64.min(duration),
            move |t| wi + (wf - wi) * t / duration,
            move |_| delta,
        )
        .map_err(err)?;
        let u = qthermo::propagator(&drive).map_err(err)?;
        TpmProtocol::new(beta, h_i, h_f, u).map_err(err)?
    } else {
        TpmProtocol::sudden_quench(beta, h_i, h_f).map_err(err)?
    };
    let c = qthermo::jarzynski_check(&protocol).map_err(err)?;
    Ok(json!({
        "outcomes": tpm_distribution(&protocol).outcomes,
        "lhs": c.lhs,
        "rhs": c.rhs,
        "gap": c.gap,
        "mean_work": c.mean_work,
        "free_energy_difference": c.free_energy_difference,
    })
    .to_string())
}
