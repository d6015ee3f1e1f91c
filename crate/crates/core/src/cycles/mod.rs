//! Quantum Otto and Carnot cycles on a single qubit.
//!
//! Both cycles start from the Gibbs state at `(ω_c, T_c)`. Gap changes
//! ("adiabats") are instantaneous with populations frozen; since the
//! Hamiltonian stays longitudinal it commutes with itself at all times and
//! no coherences are generated.

mod carnot;
mod otto;
mod sweep;

use serde::Serialize;

use crate::accounting::{StrokeRecord, SIGMA_FLOOR};
use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::quantum::BathTemperature;

pub use carnot::{run_carnot, run_carnot_traced, CarnotSpec};
pub use otto::{
    otto_carnot_deficit, run_otto, run_otto_traced, DeficitReport, FiniteTimeParams, OttoMode,
    OttoSpec, FULL_THERMALIZATION,
};
pub use sweep::{sweep, CycleKind, SweepGrid, SweepOutcome, SweepPoint};

/// Nominal clock interval assigned to an instantaneous gap change.
pub const QUENCH_INTERVAL: f64 = 1e-6;

/// `|Q_h|` below this (relative to the largest gap) counts as no heat
/// intake. `W_ext/Q_h` is then 0/0 and the efficiency is reported as its
/// limit along the family of cycles.
const NULL_HEAT: f64 = 1e-14;

/// Ledger of one run of a four-stroke cycle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleReport {
    pub strokes: Vec<StrokeRecord>,
    /// `−Σ Wᵢ`, the work delivered to the drive.
    pub extracted_work: f64,
    /// Heat taken from the hot bath.
    pub heat_hot: f64,
    /// Heat taken from the cold bath (negative for an engine).
    pub heat_cold: f64,
    /// `W_ext / Q_h`.
    pub efficiency: f64,
    pub carnot_efficiency: f64,
    /// Extraction condition `ω_c/ω_h ≥ T_c/T_h`.
    pub is_engine: bool,
    /// `Σ (Wᵢ + Qᵢ)` over all strokes.
    pub closure_residual: f64,
    /// Trace distance between the initial and final state.
    pub state_return_error: f64,
}

/// A cycle report together with the per-stroke trajectories.
#[derive(Debug, Clone)]
pub struct CycleRun {
    pub report: CycleReport,
    pub trajectories: Vec<Trajectory>,
}

impl CycleRun {
    /// All strokes joined on one clock.
    pub fn full_trajectory(&self) -> Result<Trajectory> {
        Trajectory::concat(&self.trajectories)
    }
}

impl CycleReport {
    pub(crate) fn assemble(
        strokes: Vec<StrokeRecord>,
        scale: f64,
        null_heat_limit: f64,
        carnot_efficiency: f64,
        is_engine: bool,
        state_return_error: f64,
    ) -> Self {
        let extracted_work = -strokes.iter().map(|s| s.work).sum::<f64>();
        let heat_hot = strokes[1].heat;
        let heat_cold = strokes[3].heat;
        let efficiency = if heat_hot.abs() <= NULL_HEAT * scale {
            null_heat_limit
        } else {
            extracted_work / heat_hot
        };
        Self {
            closure_residual: crate::accounting::first_law_check(&strokes),
            strokes,
            extracted_work,
            heat_hot,
            heat_cold,
            efficiency,
            carnot_efficiency,
            is_engine,
            state_return_error,
        }
    }

    pub fn total_entropy_production(&self) -> f64 {
        self.strokes
            .iter()
            .filter_map(|s| s.entropy_production)
            .sum()
    }

    /// Violated cycle invariants for the given closure and state-return
    /// tolerances.
    pub fn violations(&self, closure_tol: f64, return_tol: f64) -> Vec<String> {
        let mut out: Vec<String> = self
            .strokes
            .iter()
            .filter_map(StrokeRecord::violation)
            .collect();
        if self.closure_residual.abs() > closure_tol {
            out.push(format!(
                "energy balance: closure residual {:.3e} exceeds {closure_tol:e}",
                self.closure_residual
            ));
        }
        if self.state_return_error > return_tol {
            out.push(format!(
                "cycle closure: state return error {:.3e} exceeds {return_tol:e}",
                self.state_return_error
            ));
        }
        let total = self.total_entropy_production();
        if total < SIGMA_FLOOR {
            out.push(format!("total entropy production {total:.3e} < 0"));
        }
        out
    }
}

/// Otto efficiency with the extraction-condition flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OttoEfficiency {
    pub value: f64,
    /// False when `ω_c/ω_h < T_c/T_h`: the cycle then consumes work.
    pub is_engine: bool,
}

/// `ω_c/ω_h ≥ T_c/T_h`, evaluated without division.
pub fn extraction_condition(t_cold: f64, t_hot: f64, omega_c: f64, omega_h: f64) -> bool {
    omega_c * t_hot >= t_cold * omega_h
}

/// `1 − ω_c/ω_h`, flagged when the parameters do not describe an engine.
pub fn otto_efficiency(spec: &OttoSpec) -> OttoEfficiency {
    OttoEfficiency {
        value: 1.0 - spec.omega_c / spec.omega_h,
        is_engine: extraction_condition(
            spec.t_cold.value(),
            spec.t_hot.value(),
            spec.omega_c,
            spec.omega_h,
        ),
    }
}

/// `1 − T_c/T_h`; requires `T_c < T_h`.
pub fn carnot_efficiency(t_cold: BathTemperature, t_hot: BathTemperature) -> Result<f64> {
    if t_cold.value() >= t_hot.value() {
        return Err(Error::domain(format!(
            "Carnot efficiency needs T_c < T_h (got T_c = {}, T_h = {})",
            t_cold.value(),
            t_hot.value()
        )));
    }
    Ok(1.0 - t_cold.value() / t_hot.value())
}

pub(crate) fn check_baths_and_gaps(
    t_cold: BathTemperature,
    t_hot: BathTemperature,
    omega_c: f64,
    omega_h: f64,
) -> Result<()> {
    if t_cold.value() >= t_hot.value() {
        return Err(Error::domain(format!(
            "T_c < T_h violated (T_c = {}, T_h = {})",
            t_cold.value(),
            t_hot.value()
        )));
    }
    if !(omega_c > 0.0 && omega_c.is_finite() && omega_h.is_finite()) {
        return Err(Error::domain(format!(
            "gaps must be positive and finite (ω_c = {omega_c}, ω_h = {omega_h})"
        )));
    }
    if omega_c > omega_h {
        return Err(Error::domain(format!(
            "ω_c ≤ ω_h violated (ω_c = {omega_c}, ω_h = {omega_h})"
        )));
    }
    Ok(())
}
