use serde::Serialize;

use super::{check_baths_and_gaps, extraction_condition, CycleReport, CycleRun, QUENCH_INTERVAL};
use crate::accounting::StrokeRecord;
use crate::dynamics::{quasistatic_isotherm, Sample, Trajectory};
use crate::error::{Error, Result};
use crate::quantum::{gibbs_state, BathTemperature, QubitHamiltonian};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CarnotSpec {
    pub t_cold: BathTemperature,
    pub t_hot: BathTemperature,
    pub omega_c: f64,
    pub omega_h: f64,
    /// Discretization of each isotherm.
    pub isotherm_steps: usize,
}

impl CarnotSpec {
    pub fn new(
        t_cold: f64,
        t_hot: f64,
        omega_c: f64,
        omega_h: f64,
        isotherm_steps: usize,
    ) -> Result<Self> {
        let spec = Self {
            t_cold: BathTemperature::new(t_cold)?,
            t_hot: BathTemperature::new(t_hot)?,
            omega_c,
            omega_h,
            isotherm_steps,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        check_baths_and_gaps(self.t_cold, self.t_hot, self.omega_c, self.omega_h)?;
        if self.isotherm_steps < 1 {
            return Err(Error::domain("isotherm_steps must be at least 1"));
        }
        // ω′_h ≥ ω_h and ω′_c ≤ ω_c are both this condition.
        if !extraction_condition(
            self.t_cold.value(),
            self.t_hot.value(),
            self.omega_c,
            self.omega_h,
        ) {
            return Err(Error::domain(format!(
                "gap ordering ω'_h = {} ≥ ω_h = {} violated (needs ω_c/ω_h ≥ T_c/T_h)",
                self.hot_start_gap(),
                self.omega_h
            )));
        }
        Ok(())
    }

    /// `ω′_h = (T_h/T_c) ω_c`, reached by the first adiabat.
    pub fn hot_start_gap(&self) -> f64 {
        self.t_hot.value() / self.t_cold.value() * self.omega_c
    }

    /// `ω′_c = (T_c/T_h) ω_h`, reached by the second adiabat.
    pub fn cold_start_gap(&self) -> f64 {
        self.t_cold.value() / self.t_hot.value() * self.omega_h
    }
}

/// Runs one Carnot cycle: adiabat ω_c → ω′_h, isotherm at T_h down to ω_h,
/// adiabat ω_h → ω′_c, isotherm at T_c up to ω_c.
pub fn run_carnot(spec: &CarnotSpec) -> Result<CycleReport> {
    run_carnot_traced(spec).map(|run| run.report)
}

pub fn run_carnot_traced(spec: &CarnotSpec) -> Result<CycleRun> {
    spec.validate()?;
    let h_c = QubitHamiltonian::with_gap(spec.omega_c)?;
    let h_h = QubitHamiltonian::with_gap(spec.omega_h)?;
    let h_hot_start = QubitHamiltonian::with_gap(spec.hot_start_gap())?;
    let h_cold_start = QubitHamiltonian::with_gap(spec.cold_start_gap())?;
    let initial = gibbs_state(&h_c, spec.t_cold);
    let n = spec.isotherm_steps;

    let adiabat = |state, from, to, index: usize| {
        Trajectory::new(vec![
            Sample {
                time: 0.0,
                state,
                hamiltonian: from,
            },
            Sample {
                time: QUENCH_INTERVAL,
                state,
                hamiltonian: to,
            },
        ])
        .map_err(|e| e.in_stroke(index))
    };

    let s1 = adiabat(initial, h_c, h_hot_start, 1)?;
    let r1 = StrokeRecord::quench("adiabat_up", &initial, &h_c, &h_hot_start);

    let s2 = quasistatic_isotherm(&h_hot_start, &h_h, spec.t_hot, n).map_err(|e| e.in_stroke(2))?;
    let r2 = StrokeRecord::from_trajectory("hot_isotherm", &s2, Some(spec.t_hot))
        .map_err(|e| e.in_stroke(2))?;

    let hot_end = s2.last().state;
    let s3 = adiabat(hot_end, h_h, h_cold_start, 3)?;
    let r3 = StrokeRecord::quench("adiabat_down", &hot_end, &h_h, &h_cold_start);

    let s4 =
        quasistatic_isotherm(&h_cold_start, &h_c, spec.t_cold, n).map_err(|e| e.in_stroke(4))?;
    let r4 = StrokeRecord::from_trajectory("cold_isotherm", &s4, Some(spec.t_cold))
        .map_err(|e| e.in_stroke(4))?;

    let eta_c = 1.0 - spec.t_cold.value() / spec.t_hot.value();
    let report = CycleReport::assemble(
        vec![r1, r2, r3, r4],
        spec.hot_start_gap(),
        eta_c,
        eta_c,
        true,
        initial.trace_distance(&s4.last().state),
    );
    Ok(CycleRun {
        report,
        trajectories: vec![s1, s2, s3, s4],
    })
}
