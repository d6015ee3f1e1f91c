//! Two-point-measurement work statistics and the Jarzynski equality.
//!
//! The qubit starts in the Gibbs state of `h_initial`, is projectively
//! measured in that eigenbasis, evolves under the unitary `U` and is
//! measured again in the eigenbasis of `h_final`. With at most four outcome
//! pairs everything is enumerated exactly.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat2};
use crate::quantum::{
    gibbs_state, log_partition_function, BathTemperature, DensityOperator, QubitHamiltonian,
};

/// Tolerance on `U†U = 1`.
pub const UNITARITY_TOL: f64 = 1e-12;

/// Gap of the Jarzynski equality above which [`jarzynski_check`] reports an
/// implementation error.
pub const CONSISTENCY_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TpmProtocol {
    beta: f64,
    h_initial: QubitHamiltonian,
    h_final: QubitHamiltonian,
    propagator: Mat2,
}

fn temperature(beta: f64) -> Result<BathTemperature> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::domain(format!(
            "inverse temperature must be positive, got {beta}"
        )));
    }
    BathTemperature::new(1.0 / beta)
}

impl TpmProtocol {
    pub fn new(
        beta: f64,
        h_initial: QubitHamiltonian,
        h_final: QubitHamiltonian,
        propagator: Mat2,
    ) -> Result<Self> {
        temperature(beta)?;
        let defect = linalg::unitarity_defect(&propagator);
        if !(defect <= UNITARITY_TOL) {
            return Err(Error::domain(format!(
                "propagator is not unitary (defect {defect:.3e})"
            )));
        }
        Ok(Self {
            beta,
            h_initial,
            h_final,
            propagator,
        })
    }

    /// Instantaneous change `h_initial → h_final` (`U = 1`).
    pub fn sudden_quench(
        beta: f64,
        h_initial: QubitHamiltonian,
        h_final: QubitHamiltonian,
    ) -> Result<Self> {
        Self::new(beta, h_initial, h_final, Mat2::identity())
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn h_initial(&self) -> &QubitHamiltonian {
        &self.h_initial
    }

    pub fn h_final(&self) -> &QubitHamiltonian {
        &self.h_final
    }

    pub fn propagator(&self) -> &Mat2 {
        &self.propagator
    }

    pub fn initial_state(&self) -> DensityOperator {
        gibbs_state(
            &self.h_initial,
            BathTemperature::new(1.0 / self.beta).unwrap(),
        )
    }

    /// `|⟨m′|U|n⟩|²`, indexed `[m][n]`.
    pub fn transition_matrix(&self) -> [[f64; 2]; 2] {
        let vi = self.h_initial.eigen().vectors;
        let vf = self.h_final.eigen().vectors;
        let amp = vf.adjoint() * self.propagator * vi;
        [
            [amp[(0, 0)].norm_sqr(), amp[(0, 1)].norm_sqr()],
            [amp[(1, 0)].norm_sqr(), amp[(1, 1)].norm_sqr()],
        ]
    }

    /// Joint probabilities `p_{mn}` of initial level `n` and final level `m`,
    /// with their work values `E′_m − E_n`, indexed `[m][n]`.
    pub fn joint(&self) -> [[(f64, f64); 2]; 2] {
        let e_i = self.h_initial.eigen().values;
        let e_f = self.h_final.eigen().values;
        let rho = self.initial_state();
        let vi = self.h_initial.eigen().vectors;
        let pops = (vi.adjoint() * rho.matrix() * vi).diagonal().map(|z| z.re);
        let t = self.transition_matrix();
        let mut out = [[(0.0, 0.0); 2]; 2];
        for m in 0..2 {
            for n in 0..2 {
                out[m][n] = (e_f[m] - e_i[n], pops[n] * t[m][n]);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WorkOutcome {
    pub work: f64,
    pub probability: f64,
}

/// Distinct work values with their probabilities, sorted by work.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WorkDistribution {
    pub outcomes: Vec<WorkOutcome>,
}

impl WorkDistribution {
    pub fn total_probability(&self) -> f64 {
        self.outcomes.iter().map(|o| o.probability).sum()
    }

    pub fn mean_work(&self) -> f64 {
        self.outcomes.iter().map(|o| o.probability * o.work).sum()
    }
}

/// Exact TPM work distribution. Zero-probability outcomes are dropped and
/// coinciding work values merged.
pub fn tpm_distribution(p: &TpmProtocol) -> WorkDistribution {
    let mut raw: Vec<(f64, f64)> = p
        .joint()
        .iter()
        .flatten()
        .copied()
        .filter(|&(_, q)| q > 0.0)
        .collect();
    raw.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut outcomes: Vec<WorkOutcome> = Vec::with_capacity(4);
    for (work, probability) in raw {
        match outcomes.last_mut() {
            Some(last) if (last.work - work).abs() <= 1e-12 * work.abs().max(1.0) => {
                last.probability += probability;
            }
            _ => outcomes.push(WorkOutcome { work, probability }),
        }
    }
    WorkDistribution { outcomes }
}

/// `⟨e^{−βW}⟩`.
pub fn jarzynski_average(d: &WorkDistribution, beta: f64) -> f64 {
    d.outcomes
        .iter()
        .map(|o| o.probability * (-beta * o.work).exp())
        .sum()
}

/// `ΔF = −(1/β) ln(Z_final / Z_initial)`.
pub fn free_energy_difference(
    h_initial: &QubitHamiltonian,
    h_final: &QubitHamiltonian,
    beta: f64,
) -> Result<f64> {
    let t = temperature(beta)?;
    Ok(-(log_partition_function(h_final, t) - log_partition_function(h_initial, t)) / beta)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JarzynskiCheck {
    /// `⟨e^{−βW}⟩`.
    pub lhs: f64,
    /// `e^{−βΔF}`.
    pub rhs: f64,
    pub gap: f64,
    pub mean_work: f64,
    pub free_energy_difference: f64,
    /// `⟨W⟩ − ΔF`.
    pub second_law_slack: f64,
}

/// Evaluates both sides of the Jarzynski equality for `p`.
pub fn jarzynski_check(p: &TpmProtocol) -> Result<JarzynskiCheck> {
    let d = tpm_distribution(p);
    let df = free_energy_difference(&p.h_initial, &p.h_final, p.beta)?;
    let lhs = jarzynski_average(&d, p.beta);
    let rhs = (-p.beta * df).exp();
    let gap = (lhs - rhs).abs();
    if !(gap <= CONSISTENCY_LIMIT) {
        return Err(Error::Consistency(format!(
            "Jarzynski gap {gap:.3e} (lhs {lhs}, rhs {rhs}) exceeds {CONSISTENCY_LIMIT:e}"
        )));
    }
    let mean_work = d.mean_work();
    Ok(JarzynskiCheck {
        lhs,
        rhs,
        gap,
        mean_work,
        free_energy_difference: df,
        second_law_slack: mean_work - df,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::real;
    use approx::assert_abs_diff_eq;

    fn gap(w: f64) -> QubitHamiltonian {
        QubitHamiltonian::with_gap(w).unwrap()
    }

    #[test]
    fn identity_drive_has_no_work() {
        let h = QubitHamiltonian::new(0.8, 0.3).unwrap();
        let p = TpmProtocol::sudden_quench(1.7, h, h).unwrap();
        let d = tpm_distribution(&p);
        assert_eq!(d.outcomes.len(), 1);
        assert_eq!(d.outcomes[0].work, 0.0);
        assert_abs_diff_eq!(d.outcomes[0].probability, 1.0, epsilon = 1e-15);
        let c = jarzynski_check(&p).unwrap();
        assert_abs_diff_eq!(c.lhs, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.rhs, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.mean_work, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.free_energy_difference, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn sudden_quench_distribution() {
        let p = TpmProtocol::sudden_quench(1.0, gap(1.0), gap(2.0)).unwrap();
        let d = tpm_distribution(&p);
        let p_e = 1.0 / (1.0 + 1f64.exp());
        assert_eq!(d.outcomes.len(), 2);
        assert_eq!(d.outcomes[0].work, 0.0);
        assert_abs_diff_eq!(d.outcomes[0].probability, 1.0 - p_e, epsilon = 1e-15);
        assert_eq!(d.outcomes[1].work, 1.0);
        assert_abs_diff_eq!(d.outcomes[1].probability, p_e, epsilon = 1e-15);
        assert_abs_diff_eq!(d.outcomes[0].probability, 0.731059, epsilon = 5e-7);
    }

    #[test]
    fn non_unitary_propagator_is_rejected() {
        let u = Mat2::identity() * real(1.001);
        assert!(TpmProtocol::new(1.0, gap(1.0), gap(1.0), u).is_err());
        assert!(TpmProtocol::sudden_quench(0.0, gap(1.0), gap(1.0)).is_err());
    }

    #[test]
    fn free_energy_examples() {
        assert_eq!(
            free_energy_difference(&gap(1.3), &gap(1.3), 0.4).unwrap(),
            0.0
        );
        let oracle = -((1.0 + (-2.0f64).exp()) / (1.0 + (-1.0f64).exp())).ln();
        let df = free_energy_difference(&gap(1.0), &gap(2.0), 1.0).unwrap();
        assert_abs_diff_eq!(df, oracle, epsilon = 1e-15);
        assert!(free_energy_difference(&gap(1.0), &gap(2.0), -1.0).is_err());
    }

    #[test]
    fn high_temperature_free_energy_limit() {
        // F = ⟨E⟩ − TS with both states maximally mixed: ΔF → Δω/2 while
        // βΔF → 0.
        let beta = 1e-6;
        let df = free_energy_difference(&gap(1.0), &gap(2.0), beta).unwrap();
        assert_abs_diff_eq!(df, 0.5, epsilon = 1e-6);
        assert!((beta * df).abs() < 1e-6);
    }
}
