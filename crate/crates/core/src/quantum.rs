//! Qubit states, Hamiltonians, thermal states and entropy functionals.
//!
//! Basis convention: index 0 is the ground level |g⟩ and index 1 the excited
//! level |e⟩ of the undriven qubit, so `H = ω |e⟩⟨e| + (Δ/2) σx`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, eigh, real, Eigh2, Mat2, Vec2, C64};

/// Tolerance of the density-operator invariants.
pub const STATE_TOL: f64 = 1e-12;

/// A validated 2×2 density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityOperator {
    m: Mat2,
}

impl DensityOperator {
    /// Validates hermiticity, unit trace and positivity to [`STATE_TOL`].
    pub fn new(m: Mat2) -> Result<Self> {
        Self::with_tolerance(m, STATE_TOL)
    }

    pub(crate) fn with_tolerance(m: Mat2, tol: f64) -> Result<Self> {
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite matrix element".into()));
        }
        let herm = linalg::hermiticity_defect(&m);
        if herm > tol {
            return Err(Error::InvalidState(format!(
                "not Hermitian (defect {herm:.3e})"
            )));
        }
        let tr = m.trace();
        if (tr - real(1.0)).norm() > tol {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = eigh(&m).values[0];
        if min < -tol {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(Self { m })
    }

    /// Diagonal state with the given excited-level population.
    pub fn diagonal(p_excited: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_excited) {
            return Err(Error::domain(format!(
                "population {p_excited} outside [0, 1]"
            )));
        }
        Ok(Self {
            m: Mat2::new(real(1.0 - p_excited), real(0.0), real(0.0), real(p_excited)),
        })
    }

    pub fn ground() -> Self {
        Self::diagonal(0.0).unwrap()
    }

    pub fn excited() -> Self {
        Self::diagonal(1.0).unwrap()
    }

    pub fn maximally_mixed() -> Self {
        Self::diagonal(0.5).unwrap()
    }

    /// Projector onto the normalized pure state `a|g⟩ + b|e⟩`.
    pub fn pure(a: C64, b: C64) -> Result<Self> {
        let v = Vec2::new(a, b);
        let norm = v.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::domain(
                "pure state amplitudes must be finite and non-zero",
            ));
        }
        let v = v / real(norm);
        Ok(Self { m: v * v.adjoint() })
    }

    /// State with Bloch vector `(x, y, z)`, `|r| ≤ 1`, where `z = +1` is the
    /// ground level.
    pub fn from_bloch(x: f64, y: f64, z: f64) -> Result<Self> {
        let m = Mat2::new(
            real(0.5 * (1.0 + z)),
            C64::new(0.5 * x, -0.5 * y),
            C64::new(0.5 * x, 0.5 * y),
            real(0.5 * (1.0 - z)),
        );
        Self::new(m)
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn element(&self, i: usize, j: usize) -> C64 {
        self.m[(i, j)]
    }

    /// Population of the undriven excited level, `⟨e|ρ|e⟩`.
    pub fn p_excited(&self) -> f64 {
        self.m[(1, 1)].re
    }

    /// Coherence `⟨e|ρ|g⟩`.
    pub fn coherence(&self) -> C64 {
        self.m[(1, 0)]
    }

    pub fn eigen(&self) -> Eigh2 {
        eigh(&self.m)
    }

    /// Eigenvalues with round-off negatives clamped to zero.
    pub fn spectrum(&self) -> [f64; 2] {
        let v = self.eigen().values;
        [v[0].max(0.0), v[1].max(0.0)]
    }

    pub fn purity(&self) -> f64 {
        linalg::trace_product(&self.m, &self.m)
    }

    pub fn trace_distance(&self, other: &DensityOperator) -> f64 {
        linalg::trace_distance(&self.m, &other.m)
    }
}

/// `H = ω |e⟩⟨e| + (Δ/2) σx` with gap `ω ≥ 0` and transverse field `Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QubitHamiltonian {
    pub gap: f64,
    pub transverse: f64,
}

impl QubitHamiltonian {
    pub fn new(gap: f64, transverse: f64) -> Result<Self> {
        if !(gap >= 0.0 && gap.is_finite()) {
            return Err(Error::domain(format!(
                "gap must be finite and non-negative, got {gap}"
            )));
        }
        if !transverse.is_finite() {
            return Err(Error::domain("transverse field must be finite"));
        }
        Ok(Self { gap, transverse })
    }

    /// Longitudinal qubit `ω |e⟩⟨e|`.
    pub fn with_gap(gap: f64) -> Result<Self> {
        Self::new(gap, 0.0)
    }

    pub fn matrix(&self) -> Mat2 {
        let off = real(0.5 * self.transverse);
        Mat2::new(real(0.0), off, off, real(self.gap))
    }

    pub fn eigen(&self) -> Eigh2 {
        eigh(&self.matrix())
    }

    /// Splitting between the two eigenvalues.
    pub fn level_spacing(&self) -> f64 {
        self.gap.hypot(self.transverse)
    }

    pub fn is_longitudinal(&self) -> bool {
        self.transverse == 0.0
    }
}

/// Bath temperature `T > 0` (k_B = 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct BathTemperature(f64);

impl BathTemperature {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value.is_finite() {
            Ok(Self(value))
        } else {
            Err(Error::domain(format!(
                "temperature must be positive and finite, got {value}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn beta(self) -> f64 {
        1.0 / self.0
    }
}

/// Boltzmann weights of the eigenlevels relative to the ground level, and
/// the decomposition they refer to.
fn boltzmann(h: &QubitHamiltonian, t: BathTemperature) -> (Eigh2, [f64; 2]) {
    let e = h.eigen();
    let w = [1.0, (-(e.values[1] - e.values[0]) / t.value()).exp()];
    (e, w)
}

/// `exp(−H/T) / Z`.
pub fn gibbs_state(h: &QubitHamiltonian, t: BathTemperature) -> DensityOperator {
    let (e, w) = boltzmann(h, t);
    let z = w[0] + w[1];
    let (v0, v1) = (e.vector(0), e.vector(1));
    let m = v0 * v0.adjoint() * real(w[0] / z) + v1 * v1.adjoint() * real(w[1] / z);
    DensityOperator {
        m: linalg::hermitian_part(&m),
    }
}

/// `Tr[ρH]`.
pub fn mean_energy(rho: &DensityOperator, h: &QubitHamiltonian) -> f64 {
    linalg::trace_product(rho.matrix(), &h.matrix())
}

fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// `−Tr[ρ ln ρ]` in nats.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    let s: f64 = -rho.spectrum().iter().map(|&x| xlnx(x)).sum::<f64>();
    s.clamp(0.0, std::f64::consts::LN_2)
}

/// Umegaki relative entropy `Tr[ρ(ln ρ − ln σ)]`.
///
/// Returns `f64::INFINITY` when the support of `rho` is not contained in the
/// support of `sigma`.
pub fn relative_entropy(rho: &DensityOperator, sigma: &DensityOperator) -> f64 {
    let neg_entropy: f64 = rho.spectrum().iter().map(|&x| xlnx(x)).sum();
    let es = sigma.eigen();
    let mut cross = 0.0;
    for j in 0..2 {
        let v = es.vector(j);
        let weight = (v.adjoint() * rho.matrix() * v)[(0, 0)].re;
        let s = es.values[j];
        if s > STATE_TOL {
            cross += weight * s.ln();
        } else if weight > STATE_TOL {
            return f64::INFINITY;
        }
    }
    (neg_entropy - cross).max(0.0)
}

/// `ln Tr exp(−H/T)`, stable for very small temperatures.
pub fn log_partition_function(h: &QubitHamiltonian, t: BathTemperature) -> f64 {
    let (e, w) = boltzmann(h, t);
    -e.values[0] / t.value() + (w[0] + w[1]).ln()
}

/// `Z = Tr exp(−H/T)`.
pub fn partition_function(h: &QubitHamiltonian, t: BathTemperature) -> f64 {
    log_partition_function(h, t).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn temp(t: f64) -> BathTemperature {
        BathTemperature::new(t).unwrap()
    }

    fn gap(w: f64) -> QubitHamiltonian {
        QubitHamiltonian::with_gap(w).unwrap()
    }

    // Closed-form excited population of a longitudinal qubit.
    fn p_oracle(w: f64, t: f64) -> f64 {
        1.0 / (1.0 + (w / t).exp())
    }

    fn binary_entropy(p: f64) -> f64 {
        -p * p.ln() - (1.0 - p) * (1.0 - p).ln()
    }

    #[test]
    fn gibbs_population_matches_closed_form() {
        let rho = gibbs_state(&gap(1.0), temp(1.0));
        assert_abs_diff_eq!(rho.p_excited(), p_oracle(1.0, 1.0), epsilon = 1e-15);
        assert_abs_diff_eq!(rho.p_excited(), 0.268941, epsilon = 5e-7);
        assert_eq!(rho.coherence(), real(0.0));
    }

    #[test]
    fn gibbs_temperature_limits() {
        let hot = gibbs_state(&gap(1.0), temp(1e9));
        assert_abs_diff_eq!(hot.p_excited(), 0.5, epsilon = 1e-9);
        let cold = gibbs_state(&gap(1.0), temp(1e-6));
        assert!(cold.p_excited() <= 1e-12);
    }

    #[test]
    fn gibbs_degenerate_is_maximally_mixed() {
        let rho = gibbs_state(&gap(0.0), temp(0.3));
        assert_eq!(rho, DensityOperator::maximally_mixed());
    }

    #[test]
    fn gibbs_with_transverse_field_is_diagonal_in_energy_basis() {
        let h = QubitHamiltonian::new(0.7, 0.9).unwrap();
        let t = temp(0.8);
        let rho = gibbs_state(&h, t);
        let e = h.eigen();
        let v0 = e.vector(0);
        let v1 = e.vector(1);
        let off = (v1.adjoint() * rho.matrix() * v0)[(0, 0)];
        assert!(off.norm() < 1e-15);
        let p1 = (v1.adjoint() * rho.matrix() * v1)[(0, 0)].re;
        assert_abs_diff_eq!(p1, p_oracle(h.level_spacing(), 0.8), epsilon = 1e-14);
    }

    #[test]
    fn temperature_must_be_positive() {
        assert!(BathTemperature::new(0.0).is_err());
        assert!(BathTemperature::new(-1.0).is_err());
        assert!(BathTemperature::new(f64::INFINITY).is_err());
        assert!(QubitHamiltonian::with_gap(-0.1).is_err());
    }

    #[test]
    fn mean_energy_examples() {
        assert_eq!(mean_energy(&DensityOperator::ground(), &gap(1.0)), 0.0);
        assert_abs_diff_eq!(
            mean_energy(&DensityOperator::maximally_mixed(), &gap(2.0)),
            1.0,
            epsilon = 1e-15
        );
        let rho = gibbs_state(&gap(1.0), temp(1.0));
        assert_abs_diff_eq!(
            mean_energy(&rho, &gap(1.0)),
            p_oracle(1.0, 1.0),
            epsilon = 1e-15
        );
    }

    #[test]
    fn entropy_examples() {
        let pure = DensityOperator::pure(C64::new(0.6, 0.0), C64::new(0.0, 0.8)).unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&pure), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            von_neumann_entropy(&DensityOperator::maximally_mixed()),
            std::f64::consts::LN_2,
            epsilon = 1e-15
        );
        let rho = DensityOperator::diagonal(0.268941).unwrap();
        assert_abs_diff_eq!(
            von_neumann_entropy(&rho),
            binary_entropy(0.268941),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(von_neumann_entropy(&rho), 0.58220, epsilon = 1e-4);
    }

    #[test]
    fn relative_entropy_examples() {
        let mixed = DensityOperator::maximally_mixed();
        assert_eq!(relative_entropy(&mixed, &mixed), 0.0);
        let g = gibbs_state(&gap(1.0), temp(1.0));
        assert_abs_diff_eq!(relative_entropy(&g, &g), 0.0, epsilon = 1e-15);
        let d = relative_entropy(&DensityOperator::excited(), &g);
        assert_abs_diff_eq!(d, -p_oracle(1.0, 1.0).ln(), epsilon = 1e-13);
        assert_abs_diff_eq!(d, 1.31326, epsilon = 1e-4);
    }

    #[test]
    fn relative_entropy_support_violation_is_infinite() {
        let d = relative_entropy(
            &DensityOperator::maximally_mixed(),
            &DensityOperator::ground(),
        );
        assert_eq!(d, f64::INFINITY);
        // Support of rho inside support of sigma stays finite.
        let d = relative_entropy(
            &DensityOperator::ground(),
            &DensityOperator::maximally_mixed(),
        );
        assert_abs_diff_eq!(d, std::f64::consts::LN_2, epsilon = 1e-15);
    }

    #[test]
    fn partition_function_examples() {
        assert_abs_diff_eq!(
            partition_function(&gap(1.0), temp(1.0)),
            1.0 + (-1.0f64).exp(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            partition_function(&gap(1.0), temp(1.0)),
            1.367879,
            epsilon = 5e-7
        );
        assert_abs_diff_eq!(
            partition_function(&gap(0.0), temp(3.7)),
            2.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            partition_function(&gap(2.0), temp(1.0)),
            1.135335,
            epsilon = 5e-7
        );
    }

    #[test]
    fn state_validation_rejects_bad_matrices() {
        let not_unit = Mat2::new(real(0.6), real(0.0), real(0.0), real(0.6));
        assert!(DensityOperator::new(not_unit).is_err());
        let negative = Mat2::new(real(1.2), real(0.0), real(0.0), real(-0.2));
        assert!(DensityOperator::new(negative).is_err());
        let non_herm = Mat2::new(real(0.5), C64::new(0.1, 0.0), real(0.0), real(0.5));
        assert!(DensityOperator::new(non_herm).is_err());
        assert!(DensityOperator::from_bloch(0.8, 0.8, 0.0).is_err());
        assert!(DensityOperator::diagonal(1.5).is_err());
    }
}
