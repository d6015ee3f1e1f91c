//! Time evolution of the working qubit.
//!
//! Every propagator returns a [`Trajectory`]: time-ordered samples of the
//! state together with the Hamiltonian in force at that instant. Work and
//! heat are computed from these samples by [`crate::accounting`].

mod integrator;
mod thermal;
mod unitary;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::quantum::{BathTemperature, DensityOperator, QubitHamiltonian};

pub use integrator::rk4_step;
pub use thermal::{quasistatic_isotherm, thermalize, thermalize_exact, MIN_THERMAL_SPACING};
pub use unitary::{propagator, unitary_propagate, EIGENVALUE_DRIFT_LIMIT};

/// Largest `dt·Γ` accepted by the numerical thermalization integrator.
pub const MAX_STEP_RATE: f64 = 0.1;

/// A thermal bath coupled through detailed-balance decay/excitation rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BathSpec {
    pub temperature: BathTemperature,
    /// Spontaneous-emission rate γ₀ (inverse time).
    pub base_rate: f64,
}

/// Decay (`down`) and excitation (`up`) rates for one level spacing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionRates {
    pub down: f64,
    pub up: f64,
}

impl TransitionRates {
    /// Population relaxation rate Γ = γ↓ + γ↑.
    pub fn total(&self) -> f64 {
        self.down + self.up
    }
}

impl BathSpec {
    pub fn new(temperature: BathTemperature, base_rate: f64) -> Result<Self> {
        if !(base_rate > 0.0 && base_rate.is_finite()) {
            return Err(Error::domain(format!(
                "bath rate must be positive, got {base_rate}"
            )));
        }
        Ok(Self {
            temperature,
            base_rate,
        })
    }

    /// Bosonic occupation `n̄ = 1/(e^{ω/T} − 1)` at level spacing `ω`.
    pub fn occupation(&self, spacing: f64) -> f64 {
        1.0 / (spacing / self.temperature.value()).exp_m1()
    }

    pub fn rates(&self, spacing: f64) -> TransitionRates {
        let n = self.occupation(spacing);
        TransitionRates {
            down: self.base_rate * (n + 1.0),
            up: self.base_rate * n,
        }
    }

    pub fn relaxation_rate(&self, spacing: f64) -> f64 {
        self.rates(spacing).total()
    }
}

pub type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Time-dependent control `t ↦ (ω(t), Δ(t))` on `[0, duration]`, sampled
/// with step `dt`.
#[derive(Clone)]
pub struct DriveSchedule {
    gap: Profile,
    transverse: Profile,
    duration: f64,
    dt: f64,
}

impl fmt::Debug for DriveSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DriveSchedule")
            .field("duration", &self.duration)
            .field("dt", &self.dt)
            .field("start", &self.hamiltonian_at(0.0))
            .field("end", &self.hamiltonian_at(self.duration))
            .finish()
    }
}

impl DriveSchedule {
    pub fn new(
        duration: f64,
        dt: f64,
        gap: impl Fn(f64) -> f64 + Send + Sync + 'static,
        transverse: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(duration > 0.0 && duration.is_finite()) {
            return Err(Error::domain(format!(
                "drive duration must be positive, got {duration}"
            )));
        }
        if !(dt > 0.0 && dt <= duration) {
            return Err(Error::domain(format!(
                "drive step {dt} must lie in (0, {duration}]"
            )));
        }
        let drive = Self {
            gap: Arc::new(gap),
            transverse: Arc::new(transverse),
            duration,
            dt,
        };
        // RK4 evaluates the drive at step ends and midpoints.
        let n = 2 * drive.steps();
        for k in 0..=n {
            let t = drive.duration * k as f64 / n as f64;
            let (w, d) = ((drive.gap)(t), (drive.transverse)(t));
            if !(w >= 0.0 && w.is_finite() && d.is_finite()) {
                return Err(Error::domain(format!(
                    "drive gives ω = {w}, Δ = {d} at t = {t}"
                )));
            }
        }
        Ok(drive)
    }

    /// Static Hamiltonian held for `duration`.
    pub fn constant(h: QubitHamiltonian, duration: f64, dt: f64) -> Result<Self> {
        Self::new(duration, dt, move |_| h.gap, move |_| h.transverse)
    }

    /// Linear gap ramp `ω₀ → ω₁` with no transverse field.
    pub fn gap_ramp(from: f64, to: f64, duration: f64, dt: f64) -> Result<Self> {
        Self::new(
            duration,
            dt,
            move |t| from + (to - from) * t / duration,
            |_| 0.0,
        )
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn sample_step(&self) -> f64 {
        self.dt
    }

    /// Number of integration steps; the actual step is `duration / steps`.
    pub fn steps(&self) -> usize {
        ((self.duration / self.dt) * (1.0 - 1e-12)).ceil().max(1.0) as usize
    }

    pub fn hamiltonian_at(&self, t: f64) -> QubitHamiltonian {
        QubitHamiltonian {
            gap: (self.gap)(t),
            transverse: (self.transverse)(t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub time: f64,
    pub state: DensityOperator,
    pub hamiltonian: QubitHamiltonian,
}

/// Strictly time-ordered samples of `(t, ρ(t), H(t))`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    samples: Vec<Sample>,
}

impl Trajectory {
    pub fn new(samples: Vec<Sample>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::domain("trajectory needs at least one sample"));
        }
        if let Some(w) = samples.windows(2).find(|w| !(w[1].time > w[0].time)) {
            return Err(Error::domain(format!(
                "sample times must increase strictly ({} then {})",
                w[0].time, w[1].time
            )));
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> &Sample {
        &self.samples[0]
    }

    pub fn last(&self) -> &Sample {
        self.samples.last().unwrap()
    }

    pub fn duration(&self) -> f64 {
        self.last().time - self.first().time
    }

    pub fn states(&self) -> impl Iterator<Item = &DensityOperator> {
        self.samples.iter().map(|s| &s.state)
    }

    /// Splits at sample `k`; both halves contain sample `k`.
    pub fn split_at(&self, k: usize) -> Result<(Trajectory, Trajectory)> {
        if k == 0 || k + 1 >= self.samples.len() {
            return Err(Error::domain(format!("split index {k} must be interior")));
        }
        Ok((
            Trajectory {
                samples: self.samples[..=k].to_vec(),
            },
            Trajectory {
                samples: self.samples[k..].to_vec(),
            },
        ))
    }

    /// Appends `next`, shifting its clock so it starts where `self` ends.
    ///
    /// The first sample of `next` must repeat the last sample of `self`
    /// (same state and Hamiltonian); it is stored once.
    pub fn append(&mut self, next: &Trajectory) -> Result<()> {
        let tail = *self.last();
        let head = next.first();
        let mismatch = tail.state.trace_distance(&head.state);
        if mismatch > 1e-12 || tail.hamiltonian != head.hamiltonian {
            return Err(Error::domain(format!(
                "trajectories do not join (state mismatch {mismatch:.3e}, H {:?} vs {:?})",
                tail.hamiltonian, head.hamiltonian
            )));
        }
        let offset = tail.time - head.time;
        self.samples
            .extend(next.samples[1..].iter().map(|s| Sample {
                time: s.time + offset,
                ..*s
            }));
        Ok(())
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a Trajectory>) -> Result<Trajectory> {
        let mut iter = parts.into_iter();
        let mut out = iter
            .next()
            .ok_or_else(|| Error::domain("nothing to concatenate"))?
            .clone();
        for part in iter {
            out.append(part)?;
        }
        Ok(out)
    }

    /// Largest `|Tr ρ − 1|` along the trajectory.
    pub fn max_trace_error(&self) -> f64 {
        self.states()
            .map(|s| (s.matrix().trace() - linalg::real(1.0)).norm())
            .fold(0.0, f64::max)
    }

    /// Smallest eigenvalue of any sampled state.
    pub fn min_eigenvalue(&self) -> f64 {
        self.states()
            .map(|s| s.eigen().values[0])
            .fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(t: f64, p: f64, w: f64) -> Sample {
        Sample {
            time: t,
            state: DensityOperator::diagonal(p).unwrap(),
            hamiltonian: QubitHamiltonian::with_gap(w).unwrap(),
        }
    }

    #[test]
    fn trajectory_requires_increasing_times() {
        assert!(Trajectory::new(vec![]).is_err());
        assert!(Trajectory::new(vec![sample(0.0, 0.1, 1.0), sample(0.0, 0.1, 1.0)]).is_err());
        assert!(Trajectory::new(vec![sample(1.0, 0.1, 1.0), sample(0.5, 0.1, 1.0)]).is_err());
    }

    #[test]
    fn split_and_append_round_trip() {
        let traj = Trajectory::new(
            (0..6)
                .map(|k| sample(k as f64 * 0.5, 0.1 * k as f64, 1.0 + k as f64))
                .collect(),
        )
        .unwrap();
        let (a, b) = traj.split_at(2).unwrap();
        assert_eq!(a.len() + b.len(), traj.len() + 1);
        assert_eq!(Trajectory::concat([&a, &b]).unwrap(), traj);
        assert!(traj.split_at(0).is_err());
        assert!(traj.split_at(5).is_err());
    }

    #[test]
    fn append_rejects_discontinuity() {
        let mut a = Trajectory::new(vec![sample(0.0, 0.1, 1.0), sample(1.0, 0.2, 1.0)]).unwrap();
        let b = Trajectory::new(vec![sample(0.0, 0.3, 1.0), sample(1.0, 0.2, 1.0)]).unwrap();
        assert!(a.append(&b).is_err());
    }

    #[test]
    fn drive_validation() {
        assert!(DriveSchedule::gap_ramp(1.0, 2.0, 0.0, 0.1).is_err());
        assert!(DriveSchedule::gap_ramp(1.0, 2.0, 1.0, 2.0).is_err());
        assert!(DriveSchedule::gap_ramp(1.0, -1.0, 1.0, 0.1).is_err());
        let d = DriveSchedule::gap_ramp(1.0, 2.0, 1.0, 0.3).unwrap();
        assert_eq!(d.steps(), 4);
        assert_eq!(
            DriveSchedule::gap_ramp(1.0, 2.0, 1.0, 0.1).unwrap().steps(),
            10
        );
    }

    #[test]
    fn detailed_balance_rates() {
        let bath = BathSpec::new(BathTemperature::new(1.3).unwrap(), 0.7).unwrap();
        let r = bath.rates(0.9);
        assert!((r.up / r.down - (-0.9f64 / 1.3).exp()).abs() < 1e-15);
        assert!(BathSpec::new(BathTemperature::new(1.0).unwrap(), 0.0).is_err());
    }
}
