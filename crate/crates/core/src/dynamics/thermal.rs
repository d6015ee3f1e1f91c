use crate::dynamics::{rk4_step, BathSpec, Sample, Trajectory, MAX_STEP_RATE};
use crate::error::{Error, Result};
use crate::linalg::{self, anticommutator, commutator, real, Mat2, C64, I};
use crate::quantum::{gibbs_state, BathTemperature, DensityOperator, QubitHamiltonian};

/// Smallest level spacing accepted by [`thermalize`]; `n̄` diverges at zero.
pub const MIN_THERMAL_SPACING: f64 = 1e-9;

fn check_stroke(h: &QubitHamiltonian, duration: f64, dt: f64) -> Result<f64> {
    let spacing = h.level_spacing();
    if spacing < MIN_THERMAL_SPACING {
        return Err(Error::domain(format!(
            "level spacing {spacing:e} below {MIN_THERMAL_SPACING:e}; thermal occupation diverges"
        )));
    }
    if !(duration > 0.0 && duration.is_finite()) {
        return Err(Error::domain(format!(
            "duration must be positive, got {duration}"
        )));
    }
    if !(dt > 0.0 && dt <= duration) {
        return Err(Error::domain(format!(
            "dt {dt} must lie in (0, {duration}]"
        )));
    }
    Ok(spacing)
}

fn sample_times(duration: f64, dt: f64) -> impl Iterator<Item = f64> {
    let n = ((duration / dt) * (1.0 - 1e-12)).ceil().max(1.0) as usize;
    (0..=n).map(move |k| duration * k as f64 / n as f64)
}

/// GKSL generator with jump operators `|g⟩⟨e|` and `|e⟩⟨g|` in the energy
/// eigenbasis of `h`.
struct Dissipator {
    h: Mat2,
    lower: Mat2,
    down: f64,
    up: f64,
}

impl Dissipator {
    fn new(h: &QubitHamiltonian, bath: &BathSpec) -> Self {
        let e = h.eigen();
        let lower = e.vector(0) * e.vector(1).adjoint();
        let rates = bath.rates(h.level_spacing());
        Self {
            h: h.matrix(),
            lower,
            down: rates.down,
            up: rates.up,
        }
    }

    fn apply(&self, rho: &Mat2) -> Mat2 {
        let mut out = commutator(&self.h, rho) * -I;
        for (l, rate) in [(self.lower, self.down), (self.lower.adjoint(), self.up)] {
            let ldl = l.adjoint() * l;
            out += (l * rho * l.adjoint() - anticommutator(&ldl, rho) * real(0.5)) * real(rate);
        }
        out
    }
}

/// Couples the qubit to `bath` with `h` held fixed, integrating the
/// detailed-balance GKSL equation with fixed-step RK4.
///
/// Requires `dt·Γ ≤ 0.1`, where Γ is the population relaxation rate.
/// Initial coherences precess at the level spacing ω, so accurate
/// off-diagonal elements additionally need `dt·ω ≪ 1`.
pub fn thermalize(
    rho0: &DensityOperator,
    h: &QubitHamiltonian,
    bath: &BathSpec,
    duration: f64,
    dt: f64,
) -> Result<Trajectory> {
    let spacing = check_stroke(h, duration, dt)?;
    let gamma = bath.relaxation_rate(spacing);
    if dt * gamma > MAX_STEP_RATE {
        return Err(Error::StepSize(format!(
            "dt·Γ = {:.4} exceeds {MAX_STEP_RATE} (Γ = {gamma:.6}); use dt ≤ {:.6e}",
            dt * gamma,
            MAX_STEP_RATE / gamma
        )));
    }
    let generator = Dissipator::new(h, bath);
    let rhs = |_t: f64, rho: &Mat2| generator.apply(rho);

    let times: Vec<f64> = sample_times(duration, dt).collect();
    let mut samples = Vec::with_capacity(times.len());
    samples.push(Sample {
        time: 0.0,
        state: *rho0,
        hamiltonian: *h,
    });
    let mut rho = *rho0.matrix();
    for w in times.windows(2) {
        rho = linalg::hermitian_part(&rk4_step(rhs, w[0], &rho, w[1] - w[0]));
        let state = DensityOperator::new(rho)
            .map_err(|e| Error::Integrator(format!("at t = {:.6}: {e}", w[1])))?;
        samples.push(Sample {
            time: w[1],
            state,
            hamiltonian: *h,
        });
    }
    Trajectory::new(samples)
}

/// Closed-form solution of the same GKSL equation as [`thermalize`]:
/// populations relax as `p_eq + (p₀ − p_eq) e^{−Γt}` and coherences decay at
/// `Γ/2` while precessing at the level spacing.
pub fn thermalize_exact(
    rho0: &DensityOperator,
    h: &QubitHamiltonian,
    bath: &BathSpec,
    duration: f64,
    dt: f64,
) -> Result<Trajectory> {
    let spacing = check_stroke(h, duration, dt)?;
    let gamma = bath.relaxation_rate(spacing);
    let basis = h.eigen().vectors;
    let to_energy = |m: &Mat2| basis.adjoint() * m * basis;
    let start = to_energy(rho0.matrix());
    let eq = to_energy(gibbs_state(h, bath.temperature).matrix());
    let (p0, p_eq, c0) = (start[(1, 1)].re, eq[(1, 1)].re, start[(1, 0)]);

    let samples = sample_times(duration, dt)
        .map(|t| {
            if t == 0.0 {
                return Ok(Sample {
                    time: t,
                    state: *rho0,
                    hamiltonian: *h,
                });
            }
            let p = p_eq + (p0 - p_eq) * (-gamma * t).exp();
            let c = c0 * (C64::new(-0.5 * gamma * t, -spacing * t)).exp();
            let m = Mat2::new(real(1.0 - p), c.conj(), c, real(p));
            let state =
                DensityOperator::new(linalg::hermitian_part(&(basis * m * basis.adjoint())))?;
            Ok(Sample {
                time: t,
                state,
                hamiltonian: *h,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Trajectory::new(samples)
}

/// Discretized isotherm: `n_steps` rounds of (gap change at frozen
/// populations, then complete re-thermalization at the new gap).
///
/// Starts from the Gibbs state at `h_start`. Each round occupies one unit of
/// time and contributes two samples: the frozen state under the new
/// Hamiltonian at `k − ½`, and the re-thermalized Gibbs state at `k`.
pub fn quasistatic_isotherm(
    h_start: &QubitHamiltonian,
    h_end: &QubitHamiltonian,
    t: BathTemperature,
    n_steps: usize,
) -> Result<Trajectory> {
    if n_steps < 1 {
        return Err(Error::domain("isotherm needs at least one step"));
    }
    if !h_start.is_longitudinal() || !h_end.is_longitudinal() {
        return Err(Error::domain(
            "quasi-static isotherms require Δ = 0 at both ends",
        ));
    }
    let (w0, w1) = (h_start.gap, h_end.gap);
    let mut state = gibbs_state(h_start, t);
    let mut samples = Vec::with_capacity(2 * n_steps + 1);
    samples.push(Sample {
        time: 0.0,
        state,
        hamiltonian: *h_start,
    });
    for k in 1..=n_steps {
        let gap = if k == n_steps {
            w1
        } else {
            w0 + (w1 - w0) * k as f64 / n_steps as f64
        };
        let h = QubitHamiltonian::with_gap(gap)?;
        samples.push(Sample {
            time: k as f64 - 0.5,
            state,
            hamiltonian: h,
        });
        state = gibbs_state(&h, t);
        samples.push(Sample {
            time: k as f64,
            state,
            hamiltonian: h,
        });
    }
    Trajectory::new(samples)
}
