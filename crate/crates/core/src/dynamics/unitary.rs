use crate::dynamics::{rk4_step, DriveSchedule, Sample, Trajectory};
use crate::error::{Error, Result};
use crate::linalg::{self, commutator, Mat2, I};
use crate::quantum::DensityOperator;

/// Largest tolerated drift of the spectrum of ρ under unitary propagation.
pub const EIGENVALUE_DRIFT_LIMIT: f64 = 1e-6;

/// Evolves `rho0` under `ρ̇ = −i[H(t), ρ]`, sampling every integration step.
pub fn unitary_propagate(rho0: &DensityOperator, drive: &DriveSchedule) -> Result<Trajectory> {
    let n = drive.steps();
    let h = drive.duration() / n as f64;
    let rhs = |t: f64, rho: &Mat2| commutator(&drive.hamiltonian_at(t).matrix(), rho) * -I;
    let spectrum0 = rho0.eigen().values;

    let mut samples = Vec::with_capacity(n + 1);
    samples.push(Sample {
        time: 0.0,
        state: *rho0,
        hamiltonian: drive.hamiltonian_at(0.0),
    });
    let mut rho = *rho0.matrix();
    for k in 0..n {
        let t = k as f64 * h;
        rho = linalg::hermitian_part(&rk4_step(rhs, t, &rho, h));
        let t_next = (k + 1) as f64 * h;
        let spectrum = linalg::eigh(&rho).values;
        let drift = (spectrum[0] - spectrum0[0])
            .abs()
            .max((spectrum[1] - spectrum0[1]).abs());
        if drift > EIGENVALUE_DRIFT_LIMIT {
            return Err(Error::Integrator(format!(
                "eigenvalue drift {drift:.3e} at t = {t_next:.6} exceeds {EIGENVALUE_DRIFT_LIMIT:e}; \
                 reduce dt (currently {h:.3e})"
            )));
        }
        let state = DensityOperator::new(rho)
            .map_err(|e| Error::Integrator(format!("at t = {t_next:.6}: {e}; reduce dt")))?;
        samples.push(Sample {
            time: t_next,
            state,
            hamiltonian: drive.hamiltonian_at(t_next),
        });
    }
    Trajectory::new(samples)
}

/// Propagator `U(t_f)` of `U̇ = −iH(t)U`, integrated with RK4 and projected
/// onto the nearest unitary.
pub fn propagator(drive: &DriveSchedule) -> Result<Mat2> {
    let n = drive.steps();
    let h = drive.duration() / n as f64;
    let rhs = |t: f64, u: &Mat2| drive.hamiltonian_at(t).matrix() * u * -I;
    let mut u = Mat2::identity();
    for k in 0..n {
        u = rk4_step(rhs, k as f64 * h, &u, h);
    }
    let defect = linalg::unitarity_defect(&u);
    if defect > EIGENVALUE_DRIFT_LIMIT {
        return Err(Error::Integrator(format!(
            "propagator unitarity defect {defect:.3e}; reduce dt (currently {h:.3e})"
        )));
    }
    Ok(linalg::nearest_unitary(&u))
}
