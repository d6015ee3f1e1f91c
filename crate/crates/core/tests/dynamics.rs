mod common;

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use qthermo::linalg::Mat2;
use qthermo::{
    entropy_production, gibbs_state, integrate_heat, integrate_work, quasistatic_isotherm,
    relative_entropy, thermalize, thermalize_exact, unitary_propagate, von_neumann_entropy,
    BathSpec, BathTemperature, DensityOperator, DriveSchedule, Error, QubitHamiltonian, Trajectory,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn temp(t: f64) -> BathTemperature {
    BathTemperature::new(t).unwrap()
}

fn gap(w: f64) -> QubitHamiltonian {
    QubitHamiltonian::with_gap(w).unwrap()
}

fn energy_populations(rho: &DensityOperator, h: &QubitHamiltonian) -> [f64; 2] {
    let v = h.eigen().vectors;
    let m = v.adjoint() * rho.matrix() * v;
    [m[(0, 0)].re, m[(1, 1)].re]
}

fn spectrum_drift(traj: &Trajectory) -> f64 {
    let s0 = traj.first().state.eigen().values;
    traj.states()
        .map(|s| {
            let v = s.eigen().values;
            (v[0] - s0[0]).abs().max((v[1] - s0[1]).abs())
        })
        .fold(0.0, f64::max)
}

// ---- unitary propagation ----

#[test]
fn constant_hamiltonian_preserves_energy_populations() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let rho = common::random_state(&mut rng);
        let h =
            QubitHamiltonian::new(rng.random_range(0.0..2.0), rng.random_range(-1.0..1.0)).unwrap();
        let drive = DriveSchedule::constant(h, 5.0, 0.005).unwrap();
        let traj = unitary_propagate(&rho, &drive).unwrap();
        let (a, b) = (
            energy_populations(&rho, &h),
            energy_populations(&traj.last().state, &h),
        );
        assert!((a[1] - b[1]).abs() < 1e-9);
        assert!(spectrum_drift(&traj) < 1e-9);
        assert_eq!(integrate_work(&traj).unwrap(), 0.0);
        assert!(integrate_heat(&traj).unwrap().abs() < 1e-9);
    }
}

#[test]
fn commuting_drive_keeps_diagonal_populations() {
    let rho = DensityOperator::diagonal(0.37).unwrap();
    let drive = DriveSchedule::new(3.0, 0.01, |t| 1.0 + 0.5 * (2.0 * t).sin(), |_| 0.0).unwrap();
    let traj = unitary_propagate(&rho, &drive).unwrap();
    for s in traj.samples() {
        assert_eq!(s.state.p_excited(), 0.37);
        assert_eq!(s.state.coherence(), C64::new(0.0, 0.0));
    }
    assert_eq!(integrate_heat(&traj).unwrap(), 0.0);
}

#[test]
fn rabi_pi_pulse_inverts_the_ground_state() {
    let t_f = 2.0;
    let delta = PI / t_f;
    let drive = DriveSchedule::new(t_f, 0.002, |_| 0.0, move |_| delta).unwrap();
    let traj = unitary_propagate(&DensityOperator::ground(), &drive).unwrap();
    assert!((traj.last().state.p_excited() - 1.0).abs() < 1e-6);
    // Every sample against the closed-form exponential.
    let g = DensityOperator::ground();
    for s in traj.samples() {
        let u = common::expm_qubit(0.0, delta, s.time);
        let expected: Mat2 = u * g.matrix() * u.adjoint();
        assert!(common::max_abs_diff(s.state.matrix(), &expected) < 1e-10);
    }
}

#[test]
fn unitary_drive_conserves_entropy_and_produces_no_heat() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let rho = common::random_state(&mut rng);
        let (w0, a, d0) = (
            rng.random_range(0.5..1.5),
            rng.random_range(0.0..0.4),
            rng.random_range(0.2..1.0),
        );
        let drive = DriveSchedule::new(
            2.0,
            1e-4,
            move |t| w0 + a * (1.5 * t).sin(),
            move |t| d0 * (0.7 * t).cos(),
        )
        .unwrap();
        let traj = unitary_propagate(&rho, &drive).unwrap();
        assert!(spectrum_drift(&traj) < 1e-9);
        let s0 = von_neumann_entropy(&rho);
        assert!(traj
            .states()
            .all(|s| (von_neumann_entropy(s) - s0).abs() < 1e-9));
        let q = integrate_heat(&traj).unwrap();
        assert!(q.abs() < 1e-9, "heat {q:e}");
    }
}

#[test]
fn oversized_step_is_an_integrator_error() {
    let drive =
        DriveSchedule::constant(QubitHamiltonian::new(40.0, 30.0).unwrap(), 10.0, 0.5).unwrap();
    let rho = DensityOperator::from_bloch(0.6, 0.0, 0.0).unwrap();
    assert!(matches!(
        unitary_propagate(&rho, &drive),
        Err(Error::Integrator(_))
    ));
}

// ---- thermalization ----

#[test]
fn excited_state_relaxes_to_gibbs_population() {
    let bath = BathSpec::new(temp(1.0), 1.0).unwrap();
    let gamma = common::relaxation_rate(1.0, 1.0, 1.0);
    assert!((bath.relaxation_rate(1.0) - gamma).abs() < 1e-14);
    let duration = 40.0 / gamma;
    let traj = thermalize(
        &DensityOperator::excited(),
        &gap(1.0),
        &bath,
        duration,
        0.02,
    )
    .unwrap();
    let p = traj.last().state.p_excited();
    assert!((p - common::p_excited(1.0, 1.0)).abs() < 1e-9);
    assert!((p - 0.268941).abs() < 5e-7);
}

#[test]
fn one_time_constant_of_relaxation() {
    let bath = BathSpec::new(temp(1.0), 1.0).unwrap();
    let gamma = common::relaxation_rate(1.0, 1.0, 1.0);
    let expected = common::p_excited(1.0, 1.0) * (1.0 - (-1.0f64).exp());
    for traj in [
        thermalize(
            &DensityOperator::ground(),
            &gap(1.0),
            &bath,
            1.0 / gamma,
            0.01,
        )
        .unwrap(),
        thermalize_exact(
            &DensityOperator::ground(),
            &gap(1.0),
            &bath,
            1.0 / gamma,
            0.01,
        )
        .unwrap(),
    ] {
        assert!((traj.last().state.p_excited() - expected).abs() < 1e-6);
    }
}

#[test]
fn rk4_matches_closed_form_within_contract() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let rho = common::random_state(&mut rng);
        let h =
            QubitHamiltonian::new(rng.random_range(0.3..2.0), rng.random_range(-0.5..0.5)).unwrap();
        let bath =
            BathSpec::new(temp(rng.random_range(0.2..3.0)), rng.random_range(0.2..2.0)).unwrap();
        let gamma = bath.relaxation_rate(h.level_spacing());
        // Coherences precess at the level spacing, which the step must resolve too.
        let dt = (0.05 / gamma).min(0.01 / h.level_spacing());
        let a = thermalize(&rho, &h, &bath, 40.0 / gamma, dt).unwrap();
        let b = thermalize_exact(&rho, &h, &bath, 40.0 / gamma, dt).unwrap();
        for (x, y) in a.states().zip(b.states()) {
            assert!(x.trace_distance(y) < 1e-8);
        }
    }
}

#[test]
fn relative_entropy_to_gibbs_never_increases() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..25 {
        let rho = common::random_state(&mut rng);
        let h =
            QubitHamiltonian::new(rng.random_range(0.2..2.0), rng.random_range(-0.5..0.5)).unwrap();
        let bath = BathSpec::new(temp(rng.random_range(0.2..3.0)), 1.0).unwrap();
        let g = gibbs_state(&h, bath.temperature);
        let gamma = bath.relaxation_rate(h.level_spacing());
        let traj = thermalize(&rho, &h, &bath, 10.0 / gamma, 0.05 / gamma).unwrap();
        let d: Vec<f64> = traj.states().map(|s| relative_entropy(s, &g)).collect();
        assert!(d.windows(2).all(|w| w[1] <= w[0] + 1e-10));
        assert!(traj.max_trace_error() <= 1e-10);
        assert!(traj.min_eigenvalue() >= -1e-10);
    }
}

#[test]
fn rk4_thermalization_is_fourth_order() {
    let bath = BathSpec::new(temp(1.0), 1.0).unwrap();
    let gamma = common::relaxation_rate(1.0, 1.0, 1.0);
    let duration = 2.0 / gamma;
    let p_eq = common::p_excited(1.0, 1.0);
    let exact = p_eq + (1.0 - p_eq) * (-gamma * duration).exp();
    let err = |dt: f64| {
        let traj = thermalize(&DensityOperator::excited(), &gap(1.0), &bath, duration, dt).unwrap();
        (traj.last().state.p_excited() - exact).abs()
    };
    let steps = [0.1 / gamma, 0.05 / gamma, 0.025 / gamma, 0.0125 / gamma];
    let errors: Vec<f64> = steps.iter().map(|&dt| err(dt)).collect();
    for w in errors.windows(2) {
        assert!(w[0] / w[1] >= 8.0, "errors {errors:?}");
    }
}

// ---- quasi-static isotherms ----

#[test]
fn null_isotherm_exchanges_nothing() {
    let traj = quasistatic_isotherm(&gap(1.0), &gap(1.0), temp(0.7), 5).unwrap();
    assert_eq!(integrate_work(&traj).unwrap(), 0.0);
    assert_eq!(integrate_heat(&traj).unwrap(), 0.0);
    assert_eq!(entropy_production(&traj, temp(0.7)).unwrap(), 0.0);
}

#[test]
fn isotherm_checkpoints_are_gibbs_states() {
    let t = temp(2.0);
    let traj = quasistatic_isotherm(&gap(2.0), &gap(1.5), t, 8).unwrap();
    for s in traj.samples().iter().step_by(2) {
        let p = common::p_excited(s.hamiltonian.gap, 2.0);
        assert!((s.state.p_excited() - p).abs() < 1e-15);
    }
}

#[test]
fn refining_an_isotherm_lowers_entropy_production() {
    let t = temp(2.0);
    let sigma = |n| {
        let traj = quasistatic_isotherm(&gap(2.0), &gap(1.5), t, n).unwrap();
        entropy_production(&traj, t).unwrap()
    };
    assert!(sigma(2) < sigma(1));
    assert!(sigma(1) > 0.0);
}

#[test]
fn isotherm_heat_converges_to_reversible_value_as_one_over_n() {
    let t = 2.0;
    let delta_s = common::binary_entropy(common::p_excited(1.5, t))
        - common::binary_entropy(common::p_excited(2.0, t));
    let deviation = |n: usize| {
        let traj = quasistatic_isotherm(&gap(2.0), &gap(1.5), temp(t), n).unwrap();
        (integrate_heat(&traj).unwrap() - t * delta_s).abs()
    };
    let scaled: Vec<f64> = [10, 20, 40, 80]
        .iter()
        .map(|&n| n as f64 * deviation(n))
        .collect();
    let c = scaled.iter().cloned().fold(0.0, f64::max);
    let c_min = scaled.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(c_min > 0.0 && c / c_min < 1.05, "n·|Q − TΔS| = {scaled:?}");
    for n in [10, 20, 40, 80, 160, 320] {
        assert!(deviation(n) <= c / n as f64 * 1.001);
    }
}
