mod common;

use proptest::prelude::*;
use qthermo::linalg::Mat2;
use qthermo::{
    gibbs_state, mean_energy, relative_entropy, thermalize_exact, von_neumann_entropy, BathSpec,
    BathTemperature, DensityOperator, QubitHamiltonian,
};
use std::f64::consts::LN_2;

fn bloch_ball() -> impl Strategy<Value = DensityOperator> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_filter("inside the Bloch ball", |(x, y, z)| {
            x * x + y * y + z * z <= 1.0
        })
        .prop_map(|(x, y, z)| DensityOperator::from_bloch(x, y, z).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn entropy_is_bounded(rho in bloch_ball()) {
        let s = von_neumann_entropy(&rho);
        prop_assert!((0.0..=LN_2).contains(&s));
    }

    #[test]
    fn relative_entropy_is_non_negative(rho in bloch_ball(), sigma in bloch_ball()) {
        prop_assert!(relative_entropy(&rho, &sigma) >= 0.0);
        prop_assert!(relative_entropy(&rho, &rho) <= 1e-12);
    }

    #[test]
    fn spectral_round_trip(rho in bloch_ball()) {
        let back: Mat2 = rho.eigen().reconstruct();
        prop_assert!(common::max_abs_diff(&back, rho.matrix()) <= 1e-12);
    }

    #[test]
    fn gibbs_matches_closed_form(w in 0.0f64..10.0, t in 0.05f64..20.0) {
        let h = QubitHamiltonian::with_gap(w).unwrap();
        let rho = gibbs_state(&h, BathTemperature::new(t).unwrap());
        prop_assert!((rho.p_excited() - common::p_excited(w, t)).abs() <= 1e-14);
        prop_assert!((von_neumann_entropy(&rho) - common::binary_entropy(common::p_excited(w, t))).abs() <= 1e-13);
    }
}

#[test]
fn mean_energy_of_gibbs_increases_with_temperature() {
    for w in [0.1, 1.0, 3.0] {
        let h = QubitHamiltonian::with_gap(w).unwrap();
        let energies: Vec<f64> = (1..=200)
            .map(|k| {
                mean_energy(
                    &gibbs_state(&h, BathTemperature::new(0.05 * k as f64).unwrap()),
                    &h,
                )
            })
            .collect();
        assert!(
            energies.windows(2).all(|e| e[1] > e[0]),
            "not increasing for ω = {w}"
        );
    }
}

#[test]
fn gibbs_is_the_unique_fixed_point_of_thermalization() {
    let h = QubitHamiltonian::new(1.2, 0.4).unwrap();
    let bath = BathSpec::new(BathTemperature::new(0.9).unwrap(), 1.0).unwrap();
    let g = gibbs_state(&h, bath.temperature);
    let gamma = bath.relaxation_rate(h.level_spacing());
    for rho in [
        DensityOperator::ground(),
        DensityOperator::excited(),
        DensityOperator::from_bloch(0.5, -0.5, 0.2).unwrap(),
    ] {
        let end = thermalize_exact(&rho, &h, &bath, 60.0 / gamma, 1.0 / gamma).unwrap();
        let d = end.last().state.trace_distance(&g);
        assert!(d < 1e-12, "distance {d}");
    }
    let held = thermalize_exact(&g, &h, &bath, 10.0, 0.5).unwrap();
    assert!(held.states().all(|s| s.trace_distance(&g) < 1e-14));
}
