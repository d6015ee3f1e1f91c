use qthermo_web::{otto_cycle, relaxation_curve, work_distribution};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn otto_cycle_reference_point() {
    let v = parse(otto_cycle(1.0, 2.0, 1.0, 1.5).unwrap());
    let p = |w: f64, t: f64| 1.0 / (1.0 + (w / t).exp());
    assert!((v["w_ext"].as_f64().unwrap() - 0.5 * (p(1.5, 2.0) - p(1.0, 1.0))).abs() < 1e-12);
    assert!((v["eta"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);
    let omega = v["path"]["omega"].as_array().unwrap();
    assert_eq!(
        omega.len(),
        v["path"]["p_excited"].as_array().unwrap().len()
    );
    assert_eq!(omega.first(), omega.last());
}

#[test]
fn otto_cycle_rejects_inverted_baths() {
    assert!(otto_cycle(2.0, 1.0, 1.0, 1.5)
        .unwrap_err()
        .contains("T_c < T_h"));
}

#[test]
fn relaxation_curve_decays_to_gibbs() {
    let v = parse(relaxation_curve(1.0, 1.0, 1.0, 1.0, 20.0, 200).unwrap());
    let p: Vec<f64> = v["p_excited"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(p.len(), 201);
    assert_eq!(p[0], 1.0);
    assert!((p[200] - 1.0 / (1.0 + 1f64.exp())).abs() < 1e-12);
    let d: Vec<f64> = v["relative_entropy"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    // The Gibbs state has full rank, so D stays finite.
    assert!(d.iter().all(|x| x.is_finite()));
    assert!(d.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    assert!(relaxation_curve(1.0, -1.0, 1.0, 1.0, 1.0, 10).is_err());
}

#[test]
fn work_distribution_satisfies_jarzynski() {
    let v = parse(work_distribution(1.0, 1.0, 2.0, 0.0, 0.0).unwrap());
    let expected = (1.0 + (-2.0f64).exp()) / (1.0 + (-1.0f64).exp());
    assert!((v["lhs"].as_f64().unwrap() - expected).abs() < 1e-12);
    assert_eq!(v["outcomes"].as_array().unwrap().len(), 2);
    let ramp = parse(work_distribution(0.7, 1.0, 2.0, 0.4, 3.0).unwrap());
    assert!(ramp["gap"].as_f64().unwrap() < 1e-10);
    assert_eq!(ramp["outcomes"].as_array().unwrap().len(), 4);
}
