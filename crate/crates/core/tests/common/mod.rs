//! Closed-form oracles shared by the integration tests. Nothing here calls
//! into the crate's numerical routines.
#![allow(dead_code)]

use num_complex::Complex64 as C64;
use qthermo::linalg::Mat2;
use qthermo::DensityOperator;
use rand::Rng;

/// Excited population of a longitudinal qubit at gap `w`, temperature `t`.
pub fn p_excited(w: f64, t: f64) -> f64 {
    1.0 / (1.0 + (w / t).exp())
}

pub fn binary_entropy(p: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.ln() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Relaxation rate Γ = γ₀ coth(ω/2T) of the detailed-balance bath.
pub fn relaxation_rate(gamma0: f64, w: f64, t: f64) -> f64 {
    gamma0 / (w / (2.0 * t)).tanh()
}

/// `exp(−i H dt)` for `H = ω|e⟩⟨e| + (Δ/2)σx`, via the Pauli-vector formula.
pub fn expm_qubit(w: f64, delta: f64, dt: f64) -> Mat2 {
    // H = (ω/2) I + (Δ/2) σx − (ω/2) σz
    let (a0, ax, az) = (0.5 * w, 0.5 * delta, -0.5 * w);
    let norm = ax.hypot(az);
    let (c, s) = ((norm * dt).cos(), (norm * dt).sin());
    let (nx, nz) = if norm > 0.0 {
        (ax / norm, az / norm)
    } else {
        (0.0, 0.0)
    };
    let phase = C64::new(0.0, -a0 * dt).exp();
    let i = C64::new(0.0, 1.0);
    Mat2::new(
        phase * (c - i * s * nz),
        phase * (-i * s * nx),
        phase * (-i * s * nx),
        phase * (c + i * s * nz),
    )
}

/// Uniform point in the Bloch ball (rejection sampled).
pub fn random_state(rng: &mut impl Rng) -> DensityOperator {
    loop {
        let (x, y, z): (f64, f64, f64) = (
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        if x * x + y * y + z * z <= 1.0 {
            return DensityOperator::from_bloch(x, y, z).unwrap();
        }
    }
}

pub fn max_abs_diff(a: &Mat2, b: &Mat2) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
