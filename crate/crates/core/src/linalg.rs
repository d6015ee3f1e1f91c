//! Closed-form linear algebra for 2×2 complex matrices.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;
pub type Vec2 = Vector2<C64>;

pub const I: C64 = C64::new(0.0, 1.0);

pub fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Spectral decomposition of a Hermitian 2×2 matrix.
///
/// Eigenvalues are sorted ascending; `vectors` holds the matching
/// orthonormal eigenvectors as columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigh2 {
    pub values: [f64; 2],
    pub vectors: Mat2,
}

impl Eigh2 {
    pub fn vector(&self, i: usize) -> Vec2 {
        self.vectors.column(i).into_owned()
    }

    /// Rebuilds `Σ f(λᵢ) |vᵢ⟩⟨vᵢ|`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Mat2 {
        let mut out = Mat2::zeros();
        for i in 0..2 {
            let v = self.vector(i);
            out += v * v.adjoint() * real(f(self.values[i]));
        }
        out
    }

    pub fn reconstruct(&self) -> Mat2 {
        self.map(|x| x)
    }
}

/// Eigendecomposition of the Hermitian part of `m`.
///
/// Diagonal input yields exact canonical basis vectors, so populations of
/// diagonal states are never polluted by rounding in the basis change.
pub fn eigh(m: &Mat2) -> Eigh2 {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = (m[(0, 1)] + m[(1, 0)].conj()) * 0.5;
    let mean = 0.5 * (a + d);
    let half = 0.5 * (d - a);
    let b2 = b.norm_sqr();
    if b2 == 0.0 {
        let (lo, hi) = if a <= d { (0, 1) } else { (1, 0) };
        let mut vectors = Mat2::zeros();
        vectors[(lo, 0)] = real(1.0);
        vectors[(hi, 1)] = real(1.0);
        return Eigh2 {
            values: [a.min(d), a.max(d)],
            vectors,
        };
    }
    let r = half.hypot(b.norm());
    // (a - λ₋) x + b y = 0 with λ₋ - a = half - r, evaluated without cancellation.
    let shift = if half >= 0.0 {
        -b2 / (half + r)
    } else {
        half - r
    };
    let lo = Vec2::new(b, real(shift)).normalize();
    let hi = Vec2::new(-lo[1].conj(), lo[0].conj());
    Eigh2 {
        values: [mean - r, mean + r],
        vectors: Mat2::from_columns(&[lo, hi]),
    }
}

pub fn commutator(a: &Mat2, b: &Mat2) -> Mat2 {
    a * b - b * a
}

pub fn anticommutator(a: &Mat2, b: &Mat2) -> Mat2 {
    a * b + b * a
}

/// Real part of `Tr[a b]`.
pub fn trace_product(a: &Mat2, b: &Mat2) -> f64 {
    (a * b).trace().re
}

pub fn hermitian_part(m: &Mat2) -> Mat2 {
    (m + m.adjoint()) * real(0.5)
}

/// Largest element-wise deviation from hermiticity.
pub fn hermiticity_defect(m: &Mat2) -> f64 {
    (m - m.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Trace distance `½‖a − b‖₁` of two Hermitian matrices.
pub fn trace_distance(a: &Mat2, b: &Mat2) -> f64 {
    let e = eigh(&(a - b));
    0.5 * (e.values[0].abs() + e.values[1].abs())
}

/// Largest element-wise deviation of `u†u` from the identity.
pub fn unitarity_defect(u: &Mat2) -> f64 {
    (u.adjoint() * u - Mat2::identity())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Unitary factor of the polar decomposition, `u (u†u)^{-1/2}`.
pub fn nearest_unitary(u: &Mat2) -> Mat2 {
    let gram = eigh(&(u.adjoint() * u));
    u * gram.map(|x| 1.0 / x.sqrt())
}

/// `exp(-i h t)` for Hermitian `h`.
pub fn unitary_exp(h: &Mat2, t: f64) -> Mat2 {
    let e = eigh(h);
    let mut out = Mat2::zeros();
    for i in 0..2 {
        let v = e.vector(i);
        out += v * v.adjoint() * (-I * e.values[i] * t).exp();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn herm(a: f64, d: f64, b: C64) -> Mat2 {
        Mat2::new(real(a), b, b.conj(), real(d))
    }

    #[test]
    fn eigh_diagonal_is_exact() {
        let e = eigh(&herm(2.0, 0.5, C64::new(0.0, 0.0)));
        assert_eq!(e.values, [0.5, 2.0]);
        assert_eq!(e.vectors[(1, 0)], real(1.0));
        assert_eq!(e.vectors[(0, 1)], real(1.0));
    }

    #[test]
    fn eigh_reconstructs_general_hermitian() {
        for (a, d, b) in [
            (0.3, 0.7, C64::new(0.1, -0.2)),
            (1.0, -1.0, C64::new(1e-9, 3e-9)),
            (-2.0, 5.0, C64::new(-4.0, 0.5)),
            (0.5, 0.5, C64::new(0.0, 0.5)),
        ] {
            let m = herm(a, d, b);
            let e = eigh(&m);
            assert!(e.values[0] <= e.values[1]);
            let diff = (e.reconstruct() - m)
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-14, "reconstruction error {diff}");
            assert!(unitarity_defect(&e.vectors) < 1e-14);
        }
    }

    #[test]
    fn trace_distance_of_orthogonal_pure_states_is_one() {
        let g = herm(1.0, 0.0, real(0.0));
        let x = herm(0.0, 1.0, real(0.0));
        assert!((trace_distance(&g, &x) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn nearest_unitary_fixes_small_defects() {
        let h = herm(0.2, -0.4, C64::new(0.3, 0.1));
        let u = unitary_exp(&h, 1.3) * real(1.0 + 1e-7);
        assert!(unitarity_defect(&u) > 1e-8);
        assert!(unitarity_defect(&nearest_unitary(&u)) < 1e-15);
    }
}
