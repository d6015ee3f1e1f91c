use crate::linalg::{real, Mat2};

/// One classical fourth-order Runge–Kutta step of `ẏ = f(t, y)`.
pub fn rk4_step(f: impl Fn(f64, &Mat2) -> Mat2, t: f64, y: &Mat2, h: f64) -> Mat2 {
    let half = real(0.5 * h);
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &(y + k1 * half));
    let k3 = f(t + 0.5 * h, &(y + k2 * half));
    let k4 = f(t + h, &(y + k3 * real(h)));
    y + (k1 + (k2 + k3) * real(2.0) + k4) * real(h / 6.0)
}
