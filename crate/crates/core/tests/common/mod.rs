//! Test-only oracles, independent of the library's integration path.

use num_complex::Complex64;

/// Classic fixed-step RK4 for the de Sitter mode equation
/// `i u' = [[m, -lambda/cosh t], [-lambda/cosh t, -m]] u`.
///
/// Different method and order than the library's adaptive Dormand-Prince
/// integrator; used as an independent reference.
pub fn rk4_evolve_mode(
    lambda: f64,
    m: f64,
    u0: [Complex64; 2],
    t0: f64,
    t1: f64,
    n_steps: usize,
) -> [Complex64; 2] {
    let rhs = |t: f64, y: &[Complex64; 2]| -> [Complex64; 2] {
        let r = t.cosh();
        let mi = Complex64::new(0.0, -1.0);
        [
            mi * (m * y[0] - lambda / r * y[1]),
            mi * (-lambda / r * y[0] - m * y[1]),
        ]
    };
    let h = (t1 - t0) / n_steps as f64;
    let mut t = t0;
    let mut y = u0;
    for _ in 0..n_steps {
        let k1 = rhs(t, &y);
        let y2 = [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]];
        let k2 = rhs(t + 0.5 * h, &y2);
        let y3 = [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]];
        let k3 = rhs(t + 0.5 * h, &y3);
        let y4 = [y[0] + h * k3[0], y[1] + h * k3[1]];
        let k4 = rhs(t + h, &y4);
        y = [
            y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ];
        t += h;
    }
    y
}
