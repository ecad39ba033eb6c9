//! Adaptive embedded Runge-Kutta integration for two-component complex
//! systems.
//!
//! The mode equations are smooth, non-stiff and mildly oscillatory, so an
//! explicit Dormand-Prince 5(4) pair with standard step control is adequate.

use crate::Error;
use num_complex::Complex64;

pub type State = [Complex64; 2];

/// Default relative tolerance for mode evolution.
pub const DEFAULT_RTOL: f64 = 1e-10;
/// Default absolute tolerance for mode evolution.
pub const DEFAULT_ATOL: f64 = 1e-12;

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// 5th order solution weights (same as the last row of A, FSAL pair).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
// Embedded 4th order weights.
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn axpy(y: &State, h: f64, coeffs: &[f64], k: &[State]) -> State {
    let mut out = *y;
    for (c, ki) in coeffs.iter().zip(k.iter()) {
        if *c != 0.0 {
            out[0] += h * c * ki[0];
            out[1] += h * c * ki[1];
        }
    }
    out
}

/// Integrates `y' = f(t, y)` from `t0` to `t1` (either direction) and returns
/// `y(t1)`.
pub fn integrate<F>(f: F, t0: f64, y0: State, t1: f64, rtol: f64, atol: f64) -> crate::Result<State>
where
    F: FnMut(f64, &State) -> State,
{
    let mut last = y0;
    integrate_path(f, t0, y0, &[t1], rtol, atol, |_, y| last = *y)?;
    Ok(last)
}

/// Integrates through an ordered list of checkpoints, invoking `on_sample`
/// at each one.  Checkpoints must be monotone away from `t0` (ascending for
/// forward integration, descending for backward).
pub fn integrate_path<F, S>(
    mut f: F,
    t0: f64,
    y0: State,
    checkpoints: &[f64],
    rtol: f64,
    atol: f64,
    mut on_sample: S,
) -> crate::Result<()>
where
    F: FnMut(f64, &State) -> State,
    S: FnMut(f64, &State),
{
    if !(rtol > 0.0 && atol > 0.0) {
        return Err(Error::arg("tolerances must be positive"));
    }
    if checkpoints.is_empty() {
        return Ok(());
    }
    let dir = (checkpoints[checkpoints.len() - 1] - t0).signum();
    let dir = if dir == 0.0 { 1.0 } else { dir };
    for w in checkpoints.windows(2) {
        if (w[1] - w[0]) * dir < 0.0 {
            return Err(Error::arg("checkpoints must be monotone"));
        }
    }

    let mut t = t0;
    let mut y = y0;
    let mut h = dir * 1e-3;
    let mut k: [State; 7] = [[Complex64::default(); 2]; 7];

    for &target in checkpoints {
        if (target - t) * dir < 0.0 {
            return Err(Error::arg("checkpoint behind current time"));
        }
        while (target - t) * dir > 0.0 {
            if h.abs() > (target - t).abs() {
                h = target - t;
            }
            if h.abs() < 1e-14 * t.abs().max(1.0) {
                return Err(Error::StepUnderflow { t_last: t, h });
            }
            // stages
            k[0] = f(t, &y);
            for s in 1..7 {
                let ys = axpy(&y, h, &A[s][..s.min(6)], &k[..s]);
                k[s] = f(t + C[s] * h, &ys);
            }
            let y5 = axpy(&y, h, &B5, &k);
            let y4 = axpy(&y, h, &B4, &k);
            // scaled error norm
            let mut err: f64 = 0.0;
            for i in 0..2 {
                let scale = atol + rtol * y[i].norm().max(y5[i].norm());
                err = err.max((y5[i] - y4[i]).norm() / scale);
            }
            if err <= 1.0 {
                t += h;
                y = y5;
                let fac = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                };
                h *= fac;
            } else {
                h *= (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
            }
        }
        on_sample(target, &y);
    }
    Ok(())
}
