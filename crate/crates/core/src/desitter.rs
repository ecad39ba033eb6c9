//! Single-mode Dirac dynamics in de Sitter space-time.
//!
//! With scale factor `R(t) = cosh t`, a spatial mode with eigenvalue `lambda`
//! reduces the Dirac equation to
//!
//! ```text
//! i u' = [[ m, -lambda/R], [-lambda/R, -m]] u .
//! ```
//!
//! The phase-dressed variable `u = (e^{-imt} f1, e^{imt} f2)` converges to
//! constant vectors `f^+-` as `t -> +-inf`, with the certified envelope
//! `||f(t) - f^+-|| <= ||f|| (exp(2|lambda| e^{-+t}) - 1)`.  All asymptotic
//! extraction happens in the `f`-picture, where truncation at a finite time
//! carries that explicit error bound.

use crate::ode::{self, State, DEFAULT_ATOL};
use crate::{Error, HalfInt, Mat2, SpinorPair};
use num_complex::Complex64;

/// Largest `|lambda|` accepted by default; the certified envelope grows like
/// `exp(2 |lambda|)`, so large modes are prohibitively expensive to certify.
pub const LAMBDA_BUDGET: HalfInt = HalfInt::from_doubled(19);

/// Direction of the asymptotic limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `t -> +inf`
    Future,
    /// `t -> -inf`
    Past,
}

/// A single spatial mode at fixed mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeSitterMode {
    lambda: HalfInt,
    mass: f64,
}

impl DeSitterMode {
    pub fn new(lambda: HalfInt, mass: f64) -> crate::Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::arg(format!("mass must be positive, got {mass}")));
        }
        if lambda.doubled().abs() > LAMBDA_BUDGET.doubled() {
            return Err(Error::arg(format!(
                "|lambda| = {} exceeds the certified budget {}",
                lambda, LAMBDA_BUDGET
            )));
        }
        Ok(DeSitterMode { lambda, mass })
    }

    pub fn lambda(&self) -> HalfInt {
        self.lambda
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    fn u_rhs(&self) -> impl Fn(f64, &State) -> State {
        let m = self.mass;
        let l = self.lambda.value();
        move |t: f64, y: &State| {
            let r = t.cosh();
            let mi = Complex64::new(0.0, -1.0);
            [
                mi * (m * y[0] - l / r * y[1]),
                mi * (-l / r * y[0] - m * y[1]),
            ]
        }
    }

    fn f_rhs(&self) -> impl Fn(f64, &State) -> State {
        let m = self.mass;
        let l = self.lambda.value();
        move |t: f64, y: &State| {
            let r = t.cosh();
            let phase = Complex64::new(0.0, 2.0 * m * t).exp();
            let c = Complex64::new(0.0, l / r);
            [c * phase * y[1], c * phase.conj() * y[0]]
        }
    }
}

fn to_state(u: &SpinorPair) -> State {
    [u.u1, u.u2]
}

fn to_spinor(y: &State) -> SpinorPair {
    SpinorPair::new(y[0], y[1])
}

/// Maps `f`-picture data at time `t` to `u`-picture data.
pub fn phase_dress(f: &SpinorPair, mass: f64, t: f64) -> SpinorPair {
    SpinorPair::new(
        f.u1 * Complex64::new(0.0, -mass * t).exp(),
        f.u2 * Complex64::new(0.0, mass * t).exp(),
    )
}

/// Inverse of [`phase_dress`].
pub fn phase_strip(u: &SpinorPair, mass: f64, t: f64) -> SpinorPair {
    SpinorPair::new(
        u.u1 * Complex64::new(0.0, mass * t).exp(),
        u.u2 * Complex64::new(0.0, -mass * t).exp(),
    )
}

/// Evolves Cauchy data `u(t0) = u0` to time `t1`.
pub fn evolve_mode(
    u0: &SpinorPair,
    mode: &DeSitterMode,
    t0: f64,
    t1: f64,
    rtol: f64,
) -> crate::Result<SpinorPair> {
    if t0 == t1 {
        return Ok(*u0);
    }
    let y = ode::integrate(mode.u_rhs(), t0, to_state(u0), t1, rtol, DEFAULT_ATOL)?;
    Ok(to_spinor(&y))
}

/// Evolves the dressed variable `f(t0) = f0` to time `t1`.
pub fn evolve_f(
    f0: &SpinorPair,
    mode: &DeSitterMode,
    t0: f64,
    t1: f64,
    rtol: f64,
) -> crate::Result<SpinorPair> {
    if t0 == t1 || mode.lambda().is_zero() {
        // the right side vanishes identically at lambda = 0
        return Ok(*f0);
    }
    let y = ode::integrate(mode.f_rhs(), t0, to_state(f0), t1, rtol, DEFAULT_ATOL)?;
    Ok(to_spinor(&y))
}

/// Evolves Cauchy data from `t0` through a monotone list of sample times,
/// returning `u` at each one.
pub fn evolve_mode_path(
    u0: &SpinorPair,
    mode: &DeSitterMode,
    t0: f64,
    times: &[f64],
    rtol: f64,
) -> crate::Result<Vec<SpinorPair>> {
    let mut out = Vec::with_capacity(times.len());
    ode::integrate_path(
        mode.u_rhs(),
        t0,
        to_state(u0),
        times,
        rtol,
        DEFAULT_ATOL,
        |_, y| out.push(to_spinor(y)),
    )?;
    Ok(out)
}

/// Evolves dressed data from `t0` through a monotone list of sample times.
pub fn evolve_f_path(
    f0: &SpinorPair,
    mode: &DeSitterMode,
    t0: f64,
    times: &[f64],
    rtol: f64,
) -> crate::Result<Vec<SpinorPair>> {
    if mode.lambda().is_zero() {
        return Ok(vec![*f0; times.len()]);
    }
    let mut out = Vec::with_capacity(times.len());
    ode::integrate_path(
        mode.f_rhs(),
        t0,
        to_state(f0),
        times,
        rtol,
        DEFAULT_ATOL,
        |_, y| out.push(to_spinor(y)),
    )?;
    Ok(out)
}

/// Evolves the fundamental 2x2 propagator of the mode equation from `t0`,
/// sampling it at each checkpoint.  Checkpoints must be monotone away from
/// `t0`.
pub(crate) fn evolve_propagator_path<S>(
    mode: &DeSitterMode,
    t0: f64,
    checkpoints: &[f64],
    rtol: f64,
    mut on_sample: S,
) -> crate::Result<()>
where
    S: FnMut(usize, &Mat2),
{
    // evolve both basis columns in one 4-component pass by interleaving two
    // independent 2-component systems
    let rhs = mode.u_rhs();
    let mut cols = [to_state(&SpinorPair::e1()), to_state(&SpinorPair::e2())];
    let mut t = t0;
    for (idx, &target) in checkpoints.iter().enumerate() {
        for col in cols.iter_mut() {
            *col = ode::integrate(&rhs, t, *col, target, rtol, DEFAULT_ATOL)?;
        }
        t = target;
        on_sample(
            idx,
            &Mat2::from_columns(&to_spinor(&cols[0]), &to_spinor(&cols[1])),
        );
    }
    Ok(())
}

/// The certified Gronwall bound `f_norm * (exp(2 |lambda| e^{-+t}) - 1)` on
/// the distance from the asymptotic form in the given direction.
pub fn gronwall_envelope(lambda: HalfInt, f_norm: f64, t: f64, direction: Direction) -> f64 {
    let decay = match direction {
        Direction::Future => (-t).exp(),
        Direction::Past => t.exp(),
    };
    f_norm * (2.0 * lambda.abs() * decay).exp_m1()
}

/// Smallest truncation time for which the envelope factor drops below `eps`.
pub fn truncation_time(lambda: HalfInt, eps: f64) -> crate::Result<f64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::arg("eps must be positive and finite"));
    }
    if lambda.is_zero() {
        return Ok(0.0);
    }
    let l1p = eps.ln_1p();
    if l1p <= 0.0 {
        return Err(Error::arg("eps underflows the envelope inversion"));
    }
    // exp(2|lambda| e^{-T}) - 1 < eps  <=>  T > ln(2|lambda| / ln(1 + eps));
    // a small margin makes the inequality strict after roundoff
    let t = (2.0 * lambda.abs() / l1p).ln();
    Ok(t.max(0.0) + 0.01)
}

/// Asymptotic in/out coefficients of a single mode solution with a certified
/// truncation residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticData {
    /// `f^+`, the `t -> +inf` coefficients.
    pub f_plus: SpinorPair,
    /// `f^-`, the `t -> -inf` coefficients.
    pub f_minus: SpinorPair,
    /// Truncation time on the future side.
    pub t_plus: f64,
    /// Truncation time on the past side (non-positive).
    pub t_minus: f64,
    /// Gronwall residual at the truncation times, scaled by the data norm.
    pub tail_bound: f64,
}

/// Extracts the asymptotic coefficients of the solution with Cauchy data `u0`
/// at `t = 0`, truncating where the Gronwall envelope drops below `eps`.
pub fn extract_asymptotics(
    u0: &SpinorPair,
    mode: &DeSitterMode,
    eps: f64,
) -> crate::Result<AsymptoticData> {
    extract_asymptotics_rtol(u0, mode, eps, ode::DEFAULT_RTOL)
}

pub fn extract_asymptotics_rtol(
    u0: &SpinorPair,
    mode: &DeSitterMode,
    eps: f64,
    rtol: f64,
) -> crate::Result<AsymptoticData> {
    let t = truncation_time(mode.lambda(), eps)?;
    // f(0) = u(0) since the dressing phases are trivial at t = 0
    let f_plus = evolve_f(u0, mode, 0.0, t, rtol)?;
    let f_minus = evolve_f(u0, mode, 0.0, -t, rtol)?;
    let tail = gronwall_envelope(mode.lambda(), u0.norm(), t, Direction::Future);
    Ok(AsymptoticData {
        f_plus,
        f_minus,
        t_plus: t,
        t_minus: -t,
        tail_bound: tail,
    })
}

/// The unitary maps `W^+-` from Cauchy data at `t = 0` to the asymptotic
/// coefficients `f^+-`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringPair {
    pub w_plus: Mat2,
    pub w_minus: Mat2,
}

/// Builds `W^+-` column by column from the Cauchy basis.
pub fn scattering_matrices(mode: &DeSitterMode, eps: f64) -> crate::Result<ScatteringPair> {
    scattering_matrices_rtol(mode, eps, ode::DEFAULT_RTOL)
}

pub fn scattering_matrices_rtol(
    mode: &DeSitterMode,
    eps: f64,
    rtol: f64,
) -> crate::Result<ScatteringPair> {
    let a1 = extract_asymptotics_rtol(&SpinorPair::e1(), mode, eps, rtol)?;
    let a2 = extract_asymptotics_rtol(&SpinorPair::e2(), mode, eps, rtol)?;
    Ok(ScatteringPair {
        w_plus: Mat2::from_columns(&a1.f_plus, &a2.f_plus),
        w_minus: Mat2::from_columns(&a1.f_minus, &a2.f_minus),
    })
}
