//! Exact spectral calculus for ultrastatic space-times.
//!
//! On a spatial mode with eigenvalue `lambda`, the Hamiltonian is the
//! constant Hermitian matrix `[[m, lambda], [lambda, -m]]` with eigenvalues
//! `+-omega`, `omega = sqrt(lambda^2 + m^2)`.  Everything is closed form:
//! projectors, unitary evolution, and the signature operator
//! `Pi_+ - Pi_-`, whose spectrum is exactly `{+1, -1}`.

use crate::signature::SignatureMatrix;
use crate::{Error, Mat2, MassProfile, ModeIndex, QuadratureRule, SpinorPair};
use num_complex::Complex64;

/// An ultrastatic space-time, entering only through the discrete spectrum of
/// its spatial Dirac operator.
#[derive(Debug, Clone, PartialEq)]
pub struct UltrastaticModel {
    spectrum: Vec<ModeIndex>,
}

impl UltrastaticModel {
    pub fn new(mut spectrum: Vec<ModeIndex>) -> crate::Result<Self> {
        spectrum.sort_by_key(|m| m.lambda);
        for w in spectrum.windows(2) {
            if w[0].lambda == w[1].lambda {
                return Err(Error::arg(format!(
                    "duplicate eigenvalue {} in spectral list",
                    w[0].lambda
                )));
            }
        }
        Ok(UltrastaticModel { spectrum })
    }

    pub fn spectrum(&self) -> &[ModeIndex] {
        &self.spectrum
    }
}

/// Frequency `omega` with the positive/negative frequency projectors of a
/// single mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyData {
    pub omega: f64,
    pub pi_plus: Mat2,
    pub pi_minus: Mat2,
}

fn hamiltonian(lambda: f64, m: f64) -> Mat2 {
    Mat2::from_re(m, lambda, lambda, -m)
}

/// Splits the mode Hamiltonian into its frequency projectors,
/// `Pi_+- = 1/2 +- h / (2 omega)`.
pub fn frequency_split(lambda: f64, m: f64) -> crate::Result<FrequencyData> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::arg(format!("mass must be positive, got {m}")));
    }
    let omega = lambda.hypot(m);
    let h = hamiltonian(lambda, m).scale_re(0.5 / omega);
    let half = Mat2::identity().scale_re(0.5);
    Ok(FrequencyData {
        omega,
        pi_plus: half.add(&h),
        pi_minus: half.sub(&h),
    })
}

/// The unitary mode propagator `U^t = e^{-i omega t} Pi_+ + e^{i omega t} Pi_-`.
pub fn evolution_matrix(lambda: f64, m: f64, t: f64) -> crate::Result<Mat2> {
    let fd = frequency_split(lambda, m)?;
    let phase = Complex64::new(0.0, -fd.omega * t).exp();
    Ok(fd
        .pi_plus
        .scale(phase)
        .add(&fd.pi_minus.scale(phase.conj())))
}

/// The signature operator of the mode, `Pi_+ - Pi_-`.  Hermitian, traceless,
/// with spectrum exactly `{+1, -1}`.
pub fn ultrastatic_signature(lambda: f64, m: f64) -> crate::Result<SignatureMatrix> {
    let fd = frequency_split(lambda, m)?;
    Ok(SignatureMatrix::new(
        fd.pi_plus.sub(&fd.pi_minus),
        lambda,
        m,
    ))
}

/// Mass-averages the evolved datum on one spatial mode:
/// `sum_k w_k eta(m_k) U^t_{m_k} u0`.
pub fn p_integrate_ultrastatic(
    profile: &MassProfile,
    u0: &SpinorPair,
    lambda: f64,
    t: f64,
    quad: &QuadratureRule,
) -> crate::Result<SpinorPair> {
    let mut acc = SpinorPair::zero();
    for (m, w) in quad.iter() {
        let eta = profile.value(m);
        if eta == 0.0 {
            continue;
        }
        let u = evolution_matrix(lambda, m, t)?.mul_vec(u0);
        acc = acc.add(&u.scale(Complex64::new(w * eta, 0.0)));
    }
    Ok(acc)
}
