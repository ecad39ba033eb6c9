//! Mass integration and the time-domain pairing oracle.
//!
//! A [`MassFamily`] is a mass-indexed family of mode solutions sharing one
//! Cauchy datum, weighted by a smooth profile.  The operator `p` integrates
//! the family over the mass interval; the space-time pairing is then the
//! time integral of the indefinite density of two such mass averages.  This
//! module computes that integral by brute force, which serves as the
//! independent oracle for the closed-form signature pairing.

use crate::desitter::{self, DeSitterMode};
use crate::ode;
use crate::spinor::mode_spacetime_density;
use crate::{Error, HalfInt, MassProfile, Mat2, QuadratureRule, SpinorPair};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI};

/// Width of the time panels used by the composite quadrature.
const PANEL_WIDTH: f64 = 2.0;
/// Gauss points per panel for the primary rule and the comparison rule.
const PANEL_NODES: usize = 16;
const PANEL_NODES_CHECK: usize = 12;

/// A mass-indexed family on one spatial mode: mode data
/// `eta(m) m^p * (solution with Cauchy datum u0)`.
///
/// The power `p` counts applications of the mass operator, which multiplies
/// the profile by `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFamily {
    pub profile: MassProfile,
    pub u0: SpinorPair,
    pub lambda: HalfInt,
    mass_power: u32,
}

impl MassFamily {
    pub fn new(profile: MassProfile, u0: SpinorPair, lambda: HalfInt) -> crate::Result<Self> {
        if !u0.is_finite() {
            return Err(Error::arg("Cauchy datum must be finite"));
        }
        Ok(MassFamily {
            profile,
            u0,
            lambda,
            mass_power: 0,
        })
    }

    /// The family multiplied by the mass operator (profile times `m`).
    pub fn apply_mass_operator(&self) -> MassFamily {
        MassFamily {
            mass_power: self.mass_power + 1,
            ..self.clone()
        }
    }

    pub fn mass_power(&self) -> u32 {
        self.mass_power
    }

    /// The scalar weight at mass `m`, `eta(m) m^p`.
    pub fn weight(&self, m: f64) -> f64 {
        self.profile.value(m) * m.powi(self.mass_power as i32)
    }
}

fn check_nodes(quad: &QuadratureRule, family: &MassFamily) -> crate::Result<()> {
    let iv = family.profile.interval();
    if quad
        .nodes()
        .iter()
        .any(|&m| m <= iv.lower() || m >= iv.upper())
    {
        return Err(Error::arg(
            "quadrature nodes must lie inside the profile's mass interval",
        ));
    }
    Ok(())
}

/// Integrates the family over the mass interval at time `t`:
/// `sum_k w_k eta(m_k) m_k^p u(m_k, t)`.
pub fn p_integrate(
    family: &MassFamily,
    t: f64,
    quad: &QuadratureRule,
    rtol: f64,
) -> crate::Result<SpinorPair> {
    check_nodes(quad, family)?;
    let mut acc = SpinorPair::zero();
    for (m, w) in quad.iter() {
        let weight = w * family.weight(m);
        if weight == 0.0 {
            continue;
        }
        let mode = DeSitterMode::new(family.lambda, m)?;
        let u = desitter::evolve_mode(&family.u0, &mode, 0.0, t, rtol)?;
        acc = acc.add(&u.scale(Complex64::new(weight, 0.0)));
    }
    Ok(acc)
}

/// Integrates the family over mass at every time in an ascending sample
/// list (which may span both signs); one evolution pass per mass node.
pub fn p_integrate_path(
    family: &MassFamily,
    times: &[f64],
    quad: &QuadratureRule,
    rtol: f64,
) -> crate::Result<Vec<SpinorPair>> {
    check_nodes(quad, family)?;
    for w in times.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::arg("sample times must be strictly ascending"));
        }
    }
    let split = times.partition_point(|&t| t < 0.0);
    let neg: Vec<f64> = times[..split].iter().rev().copied().collect();
    let pos = &times[split..];
    let mut acc = vec![SpinorPair::zero(); times.len()];
    for (m, w) in quad.iter() {
        let weight = w * family.weight(m);
        if weight == 0.0 {
            continue;
        }
        let c = Complex64::new(weight, 0.0);
        let mode = DeSitterMode::new(family.lambda, m)?;
        let upos = desitter::evolve_mode_path(&family.u0, &mode, 0.0, pos, rtol)?;
        for (i, u) in upos.iter().enumerate() {
            acc[split + i] = acc[split + i].add(&u.scale(c));
        }
        let uneg = desitter::evolve_mode_path(&family.u0, &mode, 0.0, &neg, rtol)?;
        for (i, u) in uneg.iter().enumerate() {
            acc[split - 1 - i] = acc[split - 1 - i].add(&u.scale(c));
        }
    }
    Ok(acc)
}

/// A pairing value with its estimated numerical error (time-quadrature
/// comparison plus the analytic tail beyond the truncation time).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairingResult {
    pub value: Complex64,
    pub error_estimate: f64,
}

struct Sample {
    t: f64,
    w_main: f64,
    w_check: f64,
}

/// Shared machinery for time-domain pairings on one spatial mode.
///
/// Each mass node is evolved exactly once through all time samples; the two
/// mass-averaged propagators are accumulated on the fly, so any number of
/// Cauchy-data pairs can be evaluated afterwards at negligible cost.
pub struct PairingEngine {
    samples: Vec<Sample>,
    prop_a: Vec<Mat2>,
    prop_b: Vec<Mat2>,
    t_max: f64,
}

impl PairingEngine {
    /// Evolves and mass-averages the propagators for two weight functions
    /// over `t` in `[-t_max, t_max]`.
    pub fn build(
        lambda: HalfInt,
        weight_a: impl Fn(f64) -> f64,
        weight_b: impl Fn(f64) -> f64,
        quad: &QuadratureRule,
        t_max: f64,
        rtol: f64,
    ) -> crate::Result<Self> {
        if !(t_max > 0.0 && t_max.is_finite()) {
            return Err(Error::arg("t_max must be positive"));
        }
        let samples = time_samples(t_max);
        let n = samples.len();
        let mut prop_a = vec![Mat2::zero(); n];
        let mut prop_b = vec![Mat2::zero(); n];

        // sample indices sorted into the two integration directions
        let mut pos: Vec<usize> = (0..n).filter(|&i| samples[i].t >= 0.0).collect();
        pos.sort_by(|&i, &j| samples[i].t.total_cmp(&samples[j].t));
        let mut neg: Vec<usize> = (0..n).filter(|&i| samples[i].t < 0.0).collect();
        neg.sort_by(|&i, &j| samples[j].t.total_cmp(&samples[i].t));

        for (m, wq) in quad.iter() {
            let wa = wq * weight_a(m);
            let wb = wq * weight_b(m);
            if wa == 0.0 && wb == 0.0 {
                continue;
            }
            let mode = DeSitterMode::new(lambda, m)?;
            let ca = Complex64::new(wa, 0.0);
            let cb = Complex64::new(wb, 0.0);
            for idxs in [&pos, &neg] {
                let times: Vec<f64> = idxs.iter().map(|&i| samples[i].t).collect();
                desitter::evolve_propagator_path(&mode, 0.0, &times, rtol, |k, u| {
                    let i = idxs[k];
                    prop_a[i] = prop_a[i].add(&u.scale(ca));
                    prop_b[i] = prop_b[i].add(&u.scale(cb));
                })?;
            }
        }
        Ok(PairingEngine {
            samples,
            prop_a,
            prop_b,
            t_max,
        })
    }

    /// Builds the engine for a pair of families (their weights and spatial
    /// mode).
    pub fn for_families(
        a: &MassFamily,
        b: &MassFamily,
        quad: &QuadratureRule,
        t_max: f64,
        rtol: f64,
    ) -> crate::Result<Self> {
        if a.lambda != b.lambda {
            return Err(Error::arg(
                "families on different spatial modes pair to zero by orthogonality; \
                 pair equal-lambda families only",
            ));
        }
        check_nodes(quad, a)?;
        check_nodes(quad, b)?;
        PairingEngine::build(
            a.lambda,
            |m| a.weight(m),
            |m| b.weight(m),
            quad,
            t_max,
            rtol,
        )
    }

    /// The time-domain pairing for Cauchy data `u0a`, `u0b`.
    pub fn pairing(&self, u0a: &SpinorPair, u0b: &SpinorPair) -> PairingResult {
        let mut main = Complex64::default();
        let mut check = Complex64::default();
        let mut envelope: f64 = 0.0;
        let decade_start = self.t_max / 10.0;
        for (i, s) in self.samples.iter().enumerate() {
            let pa = self.prop_a[i].mul_vec(u0a);
            let pb = self.prop_b[i].mul_vec(u0b);
            let d = mode_spacetime_density(&pa, &pb);
            main += s.w_main * d;
            check += s.w_check * d;
            if s.t.abs() >= decade_start {
                let g = 1.0 + s.t * s.t;
                envelope = envelope.max(d.norm() * g * g);
            }
        }
        // analytic tail of the fitted A/(1+t^2)^2 envelope, both sides
        let tail = 2.0 * envelope * tail_integral(self.t_max);
        PairingResult {
            value: main,
            error_estimate: (main - check).norm() + tail,
        }
    }
}

/// `int_T^inf dt / (1+t^2)^2`.
fn tail_integral(t: f64) -> f64 {
    FRAC_PI_4 - 0.5 * (t / (1.0 + t * t) + t.atan())
}

fn time_samples(t_max: f64) -> Vec<Sample> {
    let mut samples = Vec::new();
    let (x16, w16) = crate::quadrature::legendre_nodes_weights(PANEL_NODES);
    let (x12, w12) = crate::quadrature::legendre_nodes_weights(PANEL_NODES_CHECK);
    let mut a = 0.0;
    while a < t_max {
        let b = (a + PANEL_WIDTH).min(t_max);
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for (x, w) in x16.iter().zip(&w16) {
            let (t, wt) = (mid + half * x, half * w);
            samples.push(Sample { t, w_main: wt, w_check: 0.0 });
            samples.push(Sample { t: -t, w_main: wt, w_check: 0.0 });
        }
        for (x, w) in x12.iter().zip(&w12) {
            let (t, wt) = (mid + half * x, half * w);
            samples.push(Sample { t, w_main: 0.0, w_check: wt });
            samples.push(Sample { t: -t, w_main: 0.0, w_check: wt });
        }
        a = b;
    }
    samples
}

/// Brute-force space-time pairing of two families: adaptive evolution of the
/// mass averages, composite time quadrature over `[-t_max, t_max]`, and an
/// analytic tail estimate from the measured `1/(1+t^2)^2` envelope.
pub fn pairing_time_domain(
    a: &MassFamily,
    b: &MassFamily,
    t_max: f64,
    quad: &QuadratureRule,
    rtol: f64,
) -> crate::Result<PairingResult> {
    let engine = PairingEngine::for_families(a, b, quad, t_max, rtol)?;
    Ok(engine.pairing(&a.u0, &b.u0))
}

/// Outcome of the boundedness check: the measured pairing against the
/// mass-wise Schwarz bound with constant one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MopBoundReport {
    /// `|<p a | p b>|` measured in the time domain.
    pub lhs: f64,
    /// `int ||a_m|| ||b_m|| dm` with the Cauchy norms of the mode data.
    pub rhs: f64,
    /// `rhs - lhs` (positive margin means the bound holds).
    pub margin: f64,
    pub error_estimate: f64,
    pub pass: bool,
}

/// Checks the strong mass oscillation inequality with `c = 1`:
/// `|<p a | p b>| <= int ||a_m|| ||b_m|| dm`.
pub fn strong_mop_bound_check(
    a: &MassFamily,
    b: &MassFamily,
    quad: &QuadratureRule,
    t_max: f64,
    rtol: f64,
) -> crate::Result<MopBoundReport> {
    let pairing = pairing_time_domain(a, b, t_max, quad, rtol)?;
    // ||a_m|| = sqrt(2 pi) |weight_a(m)| ||u0a||, conserved in time
    let norm_factor = 2.0 * PI * a.u0.norm() * b.u0.norm();
    let rhs = quad.integrate(|m| norm_factor * a.weight(m).abs() * b.weight(m).abs());
    let lhs = pairing.value.norm();
    let margin = rhs - lhs;
    Ok(MopBoundReport {
        lhs,
        rhs,
        margin,
        error_estimate: pairing.error_estimate,
        pass: lhs <= rhs + pairing.error_estimate,
    })
}

/// Convenience defaults shared by tests and the CLI.
pub mod defaults {
    /// Default truncation of the time integral.
    pub const T_MAX: f64 = 200.0;
    /// Default number of mass nodes.
    pub const QUAD_NODES: usize = 64;
    /// Default integrator tolerance.
    pub const RTOL: f64 = super::ode::DEFAULT_RTOL;
}
