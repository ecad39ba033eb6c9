//! Smooth compactly supported mass weights.

use crate::{Error, MassInterval};

/// Functional form of a [`MassProfile`].
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileKind {
    /// The standard bump `exp(-1/(1-x^2))` on the support, `x` the affine
    /// coordinate mapping the support to `(-1, 1)`.
    Bump,
    /// `(1-x^2)^4 * sum_j c_j x^j` on the support.  Vanishes to fourth order
    /// at the endpoints, which is enough margin for the decay estimates; not
    /// infinitely differentiable across the boundary.
    PolynomialBump { coefficients: Vec<f64> },
}

/// A smooth weight `eta(m)` supported on a sub-interval of an ambient mass
/// interval.  Evaluates to zero at and outside the support endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct MassProfile {
    interval: MassInterval,
    support: MassInterval,
    kind: ProfileKind,
}

impl MassProfile {
    /// A bump filling the whole interval.
    pub fn bump(interval: MassInterval) -> Self {
        MassProfile {
            interval,
            support: interval,
            kind: ProfileKind::Bump,
        }
    }

    /// A narrow bump of the given width centered at `center`, inside the
    /// ambient interval.
    pub fn bump_at(interval: MassInterval, center: f64, width: f64) -> crate::Result<Self> {
        if width <= 0.0 {
            return Err(Error::arg("bump width must be positive"));
        }
        let support = MassInterval::new(center - 0.5 * width, center + 0.5 * width)?;
        if !interval.contains_interval(&support) {
            return Err(Error::arg(format!(
                "bump support ({}, {}) leaves the ambient interval ({}, {})",
                support.lower(),
                support.upper(),
                interval.lower(),
                interval.upper()
            )));
        }
        Ok(MassProfile {
            interval,
            support,
            kind: ProfileKind::Bump,
        })
    }

    /// A polynomial bump filling the whole interval.
    pub fn polynomial_bump(interval: MassInterval, coefficients: Vec<f64>) -> crate::Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::arg("polynomial bump needs at least one coefficient"));
        }
        Ok(MassProfile {
            interval,
            support: interval,
            kind: ProfileKind::PolynomialBump { coefficients },
        })
    }

    pub fn interval(&self) -> MassInterval {
        self.interval
    }

    pub fn support(&self) -> MassInterval {
        self.support
    }

    pub fn kind(&self) -> &ProfileKind {
        &self.kind
    }

    /// Evaluates the weight at mass `m`.
    pub fn value(&self, m: f64) -> f64 {
        bump_value(self, m)
    }
}

/// Evaluates a mass profile at `m`; zero at and outside the support endpoints.
pub fn bump_value(profile: &MassProfile, m: f64) -> f64 {
    let (a, b) = (profile.support.lower(), profile.support.upper());
    let x = (2.0 * m - a - b) / (b - a);
    if x.abs() >= 1.0 {
        return 0.0;
    }
    match &profile.kind {
        ProfileKind::Bump => (-1.0 / (1.0 - x * x)).exp(),
        ProfileKind::PolynomialBump { coefficients } => {
            let w = (1.0 - x * x).powi(4);
            let poly = coefficients.iter().rev().fold(0.0, |acc, c| acc * x + c);
            w * poly
        }
    }
}
