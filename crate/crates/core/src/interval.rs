/// A bounded open mass interval `(m_lower, m_upper)` with `0 < m_lower`.
///
/// The de Sitter result needs the interval bounded away from zero, so the
/// constructor enforces a strictly positive lower endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassInterval {
    m_lower: f64,
    m_upper: f64,
}

impl MassInterval {
    pub fn new(m_lower: f64, m_upper: f64) -> crate::Result<Self> {
        if !(m_lower.is_finite() && m_upper.is_finite()) {
            return Err(crate::Error::arg("mass interval endpoints must be finite"));
        }
        if !(0.0 < m_lower && m_lower < m_upper) {
            return Err(crate::Error::arg(format!(
                "mass interval requires 0 < m_lower < m_upper, got ({m_lower}, {m_upper})"
            )));
        }
        Ok(MassInterval { m_lower, m_upper })
    }

    pub fn lower(&self) -> f64 {
        self.m_lower
    }

    pub fn upper(&self) -> f64 {
        self.m_upper
    }

    pub fn length(&self) -> f64 {
        self.m_upper - self.m_lower
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.m_lower + self.m_upper)
    }

    /// Strict interior membership.
    pub fn contains(&self, m: f64) -> bool {
        self.m_lower < m && m < self.m_upper
    }

    /// True if `other` is contained in `self` (closure inclusion).
    pub fn contains_interval(&self, other: &MassInterval) -> bool {
        self.m_lower <= other.m_lower && other.m_upper <= self.m_upper
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_and_nonpositive() {
        assert!(MassInterval::new(0.0, 1.0).is_err());
        assert!(MassInterval::new(-1.0, 1.0).is_err());
        assert!(MassInterval::new(2.0, 1.0).is_err());
        assert!(MassInterval::new(1.0, 1.0).is_err());
        assert!(MassInterval::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn membership() {
        let i = MassInterval::new(1.0, 2.0).unwrap();
        assert!(i.contains(1.5));
        assert!(!i.contains(1.0));
        assert!(!i.contains(2.0));
        assert_eq!(i.length(), 1.0);
        assert_eq!(i.center(), 1.5);
        let sub = MassInterval::new(1.3, 1.7).unwrap();
        assert!(i.contains_interval(&sub));
        assert!(!sub.contains_interval(&i));
    }
}
