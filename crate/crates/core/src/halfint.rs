//! Exact half-integer spectral parameters.
//!
//! Spatial eigenvalues on the three-sphere are half-integers.  Storing the
//! doubled value as an integer keeps mode keys exact and hashable.

/// A half-integer stored as its doubled value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    /// Zero (not in the sphere spectrum, but useful for decoupled tests).
    pub const ZERO: HalfInt = HalfInt(0);

    /// Builds from the doubled value, so `from_doubled(3)` is 3/2.
    pub const fn from_doubled(two_lambda: i64) -> Self {
        HalfInt(two_lambda)
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn abs(self) -> f64 {
        self.value().abs()
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for HalfInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// A spatial eigenvalue together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeIndex {
    pub lambda: HalfInt,
    pub multiplicity: u32,
}

impl ModeIndex {
    pub fn new(lambda: HalfInt, multiplicity: u32) -> crate::Result<Self> {
        if multiplicity == 0 {
            return Err(crate::Error::arg("multiplicity must be >= 1"));
        }
        Ok(ModeIndex { lambda, multiplicity })
    }
}

/// The spectrum of the Dirac operator on the unit three-sphere, truncated at
/// `|lambda| <= max_abs`: eigenvalues `+-3/2, +-5/2, ...` with multiplicity
/// `lambda^2 - 1/4`.
pub fn s3_spectrum(max_abs: HalfInt) -> Vec<ModeIndex> {
    let mut out = Vec::new();
    let mut two_lambda = 3i64;
    while two_lambda <= max_abs.doubled() {
        // lambda^2 - 1/4 = (4 lambda^2 - 1)/4, an integer for odd doubled values
        let mult = ((two_lambda * two_lambda - 1) / 4) as u32;
        out.push(ModeIndex {
            lambda: HalfInt::from_doubled(-two_lambda),
            multiplicity: mult,
        });
        out.push(ModeIndex {
            lambda: HalfInt::from_doubled(two_lambda),
            multiplicity: mult,
        });
        two_lambda += 2;
    }
    out.sort_by_key(|m| m.lambda);
    out
}
