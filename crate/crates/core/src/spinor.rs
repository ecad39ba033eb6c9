//! Mode amplitudes and the two inner products in mode variables.

use num_complex::Complex64;
use std::f64::consts::PI;

/// The two complex amplitudes `(u1, u2)` of a single spatial mode.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpinorPair {
    pub u1: Complex64,
    pub u2: Complex64,
}

impl SpinorPair {
    pub fn new(u1: Complex64, u2: Complex64) -> Self {
        SpinorPair { u1, u2 }
    }

    pub fn from_re(u1: f64, u2: f64) -> Self {
        SpinorPair {
            u1: Complex64::new(u1, 0.0),
            u2: Complex64::new(u2, 0.0),
        }
    }

    /// First Cauchy basis vector (1, 0).
    pub fn e1() -> Self {
        SpinorPair::from_re(1.0, 0.0)
    }

    /// Second Cauchy basis vector (0, 1).
    pub fn e2() -> Self {
        SpinorPair::from_re(0.0, 1.0)
    }

    pub fn zero() -> Self {
        SpinorPair::default()
    }

    /// Euclidean norm on C^2.
    pub fn norm(&self) -> f64 {
        (self.u1.norm_sqr() + self.u2.norm_sqr()).sqrt()
    }

    /// Plain Hermitian inner product `<self, other>` (conjugate-linear in self).
    pub fn dot(&self, other: &SpinorPair) -> Complex64 {
        self.u1.conj() * other.u1 + self.u2.conj() * other.u2
    }

    pub fn scale(&self, c: Complex64) -> SpinorPair {
        SpinorPair::new(self.u1 * c, self.u2 * c)
    }

    pub fn add(&self, other: &SpinorPair) -> SpinorPair {
        SpinorPair::new(self.u1 + other.u1, self.u2 + other.u2)
    }

    pub fn sub(&self, other: &SpinorPair) -> SpinorPair {
        SpinorPair::new(self.u1 - other.u1, self.u2 - other.u2)
    }

    pub fn is_finite(&self) -> bool {
        self.u1.re.is_finite()
            && self.u1.im.is_finite()
            && self.u2.re.is_finite()
            && self.u2.im.is_finite()
    }
}

/// The Cauchy scalar product at mode level, `2 pi <a, b>_{C^2}`.
///
/// Conserved along the mode flow; the factor `2 pi` is kept explicit so the
/// closed-form pairing comes out with its literal factor of `pi`.
pub fn mode_scalar_product(a: &SpinorPair, b: &SpinorPair) -> Complex64 {
    2.0 * PI * a.dot(b)
}

/// The integrand of the space-time pairing, `conj(a1) b1 - conj(a2) b2`.
///
/// An indefinite sesquilinear form; the time integral of this density over a
/// pair of mass-averaged solutions is the space-time inner product.
pub fn mode_spacetime_density(a: &SpinorPair, b: &SpinorPair) -> Complex64 {
    a.u1.conj() * b.u1 - a.u2.conj() * b.u2
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn scalar_product_examples() {
        let e1 = SpinorPair::e1();
        let e2 = SpinorPair::e2();
        assert_abs_diff_eq!(mode_scalar_product(&e1, &e1).re, 2.0 * PI, epsilon = 1e-15);
        assert_abs_diff_eq!(mode_scalar_product(&e1, &e2).norm(), 0.0, epsilon = 1e-15);
        let v = SpinorPair::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
        assert_abs_diff_eq!(mode_scalar_product(&v, &v).re, 4.0 * PI, epsilon = 1e-14);
        assert_abs_diff_eq!(mode_scalar_product(&v, &v).im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn density_examples() {
        let e1 = SpinorPair::e1();
        let e2 = SpinorPair::e2();
        let null = SpinorPair::from_re(1.0, 1.0);
        assert_eq!(mode_spacetime_density(&e1, &e1), Complex64::new(1.0, 0.0));
        assert_eq!(mode_spacetime_density(&e2, &e2), Complex64::new(-1.0, 0.0));
        assert_eq!(mode_spacetime_density(&null, &null), Complex64::new(0.0, 0.0));
    }

    fn arb_spinor() -> impl Strategy<Value = SpinorPair> {
        let c = -10.0..10.0f64;
        (c.clone(), c.clone(), c.clone(), c).prop_map(|(a, b, c, d)| {
            SpinorPair::new(Complex64::new(a, b), Complex64::new(c, d))
        })
    }

    proptest! {
        #[test]
        fn scalar_product_hermitian_positive(a in arb_spinor(), b in arb_spinor()) {
            let ab = mode_scalar_product(&a, &b);
            let ba = mode_scalar_product(&b, &a);
            prop_assert!((ab - ba.conj()).norm() <= 1e-12 * (1.0 + ab.norm()));
            let aa = mode_scalar_product(&a, &a);
            prop_assert!(aa.im.abs() <= 1e-12 * (1.0 + aa.re.abs()));
            if a.norm() > 1e-9 {
                prop_assert!(aa.re > 0.0);
            }
        }

        #[test]
        fn density_conjugate_symmetric(a in arb_spinor(), b in arb_spinor()) {
            let ab = mode_spacetime_density(&a, &b);
            let ba = mode_spacetime_density(&b, &a);
            prop_assert!((ab - ba.conj()).norm() <= 1e-12 * (1.0 + ab.norm()));
        }
    }
}
