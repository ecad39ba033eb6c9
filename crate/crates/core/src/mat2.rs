//! Dense 2x2 complex matrices with the small amount of spectral calculus the
//! mode-level operators need.

use crate::SpinorPair;
use num_complex::Complex64;

/// A 2x2 complex matrix in row-major order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub e: [[Complex64; 2]; 2],
}

impl Mat2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2 { e: [[a, b], [c, d]] }
    }

    pub fn from_re(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
            Complex64::new(d, 0.0),
        )
    }

    pub fn zero() -> Self {
        Mat2::from_re(0.0, 0.0, 0.0, 0.0)
    }

    pub fn identity() -> Self {
        Mat2::from_re(1.0, 0.0, 0.0, 1.0)
    }

    /// `diag(1, -1)`, the signature of the space-time density in mode
    /// variables.
    pub fn sigma3() -> Self {
        Mat2::from_re(1.0, 0.0, 0.0, -1.0)
    }

    /// Matrix with the given columns.
    pub fn from_columns(c1: &SpinorPair, c2: &SpinorPair) -> Self {
        Mat2::new(c1.u1, c2.u1, c1.u2, c2.u2)
    }

    pub fn column(&self, j: usize) -> SpinorPair {
        SpinorPair::new(self.e[0][j], self.e[1][j])
    }

    pub fn adjoint(&self) -> Mat2 {
        Mat2::new(
            self.e[0][0].conj(),
            self.e[1][0].conj(),
            self.e[0][1].conj(),
            self.e[1][1].conj(),
        )
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = self.e[i][0] * other.e[0][j] + self.e[i][1] * other.e[1][j];
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &SpinorPair) -> SpinorPair {
        SpinorPair::new(
            self.e[0][0] * v.u1 + self.e[0][1] * v.u2,
            self.e[1][0] * v.u1 + self.e[1][1] * v.u2,
        )
    }

    pub fn add(&self, other: &Mat2) -> Mat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] += other.e[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &Mat2) -> Mat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] -= other.e[i][j];
            }
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Mat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] *= c;
            }
        }
        out
    }

    pub fn scale_re(&self, c: f64) -> Mat2 {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        self.e[0][0] + self.e[1][1]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest singular value, from the closed-form eigenvalues of `A^* A`.
    pub fn operator_norm(&self) -> f64 {
        let g = self.adjoint().mul(self);
        // g is Hermitian positive semidefinite
        let (mu1, _) = hermitian_eigenvalues(&g);
        mu1.max(0.0).sqrt()
    }

    /// Deviation from being Hermitian, `||A - A^*||_F`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.sub(&self.adjoint()).frobenius_norm()
    }

    /// Deviation from unitarity, `||A^* A - 1||_F`.
    pub fn unitarity_defect(&self) -> f64 {
        self.adjoint().mul(self).sub(&Mat2::identity()).frobenius_norm()
    }

    /// Eigendecomposition for Hermitian matrices.  Returns eigenvalues in
    /// descending order with orthonormal eigenvectors.
    pub fn hermitian_eigen(&self) -> ([f64; 2], [SpinorPair; 2]) {
        let a = self.e[0][0].re;
        let d = self.e[1][1].re;
        let b = self.e[0][1];
        let (mu1, mu2) = hermitian_eigenvalues(self);
        let v1 = hermitian_eigenvector(a, d, b, mu1);
        // second eigenvector orthogonal to the first
        let v2 = SpinorPair::new(-v1.u2.conj(), v1.u1.conj());
        ([mu1, mu2], [v1, v2])
    }

    /// Rank-one orthogonal projector onto the span of `v` (assumed nonzero).
    pub fn projector_onto(v: &SpinorPair) -> Mat2 {
        let n2 = v.norm();
        let v = v.scale(Complex64::new(1.0 / n2, 0.0));
        Mat2::new(
            v.u1 * v.u1.conj(),
            v.u1 * v.u2.conj(),
            v.u2 * v.u1.conj(),
            v.u2 * v.u2.conj(),
        )
    }
}

fn hermitian_eigenvalues(m: &Mat2) -> (f64, f64) {
    let a = m.e[0][0].re;
    let d = m.e[1][1].re;
    let b = m.e[0][1];
    let half_trace = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    (half_trace + r, half_trace - r)
}

fn hermitian_eigenvector(a: f64, d: f64, b: Complex64, mu: f64) -> SpinorPair {
    // (a - mu) x + b y = 0  =>  (x, y) ~ (b, mu - a)  or  (mu - d, conj(b))
    let c1 = SpinorPair::new(b, Complex64::new(mu - a, 0.0));
    let c2 = SpinorPair::new(Complex64::new(mu - d, 0.0), b.conj());
    let v = if c1.norm() >= c2.norm() { c1 } else { c2 };
    let n = v.norm();
    if n == 0.0 {
        // scalar matrix; any unit vector is an eigenvector
        return SpinorPair::e1();
    }
    v.scale(Complex64::new(1.0 / n, 0.0))
}
