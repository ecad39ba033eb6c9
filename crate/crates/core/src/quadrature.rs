//! Gauss-Legendre quadrature on a mass interval.

use crate::{Error, MassInterval};

/// Nodes and weights for the `dm` integral over a mass interval.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// Applies the rule to a scalar function.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.iter().map(|(m, w)| w * f(m)).sum()
    }
}

/// The `n`-point Gauss-Legendre rule mapped to the interval.  Exact for
/// polynomials of degree `<= 2n - 1`.
pub fn gauss_legendre(interval: MassInterval, n: usize) -> crate::Result<QuadratureRule> {
    if n == 0 {
        return Err(Error::arg("quadrature order must be >= 1"));
    }
    let (xs, ws) = legendre_nodes_weights(n);
    let mid = interval.center();
    let half = 0.5 * interval.length();
    let nodes = xs.iter().map(|x| mid + half * x).collect();
    let weights = ws.iter().map(|w| half * w).collect();
    Ok(QuadratureRule { nodes, weights })
}

/// Nodes and weights on the reference interval `[-1, 1]`, by Newton iteration
/// on the Legendre recurrence.
pub(crate) fn legendre_nodes_weights(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_eval(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        xs[i] = -x;
        ws[i] = w;
        xs[n - 1 - i] = x;
        ws[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        xs[n / 2] = 0.0;
    }
    (xs, ws)
}

/// Legendre polynomial `P_n(x)` and its derivative by the three-term
/// recurrence.
fn legendre_eval(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
