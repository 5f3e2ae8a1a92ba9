//! Spherical quadrature grids realizing the coherent-state measure
//! d mu(z) = ((2s+1)/(4 pi)) sin(theta) d theta d phi.
//!
//! Nodes are Gauss-Legendre in cos(theta) crossed with a uniform phi grid.
//! Every integrand this crate pushes through a grid is a trigonometric
//! polynomial of bounded degree (a Q-function times one of the moment
//! kernels), so the thresholds n_theta >= 2s+2, n_phi >= 4s+2 make the
//! quadrature exact to machine precision, not merely approximate.

use alloc::vec::Vec;

use crate::fmath;
use crate::linalg::C64;
use crate::phase::PhasePoint;
use crate::spin::SpinQuantum;
use crate::Error;

/// Gauss-Legendre nodes (ascending, in (-1,1)) and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = alloc::vec![0.0f64; n];
    let mut weights = alloc::vec![0.0f64; n];
    for i in 0..n {
        // Newton on P_n from the Tricomi-style initial guess.
        let mut x = fmath::cos(fmath::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if fmath::fabs(dx) < 1e-15 {
                let (_, d2) = legendre_with_derivative(n, x);
                dp = d2;
                break;
            }
        }
        nodes[n - 1 - i] = x; // guesses come out descending
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
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

/// Q-function samples on a spherical quadrature grid.
///
/// Nodes are stored ring-major: theta ascending from the north pole, and
/// within each ring phi ascending from 0. Weights sum to 2s+1, the integral
/// of the constant function 1 against d mu.
#[derive(Debug, Clone)]
pub struct QGrid {
    s: SpinQuantum,
    n_theta: usize,
    n_phi: usize,
    nodes: Vec<PhasePoint>,
    weights: Vec<f64>,
    values: Vec<f64>,
}

/// Builds the quadrature grid for spin s with all values zero.
pub fn make_grid(s: SpinQuantum, n_theta: usize, n_phi: usize) -> Result<QGrid, Error> {
    let min_theta = s.twice_s() as usize + 2;
    let min_phi = 2 * s.twice_s() as usize + 2;
    if n_theta < min_theta || n_phi < min_phi {
        return Err(Error::GridTooSmall {
            n_theta,
            n_phi,
            min_theta,
            min_phi,
        });
    }
    let (u, wu) = gauss_legendre(n_theta);
    let dim = s.dim() as f64;
    let mut nodes = Vec::with_capacity(n_theta * n_phi);
    let mut weights = Vec::with_capacity(n_theta * n_phi);
    // ascending theta = descending u
    for i in (0..n_theta).rev() {
        let theta = libm::acos(u[i]);
        let w = wu[i] * dim / (2.0 * n_phi as f64);
        for j in 0..n_phi {
            let phi = fmath::TAU * j as f64 / n_phi as f64;
            nodes.push(PhasePoint::new(theta, phi));
            weights.push(w);
        }
    }
    let values = alloc::vec![0.0f64; nodes.len()];
    Ok(QGrid {
        s,
        n_theta,
        n_phi,
        nodes,
        weights,
        values,
    })
}

impl QGrid {
    /// Assembles a grid from explicit parts (deserialization path). The
    /// weight sum pins 2s+1, which is how s is recovered from files.
    pub fn from_parts(
        s: SpinQuantum,
        n_theta: usize,
        n_phi: usize,
        nodes: Vec<PhasePoint>,
        weights: Vec<f64>,
        values: Vec<f64>,
    ) -> Result<Self, Error> {
        if nodes.len() != n_theta * n_phi
            || weights.len() != nodes.len()
            || values.len() != nodes.len()
        {
            return Err(Error::DimensionMismatch {
                expected: n_theta * n_phi,
                got: nodes.len(),
            });
        }
        if weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::ParameterOutOfRange("grid weights must be positive"));
        }
        Ok(QGrid {
            s,
            n_theta,
            n_phi,
            nodes,
            weights,
            values,
        })
    }

    pub fn s(&self) -> SpinQuantum {
        self.s
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn node(&self, i: usize) -> &PhasePoint {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[PhasePoint] {
        &self.nodes
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn set_value(&mut self, i: usize, v: f64) {
        self.values[i] = v;
    }

    /// Same grid, values replaced by `f` evaluated at each node.
    pub fn with_values<F: FnMut(&PhasePoint) -> f64>(&self, mut f: F) -> QGrid {
        let mut out = self.clone();
        for (i, p) in self.nodes.iter().enumerate() {
            out.values[i] = f(p);
        }
        out
    }

    /// Integral of the stored samples against d mu.
    pub fn integral(&self) -> f64 {
        self.weights
            .iter()
            .zip(&self.values)
            .map(|(w, v)| w * v)
            .sum()
    }

    /// Integral of value * kernel(node) against d mu.
    pub fn integrate<F: FnMut(&PhasePoint, f64) -> f64>(&self, mut kernel: F) -> f64 {
        self.nodes
            .iter()
            .zip(self.weights.iter().zip(&self.values))
            .map(|(p, (w, v))| w * kernel(p, *v))
            .sum()
    }

    pub fn integrate_complex<F: FnMut(&PhasePoint, f64) -> C64>(&self, mut kernel: F) -> C64 {
        self.nodes
            .iter()
            .zip(self.weights.iter().zip(&self.values))
            .map(|(p, (w, v))| kernel(p, *v) * C64::new(*w, 0.0))
            .sum()
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// True when nodes and weights coincide exactly.
    pub fn same_layout(&self, other: &QGrid) -> bool {
        self.n_theta == other.n_theta
            && self.n_phi == other.n_phi
            && self.nodes == other.nodes
            && self.weights == other.weights
    }

    /// integral d mu |Q_a - Q_b|
    pub fn l1_distance(&self, other: &QGrid) -> Result<f64, Error> {
        if !self.same_layout(other) {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .weights
            .iter()
            .zip(self.values.iter().zip(&other.values))
            .map(|(w, (a, b))| w * fmath::fabs(a - b))
            .sum())
    }

    pub fn sup_distance(&self, other: &QGrid) -> Result<f64, Error> {
        if !self.same_layout(other) {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| fmath::fabs(a - b))
            .fold(0.0, f64::max))
    }

    /// Values of ring `i` (fixed theta, phi ascending).
    pub fn ring_values(&self, i: usize) -> &[f64] {
        &self.values[i * self.n_phi..(i + 1) * self.n_phi]
    }

    /// Theta of each ring, ascending.
    pub fn ring_thetas(&self) -> Vec<f64> {
        (0..self.n_theta)
            .map(|i| self.nodes[i * self.n_phi].theta())
            .collect()
    }

    /// Plain phi-average per ring; for our uniform phi nodes this is the
    /// normalized azimuthal marginal of the distribution.
    pub fn theta_marginal(&self) -> Vec<f64> {
        (0..self.n_theta)
            .map(|i| self.ring_values(i).iter().sum::<f64>() / self.n_phi as f64)
            .collect()
    }
}
