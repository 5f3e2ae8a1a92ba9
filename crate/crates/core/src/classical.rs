//! Classical Hamiltonian dynamics of the top on the sphere.
//!
//! The equation of motion z_dot = i (omega + J (1-|z|^2)/(1+|z|^2)) z keeps
//! |z| constant, so in polar form theta is conserved and
//! phi(t) = phi0 + (omega + J cos theta0) t: a rotational shear about the
//! z axis. Distributions are propagated exactly by evaluating the initial
//! data along backward characteristics.

use crate::fmath;
use crate::grid::QGrid;
use crate::phase::PhasePoint;
use crate::quantum::TopParams;

/// Flows a phase-space point for time t. Theta is stored, never recomputed
/// through the chart, so |z| is conserved exactly; the poles are fixed
/// points of the azimuthal flow.
pub fn flow(z0: &PhasePoint, p: &TopParams, t: f64) -> PhasePoint {
    let rate = p.omega + p.j * z0.cos_theta();
    PhasePoint::new(z0.theta(), z0.phi() + rate * t)
}

/// Liouville evolution of a distribution given in closed form:
/// Q(z, t) = Q0(flow(z, -t)), evaluated at every node of `template`.
///
/// The caller vouches that Q0 is normalized against d mu; the flow is
/// measure preserving, so the output integral always equals the input one
/// and can be checked on the result. Grid-sampled inputs go through
/// [`evolve_classical_sampled`], which does validate normalization.
pub fn evolve_classical<F: FnMut(&PhasePoint) -> f64>(
    mut q0: F,
    p: &TopParams,
    t: f64,
    template: &QGrid,
) -> QGrid {
    template.with_values(|node| q0(&flow(node, p, -t)))
}

/// Result of propagating grid-sampled initial data: the evolved grid plus a
/// crude bound on the interpolation error that sampling introduced.
#[derive(Debug, Clone)]
pub struct SampledEvolution {
    pub grid: QGrid,
    pub interp_error: f64,
}

/// Liouville evolution of initial data known only through grid samples.
/// Rejects data that does not integrate to 1 against the grid measure.
///
/// The backward characteristic conserves theta, so on the grid's own nodes
/// only the phi coordinate moves; values are interpolated linearly in phi
/// (periodic) along each theta ring, which is the bilinear (cos theta, phi)
/// rule restricted to exact ring hits. The reported error estimate is the
/// standard linear-interpolation bound h^2 max|Q''|/8 per ring, with Q''
/// replaced by second differences.
pub fn evolve_classical_sampled(
    q0: &QGrid,
    p: &TopParams,
    t: f64,
) -> Result<SampledEvolution, crate::Error> {
    let defect = fmath::fabs(q0.integral() - 1.0);
    if defect > 1e-6 {
        return Err(crate::Error::UnnormalizedDistribution(defect));
    }
    let n_phi = q0.n_phi();
    let h = fmath::TAU / n_phi as f64;
    let mut grid = q0.clone();
    let mut interp_error = 0.0f64;
    for ring in 0..q0.n_theta() {
        let vals = q0.ring_values(ring).to_vec();
        let theta = q0.node(ring * n_phi).theta();
        let shift = (p.omega + p.j * fmath::cos(theta)) * t;
        // curvature bound for this ring
        let mut max_dd = 0.0f64;
        for j in 0..n_phi {
            let dd = vals[(j + 1) % n_phi] - 2.0 * vals[j] + vals[(j + n_phi - 1) % n_phi];
            max_dd = max_dd.max(fmath::fabs(dd));
        }
        interp_error = interp_error.max(max_dd / 8.0);
        for j in 0..n_phi {
            let phi_src = fmath::wrap_angle(j as f64 * h - shift);
            let pos = phi_src / h;
            let j0 = (pos as usize) % n_phi;
            let frac = pos - pos as usize as f64;
            let v = vals[j0] * (1.0 - frac) + vals[(j0 + 1) % n_phi] * frac;
            grid.set_value(ring * n_phi + j, v);
        }
    }
    Ok(SampledEvolution { grid, interp_error })
}

/// Drift-only time derivative of the distribution at a point:
/// dQ/dt = -(omega + J cos theta) dQ0/dphi, the Liouville equation along
/// the analytic flow. The phi derivative of the (black-box) initial data is
/// taken by a five-point central stencil.
pub fn qdot_classical<F: FnMut(&PhasePoint) -> f64>(
    mut q0: F,
    p: &TopParams,
    at: &PhasePoint,
) -> f64 {
    let h = 1e-4;
    let mut q_at = |dphi: f64| q0(&PhasePoint::new(at.theta(), at.phi() + dphi));
    let dq_dphi = (-q_at(2.0 * h) + 8.0 * q_at(h) - 8.0 * q_at(-h) + q_at(-2.0 * h)) / (12.0 * h);
    -(p.omega + p.j * at.cos_theta()) * dq_dphi
}
