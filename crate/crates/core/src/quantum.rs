//! Exact quantum evolution of the nonlinear top H = omega*Sz + (J/2s)*Sz^2,
//! cat states, and the differential generator of the Q-function flow.

use alloc::vec::Vec;

use crate::fmath;
use crate::linalg::{CMat, C64};
use crate::phase::PhasePoint;
use crate::qfunc::coherent_amplitudes;
use crate::spin::{DensityOperator, PureState, SpinQuantum};
use crate::Error;

/// Parameters of the top: linear precession omega, twist strength J, spin s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TopParams {
    pub omega: f64,
    pub j: f64,
    pub s: SpinQuantum,
}

impl TopParams {
    pub fn new(omega: f64, j: f64, s: SpinQuantum) -> Self {
        TopParams { omega, j, s }
    }

    /// Energy of basis index m (magnetic number mu = s - m):
    /// E = omega*mu + (J/2s)*mu^2.
    pub fn energy(&self, m: usize) -> f64 {
        let mu = self.s.magnetic_number(m);
        self.omega * mu + self.j / (2.0 * self.s.s()) * mu * mu
    }

    pub fn energies(&self) -> Vec<f64> {
        (0..self.s.dim()).map(|m| self.energy(m)).collect()
    }
}

/// rho(t)_{mm'} = rho0_{mm'} exp(-i (E_m - E_m') t). H is diagonal in the
/// Sz basis, so the evolution is exact: trace, Hermiticity and the spectrum
/// are preserved to machine precision.
pub fn evolve_unitary(
    rho0: &DensityOperator,
    p: &TopParams,
    t: f64,
) -> Result<DensityOperator, Error> {
    if rho0.s() != p.s {
        return Err(Error::DimensionMismatch {
            expected: p.s.dim(),
            got: rho0.s().dim(),
        });
    }
    let e = p.energies();
    let n = p.s.dim();
    let mat = CMat::from_fn(n, n, |a, b| {
        rho0.matrix()[(a, b)] * fmath::expi(-(e[a] - e[b]) * t)
    });
    Ok(DensityOperator::new_unchecked(p.s, mat))
}

/// Same phases applied to a state vector.
pub fn evolve_pure(psi0: &PureState, p: &TopParams, t: f64) -> Result<PureState, Error> {
    if psi0.s() != p.s {
        return Err(Error::DimensionMismatch {
            expected: p.s.dim(),
            got: psi0.s().dim(),
        });
    }
    let e = p.energies();
    let amps: Vec<C64> = psi0
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(m, a)| *a * fmath::expi(-e[m] * t))
        .collect();
    PureState::new(p.s, amps)
}

/// <psi| rho |psi>
pub fn state_fidelity(psi: &PureState, rho: &DensityOperator) -> f64 {
    let v = rho.matrix().apply(psi.amplitudes());
    crate::linalg::vdot(psi.amplitudes(), &v).re
}

/// The coherent superposition 2^{-1/2} (e^{-i pi/4} |z0> + (-1)^s e^{i pi/4} |-z0>),
/// explicitly renormalized.
///
/// |-z0> sits at (theta0, phi0 + pi) — same latitude, opposite longitude —
/// so the branches are orthogonal exactly on the equator. Off the equator
/// their overlap is real and the relative phase of the branches makes the
/// cross term purely imaginary, so the 2^{-1/2} prefactor is already exact;
/// the renormalization only sweeps up roundoff. For integer s this state is
/// what the twist evolution produces from |z0> at t = pi s / J.
pub fn cat_state(z0: &PhasePoint, s: SpinQuantum) -> Result<PureState, Error> {
    if z0.theta() < 1e-12 || z0.is_south_pole() {
        return Err(Error::DegenerateCat);
    }
    let a = coherent_amplitudes(s, z0);
    let b = coherent_amplitudes(s, &z0.negated());
    let phase_a = fmath::expi(-fmath::PI / 4.0);
    // (-1)^s as e^{i pi s}, exact for integer s
    let parity = fmath::expi(fmath::PI * s.s());
    let phase_b = parity * fmath::expi(fmath::PI / 4.0);
    let amps: Vec<C64> = a
        .iter()
        .zip(&b)
        .map(|(x, y)| (phase_a * x + phase_b * y) * core::f64::consts::FRAC_1_SQRT_2)
        .collect();
    PureState::normalized(s, amps)
}

/// Coefficients of the Q-evolution generator at a point, in the canonical
/// form
///
///   dQ/dt = -(drift * z dQ/dz + c.c.) + sum_{ij} D_ij d^2 Q / dx_i dx_j
///
/// with z = x + iy. `drift` multiplies z in the characteristic velocity
/// sense: the first-order flow is z_dot = drift * z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorCoefficients {
    pub drift: C64,
    pub diffusion: [[f64; 2]; 2],
}

impl GeneratorCoefficients {
    /// Eigenvalues of the 2x2 symmetric diffusion matrix.
    pub fn diffusion_eigenvalues(&self) -> (f64, f64) {
        let d = &self.diffusion;
        let tr = d[0][0] + d[1][1];
        let det = d[0][0] * d[1][1] - d[0][1] * d[1][0];
        let disc = fmath::sqrt((tr * tr / 4.0 - det).max(0.0));
        (tr / 2.0 - disc, tr / 2.0 + disc)
    }

    pub fn diffusion_det(&self) -> f64 {
        self.diffusion[0][0] * self.diffusion[1][1] - self.diffusion[0][1] * self.diffusion[1][0]
    }
}

/// Expands the quantum generator to canonical first-plus-second-order form
/// at the point z (finite labels only; panics at the south pole).
///
/// Drift: i (omega + J (1-|z|^2)/(1+|z|^2) - J/(2s)); relative to the
/// classical velocity the top precesses slower by J/(2s). Diffusion, from
/// i (J/2s) z^2 d^2/dz^2 + c.c. rewritten in (x, y):
///
///   Dxx = -(J/2s) x y,  Dyy = +(J/2s) x y,  Dxy = (J/4s)(x^2 - y^2)
///
/// a traceless symmetric matrix whose determinant,
/// -(J/2s)^2 x^2 y^2 - (J/4s)^2 (x^2-y^2)^2, is negative whenever J != 0
/// and z != 0, so the equation is never of Fokker-Planck form. Both
/// expansions are pinned by the commutator oracle `qdot_quantum` in the
/// test suite.
pub fn generator_coefficients(z: &PhasePoint, p: &TopParams) -> GeneratorCoefficients {
    let zc = z
        .z()
        .expect("generator_coefficients requires a finite chart label");
    let (x, y) = (zc.re, zc.im);
    let r2 = zc.norm_sqr();
    let cos_theta = (1.0 - r2) / (1.0 + r2);
    let s = p.s.s();
    let drift = C64::new(0.0, p.omega + p.j * cos_theta - p.j / (2.0 * s));
    let k = p.j / (2.0 * s);
    let dxy = 0.5 * k * (x * x - y * y);
    GeneratorCoefficients {
        drift,
        diffusion: [[-k * x * y, dxy], [dxy, k * x * y]],
    }
}

/// Exact time derivative of Q at time zero: tr(-i [H, rho] |z><z|).
/// This is the oracle for the generator expansion.
pub fn qdot_quantum(rho: &DensityOperator, p: &TopParams, z: &PhasePoint) -> f64 {
    let psi = coherent_amplitudes(p.s, z);
    let e = p.energies();
    // <z|H rho|z> = sum_a E_a conj(psi_a) (rho psi)_a; qdot = 2 Im of it
    let rho_psi = rho.matrix().apply(&psi);
    let w: C64 = psi
        .iter()
        .zip(&rho_psi)
        .enumerate()
        .map(|(a, (pa, rp))| pa.conj() * rp * e[a])
        .sum();
    2.0 * w.im
}
