//! SU(2) coherent states, Husimi Q-functions, moment integrals, and the
//! linear inversion of Q samples back to a density operator.
//!
//! A coherent state |z> at z = e^{i phi} tan(theta/2) has amplitudes
//!
//!   <s, s-m | z> = binom(2s, m)^{1/2} cos(theta/2)^{2s-m} sin(theta/2)^m e^{i m phi}
//!
//! which equals the familiar (1+|z|^2)^{-s} binom^{1/2} z^m but stays regular
//! at both poles, so the whole module works in the polar chart.

use alloc::vec::Vec;

use crate::fmath;
use crate::grid::QGrid;
use crate::linalg::{self, CMat, C64};
use crate::phase::PhasePoint;
use crate::spin::{DensityOperator, PureState, SpinQuantum};
use crate::Error;

/// Coherent amplitudes in the |s, s-m> ordering.
pub fn coherent_amplitudes(s: SpinQuantum, p: &PhasePoint) -> Vec<C64> {
    let n = s.dim();
    let c = fmath::cos(p.theta() / 2.0);
    let sn = fmath::sin(p.theta() / 2.0);
    let mut amps = Vec::with_capacity(n);
    let mut binom_sqrt = 1.0f64; // sqrt(binom(2s, m)), built up iteratively
    for m in 0..n {
        let amp = binom_sqrt * fmath::powi(c, (n - 1 - m) as i32) * fmath::powi(sn, m as i32);
        amps.push(fmath::expi(m as f64 * p.phi()) * amp);
        if m + 1 < n {
            binom_sqrt *= fmath::sqrt((n - 1 - m) as f64 / (m + 1) as f64);
        }
    }
    amps
}

/// The SU(2) coherent state |z>; the south pole is the basis state |s,-s>.
pub fn coherent_state(s: SpinQuantum, p: &PhasePoint) -> PureState {
    PureState::normalized(s, coherent_amplitudes(s, p))
        .expect("coherent amplitudes are normalized by construction")
}

/// <z1|z2> via the closed form
/// [cos(t1/2)cos(t2/2) + e^{i(phi2-phi1)} sin(t1/2)sin(t2/2)]^{2s},
/// the polar rewrite of (1 + conj(z1) z2)^{2s} / norms.
pub fn coherent_overlap(s: SpinQuantum, a: &PhasePoint, b: &PhasePoint) -> C64 {
    let base = C64::new(
        fmath::cos(a.theta() / 2.0) * fmath::cos(b.theta() / 2.0),
        0.0,
    ) + fmath::expi(b.phi() - a.phi())
        * (fmath::sin(a.theta() / 2.0) * fmath::sin(b.theta() / 2.0));
    base.powu(s.twice_s())
}

/// Q(z) = <z| rho |z>, a genuine probability density against d mu.
pub fn q_function(rho: &DensityOperator, p: &PhasePoint) -> f64 {
    let psi = coherent_amplitudes(rho.s(), p);
    let rho_psi = rho.matrix().apply(&psi);
    linalg::vdot(&psi, &rho_psi).re
}

/// Samples Q of `rho` on the given grid layout.
pub fn q_function_grid(rho: &DensityOperator, template: &QGrid) -> QGrid {
    template.with_values(|p| q_function(rho, p))
}

/// Q-function of the coherent state |z0> evaluated at z, i.e.
/// |<z|z0>|^2 = [(1+z0* z)(1+z0 z*) / ((1+|z0|^2)(1+|z|^2))]^{2s}.
pub fn q_coherent(s: SpinQuantum, p: &PhasePoint, center: &PhasePoint) -> f64 {
    coherent_overlap(s, p, center).norm_sqr()
}

/// First and second quantum moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumMoments {
    pub sz: f64,
    pub sminus: C64,
    pub sz2: f64,
    pub sminus2: C64,
}

/// Moments straight from the density matrix: tr(rho A). This is the trace
/// oracle against which the Q-integral kernels are validated.
pub fn moments_from_rho(rho: &DensityOperator) -> QuantumMoments {
    let ops = crate::spin::spin_operators(rho.s());
    let sm2 = ops.sminus.mul(&ops.sminus);
    let sz2 = ops.sz.mul(&ops.sz);
    QuantumMoments {
        sz: rho.expectation(&ops.sz).re,
        sminus: rho.expectation(&ops.sminus),
        sz2: rho.expectation(&sz2).re,
        sminus2: rho.expectation(&sm2),
    }
}

/// Quantum moments as integrals of Q against polynomial kernels:
///
///   <Sz>    = int d mu Q (s+1) cos(theta)
///   <S->    = int d mu Q (s+1) sin(theta) e^{-i phi}
///   <S-^2>  = int d mu Q (s+1)(2s+3)/2 sin^2(theta) e^{-2 i phi}
///   <Sz^2>  = int d mu Q [ (s+1)(2s+3)/2 cos^2(theta) - (s+1)/2 ]
///
/// The Sz^2 kernel is the trace-oracle-verified one; in stereographic form it
/// reads (s+1) [ (s+1) - 2(s+2)|z|^2 + (s+1)|z|^4 ] / (1+|z|^2)^2. Each
/// kernel was fixed by demanding int d mu f(z) |z><z| equal the operator on
/// the full Dicke basis, and `moment_kernels_match_trace_oracle` re-checks
/// this against tr(rho A) on random states.
pub fn moments_from_q(grid: &QGrid) -> QuantumMoments {
    let s = grid.s().s();
    let sz = grid.integrate(|p, q| q * (s + 1.0) * p.cos_theta());
    let sminus = grid
        .integrate_complex(|p, q| fmath::expi(-p.phi()) * (q * (s + 1.0) * fmath::sin(p.theta())));
    let c2 = (s + 1.0) * (2.0 * s + 3.0) / 2.0;
    let sz2 = grid.integrate(|p, q| {
        let u = p.cos_theta();
        q * (c2 * u * u - (s + 1.0) / 2.0)
    });
    let sminus2 = grid.integrate_complex(|p, q| {
        let sn = fmath::sin(p.theta());
        fmath::expi(-2.0 * p.phi()) * (q * c2 * sn * sn)
    });
    QuantumMoments {
        sz,
        sminus,
        sz2,
        sminus2,
    }
}

/// Classical first moments of a distribution on the sphere of radius s:
/// the same integrals with factor s instead of s+1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalMoments {
    pub sz: f64,
    pub sminus: C64,
}

pub fn classical_moments(grid: &QGrid) -> ClassicalMoments {
    let s = grid.s().s();
    ClassicalMoments {
        sz: grid.integrate(|p, q| q * s * p.cos_theta()),
        sminus: grid
            .integrate_complex(|p, q| fmath::expi(-p.phi()) * (q * s * fmath::sin(p.theta()))),
    }
}

/// Result of inverting Q samples: the recovered state and the weighted
/// root-mean-square residual of the fit.
#[derive(Debug, Clone)]
pub struct QInversion {
    pub rho: DensityOperator,
    pub residual: f64,
}

/// Least-squares inversion of <z|rho|z> = Q(z) over the grid samples,
/// constrained to Hermitian unit-trace rho.
///
/// rho is parameterized by d real diagonal entries plus (re, im) pairs for
/// the upper triangle; the trace constraint enters through a KKT multiplier
/// and the normal equations are solved densely. Positivity is not imposed:
/// samples of a genuine state recover one, and the residual reports how
/// consistent the samples were.
pub fn invert_q(samples: &QGrid) -> Result<QInversion, Error> {
    let s = samples.s();
    let d = s.dim();
    let npar = d * d;
    if samples.len() < npar {
        return Err(Error::RankDeficient);
    }

    let psis: Vec<Vec<C64>> = samples
        .nodes()
        .iter()
        .map(|p| coherent_amplitudes(s, p))
        .collect();
    // design matrix row for node i: Q_i = sum_k a_ik * param_k
    let row = |psi: &[C64], out: &mut [f64]| {
        let mut k = 0;
        for amp in psi {
            out[k] = amp.norm_sqr();
            k += 1;
        }
        for m in 0..d {
            for mp in (m + 1)..d {
                let pr = psi[m].conj() * psi[mp];
                out[k] = 2.0 * pr.re;
                out[k + 1] = -2.0 * pr.im;
                k += 2;
            }
        }
    };

    // weighted normal equations bordered by the trace constraint
    let n_kkt = npar + 1;
    let mut kkt = alloc::vec![0.0f64; n_kkt * n_kkt];
    let mut rhs = alloc::vec![0.0f64; n_kkt];
    let mut a_row = alloc::vec![0.0f64; npar];
    for (i, psi) in psis.iter().enumerate() {
        row(psi, &mut a_row);
        let w = samples.weight(i);
        let q = samples.value(i);
        for p in 0..npar {
            let wap = w * a_row[p];
            for pp in p..npar {
                kkt[p * n_kkt + pp] += wap * a_row[pp];
            }
            rhs[p] += wap * q;
        }
    }
    for p in 0..npar {
        for pp in 0..p {
            kkt[p * n_kkt + pp] = kkt[pp * n_kkt + p];
        }
    }
    for m in 0..d {
        kkt[m * n_kkt + npar] = 1.0;
        kkt[npar * n_kkt + m] = 1.0;
    }
    rhs[npar] = 1.0;

    let sol = linalg::solve_real(&mut kkt, &mut rhs, n_kkt)?;

    let mut mat = CMat::zeros(d, d);
    let mut k = 0;
    for m in 0..d {
        mat[(m, m)] = C64::new(sol[k], 0.0);
        k += 1;
    }
    for m in 0..d {
        for mp in (m + 1)..d {
            mat[(m, mp)] = C64::new(sol[k], sol[k + 1]);
            mat[(mp, m)] = C64::new(sol[k], -sol[k + 1]);
            k += 2;
        }
    }

    let mut res2 = 0.0;
    for (i, psi) in psis.iter().enumerate() {
        let fit = linalg::vdot(psi, &mat.apply(psi)).re;
        let dq = fit - samples.value(i);
        res2 += samples.weight(i) * dq * dq;
    }
    let residual = fmath::sqrt(res2);

    let rho = DensityOperator::new(s, mat)?;
    Ok(QInversion { rho, residual })
}
