//! Two-qubit gate layer: Pauli rotations, the scalar-coupling gate, the Bell
//! pulse sequence, thermal and pseudo-pure states, the PPT entanglement
//! test, the triplet embedding onto the s = 1 top, the exchange interaction,
//! GHZ cascades, Bloch precession, and the gate-count decay model.
//!
//! Basis convention, used everywhere: |down> = |0> = (1, 0), |up> = |1>,
//! and the Pauli matrices take their standard form in that ordering, so
//! sigma_z |down> = +|down>. Qubit 0 is the leftmost tensor factor: basis
//! index b = q0 * 2^{n-1} + ... + q_{n-1}.

use alloc::vec;
use alloc::vec::Vec;

use crate::fmath;
use crate::linalg::{vec_norm, CMat, C64};
use crate::spin::{PureState, SpinQuantum};
use crate::{Error, TOL_EIGENVALUE};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn sigma_x() -> CMat {
    CMat::from_fn(2, 2, |i, j| if i != j { c(1.0, 0.0) } else { c(0.0, 0.0) })
}

pub fn sigma_y() -> CMat {
    let mut m = CMat::zeros(2, 2);
    m[(0, 1)] = c(0.0, -1.0);
    m[(1, 0)] = c(0.0, 1.0);
    m
}

pub fn sigma_z() -> CMat {
    let mut m = CMat::zeros(2, 2);
    m[(0, 0)] = c(1.0, 0.0);
    m[(1, 1)] = c(-1.0, 0.0);
    m
}

/// Normalized state vector of an n-qubit register.
#[derive(Debug, Clone)]
pub struct QubitState {
    n: usize,
    amplitudes: Vec<C64>,
}

impl QubitState {
    pub fn new(n: usize, amplitudes: Vec<C64>) -> Result<Self, Error> {
        if amplitudes.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                got: amplitudes.len(),
            });
        }
        let norm = vec_norm(&amplitudes);
        if fmath::fabs(norm - 1.0) > 1e-12 {
            return Err(Error::NotNormalized(fmath::fabs(norm - 1.0)));
        }
        Ok(QubitState { n, amplitudes })
    }

    /// |00...0>, i.e. all spins down.
    pub fn all_down(n: usize) -> Self {
        let mut amplitudes = vec![c(0.0, 0.0); 1 << n];
        amplitudes[0] = c(1.0, 0.0);
        QubitState { n, amplitudes }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn overlap(&self, other: &QubitState) -> C64 {
        crate::linalg::vdot(&self.amplitudes, &other.amplitudes)
    }

    pub fn fidelity(&self, other: &QubitState) -> f64 {
        self.overlap(other).norm_sqr()
    }

    pub fn to_density(&self) -> MultiQubitState {
        MultiQubitState {
            n: self.n,
            matrix: CMat::outer(&self.amplitudes, &self.amplitudes),
        }
    }
}

/// Validated n-qubit density matrix.
#[derive(Debug, Clone)]
pub struct MultiQubitState {
    n: usize,
    matrix: CMat,
}

impl MultiQubitState {
    pub fn new(n: usize, matrix: CMat) -> Result<Self, Error> {
        let d = 1 << n;
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: matrix.rows(),
            });
        }
        let herm = matrix.hermiticity_defect();
        if herm > 1e-12 {
            return Err(Error::NotHermitian(herm));
        }
        let tr = matrix.trace();
        if fmath::fabs(tr.re - 1.0) > 1e-12 || fmath::fabs(tr.im) > 1e-12 {
            return Err(Error::NotUnitTrace(fmath::fabs(tr.re - 1.0)));
        }
        let min = matrix.min_eigenvalue();
        if min < -TOL_EIGENVALUE {
            return Err(Error::NegativeEigenvalue(min));
        }
        Ok(MultiQubitState { n, matrix })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }
}

/// One term of a pulse sequence, in application order.
#[derive(Debug, Clone, PartialEq)]
pub enum PulseTerm {
    /// exp(-i (angle/2) axis . sigma) on `target`.
    Rotation {
        axis: [f64; 3],
        angle: f64,
        target: usize,
    },
    /// exp(-i angle sigma_z sigma_z) on the qubit pair.
    Coupling { angle: f64, pair: (usize, usize) },
}

/// An ordered pulse program; `unitary` multiplies the terms out with the
/// first-listed pulse applied first.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSequence {
    pub terms: Vec<PulseTerm>,
}

impl PulseSequence {
    pub fn unitary(&self, n: usize) -> Result<CMat, Error> {
        let mut u = CMat::identity(1 << n);
        for term in &self.terms {
            let g = match term {
                PulseTerm::Rotation {
                    axis,
                    angle,
                    target,
                } => u1(*axis, *angle, *target, n)?,
                PulseTerm::Coupling { angle, pair } => coupling_gate(*angle, *pair, n)?,
            };
            u = g.mul(&u);
        }
        Ok(u)
    }
}

fn embed_single(gate: &CMat, target: usize, n: usize) -> Result<CMat, Error> {
    if target >= n {
        return Err(Error::TargetOutOfRange { target, qubits: n });
    }
    let mut u = CMat::identity(1);
    for q in 0..n {
        let factor = if q == target {
            gate.clone()
        } else {
            CMat::identity(2)
        };
        u = u.kron(&factor);
    }
    Ok(u)
}

/// Single-qubit rotation exp(-i (angle/2) axis . sigma) embedded in an
/// n-qubit register. The half-angle convention means a 2 pi rotation is
/// -identity (the spinor sign). A bare Hamiltonian factor exp(-i B . sigma)
/// is u1(B_hat, 2|B|, ...).
pub fn u1(axis: [f64; 3], angle: f64, target: usize, n: usize) -> Result<CMat, Error> {
    let norm = fmath::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if fmath::fabs(norm - 1.0) > 1e-12 {
        return Err(Error::NonUnitAxis(norm));
    }
    let half = angle / 2.0;
    let (co, si) = (fmath::cos(half), fmath::sin(half));
    // cos(a/2) I - i sin(a/2) (n . sigma)
    let mut gate = CMat::zeros(2, 2);
    gate[(0, 0)] = c(co, -si * axis[2]);
    gate[(1, 1)] = c(co, si * axis[2]);
    gate[(0, 1)] = c(-si * axis[1], -si * axis[0]);
    gate[(1, 0)] = c(si * axis[1], -si * axis[0]);
    embed_single(&gate, target, n)
}

fn coupling_gate(angle: f64, pair: (usize, usize), n: usize) -> Result<CMat, Error> {
    if pair.0 >= n || pair.1 >= n || pair.0 == pair.1 {
        return Err(Error::TargetOutOfRange {
            target: pair.0.max(pair.1),
            qubits: n,
        });
    }
    let d = 1 << n;
    let mut u = CMat::zeros(d, d);
    for b in 0..d {
        let bit = |q: usize| (b >> (n - 1 - q)) & 1;
        // sigma_z eigenvalue is +1 on |down> = bit 0
        let parity = if bit(pair.0) == bit(pair.1) {
            1.0
        } else {
            -1.0
        };
        u[(b, b)] = fmath::expi(-angle * parity);
    }
    Ok(u)
}

/// The scalar-coupling gate U2(t) = exp(-i (J/4) t sigma_z sigma_z) on two
/// qubits: diagonal phases e^{-+ i J t / 4} by the parity of the basis state.
pub fn u2(j: f64, t: f64) -> CMat {
    coupling_gate(j * t / 4.0, (0, 1), 2).expect("fixed two-qubit layout")
}

/// The printed seven-factor pulse program that turns |down down> into the
/// Bell state (|dd> + |uu>)/sqrt(2): six rotations/couplings with all
/// exponent angles pi/4, then a global phase e^{-i pi/4}.
pub fn bell_pulse_sequence() -> PulseSequence {
    let x = [1.0, 0.0, 0.0];
    let y = [0.0, 1.0, 0.0];
    let z = [0.0, 0.0, 1.0];
    PulseSequence {
        terms: vec![
            // e^{-i(pi/4) sigma_y^(1)}
            PulseTerm::Rotation {
                axis: y,
                angle: fmath::PI / 2.0,
                target: 0,
            },
            // e^{+i(pi/4) sigma_y^(2)}
            PulseTerm::Rotation {
                axis: y,
                angle: -fmath::PI / 2.0,
                target: 1,
            },
            // e^{-i(pi/4) sigma_z sigma_z}
            PulseTerm::Coupling {
                angle: fmath::PI / 4.0,
                pair: (0, 1),
            },
            // e^{-i(pi/4) sigma_y^(2)}
            PulseTerm::Rotation {
                axis: y,
                angle: fmath::PI / 2.0,
                target: 1,
            },
            // e^{+i(pi/4) sigma_z^(1)}
            PulseTerm::Rotation {
                axis: z,
                angle: -fmath::PI / 2.0,
                target: 0,
            },
            // e^{+i(pi/4) sigma_x^(2)}
            PulseTerm::Rotation {
                axis: x,
                angle: -fmath::PI / 2.0,
                target: 1,
            },
        ],
    }
}

/// Runs the Bell pulse program on |down down>.
pub fn bell_sequence() -> QubitState {
    let u = bell_pulse_sequence()
        .unitary(2)
        .expect("fixed two-qubit program");
    let phase = fmath::expi(-fmath::PI / 4.0);
    let amps: Vec<C64> = u
        .apply(QubitState::all_down(2).amplitudes())
        .into_iter()
        .map(|a| a * phase)
        .collect();
    QubitState::new(2, amps).expect("unitary preserves the norm")
}

/// The Bell state (|dd> + |uu>)/sqrt(2).
pub fn bell_phi_plus() -> QubitState {
    let r = core::f64::consts::FRAC_1_SQRT_2;
    QubitState::new(2, vec![c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(r, 0.0)]).unwrap()
}

/// High-temperature two-spin thermal state
/// rho = I/4 + (epsilon/4)(sigma_z^(1) + mu sigma_z^(2)); mu is the ratio of
/// the Larmor frequencies. Errors if epsilon pushes an eigenvalue negative.
pub fn thermal_two_spin(epsilon: f64, mu: f64) -> Result<MultiQubitState, Error> {
    let z1 = sigma_z().kron(&CMat::identity(2));
    let z2 = CMat::identity(2).kron(&sigma_z());
    let m = CMat::identity(4)
        .scale(c(0.25, 0.0))
        .add(&z1.add(&z2.scale(c(mu, 0.0))).scale(c(epsilon / 4.0, 0.0)));
    MultiQubitState::new(2, m)
}

/// Pseudo-pure state ((1-epsilon)/2^n) I + epsilon |psi><psi|.
pub fn pseudo_pure(psi: &QubitState, epsilon: f64) -> Result<MultiQubitState, Error> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::ParameterOutOfRange("epsilon must be in [0, 1]"));
    }
    let n = psi.n_qubits();
    let d = 1 << n;
    let id = CMat::identity(d).scale(c((1.0 - epsilon) / d as f64, 0.0));
    let proj = psi.to_density();
    let m = id.add(&proj.matrix().scale(c(epsilon, 0.0)));
    MultiQubitState::new(n, m)
}

/// Partial transpose over the second qubit of a two-qubit state.
pub fn partial_transpose(rho: &MultiQubitState) -> Result<CMat, Error> {
    if rho.n_qubits() != 2 {
        return Err(Error::QubitCountUnsupported(rho.n_qubits()));
    }
    let m = rho.matrix();
    Ok(CMat::from_fn(4, 4, |r, cidx| {
        let (a, b) = (r >> 1, r & 1);
        let (ap, bp) = (cidx >> 1, cidx & 1);
        // transpose the second-qubit indices
        m[((a << 1) | bp, (ap << 1) | b)]
    }))
}

/// Exact two-qubit separability test: entangled iff the partial transpose
/// has a negative eigenvalue.
pub fn ppt_entangled(rho: &MultiQubitState) -> Result<bool, Error> {
    let pt = partial_transpose(rho)?;
    Ok(pt.min_eigenvalue() < -TOL_EIGENVALUE)
}

/// Isometry between the s = 1 triplet sector and the two-qubit space:
/// |1,1> -> |dd>, |1,0> -> (|du> + |ud>)/sqrt(2), |1,-1> -> |uu>.
/// (Collective Sz = (sigma_z^(1) + sigma_z^(2))/2 gives |dd> eigenvalue +1
/// under this crate's sigma_z |down> = +|down> convention.)
#[derive(Debug, Clone)]
pub struct TripletEmbedding {
    isometry: CMat, // 4 x 3
}

pub fn triplet_embed() -> TripletEmbedding {
    let mut v = CMat::zeros(4, 3);
    let r = core::f64::consts::FRAC_1_SQRT_2;
    v[(0, 0)] = c(1.0, 0.0); // |dd>  <- |1, 1>
    v[(1, 1)] = c(r, 0.0); // (|du> + |ud>)/sqrt2 <- |1, 0>
    v[(2, 1)] = c(r, 0.0);
    v[(3, 2)] = c(1.0, 0.0); // |uu>  <- |1, -1>
    TripletEmbedding { isometry: v }
}

impl TripletEmbedding {
    pub fn isometry(&self) -> &CMat {
        &self.isometry
    }

    /// Embeds a spin-1 state vector into the two-qubit space.
    pub fn embed_pure(&self, psi: &PureState) -> Result<QubitState, Error> {
        if psi.s() != SpinQuantum::new(2).unwrap() {
            return Err(Error::DimensionMismatch {
                expected: 3,
                got: psi.s().dim(),
            });
        }
        QubitState::new(2, self.isometry.apply(psi.amplitudes()))
    }

    /// Restricts a two-qubit operator to the triplet sector: V^dagger O V.
    pub fn restrict(&self, op: &CMat) -> CMat {
        self.isometry.adjoint().mul(&op.mul(&self.isometry))
    }
}

/// exp(-i H_ex t) for the exchange interaction
/// H_ex = (J/4) sigma^(1) . sigma^(2): phase e^{-i J t/4} on the triplet and
/// e^{+i 3 J t/4} on the singlet.
pub fn exchange_unitary(j: f64, t: f64) -> CMat {
    let triplet_phase = fmath::expi(-j * t / 4.0);
    let singlet_phase = fmath::expi(3.0 * j * t / 4.0);
    // projectors: P_singlet = |s><s|, s = (|du> - |ud>)/sqrt2
    let r = core::f64::consts::FRAC_1_SQRT_2;
    let singlet = [c(0.0, 0.0), c(r, 0.0), c(-r, 0.0), c(0.0, 0.0)];
    let ps = CMat::outer(&singlet, &singlet);
    let pt = CMat::identity(4).sub(&ps);
    pt.scale(triplet_phase).add(&ps.scale(singlet_phase))
}

/// Hadamard on qubit 0 followed by a cascade of CNOTs:
/// (|00...0> + |11...1>)/sqrt(2). Supports 2 <= n <= 12.
pub fn ghz_cascade(n: usize) -> Result<QubitState, Error> {
    if !(2..=12).contains(&n) {
        return Err(Error::QubitCountUnsupported(n));
    }
    let d = 1usize << n;
    let mut amps = vec![c(0.0, 0.0); d];
    amps[0] = c(1.0, 0.0);
    // Hadamard on qubit 0
    let r = core::f64::consts::FRAC_1_SQRT_2;
    let mut next = vec![c(0.0, 0.0); d];
    let top_bit = 1usize << (n - 1);
    for (b, a) in amps.iter().enumerate() {
        if a.norm_sqr() == 0.0 {
            continue;
        }
        if b & top_bit == 0 {
            next[b] += a * r;
            next[b | top_bit] += a * r;
        } else {
            next[b & !top_bit] += a * r;
            next[b] -= a * r;
        }
    }
    let mut amps = next;
    // CNOT cascade: control q, target q+1
    for q in 0..n - 1 {
        let cbit = 1usize << (n - 1 - q);
        let tbit = 1usize << (n - 2 - q);
        let mut next = vec![c(0.0, 0.0); d];
        for (b, a) in amps.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            let dst = if b & cbit != 0 { b ^ tbit } else { b };
            next[dst] += a;
        }
        amps = next;
    }
    QubitState::new(n, amps)
}

/// Solution of the Bloch equation dn/dt = -B x n: rigid rotation of the
/// unit vector n0 about B_hat by the angle -|B| t. The matching
/// single-qubit unitary under this crate's conventions is u1(B_hat, -|B| t).
pub fn bloch_precession(n0: [f64; 3], b: [f64; 3], t: f64) -> [f64; 3] {
    let bn = fmath::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
    if bn == 0.0 {
        return n0;
    }
    let axis = [b[0] / bn, b[1] / bn, b[2] / bn];
    let angle = -bn * t;
    rodrigues(n0, axis, angle)
}

fn rodrigues(v: [f64; 3], axis: [f64; 3], angle: f64) -> [f64; 3] {
    let (co, si) = (fmath::cos(angle), fmath::sin(angle));
    let cross = [
        axis[1] * v[2] - axis[2] * v[1],
        axis[2] * v[0] - axis[0] * v[2],
        axis[0] * v[1] - axis[1] * v[0],
    ];
    let dot = axis[0] * v[0] + axis[1] * v[1] + axis[2] * v[2];
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = v[i] * co + cross[i] * si + axis[i] * dot * (1.0 - co);
    }
    out
}

/// Bloch vector (<sigma_x>, <sigma_y>, <sigma_z>) of a single-qubit state.
pub fn bloch_vector(psi: &QubitState) -> Result<[f64; 3], Error> {
    if psi.n_qubits() != 1 {
        return Err(Error::QubitCountUnsupported(psi.n_qubits()));
    }
    let a = psi.amplitudes();
    let xy = a[0].conj() * a[1];
    Ok([2.0 * xy.re, 2.0 * xy.im, a[0].norm_sqr() - a[1].norm_sqr()])
}

/// Gate-count signal decay (1 + 2^{2n-1})^{-g}, evaluated in log space so
/// large registers cannot underflow the intermediate power of two.
pub fn schack_caves_decay(n: u32, g: f64) -> f64 {
    // ln(1 + 2^{2n-1}) = (2n-1) ln 2 + ln(1 + 2^{-(2n-1)})
    let k = (2 * n - 1) as f64;
    let ln2 = core::f64::consts::LN_2;
    let log_base = k * ln2 + fmath::log1p(fmath::exp(-k * ln2));
    fmath::exp(-g * log_base)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u1_identity_and_spinor_sign() {
        let id = u1([0.0, 0.0, 1.0], 0.0, 0, 1).unwrap();
        assert!(id.max_abs_diff(&CMat::identity(2)) < 1e-15);
        let full = u1([0.0, 0.0, 1.0], 2.0 * fmath::PI, 0, 1).unwrap();
        assert!(full.max_abs_diff(&CMat::identity(2).scale(c(-1.0, 0.0))) < 1e-14);
    }

    #[test]
    fn u1_quarter_y_on_down() {
        // e^{-i(pi/4) sigma_y} |down> = (|down> + |up>)/sqrt2 in this
        // convention
        let g = u1([0.0, 1.0, 0.0], fmath::PI / 2.0, 0, 1).unwrap();
        let out = g.apply(QubitState::all_down(1).amplitudes());
        let r = core::f64::consts::FRAC_1_SQRT_2;
        assert!((out[0] - c(r, 0.0)).norm() < 1e-14);
        assert!((out[1] - c(r, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn u1_rejects_bad_inputs() {
        assert!(matches!(
            u1([0.0, 0.0, 2.0], 1.0, 0, 1),
            Err(Error::NonUnitAxis(_))
        ));
        assert!(matches!(
            u1([0.0, 0.0, 1.0], 1.0, 3, 2),
            Err(Error::TargetOutOfRange { .. })
        ));
    }

    #[test]
    fn u1_matches_matrix_exponential_series() {
        // compare against a brute-force series for exp(-i (angle/2) n.sigma)
        let axis = [0.6, -0.64, 0.48];
        let norm = fmath::sqrt(axis.iter().map(|v| v * v).sum::<f64>());
        let axis = [axis[0] / norm, axis[1] / norm, axis[2] / norm];
        let angle = 1.234;
        let h = sigma_x()
            .scale(c(axis[0], 0.0))
            .add(&sigma_y().scale(c(axis[1], 0.0)))
            .add(&sigma_z().scale(c(axis[2], 0.0)))
            .scale(c(0.0, -angle / 2.0));
        let mut series = CMat::identity(2);
        let mut term = CMat::identity(2);
        for k in 1..40 {
            term = term.mul(&h).scale(c(1.0 / k as f64, 0.0));
            series = series.add(&term);
        }
        let gate = u1(axis, angle, 0, 1).unwrap();
        assert!(gate.max_abs_diff(&series) < 1e-13);
    }

    #[test]
    fn u2_phases_and_commutation() {
        let g = u2(1.0, 0.0);
        assert!(g.max_abs_diff(&CMat::identity(4)) < 1e-15);
        // Jt = pi: diag(e^{-i pi/4}, e^{i pi/4}, e^{i pi/4}, e^{-i pi/4})
        let g = u2(1.0, fmath::PI);
        for (idx, sign) in [(0usize, -1.0), (1, 1.0), (2, 1.0), (3, -1.0)] {
            assert!((g[(idx, idx)] - fmath::expi(sign * fmath::PI / 4.0)).norm() < 1e-14);
        }
        // commutes with sigma_z on either qubit
        let z1 = sigma_z().kron(&CMat::identity(2));
        let z2 = CMat::identity(2).kron(&sigma_z());
        let g = u2(0.9, 1.7);
        assert!(g.mul(&z1).max_abs_diff(&z1.mul(&g)) < 1e-14);
        assert!(g.mul(&z2).max_abs_diff(&z2.mul(&g)) < 1e-14);
    }

    #[test]
    fn gates_are_unitary() {
        let seq = bell_pulse_sequence();
        let u = seq.unitary(2).unwrap();
        assert!(u.mul(&u.adjoint()).max_abs_diff(&CMat::identity(4)) < 1e-12);
        let g = exchange_unitary(1.3, 0.8);
        assert!(g.mul(&g.adjoint()).max_abs_diff(&CMat::identity(4)) < 1e-12);
        let r = u1([0.0, 1.0, 0.0], 0.77, 1, 3).unwrap();
        assert!(r.mul(&r.adjoint()).max_abs_diff(&CMat::identity(8)) < 1e-12);
    }

    #[test]
    fn bell_sequence_hits_phi_plus_exactly() {
        let out = bell_sequence();
        assert!((out.fidelity(&bell_phi_plus()) - 1.0).abs() < 1e-13);
        // with the printed global phase the amplitudes match outright
        let r = core::f64::consts::FRAC_1_SQRT_2;
        assert!((out.amplitudes()[0] - c(r, 0.0)).norm() < 1e-13);
        assert!((out.amplitudes()[3] - c(r, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn bell_output_is_entangled_and_needs_the_coupling() {
        assert!(ppt_entangled(&bell_sequence().to_density()).unwrap());
        // dropping the U2 factor leaves a product state
        let mut seq = bell_pulse_sequence();
        seq.terms
            .retain(|t| !matches!(t, PulseTerm::Coupling { .. }));
        let u = seq.unitary(2).unwrap();
        let amps = u.apply(QubitState::all_down(2).amplitudes());
        let st = QubitState::new(2, amps).unwrap();
        assert!(!ppt_entangled(&st.to_density()).unwrap());
    }

    #[test]
    fn thermal_state_eigenvalues() {
        let rho = thermal_two_spin(0.0, 1.0).unwrap();
        assert!(
            rho.matrix()
                .max_abs_diff(&CMat::identity(4).scale(c(0.25, 0.0)))
                < 1e-15
        );
        let rho = thermal_two_spin(0.1, 1.0).unwrap();
        let mut eigs = rho.matrix().hermitian_eigenvalues();
        eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let expect = [0.2, 0.25, 0.25, 0.3];
        for (e, x) in eigs.iter().zip(expect) {
            assert!((e - x).abs() < 1e-12);
        }
        assert!(!ppt_entangled(&rho).unwrap());
        assert!(thermal_two_spin(0.6, 1.0).is_err());
    }

    #[test]
    fn pseudo_pure_entanglement_threshold() {
        let phi = bell_phi_plus();
        assert!(!ppt_entangled(&pseudo_pure(&phi, 1e-5).unwrap()).unwrap());
        assert!(ppt_entangled(&pseudo_pure(&phi, 0.5).unwrap()).unwrap());
        let pure = pseudo_pure(&phi, 1.0).unwrap();
        assert!(pure.matrix().max_abs_diff(phi.to_density().matrix()) < 1e-15);
    }

    #[test]
    fn ppt_examples() {
        let mixed = MultiQubitState::new(2, CMat::identity(4).scale(c(0.25, 0.0))).unwrap();
        assert!(!ppt_entangled(&mixed).unwrap());
        let bell = bell_phi_plus().to_density();
        let pt = partial_transpose(&bell).unwrap();
        let eigs = pt.hermitian_eigenvalues();
        assert!((eigs[0] + 0.5).abs() < 1e-13);
        assert!(ppt_entangled(&bell).unwrap());
        // equal mixture of the four Bell states is the maximally mixed state
        // of the pair block structure: separable
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let states = [
            [c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(r, 0.0)],
            [c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-r, 0.0)],
            [c(0.0, 0.0), c(r, 0.0), c(r, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(r, 0.0), c(-r, 0.0), c(0.0, 0.0)],
        ];
        let mut m = CMat::zeros(4, 4);
        for st in &states {
            m = m.add(&CMat::outer(st, st).scale(c(0.25, 0.0)));
        }
        let mix = MultiQubitState::new(2, m).unwrap();
        assert!(!ppt_entangled(&mix).unwrap());
    }

    #[test]
    fn ppt_requires_two_qubits() {
        let one = QubitState::all_down(1).to_density();
        assert!(ppt_entangled(&one).is_err());
    }

    #[test]
    fn triplet_embedding_identities() {
        let emb = triplet_embed();
        // |1,0> maps to the symmetric combination
        let s1 = SpinQuantum::new(2).unwrap();
        let mid = PureState::new(s1, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let q = emb.embed_pure(&mid).unwrap();
        let r = core::f64::consts::FRAC_1_SQRT_2;
        assert!((q.amplitudes()[1] - c(r, 0.0)).norm() < 1e-15);
        assert!((q.amplitudes()[2] - c(r, 0.0)).norm() < 1e-15);

        // sigma_z sigma_z restricted to the triplet equals 2 Sz^2 - 1
        let zz = sigma_z().kron(&sigma_z());
        let restricted = emb.restrict(&zz);
        let ops = crate::spin::spin_operators(s1);
        let expect = ops
            .sz
            .mul(&ops.sz)
            .scale(c(2.0, 0.0))
            .sub(&CMat::identity(3));
        assert!(restricted.max_abs_diff(&expect) < 1e-14);

        // V^dagger V = identity on the triplet
        let vtv = emb.isometry().adjoint().mul(emb.isometry());
        assert!(vtv.max_abs_diff(&CMat::identity(3)) < 1e-15);
    }

    #[test]
    fn u2_on_triplet_is_twist_evolution_up_to_phase() {
        // U2(t) restricted = e^{i J t/4} exp(-i (J/2) Sz^2 t)
        let emb = triplet_embed();
        let s1 = SpinQuantum::new(2).unwrap();
        let ops = crate::spin::spin_operators(s1);
        let (j, t) = (1.3, 0.9);
        let restricted = emb.restrict(&u2(j, t));
        let sz2 = ops.sz.mul(&ops.sz);
        let mut expect = CMat::zeros(3, 3);
        for m in 0..3 {
            expect[(m, m)] = fmath::expi(-j * t / 2.0 * sz2[(m, m)].re) * fmath::expi(j * t / 4.0);
        }
        assert!(restricted.max_abs_diff(&expect) < 1e-13);
    }

    #[test]
    fn exchange_spectrum_and_swap() {
        assert!(exchange_unitary(1.3, 0.0).max_abs_diff(&CMat::identity(4)) < 1e-15);
        // singlet has H_ex eigenvalue -3J/4: phase e^{+3iJt/4}
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let singlet = [c(0.0, 0.0), c(r, 0.0), c(-r, 0.0), c(0.0, 0.0)];
        let (j, t) = (1.1, 0.7);
        let g = exchange_unitary(j, t);
        let out = g.apply(&singlet);
        let phase = fmath::expi(3.0 * j * t / 4.0);
        for (o, s) in out.iter().zip(&singlet) {
            assert!((o - s * phase).norm() < 1e-14);
        }
        // at Jt = pi the gate is SWAP up to the global phase e^{-i pi/4}
        let g = exchange_unitary(1.0, fmath::PI);
        let mut swap = CMat::zeros(4, 4);
        swap[(0, 0)] = c(1.0, 0.0);
        swap[(1, 2)] = c(1.0, 0.0);
        swap[(2, 1)] = c(1.0, 0.0);
        swap[(3, 3)] = c(1.0, 0.0);
        let expect = swap.scale(fmath::expi(-fmath::PI / 4.0));
        assert!(g.max_abs_diff(&expect) < 1e-13);
    }

    #[test]
    fn ghz_states() {
        let g2 = ghz_cascade(2).unwrap();
        assert!((g2.fidelity(&bell_phi_plus()) - 1.0).abs() < 1e-14);
        let g3 = ghz_cascade(3).unwrap();
        let a = g3.amplitudes();
        let r = core::f64::consts::FRAC_1_SQRT_2;
        assert!((a[0] - c(r, 0.0)).norm() < 1e-14);
        assert!((a[7] - c(r, 0.0)).norm() < 1e-14);
        assert!(a[1..7].iter().all(|x| x.norm() < 1e-15));
        let g10 = ghz_cascade(10).unwrap();
        let nonzero = g10.amplitudes().iter().filter(|a| a.norm() > 1e-12).count();
        assert_eq!(nonzero, 2);
        assert!((vec_norm(g10.amplitudes()) - 1.0).abs() < 1e-12);
        assert!(ghz_cascade(1).is_err());
        assert!(ghz_cascade(13).is_err());
    }

    #[test]
    fn bloch_examples() {
        // B parallel to n0: fixed point
        let n = bloch_precession([0.0, 0.0, 1.0], [0.0, 0.0, 2.0], 1.7);
        assert!((n[2] - 1.0).abs() < 1e-15);
        // B = B z_hat, n0 = x_hat: (cos Bt, -sin Bt, 0)
        let bt = 0.9;
        let n = bloch_precession([1.0, 0.0, 0.0], [0.0, 0.0, 1.0], bt);
        assert!((n[0] - fmath::cos(bt)).abs() < 1e-14);
        assert!((n[1] + fmath::sin(bt)).abs() < 1e-14);
        // norm conserved
        let n = bloch_precession([0.6, 0.64, 0.48], [0.3, -0.2, 0.9], 4.2);
        let norm = fmath::sqrt(n.iter().map(|v| v * v).sum::<f64>());
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bloch_trajectory_equals_u1_conjugation() {
        // quantum single-spin dynamics is the classical dipole precession:
        // <sigma> after u1(B_hat, -|B| t) equals bloch_precession(n0, B, t)
        let psi = QubitState::new(1, vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let b = [0.3, -0.5, 0.8];
        let bn = fmath::sqrt(b.iter().map(|v| v * v).sum::<f64>());
        let axis = [b[0] / bn, b[1] / bn, b[2] / bn];
        for t in [0.3, 1.1, 2.9] {
            let g = u1(axis, -bn * t, 0, 1).unwrap();
            let evolved = QubitState::new(1, g.apply(psi.amplitudes())).unwrap();
            let quantum = bloch_vector(&evolved).unwrap();
            let classical = bloch_precession(bloch_vector(&psi).unwrap(), b, t);
            for (q, c) in quantum.iter().zip(classical) {
                assert!((q - c).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn decay_values() {
        assert!((schack_caves_decay(1, 1.0) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(schack_caves_decay(5, 0.0), 1.0);
        // (1 + 2^13)^{-10} = 7.3379e-40
        let v = schack_caves_decay(7, 10.0);
        let expect = fmath::exp(-10.0 * fmath::log(8193.0));
        assert!((v / expect - 1.0).abs() < 1e-12);
        assert!(v > 1e-40 && v < 1e-39);
        // wide registers stay in range as long as the result itself does
        let tiny = schack_caves_decay(200, 1.0);
        assert!(tiny > 0.0 && tiny < 1e-100);
    }
}
