//! Spin-s Hilbert space machinery: the spin quantum number, angular-momentum
//! matrices, and validated pure/mixed states.
//!
//! Basis ordering, used everywhere in this crate: amplitude index m = 0..2s
//! refers to the Dicke state |s, s-m>, so index 0 is the highest-weight state
//! |s, s> and index 2s is |s, -s>.

use alloc::vec::Vec;

use crate::fmath;
use crate::linalg::{CMat, C64};
use crate::{Error, TOL_EIGENVALUE};

/// Spin quantum number s with 2s a positive integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinQuantum {
    twice_s: u32,
}

impl SpinQuantum {
    pub fn new(twice_s: u32) -> Result<Self, Error> {
        if twice_s == 0 {
            return Err(Error::InvalidSpin(0.0));
        }
        Ok(SpinQuantum { twice_s })
    }

    /// Builds from the value of s itself; rejects anything that is not a
    /// positive half-integer.
    pub fn from_value(s: f64) -> Result<Self, Error> {
        let doubled = 2.0 * s;
        let rounded = libm::round(doubled);
        if rounded.is_nan()
            || rounded < 1.0
            || fmath::fabs(doubled - rounded) > 1e-9
            || rounded > u32::MAX as f64
        {
            return Err(Error::InvalidSpin(s));
        }
        SpinQuantum::new(rounded as u32)
    }

    pub fn s(&self) -> f64 {
        self.twice_s as f64 / 2.0
    }

    pub fn twice_s(&self) -> u32 {
        self.twice_s
    }

    /// Hilbert-space dimension 2s+1.
    pub fn dim(&self) -> usize {
        self.twice_s as usize + 1
    }

    /// Sz eigenvalue of basis index m, i.e. s - m.
    pub fn magnetic_number(&self, m: usize) -> f64 {
        self.s() - m as f64
    }
}

/// Matrix representations of Sz, S+/-, Sx, Sy for one spin sector.
#[derive(Debug, Clone)]
pub struct SpinOps {
    pub sz: CMat,
    pub splus: CMat,
    pub sminus: CMat,
    pub sx: CMat,
    pub sy: CMat,
}

/// Standard angular-momentum matrices in the |s, s-m> ordering.
pub fn spin_operators(s: SpinQuantum) -> SpinOps {
    let n = s.dim();
    let sv = s.s();
    let mut sz = CMat::zeros(n, n);
    let mut splus = CMat::zeros(n, n);
    for m in 0..n {
        sz[(m, m)] = C64::new(s.magnetic_number(m), 0.0);
    }
    // S+ |s,mu> = sqrt(s(s+1) - mu(mu+1)) |s,mu+1>: ladder up means index down.
    for m in 1..n {
        let mu = s.magnetic_number(m);
        let c = fmath::sqrt(sv * (sv + 1.0) - mu * (mu + 1.0));
        splus[(m - 1, m)] = C64::new(c, 0.0);
    }
    let sminus = splus.adjoint();
    let sx = splus.add(&sminus).scale(C64::new(0.5, 0.0));
    let sy = splus.sub(&sminus).scale(C64::new(0.0, -0.5));
    SpinOps {
        sz,
        splus,
        sminus,
        sx,
        sy,
    }
}

/// Normalized state vector in the |s, s-m> basis.
#[derive(Debug, Clone)]
pub struct PureState {
    s: SpinQuantum,
    amplitudes: Vec<C64>,
}

impl PureState {
    pub fn new(s: SpinQuantum, amplitudes: Vec<C64>) -> Result<Self, Error> {
        if amplitudes.len() != s.dim() {
            return Err(Error::DimensionMismatch {
                expected: s.dim(),
                got: amplitudes.len(),
            });
        }
        let norm = crate::linalg::vec_norm(&amplitudes);
        if fmath::fabs(norm - 1.0) > 1e-12 {
            return Err(Error::NotNormalized(fmath::fabs(norm - 1.0)));
        }
        Ok(PureState { s, amplitudes })
    }

    /// Normalizes the given amplitudes; errors only on the zero vector.
    pub fn normalized(s: SpinQuantum, mut amplitudes: Vec<C64>) -> Result<Self, Error> {
        if amplitudes.len() != s.dim() {
            return Err(Error::DimensionMismatch {
                expected: s.dim(),
                got: amplitudes.len(),
            });
        }
        let norm = crate::linalg::vec_norm(&amplitudes);
        if norm < 1e-150 {
            return Err(Error::NotNormalized(1.0));
        }
        for a in amplitudes.iter_mut() {
            *a /= norm;
        }
        Ok(PureState { s, amplitudes })
    }

    pub fn s(&self) -> SpinQuantum {
        self.s
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn overlap(&self, other: &PureState) -> C64 {
        crate::linalg::vdot(&self.amplitudes, &other.amplitudes)
    }

    /// |<self|other>|^2; all state comparisons go through this, never through
    /// amplitude equality, so global phases are irrelevant.
    pub fn fidelity(&self, other: &PureState) -> f64 {
        self.overlap(other).norm_sqr()
    }

    pub fn to_density(&self) -> DensityOperator {
        DensityOperator {
            s: self.s,
            matrix: CMat::outer(&self.amplitudes, &self.amplitudes),
        }
    }
}

/// Hermitian, unit-trace, positive-semidefinite operator on a spin sector.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    s: SpinQuantum,
    matrix: CMat,
}

impl DensityOperator {
    pub fn new(s: SpinQuantum, matrix: CMat) -> Result<Self, Error> {
        if matrix.rows() != s.dim() || matrix.cols() != s.dim() {
            return Err(Error::DimensionMismatch {
                expected: s.dim(),
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
        Ok(DensityOperator { s, matrix })
    }

    /// Skips validation; for operations that preserve the invariants exactly.
    pub(crate) fn new_unchecked(s: SpinQuantum, matrix: CMat) -> Self {
        debug_assert!(matrix.hermiticity_defect() <= 1e-10);
        DensityOperator { s, matrix }
    }

    pub fn maximally_mixed(s: SpinQuantum) -> Self {
        let n = s.dim();
        DensityOperator {
            s,
            matrix: CMat::identity(n).scale(C64::new(1.0 / n as f64, 0.0)),
        }
    }

    pub fn s(&self) -> SpinQuantum {
        self.s
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.matrix.hermitian_eigenvalues()
    }

    /// tr(rho A)
    pub fn expectation(&self, op: &CMat) -> C64 {
        self.matrix.mul(op).trace()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> SpinQuantum {
        SpinQuantum::new(1).unwrap()
    }
    fn one() -> SpinQuantum {
        SpinQuantum::new(2).unwrap()
    }

    #[test]
    fn spin_quantum_validation() {
        assert!(SpinQuantum::new(0).is_err());
        assert!(SpinQuantum::from_value(0.75).is_err());
        assert!(SpinQuantum::from_value(-1.0).is_err());
        assert_eq!(SpinQuantum::from_value(2.5).unwrap().dim(), 6);
        assert_eq!(one().dim(), 3);
        assert_eq!(one().magnetic_number(0), 1.0);
        assert_eq!(one().magnetic_number(2), -1.0);
    }

    #[test]
    fn sz_is_pauli_over_two_for_spin_half() {
        let ops = spin_operators(half());
        assert!((ops.sz[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((ops.sz[(1, 1)].re + 0.5).abs() < 1e-15);
        assert!((ops.sx[(0, 1)].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn splus_entries_for_spin_one() {
        let ops = spin_operators(one());
        let r2 = fmath::sqrt(2.0);
        assert!((ops.splus[(0, 1)].re - r2).abs() < 1e-15);
        assert!((ops.splus[(1, 2)].re - r2).abs() < 1e-15);
        assert!(ops.splus[(0, 2)].norm() < 1e-15);
    }

    #[test]
    fn casimir_for_spin_two() {
        let s = SpinQuantum::new(4).unwrap();
        let ops = spin_operators(s);
        let cas = ops
            .sx
            .mul(&ops.sx)
            .add(&ops.sy.mul(&ops.sy))
            .add(&ops.sz.mul(&ops.sz));
        let expect = CMat::identity(5).scale(C64::new(6.0, 0.0));
        assert!(cas.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn commutator_sz_splus() {
        for ts in [1u32, 2, 3, 5, 10] {
            let s = SpinQuantum::new(ts).unwrap();
            let ops = spin_operators(s);
            let lhs = ops.sz.mul(&ops.splus).sub(&ops.splus.mul(&ops.sz));
            assert!(lhs.max_abs_diff(&ops.splus) < 1e-12);
            let lhs_m = ops.sz.mul(&ops.sminus).sub(&ops.sminus.mul(&ops.sz));
            assert!(lhs_m.max_abs_diff(&ops.sminus.scale(C64::new(-1.0, 0.0))) < 1e-12);
        }
    }

    #[test]
    fn density_operator_validation() {
        let s = one();
        assert!(DensityOperator::new(s, CMat::identity(3)).is_err()); // trace 3
        let ok = DensityOperator::new(s, CMat::identity(3).scale(C64::new(1.0 / 3.0, 0.0)));
        assert!(ok.is_ok());
        let mut bad = CMat::identity(3).scale(C64::new(1.0 / 3.0, 0.0));
        bad[(0, 1)] = C64::new(0.2, 0.0); // not Hermitian
        assert!(matches!(
            DensityOperator::new(s, bad),
            Err(Error::NotHermitian(_))
        ));
        let mut neg = CMat::zeros(3, 3);
        neg[(0, 0)] = C64::new(1.5, 0.0);
        neg[(1, 1)] = C64::new(-0.5, 0.0);
        assert!(matches!(
            DensityOperator::new(s, neg),
            Err(Error::NegativeEigenvalue(_))
        ));
    }

    #[test]
    fn pure_state_validation() {
        let s = half();
        assert!(PureState::new(s, alloc::vec![C64::new(1.0, 0.0); 2]).is_err());
        let st = PureState::normalized(s, alloc::vec![C64::new(1.0, 0.0); 2]).unwrap();
        assert!((crate::linalg::vec_norm(st.amplitudes()) - 1.0).abs() < 1e-15);
        assert!((st.fidelity(&st) - 1.0).abs() < 1e-14);
    }
}
