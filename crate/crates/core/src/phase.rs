//! Points on the spherical phase space.
//!
//! The polar chart (theta, phi) is the ground truth; the stereographic label
//! z = e^{i phi} tan(theta/2) is a derived view, so the south pole theta = pi
//! stays representable even though its chart value is undefined.

use crate::fmath;
use crate::linalg::C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    theta: f64,
    phi: f64,
}

impl PhasePoint {
    /// Clamps theta into [0, pi] and wraps phi into [0, 2*pi).
    pub fn new(theta: f64, phi: f64) -> Self {
        let theta = theta.clamp(0.0, fmath::PI);
        PhasePoint {
            theta,
            phi: fmath::wrap_angle(phi),
        }
    }

    pub fn from_z(z: C64) -> Self {
        let theta = 2.0 * fmath::atan(z.norm());
        let phi = if z.norm() == 0.0 {
            0.0
        } else {
            fmath::atan2(z.im, z.re)
        };
        PhasePoint::new(theta, phi)
    }

    pub fn north_pole() -> Self {
        PhasePoint {
            theta: 0.0,
            phi: 0.0,
        }
    }

    pub fn south_pole() -> Self {
        PhasePoint {
            theta: fmath::PI,
            phi: 0.0,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn cos_theta(&self) -> f64 {
        fmath::cos(self.theta)
    }

    pub fn is_south_pole(&self) -> bool {
        self.theta >= fmath::PI
    }

    /// Stereographic label; `None` at the south pole where the chart blows up.
    pub fn z(&self) -> Option<C64> {
        if self.is_south_pole() {
            None
        } else {
            let r = fmath::tan(self.theta / 2.0);
            Some(C64::new(r * fmath::cos(self.phi), r * fmath::sin(self.phi)))
        }
    }

    /// The point labelled -z: same latitude, phi advanced by pi.
    pub fn negated(&self) -> Self {
        PhasePoint::new(self.theta, self.phi + fmath::PI)
    }

    /// The antipodal point, labelled -1/conj(z).
    pub fn antipode(&self) -> Self {
        PhasePoint::new(fmath::PI - self.theta, self.phi + fmath::PI)
    }
}
