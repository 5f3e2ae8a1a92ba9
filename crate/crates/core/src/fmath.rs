//! Thin wrappers over `libm` so the rest of the crate stays `no_std`-clean.

use crate::linalg::C64;

#[allow(unused_imports)]
pub use libm::{atan, atan2, cos, exp, fabs, log, log1p, sin, sqrt, tan};

pub const PI: f64 = core::f64::consts::PI;
pub const TAU: f64 = 2.0 * core::f64::consts::PI;

/// e^{i theta}
pub fn expi(theta: f64) -> C64 {
    C64::new(cos(theta), sin(theta))
}

pub fn powi(base: f64, n: i32) -> f64 {
    let mut acc = 1.0;
    let mut b = if n < 0 { 1.0 / base } else { base };
    let mut k = n.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc *= b;
        }
        b *= b;
        k >>= 1;
    }
    acc
}

/// Wraps an angle into [0, 2*pi).
pub fn wrap_angle(phi: f64) -> f64 {
    let mut w = phi % TAU;
    if w < 0.0 {
        w += TAU;
    }
    // `-1e-17 % TAU` rounds to TAU itself; fold that back to 0.
    if w >= TAU {
        w -= TAU;
    }
    w
}
