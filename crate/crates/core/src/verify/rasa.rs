use core::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Constants of the Ramachandra-Sankaranarayanan lower bound for
/// `Re(e^{-i theta} zeta(sigma0 + it, a))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RasaConstants {
    pub sigma0: f64,
    pub l: u32,
    pub theta: f64,
    pub c1: f64,
    /// Positive root of `e^y = 2y + 1`.
    pub y0: f64,
    /// `2 y0 (2 y0 + 1)^{-2}`, the upper limit for `c1`.
    pub c2: f64,
    /// `cos(2 pi / l) (log l)^{sigma0 - 1}`.
    pub c0: f64,
}

/// Positive root of `e^y - 2y - 1` by bisection on `[1, 2]`.
fn y0_root() -> f64 {
    let g = |y: f64| y.exp() - 2.0 * y - 1.0;
    let (mut lo, mut hi) = (1.0_f64, 2.0_f64);
    while hi - lo > f64::EPSILON * hi {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

impl RasaConstants {
    pub fn new(sigma0: f64, l: u32, theta: f64, c1: f64) -> Result<Self> {
        if !(0.5..1.0).contains(&sigma0) {
            return Err(Error::domain(alloc::format!("sigma0 = {sigma0} is outside [1/2, 1)")));
        }
        if l < 6 {
            return Err(Error::domain(alloc::format!("l = {l} is below 6")));
        }
        if !(0.0..2.0 * PI).contains(&theta) {
            return Err(Error::domain(alloc::format!("theta = {theta} is outside [0, 2 pi)")));
        }
        let y0 = y0_root();
        let c2 = 2.0 * y0 / ((2.0 * y0 + 1.0) * (2.0 * y0 + 1.0));
        if !(c1 > 0.0 && c1 < c2) {
            return Err(Error::domain(alloc::format!("c1 = {c1} is outside (0, c2 = {c2})")));
        }
        let lf = l as f64;
        let c0 = (2.0 * PI / lf).cos() * lf.ln().powf(sigma0 - 1.0);
        Ok(RasaConstants { sigma0, l, theta, c1, y0, c2, c0 })
    }
}

/// `c0 c1 / (1 - sigma0) (log t0)^{1 - sigma0}`.
pub fn rasa_bound(consts: &RasaConstants, t0: f64) -> Result<f64> {
    let k = consts;
    if !(k.c1 > 0.0 && k.c1 < k.c2) {
        return Err(Error::domain(alloc::format!("c1 = {} is outside (0, c2 = {})", k.c1, k.c2)));
    }
    if !(0.5..1.0).contains(&k.sigma0) {
        return Err(Error::domain(alloc::format!("sigma0 = {} is outside [1/2, 1)", k.sigma0)));
    }
    if !(t0 > 1.0) || !t0.is_finite() {
        return Err(Error::domain(alloc::format!("t0 = {t0} must exceed 1")));
    }
    Ok(k.c0 * k.c1 / (1.0 - k.sigma0) * t0.ln().powf(1.0 - k.sigma0))
}
