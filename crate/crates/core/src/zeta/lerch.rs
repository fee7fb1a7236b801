use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::kernels::{h_unchecked, hurwitz_integrand, lerch_integrand};
use super::tail::{lerch_sum, Series};
use super::Estimate;
use crate::error::{Error, Result};
use crate::numerics::{gamma, integrate_realline_at, ComplexValue, QuadratureConfig, QuadratureResult};

/// Which representation of Phi(s, a, z) applies at a given `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LerchRegime {
    /// Absolutely convergent series: sigma > 1, or |z| < 1.
    SeriesAbs,
    /// z = 1 and 0 < sigma < 1, through the kernel H.
    ContinuedZ1,
    /// |z| = 1, z != 1 and 0 < sigma <= 1.
    ContinuedZne1,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LerchParams {
    pub a: f64,
    pub z: f64,
    pub regime: LerchRegime,
}

impl LerchParams {
    /// Classify `(sigma, a, z)` for real `z`.
    pub fn new(sigma: f64, a: f64, z: f64) -> Result<Self> {
        check_a(a)?;
        check_z(z)?;
        if !(sigma > 0.0) {
            return Err(Error::region("sigma must be positive"));
        }
        let regime = if sigma > 1.0 || z.abs() < 1.0 {
            LerchRegime::SeriesAbs
        } else if z == 1.0 {
            if sigma == 1.0 {
                return Err(Error::Pole("Phi(s, a, 1) has a pole at s = 1".into()));
            }
            LerchRegime::ContinuedZ1
        } else {
            LerchRegime::ContinuedZne1
        };
        Ok(LerchParams { a, z, regime })
    }
}

pub(crate) fn check_a(a: f64) -> Result<()> {
    if a > 0.0 && a <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(alloc::format!("a = {a} is outside (0, 1]")))
    }
}

fn check_z(z: f64) -> Result<()> {
    if z != 0.0 && z.abs() <= 1.0 {
        Ok(())
    } else {
        Err(Error::region(alloc::format!("z = {z} is outside [-1, 1] \\ {{0}}")))
    }
}

fn check_s(s: Complex64) -> Result<()> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(alloc::format!("s = {s}")))
    }
}

/// H(a, x) = e^{(1-a)x} / (e^x - 1) - 1/x.
pub fn h_kernel(a: f64, x: f64) -> Result<f64> {
    check_a(a)?;
    if !(x > 0.0) {
        return Err(Error::domain(alloc::format!("H(a, x) needs x > 0, got {x}")));
    }
    Ok(h_unchecked(a, x))
}

/// Phi(s, a, z) = sum_{n>=0} z^n (n+a)^{-s}, summed with a controlled tail.
///
/// Accepts complex `z` with 0 < |z| <= 1; requires sigma > 1 on the unit
/// circle and sigma > 0 inside the disc.
pub fn phi_series(s: ComplexValue, a: f64, z: ComplexValue) -> Result<ComplexValue> {
    Ok(phi_series_estimate(s, a, z)?.value)
}

fn phi_series_estimate(s: ComplexValue, a: f64, z: ComplexValue) -> Result<Estimate> {
    check_s(s)?;
    check_a(a)?;
    let r = z.norm();
    if !(r > 0.0) || r > 1.0 {
        return Err(Error::region(alloc::format!("series needs 0 < |z| <= 1, got z = {z}")));
    }
    let on_circle = (r - 1.0).abs() <= 1e-15;
    if on_circle && !(s.re > 1.0) {
        return Err(Error::region("series on |z| = 1 needs Re s > 1"));
    }
    if !on_circle && !(s.re > 0.0) {
        return Err(Error::region("series needs Re s > 0"));
    }
    Ok(lerch_sum(s, a, z)?.into())
}

/// Quadrature for Gamma(s) Phi(s, a, z), real `z`.
///
/// `z = 1, sigma > 1` and `z != 1, sigma > 0` use the Mellin integral of
/// `x^{s-1} e^{(1-a)x} / (e^x - z)`; `z = 1, 0 < sigma < 1` uses the
/// integral of `H(a, x) x^{s-1}`.
pub fn gamma_phi_quad(s: ComplexValue, a: f64, z: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    check_s(s)?;
    check_a(a)?;
    check_z(z)?;
    let sigma = s.re;
    if !(sigma > 0.0) {
        return Err(Error::region("Gamma(s) Phi(s, a, z) integral needs Re s > 0"));
    }
    // bulk of e^{sigma y - a e^y} sits near y = ln(sigma / a)
    let center = (sigma.max(0.5) / a).ln().clamp(-20.0, 20.0);
    if z == 1.0 {
        if sigma == 1.0 {
            return Err(Error::region("Re s = 1 is not covered when z = 1"));
        }
        if sigma > 1.0 {
            integrate_realline_at(|y| lerch_integrand(s, a, 1.0, y), center, cfg)
        } else {
            integrate_realline_at(|y| hurwitz_integrand(s, a, y), 0.0, cfg)
        }
    } else {
        integrate_realline_at(|y| lerch_integrand(s, a, z, y), center, cfg)
    }
}

/// Gamma(s) Phi(s, a, z) by quadrature with the default configuration.
pub fn gamma_phi(s: ComplexValue, a: f64, z: f64) -> Result<ComplexValue> {
    Ok(gamma_phi_quad(s, a, z, &QuadratureConfig::default())?.value)
}

/// Above this |t| the strip values come from the series continuation: the
/// integral is only accurate in absolute terms, and Gamma(s) is tiny.
const STRIP_T_SWITCH: f64 = 8.0;

/// zeta(s, a) = Phi(s, a, 1) for Re s > 0, s != 1.
pub fn hurwitz_zeta(s: ComplexValue, a: f64) -> Result<ComplexValue> {
    Ok(hurwitz_zeta_estimate(s, a)?.value)
}

/// [`hurwitz_zeta`] with an estimate of the absolute error.
pub fn hurwitz_zeta_estimate(s: ComplexValue, a: f64) -> Result<Estimate> {
    check_s(s)?;
    check_a(a)?;
    if (s - 1.0).norm() < 1e-8 {
        return Err(Error::Pole("zeta(s, a) has a pole at s = 1".into()));
    }
    if !(s.re > 0.0) {
        return Err(Error::region("zeta(s, a) is only provided for Re s > 0"));
    }
    if s.re > 1.0 || s.re == 1.0 || s.im.abs() > STRIP_T_SWITCH {
        return Ok(lerch_sum(s, a, Complex64::new(1.0, 0.0))?.into());
    }
    quad_over_gamma(s, a, 1.0)
}

fn quad_over_gamma(s: Complex64, a: f64, z: f64) -> Result<Estimate> {
    let q = gamma_phi_quad(s, a, z, &QuadratureConfig::default())?;
    let g = gamma(s)?;
    Ok(Estimate {
        value: q.value / g,
        err_estimate: q.err_estimate / g.norm(),
    })
}

impl From<Series> for Estimate {
    fn from(s: Series) -> Self {
        Estimate {
            value: s.value,
            err_estimate: s.err,
        }
    }
}

/// Phi(s, a, z) for real `z`, dispatched over the series and the
/// continuation regimes.
pub fn phi(s: ComplexValue, a: f64, z: f64) -> Result<ComplexValue> {
    Ok(phi_estimate(s, a, z)?.0.value)
}

/// [`phi`] with an error estimate and the regime used.
pub fn phi_estimate(s: ComplexValue, a: f64, z: f64) -> Result<(Estimate, LerchRegime)> {
    check_s(s)?;
    check_z(z)?;
    let params = LerchParams::new(s.re, a, z).or_else(|e| match e {
        // sigma = 1 off the real axis is fine when z = 1
        Error::Pole(_) if s.im != 0.0 => Ok(LerchParams {
            a,
            z,
            regime: LerchRegime::ContinuedZ1,
        }),
        other => Err(other),
    })?;
    let est = match params.regime {
        LerchRegime::SeriesAbs => phi_series_estimate(s, a, Complex64::new(z, 0.0))?,
        LerchRegime::ContinuedZ1 => hurwitz_zeta_estimate(s, a)?,
        LerchRegime::ContinuedZne1 => {
            if s.im.abs() > STRIP_T_SWITCH {
                lerch_sum(s, a, Complex64::new(z, 0.0))?.into()
            } else {
                quad_over_gamma(s, a, z)?
            }
        }
    };
    Ok((est, params.regime))
}
