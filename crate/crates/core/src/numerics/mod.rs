//! Complex Gamma function and quadrature engines.

mod gamma;
mod gauss;
mod quadrature;
pub(crate) mod special;

pub use gamma::{gamma, log_gamma};
pub use gauss::{gauss_legendre, GaussLegendre};
pub use quadrature::{
    integrate_halfline, integrate_plane, integrate_realline, integrate_realline_at, PlaneOrder,
    QuadratureConfig, QuadratureResult,
};

/// A complex number `re + i im`.
pub type ComplexValue = num_complex::Complex64;

use crate::error::{Error, Result};

/// Reject NaN or infinite components.
pub fn ensure_finite(v: ComplexValue, what: &str) -> Result<ComplexValue> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(alloc::format!("{what} = {v}")))
    }
}
