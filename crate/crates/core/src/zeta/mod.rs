//! Hurwitz-Lerch zeta and Euler-Zagier double zeta functions.

mod double_zeta;
pub mod kernels;
mod lerch;
pub(crate) mod tail;

pub use double_zeta::{
    cal_h, gamma2_phi2, gamma2_phi2_quad, gamma2_zeta2_strip_quad, phi2_estimate, phi2_series, phi2_series_estimate,
    strip_terms_quad, zeta2_continued, PHI2_ORDER, zeta2_continued_estimate, zeta2_em, zeta2_em_estimate, DoubleRegime,
    DoubleZetaParams,
};
pub use lerch::{
    gamma_phi, gamma_phi_quad, h_kernel, hurwitz_zeta, hurwitz_zeta_estimate, phi, phi_estimate, phi_series, LerchParams,
    LerchRegime,
};

use serde::{Deserialize, Serialize};

use crate::numerics::ComplexValue;

/// A value with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: ComplexValue,
    pub err_estimate: f64,
}
