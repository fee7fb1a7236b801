use core::f64::consts::PI;

use num_complex::Complex64;

use super::{ensure_finite, ComplexValue};
use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const POLE_TOL: f64 = 1e-12;

fn check_pole(s: Complex64) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::NonFinite(alloc::format!("gamma argument {s}")));
    }
    let n = s.re.round();
    if n <= 0.0 && (s - Complex64::new(n, 0.0)).norm() < POLE_TOL {
        return Err(Error::Pole(alloc::format!("Gamma has a pole at s = {n}")));
    }
    Ok(())
}

/// Lanczos approximation of ln Gamma(s), valid for Re s >= 1/2 and
/// accurate to a few ulps for moderate |s|.
fn lanczos_ln(s: Complex64) -> Complex64 {
    let z = s - 1.0;
    let mut acc = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + k as f64);
    }
    let t = z + (LANCZOS_G + 0.5);
    HALF_LN_2PI + (z + 0.5) * t.ln() - t + acc.ln()
}

const STIRLING_MIN: f64 = 10.0;

/// Stirling series, for |s| >= STIRLING_MIN and Re s >= 1/2.
fn stirling_ln(s: Complex64) -> Complex64 {
    // B_2k / (2k (2k - 1)) for k = 1..12
    const COEF: [f64; 12] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
        43867.0 / 244188.0,
        -174611.0 / 125400.0,
        77683.0 / 5796.0,
        -236364091.0 / 1506960.0,
    ];
    let w = s.inv();
    let w2 = w * w;
    let mut series = Complex64::new(0.0, 0.0);
    for &c in COEF.iter().rev() {
        series = series * w2 + c;
    }
    (s - 0.5) * s.ln() - s + HALF_LN_2PI + series * w
}

/// ln Gamma(s) for Re s >= 1/2.
fn ln_gamma_right(s: Complex64) -> Complex64 {
    if s.norm() >= STIRLING_MIN {
        stirling_ln(s)
    } else {
        lanczos_ln(s)
    }
}

/// Principal branch of ln Gamma(s).
///
/// Continuous on the plane cut along the nonpositive real axis; for
/// Re s < 1/2 the argument is shifted with the recurrence.
pub fn log_gamma(s: ComplexValue) -> Result<ComplexValue> {
    check_pole(s)?;
    let v = if s.re >= 0.5 {
        ln_gamma_right(s)
    } else {
        let n = (0.5 - s.re).ceil() as usize;
        let mut shift = Complex64::new(0.0, 0.0);
        for k in 0..n {
            shift += (s + k as f64).ln();
        }
        ln_gamma_right(s + n as f64) - shift
    };
    ensure_finite(v, "log_gamma")
}

/// Gamma(s) for complex `s`; reflection formula for Re s < 1/2.
pub fn gamma(s: ComplexValue) -> Result<ComplexValue> {
    check_pole(s)?;
    let v = if s.re >= 0.5 {
        ln_gamma_right(s).exp()
    } else {
        let r = ln_gamma_right(1.0 - s).exp();
        Complex64::new(PI, 0.0) / ((s * PI).sin() * r)
    };
    ensure_finite(v, "gamma")
}
