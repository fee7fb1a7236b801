//! The kernel H(a, x) and the integrands of the Mellin-type
//! representations, written in log variables `x = e^y` with every large
//! exponent folded into a single `exp`.

use num_complex::Complex64;

use crate::numerics::special::{ln_expm1, ln_one_minus_z_exp_neg, logaddexp};

/// Below this `x` the kernel is evaluated from its power series.
pub const H_SWITCH: f64 = 0.25;
const H_TERMS: usize = 12;

/// Series branch of H(a, x): ratio of the Taylor series of
/// `x e^{(1-a)x} - e^x + 1` and `x (e^x - 1)`, both divided by `x^2`.
pub fn h_series(a: f64, x: f64) -> f64 {
    let b = 1.0 - a;
    // n_j = b^{j-1}/(j-1)! - 1/j!, d_j = 1/(j-1)!, j = 2..=H_TERMS+1
    let mut bp = b; // b^{j-1}
    let mut fact_jm1 = 1.0; // (j-1)!
    let mut num = 0.0;
    let mut den = 0.0;
    let mut xp = 1.0;
    for j in 2..=H_TERMS + 1 {
        let jf = j as f64;
        let fact_j = fact_jm1 * jf;
        num += (bp / fact_jm1 - 1.0 / fact_j) * xp;
        den += xp / fact_jm1;
        xp *= x;
        bp *= b;
        fact_jm1 = fact_j;
    }
    num / den
}

/// H(a, x) without argument checks; `x > 0`.
pub fn h_unchecked(a: f64, x: f64) -> f64 {
    if x < H_SWITCH {
        h_series(a, x)
    } else {
        h_direct(a, x)
    }
}

/// Closed form `e^{-ax} / (1 - e^{-x}) - 1/x`.
pub fn h_direct(a: f64, x: f64) -> f64 {
    (-a * x).exp() / -(-x).exp_m1() - 1.0 / x
}

/// `x H(a, x)`, bounded on `(0, inf]`; tends to -1 as `x -> inf`.
pub fn xh(a: f64, x: f64) -> f64 {
    if x < H_SWITCH {
        x * h_series(a, x)
    } else if a * x > 740.0 {
        -1.0
    } else {
        x * (-a * x).exp() / -(-x).exp_m1() - 1.0
    }
}

/// H(a, e^lx) as `factor * e^{-shift}` with a bounded factor.
#[inline]
fn h_scaled(a: f64, lx: f64) -> (f64, f64) {
    if lx <= 0.0 {
        (h_unchecked(a, lx.exp()), 0.0)
    } else {
        (xh(a, lx.exp()), lx)
    }
}

#[inline]
fn cexp(re: f64, im: f64) -> Complex64 {
    if re == f64::NEG_INFINITY {
        return Complex64::new(0.0, 0.0);
    }
    let m = re.exp();
    Complex64::new(m * im.cos(), m * im.sin())
}

/// `x^s e^{-ax} / (1 - z e^{-x})` at `x = e^y`: the integrand of
/// Gamma(s) Phi(s, a, z) after the substitution.
#[inline]
pub fn lerch_integrand(s: Complex64, a: f64, z: f64, y: f64) -> Complex64 {
    let x = y.exp();
    let e = s.re * y - a * x - ln_one_minus_z_exp_neg(z, y);
    cexp(e, s.im * y)
}

/// `e^{sy} H(a, e^y)`: the integrand of the continued Gamma(s) zeta(s, a).
#[inline]
pub fn hurwitz_integrand(s: Complex64, a: f64, y: f64) -> Complex64 {
    let (h, shift) = h_scaled(a, y);
    cexp(s.re * y - shift, s.im * y) * h
}

/// Integrand of Gamma(s1) Gamma(s2) Phi2 in log variables `(eta, theta)`.
#[inline]
pub fn double_integrand(s1: Complex64, s2: Complex64, a: f64, z1: f64, z2: f64, eta: f64, theta: f64) -> Complex64 {
    let lw = logaddexp(eta, theta);
    let w = lw.exp();
    let y = theta.exp();
    let e = s1.re * eta + s2.re * theta - a * w - y - ln_one_minus_z_exp_neg(z2, theta) - ln_one_minus_z_exp_neg(z1, lw);
    cexp(e, s1.im * eta + s2.im * theta)
}

/// First term of the strip representation:
/// `e^{s1 eta + s2 theta} H(a, X + Y) / (e^Y - 1)`.
#[inline]
pub fn strip_first(s1: Complex64, s2: Complex64, a: f64, eta: f64, theta: f64) -> Complex64 {
    let lw = logaddexp(eta, theta);
    let (h, shift) = h_scaled(a, lw);
    let e = s1.re * eta + s2.re * theta - shift - ln_expm1(theta);
    cexp(e, s1.im * eta + s2.im * theta) * h
}

/// Second term: `e^{s1 eta + s2 theta} H(1, Y) / (X + Y)`.
#[inline]
pub fn strip_second(s1: Complex64, s2: Complex64, eta: f64, theta: f64) -> Complex64 {
    let lw = logaddexp(eta, theta);
    let (h, shift) = h_scaled(1.0, theta);
    let e = s1.re * eta + s2.re * theta - shift - lw;
    cexp(e, s1.im * eta + s2.im * theta) * h
}

/// Both strip terms together: `e^{s1 eta + s2 theta} cal_h(a; X, Y)`.
#[inline]
pub fn strip_integrand(s1: Complex64, s2: Complex64, a: f64, eta: f64, theta: f64) -> Complex64 {
    strip_first(s1, s2, a, eta, theta) + strip_second(s1, s2, eta, theta)
}
