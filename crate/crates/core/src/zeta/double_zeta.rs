use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::kernels::{double_integrand, h_unchecked, strip_first, strip_second};
use super::lerch::check_a;
use super::tail::{lerch_sum, neg_polylogs, Series};
use super::Estimate;
use crate::error::{Error, Result};
use crate::numerics::special::bernoulli;
use crate::numerics::{integrate_plane, ComplexValue, PlaneOrder, QuadratureConfig, QuadratureResult};

/// Which representation of Phi2 applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DoubleRegime {
    /// z1 = z2 = 1, sigma1 > 0, sigma2 > 1, sigma1 + sigma2 > 2.
    Case11,
    /// z1 = 1, z2 != 1, sigma1 > 1, sigma2 > 0.
    Case1Z,
    /// z1 != 1, z2 = 1, sigma1 > 0, sigma2 > 1.
    CaseZ1,
    /// z1, z2 != 1, sigma1 > 0, sigma2 > 0.
    CaseZZ,
    /// z1 = z2 = 1, 0 < sigma1 < 1, sigma2 > 1, 1 < sigma1 + sigma2 < 2.
    ContinuedStrip,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoubleZetaParams {
    pub a: f64,
    pub z1: f64,
    pub z2: f64,
    pub regime: DoubleRegime,
}

impl DoubleZetaParams {
    pub fn new(sigma1: f64, sigma2: f64, a: f64, z1: f64, z2: f64) -> Result<Self> {
        check_a(a)?;
        for z in [z1, z2] {
            if z == 0.0 || !(z.abs() <= 1.0) {
                return Err(Error::region(alloc::format!("z = {z} is outside [-1, 1] \\ {{0}}")));
            }
        }
        let regime = region(sigma1, sigma2, z1, z2)
            .ok_or_else(|| Error::region(alloc::format!("(sigma1, sigma2) = ({sigma1}, {sigma2}) is outside every integral representation")))?;
        Ok(DoubleZetaParams { a, z1, z2, regime })
    }
}

fn region(sigma1: f64, sigma2: f64, z1: f64, z2: f64) -> Option<DoubleRegime> {
    let sum = sigma1 + sigma2;
    match (z1 == 1.0, z2 == 1.0) {
        (true, true) if sigma1 > 0.0 && sigma2 > 1.0 && sum > 2.0 => Some(DoubleRegime::Case11),
        (true, true) if sigma1 > 0.0 && sigma1 < 1.0 && sigma2 > 1.0 && sum > 1.0 && sum < 2.0 => {
            Some(DoubleRegime::ContinuedStrip)
        }
        (true, false) if sigma1 > 1.0 && sigma2 > 0.0 => Some(DoubleRegime::Case1Z),
        (false, true) if sigma1 > 0.0 && sigma2 > 1.0 => Some(DoubleRegime::CaseZ1),
        (false, false) if sigma1 > 0.0 && sigma2 > 0.0 => Some(DoubleRegime::CaseZZ),
        _ => None,
    }
}

fn check_s(s: Complex64) -> Result<()> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(alloc::format!("s = {s}")))
    }
}

/// cal_h(a; x, y) = H(a, x+y) / (e^y - 1) + H(1, y) / (x + y).
pub fn cal_h(a: f64, x: f64, y: f64) -> Result<f64> {
    check_a(a)?;
    if !(x > 0.0) || !(y > 0.0) {
        return Err(Error::domain(alloc::format!("cal_h needs x, y > 0, got ({x}, {y})")));
    }
    Ok(h_unchecked(a, x + y) / y.exp_m1() + h_unchecked(1.0, y) / (x + y))
}

fn pow_neg(b: f64, s: Complex64) -> Complex64 {
    (-s * b.ln()).exp()
}

/// sum_{m>=M} |z1|^m (m+a)^{-p} bounded by an integral comparison.
fn power_tail(m: usize, a: f64, p: f64) -> f64 {
    let w = m as f64 + a;
    w.powf(-p) + w.powf(1.0 - p) / (p - 1.0)
}

const EM_K: usize = 10;
const LERCH_K: usize = 30;
const MAX_SPLIT: usize = 1 << 20;
const TARGET: f64 = 1e-15;

/// Tail sum_{m>=M} z1^m (m+a)^{-s1} J(m), J(m) = sum_{n>=1} z2^{n-1} (m+n+a)^{-s2},
/// from an expansion of J in powers of (m+a). Returns the value and an
/// error bound.
fn outer_tail(s1: Complex64, s2: Complex64, a: f64, z1: Complex64, z2: Complex64, m: usize) -> Result<Series> {
    let base = m as f64 + a;
    let zm = z1.powu(m as u32);
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let add = |c: Complex64, q: Complex64, value: &mut Complex64, err: &mut f64| -> Result<()> {
        if c == Complex64::new(0.0, 0.0) {
            return Ok(());
        }
        let r = lerch_sum(q, base, z1)?;
        *value += c * r.value;
        *err += c.norm() * r.err;
        Ok(())
    };
    if z2 == Complex64::new(1.0, 0.0) {
        // zeta(s2, u+1) ~ u^{1-s2}/(s2-1) - u^{-s2}/2 + sum_j B_2j/(2j)! (s2)_{2j-1} u^{-s2-2j+1}
        let sum = s1 + s2;
        add(1.0 / (s2 - 1.0), sum - 1.0, &mut value, &mut err)?;
        add(Complex64::new(-0.5, 0.0), sum, &mut value, &mut err)?;
        let mut rising = s2; // (s2)_{2j-1}
        let mut fact = 2.0; // (2j)!
        for j in 1..=EM_K {
            let c = rising * (bernoulli(2 * j) / fact);
            add(c, sum + (2 * j - 1) as f64, &mut value, &mut err)?;
            rising *= (s2 + (2 * j - 1) as f64) * (s2 + (2 * j) as f64);
            fact *= ((2 * j + 1) * (2 * j + 2)) as f64;
        }
        // remainder of the Euler-Maclaurin expansion, summed over m
        let mut poch = Complex64::new(1.0, 0.0);
        for i in 0..2 * EM_K {
            poch *= s2 + i as f64;
        }
        let p = s1.re + s2.re + (2 * EM_K) as f64 - 1.0;
        let scale = 4.0 * poch.norm() / (2.0 * core::f64::consts::PI).powi(2 * EM_K as i32) / (s2.re + (2 * EM_K) as f64 - 1.0);
        err += scale * power_tail(m, a, p);
    } else {
        // Phi(s2, u+1, z2) = sum_k binom(-s2, k) u^{-s2-k} Li_{-k}(z2) / z2
        let li = neg_polylogs(z2, LERCH_K);
        let mut binom = Complex64::new(1.0, 0.0);
        let mut last = 0.0;
        for (k, l) in li.iter().enumerate() {
            let c = if k == 0 { 1.0 / (1.0 - z2) } else { binom * *l / z2 };
            let q = s1 + s2 + k as f64;
            let size = c.norm() * power_tail(m, a, q.re);
            add(c, q, &mut value, &mut err)?;
            last = size;
            binom *= -(s2 + k as f64) / (k + 1) as f64;
        }
        err += last;
    }
    Ok(Series {
        value: zm * value,
        err: zm.norm() * err,
    })
}

/// Phi2 for 0 < |z1|, |z2| <= 1 by a finite double sum and an expanded
/// tail. For z1 = z2 = 1 this is the continuation in (s1, s2), valid for
/// s2 != 1 and s1 + s2 away from {2, 1, 0, -2, -4, ...}.
pub(crate) fn phi2_sum(s1: Complex64, s2: Complex64, a: f64, z1: Complex64, z2: Complex64) -> Result<Series> {
    let mut m = 64usize;
    if z2 != Complex64::new(1.0, 0.0) {
        let lz = z2.ln().norm();
        let need = (4.0 * (s2.norm() + LERCH_K as f64) / lz).ceil();
        if need > MAX_SPLIT as f64 {
            return Err(Error::region("z2 too close to 1 for the double series"));
        }
        m = m.max(need as usize);
    }
    let mut best: Option<Series> = None;
    while m <= MAX_SPLIT {
        // J(m-1) from the Lerch tail, then downward J(k) = (k+1+a)^{-s2} + z2 J(k+1)
        let top = lerch_sum(s2, m as f64 + a, z2)?;
        let mut js = alloc::vec![Complex64::new(0.0, 0.0); m];
        let mut j = top.value;
        for k in (0..m).rev() {
            js[k] = j;
            j = pow_neg(k as f64 + a, s2) + z2 * j;
        }
        let mut head = Complex64::new(0.0, 0.0);
        let mut head_err = 0.0;
        let mut zp = Complex64::new(1.0, 0.0);
        let mut rp = 1.0;
        for (k, jk) in js.iter().enumerate() {
            let w = pow_neg(k as f64 + a, s1);
            head += zp * w * jk;
            // downward recursion shrinks the top error by |z2| per step
            head_err += rp * w.norm() * top.err;
            zp *= z1;
            rp *= z1.norm();
        }
        let tail = outer_tail(s1, s2, a, z1, z2, m)?;
        let value = head + tail.value;
        let truncation = head_err + tail.err;
        let rounding = 1e-16 * (head.norm() + tail.value.norm());
        let series = Series {
            value,
            err: truncation + rounding,
        };
        if truncation <= (TARGET * value.norm()).max(rounding) {
            return Ok(series);
        }
        best = Some(series);
        m *= 2;
    }
    let best = best.expect("loop runs at least once");
    if best.err <= 1e-10 * best.value.norm() {
        Ok(best)
    } else {
        Err(Error::NonConvergence {
            axis: None,
            nodes: MAX_SPLIT,
            err_estimate: best.err,
        })
    }
}

/// Phi2(s1, s2, a, z1, z2) in its region of absolute convergence:
/// Re s1 > 0, Re s2 > 1, Re(s1 + s2) > 2 and 0 < |z1|, |z2| <= 1.
pub fn phi2_series(s1: ComplexValue, s2: ComplexValue, a: f64, z1: ComplexValue, z2: ComplexValue) -> Result<ComplexValue> {
    Ok(phi2_series_estimate(s1, s2, a, z1, z2)?.value)
}

/// [`phi2_series`] with its error estimate.
pub fn phi2_series_estimate(s1: ComplexValue, s2: ComplexValue, a: f64, z1: ComplexValue, z2: ComplexValue) -> Result<Estimate> {
    check_s(s1)?;
    check_s(s2)?;
    check_a(a)?;
    for z in [z1, z2] {
        let r = z.norm();
        if !(r > 0.0) || r > 1.0 + 1e-15 {
            return Err(Error::region(alloc::format!("double series needs 0 < |z| <= 1, got {z}")));
        }
    }
    if !(s1.re > 0.0 && s2.re > 1.0 && s1.re + s2.re > 2.0) {
        return Err(Error::region("double series needs Re s1 > 0, Re s2 > 1, Re(s1 + s2) > 2"));
    }
    Ok(phi2_sum(s1, s2, a, z1, z2)?.into())
}

/// zeta2(s1, s2; a) = Phi2(s1, s2, a, 1, 1) continued through the
/// Euler-Maclaurin tail. Needs s2 != 1 and s1 + s2 off {2, 1, 0, -2, ...}.
pub fn zeta2_em(s1: ComplexValue, s2: ComplexValue, a: f64) -> Result<ComplexValue> {
    Ok(zeta2_em_estimate(s1, s2, a)?.value)
}

/// [`zeta2_em`] with its error estimate.
pub fn zeta2_em_estimate(s1: ComplexValue, s2: ComplexValue, a: f64) -> Result<Estimate> {
    check_s(s1)?;
    check_s(s2)?;
    check_a(a)?;
    if (s2 - 1.0).norm() < 1e-8 {
        return Err(Error::Pole("zeta2 has a pole at s2 = 1".into()));
    }
    let sum = s1 + s2;
    if sum.im.abs() < 1e-8 {
        let r = sum.re;
        let near = |v: f64| (r - v).abs() < 1e-8;
        if near(2.0) || near(1.0) || (r < 0.5 && (r / 2.0 - (r / 2.0).round()).abs() < 5e-9) {
            return Err(Error::Pole(alloc::format!("zeta2 has a pole at s1 + s2 = {r}")));
        }
    }
    Ok(phi2_sum(s1, s2, a, Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))?.into())
}

/// Integration order for the Phi2 integral. With `z1 = 1` the factor
/// `1 / (e^{x+y} - 1)` couples the variables near the origin, and an outer
/// integral over theta then has a tail that is not geometric.
pub const PHI2_ORDER: PlaneOrder = PlaneOrder::InnerSecond;

fn plane_centers(s1: Complex64, s2: Complex64, a: f64) -> (f64, f64) {
    let c1 = (s1.re.max(0.5) / a.max(0.5)).ln().clamp(-5.0, 5.0);
    let c2 = s2.re.max(0.5).ln().clamp(-5.0, 5.0);
    (c1, c2)
}

/// Gamma(s1) Gamma(s2) Phi2 by iterated quadrature, with the order of
/// integration selectable.
pub fn gamma2_phi2_quad(
    s1: ComplexValue,
    s2: ComplexValue,
    a: f64,
    z1: f64,
    z2: f64,
    order: PlaneOrder,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult> {
    check_s(s1)?;
    check_s(s2)?;
    let params = DoubleZetaParams::new(s1.re, s2.re, a, z1, z2)?;
    if params.regime == DoubleRegime::ContinuedStrip {
        return Err(Error::region("the strip needs zeta2_continued"));
    }
    integrate_plane(
        |eta, theta| double_integrand(s1, s2, a, z1, z2, eta, theta),
        plane_centers(s1, s2, a),
        order,
        cfg,
    )
}

/// Gamma(s1) Gamma(s2) Phi2(s1, s2, a, z1, z2) by quadrature.
pub fn gamma2_phi2(s1: ComplexValue, s2: ComplexValue, a: f64, z1: f64, z2: f64) -> Result<ComplexValue> {
    Ok(gamma2_phi2_quad(s1, s2, a, z1, z2, PHI2_ORDER, &QuadratureConfig::default())?.value)
}

fn check_strip(s1: Complex64, s2: Complex64, a: f64) -> Result<()> {
    check_s(s1)?;
    check_s(s2)?;
    check_a(a)?;
    let (x, y) = (s1.re, s2.re);
    if !(x > 0.0 && x < 1.0 && y > 1.0 && x + y > 1.0 && x + y < 2.0) {
        return Err(Error::region("strip needs 0 < Re s1 < 1, Re s2 > 1, 1 < Re(s1 + s2) < 2"));
    }
    if x > 1.0 - 1e-3 {
        return Err(Error::region("Re s1 too close to 1 for the strip integral"));
    }
    Ok(())
}

/// The two terms of the strip representation of Gamma(s1) Gamma(s2) zeta2
/// as separate quadratures.
pub fn strip_terms_quad(s1: ComplexValue, s2: ComplexValue, a: f64, cfg: &QuadratureConfig) -> Result<(QuadratureResult, QuadratureResult)> {
    check_strip(s1, s2, a)?;
    let centers = plane_centers(s1, s2, a);
    let first = integrate_plane(|eta, theta| strip_first(s1, s2, a, eta, theta), centers, PlaneOrder::InnerFirst, cfg)?;
    let second = integrate_plane(|eta, theta| strip_second(s1, s2, eta, theta), centers, PlaneOrder::InnerFirst, cfg)?;
    Ok((first, second))
}

/// Gamma(s1) Gamma(s2) zeta2(s1, s2; a) on the strip, by quadrature.
pub fn gamma2_zeta2_strip_quad(s1: ComplexValue, s2: ComplexValue, a: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    let (first, second) = strip_terms_quad(s1, s2, a, cfg)?;
    Ok(QuadratureResult {
        value: first.value + second.value,
        err_estimate: first.err_estimate + second.err_estimate,
        nodes_used: first.nodes_used + second.nodes_used,
    })
}

/// zeta2(s1, s2; a) for 0 < Re s1 < 1, Re s2 > 1, 1 < Re(s1 + s2) < 2.
pub fn zeta2_continued(s1: ComplexValue, s2: ComplexValue, a: f64) -> Result<ComplexValue> {
    Ok(zeta2_continued_estimate(s1, s2, a)?.value)
}

/// [`zeta2_continued`] with the quadrature error estimate.
pub fn zeta2_continued_estimate(s1: ComplexValue, s2: ComplexValue, a: f64) -> Result<Estimate> {
    let r = gamma2_zeta2_strip_quad(s1, s2, a, &QuadratureConfig::default())?;
    over_gammas(r, s1, s2)
}

fn over_gammas(r: QuadratureResult, s1: Complex64, s2: Complex64) -> Result<Estimate> {
    let g = crate::numerics::gamma(s1)? * crate::numerics::gamma(s2)?;
    Ok(Estimate {
        value: r.value / g,
        err_estimate: r.err_estimate / g.norm(),
    })
}

/// Phi2(s1, s2, a, z1, z2) for real `z1, z2`: the double series where it
/// converges absolutely, otherwise the integral representation of the
/// region (divided by Gamma(s1) Gamma(s2)).
pub fn phi2_estimate(s1: ComplexValue, s2: ComplexValue, a: f64, z1: f64, z2: f64) -> Result<(Estimate, DoubleRegime)> {
    check_s(s1)?;
    check_s(s2)?;
    let params = DoubleZetaParams::new(s1.re, s2.re, a, z1, z2)?;
    let est = if s2.re > 1.0 && s1.re + s2.re > 2.0 {
        phi2_series_estimate(s1, s2, a, Complex64::new(z1, 0.0), Complex64::new(z2, 0.0))?
    } else if params.regime == DoubleRegime::ContinuedStrip {
        zeta2_continued_estimate(s1, s2, a)?
    } else {
        let r = gamma2_phi2_quad(s1, s2, a, z1, z2, PHI2_ORDER, &QuadratureConfig::default())?;
        over_gammas(r, s1, s2)?
    };
    Ok((est, params.regime))
}
