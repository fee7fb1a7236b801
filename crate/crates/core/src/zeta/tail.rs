//! Series evaluation with controlled tails: Euler-Maclaurin for the
//! Hurwitz zeta function, the large-shift expansion of the Lerch sum on
//! the unit circle, and geometric truncation inside the disc.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::special::bernoulli;

/// A series value with an estimate (or bound) of the truncation error.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Series {
    pub value: Complex64,
    pub err: f64,
}

const EM_TERMS: usize = 14;
const TARGET: f64 = 1e-16;
const MAX_DIRECT: usize = 20_000_000;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[inline]
fn pow_neg(b: f64, s: Complex64) -> Complex64 {
    (-s * b.ln()).exp()
}

/// zeta(s, b) = sum_{k>=0} (k+b)^{-s} for b > 0 and s != 1, continued to
/// Re s > 1 - 2 EM_TERMS. The error is a rigorous bound on the remainder.
pub(crate) fn hurwitz_em(s: Complex64, b: f64) -> Result<Series> {
    if (s - 1.0).norm() < 1e-8 {
        return Err(Error::Pole("zeta(s, a) has a pole at s = 1".into()));
    }
    let sigma = s.re;
    let p = sigma + 2.0 * EM_TERMS as f64 - 1.0;
    if p <= 0.0 {
        return Err(Error::region("real part too negative for the Euler-Maclaurin tail"));
    }
    // |(s)_2M|
    let mut poch = 1.0;
    for k in 0..2 * EM_TERMS {
        poch *= (s + k as f64).norm();
    }
    let two_pi_pow = (2.0 * PI).powi(2 * EM_TERMS as i32);

    let mut n = (0.6 * (s.norm() + 2.0 * EM_TERMS as f64)).ceil() as usize + 4;
    let mut direct = c(0.0);
    let mut done = 0usize;
    loop {
        for k in done..n {
            direct += pow_neg(k as f64 + b, s);
        }
        done = n;
        let w = n as f64 + b;
        let lw = w.ln();
        let w_s = (-s * lw).exp();
        let mut v = direct + w_s * w / (s - 1.0) + w_s * 0.5;
        // B_2j/(2j)! (s)_{2j-1} w^{-s-2j+1}
        let mut poch_c = s;
        let mut fact = 2.0;
        let mut wp = w_s / w;
        let w2 = w * w;
        for j in 1..=EM_TERMS {
            v += poch_c * wp * (bernoulli(2 * j) / fact);
            poch_c *= (s + (2 * j - 1) as f64) * (s + (2 * j) as f64);
            fact *= ((2 * j + 1) * (2 * j + 2)) as f64;
            wp /= w2;
        }
        let err = 4.0 * poch / two_pi_pow * (-(p - 1.0) * lw).exp() / p;
        if err <= TARGET * v.norm() || n > MAX_DIRECT / 2 {
            return Ok(Series { value: v, err });
        }
        n *= 2;
    }
}

/// Li_{-k}(z) = sum_{n>=0} n^k z^n (Abel sum), z != 1, for k = 0..=kmax.
pub(crate) fn neg_polylogs(z: Complex64, kmax: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(kmax + 1);
    if z == c(-1.0) {
        for k in 0..=kmax {
            // Li_{-k}(-1) = -(2^{k+1} - 1) B_{k+1} / (k+1)
            let v = -(2f64.powi(k as i32 + 1) - 1.0) * bernoulli(k + 1) / (k + 1) as f64;
            out.push(c(v));
        }
        return out;
    }
    // Eulerian-type polynomials: Li_{-k} = P_k / (1-z)^{k+1}, exact for small k.
    const POLY_MAX: usize = 11;
    let one_minus = 1.0 - z;
    let mut poly: Vec<f64> = alloc::vec![1.0]; // coefficients of P_k
    let mut denom = one_minus;
    for k in 0..=kmax.min(POLY_MAX) {
        if k > 0 {
            // P_k = z [ (1 - z) P' + k P ]
            let m = poly.len();
            let mut next = alloc::vec![0.0; m + 1];
            for (i, &ci) in poly.iter().enumerate() {
                // (1 - z) * i ci z^{i-1} + k ci z^i, then times z
                if i > 0 {
                    next[i] += i as f64 * ci;
                }
                next[i + 1] -= i as f64 * ci;
                next[i + 1] += k as f64 * ci;
            }
            poly = next;
            denom *= one_minus;
        }
        let mut acc = c(0.0);
        for &ci in poly.iter().rev() {
            acc = acc * z + ci;
        }
        out.push(acc / denom);
    }
    if kmax > POLY_MAX {
        // Li_{-k}(z) = k! sum_j (2 pi i j - Log z)^{-k-1}, k >= 1
        let lz = z.ln();
        let mut fact = 1.0;
        for k in 1..=POLY_MAX {
            fact *= k as f64;
        }
        for k in POLY_MAX + 1..=kmax {
            fact *= k as f64;
            let e = -(k as i32) - 1;
            let mut acc = c(0.0);
            for j in (1..=60).rev() {
                let jj = Complex64::new(0.0, 2.0 * PI * j as f64);
                acc += (jj - lz).powi(e) + (-jj - lz).powi(e);
            }
            acc += (-lz).powi(e);
            out.push(acc * fact);
        }
    }
    out
}

const EXP_TERMS: usize = 40;

/// sum_{n>=0} z^n (n+b)^{-s} for |z| = 1, z != 1: direct terms, then the
/// expansion z^N sum_k binom(-s, k) Li_{-k}(z) (N+b)^{-s-k}.
fn lerch_circle(s: Complex64, b: f64, z: Complex64) -> Result<Series> {
    let lz = z.ln().norm();
    let n = ((4.0 * (s.norm() + EXP_TERMS as f64) / lz).ceil() as usize).max(32);
    if n > MAX_DIRECT {
        return Err(Error::region("z too close to 1 for the Lerch expansion"));
    }
    let mut direct = c(0.0);
    let mut zp = c(1.0);
    for k in 0..n {
        direct += zp * pow_neg(k as f64 + b, s);
        zp *= z;
    }
    let w = n as f64 + b;
    let li = neg_polylogs(z, EXP_TERMS);
    let mut coef = c(1.0); // binom(-s, k)
    let mut wp = pow_neg(w, s);
    let mut tail = c(0.0);
    let mut last = f64::INFINITY;
    let mut prev = f64::INFINITY;
    for (k, l) in li.iter().enumerate() {
        let term = coef * *l * wp;
        tail += term;
        // Li_{-k}(-1) vanishes for even k, so look at two terms at once
        let size = term.norm();
        last = size.max(prev);
        prev = size;
        if last <= 1e-18 * (tail.norm() + direct.norm()) {
            break;
        }
        coef *= -(s + k as f64) / (k + 1) as f64;
        wp /= w;
    }
    Ok(Series {
        value: direct + zp * tail,
        err: last,
    })
}

/// Direct summation for |z| < 1 with the geometric bound
/// |tail| <= |z|^N (N+b)^{-sigma} / (1 - |z|), valid for sigma >= 0.
fn lerch_disc(s: Complex64, b: f64, z: Complex64) -> Result<Series> {
    let r = z.norm();
    let mut acc = c(0.0);
    let mut zp = c(1.0);
    let mut rp = 1.0;
    let sigma = s.re.max(0.0);
    for k in 0..MAX_DIRECT {
        let term = zp * pow_neg(k as f64 + b, s);
        acc += term;
        zp *= z;
        rp *= r;
        let bound = rp * (k as f64 + 1.0 + b).powf(-sigma) / (1.0 - r);
        if bound <= TARGET * acc.norm() || rp == 0.0 {
            return Ok(Series { value: acc, err: bound });
        }
    }
    Err(Error::NonConvergence {
        axis: None,
        nodes: MAX_DIRECT,
        err_estimate: rp / (1.0 - r),
    })
}

/// sum_{n>=0} z^n (n+b)^{-s} for b > 0 and 0 < |z| <= 1.
///
/// For |z| = 1 the value is the analytic continuation in `s`.
/// For |z| < 1 the caller must ensure Re s >= 0 for the bound to hold.
pub(crate) fn lerch_sum(s: Complex64, b: f64, z: Complex64) -> Result<Series> {
    let r = z.norm();
    if z == c(1.0) {
        hurwitz_em(s, b)
    } else if (r - 1.0).abs() <= 1e-15 {
        lerch_circle(s, b, z / r)
    } else if r < 1.0 {
        lerch_disc(s, b, z)
    } else {
        Err(Error::region("|z| > 1"))
    }
}
