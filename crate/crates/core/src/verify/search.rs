use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{open_grid, ScanReport, Violation};
use crate::error::{Error, Result};
use crate::zeta::{hurwitz_zeta, zeta2_em};

const ZERO_SAMPLES: usize = 200;
const ZERO_TOL: f64 = 1e-12;

/// Scan `t = step, 2 step, ..., t_max` for `|zeta(sigma + it, a)| > |zeta(sigma, a)|`.
///
/// This is a report, not a test: `passed` is always true. The witness is the
/// first exceedance, `max_slack` the best ratio seen.
pub fn exceedance_search(sigma: f64, a: f64, t_max: f64, step: f64) -> Result<ScanReport> {
    if !(0.5..1.0).contains(&sigma) {
        return Err(Error::domain(format!("sigma = {sigma} is outside [1/2, 1)")));
    }
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::domain(format!("a = {a} is outside (0, 1]")));
    }
    if !(step > 0.0 && t_max >= step && t_max.is_finite()) {
        return Err(Error::domain(format!("need 0 < step <= t_max, got step = {step}, t_max = {t_max}")));
    }
    let base = hurwitz_zeta(Complex64::new(sigma, 0.0), a)?.norm();
    if !(base > 0.0) {
        return Err(Error::domain(format!("zeta({sigma}, {a}) vanishes")));
    }
    let n = (t_max / step + 1e-9).floor() as usize;
    let mut best = (0.0, 0.0);
    let mut first = None;
    for k in 1..=n {
        let t = step * k as f64;
        let r = hurwitz_zeta(Complex64::new(sigma, t), a)?.norm() / base;
        if r > best.1 {
            best = (t, r);
        }
        if first.is_none() && r > 1.0 {
            first = Some(Violation { input: vec![sigma, a, t], value: r });
        }
    }
    let note = match &first {
        Some(w) => format!("first exceedance at t = {}; best ratio {} at t = {}", w.input[2], best.1, best.0),
        None => format!("no exceedance up to t = {t_max}; best ratio {} at t = {}", best.1, best.0),
    };
    let grid = format!("sigma = {sigma}, a = {a}; t = {step}, {}, ..., {}", 2.0 * step, step * n as f64);
    Ok(ScanReport::new("exceedance", grid, Vec::new(), best.1).with_witness(first).with_note(note))
}

fn diagonal(sigma: f64, a: f64) -> Result<f64> {
    let s = Complex64::new(sigma, 0.0);
    Ok(zeta2_em(s, s, a)?.re)
}

/// Look for a real zero of `sigma -> zeta2(sigma, sigma; a)` in
/// `(sigma_lo, sigma_hi)`: sign changes on a uniform grid, then bisection
/// well below `1e-8`.
///
/// The witness, when present, is `[a, sigma0]` with the value there.
/// `max_slack` is the number of sign changes seen on the grid.
pub fn real_zero_search(a: f64, sigma_lo: f64, sigma_hi: f64) -> Result<ScanReport> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::domain(format!("a = {a} is outside (0, 1]")));
    }
    if !(sigma_lo >= 0.5 && sigma_lo < sigma_hi && sigma_hi <= 1.0) {
        return Err(Error::domain(format!("need 1/2 <= sigma_lo < sigma_hi <= 1, got ({sigma_lo}, {sigma_hi})")));
    }
    let grid = open_grid(sigma_lo, sigma_hi, 1e-3, ZERO_SAMPLES);
    let values = grid.iter().map(|&s| diagonal(s, a)).collect::<Result<Vec<_>>>()?;
    let changes: Vec<usize> = (1..grid.len()).filter(|&i| (values[i - 1] < 0.0) != (values[i] < 0.0)).collect();
    let desc = format!("a = {a}; {} sigma-points in [{}, {}]", grid.len(), grid[0], grid[grid.len() - 1]);
    let Some(&i) = changes.first() else {
        return Ok(ScanReport::new("real-zero", desc, Vec::new(), 0.0).with_note("no sign change found".into()));
    };
    let (mut lo, mut hi) = (grid[i - 1], grid[i]);
    let (mut flo, fhi) = (values[i - 1], values[i]);
    let scale = flo.abs().max(fhi.abs());
    while hi - lo > ZERO_TOL {
        let mid = 0.5 * (lo + hi);
        let fm = diagonal(mid, a)?;
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    let value = diagonal(root, a)?;
    let note = format!(
        "sign change bracketed in [{}, {}]; |value| / bracket scale = {:e}",
        grid[i - 1],
        grid[i],
        value.abs() / scale
    );
    Ok(ScanReport::new("real-zero", desc, Vec::new(), changes.len() as f64)
        .with_witness(Some(Violation { input: vec![a, root], value }))
        .with_note(note))
}
