use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{linear_grid, log_grid, open_grid, GridConfig, ScanReport, Violation};
use crate::dist::{DoubleDistSpec, SingleDistSpec};
use crate::error::{Error, Result};
use crate::numerics::{integrate_plane, integrate_realline_at, PlaneOrder, QuadratureConfig};
use crate::zeta::{cal_h, h_kernel, hurwitz_zeta, phi, phi2_estimate, zeta2_em};

/// Allowed excess of `|F(t)|` over 1.
pub const CF_BOUND_SLACK: f64 = 1e-9;
pub const FOURIER_TOL_1D: f64 = 1e-6;
pub const FOURIER_TOL_2D: f64 = 1e-5;

/// Exponents `k` of the probes `y = 10^{-k}` added to the kernel scans.
const PROBE_EXPONENTS: [f64; 13] = [2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0, 6.5, 7.0, 7.5, 8.0];

fn check_a(a: f64) -> Result<()> {
    if a > 0.0 && a <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("a = {a} is outside (0, 1]")))
    }
}

/// Shared bookkeeping of the two kernel sign scans.
///
/// For `a >= 1/2` every nonnegative value is a violation. For `a < 1/2` the
/// scan looks for a positive witness and reports a violation only when none
/// turns up.
struct SignScan {
    negative: bool,
    violations: Vec<Violation>,
    best: Option<Violation>,
}

impl SignScan {
    fn new(a: f64) -> Self {
        SignScan {
            negative: a >= 0.5,
            violations: Vec::new(),
            best: None,
        }
    }

    fn push(&mut self, input: Vec<f64>, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::NonFinite(format!("kernel value at {input:?}")));
        }
        if self.negative && value >= 0.0 {
            self.violations.push(Violation { input: input.clone(), value });
        }
        if self.best.as_ref().map_or(true, |b| value > b.value) {
            self.best = Some(Violation { input, value });
        }
        Ok(())
    }

    fn finish(self, claim_id: &str, grid: String) -> ScanReport {
        let best = self.best.expect("grid is nonempty");
        if self.negative {
            ScanReport::new(claim_id, grid, self.violations, -best.value)
                .with_note("a >= 1/2: negative everywhere expected".into())
        } else if best.value > 0.0 {
            ScanReport::new(claim_id, grid, Vec::new(), best.value)
                .with_witness(Some(best))
                .with_note("a < 1/2: positive witness expected".into())
        } else {
            let slack = best.value;
            ScanReport::new(claim_id, grid, vec![best], slack).with_note("a < 1/2: no positive witness found".into())
        }
    }
}

/// Sign of `H(a, x)` over `xs` plus the probes `x = 10^{-k}`, `k = 2..8`.
pub fn sign_scan_h(a: f64, xs: &[f64]) -> Result<ScanReport> {
    check_a(a)?;
    let mut scan = SignScan::new(a);
    for &x in xs {
        scan.push(vec![a, x], h_kernel(a, x)?)?;
    }
    for k in PROBE_EXPONENTS {
        let x = 10f64.powf(-k);
        scan.push(vec![a, x], h_kernel(a, x)?)?;
    }
    let grid = format!("a = {a}; {} x-points in [{}, {}] plus x = 10^-k, k = 2..8", xs.len(), min(xs), max(xs));
    Ok(scan.finish("lemma-negdefi", grid))
}

/// Sign of `cal_h(a; x, y)` over `xs x ys` plus the points `(N y, y)` with
/// `N = floor(y^{-1/2})` and `y = 10^{-k}`, `k = 2..8`.
pub fn sign_scan_calh(a: f64, xs: &[f64], ys: &[f64]) -> Result<ScanReport> {
    check_a(a)?;
    let mut scan = SignScan::new(a);
    for &x in xs {
        for &y in ys {
            scan.push(vec![a, x, y], cal_h(a, x, y)?)?;
        }
    }
    for k in PROBE_EXPONENTS {
        let y = 10f64.powf(-k);
        let n = (1.0 / y.sqrt()).floor();
        let x = n * y;
        scan.push(vec![a, x, y], cal_h(a, x, y)?)?;
    }
    let grid = format!(
        "a = {a}; {}x{} (x, y)-points in [{}, {}]x[{}, {}] plus (N y, y), N = floor(y^-1/2), y = 10^-k, k = 2..8",
        xs.len(),
        ys.len(),
        min(xs),
        max(xs),
        min(ys),
        max(ys)
    );
    Ok(scan.finish("lemma-negdefi2", grid))
}

fn min(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

fn max(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Strict-sign claims checked by [`positivity_scan`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PositivityKind {
    /// `Phi(sigma, a, z) > 0` for `sigma > 0`, `z in [-1, 1) \ {0}`.
    /// Points are `[sigma, a, z]`.
    Phi,
    /// `Phi2(sigma1, sigma2, a, z1, z2) > 0` in each of the four cases of
    /// its integral representation. Points are `[sigma1, sigma2, a, z1, z2]`.
    Phi2,
    /// `zeta(sigma, a) < 0` for `0 < sigma < 1`, `a >= 1/2`.
    /// Points are `[sigma, a]`.
    HurwitzNeg,
    /// `zeta2(sigma1, sigma2; a) < 0` for `0 < sigma1 < 1`, `sigma2 > 1`,
    /// `1 < sigma1 + sigma2 < 2`, `a >= 1/2`. Points are `[sigma1, sigma2, a]`.
    Zeta2Neg,
}

impl PositivityKind {
    pub fn claim_id(self) -> &'static str {
        match self {
            PositivityKind::Phi => "lemma-phi1posi",
            PositivityKind::Phi2 => "lemma-posi",
            PositivityKind::HurwitzNeg => "lemma-huzero",
            PositivityKind::Zeta2Neg => "lemma-huezneg",
        }
    }

    fn arity(self) -> usize {
        match self {
            PositivityKind::Phi => 3,
            PositivityKind::Phi2 => 5,
            PositivityKind::HurwitzNeg => 2,
            PositivityKind::Zeta2Neg => 3,
        }
    }

    /// Whether `p` satisfies the hypotheses of the claim.
    fn admits(self, p: &[f64]) -> bool {
        let z_ok = |z: f64| z != 0.0 && (-1.0..1.0).contains(&z);
        let a_ok = |a: f64| a > 0.0 && a <= 1.0;
        match self {
            PositivityKind::Phi => p[0] > 0.0 && a_ok(p[1]) && z_ok(p[2]),
            PositivityKind::Phi2 => {
                let (s1, s2, a, z1, z2) = (p[0], p[1], p[2], p[3], p[4]);
                a_ok(a)
                    && match (z1 == 1.0, z2 == 1.0) {
                        (true, true) => s1 > 0.0 && s2 > 1.0 && s1 + s2 > 2.0,
                        (true, false) => z_ok(z2) && s1 > 1.0 && s2 > 0.0,
                        (false, true) => z_ok(z1) && s1 > 0.0 && s2 > 1.0,
                        (false, false) => z_ok(z1) && z_ok(z2) && s1 > 0.0 && s2 > 0.0,
                    }
            }
            PositivityKind::HurwitzNeg => p[0] > 0.0 && p[0] < 1.0 && p[1] >= 0.5 && p[1] <= 1.0,
            PositivityKind::Zeta2Neg => {
                let (s1, s2, a) = (p[0], p[1], p[2]);
                s1 > 0.0 && s1 < 1.0 && s2 > 1.0 && s1 + s2 > 1.0 && s1 + s2 < 2.0 && a >= 0.5 && a <= 1.0
            }
        }
    }

    /// Signed margin: positive when the claim holds at `p`.
    fn margin(self, p: &[f64]) -> Result<f64> {
        let r = |x: f64| Complex64::new(x, 0.0);
        let v = match self {
            PositivityKind::Phi => phi(r(p[0]), p[1], p[2])?.re,
            PositivityKind::Phi2 => phi2_estimate(r(p[0]), r(p[1]), p[2], p[3], p[4])?.0.value.re,
            PositivityKind::HurwitzNeg => -hurwitz_zeta(r(p[0]), p[1])?.re,
            // the strip quadrature slows down badly as sigma2 -> 1 (its tail
            // decays like e^{(sigma2 - 1) theta}); the series continuation does not
            PositivityKind::Zeta2Neg => -zeta2_em(r(p[0]), r(p[1]), p[2])?.re,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(format!("{} at {p:?}", self.claim_id())))
        }
    }
}

/// Strict-sign scan of `kind` over `points`.
pub fn positivity_scan(kind: PositivityKind, points: &[Vec<f64>]) -> Result<ScanReport> {
    if points.is_empty() {
        return Err(Error::domain("empty grid"));
    }
    let mut violations = Vec::new();
    let mut slack = f64::INFINITY;
    for p in points {
        if p.len() != kind.arity() || !kind.admits(p) {
            return Err(Error::domain(format!("{p:?} is outside the hypotheses of {}", kind.claim_id())));
        }
        let m = kind.margin(p)?;
        if m <= 0.0 {
            violations.push(Violation { input: p.clone(), value: m });
        }
        slack = slack.min(m);
    }
    let grid = format!("{} points of {:?}", points.len(), kind);
    Ok(ScanReport::new(kind.claim_id(), grid, violations, slack))
}

/// The default parameter grid for `kind`.
pub fn default_positivity_points(kind: PositivityKind, grid: &GridConfig) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    match kind {
        PositivityKind::Phi => {
            for s in log_grid(0.05, 8.0, 10) {
                for a in [0.1, 0.3, 0.5, 0.75, 1.0] {
                    for z in [-1.0, -0.5, -0.1, 0.1, 0.5, 0.9] {
                        out.push(vec![s, a, z]);
                    }
                }
            }
        }
        PositivityKind::Phi2 => {
            let small = [0.3, 0.8, 1.5];
            let big = [1.2, 2.0, 3.0];
            let zs = [-1.0, 0.5];
            for a in [0.3, 1.0] {
                for s1 in [0.3, 1.0, 2.0] {
                    for s2 in [1.8, 2.5, 4.0] {
                        out.push(vec![s1, s2, a, 1.0, 1.0]);
                    }
                }
                for z in zs {
                    for s1 in big {
                        for s2 in small {
                            out.push(vec![s1, s2, a, 1.0, z]);
                        }
                    }
                    for s1 in small {
                        for s2 in big {
                            out.push(vec![s1, s2, a, z, 1.0]);
                        }
                    }
                }
                for z1 in zs {
                    for z2 in zs {
                        for s1 in small {
                            for s2 in small {
                                out.push(vec![s1, s2, a, z1, z2]);
                            }
                        }
                    }
                }
            }
        }
        PositivityKind::HurwitzNeg => {
            for s in open_grid(0.0, 1.0, grid.sigma_margin, grid.sigma_points) {
                for a in [0.5, 0.6, 0.75, 0.9, 1.0] {
                    out.push(vec![s, a]);
                }
            }
        }
        PositivityKind::Zeta2Neg => {
            let m = grid.sigma_margin;
            for s1 in open_grid(0.0, 1.0, 0.01, grid.sigma_points / 2) {
                for f in [0.0, 0.25, 0.5, 0.75, 1.0] {
                    let s2 = 1.0 + m + f * (1.0 - s1 - 2.0 * m);
                    for a in [0.5, 0.75, 1.0] {
                        out.push(vec![s1, s2, a]);
                    }
                }
            }
        }
    }
    out
}

/// `max |F(t)| <= 1 + CF_BOUND_SLACK` over `ts`.
pub fn cf_bound_scan(spec: &SingleDistSpec, ts: &[f64]) -> Result<ScanReport> {
    let mut violations = Vec::new();
    let mut top: f64 = 0.0;
    for &t in ts {
        let m = spec.cf(t)?.norm();
        if m > 1.0 + CF_BOUND_SLACK {
            violations.push(Violation { input: vec![t], value: m });
        }
        top = top.max(m);
    }
    let grid = format!(
        "(sigma, a, z) = ({}, {}, {}); {} t-points in [{}, {}]",
        spec.sigma(),
        spec.a(),
        spec.z(),
        ts.len(),
        min(ts),
        max(ts)
    );
    Ok(ScanReport::new("cor-bound", grid, violations, 1.0 + CF_BOUND_SLACK - top))
}

/// `max |F(t1, t2)| <= 1 + CF_BOUND_SLACK` over `ts`.
pub fn cf_bound_scan2(spec: &DoubleDistSpec, ts: &[(f64, f64)]) -> Result<ScanReport> {
    let mut violations = Vec::new();
    let mut top: f64 = 0.0;
    for &(t1, t2) in ts {
        let m = spec.cf2(t1, t2)?.norm();
        if m > 1.0 + CF_BOUND_SLACK {
            violations.push(Violation { input: vec![t1, t2], value: m });
        }
        top = top.max(m);
    }
    let grid = format!("{}; {} (t1, t2)-points", describe2(spec), ts.len());
    Ok(ScanReport::new("cor-bound2", grid, violations, 1.0 + CF_BOUND_SLACK - top))
}

fn describe2(spec: &DoubleDistSpec) -> String {
    format!(
        "(sigma1, sigma2, a, z1, z2) = ({}, {}, {}, {}, {})",
        spec.sigma1(),
        spec.sigma2(),
        spec.a(),
        spec.z1(),
        spec.z2()
    )
}

/// Compare the quadrature Fourier transform of the density with `cf`.
pub fn fourier_check(spec: &SingleDistSpec, ts: &[f64]) -> Result<ScanReport> {
    let cfg = QuadratureConfig::default();
    let mut violations = Vec::new();
    let mut worst: f64 = 0.0;
    for &t in ts {
        let ft = integrate_realline_at(|y| Complex64::new(0.0, t * y).exp() * spec.density(y), spec.center(), &cfg)?;
        let err = (ft.value - spec.cf(t)?).norm();
        if !(err < FOURIER_TOL_1D) {
            violations.push(Violation { input: vec![t], value: err });
        }
        worst = worst.max(err);
    }
    let grid = format!("(sigma, a, z) = ({}, {}, {}); t in {ts:?}", spec.sigma(), spec.a(), spec.z());
    Ok(ScanReport::new("cf-fourier", grid, violations, FOURIER_TOL_1D - worst))
}

/// Two-dimensional version of [`fourier_check`].
pub fn fourier_check2(spec: &DoubleDistSpec, ts: &[(f64, f64)]) -> Result<ScanReport> {
    let cfg = QuadratureConfig::default();
    let centers = (spec.eta_center(), spec.theta_center());
    let mut violations = Vec::new();
    let mut worst: f64 = 0.0;
    for &(t1, t2) in ts {
        let ft = integrate_plane(
            |e, th| Complex64::new(0.0, t1 * e + t2 * th).exp() * spec.density2(e, th),
            centers,
            PlaneOrder::InnerFirst,
            &cfg,
        )?;
        let err = (ft.value - spec.cf2(t1, t2)?).norm();
        if !(err < FOURIER_TOL_2D) {
            violations.push(Violation { input: vec![t1, t2], value: err });
        }
        worst = worst.max(err);
    }
    let grid = format!("{}; t in {ts:?}", describe2(spec));
    Ok(ScanReport::new("cf-fourier2", grid, violations, FOURIER_TOL_2D - worst))
}

/// The symmetric one-dimensional t-grid of `grid`.
pub(crate) fn t_grid(grid: &GridConfig) -> Vec<f64> {
    linear_grid(-grid.t_max, grid.t_max, grid.t_step)
}

/// The square two-dimensional t-grid of `grid`.
pub(crate) fn t_grid2(grid: &GridConfig) -> Vec<(f64, f64)> {
    let axis = linear_grid(-grid.t2_max, grid.t2_max, grid.t2_step);
    let mut out = Vec::with_capacity(axis.len() * axis.len());
    for &t1 in &axis {
        for &t2 in &axis {
            out.push((t1, t2));
        }
    }
    out
}
