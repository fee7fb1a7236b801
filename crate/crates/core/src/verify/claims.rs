use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::scans::{t_grid, t_grid2};
use super::{
    cf_bound_scan, cf_bound_scan2, default_positivity_points, exceedance_search, fourier_check, fourier_check2,
    log_grid, positivity_scan, real_zero_search, sign_scan_calh, sign_scan_h, GridConfig, PositivityKind,
    ScanReport, Violation,
};
use crate::dist::{classify_double, classify_single, validate_double, validate_single};
use crate::error::{Error, Result};

/// An entry of the claim catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Claim {
    pub id: &'static str,
    pub summary: &'static str,
    /// Part of `run_all`; the exploratory searches are not.
    pub in_suite: bool,
}

pub const CLAIMS: &[Claim] = &[
    Claim { id: "lemma-negdefi", summary: "H(a, x) < 0 for all x > 0 iff a >= 1/2", in_suite: true },
    Claim { id: "lemma-negdefi2", summary: "cal_h(a; x, y) < 0 for all x, y > 0 iff a >= 1/2", in_suite: true },
    Claim { id: "lemma-huzero", summary: "zeta(sigma, a) < 0 for 0 < sigma < 1 when a >= 1/2", in_suite: true },
    Claim { id: "lemma-phi1posi", summary: "Phi(sigma, a, z) > 0 for sigma > 0, z in [-1, 1)", in_suite: true },
    Claim { id: "lemma-posi", summary: "Phi2(sigma1, sigma2, a, z1, z2) > 0 in all four cases", in_suite: true },
    Claim { id: "lemma-huezneg", summary: "zeta2(sigma1, sigma2; a) < 0 on the strip when a >= 1/2", in_suite: true },
    Claim { id: "cor-bound", summary: "|F(t)| <= 1 for one-dimensional specs", in_suite: true },
    Claim { id: "cor-bound2", summary: "|F(t1, t2)| <= 1 for two-dimensional specs", in_suite: true },
    Claim { id: "cf-fourier", summary: "Fourier transform of the density equals F", in_suite: true },
    Claim { id: "cf-fourier2", summary: "Fourier transform of the 2D density equals F", in_suite: true },
    Claim { id: "iff-single", summary: "one-dimensional admissible region", in_suite: true },
    Claim { id: "iff-double", summary: "two-dimensional admissible region", in_suite: true },
    Claim { id: "exceedance", summary: "search t with |zeta(sigma + it, a)| > |zeta(sigma, a)|", in_suite: false },
    Claim { id: "real-zero", summary: "search a real zero of zeta2(sigma, sigma; a)", in_suite: false },
];

pub fn claim_ids() -> impl Iterator<Item = &'static str> {
    CLAIMS.iter().map(|c| c.id)
}

/// Parameter overrides for a claim run. Unset fields fall back to the
/// claim's default parameter sets.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ClaimOptions {
    pub a: Option<f64>,
    pub sigma: Option<f64>,
    pub sigma1: Option<f64>,
    pub sigma2: Option<f64>,
    pub z: Option<f64>,
    pub z1: Option<f64>,
    pub z2: Option<f64>,
    /// Upper end of the exceedance search.
    pub t_max: Option<f64>,
    pub grid: GridConfig,
}

impl ClaimOptions {
    fn a_or(&self, default: &[f64]) -> Vec<f64> {
        self.a.map_or_else(|| default.to_vec(), |a| vec![a])
    }

    fn single_specs(&self) -> Vec<(f64, f64, f64)> {
        if self.sigma.is_none() && self.a.is_none() && self.z.is_none() {
            return vec![(2.0, 1.0, 1.0), (0.7, 0.5, 1.0), (0.8, 0.75, 1.0), (0.5, 1.0, -1.0), (1.5, 0.3, 0.5), (0.3, 0.6, -0.5)];
        }
        vec![(self.sigma.unwrap_or(2.0), self.a.unwrap_or(1.0), self.z.unwrap_or(1.0))]
    }

    fn double_specs(&self) -> Vec<(f64, f64, f64, f64, f64)> {
        let o = [self.sigma1, self.sigma2, self.a, self.z1, self.z2];
        if o.iter().all(Option::is_none) {
            return vec![
                (2.0, 2.0, 1.0, 1.0, 1.0),
                (0.5, 1.3, 0.5, 1.0, 1.0),
                (2.0, 0.5, 1.0, 1.0, -1.0),
                (0.5, 1.2, 1.0, -1.0, 1.0),
                (0.5, 0.5, 1.0, 0.5, -0.5),
            ];
        }
        vec![(
            self.sigma1.unwrap_or(2.0),
            self.sigma2.unwrap_or(2.0),
            self.a.unwrap_or(1.0),
            self.z1.unwrap_or(1.0),
            self.z2.unwrap_or(1.0),
        )]
    }

    /// Keep the default points that agree with the overrides.
    fn filter(&self, kind: PositivityKind) -> Vec<Vec<f64>> {
        let pts = default_positivity_points(kind, &self.grid);
        let keys: Vec<(usize, Option<f64>)> = match kind {
            PositivityKind::Phi => vec![(0, self.sigma), (1, self.a), (2, self.z)],
            PositivityKind::Phi2 => vec![(0, self.sigma1), (1, self.sigma2), (2, self.a), (3, self.z1), (4, self.z2)],
            PositivityKind::HurwitzNeg => vec![(0, self.sigma), (1, self.a)],
            PositivityKind::Zeta2Neg => vec![(0, self.sigma1), (1, self.sigma2), (2, self.a)],
        };
        if keys.iter().all(|(_, v)| v.is_none()) {
            return pts;
        }
        // a fully specified point replaces the grid
        if keys.iter().all(|(_, v)| v.is_some()) {
            return vec![keys.iter().map(|(_, v)| v.unwrap()).collect()];
        }
        let mut out = Vec::new();
        for p in pts {
            if keys.iter().all(|(i, v)| v.map_or(true, |v| p[*i] == v)) {
                out.push(p);
            }
        }
        if out.is_empty() {
            // replace matching coordinates instead of filtering them away
            let mut seen = Vec::new();
            for mut p in default_positivity_points(kind, &self.grid) {
                for (i, v) in &keys {
                    if let Some(v) = v {
                        p[*i] = *v;
                    }
                }
                if !seen.contains(&p) {
                    seen.push(p.clone());
                    out.push(p);
                }
            }
        }
        out
    }
}

/// Membership of the one-dimensional admissible region, written out
/// directly from the region's definition.
pub(crate) fn single_region(sigma: f64, a: f64, z: f64) -> bool {
    let finite = sigma.is_finite() && a.is_finite() && z.is_finite();
    finite && a > 0.0 && a <= 1.0 && sigma > 0.0 && z != 0.0 && z.abs() <= 1.0 && (z != 1.0 || sigma > 1.0 || (sigma < 1.0 && a >= 0.5))
}

/// Membership of the two-dimensional admissible region.
pub(crate) fn double_region(s1: f64, s2: f64, a: f64, z1: f64, z2: f64) -> bool {
    let finite = [s1, s2, a, z1, z2].iter().all(|v| v.is_finite());
    if !(finite && a > 0.0 && a <= 1.0 && s1 > 0.0 && s2 > 0.0) {
        return false;
    }
    let in_disc = |z: f64| z != 0.0 && z.abs() <= 1.0;
    let below_one = |z: f64| in_disc(z) && z != 1.0;
    if !(in_disc(z1) && in_disc(z2)) {
        return false;
    }
    (s2 > 1.0 && s1 + s2 > 2.0)
        || (z1 == 1.0 && z2 == 1.0 && s1 < 1.0 && s2 > 1.0 && s1 + s2 > 1.0 && s1 + s2 < 2.0 && a >= 0.5)
        || (z1 == 1.0 && below_one(z2) && s1 > 1.0)
        || (below_one(z1) && z2 == 1.0 && s2 > 1.0)
        || (below_one(z1) && below_one(z2))
}

const GATE_SIGMAS: [f64; 12] = [f64::NAN, -0.5, 0.0, 0.3, 0.5, 0.999, 1.0, 1.001, 1.5, 2.0, 2.5, f64::INFINITY];
const GATE_AS: [f64; 8] = [-0.1, 0.0, 0.2, 0.49, 0.5, 0.7, 1.0, 1.2];
const GATE_ZS: [f64; 9] = [-1.5, -1.0, -0.5, 0.0, 0.5, 0.999, 1.0, 1.2, f64::NAN];

fn gate_single() -> ScanReport {
    let mut violations = Vec::new();
    let mut n = 0;
    for s in GATE_SIGMAS {
        for a in GATE_AS {
            for z in GATE_ZS {
                n += 1;
                let got = classify_single(s, a, z).is_ok();
                if got != single_region(s, a, z) {
                    violations.push(Violation { input: vec![s, a, z], value: got as u8 as f64 });
                }
            }
        }
    }
    let slack = if violations.is_empty() { 0.0 } else { -(violations.len() as f64) };
    ScanReport::new("iff-single", format!("{n} (sigma, a, z) tuples"), violations, slack)
}

fn gate_double() -> ScanReport {
    let sigmas = [0.0, 0.3, 0.5, 0.7, 1.0, 1.3, 1.5, 2.0, 2.5, f64::NAN];
    let as_ = [0.3, 0.5, 1.0, 1.2];
    let zs = [-1.0, 0.0, 0.5, 1.0, 1.5];
    let mut violations = Vec::new();
    let mut n = 0;
    for s1 in sigmas {
        for s2 in sigmas {
            for a in as_ {
                for z1 in zs {
                    for z2 in zs {
                        n += 1;
                        let got = classify_double(s1, s2, a, z1, z2).is_ok();
                        if got != double_region(s1, s2, a, z1, z2) {
                            violations.push(Violation { input: vec![s1, s2, a, z1, z2], value: got as u8 as f64 });
                        }
                    }
                }
            }
        }
    }
    let slack = if violations.is_empty() { 0.0 } else { -(violations.len() as f64) };
    ScanReport::new("iff-double", format!("{n} (sigma1, sigma2, a, z1, z2) tuples"), violations, slack)
}

const FOURIER_T: [f64; 13] = [0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 3.5, -3.5, 5.0, -5.0, 8.0, -8.0];
const FOURIER_T2: [(f64, f64); 9] = [
    (0.0, 0.0),
    (1.0, 0.0),
    (-1.0, 0.0),
    (0.0, 1.0),
    (0.0, -1.0),
    (1.0, 0.5),
    (-0.5, 1.0),
    (2.0, -1.0),
    (1.0, 1.0),
];

/// Run one claim of the catalog.
pub fn run_claim(id: &str, opts: &ClaimOptions) -> Result<Vec<ScanReport>> {
    let g = &opts.grid;
    match id {
        "lemma-negdefi" => {
            let xs = log_grid(g.x_lo, g.x_hi, g.x_points);
            opts.a_or(&[0.2, 0.3, 0.4, 0.5, 0.75, 1.0]).into_iter().map(|a| sign_scan_h(a, &xs)).collect()
        }
        "lemma-negdefi2" => {
            let xs = log_grid(g.x_lo, g.x_hi, g.xy_points);
            opts.a_or(&[0.2, 0.3, 0.4, 0.5, 0.75, 1.0]).into_iter().map(|a| sign_scan_calh(a, &xs, &xs)).collect()
        }
        "lemma-huzero" => Ok(vec![positivity_scan(PositivityKind::HurwitzNeg, &opts.filter(PositivityKind::HurwitzNeg))?]),
        "lemma-phi1posi" => Ok(vec![positivity_scan(PositivityKind::Phi, &opts.filter(PositivityKind::Phi))?]),
        "lemma-posi" => Ok(vec![positivity_scan(PositivityKind::Phi2, &opts.filter(PositivityKind::Phi2))?]),
        "lemma-huezneg" => Ok(vec![positivity_scan(PositivityKind::Zeta2Neg, &opts.filter(PositivityKind::Zeta2Neg))?]),
        "cor-bound" => {
            let ts = t_grid(g);
            opts.single_specs()
                .into_iter()
                .map(|(s, a, z)| cf_bound_scan(&validate_single(s, a, z)?, &ts))
                .collect()
        }
        "cor-bound2" => {
            let ts = t_grid2(g);
            opts.double_specs()
                .into_iter()
                .map(|(s1, s2, a, z1, z2)| cf_bound_scan2(&validate_double(s1, s2, a, z1, z2)?, &ts))
                .collect()
        }
        "cf-fourier" => opts
            .single_specs()
            .into_iter()
            .map(|(s, a, z)| fourier_check(&validate_single(s, a, z)?, &FOURIER_T))
            .collect(),
        "cf-fourier2" => opts
            .double_specs()
            .into_iter()
            .map(|(s1, s2, a, z1, z2)| fourier_check2(&validate_double(s1, s2, a, z1, z2)?, &FOURIER_T2))
            .collect(),
        "iff-single" => Ok(vec![gate_single()]),
        "iff-double" => Ok(vec![gate_double()]),
        "exceedance" => {
            let sigma = opts.sigma.unwrap_or(0.5);
            let t_max = opts.t_max.unwrap_or(100.0);
            opts.a_or(&[1.0]).into_iter().map(|a| exceedance_search(sigma, a, t_max, g.t_step)).collect()
        }
        "real-zero" => opts.a_or(&[0.2, 0.5]).into_iter().map(|a| real_zero_search(a, 0.5, 1.0)).collect(),
        other => Err(Error::domain(format!("unknown claim `{other}`"))),
    }
}

/// Every claim of the suite, in catalog order.
pub fn run_all(opts: &ClaimOptions) -> Result<Vec<ScanReport>> {
    let mut out = Vec::new();
    for c in CLAIMS.iter().filter(|c| c.in_suite) {
        out.extend(run_claim(c.id, opts)?);
    }
    Ok(out)
}
