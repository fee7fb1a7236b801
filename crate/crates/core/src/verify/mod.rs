//! Grid scans of the sign, positivity and bound properties behind the
//! distributions, and two exploratory searches.
//!
//! Every scan returns a [`ScanReport`]. Reports are deterministic in their
//! inputs and serialize to JSON.

mod claims;
mod rasa;
mod scans;
mod search;

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use serde::{Deserialize, Serialize};

pub use claims::{claim_ids, run_all, run_claim, ClaimOptions, CLAIMS};
pub use rasa::{rasa_bound, RasaConstants};
pub use scans::{
    cf_bound_scan, cf_bound_scan2, default_positivity_points, fourier_check, fourier_check2, positivity_scan,
    sign_scan_calh, sign_scan_h, PositivityKind, CF_BOUND_SLACK, FOURIER_TOL_1D, FOURIER_TOL_2D,
};
pub use search::{exceedance_search, real_zero_search};

/// One grid point and the value found there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub input: Vec<f64>,
    pub value: f64,
}

/// Outcome of one scan.
///
/// `max_slack` is the margin at the tightest grid point: positive when the
/// claim holds everywhere with room to spare, negative when it fails
/// somewhere. For witness searches it is the best value found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub claim_id: String,
    pub grid: String,
    pub violations: Vec<Violation>,
    pub max_slack: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Violation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ScanReport {
    pub(crate) fn new(claim_id: &str, grid: String, mut violations: Vec<Violation>, max_slack: f64) -> Self {
        violations.sort_by(|x, y| cmp_inputs(&x.input, &y.input));
        ScanReport {
            claim_id: claim_id.into(),
            grid,
            passed: violations.is_empty(),
            violations,
            max_slack,
            witness: None,
            note: None,
        }
    }

    pub(crate) fn with_witness(mut self, witness: Option<Violation>) -> Self {
        self.witness = witness;
        self
    }

    pub(crate) fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

fn cmp_inputs(x: &[f64], y: &[f64]) -> Ordering {
    for (u, v) in x.iter().zip(y) {
        match u.total_cmp(v) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    x.len().cmp(&y.len())
}

/// Default grids used by the claim catalog.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GridConfig {
    /// Range of the log-spaced `x` (and `y`) grids.
    pub x_lo: f64,
    pub x_hi: f64,
    pub x_points: usize,
    /// Points per axis of the two-variable kernel grid.
    pub xy_points: usize,
    /// Distance kept from the edges of open sigma intervals.
    pub sigma_margin: f64,
    pub sigma_points: usize,
    /// One-dimensional t-grid `[-t_max, t_max]`.
    pub t_max: f64,
    pub t_step: f64,
    /// Per-axis t-grid for two-dimensional scans.
    pub t2_max: f64,
    pub t2_step: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            x_lo: 1e-4,
            x_hi: 50.0,
            x_points: 241,
            xy_points: 61,
            sigma_margin: 1e-3,
            sigma_points: 20,
            t_max: 20.0,
            t_step: 0.25,
            t2_max: 8.0,
            t2_step: 1.0,
        }
    }
}

/// `n` points spaced evenly in log between `lo` and `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return alloc::vec![lo];
    }
    let (l, h) = (lo.ln(), hi.ln());
    (0..n).map(|i| (l + (h - l) * i as f64 / (n - 1) as f64).exp()).collect()
}

/// `lo, lo + step, ...` up to `hi`, computed by index to avoid drift.
pub fn linear_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| lo + step * i as f64).collect()
}

/// `n` points evenly spaced in the open interval `(lo, hi)`, kept `margin`
/// away from the ends.
pub fn open_grid(lo: f64, hi: f64, margin: f64, n: usize) -> Vec<f64> {
    let (l, h) = (lo + margin, hi - margin);
    if n < 2 {
        return alloc::vec![0.5 * (l + h)];
    }
    (0..n).map(|i| l + (h - l) * i as f64 / (n - 1) as f64).collect()
}
