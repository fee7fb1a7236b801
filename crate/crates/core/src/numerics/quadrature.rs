use alloc::collections::VecDeque;
use core::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ComplexValue;
use crate::error::{Axis, Error, Result};

/// Tolerances and budgets shared by every quadrature in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of integrand evaluations for one call.
    pub max_nodes: usize,
    /// Split point of `(0, inf)` for the half-line engine.
    pub domain_cut: f64,
    /// Largest `|t|` accepted by characteristic-function evaluations.
    pub t_cap: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-11,
            abs_tol: 1e-15,
            max_nodes: 1 << 24,
            domain_cut: 1.0,
            t_cap: 50.0,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol >= 10.0 * f64::EPSILON) || !self.rel_tol.is_finite() {
            return Err(Error::domain("rel_tol must be at least 10 machine epsilons"));
        }
        if !(self.abs_tol > 0.0) || !self.abs_tol.is_finite() {
            return Err(Error::domain("abs_tol must be positive"));
        }
        if self.max_nodes < 15 {
            return Err(Error::domain("max_nodes must be at least 15"));
        }
        if !(self.domain_cut > 0.0) || !self.domain_cut.is_finite() {
            return Err(Error::domain("domain_cut must be positive"));
        }
        if !(self.t_cap > 0.0) {
            return Err(Error::domain("t_cap must be positive"));
        }
        Ok(())
    }

    /// Same config with a different relative tolerance.
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: ComplexValue,
    pub err_estimate: f64,
    pub nodes_used: usize,
}

const H0: f64 = 0.5;
const WINDOW: i64 = 16;
const MAX_LEVEL: u32 = 14;
const Y_LIMIT: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tail {
    Negligible,
    Geometric,
}

pub(crate) struct Trapezoid {
    pub result: QuadratureResult,
    /// Node spacing of the final level.
    pub step: f64,
}

/// Adaptive trapezoid rule on the real line.
///
/// Walks outward from `center` in steps of 1/2 until the tails are
/// negligible or decay at a stable geometric rate (then the tail of the
/// trapezoid sum is added in closed form), and halves the step until two
/// levels agree.
pub(crate) fn trapezoid<F>(mut f: F, center: f64, cfg: &QuadratureConfig, budget: usize) -> Result<Trapezoid>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let budget = budget.min(cfg.max_nodes);
    let mut nodes = 0usize;
    let mut eval = |x: f64, nodes: &mut usize| -> Result<Complex64> {
        if *nodes >= budget {
            return Err(Error::NonConvergence {
                axis: None,
                nodes: *nodes,
                err_estimate: f64::INFINITY,
            });
        }
        *nodes += 1;
        let v = f(x)?;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(alloc::format!("integrand at {x}")))
        }
    };

    // Level-0 values, indexed by k - k_lo.
    let mut coarse: VecDeque<Complex64> = VecDeque::new();
    let mut base = Complex64::new(0.0, 0.0);
    let mut l1 = 0.0;
    for k in -WINDOW..=WINDOW {
        let v = eval(center + k as f64 * H0, &mut nodes)?;
        coarse.push_back(v);
        base += v;
        l1 += v.norm();
    }

    let mut tails = [Tail::Negligible; 2];
    let mut reach = [WINDOW; 2];
    for side in 0..2 {
        let dir = if side == 0 { 1i64 } else { -1 };
        let mut k = WINDOW;
        loop {
            let n = coarse.len();
            let (f2, f1, f0) = if side == 0 {
                (coarse[n - 3], coarse[n - 2], coarse[n - 1])
            } else {
                (coarse[2], coarse[1], coarse[0])
            };
            let tol_tail = (cfg.rel_tol * 1e-2 * l1 * H0).max(cfg.abs_tol * 1e-2);
            // Also stops tails near underflow, where ratios of successive
            // values are too coarse to test.
            if (f0.norm() + f1.norm()) * Y_LIMIT <= tol_tail {
                break;
            }
            if f1.norm() > 0.0 && f2.norm() > 0.0 {
                let q = f0 / f1;
                let qp = f1 / f2;
                let r = q.norm();
                if r < 1.0 && qp.norm() < 1.0 && H0 * f0.norm() * r / (1.0 - r) <= tol_tail {
                    break;
                }
                // Closed-form tail if the ratio has settled; its error grows
                // like drift / (1 - r)^2.
                let drift = (q - qp).norm();
                if r < 1.0 && drift <= 1e-6 * r {
                    let err = H0 * f0.norm() * 2.0 * (drift + 4.0 * f64::EPSILON) / ((1.0 - r) * (1.0 - r));
                    if err <= tol_tail {
                        tails[side] = Tail::Geometric;
                        break;
                    }
                }
            }
            k += 1;
            let x = center + (dir * k) as f64 * H0;
            if (x - center).abs() > Y_LIMIT {
                return Err(Error::NonConvergence {
                    axis: None,
                    nodes,
                    err_estimate: f0.norm() * Y_LIMIT,
                });
            }
            let v = eval(x, &mut nodes)?;
            if side == 0 {
                coarse.push_back(v);
            } else {
                coarse.push_front(v);
            }
            base += v;
            l1 += v.norm();
        }
        reach[side] = k;
    }
    let x_lo = center - reach[1] as f64 * H0;
    let n = coarse.len();
    let (f_lo, f_hi) = (coarse[0], coarse[n - 1]);

    // Trapezoid tails beyond the walked range at spacing h, from the end
    // values and their inner neighbours at that spacing.
    let tail_sum = |h: f64, inner_hi: Complex64, inner_lo: Complex64| {
        let mut t = Complex64::new(0.0, 0.0);
        if tails[0] == Tail::Geometric && inner_hi.norm() > 0.0 {
            let q = f_hi / inner_hi;
            t += f_hi * q / (1.0 - q) * h;
        }
        if tails[1] == Tail::Geometric && inner_lo.norm() > 0.0 {
            let q = f_lo / inner_lo;
            t += f_lo * q / (1.0 - q) * h;
        }
        t
    };

    let mut h = H0;
    let mut total = base * h + tail_sum(h, coarse[n - 2], coarse[1]);
    let mut last_diff = f64::INFINITY;
    let span = n - 1;
    for level in 1..=MAX_LEVEL {
        let count = span << (level - 1);
        if nodes + count > budget {
            return Err(Error::NonConvergence {
                axis: None,
                nodes,
                err_estimate: last_diff,
            });
        }
        h *= 0.5;
        let mut fresh = Complex64::new(0.0, 0.0);
        let mut near_hi = Complex64::new(0.0, 0.0);
        let mut near_lo = Complex64::new(0.0, 0.0);
        for j in 0..count {
            let x = x_lo + (2 * j + 1) as f64 * h;
            let v = eval(x, &mut nodes)?;
            if j == 0 {
                near_lo = v;
            }
            if j + 1 == count {
                near_hi = v;
            }
            fresh += v;
            l1 += v.norm();
        }
        base += fresh;
        let new_total = base * h + tail_sum(h, near_hi, near_lo);
        last_diff = (new_total - total).norm();
        total = new_total;
        let tol = cfg.abs_tol.max(cfg.rel_tol * total.norm()).max(64.0 * f64::EPSILON * l1 * h);
        if last_diff <= tol {
            return Ok(Trapezoid {
                result: QuadratureResult {
                    value: total,
                    err_estimate: last_diff,
                    nodes_used: nodes,
                },
                step: h,
            });
        }
    }
    Err(Error::NonConvergence {
        axis: None,
        nodes,
        err_estimate: last_diff,
    })
}

/// Integrate over the real line; the bulk of the mass should lie within a
/// few units of `center`.
pub fn integrate_realline_at<F>(mut f: F, center: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> ComplexValue,
{
    cfg.validate()?;
    Ok(trapezoid(|y| Ok(f(y)), center, cfg, cfg.max_nodes)?.result)
}

/// Integrate a function on the real line with (at least) exponential decay
/// at both ends.
pub fn integrate_realline<F>(f: F, cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> ComplexValue,
{
    integrate_realline_at(f, 0.0, cfg)
}

/// Integrate over `(0, inf)`: a double-exponential map on `(0, c]` and an
/// exponential map on `[c, inf)`, with `c = cfg.domain_cut`.
pub fn integrate_halfline<F>(mut f: F, cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> ComplexValue,
{
    cfg.validate()?;
    let c = cfg.domain_cut;
    let zero = Complex64::new(0.0, 0.0);
    let near = trapezoid(
        |u| {
            let v = 0.5 * PI * (u.exp() - (-u).exp());
            let e = (-v.abs()).exp();
            // x = c / (1 + e^{-v}) written without overflow
            let x = if v >= 0.0 { c / (1.0 + e) } else { c * e / (1.0 + e) };
            let w = c * 0.5 * PI * (u.exp() + (-u).exp()) * e / ((1.0 + e) * (1.0 + e));
            if x <= 0.0 || !w.is_finite() || w == 0.0 {
                return Ok(zero);
            }
            let fx = f(x);
            Ok(if fx.re.is_finite() && fx.im.is_finite() { fx * w } else { zero })
        },
        0.0,
        cfg,
        cfg.max_nodes,
    )?
    .result;
    let far = trapezoid(
        |u| {
            let v = 0.5 * PI * 0.5 * (u.exp() - (-u).exp());
            if v > 709.0 {
                return Ok(zero);
            }
            let ev = v.exp();
            let x = c + ev;
            let w = 0.5 * PI * 0.5 * (u.exp() + (-u).exp()) * ev;
            if !x.is_finite() || !w.is_finite() || w == 0.0 {
                return Ok(zero);
            }
            let fx = f(x);
            Ok(if fx.re.is_finite() && fx.im.is_finite() { fx * w } else { zero })
        },
        0.0,
        cfg,
        cfg.max_nodes.saturating_sub(near.nodes_used),
    )?
    .result;
    Ok(QuadratureResult {
        value: near.value + far.value,
        err_estimate: near.err_estimate + far.err_estimate,
        nodes_used: near.nodes_used + far.nodes_used,
    })
}

/// Order of the iterated integration on the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PlaneOrder {
    /// Inner integral in the first variable, outer in the second.
    #[default]
    InnerFirst,
    /// Inner integral in the second variable, outer in the first.
    InnerSecond,
}

/// Iterated integral of `f(eta, theta)` over the plane.
///
/// `centers` locates the bulk of the mass in `(eta, theta)`. The error
/// estimate is the outer estimate plus the weighted sum of inner ones.
pub fn integrate_plane<F>(
    mut f: F,
    centers: (f64, f64),
    order: PlaneOrder,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult>
where
    F: FnMut(f64, f64) -> ComplexValue,
{
    cfg.validate()?;
    let budget = cfg.max_nodes;
    let mut used = 0usize;
    let mut inner_err = 0.0;
    let (c_in, c_out) = match order {
        PlaneOrder::InnerFirst => centers,
        PlaneOrder::InnerSecond => (centers.1, centers.0),
    };
    let outer = trapezoid(
        |v| {
            let remaining = budget.saturating_sub(used);
            let r = trapezoid(
                |u| {
                    Ok(match order {
                        PlaneOrder::InnerFirst => f(u, v),
                        PlaneOrder::InnerSecond => f(v, u),
                    })
                },
                c_in,
                cfg,
                remaining,
            )
            .map_err(|e| e.on_axis(Axis::Inner))?
            .result;
            used += r.nodes_used;
            inner_err += r.err_estimate;
            Ok(r.value)
        },
        c_out,
        cfg,
        budget,
    )
    .map_err(|e| match e {
        Error::NonConvergence { axis: None, err_estimate, .. } => Error::NonConvergence {
            axis: Some(Axis::Outer),
            nodes: used,
            err_estimate,
        },
        other => other,
    })?;
    // Every outer node evaluated belongs to the final grid.
    Ok(QuadratureResult {
        value: outer.result.value,
        err_estimate: outer.result.err_estimate + outer.step * inner_err,
        nodes_used: used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn config_validation() {
        assert!(cfg().validate().is_ok());
        let mut bad = cfg();
        bad.rel_tol = 1e-17;
        assert!(bad.validate().is_err());
        let mut bad = cfg();
        bad.max_nodes = 14;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn halfline_trivial_integrals() {
        let r = integrate_halfline(|x| c((-x).exp()), &cfg()).unwrap();
        assert!((r.value - 1.0).norm() < 1e-12, "{:?}", r);
        let r = integrate_halfline(|x| c(x * (-x).exp()), &cfg()).unwrap();
        assert!((r.value - 1.0).norm() < 1e-12);
        let r = integrate_halfline(|x| c(x.powf(-0.5) * (-x).exp()), &cfg()).unwrap();
        assert!((r.value - PI.sqrt()).norm() < 1e-11, "{:?}", r);
        assert!(r.nodes_used <= cfg().max_nodes);
    }

    #[test]
    fn realline_trivial_integrals() {
        let r = integrate_realline(|y| c((-y * y).exp()), &cfg()).unwrap();
        assert!((r.value - PI.sqrt()).norm() < 1e-13);
        let r = integrate_realline(|y| c((y - y.exp()).exp()), &cfg()).unwrap();
        assert!((r.value - 1.0).norm() < 1e-12, "{:?}", r);
    }

    #[test]
    fn realline_gamma_one_plus_i() {
        let r = integrate_realline(|y| Complex64::new(y - y.exp(), y).exp(), &cfg()).unwrap();
        let g = crate::numerics::gamma(Complex64::new(1.0, 1.0)).unwrap();
        assert!((r.value - g).norm() < 1e-11, "{} vs {g}", r.value);
    }

    #[test]
    fn slow_geometric_tail_is_extrapolated() {
        // e^{0.01 y} / (1 + e^{y}) integrates to pi / sin(0.01 pi).
        let s = 0.01;
        let f = |y: f64| {
            let v = if y > 0.0 { ((s - 1.0) * y).exp() / (1.0 + (-y).exp()) } else { (s * y).exp() / (1.0 + y.exp()) };
            c(v)
        };
        let r = integrate_realline(f, &cfg()).unwrap();
        let exact = PI / (PI * s).sin();
        assert!((r.value.re - exact).abs() < 1e-9 * exact, "{} vs {exact}", r.value.re);
        assert!(r.nodes_used < 100_000);
    }

    #[test]
    fn budget_exhaustion_reports_nonconvergence() {
        let mut small = cfg();
        small.max_nodes = 40;
        let e = integrate_realline(|y| c((-y * y).exp()), &small).unwrap_err();
        assert!(matches!(e, Error::NonConvergence { .. }));
    }

    #[test]
    fn plane_trivial_integrals() {
        // (0, inf)^2 in log variables
        let g = |u: f64| (u - u.exp()).exp();
        let r = integrate_plane(|x, y| c(g(x) * g(y)), (0.0, 0.0), PlaneOrder::InnerFirst, &cfg()).unwrap();
        assert!((r.value - 1.0).norm() < 1e-11);
        let g2 = |u: f64| (2.0 * u - u.exp()).exp();
        let r = integrate_plane(|x, y| c(g2(x) * g2(y)), (0.0, 0.0), PlaneOrder::InnerSecond, &cfg()).unwrap();
        assert!((r.value - 1.0).norm() < 1e-11);
    }

    #[test]
    fn plane_inner_failure_is_tagged() {
        let mut small = cfg();
        small.max_nodes = 200;
        let g = |u: f64| (u - u.exp()).exp();
        let e = integrate_plane(|x, y| c(g(x) * g(y)), (0.0, 0.0), PlaneOrder::InnerFirst, &small).unwrap_err();
        assert!(matches!(e, Error::NonConvergence { axis: Some(_), .. }));
    }
}
