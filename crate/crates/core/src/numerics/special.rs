//! Bernoulli numbers and log-domain helpers.

use core::f64::consts::PI;

const BERNOULLI: [f64; 21] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43867.0 / 798.0,
    0.0,
    -174611.0 / 330.0,
];

/// Bernoulli number `B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> f64 {
    if n < BERNOULLI.len() {
        return BERNOULLI[n];
    }
    if n % 2 == 1 {
        return 0.0;
    }
    // B_2k = (-1)^(k+1) 2 (2k)! zeta(2k) / (2 pi)^2k
    let mut zeta = 0.0;
    for j in (1..=24).rev() {
        zeta += (j as f64).powi(-(n as i32));
    }
    let mut mag = 2.0 * zeta;
    for j in 1..=n {
        mag *= j as f64 / (2.0 * PI);
    }
    if (n / 2) % 2 == 1 {
        mag
    } else {
        -mag
    }
}

/// `ln(e^a + e^b)`.
pub fn logaddexp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// `ln(1 - e^{-x})` for `x = e^lx > 0`, accurate for tiny and huge `x`.
pub fn ln_one_minus_exp_neg(lx: f64) -> f64 {
    if lx < -30.0 {
        // 1 - e^{-x} = x (1 - x/2 + ...)
        lx - 0.5 * lx.exp()
    } else {
        let x = lx.exp();
        if x > 40.0 {
            (-(-x).exp()).ln_1p()
        } else {
            (-(-x).exp_m1()).ln()
        }
    }
}

/// `ln(e^x - 1)` for `x = e^lx > 0`.
pub fn ln_expm1(lx: f64) -> f64 {
    if lx < -30.0 {
        lx + 0.5 * lx.exp()
    } else {
        let x = lx.exp();
        if x > 40.0 {
            x + (-(-x).exp()).ln_1p()
        } else {
            x.exp_m1().ln()
        }
    }
}

/// `ln(1 - z e^{-x})` for real `z` in `[-1, 1]` and `x = e^lx`.
pub fn ln_one_minus_z_exp_neg(z: f64, lx: f64) -> f64 {
    if z == 1.0 {
        ln_one_minus_exp_neg(lx)
    } else {
        let x = lx.exp();
        (-z * (-x).exp()).ln_1p()
    }
}
