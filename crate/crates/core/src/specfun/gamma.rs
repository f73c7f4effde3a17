//! Log-gamma, digamma and trigamma for positive real arguments.
//!
//! All three shift the argument up to `x >= SHIFT` with the recurrence and then
//! use the large-x asymptotic series in Bernoulli numbers.

use crate::error::{domain, Result};

const SHIFT: f64 = 12.0;

// B_{2k} for k = 1..=9
const BERNOULLI: [f64; 9] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
];

fn check(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("argument must be finite and positive, got {x}")))
    }
}

/// ln Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    check(x)?;
    Ok(log_gamma_unchecked(x))
}

// ζ(k) - 1 for k = 2..=31
const ZETA_M1: [f64; 30] = [
    0.6449340668482264, 0.2020569031595943, 0.08232323371113819, 0.03692775514336993,
    0.01734306198444914, 0.008349277381922827, 0.00407735619794434, 0.0020083928260822143,
    0.0009945751278180853, 0.0004941886041194645, 0.0002460865533080483, 0.00012271334757848915,
    6.124813505870483e-05, 3.058823630702049e-05, 1.528225940865187e-05, 7.637197637899763e-06,
    3.81729326499984e-06, 1.908212716553939e-06, 9.539620338727962e-07, 4.769329867878064e-07,
    2.38450502727733e-07, 1.1921992596531106e-07, 5.960818905125948e-08, 2.980350351465228e-08,
    1.4901554828365043e-08, 7.45071178983543e-09, 3.725334024788457e-09, 1.862659723513049e-09,
    9.313274324196682e-10, 4.656629065033784e-10,
];

const EULER_GAMMA: f64 = 0.5772156649015329;

/// ln Γ(1 + z) for |z| <= 1/2, accurate relative to the result near the
/// zeros at z = 0 and z = 1.
fn log_gamma_1p(z: f64) -> f64 {
    let mut s = 0.0;
    let mut zk = -z;
    for (i, c) in ZETA_M1.iter().enumerate() {
        zk *= -z;
        s += c * zk / (i + 2) as f64;
    }
    -z.ln_1p() + z * (1.0 - EULER_GAMMA) + s
}

pub(crate) fn log_gamma_unchecked(x: f64) -> f64 {
    if (0.5..=1.5).contains(&x) {
        return log_gamma_1p(x - 1.0);
    }
    if x > 1.5 && x <= 2.5 {
        return (x - 2.0).ln_1p() + log_gamma_1p(x - 2.0);
    }
    let mut z = x;
    // ln of the product x(x+1)...(x+m-1), accumulated as a product and
    // flushed to a log before it can overflow.
    let mut shift_log = 0.0;
    let mut prod = 1.0;
    while z < SHIFT {
        prod *= z;
        z += 1.0;
        if !(1e-280..=1e280).contains(&prod) {
            shift_log += prod.ln();
            prod = 1.0;
        }
    }
    shift_log += prod.ln();
    let z2 = z * z;
    let mut series = 0.0;
    let mut zpow = z;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k = (k + 1) as f64;
        series += b / (2.0 * k * (2.0 * k - 1.0) * zpow);
        zpow *= z2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * std::f64::consts::PI).ln() + series - shift_log
}

/// Γ(x) for x > 0 (overflows to +inf beyond x ≈ 171.6).
pub fn gamma(x: f64) -> Result<f64> {
    check(x)?;
    Ok(log_gamma_unchecked(x).exp())
}

/// ψ(x) = Γ'(x)/Γ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    check(x)?;
    let mut z = x;
    let mut acc = 0.0;
    while z < SHIFT {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut series = 0.0;
    let mut p = inv2;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k = (k + 1) as f64;
        series += b / (2.0 * k) * p;
        p *= inv2;
    }
    Ok(acc + z.ln() - 0.5 / z - series)
}

/// ψ'(x) for x > 0.
pub fn trigamma(x: f64) -> Result<f64> {
    check(x)?;
    let mut z = x;
    let mut acc = 0.0;
    while z < SHIFT {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv2 * inv;
    for b in BERNOULLI {
        series += b * p;
        p *= inv2;
    }
    Ok(acc + inv + 0.5 * inv2 + series)
}
