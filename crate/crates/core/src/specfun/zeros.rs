//! Zeros of Ai and J_a: asymptotic starting points refined by safeguarded Newton.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::airy::airy_pair;
use super::bessel::bessel_j_unchecked;
use crate::error::{domain, invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ZeroKind {
    AiryAi,
    BesselJ(f64),
}

/// First `zeros.len()` zeros of a function, strictly ordered away from the
/// origin (decreasing for Ai, increasing for J_a).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    pub kind: ZeroKind,
    pub zeros: Vec<f64>,
    /// max over zeros of |f(z)| / max(1, |f'(z)|)
    pub precision: f64,
}

impl ZeroTable {
    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }
}

/// The first `count` zeros of the given function.
pub fn zeros(kind: ZeroKind, count: usize) -> Result<ZeroTable> {
    if count == 0 {
        return Err(invalid("zero count must be at least 1"));
    }
    match kind {
        ZeroKind::AiryAi => airy_zeros(count),
        ZeroKind::BesselJ(a) => {
            if !(a.is_finite() && a > -1.0) {
                return Err(domain(format!("Bessel order must be > -1, got {a}")));
            }
            bessel_zeros(a, count)
        }
    }
}

/// Asymptotic estimate of the k-th zero of Ai (1-based).
pub fn airy_zero_guess(k: usize) -> f64 {
    let t = 3.0 * PI * (4.0 * k as f64 - 1.0) / 8.0;
    let t2 = 1.0 / (t * t);
    let corr = 1.0 + t2 * (5.0 / 48.0 + t2 * (-5.0 / 36.0 + t2 * (77125.0 / 82944.0 - t2 * 108056875.0 / 6967296.0)));
    -t.powf(2.0 / 3.0) * corr
}

/// McMahon estimate of the k-th positive zero of J_a (1-based).
pub fn bessel_zero_guess(a: f64, k: usize) -> f64 {
    let mu = 4.0 * a * a;
    let b = (k as f64 + 0.5 * a - 0.25) * PI;
    let e = 1.0 / (8.0 * b);
    b - (mu - 1.0) * e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / 3.0 * e.powi(3)
}

fn airy_zeros(count: usize) -> Result<ZeroTable> {
    let f = |x: f64| airy_pair(x);
    let mut out = Vec::with_capacity(count);
    let mut precision: f64 = 0.0;
    for k in 1..=count {
        let g = airy_zero_guess(k);
        let half = 0.4 * PI / g.abs().sqrt();
        let (lo, hi) = (g - half, g + half);
        let z = newton_bracketed(&f, lo, hi, g).ok_or_else(|| {
            Error::NonConvergence(format!("Airy zero {k} not bracketed near {g}"))
        })?;
        let (fz, dz) = f(z);
        precision = precision.max(fz.abs() / dz.abs().max(1.0));
        if let Some(&prev) = out.last() {
            if z >= prev {
                return Err(Error::NonConvergence(format!("Airy zeros out of order at {k}")));
            }
        }
        out.push(z);
    }
    Ok(ZeroTable {
        kind: ZeroKind::AiryAi,
        zeros: out,
        precision,
    })
}

fn bessel_pair(a: f64, x: f64) -> (f64, f64) {
    let j = bessel_j_unchecked(a, x);
    let jp = a / x * j - bessel_j_unchecked(a + 1.0, x);
    (j, jp)
}

fn bessel_zeros(a: f64, count: usize) -> Result<ZeroTable> {
    let f = |x: f64| bessel_pair(a, x);
    let mut out = Vec::with_capacity(count);
    let mut precision: f64 = 0.0;
    let mut x = 1e-3;
    let mut fx = f(x).0;
    while out.len() < count {
        let step = if x < 1.0 { 0.01 } else { 0.25 };
        let xn = x + step;
        let fxn = f(xn).0;
        if fxn == 0.0 || fx.signum() != fxn.signum() {
            let z = if fxn == 0.0 {
                xn
            } else {
                newton_bracketed(&f, x, xn, 0.5 * (x + xn)).ok_or_else(|| {
                    Error::NonConvergence(format!("Bessel zero near {xn} did not converge"))
                })?
            };
            let (fz, dz) = f(z);
            precision = precision.max(fz.abs() / dz.abs().max(1.0));
            out.push(z);
            if fxn == 0.0 {
                // step past the exact zero so it is not counted twice
                x = xn + 1e-9;
                fx = f(x).0;
                continue;
            }
        }
        x = xn;
        fx = fxn;
    }
    // consecutive zeros of J_a are more than π/2 apart for a > -1
    if out.windows(2).any(|w| w[1] - w[0] < 0.5 * PI) {
        return Err(Error::NonConvergence(format!(
            "Bessel zero scan for order {a} produced inconsistent spacing"
        )));
    }
    Ok(ZeroTable {
        kind: ZeroKind::BesselJ(a),
        zeros: out,
        precision,
    })
}

/// Newton iteration kept inside a sign-change bracket, falling back to
/// bisection when a step leaves it or stalls. `f` returns (value, derivative).
pub(crate) fn newton_bracketed<F>(f: &F, lo: f64, hi: f64, start: f64) -> Option<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let (flo, _) = f(lo);
    let (fhi, _) = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    // orient so that f(a) < 0 < f(b)
    let (mut a, mut b) = if flo < 0.0 { (lo, hi) } else { (hi, lo) };
    let mut x = if start > lo.min(hi) && start < lo.max(hi) {
        start
    } else {
        0.5 * (lo + hi)
    };
    let mut dx_old = (hi - lo).abs();
    for _ in 0..200 {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Some(x);
        }
        if fx < 0.0 {
            a = x;
        } else {
            b = x;
        }
        let newton = x - fx / dfx;
        let inside = dfx != 0.0 && newton > a.min(b) && newton < a.max(b);
        let dx = if inside && (fx / dfx).abs() < 0.5 * dx_old {
            fx / dfx
        } else {
            x - 0.5 * (a + b)
        };
        dx_old = dx.abs();
        x -= dx;
        if dx.abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) || (a - b).abs() <= 4.0 * f64::EPSILON * x.abs() {
            return Some(x);
        }
    }
    None
}
