//! Airy function Ai and its derivative.
//!
//! |x| <= SERIES_CUTOFF: Maclaurin series in double-double arithmetic.
//! Beyond: the standard asymptotic expansions in ζ = (2/3)|x|^{3/2}, summed
//! until the terms stop decreasing.

use std::f64::consts::{FRAC_PI_4, PI};

use super::dd::Dd;
use crate::error::{domain, Result};

pub(crate) const SERIES_CUTOFF: f64 = 9.0;
const MAX_ABS_ARG: f64 = 200.0;

// Ai(0) and -Ai'(0) as unevaluated sums hi + lo.
const C1: Dd = Dd::new(0.3550280538878172, 2.05233632436212e-17);
const C2: Dd = Dd::new(0.2588194037928068, -2.522243111610832e-17);

fn check(x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(domain(format!("Airy argument must be finite, got {x}")));
    }
    if x.abs() > MAX_ABS_ARG {
        return Err(domain(format!("Airy argument |x| must be <= {MAX_ABS_ARG}, got {x}")));
    }
    Ok(())
}

/// Ai(x) for finite |x| <= 200.
pub fn airy_ai(x: f64) -> Result<f64> {
    check(x)?;
    Ok(airy_pair(x).0)
}

/// Ai'(x) for finite |x| <= 200.
pub fn airy_ai_prime(x: f64) -> Result<f64> {
    check(x)?;
    Ok(airy_pair(x).1)
}

/// (Ai(x), Ai'(x)) without the domain check.
pub(crate) fn airy_pair(x: f64) -> (f64, f64) {
    if x.abs() <= SERIES_CUTOFF {
        series(x)
    } else if x > 0.0 {
        asymptotic_pos(x)
    } else {
        asymptotic_neg(-x)
    }
}

fn series(x: f64) -> (f64, f64) {
    let xd = Dd::from_f64(x);
    let x3 = xd * xd * xd;

    let mut f = Dd::from_f64(1.0);
    let mut g = xd;
    let mut fp = Dd::ZERO;
    let mut gp = Dd::from_f64(1.0);

    let mut t = Dd::from_f64(1.0);
    let mut s = xd;
    let mut p = (xd * xd).div_f64(2.0);
    let mut q = Dd::from_f64(1.0);
    for k in 1..200 {
        let k3 = 3.0 * k as f64;
        t = (t * x3).div_f64((k3 - 1.0) * k3);
        s = (s * x3).div_f64(k3 * (k3 + 1.0));
        if k > 1 {
            p = (p * x3).div_f64((k3 - 1.0) * (k3 - 3.0));
        }
        q = (q * x3).div_f64((k3 - 2.0) * k3);
        f = f + t;
        g = g + s;
        fp = fp + p;
        gp = gp + q;
        let biggest = t.abs_f64().max(s.abs_f64()).max(p.abs_f64()).max(q.abs_f64());
        if biggest < 1e-34 {
            break;
        }
    }
    let ai = C1 * f - C2 * g;
    let aip = C1 * fp - C2 * gp;
    (ai.to_f64(), aip.to_f64())
}

/// Coefficients u_k, v_k of the Airy asymptotic expansions.
fn uv(kmax: usize) -> (Vec<f64>, Vec<f64>) {
    let mut u = vec![1.0; kmax + 1];
    let mut v = vec![1.0; kmax + 1];
    for k in 1..=kmax {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        v[k] = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u[k];
    }
    (u, v)
}

const KMAX: usize = 40;

/// Σ_k (-1)^k c_{start+2k}/ζ^{start+2k} (stride 2) or Σ (-1)^k c_k/ζ^k (stride 1),
/// truncated at the smallest term.
fn asym_sum(c: &[f64], zeta: f64, start: usize, stride: usize) -> f64 {
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    let mut sign = 1.0;
    let mut k = start;
    while k < c.len() {
        let term = c[k] / zeta.powi(k as i32);
        if term.abs() >= last {
            break;
        }
        sum += sign * term;
        last = term.abs();
        if last < 1e-18 * sum.abs() {
            break;
        }
        sign = -sign;
        k += stride;
    }
    sum
}

fn asymptotic_pos(x: f64) -> (f64, f64) {
    let (u, v) = uv(KMAX);
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let e = (-zeta).exp();
    let x4 = x.sqrt().sqrt();
    let pref = e / (2.0 * PI.sqrt());
    let ai = pref / x4 * asym_sum(&u, zeta, 0, 1);
    let aip = -pref * x4 * asym_sum(&v, zeta, 0, 1);
    (ai, aip)
}

fn asymptotic_neg(z: f64) -> (f64, f64) {
    let (u, v) = uv(KMAX);
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let z4 = z.sqrt().sqrt();
    let (sn, cs) = (zeta + FRAC_PI_4).sin_cos();
    let rpi = PI.sqrt();
    let ai = (sn * asym_sum(&u, zeta, 0, 2) - cs * asym_sum(&u, zeta, 1, 2)) / (rpi * z4);
    let aip = -z4 / rpi * (cs * asym_sum(&v, zeta, 0, 2) + sn * asym_sum(&v, zeta, 1, 2));
    (ai, aip)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_zero() {
        assert!((airy_ai(0.0).unwrap() - 0.35502805388781723926).abs() < 1e-16);
        assert!((airy_ai_prime(0.0).unwrap() + 0.25881940379280679841).abs() < 1e-16);
    }

    #[test]
    fn branches_agree_at_cutoff() {
        for &x in &[SERIES_CUTOFF, -SERIES_CUTOFF] {
            let (a, ap) = series(x);
            let (b, bp) = if x > 0.0 { asymptotic_pos(x) } else { asymptotic_neg(-x) };
            assert!((a - b).abs() <= 1e-13 * a.abs().max(1e-3), "Ai at {x}: {a} vs {b}");
            assert!((ap - bp).abs() <= 1e-13 * ap.abs().max(1e-3), "Ai' at {x}: {ap} vs {bp}");
        }
    }

    #[test]
    fn reference_values() {
        // mpmath airyai / airyai(derivative=1)
        let cases = [
            (1.0, 0.135292416312881415524, -0.159147441296793212788),
            (-5.0, 0.350761009024114319788, 0.327192818554443136795),
            (5.0, 1.08344428136074417350e-4, -2.47413890868462476000e-4),
            (12.0, 1.39318468887536083905e-13, -4.85473655498530846299e-13),
            (-15.0, 0.278217490870828929528, 0.272374204308642020826),
        ];
        for (x, ai, aip) in cases {
            let (a, ap) = airy_pair(x);
            assert!((a - ai).abs() <= 1e-13 + 1e-12 * ai.abs(), "Ai({x}) = {a}, want {ai}");
            assert!((ap - aip).abs() <= 1e-13 + 1e-12 * aip.abs(), "Ai'({x}) = {ap}, want {aip}");
        }
    }

    #[test]
    fn decays_and_stays_positive() {
        let a20 = airy_ai(20.0).unwrap();
        assert!(a20 > 0.0 && a20 < 1e-16);
        let mut prev = airy_ai(0.0).unwrap();
        for i in 1..=200 {
            let a = airy_ai(i as f64 * 0.1).unwrap();
            assert!(a < prev);
            prev = a;
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let h = 1e-5;
        let fd = (airy_ai(1.0 + h).unwrap() - airy_ai(1.0 - h).unwrap()) / (2.0 * h);
        assert!((fd - airy_ai_prime(1.0).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn satisfies_airy_equation() {
        let h = 1e-2;
        let f = |x: f64| airy_ai(x).unwrap();
        for i in -50..=50 {
            let x = i as f64 * 0.1;
            let d2 = (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h)
                - f(x - 2.0 * h))
                / (12.0 * h * h);
            assert!((d2 - x * f(x)).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(airy_ai(f64::NAN).is_err());
        assert!(airy_ai_prime(f64::INFINITY).is_err());
        assert!(airy_ai(250.0).is_err());
    }
}
