//! Smoothness of eigenvectors and of their ratios.
//!
//! The roughness of a vector is the scale of the second differences of
//! log|v| divided by the mesh, over points whose three-point stencil is
//! unmasked and does not straddle a sign change (a zero of v). The scale is
//! 1.4826 · median |Δ²|, which equals the RMS for Gaussian noise but ignores
//! the few stencils next to a zero, where log|v| is genuinely singular.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Error, Result};
use crate::scalings::{ScaledMatrix, ScaledModel};

/// Default relative threshold below which the denominator of a ratio is
/// treated as a pole.
pub const MASK_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessProfile {
    /// log|v|, NaN where masked
    pub log_abs: Vec<f64>,
    pub sign: Vec<f64>,
    /// centered first difference / h, NaN where undefined
    pub grad1: Vec<f64>,
    /// second difference / h², NaN where undefined
    pub grad2: Vec<f64>,
    /// robust scale of Δ² log|v|, divided by h
    pub roughness: f64,
    /// plain RMS of Δ² log|v|, divided by h
    pub rms: f64,
    pub h: f64,
}

fn to_log(v: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let log = v
        .iter()
        .map(|x| if *x == 0.0 || !x.is_finite() { f64::NAN } else { x.abs().ln() })
        .collect();
    let sign = v.iter().map(|x| if *x < 0.0 { -1.0 } else { 1.0 }).collect();
    (log, sign)
}

/// Profile of a vector sampled on a uniform grid of mesh `h`.
pub fn smoothness_profile(v: &[f64], h: f64) -> Result<SmoothnessProfile> {
    if v.iter().all(|x| *x == 0.0) {
        return Err(domain("vector is identically zero"));
    }
    let (log, sign) = to_log(v);
    smoothness_profile_log(log, sign, h)
}

/// Profile from log|v| and signs; non-finite logs are masked.
pub fn smoothness_profile_log(log_abs: Vec<f64>, sign: Vec<f64>, h: f64) -> Result<SmoothnessProfile> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(invalid(format!("mesh must be positive, got {h}")));
    }
    if log_abs.len() != sign.len() {
        return Err(Error::Shape("log and sign vectors differ in length".into()));
    }
    let n = log_abs.len();
    if n < 3 {
        return Err(invalid("need at least three entries"));
    }
    let log_abs: Vec<f64> = log_abs
        .into_iter()
        .map(|x| if x.is_finite() { x } else { f64::NAN })
        .collect();
    let mut grad1 = vec![f64::NAN; n];
    let mut grad2 = vec![f64::NAN; n];
    let mut d2s = Vec::with_capacity(n);
    for i in 1..n - 1 {
        let (a, b, c) = (log_abs[i - 1], log_abs[i], log_abs[i + 1]);
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            continue;
        }
        if sign[i - 1] != sign[i] || sign[i] != sign[i + 1] {
            continue;
        }
        grad1[i] = (c - a) / (2.0 * h);
        let d2 = c - 2.0 * b + a;
        grad2[i] = d2 / (h * h);
        d2s.push(d2);
    }
    if d2s.is_empty() {
        return Err(domain("every stencil is masked"));
    }
    let rms = (d2s.iter().map(|d| d * d).sum::<f64>() / d2s.len() as f64).sqrt() / h;
    let mut abs: Vec<f64> = d2s.iter().map(|d| d.abs()).collect();
    abs.sort_by(f64::total_cmp);
    let m = abs.len();
    let median = if m % 2 == 1 { abs[m / 2] } else { 0.5 * (abs[m / 2 - 1] + abs[m / 2]) };
    Ok(SmoothnessProfile {
        log_abs,
        sign,
        grad1,
        grad2,
        roughness: 1.4826 * median / h,
        rms,
        h,
    })
}

/// v_k / v_l entrywise, NaN where |v_l| < mask_tol · max|v_l|.
pub fn ratio_vector(v_k: &[f64], v_l: &[f64], mask_tol: f64) -> Result<Vec<f64>> {
    if v_k.len() != v_l.len() {
        return Err(Error::Shape(format!("lengths {} and {}", v_k.len(), v_l.len())));
    }
    let top = v_l.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let r: Vec<f64> = v_k
        .iter()
        .zip(v_l)
        .map(|(a, b)| if b.abs() < mask_tol * top || *b == 0.0 { f64::NAN } else { a / b })
        .collect();
    if r.iter().all(|x| x.is_nan()) {
        return Err(domain("ratio is masked everywhere"));
    }
    Ok(r)
}

/// Same as [`ratio_vector`] for vectors given as (log|v|, sign).
pub fn ratio_log(
    k: (&[f64], &[f64]),
    l: (&[f64], &[f64]),
    mask_tol: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if k.0.len() != l.0.len() {
        return Err(Error::Shape(format!("lengths {} and {}", k.0.len(), l.0.len())));
    }
    let top = l.0.iter().cloned().filter(|x| x.is_finite()).fold(f64::NEG_INFINITY, f64::max);
    let cut = top + mask_tol.ln();
    let log: Vec<f64> = k
        .0
        .iter()
        .zip(l.0)
        .map(|(a, b)| if b.is_finite() && *b >= cut { a - b } else { f64::NAN })
        .collect();
    if log.iter().all(|x| !x.is_finite()) {
        return Err(domain("ratio is masked everywhere"));
    }
    let sign = k.1.iter().zip(l.1).map(|(a, b)| a * b).collect();
    Ok((log, sign))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub k: usize,
    pub l: usize,
    pub roughness_k: f64,
    pub roughness_l: f64,
    pub roughness_ratio: f64,
    /// unmasked entries shared by all three profiles
    pub support: usize,
}

impl SmoothnessReport {
    /// roughness(v_k / v_l) < factor · min(roughness(v_k), roughness(v_l))
    pub fn ratio_smoother(&self, factor: f64) -> bool {
        self.roughness_ratio < factor * self.roughness_k.min(self.roughness_l)
    }
}

/// Profiles of v_k, v_l and v_k / v_l for the k-th and l-th eigenvectors
/// (soft edge) or right singular vectors (hard edge) of `model`. All three
/// are restricted to the region where the ratio is unmasked.
pub fn smoothness_profiles(
    model: &ScaledModel,
    k: usize,
    l: usize,
    mask_tol: f64,
) -> Result<[SmoothnessProfile; 3]> {
    let size = match &model.matrix {
        ScaledMatrix::Tridiagonal(t) => t.n(),
        ScaledMatrix::Bidiagonal(b) => b.cols,
    };
    if k == 0 || l == 0 || k == l || k > size || l > size {
        return Err(invalid(format!("need distinct indices in 1..={size}, got k={k}, l={l}")));
    }
    let (lk, sk) = model.log_vector(k)?;
    let (ll, sl) = model.log_vector(l)?;
    let (lr, sr) = ratio_log((&lk, &sk), (&ll, &sl), mask_tol)?;
    let restrict = |v: &[f64]| -> Vec<f64> {
        v.iter().zip(&lr).map(|(x, r)| if r.is_finite() { *x } else { f64::NAN }).collect()
    };
    let h = model.h;
    Ok([
        smoothness_profile_log(restrict(&lk), sk, h)?,
        smoothness_profile_log(restrict(&ll), sl, h)?,
        smoothness_profile_log(lr, sr, h)?,
    ])
}

pub fn smoothness_report(model: &ScaledModel, k: usize, l: usize, mask_tol: f64) -> Result<SmoothnessReport> {
    let [pk, pl, pr] = smoothness_profiles(model, k, l, mask_tol)?;
    Ok(report_from(k, l, &[pk, pl, pr]))
}

pub fn report_from(k: usize, l: usize, p: &[SmoothnessProfile; 3]) -> SmoothnessReport {
    SmoothnessReport {
        k,
        l,
        roughness_k: p[0].roughness,
        roughness_l: p[1].roughness,
        roughness_ratio: p[2].roughness,
        support: p[2].log_abs.iter().filter(|x| x.is_finite()).count(),
    }
}

/// One row per entry: index, then log|v|, grad1, grad2 for v_k, v_l and the
/// ratio; masked values are left empty.
pub fn write_profiles_csv<W: std::io::Write>(p: &[SmoothnessProfile; 3], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "index", "log_vk", "grad1_vk", "grad2_vk", "log_vl", "grad1_vl", "grad2_vl", "log_ratio",
        "grad1_ratio", "grad2_ratio",
    ])?;
    let cell = |x: f64| if x.is_finite() { x.to_string() } else { String::new() };
    for i in 0..p[0].log_abs.len() {
        let mut row = vec![i.to_string()];
        for q in p {
            row.extend([cell(q.log_abs[i]), cell(q.grad1[i]), cell(q.grad2[i])]);
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Columns index,log_abs,sign,grad1,grad2; masked values are left empty.
pub fn write_profile_csv(p: &SmoothnessProfile, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["index", "log_abs", "sign", "grad1", "grad2"])?;
    let cell = |x: f64| if x.is_finite() { x.to_string() } else { String::new() };
    for i in 0..p.log_abs.len() {
        w.write_record([
            i.to_string(),
            cell(p.log_abs[i]),
            cell(p.sign[i]),
            cell(p.grad1[i]),
            cell(p.grad2[i]),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beta::Beta;
    use crate::ensembles::{hermite_inf, sample_hermite, sample_jacobi};
    use crate::randsrc::{brownian_path, uniform_grid, StreamKey};
    use crate::scalings::{hermite_soft, jacobi_hard};

    #[test]
    fn log_linear_vector_has_no_curvature() {
        let h = 0.01;
        let v: Vec<f64> = (0..500).map(|i| (3.0 - 2.0 * i as f64 * h).exp()).collect();
        let p = smoothness_profile(&v, h).unwrap();
        assert!(p.grad2[1..499].iter().all(|g| g.abs() <= 1e-8));
        assert!((p.grad1[250] + 2.0).abs() < 1e-9);
        assert!(p.roughness <= 1e-8 && p.rms <= 1e-8);
        assert!(p.grad1[0].is_nan() && p.grad2[499].is_nan());
    }

    #[test]
    fn brownian_roughness_scales_like_inverse_root_mesh() {
        // Δ²B has variance 2h, so roughness ≈ √(2/h)
        let mut prev = None;
        for h in [0.004, 0.002, 0.001] {
            let grid = uniform_grid(0.0, 10.0, h).unwrap();
            let b = brownian_path(StreamKey::new(8, 0), &grid).unwrap();
            let v: Vec<f64> = b.values.iter().map(|x| x.exp()).collect();
            let p = smoothness_profile(&v, h).unwrap();
            let r = p.roughness;
            assert!((r / (2.0 / h).sqrt() - 1.0).abs() < 0.05, "h={h}: {r}");
            assert!((p.rms / (2.0 / h).sqrt() - 1.0).abs() < 0.05, "h={h}: {}", p.rms);
            if let Some(p) = prev {
                let slope = (r / p as f64).ln() / 2f64.ln();
                assert!((slope - 0.5).abs() < 0.15, "{slope}");
            }
            prev = Some(r);
        }
    }

    #[test]
    fn zeros_are_masked() {
        let mut v: Vec<f64> = (0..50).map(|i| 1.0 + i as f64 * 0.1).collect();
        v[20] = 0.0;
        let p = smoothness_profile(&v, 0.1).unwrap();
        assert!(p.log_abs[20].is_nan());
        assert!(p.grad2[19].is_nan() && p.grad2[20].is_nan() && p.grad2[21].is_nan());
        assert!(p.grad2[10].is_finite());
        assert!(smoothness_profile(&[0.0; 5], 0.1).is_err());
        // a sign change is a zero between grid points
        let v: Vec<f64> = (0..50).map(|i| i as f64 - 24.5).collect();
        let p = smoothness_profile(&v, 1.0).unwrap();
        assert!(p.grad2[24].is_nan() && p.grad2[25].is_nan());
    }

    #[test]
    fn ratio_masking() {
        let v = vec![1.0, 2.0, 3.0];
        assert_eq!(ratio_vector(&v, &v, MASK_TOL).unwrap(), vec![1.0; 3]);
        let l = vec![1.0, 1e-9, 2.0, 0.0];
        let r = ratio_vector(&[2.0, 2.0, 2.0, 2.0], &l, MASK_TOL).unwrap();
        assert_eq!(r[0], 2.0);
        assert!(r[1].is_nan() && r[3].is_nan());
        assert_eq!(r[2], 1.0);
        assert!(ratio_vector(&[1.0], &[0.0], MASK_TOL).is_err());
        assert!(ratio_vector(&[1.0], &[1.0, 2.0], MASK_TOL).is_err());

        let (lg, sg) = ratio_log(
            (&[0.0, -1.0, -50.0], &[1.0, -1.0, 1.0]),
            (&[0.0, -2.0, -30.0], &[1.0, 1.0, 1.0]),
            MASK_TOL,
        )
        .unwrap();
        assert_eq!(&lg[..2], &[0.0, 1.0]);
        assert!(lg[2].is_nan());
        assert_eq!(sg, vec![1.0, -1.0, 1.0]);
    }

    #[test]
    fn shared_rough_factor_cancels() {
        let h = 0.001;
        let grid = uniform_grid(0.0, 3.0, h).unwrap();
        let w = brownian_path(StreamKey::new(4, 4), &grid).unwrap().values;
        let f1: Vec<f64> = grid.iter().map(|x| (-x * x).exp()).collect();
        let f2: Vec<f64> = grid.iter().map(|x| (2.0 + x.sin()) * (-x).exp()).collect();
        let v1: Vec<f64> = f1.iter().zip(&w).map(|(f, b)| f * b.exp()).collect();
        let v2: Vec<f64> = f2.iter().zip(&w).map(|(f, b)| f * b.exp()).collect();
        let r = ratio_vector(&v2, &v1, MASK_TOL).unwrap();
        let rough = smoothness_profile(&v1, h).unwrap().roughness;
        let rr = smoothness_profile(&r, h).unwrap().roughness;
        assert!(rr <= 0.1 * rough, "{rr} vs {rough}");
    }

    #[test]
    fn zero_temperature_vectors_are_smooth() {
        let m = hermite_soft(&hermite_inf(2000).unwrap()).unwrap();
        let rep = smoothness_report(&m, 2, 1, MASK_TOL).unwrap();
        let hb = m.h;
        assert!(smoothness_report(&m, 2, 2001, MASK_TOL).is_err());
        // smooth profiles: roughness O(h), no noise term
        for r in [rep.roughness_k, rep.roughness_l, rep.roughness_ratio] {
            assert!(r < 5.0 * hb, "{r}");
        }
        assert!(smoothness_report(&m, 1, 1, MASK_TOL).is_err());
    }

    #[test]
    fn ratio_is_smoother_for_random_models() {
        let m = hermite_soft(&sample_hermite(StreamKey::new(1, 0), 100_000, Beta::Finite(2.0)).unwrap()).unwrap();
        let rep = smoothness_report(&m, 2, 1, MASK_TOL).unwrap();
        assert!(rep.ratio_smoother(0.5), "{rep:?}");
        let j = jacobi_hard(&sample_jacobi(StreamKey::new(1, 0), 10_000, Beta::Finite(2.0), 0.0, 0.0).unwrap()).unwrap();
        let rep = smoothness_report(&j, 2, 1, MASK_TOL).unwrap();
        assert!(rep.ratio_smoother(1.0), "{rep:?}");
    }

    #[test]
    fn profile_csv_has_one_row_per_entry() {
        let dir = tempfile::tempdir().unwrap();
        let p = smoothness_profile(&[1.0, 2.0, 3.0, 0.0, 5.0], 1.0).unwrap();
        let path = dir.path().join("p.csv");
        write_profile_csv(&p, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 6);
        assert!(text.lines().nth(4).unwrap().starts_with("3,,"));
    }
}
