//! Hermite, Laguerre and Jacobi matrix models for finite β and their
//! deterministic β = ∞ limits.
//!
//! Indices follow the displayed models: degrees of freedom decrease down the
//! diagonal, so entry i (1-based) of the Hermite off-diagonal carries
//! χ_{(n-i)β}.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::beta::Beta;
use crate::error::{invalid, Result};
use crate::linalg::{Bidiagonal, Orientation, SymTridiagonal};
use crate::randsrc::{Stream, StreamKey};

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("matrix size n must be at least 1"));
    }
    Ok(())
}

fn check_param(name: &str, v: f64, lower: f64) -> Result<()> {
    if !(v.is_finite() && v > lower) {
        return Err(invalid(format!("{name} must be > {lower}, got {v}")));
    }
    Ok(())
}

/// n×n symmetric tridiagonal β-Hermite model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HermiteModel {
    pub n: usize,
    pub beta: Beta,
    pub matrix: SymTridiagonal,
}

impl HermiteModel {
    pub fn to_dense(&self) -> DMatrix<f64> {
        self.matrix.to_dense()
    }
}

/// Samples H^β; dispatches to [`hermite_inf`] for β = ∞.
pub fn sample_hermite(key: StreamKey, n: usize, beta: Beta) -> Result<HermiteModel> {
    let Beta::Finite(b) = beta else {
        return hermite_inf(n);
    };
    check_n(n)?;
    let mut s = key.stream();
    let diag = (0..n).map(|_| s.gaussian() / b.sqrt()).collect();
    let mut off = Vec::with_capacity(n - 1);
    for i in 1..n {
        off.push(s.chi((n - i) as f64 * b)? / (2.0 * b).sqrt());
    }
    Ok(HermiteModel {
        n,
        beta,
        matrix: SymTridiagonal::new(diag, off)?,
    })
}

/// H^∞: zero diagonal, off-diagonal √(n-i)/√2.
pub fn hermite_inf(n: usize) -> Result<HermiteModel> {
    check_n(n)?;
    let off = (1..n).map(|i| ((n - i) as f64 / 2.0).sqrt()).collect();
    Ok(HermiteModel {
        n,
        beta: Beta::Infinite,
        matrix: SymTridiagonal::new(vec![0.0; n], off)?,
    })
}

/// n×n upper bidiagonal β-Laguerre model L^{β,a}, a > -1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaguerreSquare {
    pub n: usize,
    pub beta: Beta,
    pub a: f64,
    pub matrix: Bidiagonal,
}

/// (n+1)×n lower bidiagonal β-Laguerre model M^{β,a}, a > 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaguerreRect {
    pub n: usize,
    pub beta: Beta,
    pub a: f64,
    pub matrix: Bidiagonal,
}

/// Degrees of freedom of L: main (a+n+1-i), super (n-i), i = 1..n.
fn dof_l(n: usize, a: f64) -> (Vec<f64>, Vec<f64>) {
    let main = (1..=n).map(|i| a + (n + 1 - i) as f64).collect();
    let sup = (1..n).map(|i| (n - i) as f64).collect();
    (main, sup)
}

/// Degrees of freedom of M: main (n+1-i), sub (a+n-i), i = 1..n.
fn dof_m(n: usize, a: f64) -> (Vec<f64>, Vec<f64>) {
    let main = (1..=n).map(|i| (n + 1 - i) as f64).collect();
    let sub = (1..=n).map(|i| a + (n - i) as f64).collect();
    (main, sub)
}

fn chi_entries(s: &mut Stream, dof: &[f64], b: f64) -> Result<Vec<f64>> {
    dof.iter().map(|r| Ok(s.chi(r * b)? / b.sqrt())).collect()
}

pub fn sample_laguerre_l(key: StreamKey, n: usize, beta: Beta, a: f64) -> Result<LaguerreSquare> {
    let Beta::Finite(b) = beta else {
        return laguerre_l_inf(n, a);
    };
    check_n(n)?;
    check_param("a", a, -1.0)?;
    let (dm, ds) = dof_l(n, a);
    let mut s = key.stream();
    let main = chi_entries(&mut s, &dm, b)?;
    let sup = chi_entries(&mut s, &ds, b)?;
    Ok(LaguerreSquare {
        n,
        beta,
        a,
        matrix: Bidiagonal::new(n, n, main, sup, Orientation::Upper)?,
    })
}

pub fn laguerre_l_inf(n: usize, a: f64) -> Result<LaguerreSquare> {
    check_n(n)?;
    check_param("a", a, -1.0)?;
    let (dm, ds) = dof_l(n, a);
    let main = dm.iter().map(|r| r.sqrt()).collect();
    let sup = ds.iter().map(|r| r.sqrt()).collect();
    Ok(LaguerreSquare {
        n,
        beta: Beta::Infinite,
        a,
        matrix: Bidiagonal::new(n, n, main, sup, Orientation::Upper)?,
    })
}

pub fn sample_laguerre_m(key: StreamKey, n: usize, beta: Beta, a: f64) -> Result<LaguerreRect> {
    let Beta::Finite(b) = beta else {
        return laguerre_m_inf(n, a);
    };
    check_n(n)?;
    check_param("a", a, 0.0)?;
    let (dm, ds) = dof_m(n, a);
    let mut s = key.stream();
    let main = chi_entries(&mut s, &dm, b)?;
    let sub = chi_entries(&mut s, &ds, b)?;
    Ok(LaguerreRect {
        n,
        beta,
        a,
        matrix: Bidiagonal::new(n + 1, n, main, sub, Orientation::Lower)?,
    })
}

/// M^{∞,a}; a = 0 is allowed here (last entry zero), unlike the random model.
pub fn laguerre_m_inf(n: usize, a: f64) -> Result<LaguerreRect> {
    check_n(n)?;
    if !(a.is_finite() && a >= 0.0) {
        return Err(invalid(format!("a must be >= 0, got {a}")));
    }
    let (dm, ds) = dof_m(n, a);
    let main = dm.iter().map(|r| r.sqrt()).collect();
    let sub = ds.iter().map(|r| r.sqrt()).collect();
    Ok(LaguerreRect {
        n,
        beta: Beta::Infinite,
        a,
        matrix: Bidiagonal::new(n + 1, n, main, sub, Orientation::Lower)?,
    })
}

/// 2n×2n β-Jacobi model in bidiagonal block form.
///
/// Cosines and sines are stored separately (each computed without
/// cancellation) because the hard-edge scaling divides by small sines.
/// Index k of `cos_theta` is θ_{k+1}; index k of `cos_phi` is φ_{k+1}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JacobiModel {
    pub n: usize,
    pub beta: Beta,
    pub a: f64,
    pub b: f64,
    pub theta: Vec<f64>,
    pub phi: Vec<f64>,
    pub cos_theta: Vec<f64>,
    pub sin_theta: Vec<f64>,
    pub cos_phi: Vec<f64>,
    pub sin_phi: Vec<f64>,
    pub b11: Bidiagonal,
    pub b12: Bidiagonal,
    pub b21: Bidiagonal,
    pub b22: Bidiagonal,
}

impl JacobiModel {
    fn from_angles(
        n: usize,
        beta: Beta,
        a: f64,
        b: f64,
        (c, s): (Vec<f64>, Vec<f64>),
        (cp, sp): (Vec<f64>, Vec<f64>),
    ) -> Result<Self> {
        // 1-based accessors with s'_0 = s'_n = 1
        let ci = |i: usize| c[i - 1];
        let si = |i: usize| s[i - 1];
        let cpi = |i: usize| cp[i - 1];
        let spi = |i: usize| if i == 0 || i == n { 1.0 } else { sp[i - 1] };

        let b11_main = (1..=n).map(|j| ci(n + 1 - j) * spi(n + 1 - j)).collect();
        let b11_adj = (1..n).map(|j| -si(n + 1 - j) * cpi(n - j)).collect();
        let b12_main = (1..=n).map(|j| si(n + 1 - j) * spi(n - j)).collect();
        let b12_adj = (1..n).map(|j| ci(n - j) * cpi(n - j)).collect();
        let b21_main = (1..=n).map(|j| -si(n + 1 - j) * spi(n + 1 - j)).collect();
        let b21_adj = (1..n).map(|j| -ci(n + 1 - j) * cpi(n - j)).collect();
        let b22_main = (1..=n).map(|j| ci(n + 1 - j) * spi(n - j)).collect();
        let b22_adj = (1..n).map(|j| -si(n - j) * cpi(n - j)).collect();

        Ok(JacobiModel {
            n,
            beta,
            a,
            b,
            theta: c.iter().zip(&s).map(|(x, y)| y.atan2(*x)).collect(),
            phi: cp.iter().zip(&sp).map(|(x, y)| y.atan2(*x)).collect(),
            b11: Bidiagonal::new(n, n, b11_main, b11_adj, Orientation::Upper)?,
            b12: Bidiagonal::new(n, n, b12_main, b12_adj, Orientation::Lower)?,
            b21: Bidiagonal::new(n, n, b21_main, b21_adj, Orientation::Upper)?,
            b22: Bidiagonal::new(n, n, b22_main, b22_adj, Orientation::Lower)?,
            cos_theta: c,
            sin_theta: s,
            cos_phi: cp,
            sin_phi: sp,
        })
    }

    /// The full 2n×2n orthogonal matrix [[B11, B12], [B21, B22]].
    pub fn assemble(&self) -> DMatrix<f64> {
        let n = self.n;
        let mut x = DMatrix::zeros(2 * n, 2 * n);
        x.view_mut((0, 0), (n, n)).copy_from(&self.b11.to_dense());
        x.view_mut((0, n), (n, n)).copy_from(&self.b12.to_dense());
        x.view_mut((n, 0), (n, n)).copy_from(&self.b21.to_dense());
        x.view_mut((n, n), (n, n)).copy_from(&self.b22.to_dense());
        x
    }
}

fn check_jacobi(n: usize, a: f64, b: f64) -> Result<()> {
    check_n(n)?;
    check_param("a", a, -1.0)?;
    check_param("b", b, -1.0)
}

pub fn sample_jacobi(key: StreamKey, n: usize, beta: Beta, a: f64, b: f64) -> Result<JacobiModel> {
    let Beta::Finite(bt) = beta else {
        return jacobi_inf(n, a, b);
    };
    check_jacobi(n, a, b)?;
    let mut s = key.stream();
    let half = 0.5 * bt;
    let mut c = Vec::with_capacity(n);
    let mut sn = Vec::with_capacity(n);
    for i in 1..=n {
        let (x, y) = s.beta_pair(half * (a + i as f64), half * (b + i as f64))?;
        c.push(x.sqrt());
        sn.push(y.sqrt());
    }
    let mut cp = Vec::with_capacity(n - 1);
    let mut sp = Vec::with_capacity(n - 1);
    for i in 1..n {
        let (x, y) = s.beta_pair(half * i as f64, half * (a + b + 1.0 + i as f64))?;
        cp.push(x.sqrt());
        sp.push(y.sqrt());
    }
    JacobiModel::from_angles(n, beta, a, b, (c, sn), (cp, sp))
}

/// J^{∞,a,b}: c̄_i² = (a+i)/(a+b+2i), c̄'_i² = i/(a+b+1+2i).
pub fn jacobi_inf(n: usize, a: f64, b: f64) -> Result<JacobiModel> {
    check_jacobi(n, a, b)?;
    let (c, s) = (1..=n)
        .map(|i| {
            let i = i as f64;
            let d = a + b + 2.0 * i;
            (((a + i) / d).sqrt(), ((b + i) / d).sqrt())
        })
        .unzip();
    let (cp, sp) = (1..n)
        .map(|i| {
            let i = i as f64;
            let d = a + b + 1.0 + 2.0 * i;
            ((i / d).sqrt(), ((a + b + 1.0 + i) / d).sqrt())
        })
        .unzip();
    JacobiModel::from_angles(n, Beta::Infinite, a, b, (c, s), (cp, sp))
}

/// Any of the four models, tagged for JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum Model {
    Hermite(HermiteModel),
    LaguerreL(LaguerreSquare),
    LaguerreM(LaguerreRect),
    Jacobi(JacobiModel),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eig_dense_sym, eig_tridiag_smallest, sv_bidiag_smallest};
    use crate::testutil::{hermite_poly, jacobi_poly, laguerre_poly, roots_by_scan};

    #[test]
    fn hermite_inf_small() {
        let h = hermite_inf(2).unwrap();
        assert_eq!(h.matrix.diag, vec![0.0, 0.0]);
        assert!((h.matrix.offdiag[0] - 0.5f64.sqrt()).abs() < 1e-16);
        let h = hermite_inf(3).unwrap();
        let ev = eig_dense_sym(&h.to_dense(), false).unwrap().values;
        let r = 1.5f64.sqrt();
        for (e, w) in ev.iter().zip([-r, 0.0, r]) {
            assert!((e - w).abs() < 1e-14);
        }
    }

    #[test]
    fn hermite_inf_eigenvalues_are_hermite_roots() {
        for n in [4, 7, 12] {
            let roots = roots_by_scan(|x| hermite_poly(n, x), -6.0, 6.0, 20_000);
            assert_eq!(roots.len(), n);
            let ev = eig_tridiag_smallest(&hermite_inf(n).unwrap().matrix, n).unwrap();
            for (e, r) in ev.iter().zip(&roots) {
                assert!((e - r).abs() < 1e-10, "n={n}: {e} vs {r}");
            }
        }
    }

    #[test]
    fn laguerre_inf_singular_values_are_laguerre_roots() {
        let l = laguerre_l_inf(1, 2.5).unwrap();
        assert!((l.matrix.main[0] - 3.5f64.sqrt()).abs() < 1e-15);
        for (n, a) in [(3, 0.0), (5, 1.5), (8, -0.5)] {
            let roots = roots_by_scan(|x| laguerre_poly(n, a, x), 0.0, 60.0, 60_000);
            assert_eq!(roots.len(), n);
            let sv = sv_bidiag_smallest(&laguerre_l_inf(n, a).unwrap().matrix, n).unwrap();
            for (s, r) in sv.iter().zip(&roots) {
                assert!((s * s - r).abs() < 1e-10 * r.max(1.0), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn laguerre_m_inf_matches_l_inf() {
        let m = laguerre_m_inf(1, 2.0).unwrap();
        assert_eq!(m.matrix.to_dense().as_slice(), &[1.0, 2f64.sqrt()]);
        let l = sv_bidiag_smallest(&laguerre_l_inf(4, 1.5).unwrap().matrix, 4).unwrap();
        let m = sv_bidiag_smallest(&laguerre_m_inf(4, 1.5).unwrap().matrix, 4).unwrap();
        for (x, y) in l.iter().zip(&m) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn jacobi_inf_rotation_and_roots() {
        let j = jacobi_inf(1, 0.0, 0.0).unwrap();
        let r = 0.5f64.sqrt();
        let x = j.assemble();
        let want = [r, -r, r, r]; // column-major [[c, s], [-s, c]]
        for (a, b) in x.as_slice().iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((j.theta[0] - std::f64::consts::FRAC_PI_4).abs() < 1e-15);

        let (n, a, b) = (3, 1.0, 2.0);
        let roots = roots_by_scan(|x| jacobi_poly(n, a, b, x), -1.0, 1.0, 20_000);
        let mut lam: Vec<f64> = roots.iter().map(|x| (1.0 - x) / 2.0).collect();
        lam.sort_by(f64::total_cmp);
        let j = jacobi_inf(n, a, b).unwrap();
        for blk in [&j.b22, &j.b11] {
            let sv = sv_bidiag_smallest(blk, n).unwrap();
            for (s, l) in sv.iter().zip(&lam) {
                assert!((s * s - l).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn jacobi_is_orthogonal() {
        for beta in [Beta::Finite(2.0), Beta::Finite(0.7), Beta::Infinite] {
            let j = sample_jacobi(StreamKey::new(3, 1), 10, beta, 0.5, -0.3).unwrap();
            let x = j.assemble();
            let e = (x.transpose() * &x - DMatrix::identity(20, 20)).amax();
            assert!(e <= 1e-12, "{beta}: {e}");
        }
    }

    #[test]
    fn parameter_checks() {
        assert!(sample_laguerre_l(StreamKey::new(0, 0), 3, Beta::Finite(1.0), -1.0).is_err());
        assert!(sample_laguerre_m(StreamKey::new(0, 0), 3, Beta::Finite(1.0), 0.0).is_err());
        assert!(hermite_inf(0).is_err());
        assert!(jacobi_inf(2, 0.0, -1.5).is_err());
    }

    #[test]
    fn models_round_trip_through_json() {
        let m = Model::Jacobi(sample_jacobi(StreamKey::new(1, 1), 3, Beta::Finite(2.0), 0.0, 1.0).unwrap());
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.starts_with("{\"model\":\"jacobi\""));
        assert_eq!(serde_json::from_str::<Model>(&s).unwrap(), m);
        let h = Model::Hermite(hermite_inf(3).unwrap());
        let v: serde_json::Value = serde_json::to_value(&h).unwrap();
        assert_eq!(v["beta"], "inf");
    }

    #[test]
    fn infinite_beta_dispatches_to_deterministic_models() {
        let k = StreamKey::new(9, 9);
        assert_eq!(sample_hermite(k, 5, Beta::Infinite).unwrap(), hermite_inf(5).unwrap());
        assert_eq!(
            sample_laguerre_l(k, 5, Beta::Infinite, 0.3).unwrap(),
            laguerre_l_inf(5, 0.3).unwrap()
        );
    }

    #[test]
    fn laguerre_entry_means() {
        // E[(L Lᵀ)_{11}] = E[χ²_{(a+n)β} + χ²_{(n-1)β}]/β = (a+n) + (n-1)
        let (n, a, beta) = (5, 0.0, 1.0);
        let trials = 100_000;
        let mut acc = 0.0;
        for t in 0..trials {
            let l = sample_laguerre_l(StreamKey::new(12, t), n, Beta::Finite(beta), a).unwrap();
            acc += l.matrix.main[0].powi(2) + l.matrix.adjacent[0].powi(2);
        }
        let m = acc / trials as f64;
        assert!((m - (a + n as f64 + n as f64 - 1.0)).abs() < 0.05, "{m}");
    }
}
