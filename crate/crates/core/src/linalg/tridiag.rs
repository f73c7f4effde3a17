use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::sturm::{bisect_ascending, count_below, gershgorin, inverse_iteration, pivmin};
use crate::error::{invalid, Error, Result};

/// Symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::Shape(format!(
                "tridiagonal needs n >= 1 diagonal and n - 1 off-diagonal entries, got {} and {}",
                diag.len(),
                offdiag.len()
            )));
        }
        if diag.iter().chain(&offdiag).any(|x| !x.is_finite()) {
            return Err(invalid("tridiagonal entries must be finite"));
        }
        Ok(SymTridiagonal { diag, offdiag })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Max absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut r = self.diag[i].abs();
                if i > 0 {
                    r += self.offdiag[i - 1].abs();
                }
                if i + 1 < n {
                    r += self.offdiag[i].abs();
                }
                r
            })
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
            if i + 1 < n {
                m[(i, i + 1)] = self.offdiag[i];
                m[(i + 1, i)] = self.offdiag[i];
            }
        }
        m
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.offdiag[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.offdiag[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    fn e2(&self) -> Vec<f64> {
        self.offdiag.iter().map(|e| e * e).collect()
    }

    pub fn count_below(&self, x: f64) -> usize {
        let e2 = self.e2();
        count_below(&self.diag, &e2, x, pivmin(&e2))
    }
}

/// Real tridiagonal matrix with separate sub- and super-diagonals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tridiagonal {
    /// entries (i+1, i)
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    /// entries (i, i+1)
    pub sup: Vec<f64>,
}

impl Tridiagonal {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || sub.len() + 1 != diag.len() || sup.len() + 1 != diag.len() {
            return Err(Error::Shape(format!(
                "tridiagonal with {} diagonal entries needs {} sub/super entries, got {} and {}",
                diag.len(),
                diag.len().saturating_sub(1),
                sub.len(),
                sup.len()
            )));
        }
        Ok(Tridiagonal { sub, diag, sup })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
            if i + 1 < n {
                m[(i, i + 1)] = self.sup[i];
                m[(i + 1, i)] = self.sub[i];
            }
        }
        m
    }

    pub fn from_symmetric(t: &SymTridiagonal) -> Self {
        Tridiagonal {
            sub: t.offdiag.clone(),
            diag: t.diag.clone(),
            sup: t.offdiag.clone(),
        }
    }

    /// Products sub_i·sup_i, which must be positive for the matrix to be
    /// diagonally similar to a symmetric one.
    fn e2(&self) -> Result<Vec<f64>> {
        let e2: Vec<f64> = self.sub.iter().zip(&self.sup).map(|(a, c)| a * c).collect();
        if e2.iter().any(|p| !(*p > 0.0)) {
            return Err(invalid(
                "off-diagonal products must be positive for a symmetrizable tridiagonal",
            ));
        }
        Ok(e2)
    }

    /// Diagonal similarity to a symmetric tridiagonal: returns (T, log_s)
    /// with T = S A S^{-1}, S = diag(exp(log_s)), log_s[0] = 0.
    ///
    /// An eigenvector w of T maps back to v = S^{-1} w for A. The scaling is
    /// kept in log form because it overflows for large n.
    pub fn symmetrized(&self) -> Result<(SymTridiagonal, Vec<f64>)> {
        let e2 = self.e2()?;
        let n = self.n();
        let mut log_s = vec![0.0; n];
        for i in 0..n - 1 {
            log_s[i + 1] = log_s[i] + 0.5 * (self.sup[i].abs().ln() - self.sub[i].abs().ln());
        }
        let off = e2
            .iter()
            .zip(&self.sup)
            .map(|(p, c)| c.signum() * p.sqrt())
            .collect();
        Ok((SymTridiagonal::new(self.diag.clone(), off)?, log_s))
    }
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(invalid(format!("requested {k} eigenvalues of an order-{n} matrix")));
    }
    Ok(())
}

fn smallest_from_e2(diag: &[f64], e2: &[f64], k: usize) -> Result<Vec<f64>> {
    check_k(k, diag.len())?;
    let pm = pivmin(e2);
    let (lo, hi) = gershgorin(diag, e2);
    Ok(bisect_ascending(|x| count_below(diag, e2, x, pm), lo, hi, 0, k))
}

/// The k smallest eigenvalues, ascending, by Sturm bisection. O(nk) time.
pub fn eig_tridiag_smallest(t: &SymTridiagonal, k: usize) -> Result<Vec<f64>> {
    smallest_from_e2(&t.diag, &t.e2(), k)
}

/// The k largest eigenvalues, descending.
pub fn eig_tridiag_largest(t: &SymTridiagonal, k: usize) -> Result<Vec<f64>> {
    let neg: Vec<f64> = t.diag.iter().map(|d| -d).collect();
    Ok(smallest_from_e2(&neg, &t.e2(), k)?
        .into_iter()
        .map(|x| -x)
        .collect())
}

/// k smallest eigenvalues of a tridiagonal matrix whose off-diagonal
/// products are positive (real spectrum, same as its symmetrization).
pub fn eig_tridiag_nonsym_smallest(t: &Tridiagonal, k: usize) -> Result<Vec<f64>> {
    smallest_from_e2(&t.diag, &t.e2()?, k)
}

/// Unit eigenvector for the computed eigenvalue `lambda` by inverse iteration.
pub fn eigvec_tridiag(t: &SymTridiagonal, lambda: f64) -> Result<Vec<f64>> {
    inverse_iteration(&t.diag, &t.offdiag, lambda)
}

/// Eigenvector of a symmetrizable nonsymmetric tridiagonal as
/// (log|v_i|, sign(v_i)), normalized so that max log|v_i| = 0.
pub fn eigvec_tridiag_nonsym_log(t: &Tridiagonal, lambda: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let (sym, log_s) = t.symmetrized()?;
    let w = eigvec_tridiag(&sym, lambda)?;
    let mut logv: Vec<f64> = w
        .iter()
        .zip(&log_s)
        .map(|(x, s)| x.abs().ln() - s)
        .collect();
    let top = logv.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    logv.iter_mut().for_each(|x| *x -= top);
    let sign = w.iter().map(|x| if *x < 0.0 { -1.0 } else { 1.0 }).collect();
    Ok((logv, sign))
}
