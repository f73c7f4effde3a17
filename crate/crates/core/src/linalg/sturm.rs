//! Sturm-sequence bisection and inverse iteration on tridiagonal matrices
//! given by their diagonal and squared off-diagonal.

use crate::error::{Error, Result};

/// Number of eigenvalues strictly less than `x`.
pub(crate) fn count_below(diag: &[f64], e2: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - x;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        q = diag[i] - x - e2[i - 1] / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

pub(crate) fn pivmin(e2: &[f64]) -> f64 {
    let m = e2.iter().cloned().fold(1.0f64, f64::max);
    f64::MIN_POSITIVE * m
}

/// Gershgorin interval containing the spectrum.
pub(crate) fn gershgorin(diag: &[f64], e2: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += e2[i - 1].sqrt();
        }
        if i + 1 < n {
            r += e2[i].sqrt();
        }
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let pad = 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + f64::MIN_POSITIVE;
    (lo - pad, hi + pad)
}

/// Bisection for the eigenvalues with ascending indices `first..first+k`
/// (0-based). `count` maps x to the number of eigenvalues below x.
pub(crate) fn bisect_ascending<F>(count: F, lo: f64, hi: f64, first: usize, k: usize) -> Vec<f64>
where
    F: Fn(f64) -> usize,
{
    // upper[j]: smallest point seen so far known to have more than first+j eigenvalues below
    let mut upper = vec![hi; k];
    let mut out = Vec::with_capacity(k);
    let mut floor = lo;
    for j in 0..k {
        let target = first + j + 1;
        let mut a = floor;
        let mut b = upper[j];
        loop {
            let mid = 0.5 * (a + b);
            let tol = 2.0 * f64::EPSILON * a.abs().max(b.abs()) + 2.0 * f64::MIN_POSITIVE;
            if b - a <= tol || mid <= a || mid >= b {
                break;
            }
            let c = count(mid);
            if c >= target {
                b = mid;
            } else {
                a = mid;
            }
            // record information useful for later eigenvalues
            for (jj, u) in upper.iter_mut().enumerate().skip(j + 1) {
                if c > first + jj && mid < *u {
                    *u = mid;
                }
            }
        }
        let v = 0.5 * (a + b);
        out.push(v);
        floor = a;
    }
    out
}

/// LU factorization with partial pivoting of a general tridiagonal matrix,
/// in the layout of LAPACK's dgttrf.
pub(crate) struct TridiagLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagLu {
    /// Factorizes; exactly zero pivots are replaced by `tiny` so the
    /// factorization can be used for inverse iteration.
    pub(crate) fn new(mut dl: Vec<f64>, mut d: Vec<f64>, mut du: Vec<f64>, tiny: f64) -> Self {
        let n = d.len();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let f = dl[i] / d[i];
                dl[i] = f;
                d[i + 1] -= f * du[i];
            } else {
                let f = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = f;
                let tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - f * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -f;
                }
                swapped[i] = true;
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        TridiagLu {
            dl,
            d,
            du,
            du2,
            swapped,
        }
    }

    pub(crate) fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.dl[i] * b[i];
        }
        b[n - 1] /= self.d[n - 1];
        if n >= 2 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if nrm > 0.0 {
        v.iter_mut().for_each(|x| *x /= nrm);
    }
    nrm
}

/// Inverse iteration for the eigenvector of the symmetric tridiagonal
/// (diag, off) belonging to `lambda`.
pub(crate) fn inverse_iteration(diag: &[f64], off: &[f64], lambda: f64) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 1 {
        return Ok(vec![1.0]);
    }
    let norm = diag
        .iter()
        .enumerate()
        .map(|(i, d)| {
            d.abs() + if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 }
        })
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let tol = 1e-10 * norm;
    for restart in 0..3 {
        let shift = lambda + (restart as f64) * 1e3 * f64::EPSILON * norm;
        let lu = TridiagLu::new(
            off.to_vec(),
            diag.iter().map(|d| d - shift).collect(),
            off.to_vec(),
            f64::EPSILON * norm,
        );
        // deterministic, non-degenerate start vector
        let mut v: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.5 * ((i as f64 + 1.0) * 0.754_877_666).sin())
            .collect();
        normalize(&mut v);
        for _ in 0..8 {
            lu.solve_in_place(&mut v);
            if v.iter().any(|x| !x.is_finite()) {
                break;
            }
            normalize(&mut v);
            let r = residual(diag, off, lambda, &v);
            if r <= tol {
                return Ok(v);
            }
        }
    }
    Err(Error::NonConvergence(format!(
        "inverse iteration for eigenvalue {lambda} did not converge"
    )))
}

pub(crate) fn residual(diag: &[f64], off: &[f64], lambda: f64, v: &[f64]) -> f64 {
    let n = diag.len();
    let mut s = 0.0;
    for i in 0..n {
        let mut r = (diag[i] - lambda) * v[i];
        if i > 0 {
            r += off[i - 1] * v[i - 1];
        }
        if i + 1 < n {
            r += off[i] * v[i + 1];
        }
        s += r * r;
    }
    s.sqrt()
}
