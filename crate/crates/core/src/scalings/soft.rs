//! Soft-edge scalings. With h the mesh size the scaled models are
//!
//! ```text
//! H_soft = -sqrt(2/h) (D H D^-1 - sqrt(2) h^(-3/2) I),           h = n^(-1/3)
//! L_soft = -sqrt(2/h) (D P^T [0 L^T; L 0] P D^-1 - sqrt(2) h^(-3/2) I),  h = (2n)^(-1/3)
//! ```
//!
//! and similarly for M. Entries are computed in the reduced form
//! diag = 2/h² - sqrt(2/h) d_i, super = -1/h², sub = -2h q_i, where q_i is the
//! product of the two original off-diagonal entries. At β = ∞ the q_i are
//! taken from their exact (integer or half-integer) values, so that the
//! finite-difference error matrix is computed without spurious rounding.

use serde::{Deserialize, Serialize};

use super::{kind_mismatch, LaguerreRef, ScaledMatrix, ScaledModel, ScalingKind};
use crate::beta::Beta;
use crate::ensembles::HermiteModel;
use crate::error::{invalid, Error, Result};
use crate::linalg::Tridiagonal;

/// Squared Hermite off-diagonal entries q_i = h_{i,i+1}².
fn hermite_q(model: &HermiteModel) -> Vec<f64> {
    let n = model.n;
    match model.beta {
        Beta::Infinite => (1..n).map(|i| (n - i) as f64 / 2.0).collect(),
        Beta::Finite(_) => model.matrix.offdiag.iter().map(|x| x * x).collect(),
    }
}

/// D H D^-1 with constant superdiagonal sqrt(n/2) (= sqrt(βn)/sqrt(2β)).
pub fn hermite_similarity(model: &HermiteModel) -> Result<Tridiagonal> {
    let n = model.n;
    if n < 2 {
        return Err(invalid("similarity needs n >= 2"));
    }
    let c = (n as f64 / 2.0).sqrt();
    let sub = hermite_q(model).iter().map(|q| q / c).collect();
    Tridiagonal::new(sub, model.matrix.diag.clone(), vec![c; n - 1])
}

fn reduced(h: f64, inv_h2: f64, d: &[f64], q: &[f64]) -> Result<Tridiagonal> {
    let s = (2.0 / h).sqrt();
    let diag = d.iter().map(|x| 2.0 * inv_h2 - s * x).collect();
    let sub = q.iter().map(|x| -2.0 * h * x).collect();
    Tridiagonal::new(sub, diag, vec![-inv_h2; q.len()])
}

pub fn hermite_soft(model: &HermiteModel) -> Result<ScaledModel> {
    let n = model.n;
    if n < 2 {
        return Err(invalid("soft-edge scaling needs n >= 2"));
    }
    let h = (n as f64).cbrt().recip();
    let inv_h2 = n as f64 * h;
    let t = reduced(h, inv_h2, &model.matrix.diag, &hermite_q(model))?;
    Ok(ScaledModel {
        kind: ScalingKind::HermiteSoft,
        matrix: ScaledMatrix::Tridiagonal(t),
        h,
        grid: (1..=n).map(|i| h * i as f64).collect(),
        n,
        beta: model.beta,
        a: None,
        b: None,
        angles: None,
    })
}

/// Squares of the Golub–Kahan off-diagonal [m_1, a_1, m_2, a_2, ...].
fn laguerre_t2(model: LaguerreRef<'_>) -> Vec<f64> {
    let (n, beta, a, b) = model.parts();
    if beta.is_infinite() {
        let mut t2 = Vec::with_capacity(2 * n);
        for i in 1..=n {
            let (main, adj) = match model {
                LaguerreRef::L(_) => (a + (n + 1 - i) as f64, (n - i) as f64),
                LaguerreRef::M(_) => ((n + 1 - i) as f64, a + (n - i) as f64),
            };
            t2.push(main);
            if i < n || matches!(model, LaguerreRef::M(_)) {
                t2.push(adj);
            }
        }
        t2
    } else {
        b.golub_kahan_offdiag().iter().map(|x| x * x).collect()
    }
}

/// Shuffled embedding after the diagonal similarity that makes the
/// superdiagonal constant sqrt(n): zero diagonal, subdiagonal t_j²/sqrt(n).
/// Its eigenvalues are ± the singular values of the model (plus a zero for M).
pub fn laguerre_shuffle_embed<'a>(model: impl Into<LaguerreRef<'a>>) -> Result<Tridiagonal> {
    let model = model.into();
    let t2 = laguerre_t2(model);
    let c = (model.parts().0 as f64).sqrt();
    let m = t2.len();
    Tridiagonal::new(t2.iter().map(|x| x / c).collect(), vec![0.0; m + 1], vec![c; m])
}

pub fn laguerre_soft<'a>(model: impl Into<LaguerreRef<'a>>) -> Result<ScaledModel> {
    let model = model.into();
    let (n, beta, a, _) = model.parts();
    let h = ((2 * n) as f64).cbrt().recip();
    let inv_h2 = (2 * n) as f64 * h;
    let t2 = laguerre_t2(model);
    let t = reduced(h, inv_h2, &vec![0.0; t2.len() + 1], &t2)?;
    let (kind, first) = match model {
        LaguerreRef::L(_) => (ScalingKind::LaguerreSoftL, 1),
        LaguerreRef::M(_) => (ScalingKind::LaguerreSoftM, 0),
    };
    Ok(ScaledModel {
        kind,
        matrix: ScaledMatrix::Tridiagonal(t),
        h,
        grid: (first..=2 * n).map(|i| h * i as f64).collect(),
        n,
        beta,
        a: Some(a),
        b: None,
        angles: None,
    })
}

fn soft_parts(m: &ScaledModel) -> Result<(&Tridiagonal, f64)> {
    let (ScaledMatrix::Tridiagonal(t), true) = (&m.matrix, m.kind.is_soft()) else {
        return Err(kind_mismatch("soft-edge", m.kind));
    };
    let inv_h2 = match m.kind {
        ScalingKind::HermiteSoft => m.n as f64 * m.h,
        _ => (2 * m.n) as f64 * m.h,
    };
    Ok((t, inv_h2))
}

/// E = A - (Δ/h² + diag_{-1}(x)), where the subdiagonal entry (j+1, j)
/// pairs with x_j (x_{j-1} for the M model, whose grid starts at x_0).
pub fn soft_error(m: &ScaledModel) -> Result<Tridiagonal> {
    let (t, inv_h2) = soft_parts(m)?;
    let h = m.h;
    // -1/h² + x_j written as h (j - h^-3) so that it is a single rounding
    let h3 = match m.kind {
        ScalingKind::HermiteSoft => m.n,
        _ => 2 * m.n,
    } as f64;
    let shift = if m.kind == ScalingKind::LaguerreSoftM { 1.0 } else { 0.0 };
    let sub = t
        .sub
        .iter()
        .enumerate()
        .map(|(k, v)| v - h * ((k + 1) as f64 - shift - h3))
        .collect();
    let diag = t.diag.iter().map(|v| v - 2.0 * inv_h2).collect();
    let sup = t.sup.iter().map(|v| v + inv_h2).collect();
    Tridiagonal::new(sub, diag, sup)
}

/// W = (sqrt(β)/2)(A^β - A^∞) for two soft-edge models of the same kind.
pub fn soft_noise(random: &ScaledModel, classical: &ScaledModel) -> Result<Tridiagonal> {
    let (x, _) = soft_parts(random)?;
    let (y, _) = soft_parts(classical)?;
    let Beta::Finite(beta) = random.beta else {
        return Err(invalid("noise matrix needs a finite-β model"));
    };
    if random.kind != classical.kind || x.n() != y.n() || !classical.beta.is_infinite() {
        return Err(Error::Shape(
            "noise needs a finite-β model and the β = ∞ model of the same kind and size".into(),
        ));
    }
    let f = 0.5 * beta.sqrt();
    let diff = |p: &[f64], q: &[f64]| -> Vec<f64> {
        p.iter().zip(q).map(|(u, v)| f * (u - v)).collect()
    };
    Tridiagonal::new(diff(&x.sub, &y.sub), diff(&x.diag, &y.diag), diff(&x.sup, &y.sup))
}

/// Per-entry sample mean and standard deviation of `scale`·W.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseStats {
    pub samples: usize,
    pub diag_mean: Vec<f64>,
    pub diag_sd: Vec<f64>,
    pub sub_mean: Vec<f64>,
    pub sub_sd: Vec<f64>,
}

/// With `scale` = sqrt(2h) for the Hermite model (sqrt(h) for Laguerre),
/// scaled diagonal entries are -G_i and scaled subdiagonal entries -χ̃².
pub fn noise_stats_w(ws: &[Tridiagonal], scale: f64) -> Result<NoiseStats> {
    let Some(first) = ws.first() else {
        return Err(invalid("no noise samples"));
    };
    if ws.len() < 2 {
        return Err(invalid("need at least two noise samples"));
    }
    let n = first.n();
    if ws.iter().any(|w| w.n() != n) {
        return Err(Error::Shape("noise samples differ in size".into()));
    }
    let moments = |pick: fn(&Tridiagonal) -> &[f64], len: usize| {
        let mut mean = vec![0.0; len];
        let mut m2 = vec![0.0; len];
        for (k, w) in ws.iter().enumerate() {
            for (i, v) in pick(w).iter().enumerate() {
                // Welford update
                let x = scale * v;
                let d = x - mean[i];
                mean[i] += d / (k + 1) as f64;
                m2[i] += d * (x - mean[i]);
            }
        }
        let sd = m2.iter().map(|s| (s / (ws.len() - 1) as f64).sqrt()).collect();
        (mean, sd)
    };
    let (diag_mean, diag_sd) = moments(|w| &w.diag, n);
    let (sub_mean, sub_sd) = moments(|w| &w.sub, n - 1);
    Ok(NoiseStats {
        samples: ws.len(),
        diag_mean,
        diag_sd,
        sub_mean,
        sub_sd,
    })
}
