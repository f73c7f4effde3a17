//! For two upper bidiagonals A, B with the same sign pattern,
//! A = e^{D_even} B e^{-D_odd} where
//!
//! ```text
//! g_{2i-1} = -log|a_ii| + log|b_ii|,   g_{2i} = log|a_{i,i+1}| - log|b_{i,i+1}|,
//! d_i = Σ_{k ≥ i} g_k,  D_odd = diag(d_1, d_3, ...),  D_even = diag(d_2, d_4, ...).
//! ```

use serde::{Deserialize, Serialize};

use super::{kind_mismatch, ScaledMatrix, ScaledModel, ScalingKind};
use crate::beta::Beta;
use crate::error::{invalid, Error, Result};
use crate::linalg::{Bidiagonal, Orientation};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogDecomposition {
    /// d_2, d_4, ..., d_2n (d_2n = 0 for square matrices)
    pub d_even: Vec<f64>,
    /// d_1, d_3, ... (n entries, or n + 1 with d_{2n+1} = 0 for n×(n+1))
    pub d_odd: Vec<f64>,
    /// g_1, g_2, ... (2n - 1 entries, or 2n for n×(n+1))
    pub g: Vec<f64>,
    /// Scaled noise g̃, filled by [`decompose_hard_edge`]; empty otherwise.
    pub g_tilde: Vec<f64>,
}

impl LogDecomposition {
    /// d_i for 1-based i; zero past the end.
    pub fn d(&self, i: usize) -> f64 {
        let v = if i.is_multiple_of(2) { &self.d_even } else { &self.d_odd };
        v.get((i - 1) / 2).copied().unwrap_or(0.0)
    }

    /// e^{D_even} B e^{-D_odd}.
    pub fn reconstruct(&self, b: &Bidiagonal) -> Result<Bidiagonal> {
        check_upper(b)?;
        if b.main.len() != self.d_even.len() || b.cols != self.d_odd.len() {
            return Err(Error::Shape("decomposition does not match matrix".into()));
        }
        let main = (0..b.main.len())
            .map(|i| (self.d_even[i] - self.d_odd[i]).exp() * b.main[i])
            .collect();
        let adj = (0..b.adjacent.len())
            .map(|i| (self.d_even[i] - self.d_odd[i + 1]).exp() * b.adjacent[i])
            .collect();
        Bidiagonal::new(b.rows, b.cols, main, adj, Orientation::Upper)
    }
}

fn check_upper(b: &Bidiagonal) -> Result<()> {
    if b.orientation != Orientation::Upper {
        return Err(Error::Shape("log decomposition needs upper bidiagonal matrices".into()));
    }
    Ok(())
}

pub fn log_decompose(a: &Bidiagonal, b: &Bidiagonal) -> Result<LogDecomposition> {
    check_upper(a)?;
    check_upper(b)?;
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(Error::Shape(format!(
            "shapes differ: {}x{} vs {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut g = Vec::with_capacity(a.main.len() + a.adjacent.len());
    for (k, (x, y)) in a.golub_kahan_offdiag().iter().zip(b.golub_kahan_offdiag()).enumerate() {
        if *x == 0.0 || y == 0.0 {
            return Err(invalid(format!("zero entry at bidiagonal position {}", k + 1)));
        }
        if x.signum() != y.signum() {
            return Err(invalid(format!("sign patterns differ at position {}", k + 1)));
        }
        let r = x.abs().ln() - y.abs().ln();
        g.push(if k % 2 == 0 { -r } else { r });
    }
    // d has one more entry than g; the last one is the empty sum
    let mut d = vec![0.0; g.len() + 1];
    for k in (0..g.len()).rev() {
        d[k] = d[k + 1] + g[k];
    }
    let d_odd = d.iter().step_by(2).cloned().collect();
    let d_even = d.iter().skip(1).step_by(2).cloned().collect();
    Ok(LogDecomposition {
        d_even,
        d_odd,
        g,
        g_tilde: Vec::new(),
    })
}

/// Noise read off a hard-edge log decomposition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HardEdgeNoise {
    /// g̃_i, a discretization of white noise times sqrt(h)
    pub g_tilde: Vec<f64>,
    /// e^{d_i} recomputed from g̃ (plus the remainder for Jacobi); discretizes ψ
    /// (ψ^{√2} for Jacobi)
    pub exp_d: Vec<f64>,
    /// Jacobi remainder R_i; empty for Laguerre models
    pub remainder: Vec<f64>,
}

/// β = ∞ Jacobi cosines/sines, 1-based.
fn bar(n: usize, a: f64, b: f64) -> impl Fn(usize) -> (f64, f64, f64, f64) {
    move |i| {
        let f = i as f64;
        let d = a + b + 2.0 * f;
        let dp = a + b + 1.0 + 2.0 * f;
        let (cp, sp) = if i < n {
            ((f / dp).sqrt(), ((a + b + 1.0 + f) / dp).sqrt())
        } else {
            (1.0, 1.0)
        };
        (((a + f) / d).sqrt(), ((b + f) / d).sqrt(), cp, sp)
    }
}

/// g̃ and e^{d_i} for the decomposition of a random hard-edge model against
/// its β = ∞ counterpart.
///
/// Laguerre: g̃_i = -sqrt(βx_i/h) g_i and
/// e^{d_i} = exp(-(1/sqrt β) Σ_{k≥i} x_k^{-1/2} g̃_k sqrt h).
///
/// Jacobi: g̃_{2i-1} = -sqrt(βx/2h)·½Δlog tan²θ_i,
/// g̃_{2i} = sqrt(βx/2h)·½Δlog tan²θ'_i and
/// e^{d_i} = exp(-sqrt(2/β) Σ_{k≥i} x_k^{-1/2} g̃_k sqrt h + R_i),
/// Δ meaning the difference from the β = ∞ value.
pub fn hard_edge_noise(decomp: &LogDecomposition, scaled: &ScaledModel) -> Result<HardEdgeNoise> {
    let m = decomp.g.len();
    let n = scaled.n;
    let want = match scaled.kind {
        ScalingKind::LaguerreHardL | ScalingKind::JacobiHard => 2 * n - 1,
        ScalingKind::LaguerreHardM => 2 * n,
        k => return Err(kind_mismatch("hard-edge", k)),
    };
    if m != want || !matches!(scaled.matrix, ScaledMatrix::Bidiagonal(_)) {
        return Err(Error::Shape(format!(
            "decomposition has {m} terms, {:?} model needs {want}",
            scaled.kind
        )));
    }
    let Beta::Finite(beta) = scaled.beta else {
        return Ok(HardEdgeNoise {
            g_tilde: vec![0.0; m],
            exp_d: vec![1.0; m],
            remainder: if scaled.kind == ScalingKind::JacobiHard { vec![0.0; m] } else { Vec::new() },
        });
    };
    let h = scaled.h;
    let x = |k: usize| scaled.x(k);

    if scaled.kind != ScalingKind::JacobiHard {
        let g_tilde: Vec<f64> = (1..=m).map(|k| -(beta * x(k) / h).sqrt() * decomp.g[k - 1]).collect();
        let exp_d = suffix(&g_tilde, |k, gt| -gt * h.sqrt() / (beta.sqrt() * x(k).sqrt()))
            .into_iter()
            .map(f64::exp)
            .collect();
        return Ok(HardEdgeNoise {
            g_tilde,
            exp_d,
            remainder: Vec::new(),
        });
    }

    let ang = scaled
        .angles
        .as_ref()
        .ok_or_else(|| invalid("Jacobi scaled model lacks its angles"))?;
    let (a, b) = (scaled.a.unwrap_or(0.0), scaled.b.unwrap_or(0.0));
    let bar = bar(n, a, b);
    // Δlog of c_i, s_i, c'_i, s'_i (1-based; primes vanish at i = 0 and i = n)
    let dc = |i: usize| ang.c[i - 1].ln() - bar(i).0.ln();
    let ds = |i: usize| ang.s[i - 1].ln() - bar(i).1.ln();
    let dcp = |i: usize| if i == 0 || i == n { 0.0 } else { ang.cp[i - 1].ln() - bar(i).2.ln() };
    let dsp = |i: usize| if i == 0 || i == n { 0.0 } else { ang.sp[i - 1].ln() - bar(i).3.ln() };

    let g_tilde: Vec<f64> = (1..=m)
        .map(|k| {
            let w = (beta * x(k) / (2.0 * h)).sqrt();
            let j = k.div_ceil(2);
            if k % 2 == 1 {
                -w * (ds(j) - dc(j))
            } else {
                w * (dsp(j) - dcp(j))
            }
        })
        .collect();
    let remainder: Vec<f64> = (1..=m)
        .map(|i| {
            let j = i.div_ceil(2);
            if i % 2 == 1 {
                -dsp(j - 1) - ds(n)
            } else {
                ds(j) - ds(n)
            }
        })
        .collect();
    let sums = suffix(&g_tilde, |k, gt| -(2.0 / beta).sqrt() * gt * h.sqrt() / x(k).sqrt());
    let exp_d = sums.iter().zip(&remainder).map(|(s, r)| (s + r).exp()).collect();
    Ok(HardEdgeNoise {
        g_tilde,
        exp_d,
        remainder,
    })
}

/// Suffix sums Σ_{k≥i} term(k, v_k), 1-based k.
fn suffix(v: &[f64], term: impl Fn(usize, f64) -> f64) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    let mut acc = 0.0;
    for k in (0..v.len()).rev() {
        acc += term(k + 1, v[k]);
        out[k] = acc;
    }
    out
}

/// Log decomposition of a random hard-edge model against its β = ∞
/// counterpart, with g̃ filled in.
pub fn decompose_hard_edge(random: &ScaledModel, classical: &ScaledModel) -> Result<LogDecomposition> {
    if random.kind != classical.kind || random.n != classical.n || !classical.beta.is_infinite() {
        return Err(Error::Shape(
            "need a random model and the β = ∞ model of the same kind and size".into(),
        ));
    }
    let (ScaledMatrix::Bidiagonal(x), ScaledMatrix::Bidiagonal(y)) = (&random.matrix, &classical.matrix)
    else {
        return Err(kind_mismatch("hard-edge", random.kind));
    };
    let mut d = log_decompose(x, y)?;
    d.g_tilde = hard_edge_noise(&d, random)?.g_tilde;
    Ok(d)
}
