//! Hard-edge scalings:
//!
//! ```text
//! L_hard =  sqrt(2/h) F Ω L^T Ω F,            h = 1/(2n+a+1),   x_i = h(a+i)
//! M_hard = -sqrt(2/h) F_n Ω_n M^T Ω_{n+1} F_{n+1},              x_i = h(a-1+i)
//! J_hard = (1/h) F B22 F,                      h = 1/(2n+a+b+1), x_i = h(a+b+i)
//! ```
//!
//! All three come out upper bidiagonal with a positive diagonal and a
//! negative superdiagonal.

use super::{kind_mismatch, JacobiAngles, LaguerreRef, ScaledMatrix, ScaledModel, ScalingKind};
use crate::ensembles::JacobiModel;
use crate::error::Result;
use crate::linalg::Bidiagonal;

pub fn laguerre_hard<'a>(model: impl Into<LaguerreRef<'a>>) -> Result<ScaledModel> {
    let model = model.into();
    let (n, beta, a, m) = model.parts();
    let h = 1.0 / (2.0 * n as f64 + a + 1.0);
    let s = (2.0 / h).sqrt();
    let (main, sup, kind, offset) = match model {
        // flip of the lower bidiagonal L^T; Ω negates the off-diagonal
        LaguerreRef::L(_) => (
            (1..=n).map(|i| s * m.main[n - i]).collect(),
            (1..n).map(|i| -s * m.adjacent[n - i - 1]).collect(),
            ScalingKind::LaguerreHardL,
            a,
        ),
        // M is lower (n+1)×n: its subdiagonal lands on the diagonal
        LaguerreRef::M(_) => (
            (1..=n).map(|i| s * m.adjacent[n - i]).collect(),
            (1..=n).map(|i| -s * m.main[n - i]).collect(),
            ScalingKind::LaguerreHardM,
            a - 1.0,
        ),
    };
    Ok(ScaledModel {
        kind,
        matrix: ScaledMatrix::Bidiagonal(Bidiagonal::upper(main, sup)?),
        h,
        grid: (1..=2 * n).map(|i| h * (offset + i as f64)).collect(),
        n,
        beta,
        a: Some(a),
        b: None,
        angles: None,
    })
}

pub fn jacobi_hard(model: &JacobiModel) -> Result<ScaledModel> {
    let n = model.n;
    let (a, b) = (model.a, model.b);
    let h = 1.0 / (2.0 * n as f64 + a + b + 1.0);
    let b22 = &model.b22;
    let main = (1..=n).map(|i| b22.main[n - i] / h).collect();
    let sup = (1..n).map(|i| b22.adjacent[n - i - 1] / h).collect();
    Ok(ScaledModel {
        kind: ScalingKind::JacobiHard,
        matrix: ScaledMatrix::Bidiagonal(Bidiagonal::upper(main, sup)?),
        h,
        grid: (1..=2 * n).map(|i| h * (a + b + i as f64)).collect(),
        n,
        beta: model.beta,
        a: Some(a),
        b: Some(b),
        angles: Some(JacobiAngles {
            c: model.cos_theta.clone(),
            s: model.sin_theta.clone(),
            cp: model.cos_phi.clone(),
            sp: model.sin_phi.clone(),
        }),
    })
}

/// The classical finite-difference part:
///
/// ```text
/// Laguerre: -2 diag(sqrt(x_2i)) (1/2h) ∇ + α diag(1/sqrt(x_2i)) S,  α = a (L) or a-1 (M)
/// Jacobi:   -(1/2h) ∇ + (a+1/2) diag(1/x_2i) S
/// ```
pub fn fd_approximation_hard(m: &ScaledModel) -> Result<Bidiagonal> {
    let ScaledMatrix::Bidiagonal(bd) = &m.matrix else {
        return Err(kind_mismatch("hard-edge", m.kind));
    };
    let a = m.a.unwrap_or(0.0);
    let h = m.h;
    let n = m.n;
    let x2 = |i: usize| m.x(2 * i);
    let (diag, off): (Box<dyn Fn(usize) -> f64>, Box<dyn Fn(usize) -> f64>) = match m.kind {
        ScalingKind::LaguerreHardL | ScalingKind::LaguerreHardM => {
            let al = if m.kind == ScalingKind::LaguerreHardM { a - 1.0 } else { a };
            (
                Box::new(move |i| x2(i).sqrt() / h + al / (2.0 * x2(i).sqrt())),
                Box::new(move |i| -x2(i).sqrt() / h + al / (2.0 * x2(i).sqrt())),
            )
        }
        ScalingKind::JacobiHard => (
            Box::new(move |i| 0.5 / h + (a + 0.5) / (2.0 * x2(i))),
            Box::new(move |i| -0.5 / h + (a + 0.5) / (2.0 * x2(i))),
        ),
        k => return Err(kind_mismatch("hard-edge", k)),
    };
    let main = (1..=n).map(&diag).collect();
    let sup = (1..=bd.adjacent.len()).map(&off).collect();
    Bidiagonal::upper(main, sup)
}

/// max |E_ij| / h over rows i ≥ ⌈eps/h⌉, E = A - fd_approximation_hard(A).
/// Bounded in n when the error is uniformly O(h) away from the origin.
pub fn residual_constant(m: &ScaledModel, eps: f64) -> Result<f64> {
    let approx = fd_approximation_hard(m)?;
    let ScaledMatrix::Bidiagonal(bd) = &m.matrix else {
        unreachable!("checked by fd_approximation_hard")
    };
    let first = ((eps / m.h).ceil() as usize).max(1);
    let mut worst: f64 = 0.0;
    for i in first..=m.n {
        worst = worst.max((bd.main[i - 1] - approx.main[i - 1]).abs());
        if i <= bd.adjacent.len() {
            worst = worst.max((bd.adjacent[i - 1] - approx.adjacent[i - 1]).abs());
        }
    }
    Ok(worst / m.h)
}
