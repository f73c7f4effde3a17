//! Finite-difference matrices, edge scalings of the matrix models and the
//! exact identities relating random models to their β = ∞ counterparts.
//!
//! Every scaled model carries its mesh: `h` and the grid points x_i used to
//! read the matrix as a finite difference scheme. Soft-edge models are
//! nonsymmetric tridiagonals (their spectra are real; see
//! [`Tridiagonal::symmetrized`]); hard-edge models are upper bidiagonal.

mod fd;
mod hard;
mod logdec;
mod soft;

pub use fd::{grad, interp, second_diff, FdMatrix};
pub use hard::{fd_approximation_hard, jacobi_hard, laguerre_hard, residual_constant};
pub use logdec::{decompose_hard_edge, hard_edge_noise, log_decompose, HardEdgeNoise, LogDecomposition};
pub use soft::{
    hermite_similarity, hermite_soft, laguerre_shuffle_embed, laguerre_soft, noise_stats_w,
    soft_error, soft_noise, NoiseStats,
};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::beta::Beta;
use crate::ensembles::{LaguerreRect, LaguerreSquare};
use crate::error::{Error, Result};
use crate::linalg::{
    eig_tridiag_nonsym_smallest, eigvec_tridiag_nonsym_log, singular_vectors, sv_bidiag_smallest,
    Bidiagonal, Tridiagonal,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalingKind {
    HermiteSoft,
    LaguerreSoftL,
    LaguerreSoftM,
    LaguerreHardL,
    LaguerreHardM,
    JacobiHard,
}

impl ScalingKind {
    pub fn is_soft(self) -> bool {
        matches!(
            self,
            ScalingKind::HermiteSoft | ScalingKind::LaguerreSoftL | ScalingKind::LaguerreSoftM
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScaledMatrix {
    Tridiagonal(Tridiagonal),
    Bidiagonal(Bidiagonal),
}

impl ScaledMatrix {
    pub fn to_dense(&self) -> DMatrix<f64> {
        match self {
            ScaledMatrix::Tridiagonal(t) => t.to_dense(),
            ScaledMatrix::Bidiagonal(b) => b.to_dense(),
        }
    }

    pub fn as_tridiagonal(&self) -> Option<&Tridiagonal> {
        match self {
            ScaledMatrix::Tridiagonal(t) => Some(t),
            ScaledMatrix::Bidiagonal(_) => None,
        }
    }

    pub fn as_bidiagonal(&self) -> Option<&Bidiagonal> {
        match self {
            ScaledMatrix::Bidiagonal(b) => Some(b),
            ScaledMatrix::Tridiagonal(_) => None,
        }
    }
}

/// Cosines and sines of the Jacobi angles, kept for the hard-edge noise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JacobiAngles {
    pub c: Vec<f64>,
    pub s: Vec<f64>,
    pub cp: Vec<f64>,
    pub sp: Vec<f64>,
}

/// A scaled matrix model together with its mesh.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaledModel {
    pub kind: ScalingKind,
    pub matrix: ScaledMatrix,
    pub h: f64,
    /// Grid points; `grid[0]` is x_0 for the M soft-edge model and x_1 otherwise.
    pub grid: Vec<f64>,
    pub n: usize,
    pub beta: Beta,
    pub a: Option<f64>,
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub angles: Option<JacobiAngles>,
}

impl ScaledModel {
    /// The k smallest eigenvalues (soft edge) or singular values (hard edge).
    pub fn smallest(&self, k: usize) -> Result<Vec<f64>> {
        match &self.matrix {
            ScaledMatrix::Tridiagonal(t) => eig_tridiag_nonsym_smallest(t, k),
            ScaledMatrix::Bidiagonal(b) => sv_bidiag_smallest(b, k),
        }
    }

    /// log|v| and signs of the k-th eigenvector (soft edge) or k-th right
    /// singular vector (hard edge), k 1-based. log|v| is normalized to max 0.
    pub fn log_vector(&self, k: usize) -> Result<(Vec<f64>, Vec<f64>)> {
        let lam = *self.smallest(k)?.last().expect("k >= 1");
        match &self.matrix {
            ScaledMatrix::Tridiagonal(t) => eigvec_tridiag_nonsym_log(t, lam),
            ScaledMatrix::Bidiagonal(b) => {
                let (_, v) = singular_vectors(b, lam)?;
                let top = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                let logv = v.iter().map(|x| (x.abs() / top).ln()).collect();
                let sign = v.iter().map(|x| if *x < 0.0 { -1.0 } else { 1.0 }).collect();
                Ok((logv, sign))
            }
        }
    }

    /// Grid point x_i for the 1-based index i used in the difference formulas.
    pub fn x(&self, i: usize) -> f64 {
        match self.kind {
            ScalingKind::LaguerreSoftM => self.grid[i],
            _ => self.grid[i - 1],
        }
    }
}

/// Borrowed square or rectangular Laguerre model.
#[derive(Clone, Copy, Debug)]
pub enum LaguerreRef<'a> {
    L(&'a LaguerreSquare),
    M(&'a LaguerreRect),
}

impl<'a> From<&'a LaguerreSquare> for LaguerreRef<'a> {
    fn from(m: &'a LaguerreSquare) -> Self {
        LaguerreRef::L(m)
    }
}

impl<'a> From<&'a LaguerreRect> for LaguerreRef<'a> {
    fn from(m: &'a LaguerreRect) -> Self {
        LaguerreRef::M(m)
    }
}

impl LaguerreRef<'_> {
    fn parts(&self) -> (usize, Beta, f64, &Bidiagonal) {
        match self {
            LaguerreRef::L(m) => (m.n, m.beta, m.a, &m.matrix),
            LaguerreRef::M(m) => (m.n, m.beta, m.a, &m.matrix),
        }
    }
}

fn kind_mismatch(want: &str, got: ScalingKind) -> Error {
    Error::InvalidParameter(format!("expected a {want} model, got {got:?}"))
}
