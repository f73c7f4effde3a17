//! The stochastic Airy and Bessel operators: classical spectra, the
//! conjugating path functionals φ and ψ, and Rayleigh–Ritz discretizations.
//!
//! ```text
//! A^β = -d²/dx² + x + (2/√β) B'            on (0, ∞),  v(0) = 0
//! J̃_a^β = ψ^√2 (-d/dx + (a+1/2)/x) ψ^-√2   on (0, 1)
//! φ(x) = exp((2/√β) ∫_0^x B(y) dy),   ψ(x) = exp(-(1/√β) ∫_x^1 w^(-1/2) dB(w))
//! ```

mod airy;
mod bessel;

pub use airy::{airy_basis, build_airy_k, stochastic_airy_min_eig, AiryRayleighRitz};
pub use bessel::{build_bessel_km, stochastic_bessel_min_sv, BesselRayleighRitz};

use serde::{Deserialize, Serialize};

use crate::beta::Beta;
use crate::error::{invalid, Result};
use crate::randsrc::{brownian_path, uniform_grid, BrownianPath, StreamKey};
use crate::specfun::{zeros, ZeroKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryCondition {
    /// v(1) = 0; singular values are the zeros of J_a
    TypeI,
    /// singular values are the zeros of J_{a+1}
    TypeII,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayleighRitzConfig {
    pub basis_size: usize,
    pub mesh: f64,
    pub left: f64,
    pub right: f64,
    pub beta: Beta,
    /// Bessel order; ignored by the Airy operator
    pub a: f64,
    pub bc: BoundaryCondition,
}

impl RayleighRitzConfig {
    /// 150 basis functions, mesh 0.05 on (0, 86.9).
    pub fn airy(beta: Beta) -> Self {
        RayleighRitzConfig {
            basis_size: 150,
            mesh: 0.05,
            left: 0.0,
            right: 86.9,
            beta,
            a: 0.0,
            bc: BoundaryCondition::TypeI,
        }
    }

    /// 75 basis functions, mesh 0.001 on (0, 1), type (i).
    pub fn bessel(beta: Beta, a: f64) -> Self {
        RayleighRitzConfig {
            basis_size: 75,
            mesh: 0.001,
            left: 0.0,
            right: 1.0,
            beta,
            a,
            bc: BoundaryCondition::TypeI,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.basis_size == 0 {
            return Err(invalid("basis size must be at least 1"));
        }
        if !(self.mesh > 0.0 && self.right > self.left && self.left >= 0.0) {
            return Err(invalid(format!(
                "need mesh > 0 and 0 <= left < right, got mesh {} on ({}, {})",
                self.mesh, self.left, self.right
            )));
        }
        if !(self.a > -1.0 && self.a.is_finite()) {
            return Err(invalid(format!("Bessel order must be > -1, got {}", self.a)));
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Vec<f64>> {
        self.validate()?;
        uniform_grid(self.left, self.right, self.mesh)
    }

    /// The Brownian path for one sample; identically zero at β = ∞.
    pub fn path(&self, key: StreamKey) -> Result<BrownianPath> {
        let grid = self.grid()?;
        if self.beta.is_infinite() {
            BrownianPath::zero(grid)
        } else {
            brownian_path(key, &grid)
        }
    }
}

/// λ_j = -ζ_j, the eigenvalues of -d²/dx² + x with v(0) = 0.
pub fn classical_airy_eigs(k: usize) -> Result<Vec<f64>> {
    Ok(zeros(ZeroKind::AiryAi, k)?.zeros.iter().map(|z| -z).collect())
}

pub fn classical_bessel_svs(a: f64, bc: BoundaryCondition, k: usize) -> Result<Vec<f64>> {
    let order = match bc {
        BoundaryCondition::TypeI => a,
        BoundaryCondition::TypeII => a + 1.0,
    };
    Ok(zeros(ZeroKind::BesselJ(order), k)?.zeros)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiPath {
    pub path: BrownianPath,
    pub phi_values: Vec<f64>,
}

/// log φ(x) = (2/√β) ∫_0^x B, trapezoid rule on the path's grid.
pub fn phi_from_path(path: BrownianPath, beta: Beta) -> PhiPath {
    let s = beta.noise_scale();
    let mut acc = 0.0;
    let mut phi = Vec::with_capacity(path.len());
    phi.push(1.0);
    for k in 1..path.len() {
        let dx = path.grid[k] - path.grid[k - 1];
        acc += 0.5 * dx * (path.values[k] + path.values[k - 1]);
        phi.push((s * acc).exp());
    }
    PhiPath {
        path,
        phi_values: phi,
    }
}

pub fn phi_path(key: StreamKey, config: &RayleighRitzConfig) -> Result<PhiPath> {
    Ok(phi_from_path(config.path(key)?, config.beta))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsiPath {
    pub path: BrownianPath,
    pub psi_values: Vec<f64>,
}

/// log ψ(t_k) = -(1/√β) Σ_{m ≥ k} t_m^{-1/2} ΔB_m (left-point Itô sum).
///
/// The integrand is singular at w = 0, so the first cell (when the grid
/// starts at 0) uses its right endpoint instead. ψ at that node is only
/// reported; the Rayleigh–Ritz quadrature never evaluates it.
pub fn psi_from_path(path: BrownianPath, beta: Beta) -> PsiPath {
    let s = 0.5 * beta.noise_scale();
    let n = path.len();
    let mut logs = vec![0.0; n];
    let mut acc = 0.0;
    for m in (0..n - 1).rev() {
        let w = if path.grid[m] > 0.0 { path.grid[m] } else { path.grid[m + 1] };
        acc += path.increments[m] / w.sqrt();
        logs[m] = -s * acc;
    }
    PsiPath {
        psi_values: logs.into_iter().map(f64::exp).collect(),
        path,
    }
}

pub fn psi_path(key: StreamKey, config: &RayleighRitzConfig) -> Result<PsiPath> {
    Ok(psi_from_path(config.path(key)?, config.beta))
}
