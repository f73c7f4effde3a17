//! Rayleigh–Ritz for the stochastic Bessel operator in Liouville form,
//! type (i) boundary conditions.
//!
//! With v_i = c_i √t J_a(ξ_i t), u_i = c'_i √t J_{a+1}(ξ_i t) and W = ψ^{2√2}:
//! K = Ξ (U W Uᵀ) Ξ, M = V W Vᵀ, and σ_min = √λ_min(K, M).
//!
//! Quadrature runs over the nodes t_1, ..., t_N (never t_0 = 0, where v_i is
//! singular for a < -1/2): the first cell uses its right endpoint, the rest
//! the trapezoid rule. Normalizations use the same weights.

use nalgebra::DMatrix;

use super::airy::check_path;
use super::{BoundaryCondition, PsiPath, RayleighRitzConfig};
use crate::error::{invalid, Error, Result};
use crate::linalg::eig_generalized;
use crate::randsrc::StreamKey;
use crate::specfun::bessel::bessel_j_unchecked;
use crate::specfun::{zeros, ZeroKind};

#[derive(Clone, Debug)]
pub struct BesselRayleighRitz {
    pub config: RayleighRitzConfig,
    pub grid: Vec<f64>,
    /// ξ_1, ..., ξ_l, the zeros of J_a
    pub xi: Vec<f64>,
    /// quadrature weight of grid[m + 1]
    pub weights: Vec<f64>,
    pub u: DMatrix<f64>,
    pub v: DMatrix<f64>,
}

impl BesselRayleighRitz {
    pub fn new(config: &RayleighRitzConfig) -> Result<Self> {
        if config.bc == BoundaryCondition::TypeII {
            return Err(invalid(
                "Bessel Rayleigh-Ritz is implemented for type (i) boundary conditions only",
            ));
        }
        let grid = config.grid()?;
        if grid.len() < 3 {
            return Err(invalid("Bessel quadrature needs at least two cells"));
        }
        let nodes = &grid[1..];
        let n = nodes.len();
        let mut weights = vec![0.0; n];
        weights[0] = grid[1] - grid[0];
        for m in 0..n - 1 {
            let half = 0.5 * (nodes[m + 1] - nodes[m]);
            weights[m] += half;
            weights[m + 1] += half;
        }
        let a = config.a;
        let l = config.basis_size;
        let xi = zeros(ZeroKind::BesselJ(a), l)?.zeros;
        let fill = |order: f64| -> Result<DMatrix<f64>> {
            let mut b = DMatrix::zeros(l, n);
            for i in 0..l {
                let mut norm = 0.0;
                for (m, &t) in nodes.iter().enumerate() {
                    let f = t.sqrt() * bessel_j_unchecked(order, xi[i] * t);
                    b[(i, m)] = f;
                    norm += weights[m] * f * f;
                }
                if !(norm > 0.0 && norm.is_finite()) {
                    return Err(Error::NonConvergence(format!(
                        "basis function {} has quadrature norm {norm}",
                        i + 1
                    )));
                }
                b.row_mut(i).scale_mut(1.0 / norm.sqrt());
            }
            Ok(b)
        };
        let v = fill(a)?;
        let u = fill(a + 1.0)?;
        Ok(BesselRayleighRitz {
            config: config.clone(),
            grid,
            xi,
            weights,
            u,
            v,
        })
    }

    pub fn basis_size(&self) -> usize {
        self.config.basis_size
    }

    pub fn build_km(&self, psi: &PsiPath) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
        check_path(&self.grid, &psi.path)?;
        let p = 2.0 * std::f64::consts::SQRT_2;
        let w: Vec<f64> = self
            .weights
            .iter()
            .zip(&psi.psi_values[1..])
            .map(|(q, s)| q * s.powf(p))
            .collect();
        let gram = |b: &DMatrix<f64>| {
            let mut scaled = b.clone();
            for (j, wj) in w.iter().enumerate() {
                scaled.column_mut(j).scale_mut(*wj);
            }
            let g = scaled * b.transpose();
            (&g + g.transpose()) * 0.5
        };
        let mut k = gram(&self.u);
        let m = gram(&self.v);
        let l = self.basis_size();
        for i in 0..l {
            for j in 0..l {
                k[(i, j)] *= self.xi[i] * self.xi[j];
            }
        }
        Ok((k, m))
    }

    pub fn min_sv(&self, psi: &PsiPath) -> Result<f64> {
        let (k, m) = self.build_km(psi)?;
        let eig = eig_generalized(&k, &m)?;
        Ok(eig.value.max(0.0).sqrt())
    }

    pub fn sample(&self, key: StreamKey) -> Result<f64> {
        let psi = super::psi_path(key, &self.config)?;
        self.min_sv(&psi)
    }
}

pub fn build_bessel_km(
    psi: &PsiPath,
    config: &RayleighRitzConfig,
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    BesselRayleighRitz::new(config)?.build_km(psi)
}

/// Smallest singular value of one sample of the truncated operator.
pub fn stochastic_bessel_min_sv(key: StreamKey, config: &RayleighRitzConfig) -> Result<f64> {
    BesselRayleighRitz::new(config)?.sample(key)
}
