//! Rayleigh–Ritz for the stochastic Airy operator in the basis of
//! eigenfunctions of -d²/dx² + x.
//!
//! K_ij = -ζ_i δ_ij + (2/√β) ∫ v_i v_j dB, truncated to l×l.

use nalgebra::DMatrix;

use super::RayleighRitzConfig;
use crate::error::{invalid, Error, Result};
use crate::linalg::eig_dense_sym;
use crate::randsrc::{BrownianPath, StreamKey};
use crate::specfun::airy::airy_pair;
use crate::specfun::{zeros, ZeroKind, ZeroTable};

/// v_i(x) = Ai(x + ζ_i) / Ai'(ζ_i) sampled on `grid`; `i` is 1-based.
pub fn airy_basis(i: usize, grid: &[f64], table: &ZeroTable) -> Result<Vec<f64>> {
    if table.kind != ZeroKind::AiryAi {
        return Err(invalid("airy_basis needs a table of Ai zeros"));
    }
    if i == 0 || i > table.len() {
        return Err(invalid(format!(
            "basis index {i} outside 1..={}",
            table.len()
        )));
    }
    let z = table.zeros[i - 1];
    let norm = airy_pair(z).1;
    Ok(grid.iter().map(|&x| airy_pair(x + z).0 / norm).collect())
}

/// Precomputed basis for repeated sampling with one configuration.
#[derive(Clone, Debug)]
pub struct AiryRayleighRitz {
    pub config: RayleighRitzConfig,
    pub grid: Vec<f64>,
    /// -ζ_1, ..., -ζ_l
    pub classical: Vec<f64>,
    /// row i holds v_{i+1} on the grid
    pub basis: DMatrix<f64>,
}

impl AiryRayleighRitz {
    pub fn new(config: &RayleighRitzConfig) -> Result<Self> {
        let grid = config.grid()?;
        let table = zeros(ZeroKind::AiryAi, config.basis_size)?;
        let l = config.basis_size;
        let mut basis = DMatrix::zeros(l, grid.len());
        for i in 0..l {
            let row = airy_basis(i + 1, &grid, &table)?;
            for (j, v) in row.into_iter().enumerate() {
                basis[(i, j)] = v;
            }
        }
        Ok(AiryRayleighRitz {
            config: config.clone(),
            classical: table.zeros.iter().map(|z| -z).collect(),
            grid,
            basis,
        })
    }

    pub fn basis_size(&self) -> usize {
        self.config.basis_size
    }

    pub fn build_k(&self, path: &BrownianPath) -> Result<DMatrix<f64>> {
        check_path(&self.grid, path)?;
        let l = self.basis_size();
        let mut k = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.classical.clone()));
        let s = self.config.beta.noise_scale();
        if s == 0.0 {
            return Ok(k);
        }
        let m = self.grid.len() - 1;
        let left = self.basis.columns(0, m);
        let mut scaled = left.clone_owned();
        for (j, db) in path.increments.iter().enumerate() {
            scaled.column_mut(j).scale_mut(s * db);
        }
        let noise = scaled * left.transpose();
        for i in 0..l {
            for j in 0..l {
                k[(i, j)] += 0.5 * (noise[(i, j)] + noise[(j, i)]);
            }
        }
        Ok(k)
    }

    /// The `count` smallest eigenvalues of K for this path, ascending.
    pub fn min_eigs(&self, path: &BrownianPath, count: usize) -> Result<Vec<f64>> {
        if count == 0 || count > self.basis_size() {
            return Err(invalid(format!(
                "asked for {count} eigenvalues of a {0}x{0} truncation",
                self.basis_size()
            )));
        }
        if self.config.beta.is_infinite() {
            check_path(&self.grid, path)?;
            return Ok(self.classical[..count].to_vec());
        }
        let k = self.build_k(path)?;
        let mut vals = eig_dense_sym(&k, false)?.values;
        vals.truncate(count);
        Ok(vals)
    }

    pub fn sample(&self, key: StreamKey, count: usize) -> Result<Vec<f64>> {
        let path = self.config.path(key)?;
        self.min_eigs(&path, count)
    }
}

pub(super) fn check_path(grid: &[f64], path: &BrownianPath) -> Result<()> {
    let ok = path.grid.len() == grid.len()
        && path
            .grid
            .iter()
            .zip(grid)
            .all(|(a, b)| (a - b).abs() <= 1e-12 * (1.0 + b.abs()));
    if ok {
        Ok(())
    } else {
        Err(Error::Shape(format!(
            "path grid ({} points) does not match the configured mesh ({} points)",
            path.grid.len(),
            grid.len()
        )))
    }
}

pub fn build_airy_k(path: &BrownianPath, config: &RayleighRitzConfig) -> Result<DMatrix<f64>> {
    AiryRayleighRitz::new(config)?.build_k(path)
}

/// The `count` smallest eigenvalues of one truncated sample of K.
pub fn stochastic_airy_min_eig(
    key: StreamKey,
    config: &RayleighRitzConfig,
    count: usize,
) -> Result<Vec<f64>> {
    AiryRayleighRitz::new(config)?.sample(key, count)
}
