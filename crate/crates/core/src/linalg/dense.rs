use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};

use crate::error::{invalid, Error, Result};

/// Eigen-decomposition of a dense symmetric matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct DenseEig {
    pub values: Vec<f64>,
    /// columns are orthonormal eigenvectors, in the order of `values`
    pub vectors: Option<DMatrix<f64>>,
}

fn check_symmetric(a: &DMatrix<f64>) -> Result<()> {
    if !a.is_square() {
        return Err(Error::Shape(format!("{}x{} matrix is not square", a.nrows(), a.ncols())));
    }
    let scale = a.amax().max(f64::MIN_POSITIVE);
    let n = a.nrows();
    for i in 0..n {
        for j in 0..i {
            if (a[(i, j)] - a[(j, i)]).abs() > 1e-12 * scale {
                return Err(invalid(format!("matrix is not symmetric at ({i}, {j})")));
            }
        }
    }
    Ok(())
}

/// All eigenvalues (and optionally eigenvectors) of a symmetric matrix.
pub fn eig_dense_sym(a: &DMatrix<f64>, vectors: bool) -> Result<DenseEig> {
    check_symmetric(a)?;
    if !vectors {
        let mut v: Vec<f64> = a.clone().symmetric_eigenvalues().iter().cloned().collect();
        v.sort_by(f64::total_cmp);
        return Ok(DenseEig {
            values: v,
            vectors: None,
        });
    }
    let eig = SymmetricEigen::new(a.clone());
    let mut order: Vec<usize> = (0..a.nrows()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(a.nrows(), a.ncols(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(DenseEig {
        values,
        vectors: Some(vecs),
    })
}

/// Smallest solution of K c = λ M c.
#[derive(Clone, Debug)]
pub struct GeneralizedEig {
    pub value: f64,
    /// M-normalized: cᵀ M c = 1
    pub vector: DVector<f64>,
    /// diagonal shift added to M before Cholesky (0 when none was needed)
    pub jitter: f64,
}

/// Smallest eigenvalue of the symmetric-definite pencil (K, M) via
/// M = L Lᵀ and the standard problem L⁻¹ K L⁻ᵀ. If M is not numerically
/// positive definite a single jitter of 1e-12·trace(M)/dim is tried.
pub fn eig_generalized(k: &DMatrix<f64>, m: &DMatrix<f64>) -> Result<GeneralizedEig> {
    check_symmetric(k)?;
    check_symmetric(m)?;
    if k.shape() != m.shape() {
        return Err(Error::Shape("K and M must have the same shape".into()));
    }
    let n = m.nrows();
    let (chol, jitter) = match Cholesky::new(m.clone()) {
        Some(c) => (c, 0.0),
        None => {
            let j = 1e-12 * m.trace().abs() / n as f64;
            let shifted = m + DMatrix::identity(n, n) * j;
            match Cholesky::new(shifted) {
                Some(c) => (c, j),
                None => {
                    return Err(Error::NotPositiveDefinite(
                        "Cholesky failed even after jitter".into(),
                    ))
                }
            }
        }
    };
    let l = chol.l();
    // C = L^{-1} K L^{-T}
    let lk = l
        .solve_lower_triangular(k)
        .ok_or_else(|| Error::NotPositiveDefinite("singular Cholesky factor".into()))?;
    let c = l
        .solve_lower_triangular(&lk.transpose())
        .ok_or_else(|| Error::NotPositiveDefinite("singular Cholesky factor".into()))?;
    let c = (&c + c.transpose()) * 0.5;
    let eig = eig_dense_sym(&c, true)?;
    let y = eig.vectors.unwrap().column(0).into_owned();
    let x = l
        .transpose()
        .solve_upper_triangular(&y)
        .ok_or_else(|| Error::NotPositiveDefinite("singular Cholesky factor".into()))?;
    Ok(GeneralizedEig {
        value: eig.values[0],
        vector: x,
        jitter,
    })
}
