use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::sturm::{bisect_ascending, count_below, inverse_iteration, pivmin};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// nonzeros on (i, i) and (i, i + 1)
    Upper,
    /// nonzeros on (i, i) and (i + 1, i)
    Lower,
}

/// Bidiagonal matrix. Supported shapes: square of either orientation,
/// upper n×(n+1) and lower (n+1)×n. `main` has min(rows, cols) entries and
/// `adjacent` has rows + cols - 1 - main.len() entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bidiagonal {
    pub rows: usize,
    pub cols: usize,
    pub main: Vec<f64>,
    pub adjacent: Vec<f64>,
    pub orientation: Orientation,
}

impl Bidiagonal {
    pub fn new(
        rows: usize,
        cols: usize,
        main: Vec<f64>,
        adjacent: Vec<f64>,
        orientation: Orientation,
    ) -> Result<Self> {
        let ok_shape = match orientation {
            Orientation::Upper => cols == rows || cols == rows + 1,
            Orientation::Lower => rows == cols || rows == cols + 1,
        };
        if rows == 0 || !ok_shape {
            return Err(Error::Shape(format!(
                "unsupported {orientation:?} bidiagonal shape {rows}x{cols}"
            )));
        }
        let p = rows.min(cols);
        let adj = rows + cols - 1 - p;
        if main.len() != p || adjacent.len() != adj {
            return Err(Error::Shape(format!(
                "{rows}x{cols} bidiagonal needs {p} main and {adj} adjacent entries, got {} and {}",
                main.len(),
                adjacent.len()
            )));
        }
        if main.iter().chain(&adjacent).any(|x| !x.is_finite()) {
            return Err(invalid("bidiagonal entries must be finite"));
        }
        Ok(Bidiagonal {
            rows,
            cols,
            main,
            adjacent,
            orientation,
        })
    }

    pub fn upper(main: Vec<f64>, sup: Vec<f64>) -> Result<Self> {
        let n = main.len();
        let cols = if sup.len() == n { n + 1 } else { n };
        Bidiagonal::new(n, cols, main, sup, Orientation::Upper)
    }

    pub fn lower(main: Vec<f64>, sub: Vec<f64>) -> Result<Self> {
        let n = main.len();
        let rows = if sub.len() == n { n + 1 } else { n };
        Bidiagonal::new(rows, n, main, sub, Orientation::Lower)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Position of adjacent entry k.
    pub fn adjacent_index(&self, k: usize) -> (usize, usize) {
        match self.orientation {
            Orientation::Upper => (k, k + 1),
            Orientation::Lower => (k + 1, k),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j && i < self.main.len() {
            return self.main[i];
        }
        match self.orientation {
            Orientation::Upper if j == i + 1 && i < self.adjacent.len() => self.adjacent[i],
            Orientation::Lower if i == j + 1 && j < self.adjacent.len() => self.adjacent[j],
            _ => 0.0,
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.rows, self.cols);
        for (i, v) in self.main.iter().enumerate() {
            m[(i, i)] = *v;
        }
        for (k, v) in self.adjacent.iter().enumerate() {
            m[self.adjacent_index(k)] = *v;
        }
        m
    }

    pub fn transpose(&self) -> Bidiagonal {
        Bidiagonal {
            rows: self.cols,
            cols: self.rows,
            main: self.main.clone(),
            adjacent: self.adjacent.clone(),
            orientation: match self.orientation {
                Orientation::Upper => Orientation::Lower,
                Orientation::Lower => Orientation::Upper,
            },
        }
    }

    pub fn scaled(&self, c: f64) -> Bidiagonal {
        Bidiagonal {
            main: self.main.iter().map(|x| c * x).collect(),
            adjacent: self.adjacent.iter().map(|x| c * x).collect(),
            ..self.clone()
        }
    }

    /// Off-diagonal of the zero-diagonal Golub–Kahan tridiagonal whose
    /// eigenvalues are ± the singular values (plus |rows - cols| zeros):
    /// [m_1, a_1, m_2, a_2, ...].
    pub fn golub_kahan_offdiag(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.main.len() + self.adjacent.len());
        for i in 0..self.main.len() {
            out.push(self.main[i]);
            if i < self.adjacent.len() {
                out.push(self.adjacent[i]);
            }
        }
        out
    }

    /// Number of singular values strictly below `sigma` (> 0).
    pub fn count_sv_below(&self, sigma: f64) -> usize {
        let e2: Vec<f64> = self.golub_kahan_offdiag().iter().map(|x| x * x).collect();
        let diag = vec![0.0; e2.len() + 1];
        let c = count_below(&diag, &e2, sigma, pivmin(&e2));
        c.saturating_sub(self.rows.max(self.cols))
    }
}

/// The k smallest singular values, ascending, by bisection on the
/// Golub–Kahan form (high relative accuracy for tiny singular values).
pub fn sv_bidiag_smallest(b: &Bidiagonal, k: usize) -> Result<Vec<f64>> {
    let p = b.rows.min(b.cols);
    if k == 0 || k > p {
        return Err(invalid(format!(
            "requested {k} singular values of a {}x{} matrix",
            b.rows, b.cols
        )));
    }
    let off = b.golub_kahan_offdiag();
    let e2: Vec<f64> = off.iter().map(|x| x * x).collect();
    let diag = vec![0.0; e2.len() + 1];
    let pm = pivmin(&e2);
    let hi = {
        let mut m: f64 = 0.0;
        for i in 0..diag.len() {
            let l = if i > 0 { off[i - 1].abs() } else { 0.0 };
            let r = if i < off.len() { off[i].abs() } else { 0.0 };
            m = m.max(l + r);
        }
        m * (1.0 + 4.0 * f64::EPSILON) + f64::MIN_POSITIVE
    };
    let shift = b.rows.max(b.cols);
    let count = |x: f64| {
        if x <= 0.0 {
            0
        } else {
            count_below(&diag, &e2, x, pm).saturating_sub(shift)
        }
    };
    Ok(bisect_ascending(count, 0.0, hi, 0, k))
}

/// Singular triplet for a computed singular value `sigma`: (u, v) unit
/// vectors with B v = σ u and Bᵀ u = σ v (up to a common sign).
pub fn singular_vectors(b: &Bidiagonal, sigma: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let off = b.golub_kahan_offdiag();
    let diag = vec![0.0; off.len() + 1];
    let z = inverse_iteration(&diag, &off, sigma)?;
    // For the upper orientation odd slots (1-based) carry the right vector,
    // even slots the left one; the lower orientation is the transpose.
    let odd: Vec<f64> = z.iter().step_by(2).cloned().collect();
    let even: Vec<f64> = z.iter().skip(1).step_by(2).cloned().collect();
    let (mut u, mut v) = match b.orientation {
        Orientation::Upper => (even, odd),
        Orientation::Lower => (odd, even),
    };
    for w in [&mut u, &mut v] {
        let n = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.0 {
            w.iter_mut().for_each(|x| *x /= n);
        }
    }
    Ok((u, v))
}
