use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Bidiagonal, SymTridiagonal};

/// Finite-difference building blocks. All are realized on demand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FdMatrix {
    /// ∇_{m,n}: -1 on the diagonal, +1 on the superdiagonal; n ∈ {m, m + 1}.
    Grad { m: usize, n: usize },
    /// Δ_n: 2 on the diagonal, -1 off it.
    SecondDiff(usize),
    /// Ω_n = diag(-1, 1, -1, ...).
    Omega(usize),
    /// F_n: ones on the antidiagonal.
    Flip(usize),
    /// S_{m,n}: 1/2 on the diagonal and superdiagonal; n ∈ {m, m + 1}.
    Interp { m: usize, n: usize },
    /// Perfect shuffle of order N: p_ij = 1 for j = 2i - 1 (i ≤ ⌈N/2⌉) or
    /// j = 2(i - ⌈N/2⌉).
    Shuffle(usize),
}

fn check_mn(m: usize, n: usize) -> Result<()> {
    if m == 0 || !(n == m || n == m + 1) {
        return Err(Error::Shape(format!("unsupported {m}x{n} difference matrix")));
    }
    Ok(())
}

impl FdMatrix {
    pub fn shape(&self) -> (usize, usize) {
        match *self {
            FdMatrix::Grad { m, n } | FdMatrix::Interp { m, n } => (m, n),
            FdMatrix::SecondDiff(n)
            | FdMatrix::Omega(n)
            | FdMatrix::Flip(n)
            | FdMatrix::Shuffle(n) => (n, n),
        }
    }

    pub fn to_dense(&self) -> Result<DMatrix<f64>> {
        let (rows, _) = self.shape();
        if rows == 0 {
            return Err(Error::Shape("empty difference matrix".into()));
        }
        Ok(match *self {
            FdMatrix::Grad { m, n } => grad(m, n)?.to_dense(),
            FdMatrix::Interp { m, n } => interp(m, n)?.to_dense(),
            FdMatrix::SecondDiff(n) => second_diff(n)?.to_dense(),
            FdMatrix::Omega(n) => DMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    omega_sign(i)
                } else {
                    0.0
                }
            }),
            FdMatrix::Flip(n) => DMatrix::from_fn(n, n, |i, j| (i + j + 1 == n) as u8 as f64),
            FdMatrix::Shuffle(n) => {
                let half = n.div_ceil(2);
                DMatrix::from_fn(n, n, |i, j| {
                    let hit = if i < half { j == 2 * i } else { j == 2 * (i - half) + 1 };
                    hit as u8 as f64
                })
            }
        })
    }
}

/// Sign of Ω at 0-based index i.
pub(crate) fn omega_sign(i: usize) -> f64 {
    if i.is_multiple_of(2) {
        -1.0
    } else {
        1.0
    }
}

pub fn grad(m: usize, n: usize) -> Result<Bidiagonal> {
    check_mn(m, n)?;
    Bidiagonal::upper(vec![-1.0; m], vec![1.0; n - 1])
}

pub fn interp(m: usize, n: usize) -> Result<Bidiagonal> {
    check_mn(m, n)?;
    Bidiagonal::upper(vec![0.5; m], vec![0.5; n - 1])
}

pub fn second_diff(n: usize) -> Result<SymTridiagonal> {
    if n == 0 {
        return Err(Error::Shape("empty difference matrix".into()));
    }
    SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_difference_is_grad_grad_transpose() {
        for n in 1..7 {
            let g = FdMatrix::Grad { m: n, n: n + 1 }.to_dense().unwrap();
            let d = FdMatrix::SecondDiff(n).to_dense().unwrap();
            assert_eq!(&g * g.transpose(), d);
        }
    }

    #[test]
    fn interp_from_grad() {
        for (m, n) in [(3, 3), (3, 4), (6, 7), (1, 1)] {
            let g = FdMatrix::Grad { m, n }.to_dense().unwrap();
            let om = FdMatrix::Omega(m).to_dense().unwrap();
            let on = FdMatrix::Omega(n).to_dense().unwrap();
            let s = FdMatrix::Interp { m, n }.to_dense().unwrap();
            assert_eq!(-0.5 * &om * g * on, s);
        }
    }

    #[test]
    fn shuffle_is_permutation() {
        for n in 1..9 {
            let p = FdMatrix::Shuffle(n).to_dense().unwrap();
            for i in 0..n {
                assert_eq!(p.row(i).sum(), 1.0);
                assert_eq!(p.column(i).sum(), 1.0);
            }
            assert_eq!(&p * p.transpose(), DMatrix::identity(n, n));
        }
        let p = FdMatrix::Shuffle(4).to_dense().unwrap();
        assert_eq!(p[(0, 0)], 1.0);
        assert_eq!(p[(1, 2)], 1.0);
        assert_eq!(p[(2, 1)], 1.0);
        assert_eq!(p[(3, 3)], 1.0);
    }

    #[test]
    fn flip_and_omega_are_orthogonal() {
        let f = FdMatrix::Flip(5).to_dense().unwrap();
        let o = FdMatrix::Omega(5).to_dense().unwrap();
        assert_eq!(&f * &f, DMatrix::identity(5, 5));
        assert_eq!(&o * &o, DMatrix::identity(5, 5));
        assert!(FdMatrix::Grad { m: 3, n: 5 }.to_dense().is_err());
    }
}
