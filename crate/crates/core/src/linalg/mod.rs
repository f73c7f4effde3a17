//! Spectral kernels: tridiagonal eigenvalues, bidiagonal singular values,
//! dense symmetric and symmetric-definite generalized eigenproblems.
//!
//! The structured solvers use Sturm bisection (O(n) per count) so that only
//! the few extreme eigenvalues of very large matrices are ever computed.
//! Dense problems are delegated to nalgebra.

mod bidiag;
mod dense;
mod sturm;
mod tridiag;

pub use bidiag::{singular_vectors, sv_bidiag_smallest, Bidiagonal, Orientation};
pub use dense::{eig_dense_sym, eig_generalized, DenseEig, GeneralizedEig};
pub use tridiag::{
    eig_tridiag_largest, eig_tridiag_nonsym_smallest, eig_tridiag_smallest, eigvec_tridiag,
    eigvec_tridiag_nonsym_log, SymTridiagonal, Tridiagonal,
};

pub use nalgebra::{DMatrix, DVector};
