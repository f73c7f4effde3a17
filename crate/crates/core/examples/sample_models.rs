//! Draw one matrix from each tridiagonal / bidiagonal beta model.
//!
//! cargo run --example sample_models -- [beta]

use stochop::ensembles::{sample_hermite, sample_jacobi, sample_laguerre_l, sample_laguerre_m};
use stochop::linalg::{eig_dense_sym, DMatrix};
use stochop::randsrc::StreamKey;
use stochop::Beta;

fn main() -> stochop::Result<()> {
    let beta: Beta = std::env::args().nth(1).unwrap_or_else(|| "2".into()).parse()?;
    let key = StreamKey::new(42, 0);
    let n = 6;

    let h = sample_hermite(key, n, beta)?;
    println!("H (beta={beta}) diag    {:.4?}", h.matrix.diag);
    println!("               offdiag {:.4?}", h.matrix.offdiag);
    println!("  eigenvalues {:.4?}", eig_dense_sym(&h.to_dense(), false)?.values);

    let l = sample_laguerre_l(key, n, beta, 1.5)?;
    println!("L (a=1.5) main {:.4?}", l.matrix.main);
    println!("          sup  {:.4?}", l.matrix.adjacent);

    let m = sample_laguerre_m(key, n, beta, 1.5)?;
    println!("M (a=1.5) is {}x{}, sub {:.4?}", m.matrix.rows, m.matrix.cols, m.matrix.adjacent);

    let j = sample_jacobi(key, n, beta, 0.5, 1.0)?;
    println!("J (a=0.5, b=1) cos theta {:.4?}", j.cos_theta);
    println!("               cos phi   {:.4?}", j.cos_phi);
    let dense = j.assemble();
    let orth = (dense.transpose() * &dense - DMatrix::identity(dense.nrows(), dense.nrows())).amax();
    println!("  |J^T J - I| = {orth:.1e}");
    Ok(())
}
