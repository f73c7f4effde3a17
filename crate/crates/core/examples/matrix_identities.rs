//! The exact finite-n identities behind the scalings: the Hermite similarity,
//! the perfect-shuffle embedding of a bidiagonal Laguerre matrix, and the
//! log decomposition of one bidiagonal against another.
//!
//! cargo run --example matrix_identities

use stochop::ensembles::{laguerre_l_inf, sample_hermite, sample_laguerre_l};
use stochop::linalg::eig_dense_sym;
use stochop::randsrc::StreamKey;
use stochop::scalings::{hermite_similarity, laguerre_shuffle_embed, log_decompose};
use stochop::Beta;

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn main() -> stochop::Result<()> {
    let key = StreamKey::new(5, 0);
    let beta = Beta::Finite(2.0);

    let h = sample_hermite(key, 8, beta)?;
    let t = hermite_similarity(&h)?;
    let direct = eig_dense_sym(&h.to_dense(), false)?.values;
    let similar = sorted(t.to_dense().complex_eigenvalues().iter().map(|z| z.re).collect());
    let gap = direct.iter().zip(&similar).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    println!("similarity: max eigenvalue change {gap:.1e}");

    let l = sample_laguerre_l(key, 6, beta, 0.5)?;
    let svd = l.matrix.to_dense().singular_values();
    let emb = laguerre_shuffle_embed(&l)?;
    let eig = sorted(emb.to_dense().complex_eigenvalues().iter().map(|z| z.re).collect());
    let pm = sorted(svd.iter().flat_map(|s| [*s, -s]).collect());
    let gap = eig.iter().zip(&pm).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    println!("shuffle embedding: eigenvalues are +-singular values to {gap:.1e}");

    let classical = laguerre_l_inf(6, 0.5)?;
    let d = log_decompose(&l.matrix, &classical.matrix)?;
    let back = d.reconstruct(&classical.matrix)?;
    let err = (back.to_dense() - l.matrix.to_dense()).amax();
    println!("log decomposition: d_even {:.3?}", d.d_even);
    println!("                   d_odd  {:.3?}", d.d_odd);
    println!("                   reconstruction error {err:.1e}");
    Ok(())
}
