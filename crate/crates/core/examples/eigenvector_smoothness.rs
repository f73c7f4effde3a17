//! Roughness of eigenvectors versus their ratio, over many seeds.
//!
//! cargo run --release --example eigenvector_smoothness -- [runs] [n]

use stochop::diagnostics::{smoothness_report, MASK_TOL};
use stochop::ensembles::{sample_hermite, sample_jacobi};
use stochop::randsrc::StreamKey;
use stochop::scalings::{hermite_soft, jacobi_hard};
use stochop::Beta;

fn main() -> stochop::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let runs = args.first().copied().unwrap_or(20);
    let n = args.get(1).copied().unwrap_or(100_000);
    let beta = Beta::Finite(2.0);

    println!("model      seed  rough(v2)  rough(v1)  rough(v2/v1)  ratio/min");
    for (name, hard) in [("H_soft", false), ("J_hard", true)] {
        let mut worst: f64 = 0.0;
        for seed in 0..runs as u64 {
            let key = StreamKey::new(seed, 0);
            let m = if hard {
                jacobi_hard(&sample_jacobi(key, n / 10, beta, 0.0, 0.0)?)?
            } else {
                hermite_soft(&sample_hermite(key, n, beta)?)?
            };
            let r = smoothness_report(&m, 2, 1, MASK_TOL)?;
            let q = r.roughness_ratio / r.roughness_k.min(r.roughness_l);
            worst = worst.max(q);
            println!(
                "{name:8} {seed:6} {:10.4} {:10.4} {:13.4} {:10.4}",
                r.roughness_k, r.roughness_l, r.roughness_ratio, q
            );
        }
        println!("{name}: worst ratio/min over {runs} runs = {worst:.4}\n");
    }
    Ok(())
}
