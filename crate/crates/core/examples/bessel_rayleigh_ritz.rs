//! Rayleigh-Ritz samples of the least singular value of the stochastic Bessel
//! operator (type i boundary condition), plus the weight path that drives it.
//!
//! cargo run --release --example bessel_rayleigh_ritz -- [beta] [a] [samples]

use stochop::montecarlo::mean_sd;
use stochop::operators::{psi_path, BesselRayleighRitz, RayleighRitzConfig};
use stochop::randsrc::StreamKey;
use stochop::Beta;

fn main() -> stochop::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let beta: Beta = args.first().map(String::as_str).unwrap_or("2").parse()?;
    let a: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.0);
    let samples: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(300);
    let config = RayleighRitzConfig::bessel(beta, a);

    let psi = psi_path(StreamKey::new(3, 0), &config)?;
    let n = psi.psi_values.len();
    for i in [1, n / 100, n / 10, n / 2, n - 1] {
        println!("psi({:.3}) = {:.4}", psi.path.grid[i], psi.psi_values[i]);
    }

    let rr = BesselRayleighRitz::new(&config)?;
    let values = (0..samples as u64)
        .map(|i| rr.sample(StreamKey::new(3, i)))
        .collect::<stochop::Result<Vec<f64>>>()?;
    let (mean, sd) = mean_sd(&values);
    println!("beta={beta} a={a} l={}: {samples} samples, mean {mean:.4}, sd {sd:.4}", config.basis_size);
    Ok(())
}
