//! Rayleigh-Ritz samples of the least eigenvalue of the stochastic Airy operator.
//!
//! cargo run --release --example airy_rayleigh_ritz -- [beta] [samples] [basis size]

use stochop::montecarlo::{histogram, mean_sd, Bins, Provenance};
use stochop::operators::{AiryRayleighRitz, RayleighRitzConfig};
use stochop::randsrc::StreamKey;
use stochop::Beta;

fn main() -> stochop::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let beta: Beta = args.first().map(String::as_str).unwrap_or("2").parse()?;
    let samples: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(500);
    let mut config = RayleighRitzConfig::airy(beta);
    if let Some(l) = args.get(2).and_then(|s| s.parse().ok()) {
        config.basis_size = l;
    }
    let rr = AiryRayleighRitz::new(&config)?;
    println!("classical: {:.6?}", &rr.classical[..3]);

    let values = (0..samples as u64)
        .map(|i| rr.sample(StreamKey::new(1, i), 1).map(|v| v[0]))
        .collect::<stochop::Result<Vec<f64>>>()?;
    let (mean, sd) = mean_sd(&values);
    println!("beta={beta} l={} mesh={}: mean {mean:.4}, sd {sd:.4}", config.basis_size, config.mesh);
    let h = histogram(&values, &Bins::Count(20), Provenance { seed: 1, digest: String::new() })?;
    let top = *h.counts.iter().max().unwrap_or(&1) as f64;
    for (w, c) in h.edges.windows(2).zip(&h.counts) {
        println!("{:7.3} {}", w[0], "#".repeat((50.0 * *c as f64 / top).round() as usize));
    }
    Ok(())
}
