//! Matrix-model edge statistics against Rayleigh-Ritz operator samples:
//! Kolmogorov-Smirnov distances at the soft and hard edges.
//!
//! cargo run --release --example matrix_vs_operator -- [samples]

use stochop::montecarlo::{ks_distance, run_mc, Bins, Experiment, ExperimentKind, HardModel, SoftModel};
use stochop::operators::RayleighRitzConfig;
use stochop::Beta;

fn main() -> stochop::Result<()> {
    let samples: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let beta = Beta::Finite(2.0);
    let run = |kind, seed| -> stochop::Result<Vec<f64>> {
        Ok(run_mc(&Experiment::new(kind, samples, seed), 0, &Bins::default())?.values())
    };

    let soft = run(ExperimentKind::SoftEdgeMatrix { model: SoftModel::Hermite, n: 2000, beta, a: 0.0, k: 1 }, 1)?;
    let airy = RayleighRitzConfig { basis_size: 60, mesh: 0.1, right: 30.0, ..RayleighRitzConfig::airy(beta) };
    let op = run(ExperimentKind::AiryRr { config: airy, k: 1 }, 2)?;
    println!("soft edge: KS(Hermite n=2000, Airy RR) = {:.4}", ks_distance(&soft, &op)?);

    let hard = run(
        ExperimentKind::HardEdgeMatrix { model: HardModel::LaguerreL, n: 1000, beta, a: 0.0, b: 0.0, k: 1 },
        3,
    )?;
    let op = run(ExperimentKind::BesselRr { config: RayleighRitzConfig::bessel(beta, 0.0) }, 4)?;
    println!("hard edge: KS(Laguerre n=1000, Bessel RR) = {:.4}", ks_distance(&hard, &op)?);
    Ok(())
}
