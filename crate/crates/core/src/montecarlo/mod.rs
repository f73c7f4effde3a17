//! Reproducible parallel Monte Carlo over matrix models and operator
//! discretizations.
//!
//! Sample `i` of an experiment always uses `StreamKey::new(seed, i)`, so the
//! raw samples do not depend on the number of workers.

mod export;
mod stats;

pub use export::{
    export, read_histogram_csv, read_raw_csv, read_sidecar, write_histogram_csv, write_raw_csv,
    write_sidecar, ExportFormat, Sidecar,
};
pub use stats::{histogram, ks_distance, mean_sd, Bins, Histogram, Provenance};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::beta::Beta;
use crate::ensembles::{sample_hermite, sample_jacobi, sample_laguerre_l, sample_laguerre_m};
use crate::error::{invalid, Error, Result};
use crate::linalg::{eig_tridiag_largest, sv_bidiag_smallest, Bidiagonal, SymTridiagonal};
use crate::operators::{AiryRayleighRitz, BesselRayleighRitz, RayleighRitzConfig};
use crate::randsrc::StreamKey;
use crate::scalings::{hermite_soft, jacobi_hard, laguerre_hard, laguerre_soft};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SoftModel {
    Hermite,
    LaguerreL,
    LaguerreM,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HardModel {
    LaguerreL,
    LaguerreM,
    Jacobi,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// k-th largest eigenvalue / singular value under the soft-edge scaling
    SoftEdgeMatrix {
        model: SoftModel,
        n: usize,
        beta: Beta,
        #[serde(default)]
        a: f64,
        k: usize,
    },
    /// k-th smallest singular value (CS value for Jacobi), hard-edge scaled
    HardEdgeMatrix {
        model: HardModel,
        n: usize,
        beta: Beta,
        #[serde(default)]
        a: f64,
        #[serde(default)]
        b: f64,
        k: usize,
    },
    AiryRr {
        config: RayleighRitzConfig,
        k: usize,
    },
    BesselRr {
        config: RayleighRitzConfig,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Experiment {
    #[serde(flatten)]
    pub kind: ExperimentKind,
    pub samples: usize,
    pub seed: u64,
}

impl Experiment {
    pub fn new(kind: ExperimentKind, samples: usize, seed: u64) -> Self {
        Experiment {
            kind,
            samples,
            seed,
        }
    }

    /// First 16 hex digits of SHA-256 over the JSON of `kind` and `samples`
    /// (the seed is kept separate in file names).
    pub fn digest(&self) -> String {
        let body = serde_json::json!({ "experiment": self.kind, "samples": self.samples });
        let hash = Sha256::digest(body.to_string().as_bytes());
        hash.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    pub fn beta(&self) -> Beta {
        match &self.kind {
            ExperimentKind::SoftEdgeMatrix { beta, .. }
            | ExperimentKind::HardEdgeMatrix { beta, .. } => *beta,
            ExperimentKind::AiryRr { config, .. } | ExperimentKind::BesselRr { config } => {
                config.beta
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(invalid("samples must be at least 1"));
        }
        let k_ok = |k: usize, n: usize| {
            if k == 0 || k > n {
                Err(invalid(format!("k = {k} must lie in 1..={n}")))
            } else {
                Ok(())
            }
        };
        match &self.kind {
            ExperimentKind::SoftEdgeMatrix { n, k, .. }
            | ExperimentKind::HardEdgeMatrix { n, k, .. } => k_ok(*k, *n),
            ExperimentKind::AiryRr { config, k } => {
                config.validate()?;
                k_ok(*k, config.basis_size)
            }
            ExperimentKind::BesselRr { config } => config.validate(),
        }
    }
}

/// An experiment with its per-run precomputation (Rayleigh–Ritz bases).
pub struct Sampler {
    pub experiment: Experiment,
    airy: Option<AiryRayleighRitz>,
    bessel: Option<BesselRayleighRitz>,
}

impl Sampler {
    pub fn new(experiment: &Experiment) -> Result<Self> {
        experiment.validate()?;
        let (airy, bessel) = match &experiment.kind {
            ExperimentKind::AiryRr { config, .. } => (Some(AiryRayleighRitz::new(config)?), None),
            ExperimentKind::BesselRr { config } => (None, Some(BesselRayleighRitz::new(config)?)),
            _ => (None, None),
        };
        Ok(Sampler {
            experiment: experiment.clone(),
            airy,
            bessel,
        })
    }

    pub fn key(&self, index: usize) -> StreamKey {
        StreamKey::new(self.experiment.seed, index as u64)
    }

    /// The statistic of sample `index`, using the edge scalings applied to
    /// the unscaled spectrum.
    pub fn sample(&self, index: usize) -> Result<f64> {
        let key = self.key(index);
        match &self.experiment.kind {
            &ExperimentKind::SoftEdgeMatrix { model, n, beta, a, k } => {
                let nf = n as f64;
                match model {
                    SoftModel::Hermite => {
                        let h = sample_hermite(key, n, beta)?;
                        let lam = eig_tridiag_largest(&h.matrix, k)?[k - 1];
                        Ok(-(2f64.sqrt()) * nf.powf(1.0 / 6.0) * (lam - (2.0 * nf).sqrt()))
                    }
                    SoftModel::LaguerreL | SoftModel::LaguerreM => {
                        let b = if model == SoftModel::LaguerreL {
                            sample_laguerre_l(key, n, beta, a)?.matrix
                        } else {
                            sample_laguerre_m(key, n, beta, a)?.matrix
                        };
                        let s = largest_sv(&b, k)?;
                        Ok(-(2f64.powf(2.0 / 3.0)) * nf.powf(1.0 / 6.0) * (s - 2.0 * nf.sqrt()))
                    }
                }
            }
            &ExperimentKind::HardEdgeMatrix { model, n, beta, a, b, k } => {
                let nf = n as f64;
                match model {
                    HardModel::LaguerreL => {
                        let l = sample_laguerre_l(key, n, beta, a)?;
                        let s = sv_bidiag_smallest(&l.matrix, k)?[k - 1];
                        Ok(2f64.sqrt() * (2.0 * nf + a + 1.0).sqrt() * s)
                    }
                    HardModel::LaguerreM => {
                        let m = sample_laguerre_m(key, n, beta, a)?;
                        let s = sv_bidiag_smallest(&m.matrix, k)?[k - 1];
                        Ok(2f64.sqrt() * (2.0 * nf + a + 1.0).sqrt() * s)
                    }
                    HardModel::Jacobi => {
                        let j = sample_jacobi(key, n, beta, a, b)?;
                        let c = sv_bidiag_smallest(&j.b22, k)?[k - 1];
                        Ok((2.0 * nf + a + b + 1.0) * c)
                    }
                }
            }
            ExperimentKind::AiryRr { k, .. } => {
                let rr = self.airy.as_ref().expect("built in new");
                Ok(rr.sample(key, *k)?[k - 1])
            }
            ExperimentKind::BesselRr { .. } => self.bessel.as_ref().expect("built in new").sample(key),
        }
    }

    /// The same statistic through the scaled finite-difference models: the
    /// k-th least eigenvalue (soft) or singular value (hard).
    pub fn sample_scaled(&self, index: usize) -> Result<f64> {
        let key = self.key(index);
        let scaled = match self.experiment.kind {
            ExperimentKind::SoftEdgeMatrix { model, n, beta, a, .. } => match model {
                SoftModel::Hermite => hermite_soft(&sample_hermite(key, n, beta)?)?,
                SoftModel::LaguerreL => laguerre_soft(&sample_laguerre_l(key, n, beta, a)?)?,
                SoftModel::LaguerreM => laguerre_soft(&sample_laguerre_m(key, n, beta, a)?)?,
            },
            ExperimentKind::HardEdgeMatrix { model, n, beta, a, b, .. } => match model {
                HardModel::LaguerreL => laguerre_hard(&sample_laguerre_l(key, n, beta, a)?)?,
                HardModel::LaguerreM => laguerre_hard(&sample_laguerre_m(key, n, beta, a)?)?,
                HardModel::Jacobi => jacobi_hard(&sample_jacobi(key, n, beta, a, b)?)?,
            },
            _ => return self.sample(index),
        };
        let k = match self.experiment.kind {
            ExperimentKind::SoftEdgeMatrix { k, .. } | ExperimentKind::HardEdgeMatrix { k, .. } => k,
            _ => unreachable!(),
        };
        Ok(scaled.smallest(k)?[k - 1])
    }
}

/// k-th largest singular value via the Golub–Kahan tridiagonal.
fn largest_sv(b: &Bidiagonal, k: usize) -> Result<f64> {
    let off = b.golub_kahan_offdiag();
    let t = SymTridiagonal::new(vec![0.0; off.len() + 1], off)?;
    Ok(eig_tridiag_largest(&t, k)?[k - 1])
}

pub fn run_experiment_once(experiment: &Experiment, index: usize) -> Result<f64> {
    Sampler::new(experiment)?.sample(index)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub index: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McResult {
    pub experiment: Experiment,
    /// (sample index, value) for every successful sample, in index order
    pub raw: Vec<(usize, f64)>,
    pub failures: Vec<Failure>,
    pub histogram: Histogram,
}

impl McResult {
    pub fn values(&self) -> Vec<f64> {
        self.raw.iter().map(|r| r.1).collect()
    }
}

/// Largest tolerated fraction of failed samples (strictly below).
pub const FAILURE_TOLERANCE: f64 = 1e-3;

/// Runs all samples on `workers` threads (0 = rayon default) and bins them.
pub fn run_mc(experiment: &Experiment, workers: usize, bins: &Bins) -> Result<McResult> {
    let sampler = Sampler::new(experiment)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<f64>> = pool.install(|| {
        (0..experiment.samples)
            .into_par_iter()
            .map(|i| sampler.sample(i))
            .collect()
    });
    collect(experiment, results, bins)
}

fn collect(experiment: &Experiment, results: Vec<Result<f64>>, bins: &Bins) -> Result<McResult> {
    let total = results.len();
    let mut raw = Vec::with_capacity(total);
    let mut failures = Vec::new();
    for (index, r) in results.into_iter().enumerate() {
        match r {
            Ok(v) if v.is_finite() => raw.push((index, v)),
            Ok(v) => failures.push(Failure {
                index,
                message: format!("non-finite statistic {v}"),
            }),
            Err(e) if e.is_usage() => return Err(e),
            Err(e) => failures.push(Failure {
                index,
                message: e.to_string(),
            }),
        }
    }
    if failures.len() as f64 >= FAILURE_TOLERANCE * total as f64 && !failures.is_empty() {
        return Err(Error::TooManyFailures {
            failed: failures.len(),
            total,
            indices: failures.iter().map(|f| f.index).collect(),
        });
    }
    let values: Vec<f64> = raw.iter().map(|r| r.1).collect();
    let provenance = Provenance {
        seed: experiment.seed,
        digest: experiment.digest(),
    };
    let histogram = histogram(&values, bins, provenance)?;
    Ok(McResult {
        experiment: experiment.clone(),
        raw,
        failures,
        histogram,
    })
}

#[cfg(test)]
mod tests;
