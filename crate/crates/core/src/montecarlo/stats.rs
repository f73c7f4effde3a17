//! Histograms, sample moments and the two-sample Kolmogorov–Smirnov distance.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// Σ counts
    pub n_total: u64,
    /// values that fell outside explicit edges
    #[serde(default)]
    pub outside: u64,
    pub mean: f64,
    pub sd: f64,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
#[derive(Default)]
pub enum Bins {
    #[default]
    FreedmanDiaconis,
    Count(usize),
    Edges(Vec<f64>),
}


const MAX_BINS: usize = 10_000;

/// Mean and (n-1)-normalized standard deviation; sd is 0 for one value.
pub fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

fn uniform_edges(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let w = (hi - lo) / count as f64;
    let mut e: Vec<f64> = (0..=count).map(|i| lo + i as f64 * w).collect();
    e[count] = hi;
    e
}

pub fn histogram(values: &[f64], bins: &Bins, provenance: Provenance) -> Result<Histogram> {
    if values.is_empty() {
        return Err(invalid("cannot bin an empty sample"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let (lo, hi) = (sorted[0], sorted[sorted.len() - 1]);
    let edges = match bins {
        _ if lo == hi && !matches!(bins, Bins::Edges(_)) => vec![lo - 0.5, hi + 0.5],
        Bins::FreedmanDiaconis => {
            let iqr = quantile(&sorted, 0.75) - quantile(&sorted, 0.25);
            let width = 2.0 * iqr / (sorted.len() as f64).cbrt();
            let count = if width > 0.0 {
                ((hi - lo) / width).ceil() as usize
            } else {
                (sorted.len() as f64).sqrt().ceil() as usize
            };
            uniform_edges(lo, hi, count.clamp(1, MAX_BINS))
        }
        Bins::Count(c) => {
            if *c == 0 || *c > MAX_BINS {
                return Err(invalid(format!("bin count must lie in 1..={MAX_BINS}")));
            }
            uniform_edges(lo, hi, *c)
        }
        Bins::Edges(e) => {
            if e.len() < 2 || e.windows(2).any(|w| !(w[1] > w[0])) {
                return Err(invalid("bin edges must be strictly increasing, at least two"));
            }
            e.clone()
        }
    };
    let nb = edges.len() - 1;
    let mut counts = vec![0u64; nb];
    let mut outside = 0;
    for &v in &sorted {
        if v < edges[0] || v > edges[nb] {
            outside += 1;
            continue;
        }
        // right-open bins except the last
        let j = edges.partition_point(|e| *e <= v).saturating_sub(1).min(nb - 1);
        counts[j] += 1;
    }
    let (mean, sd) = mean_sd(values);
    Ok(Histogram {
        n_total: counts.iter().sum(),
        edges,
        counts,
        outside,
        mean,
        sd,
        provenance,
    })
}

/// sup_x |F_a(x) - F_b(x)| over the empirical CDFs.
pub fn ks_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(invalid("KS distance needs two nonempty samples"));
    }
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let (na, nb) = (x.len() as f64, y.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < x.len() && j < y.len() {
        let t = x[i].min(y[j]);
        while i < x.len() && x[i] <= t {
            i += 1;
        }
        while j < y.len() && y[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}
