//! Keyed random streams, Brownian paths and stochastic integrals.
//!
//! Every variate is drawn from a ChaCha stream selected by a [`StreamKey`]:
//! the seed picks the key and the stream id picks one of 2^64 independent
//! streams. A Monte Carlo sample uses `StreamKey::new(seed, sample_index)`, so
//! results never depend on which worker drew them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StreamKey {
    pub seed: u64,
    pub stream_id: u64,
}

impl StreamKey {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        StreamKey { seed, stream_id }
    }

    pub fn stream(self) -> Stream {
        Stream::new(self)
    }
}

/// A sequential random source bound to one key.
pub struct Stream {
    rng: ChaCha20Rng,
}

impl Stream {
    pub fn new(key: StreamKey) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(key.seed);
        rng.set_stream(key.stream_id);
        Stream { rng }
    }

    pub fn gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn gaussians(&mut self, count: usize) -> Vec<f64> {
        (0..count).map(|_| self.gaussian()).collect()
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// χ_r² ~ Gamma(shape r/2, scale 2).
    pub fn chi_square(&mut self, r: f64) -> Result<f64> {
        if !(r.is_finite() && r > 0.0) {
            return Err(domain(format!("chi degrees of freedom must be > 0, got {r}")));
        }
        Ok(self.gamma(0.5 * r, 2.0))
    }

    pub fn chi(&mut self, r: f64) -> Result<f64> {
        Ok(self.chi_square(r)?.sqrt())
    }

    /// Beta(c, d) on (0, 1) via X/(X+Y) with X ~ Gamma(c), Y ~ Gamma(d).
    pub fn beta(&mut self, c: f64, d: f64) -> Result<f64> {
        Ok(self.beta_pair(c, d)?.0)
    }

    /// A Beta(c, d) draw x returned together with 1 - x, each computed
    /// without cancellation.
    pub fn beta_pair(&mut self, c: f64, d: f64) -> Result<(f64, f64)> {
        if !(c.is_finite() && c > 0.0 && d.is_finite() && d > 0.0) {
            return Err(domain(format!("beta parameters must be > 0, got ({c}, {d})")));
        }
        loop {
            let x = self.gamma(c, 1.0);
            let y = self.gamma(d, 1.0);
            let s = x + y;
            // both draws can underflow for tiny shapes; redraw
            if s > 0.0 && x > 0.0 && y > 0.0 {
                return Ok((x / s, y / s));
            }
        }
    }

    fn gamma(&mut self, shape: f64, scale: f64) -> f64 {
        // parameters are validated by the callers
        Gamma::new(shape, scale)
            .expect("valid gamma parameters")
            .sample(&mut self.rng)
    }
}

/// `count` i.i.d. N(0,1) draws from the stream `key`.
pub fn gaussian(key: StreamKey, count: usize) -> Vec<f64> {
    key.stream().gaussians(count)
}

/// One χ_r draw from the stream `key`.
pub fn chi(key: StreamKey, r: f64) -> Result<f64> {
    key.stream().chi(r)
}

/// One Beta(c, d) draw from the stream `key`.
pub fn beta_variate(key: StreamKey, c: f64, d: f64) -> Result<f64> {
    key.stream().beta(c, d)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BrownianPath {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub increments: Vec<f64>,
}

impl BrownianPath {
    /// The identically zero path on `grid` (the β = ∞ limit of every noise term).
    pub fn zero(grid: Vec<f64>) -> Result<Self> {
        check_grid(&grid)?;
        let n = grid.len();
        Ok(BrownianPath {
            grid,
            values: vec![0.0; n],
            increments: vec![0.0; n.saturating_sub(1)],
        })
    }

    /// Builds a path from increments; `values` are their partial sums from 0.
    pub fn from_increments(grid: Vec<f64>, increments: Vec<f64>) -> Result<Self> {
        check_grid(&grid)?;
        if increments.len() + 1 != grid.len() {
            return Err(Error::Shape(format!(
                "{} increments for a grid of {} points",
                increments.len(),
                grid.len()
            )));
        }
        let mut values = Vec::with_capacity(grid.len());
        let mut b = 0.0;
        values.push(b);
        for d in &increments {
            b += d;
            values.push(b);
        }
        Ok(BrownianPath {
            grid,
            values,
            increments,
        })
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(invalid("grid must have at least one point"));
    }
    if grid.iter().any(|x| !x.is_finite()) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("grid must be finite and strictly increasing"));
    }
    Ok(())
}

/// A Brownian path on `grid` with B(grid[0]) = 0.
pub fn brownian_path(key: StreamKey, grid: &[f64]) -> Result<BrownianPath> {
    let mut s = key.stream();
    brownian_path_from(&mut s, grid)
}

pub fn brownian_path_from(stream: &mut Stream, grid: &[f64]) -> Result<BrownianPath> {
    check_grid(grid)?;
    let inc = grid
        .windows(2)
        .map(|w| (w[1] - w[0]).sqrt() * stream.gaussian())
        .collect();
    BrownianPath::from_increments(grid.to_vec(), inc)
}

/// Left-point sum Σ f(grid[i]) (B(grid[i+1]) - B(grid[i])).
pub fn ito_integral_deterministic(f: &[f64], path: &BrownianPath) -> Result<f64> {
    if f.len() != path.grid.len() {
        return Err(Error::Shape(format!(
            "integrand has {} samples, grid has {}",
            f.len(),
            path.grid.len()
        )));
    }
    Ok(f.iter().zip(&path.increments).map(|(a, b)| a * b).sum())
}

/// Uniform grid left, left + mesh, ..., with the last point clamped to `right`
/// when the interval is not a whole number of steps.
pub fn uniform_grid(left: f64, right: f64, mesh: f64) -> Result<Vec<f64>> {
    if !(mesh > 0.0 && mesh.is_finite() && right > left) {
        return Err(invalid(format!(
            "need mesh > 0 and right > left, got mesh {mesh} on ({left}, {right})"
        )));
    }
    let steps = ((right - left) / mesh - 1e-9).ceil() as usize;
    let mut g: Vec<f64> = (0..=steps).map(|i| left + i as f64 * mesh).collect();
    *g.last_mut().unwrap() = right;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::digamma;

    fn mean_var(x: &[f64]) -> (f64, f64) {
        let n = x.len() as f64;
        let m = x.iter().sum::<f64>() / n;
        let v = x.iter().map(|y| (y - m).powi(2)).sum::<f64>() / (n - 1.0);
        (m, v)
    }

    #[test]
    fn gaussian_moments_and_determinism() {
        let key = StreamKey::new(7, 0);
        let g = gaussian(key, 1_000_000);
        let (m, v) = mean_var(&g);
        assert!(m.abs() < 0.01);
        assert!((v - 1.0).abs() < 0.01);
        assert_eq!(g[..1000], gaussian(key, 1000)[..]);
        assert_ne!(g[..10], gaussian(StreamKey::new(7, 1), 10)[..]);
        assert_ne!(g[..10], gaussian(StreamKey::new(8, 0), 10)[..]);
    }

    #[test]
    fn chi_square_mean() {
        let mut s = StreamKey::new(1, 2).stream();
        let r = 3.7;
        let n = 1_000_000;
        let m = (0..n).map(|_| s.chi_square(r).unwrap()).sum::<f64>() / n as f64;
        assert!((m - r).abs() < 0.02, "{m}");
        assert!(s.chi(0.0).is_err());
        assert!((0..1000).all(|_| s.chi(0.3).unwrap() > 0.0));
    }

    #[test]
    fn log_chi_mean_uses_half_digamma() {
        let r = 50.0;
        let mut s = StreamKey::new(3, 0).stream();
        let n = 1_000_000;
        let m = (0..n)
            .map(|_| (s.chi(r).unwrap() / r.sqrt()).ln())
            .sum::<f64>()
            / n as f64;
        let want = -0.5 * (r / 2.0).ln() + 0.5 * digamma(r / 2.0).unwrap();
        assert!((m - want).abs() < 0.002, "{m} vs {want}");
    }

    #[test]
    fn beta_moments() {
        let mut s = StreamKey::new(11, 0).stream();
        let n = 1_000_000;
        let m = (0..n).map(|_| s.beta(2.0, 3.0).unwrap()).sum::<f64>() / n as f64;
        assert!((m - 0.4).abs() < 0.002);
        let m = (0..n).map(|_| s.beta(1.5, 1.5).unwrap()).sum::<f64>() / n as f64;
        assert!((m - 0.5).abs() < 0.002);
        assert!(s.beta(0.0, 1.0).is_err());
    }

    #[test]
    fn log_tan_squared_mean() {
        // cos²θ ~ Beta(c, d) ⇒ tan²θ = (1 - x)/x
        let (c, d) = (4.0, 6.0);
        let mut s = StreamKey::new(5, 9).stream();
        let n = 1_000_000;
        let m = (0..n)
            .map(|_| {
                let (x, y) = s.beta_pair(c, d).unwrap();
                (y / x).ln()
            })
            .sum::<f64>()
            / n as f64;
        let want = digamma(d).unwrap() - digamma(c).unwrap();
        assert!((m - want).abs() < 0.01);
    }

    #[test]
    fn brownian_path_statistics() {
        let grid: Vec<f64> = (0..=10).map(|i| i as f64 * 0.1).collect();
        let paths: Vec<BrownianPath> = (0..100_000)
            .map(|i| brownian_path(StreamKey::new(2, i), &grid).unwrap())
            .collect();
        assert!(paths.iter().all(|p| p.values[0] == 0.0));
        let end: Vec<f64> = paths.iter().map(|p| p.values[10]).collect();
        let (_, v) = mean_var(&end);
        assert!((v - 1.0).abs() < 0.02);
        let a: Vec<f64> = paths.iter().map(|p| p.increments[2]).collect();
        let b: Vec<f64> = paths.iter().map(|p| p.increments[7]).collect();
        let (ma, va) = mean_var(&a);
        let (mb, vb) = mean_var(&b);
        let cov = a.iter().zip(&b).map(|(x, y)| (x - ma) * (y - mb)).sum::<f64>()
            / (a.len() as f64 - 1.0);
        assert!((cov / (va * vb).sqrt()).abs() < 0.02);
        assert!((va - 0.1).abs() < 0.003);
    }

    #[test]
    fn ito_integrals() {
        let grid = uniform_grid(0.0, 1.0, 0.01).unwrap();
        let p = brownian_path(StreamKey::new(4, 4), &grid).unwrap();
        let zero = vec![0.0; grid.len()];
        assert_eq!(ito_integral_deterministic(&zero, &p).unwrap(), 0.0);
        let one = vec![1.0; grid.len()];
        let i1 = ito_integral_deterministic(&one, &p).unwrap();
        assert!((i1 - p.values.last().unwrap()).abs() < 1e-12);
        assert!(ito_integral_deterministic(&one[1..], &p).is_err());

        // Itô isometry for three integrands
        let cases: [(fn(f64) -> f64, f64); 3] = [
            (|t| t, 1.0 / 3.0),
            (|t| 1.0 - t, 1.0 / 3.0),
            (|t| (std::f64::consts::PI * t).sin(), 0.5),
        ];
        for (f, want) in cases {
            let fv: Vec<f64> = grid.iter().map(|&t| f(t)).collect();
            // left-point discretization of ∫f² dt
            let disc: f64 = fv[..fv.len() - 1].iter().map(|x| x * x * 0.01).sum();
            let xs: Vec<f64> = (0..100_000)
                .map(|i| {
                    let p = brownian_path(StreamKey::new(6, i), &grid).unwrap();
                    ito_integral_deterministic(&fv, &p).unwrap()
                })
                .collect();
            let (_, v) = mean_var(&xs);
            assert!((v - want).abs() < 0.01 + (disc - want).abs(), "{v} vs {want}");
        }
    }

    #[test]
    fn rejects_bad_grid() {
        assert!(brownian_path(StreamKey::new(0, 0), &[0.0, 0.5, 0.5]).is_err());
        assert!(brownian_path(StreamKey::new(0, 0), &[]).is_err());
    }

    #[test]
    fn uniform_grid_hits_endpoint() {
        let g = uniform_grid(0.0, 86.9, 0.05).unwrap();
        assert_eq!(g.len(), 1739);
        assert_eq!(*g.last().unwrap(), 86.9);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }
}
