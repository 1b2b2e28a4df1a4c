//! Monte-Carlo experiments.
//!
//! Samples are drawn in fixed blocks of [`BLOCK_SAMPLES`]; block `b` draws
//! from `RandomStream(master_seed, b)`. Per-block partials are collected in
//! block order and reduced sequentially, so results depend only on
//! `(samples, master_seed)` and every shorter run is a prefix of a longer one.

use rayon::prelude::*;
use serde::Serialize;

use super::nearest::FlatCodebook;
use crate::bounds::{ball_measure, covering_radius_approx, kissing_bounds, CoveringConvention};
use crate::codebook::Codebook;
use crate::error::{Error, Result};
use crate::geodesic::geodesic_midpoint;
use crate::haar::{haar_sample, haar_unitary};
use crate::pu::{distance_from_overlap, phase_distance};
use crate::rng::RandomStream;

/// Samples per RNG stream.
pub const BLOCK_SAMPLES: u64 = 4096;

/// Pairs closer than this are redrawn in [`kissing_mc`].
pub const DEGENERATE_PAIR: f64 = 1e-12;

/// Sample count, seed and scheduling of one experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MCConfig {
    pub samples: u64,
    pub master_seed: u64,
    /// Samples per work unit; rounded up to whole blocks.
    pub chunk: u64,
    /// Thread count; 0 uses the rayon default.
    pub workers: usize,
}

impl Default for MCConfig {
    fn default() -> Self {
        Self {
            samples: 100_000,
            master_seed: 42,
            chunk: 65_536,
            workers: 0,
        }
    }
}

impl MCConfig {
    pub fn new(samples: u64, master_seed: u64) -> Self {
        Self {
            samples,
            master_seed,
            ..Self::default()
        }
    }

    pub fn with_workers(self, workers: usize) -> Self {
        Self { workers, ..self }
    }

    pub fn with_chunk(self, chunk: u64) -> Self {
        Self { chunk, ..self }
    }

    fn require(&self, min: u64, what: &str) -> Result<()> {
        if self.samples < min {
            return Err(Error::InvalidParameter(format!(
                "{what} needs at least {min} samples, got {}",
                self.samples
            )));
        }
        Ok(())
    }

    /// Runs `f(stream, count)` once per block and returns the partials in
    /// block order.
    fn run_blocks<T, F>(&self, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&mut RandomStream, u64) -> Result<T> + Sync,
    {
        let blocks = self.samples.div_ceil(BLOCK_SAMPLES);
        let per_unit = self.chunk.max(1).div_ceil(BLOCK_SAMPLES);
        let units = blocks.div_ceil(per_unit);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        let nested: Vec<Result<Vec<T>>> = pool.install(|| {
            (0..units)
                .into_par_iter()
                .map(|u| {
                    let end = ((u + 1) * per_unit).min(blocks);
                    (u * per_unit..end)
                        .map(|b| {
                            let count = BLOCK_SAMPLES.min(self.samples - b * BLOCK_SAMPLES);
                            f(&mut RandomStream::new(self.master_seed, b), count)
                        })
                        .collect()
                })
                .collect()
        });
        let mut out = Vec::with_capacity(blocks as usize);
        for unit in nested {
            out.extend(unit?);
        }
        Ok(out)
    }
}

/// One point of the empirical ball CDF.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BallCdfRow {
    #[serde(rename = "R")]
    pub r: f64,
    pub empirical: f64,
    pub predicted: f64,
    pub stderr: f64,
}

/// A random pair with its midpoint distance and the kissing bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KissingSample {
    pub delta: f64,
    pub mid: f64,
    pub lo: f64,
    pub hi: f64,
}

impl KissingSample {
    pub fn within_bounds(&self, tol: f64) -> bool {
        self.lo - tol <= self.mid && self.mid <= self.hi + tol
    }
}

/// Mean squared distance to the nearest codeword.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DistortionResult {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
}

/// Largest nearest-codeword distance seen; a lower estimate of the
/// covering radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoveringEstimate {
    pub rho_hat: f64,
    pub samples: u64,
}

fn check_ball_grid(r_grid: &[f64]) -> Result<()> {
    let increasing = r_grid.windows(2).all(|w| w[0] < w[1]);
    let in_range = r_grid.iter().all(|&r| r > 0.0 && r <= 1.0);
    if r_grid.is_empty() || !increasing || !in_range {
        return Err(Error::InvalidParameter(
            "radius grid must be non-empty, increasing and inside (0, 1]".into(),
        ));
    }
    Ok(())
}

/// Empirical CDF of `d(I, U)` for Haar `U` at each radius of `r_grid`.
pub fn ball_measure_mc(n: usize, cfg: &MCConfig, r_grid: &[f64]) -> Result<Vec<BallCdfRow>> {
    check_ball_grid(r_grid)?;
    cfg.require(1, "ball measure")?;
    let predicted = r_grid
        .iter()
        .map(|&r| ball_measure(n, r))
        .collect::<Result<Vec<_>>>()?;
    let partials = cfg.run_blocks(|rng, count| {
        // hist[k] counts samples whose distance is at most r_grid[k] but
        // exceeds r_grid[k-1].
        let mut hist = vec![0u64; r_grid.len()];
        for _ in 0..count {
            let u = haar_unitary(n, rng);
            let d = distance_from_overlap(u.matrix().trace().norm(), n);
            let k = r_grid.partition_point(|&r| r < d);
            if k < hist.len() {
                hist[k] += 1;
            }
        }
        Ok(hist)
    })?;
    let total = cfg.samples as f64;
    let mut cum = 0u64;
    Ok(r_grid
        .iter()
        .enumerate()
        .map(|(k, &r)| {
            cum += partials.iter().map(|h| h[k]).sum::<u64>();
            let p = cum as f64 / total;
            BallCdfRow {
                r,
                empirical: p,
                predicted: predicted[k],
                stderr: (p * (1.0 - p) / total).sqrt(),
            }
        })
        .collect())
}

/// Midpoint distances of Haar pairs against the kissing bounds.
pub fn kissing_mc(n: usize, cfg: &MCConfig) -> Result<Vec<KissingSample>> {
    cfg.require(1000, "kissing experiment")?;
    let partials = cfg.run_blocks(|rng, count| {
        let mut out = Vec::with_capacity(count as usize);
        while (out.len() as u64) < count {
            let u = haar_sample(n, rng)?;
            let v = haar_sample(n, rng)?;
            let delta = phase_distance(&u, &v)?;
            if delta < DEGENERATE_PAIR {
                continue;
            }
            let mid = phase_distance(&u, &geodesic_midpoint(&u, &v)?)?;
            let (lo, hi) = kissing_bounds(delta)?;
            out.push(KissingSample { delta, mid, lo, hi });
        }
        Ok(out)
    })?;
    Ok(partials.into_iter().flatten().collect())
}

/// Distortion and covering estimate from a single pass over the same
/// samples, so `mean ≤ rho_hat²` holds exactly.
pub fn quantization_mc(
    cb: &Codebook,
    cfg: &MCConfig,
) -> Result<(DistortionResult, CoveringEstimate)> {
    cfg.require(1, "quantization experiment")?;
    let flat = FlatCodebook::new(cb)?;
    let n = cb.n();
    let partials = cfg.run_blocks(|rng, count| {
        let (mut sum, mut sum_sq, mut max) = (0.0f64, 0.0f64, 0.0f64);
        for _ in 0..count {
            let q = haar_unitary(n, rng);
            let (_, d) = flat.nearest(q.matrix())?;
            let d2 = d * d;
            sum += d2;
            sum_sq += d2 * d2;
            max = max.max(d);
        }
        Ok((sum, sum_sq, max))
    })?;
    let (mut sum, mut sum_sq, mut max) = (0.0, 0.0, 0.0f64);
    for (s, s2, m) in partials {
        sum += s;
        sum_sq += s2;
        max = max.max(m);
    }
    let total = cfg.samples as f64;
    let mean = sum / total;
    let var = if cfg.samples > 1 {
        ((sum_sq - total * mean * mean) / (total - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok((
        DistortionResult {
            mean,
            stderr: (var / total).sqrt(),
            samples: cfg.samples,
        },
        CoveringEstimate {
            rho_hat: max,
            samples: cfg.samples,
        },
    ))
}

/// Mean squared nearest-codeword distance over Haar samples.
pub fn distortion_mc(cb: &Codebook, cfg: &MCConfig) -> Result<DistortionResult> {
    cfg.require(1000, "distortion experiment")?;
    Ok(quantization_mc(cb, cfg)?.0)
}

/// Running maximum of the nearest-codeword distance over Haar samples.
pub fn covering_radius_mc(cb: &Codebook, cfg: &MCConfig) -> Result<CoveringEstimate> {
    cfg.require(10_000, "covering experiment")?;
    Ok(quantization_mc(cb, cfg)?.1)
}

/// Measured covering estimates compared with both unit conventions of the
/// random-code covering approximation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoveringArbitration {
    pub n: usize,
    pub points: usize,
    /// Mean `|ln(rho_hat / approx)|` under the Frobenius-literal convention.
    pub frobenius_log_error: f64,
    /// Mean `|ln(rho_hat / approx)|` under the metric-consistent convention.
    pub metric_log_error: f64,
    /// Every estimate lies between the two approximations.
    pub bracketed: bool,
    pub closer: Convention,
}

/// Serializable name of a [`CoveringConvention`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    FrobeniusLiteral,
    MetricConsistent,
}

/// Decides which convention tracks `(K, rho_hat)` estimates in `PU_n`.
/// Points with `K < 3`, where the approximation is undefined, are skipped.
pub fn arbitrate_covering(n: usize, points: &[(f64, f64)]) -> Result<CoveringArbitration> {
    let mut used = 0usize;
    let (mut ef, mut em) = (0.0, 0.0);
    let mut bracketed = true;
    for &(k, rho) in points.iter().filter(|(k, _)| *k >= 3.0) {
        let f = covering_radius_approx(n, k, CoveringConvention::FrobeniusLiteral)?;
        let m = covering_radius_approx(n, k, CoveringConvention::MetricConsistent)?;
        ef += (rho / f).ln().abs();
        em += (rho / m).ln().abs();
        bracketed &= f.min(m) <= rho && rho <= f.max(m);
        used += 1;
    }
    if used == 0 {
        return Err(Error::InvalidParameter(
            "no covering estimate with K >= 3".into(),
        ));
    }
    let (ef, em) = (ef / used as f64, em / used as f64);
    Ok(CoveringArbitration {
        n,
        points: used,
        frobenius_log_error: ef,
        metric_log_error: em,
        bracketed,
        closer: if em <= ef {
            Convention::MetricConsistent
        } else {
            Convention::FrobeniusLiteral
        },
    })
}
