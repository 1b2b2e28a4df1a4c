//! Closed-form volumes, packing and covering bounds, and family formulas.
//!
//! All ball measures use the small-radius leading term `c_n·R^D` with
//! `D = n² − 1`, clamped at 1.

use std::f64::consts::PI;

use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::codebook::Kind;
use crate::error::{Error, Result};

/// Largest dimension for which the group volumes are evaluated.
pub const MAX_VOLUME_DIM: usize = 8;

/// Rows whose unclamped ball measure exceeds this are outside the
/// small-ball regime.
pub const SMALL_BALL_LIMIT: f64 = 0.5;

/// Manifold dimension `n² − 1` of `PU_n`.
pub fn manifold_dim(n: usize) -> u32 {
    (n * n - 1) as u32
}

/// Volume of the Euclidean `D`-ball of radius `R`.
pub fn sphere_volume(dim: u32, radius: f64) -> f64 {
    let d = dim as f64;
    PI.powf(d / 2.0) * radius.powf(d) / gamma(d / 2.0 + 1.0)
}

fn factorial_product(n: usize) -> f64 {
    // Π_{i=1}^{n} (i−1)!
    let mut prod = 1.0;
    let mut fact = 1.0;
    for i in 1..=n {
        if i > 1 {
            fact *= (i - 1) as f64;
        }
        prod *= fact;
    }
    prod
}

fn check_volume_dim(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidParameter(format!(
            "dimension must be at least {min}, got {n}"
        )));
    }
    if n > MAX_VOLUME_DIM {
        return Err(Error::Unsupported(format!(
            "volumes are evaluated for n <= {MAX_VOLUME_DIM}, got {n}"
        )));
    }
    Ok(())
}

/// `Vol(U_n) = (2π)^{n(n+1)/2} / Π (i−1)!`.
pub fn unitary_group_volume(n: usize) -> Result<f64> {
    check_volume_dim(n, 1)?;
    let exp = (n * (n + 1) / 2) as i32;
    Ok((2.0 * PI).powi(exp) / factorial_product(n))
}

/// `Vol(PU_n) = Vol(U_n) / (2π√n)`: the phase circle has radius `√n`.
pub fn pu_volume(n: usize) -> Result<f64> {
    check_volume_dim(n, 2)?;
    Ok(unitary_group_volume(n)? / (2.0 * PI * (n as f64).sqrt()))
}

/// `c_n = (2π)^{−(n−1)/2} · n^{n²/2} · Π (i−1)! / Γ((n²−1)/2 + 1)`.
pub fn ball_constant(n: usize) -> Result<f64> {
    check_volume_dim(n, 2)?;
    let nf = n as f64;
    Ok(
        (2.0 * PI).powf(-(nf - 1.0) / 2.0) * nf.powf(nf * nf / 2.0) * factorial_product(n)
            / gamma((nf * nf - 1.0) / 2.0 + 1.0),
    )
}

/// Leading term `c_n·R^D` without the clamp.
pub fn ball_measure_unclamped(n: usize, radius: f64) -> Result<f64> {
    if !(radius >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "radius must be >= 0, got {radius}"
        )));
    }
    Ok(ball_constant(n)? * radius.powi(manifold_dim(n) as i32))
}

/// `min(1, c_n·R^D)`.
pub fn ball_measure(n: usize, radius: f64) -> Result<f64> {
    Ok(ball_measure_unclamped(n, radius)?.min(1.0))
}

/// Inverse of the unclamped measure: the radius whose ball has measure `1/K`.
fn radius_for_cardinality(n: usize, k: f64) -> Result<f64> {
    if !(k > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "cardinality must be > 0, got {k}"
        )));
    }
    Ok((ball_constant(n)? * k).powf(-1.0 / manifold_dim(n) as f64))
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "minimum distance must be in (0, 1], got {delta}"
        )));
    }
    Ok(())
}

/// Lower (`ϱ̲`) and upper (`ϱ̄`) kissing-radius bounds for minimum distance
/// `δ`, independent of `n`.
pub fn kissing_bounds(delta: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::InvalidParameter(format!(
            "minimum distance must be in [0, 1], got {delta}"
        )));
    }
    Ok((kissing_lower(delta), kissing_upper(delta)))
}

// Both radii are evaluated as `sqrt((1 − y)/(1 + sqrt(y)))`, which has no
// cancellation as `δ → 0`.
fn kissing_lower(delta: f64) -> f64 {
    let one_minus_y = delta * delta / 2.0;
    (one_minus_y / (1.0 + (1.0 - one_minus_y).sqrt())).sqrt()
}

fn kissing_upper(delta: f64) -> f64 {
    let d2 = delta * delta;
    let one_minus_y = d2 * (2.0 - d2) / 2.0;
    (one_minus_y / (1.0 + (1.0 - one_minus_y).sqrt())).sqrt()
}

/// Gilbert–Varshamov: some code with minimum distance `δ` has at least
/// this many codewords.
pub fn gv_cardinality(n: usize, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    Ok(1.0 / ball_measure(n, delta)?)
}

/// Minimum distance at which the GV guarantee reaches `K`.
pub fn gv_delta(n: usize, k: f64) -> Result<f64> {
    radius_for_cardinality(n, k)
}

/// Hamming: any code with minimum distance `δ` has at most this many codewords.
pub fn hamming_cardinality(n: usize, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    Ok(1.0 / ball_measure(n, delta / 2.0)?)
}

pub fn hamming_delta(n: usize, k: f64) -> Result<f64> {
    Ok(2.0 * radius_for_cardinality(n, k)?)
}

/// Hamming bound with balls of the kissing lower bound `ϱ̲(δ)`.
pub fn tight_hamming_cardinality(n: usize, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    Ok(1.0 / ball_measure(n, kissing_lower(delta))?)
}

/// Analytic inverse of `ϱ̲`: `δ = sqrt(2(1 − (1 − r²)²))` with `r` the
/// radius of measure `1/K`. Exceeds 1 for small `K`, where no code meets it.
pub fn tight_hamming_delta(n: usize, k: f64) -> Result<f64> {
    let r = radius_for_cardinality(n, k)?;
    let r2 = r * r;
    // 1 − (1 − r²)² = r²(2 − r²)
    Ok((2.0 * r2 * (2.0 - r2)).max(0.0).sqrt())
}

/// Lower and upper bound on the optimal distortion at cardinality `K`; the
/// `1 + o(1)` factor of the upper bound is taken as exactly 1.
pub fn distortion_rate_bounds(n: usize, k: f64) -> Result<(f64, f64)> {
    if !(k >= 2.0) {
        return Err(Error::InvalidParameter(format!("K must be >= 2, got {k}")));
    }
    let d = manifold_dim(n) as f64;
    let scale = (ball_constant(n)? * k).powf(-2.0 / d);
    let lower = d / (d + 2.0) * scale;
    let upper = 2.0 * gamma(2.0 / d) / d * scale;
    Ok((lower, upper))
}

/// Which packing radius the distortion upper bound uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistortionMode {
    /// Flat-space packing radius `δ/2`.
    HalfDelta,
    /// Kissing-radius lower bound `ϱ̲(δ)`.
    Kissing,
}

/// `(r² − 1)·K·μ(B(r)) + 1` with `r` chosen by `mode`.
pub fn distortion_upper_bound(n: usize, k: f64, delta: f64, mode: DistortionMode) -> Result<f64> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::InvalidParameter(format!(
            "minimum distance must be in [0, 1], got {delta}"
        )));
    }
    let r = match mode {
        DistortionMode::HalfDelta => delta / 2.0,
        DistortionMode::Kissing => kissing_lower(delta),
    };
    Ok((r * r - 1.0) * k * ball_measure(n, r)? + 1.0)
}

/// Covering-argument lower bound `(1/(c_n K))^{1/D}` on the covering radius.
pub fn covering_lower_bound(n: usize, k: f64) -> Result<f64> {
    if !(k >= 1.0) {
        return Err(Error::InvalidParameter(format!("K must be >= 1, got {k}")));
    }
    radius_for_cardinality(n, k)
}

/// Unit convention for the random-code covering-radius approximation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoveringConvention {
    /// `(Vol(PU_n)/V_D(1) · log K / K)^{1/D}`, Frobenius units.
    FrobeniusLiteral,
    /// `((1/c_n) · log K / K)^{1/D}`, units of the phase-invariant metric.
    MetricConsistent,
}

/// Covering radius of a random `K`-point code (natural log).
pub fn covering_radius_approx(n: usize, k: f64, convention: CoveringConvention) -> Result<f64> {
    if !(k >= 3.0) {
        return Err(Error::InvalidParameter(format!("K must be >= 3, got {k}")));
    }
    let d = manifold_dim(n);
    let factor = match convention {
        CoveringConvention::FrobeniusLiteral => pu_volume(n)? / sphere_volume(d, 1.0),
        CoveringConvention::MetricConsistent => 1.0 / ball_constant(n)?,
    };
    Ok((factor * k.ln() / k).powf(1.0 / d as f64))
}

/// Closed-form minimum distance of the group families.
pub fn family_min_distance(kind: Kind, m: usize, k: Option<u32>) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    match kind {
        Kind::Pauli => Ok(1.0),
        Kind::Clifford => Ok((1.0 - std::f64::consts::FRAC_1_SQRT_2).sqrt()),
        Kind::DiagHierarchy => {
            let k = k.ok_or_else(|| Error::InvalidParameter("diagonal family needs k".into()))?;
            if k < 1 {
                return Err(Error::InvalidParameter("k must be at least 1".into()));
            }
            let psi = 2.0 * PI / f64::powi(2.0, k as i32);
            Ok((1.0 - (psi / 2.0).cos()).sqrt())
        }
        other => Err(Error::Unsupported(format!(
            "no closed-form minimum distance for {other}; compute it numerically"
        ))),
    }
}

fn binomial(n: u32, k: u32) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn pow2(exp: u32) -> Result<u128> {
    1u128
        .checked_shl(exp)
        .filter(|_| exp < 128)
        .ok_or_else(|| Error::Unsupported(format!("2^{exp} overflows")))
}

fn overflow() -> Error {
    Error::Unsupported("cardinality overflows 128 bits".into())
}

fn require_param(kind: Kind, param: Option<u32>) -> Result<u32> {
    param.ok_or_else(|| Error::InvalidParameter(format!("{kind} needs a level or gate count")))
}

fn require_single_qubit(kind: Kind, m: usize) -> Result<()> {
    if m != 1 {
        return Err(Error::InvalidParameter(format!(
            "{kind} is single-qubit, got m={m}"
        )));
    }
    Ok(())
}

/// Exact closed-form cardinality of a family.
pub fn family_cardinality(kind: Kind, m: usize, param: Option<u32>) -> Result<u128> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let m32 = m as u32;
    match kind {
        Kind::Pauli => pow2(2 * m32),
        Kind::Clifford => {
            let mut total = pow2(m32 * m32 + 2 * m32)?;
            for i in 1..=m32 {
                total = total.checked_mul(pow2(2 * i)? - 1).ok_or_else(overflow)?;
            }
            Ok(total)
        }
        Kind::DiagHierarchy => {
            let k = require_param(kind, param)?;
            if k < 1 {
                return Err(Error::InvalidParameter("k must be at least 1".into()));
            }
            let top = (k - 1).min(m32 - 1);
            let mut exp: u128 = 0;
            for j in 0..=top {
                exp += (k - j) as u128 * binomial(m32, j + 1);
            }
            let exp = u32::try_from(exp).map_err(|_| overflow())?;
            pow2(exp)
        }
        Kind::SemiClifford => {
            require_single_qubit(kind, m)?;
            let k = require_param(kind, param)?;
            if k < 2 {
                return Err(Error::InvalidParameter("semi-Clifford needs k >= 2".into()));
            }
            Ok(24 * (3 * pow2(k - 2)? - 2))
        }
        Kind::CliffordT => {
            require_single_qubit(kind, m)?;
            let l = require_param(kind, param)?;
            let inner = pow2(l)?.checked_mul(3).ok_or_else(overflow)? - 2;
            inner.checked_mul(24).ok_or_else(overflow)
        }
        Kind::CliffordS => {
            require_single_qubit(kind, m)?;
            let l = require_param(kind, param)?;
            let six = 6u128.checked_pow(l).ok_or_else(overflow)?;
            let inner = 9 * (six - 1) / 5 + 1;
            inner.checked_mul(24).ok_or_else(overflow)
        }
        Kind::Custom => Err(Error::Unsupported(
            "custom codebooks have no closed form".into(),
        )),
    }
}

/// A point at which bounds are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundQuery {
    pub n: usize,
    /// Manifold dimension `n² − 1`.
    pub dim: u32,
    pub cardinality: Option<f64>,
    pub delta: Option<f64>,
}

impl BoundQuery {
    pub fn new(n: usize, cardinality: Option<f64>, delta: Option<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "n must be at least 2, got {n}"
            )));
        }
        if let Some(d) = delta {
            if !(0.0..=1.0).contains(&d) {
                return Err(Error::InvalidParameter(format!(
                    "minimum distance must be in [0, 1], got {d}"
                )));
            }
        }
        Ok(Self {
            n,
            dim: manifold_dim(n),
            cardinality,
            delta,
        })
    }
}

/// Every bound that applies at a query point.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BoundsRow {
    pub n: usize,
    pub dim: u32,
    pub cardinality: Option<f64>,
    pub delta: Option<f64>,
    pub vol_pu: Option<f64>,
    pub ball_measure: Option<f64>,
    pub gv_k: Option<f64>,
    pub hamming_k: Option<f64>,
    pub tight_hamming_k: Option<f64>,
    pub delta_gv: Option<f64>,
    pub delta_hamming: Option<f64>,
    pub delta_tight_hamming: Option<f64>,
    pub kiss_lower: Option<f64>,
    pub kiss_upper: Option<f64>,
    pub dist_lower: Option<f64>,
    pub dist_upper: Option<f64>,
    pub dist_upper_simple: Option<f64>,
    pub dist_upper_kissing: Option<f64>,
    pub cover_lower: Option<f64>,
    pub cover_approx_frobenius_conv: Option<f64>,
    pub cover_approx_metric_conv: Option<f64>,
    /// Set when `c_n·δ^D` exceeds [`SMALL_BALL_LIMIT`].
    pub beyond_small_ball: bool,
}

impl BoundsRow {
    fn echo(q: &BoundQuery) -> Self {
        Self {
            n: q.n,
            dim: q.dim,
            cardinality: q.cardinality,
            delta: q.delta,
            ..Default::default()
        }
    }
}

/// GV fields of a row.
pub fn gv_bound(q: &BoundQuery) -> Result<BoundsRow> {
    let mut row = BoundsRow::echo(q);
    if let Some(d) = q.delta {
        row.gv_k = Some(gv_cardinality(q.n, d)?);
    }
    if let Some(k) = q.cardinality {
        row.delta_gv = Some(gv_delta(q.n, k)?);
    }
    Ok(row)
}

/// Hamming fields of a row.
pub fn hamming_bound(q: &BoundQuery) -> Result<BoundsRow> {
    let mut row = BoundsRow::echo(q);
    if let Some(d) = q.delta {
        row.hamming_k = Some(hamming_cardinality(q.n, d)?);
    }
    if let Some(k) = q.cardinality {
        row.delta_hamming = Some(hamming_delta(q.n, k)?);
    }
    Ok(row)
}

/// Kissing-refined Hamming fields of a row.
pub fn tight_hamming_bound(q: &BoundQuery) -> Result<BoundsRow> {
    let mut row = BoundsRow::echo(q);
    if let Some(d) = q.delta {
        row.tight_hamming_k = Some(tight_hamming_cardinality(q.n, d)?);
    }
    if let Some(k) = q.cardinality {
        row.delta_tight_hamming = Some(tight_hamming_delta(q.n, k)?);
    }
    Ok(row)
}

/// All applicable fields at once.
pub fn evaluate(q: &BoundQuery) -> Result<BoundsRow> {
    let mut row = BoundsRow::echo(q);
    row.vol_pu = pu_volume(q.n).ok();
    if let Some(d) = q.delta {
        row.ball_measure = Some(ball_measure(q.n, d)?);
        row.beyond_small_ball = ball_measure_unclamped(q.n, d)? > SMALL_BALL_LIMIT;
        let (lo, hi) = kissing_bounds(d)?;
        row.kiss_lower = Some(lo);
        row.kiss_upper = Some(hi);
        if d > 0.0 {
            row.gv_k = Some(gv_cardinality(q.n, d)?);
            row.hamming_k = Some(hamming_cardinality(q.n, d)?);
            row.tight_hamming_k = Some(tight_hamming_cardinality(q.n, d)?);
        }
    }
    if let Some(k) = q.cardinality {
        row.delta_gv = Some(gv_delta(q.n, k)?);
        row.delta_hamming = Some(hamming_delta(q.n, k)?);
        row.delta_tight_hamming = Some(tight_hamming_delta(q.n, k)?);
        if k >= 1.0 {
            row.cover_lower = Some(covering_lower_bound(q.n, k)?);
        }
        if k >= 2.0 {
            let (lo, hi) = distortion_rate_bounds(q.n, k)?;
            row.dist_lower = Some(lo);
            row.dist_upper = Some(hi);
        }
        if k >= 3.0 {
            row.cover_approx_frobenius_conv = Some(covering_radius_approx(
                q.n,
                k,
                CoveringConvention::FrobeniusLiteral,
            )?);
            row.cover_approx_metric_conv = Some(covering_radius_approx(
                q.n,
                k,
                CoveringConvention::MetricConsistent,
            )?);
        }
        if let Some(d) = q.delta {
            row.dist_upper_simple = Some(distortion_upper_bound(
                q.n,
                k,
                d,
                DistortionMode::HalfDelta,
            )?);
            row.dist_upper_kissing =
                Some(distortion_upper_bound(q.n, k, d, DistortionMode::Kissing)?);
        }
    }
    Ok(row)
}
