//! Experiment outputs checked against independently derived values.

use std::f64::consts::PI;

use pucodes::analysis::{
    ball_measure_mc, distortion_mc, min_distance_exact, min_distance_numeric, nearest_codeword,
    quantization_mc, MCConfig, DEFAULT_PAIR_BUDGET,
};
use pucodes::bounds::ball_measure;
use pucodes::codebook::{clifford_codebook, clifford_t_codebook, gates};
use pucodes::pu::DEFAULT_QUANTUM;
use pucodes::{canonicalize, CMatrix, Codebook};

/// Exact Haar probability `P(d(I, U) ≤ R)` in `PU_2`: the rotation angle
/// `x` of `U` has density `(1 − cos x)/π` on `[0, π]` and `d² = 1 − cos(x/2)`.
fn exact_ball_pu2(r: f64) -> f64 {
    let x = 2.0 * (1.0 - r * r).acos();
    (x - x.sin()) / PI
}

#[test]
fn small_ball_leading_term_in_pu2() {
    // Frozen from a 30-digit evaluation.
    let frozen = [
        (0.05, 1.499_964_370_234_318e-4),
        (0.1, 1.198_619_511_402_005e-3),
        (0.15, 4.037_722_278_588_209e-3),
        (0.2, 9.545_546_391_060_328e-3),
    ];
    for (r, p) in frozen {
        assert!((exact_ball_pu2(r) - p).abs() < 1e-14, "R={r}");
        let lead = ball_measure(2, r).unwrap();
        assert!((lead / p - 1.0).abs() < 0.01, "R={r}: {lead} vs {p}");
    }
}

#[test]
fn ball_mc_tracks_exact_cdf() {
    let grid = [0.2, 0.4, 0.6, 0.8];
    let rows = ball_measure_mc(2, &MCConfig::new(200_000, 11), &grid).unwrap();
    for row in rows {
        let p = exact_ball_pu2(row.r);
        let sigma = (p * (1.0 - p) / 200_000.0).sqrt();
        assert!((row.empirical - p).abs() < 4.0 * sigma, "{row:?} vs {p}");
    }
}

#[test]
fn single_codeword_distortion() {
    // E[1 − |Tr U|/2] = 1 − 4/(3π) for Haar U in U_2.
    let exact = 1.0 - 4.0 / (3.0 * PI);
    assert!((exact - 0.575_586_818_421_612).abs() < 1e-14);
    let cb = Codebook::custom(1, &[CMatrix::identity(2)], DEFAULT_QUANTUM).unwrap();
    let r = distortion_mc(&cb, &MCConfig::new(200_000, 5)).unwrap();
    assert!((r.mean - exact).abs() < 4.0 * r.stderr, "{r:?}");
}

#[test]
fn stderr_scales_with_sample_count() {
    let cb = clifford_codebook(1).unwrap();
    let a = distortion_mc(&cb, &MCConfig::new(50_000, 2)).unwrap();
    let b = distortion_mc(&cb, &MCConfig::new(100_000, 2)).unwrap();
    let c = distortion_mc(&cb, &MCConfig::new(200_000, 2)).unwrap();
    let half = 1.0 / 2f64.sqrt();
    assert!((b.stderr / a.stderr / half - 1.0).abs() < 0.2);
    assert!((c.stderr / a.stderr / 0.5 - 1.0).abs() < 0.2);
}

#[test]
fn distortion_never_exceeds_squared_covering_estimate() {
    for cb in [
        clifford_codebook(1).unwrap(),
        clifford_t_codebook(1).unwrap(),
    ] {
        let (d, c) = quantization_mc(&cb, &MCConfig::new(20_000, 4)).unwrap();
        assert!(d.mean <= c.rho_hat * c.rho_hat);
        assert!(c.rho_hat <= 1.0);
    }
}

#[test]
fn t_gate_distance_to_cliffords() {
    let d_it = (1.0 - (PI / 8.0).cos()).sqrt();
    assert!((d_it - 0.275_899_379_282_943).abs() < 1e-14);
    let t = canonicalize(&gates::t_gate(), DEFAULT_QUANTUM).unwrap();
    let (idx, d) = nearest_codeword(&clifford_codebook(1).unwrap(), &t).unwrap();
    assert!((d - d_it).abs() < 1e-12);
    let cb = clifford_codebook(1).unwrap();
    let id = canonicalize(&CMatrix::identity(2), DEFAULT_QUANTUM).unwrap();
    assert_eq!(cb.elements()[idx].key(), id.key());
}

#[test]
fn clifford_t_level_one_minimum_distance() {
    let cb = clifford_t_codebook(1).unwrap();
    assert_eq!(cb.len(), 96);
    let md = min_distance_numeric(&cb, DEFAULT_PAIR_BUDGET).unwrap();
    assert!((md.delta - 0.275_899_379_282_943).abs() < 1e-9);
}

#[test]
fn clifford_t_distances_shrink_with_t_count() {
    let mut prev = min_distance_exact(&clifford_codebook(1).unwrap())
        .unwrap()
        .delta;
    for l in 0..=6 {
        let d = min_distance_numeric(&clifford_t_codebook(l).unwrap(), DEFAULT_PAIR_BUDGET)
            .unwrap()
            .delta;
        assert!(d <= prev + 1e-12, "l={l}: {d} > {prev}");
        prev = d;
    }
}
