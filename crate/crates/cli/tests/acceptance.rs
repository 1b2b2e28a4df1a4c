//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use pucodes::analysis::{
    arbitrate_covering, ball_measure_mc, covering_radius_mc, distortion_mc, kissing_mc,
    min_distance_exact, min_distance_numeric, Convention, MCConfig, DEFAULT_PAIR_BUDGET,
};
use pucodes::bounds::{
    ball_measure_unclamped, distortion_rate_bounds, distortion_upper_bound, family_cardinality,
    family_min_distance, gv_cardinality, hamming_cardinality, kissing_bounds, manifold_dim,
    pu_volume, sphere_volume, tight_hamming_cardinality, DistortionMode,
};
use pucodes::codebook::{
    clifford_codebook, clifford_s_codebook, clifford_t_codebook, completeness_check,
    conjugation_overlap, diagonal_hierarchy_codebook, heisenberg_weyl_basis, pauli_codebook,
    semi_clifford_codebook,
};
use pucodes::pu::DEFAULT_QUANTUM;
use pucodes::{haar_unitary, CMatrix, Codebook, Kind, RandomStream};
use rand::Rng;
use rand_distr::StandardNormal;

const SEED: u64 = 42;
const DELTA_CLIFFORD: f64 = 0.541_196_100_146_197;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

type Criterion = fn() -> Outcome;

fn main() {
    let criteria: [(&str, Criterion); 9] = [
        ("cardinalities", cardinalities),
        ("minimum distances", minimum_distances),
        ("ball measure", ball_measure),
        ("kissing", kissing),
        ("bound ordering", bound_ordering),
        ("distortion", distortion),
        ("covering", covering),
        ("identities", identities),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let out = check();
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {name} ({:.1} s): {}",
            start.elapsed().as_secs_f64(),
            out.detail
        );
        if !out.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

fn cardinalities() -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<(String, Codebook)> = Vec::new();
    let mut errors = Vec::new();
    let mut add = |label: String, cb: pucodes::Result<Codebook>| match cb {
        Ok(cb) => cases.push((label, cb)),
        Err(e) => errors.push(format!("{label}: {e}")),
    };
    for m in 1..=2 {
        add(format!("pauli m={m}"), pauli_codebook(m));
        add(format!("clifford m={m}"), clifford_codebook(m));
    }
    for k in 2..=8 {
        add(format!("diag m=1 k={k}"), diagonal_hierarchy_codebook(1, k));
    }
    for k in 2..=5 {
        add(format!("diag m=2 k={k}"), diagonal_hierarchy_codebook(2, k));
    }
    for l in 0..=8 {
        add(format!("clifford_t l={l}"), clifford_t_codebook(l));
    }
    for l in 0..=3 {
        add(format!("clifford_s l={l}"), clifford_s_codebook(l));
    }
    let elapsed = start.elapsed().as_secs_f64();
    for (label, cb) in &cases {
        match family_cardinality(cb.kind, cb.m, cb.param) {
            Ok(e) if e == cb.len() as u128 => {}
            other => errors.push(format!("{label}: built {}, formula {other:?}", cb.len())),
        }
    }
    // Spot values independent of the formula code.
    let spot = [
        ("clifford m=2", 11_520usize),
        ("clifford_t l=8", 18_384),
        ("clifford_s l=3", 9_312),
    ];
    for (label, want) in spot {
        if let Some((_, cb)) = cases.iter().find(|(l, _)| l == label) {
            if cb.len() != want {
                errors.push(format!("{label}: {} != {want}", cb.len()));
            }
        }
    }
    let pass = errors.is_empty() && cases.len() == 28 && elapsed < 60.0;
    Outcome::new(
        pass,
        format!(
            "{} constructions match their closed forms, built in {elapsed:.1} s{}",
            cases.len(),
            if errors.is_empty() {
                String::new()
            } else {
                format!("; {}", errors.join("; "))
            }
        ),
    )
}

fn minimum_distances() -> Outcome {
    let mut errors = Vec::new();
    let mut checked = 0;
    let mut check = |label: String, got: f64, want: f64| {
        checked += 1;
        if (got - want).abs() > 1e-9 {
            errors.push(format!("{label}: {got} vs {want}"));
        }
    };
    for m in 1..=2 {
        let p = pauli_codebook(m).unwrap();
        check(
            format!("pauli m={m}"),
            min_distance_exact(&p).unwrap().delta,
            1.0,
        );
        check(
            format!("pauli m={m} pairwise"),
            min_distance_numeric(&p, DEFAULT_PAIR_BUDGET).unwrap().delta,
            1.0,
        );
        let c = clifford_codebook(m).unwrap();
        let want = (1.0 - 1.0 / 2f64.sqrt()).sqrt();
        check(
            format!("clifford m={m}"),
            min_distance_exact(&c).unwrap().delta,
            want,
        );
        check(
            format!("clifford m={m} pairwise"),
            min_distance_numeric(&c, DEFAULT_PAIR_BUDGET).unwrap().delta,
            want,
        );
    }
    let grid: Vec<(usize, u32)> = (2..=8)
        .map(|k| (1, k))
        .chain((2..=5).map(|k| (2, k)))
        .collect();
    for (m, k) in grid {
        let d = diagonal_hierarchy_codebook(m, k).unwrap();
        let want = (1.0 - (PI / f64::powi(2.0, k as i32)).cos()).sqrt();
        check(
            format!("diag m={m} k={k}"),
            min_distance_exact(&d).unwrap().delta,
            want,
        );
        let formula = family_min_distance(Kind::DiagHierarchy, m, Some(k)).unwrap();
        check(format!("diag m={m} k={k} formula"), formula, want);
    }
    // d(I, T) = sqrt(1 − |1 + e^{iπ/4}|/2) = sqrt(1 − cos(π/8)).
    let t_class = (1.0 - (PI / 8.0).cos()).sqrt();
    let ct1 = min_distance_numeric(&clifford_t_codebook(1).unwrap(), DEFAULT_PAIR_BUDGET)
        .unwrap()
        .delta;
    check("clifford_t l=1".into(), ct1, t_class);
    let ct0 = min_distance_numeric(&clifford_t_codebook(0).unwrap(), DEFAULT_PAIR_BUDGET)
        .unwrap()
        .delta;
    check("clifford_t l=0".into(), ct0, DELTA_CLIFFORD);
    Outcome::new(
        errors.is_empty(),
        format!(
            "{checked} values within 1e-9; clifford_t l=1 delta = {ct1:.12} = d(I, T){}",
            if errors.is_empty() {
                String::new()
            } else {
                format!("; {}", errors.join("; "))
            }
        ),
    )
}

fn ball_measure() -> Outcome {
    let radii = [0.05, 0.1, 0.15, 0.2];
    let rows = ball_measure_mc(2, &MCConfig::new(10_000_000, SEED), &radii).unwrap();
    let c2 = 1.200_42;
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for row in &rows {
        let rel = (row.empirical / (c2 * row.r.powi(3)) - 1.0).abs();
        worst = worst.max(rel);
        parts.push(format!("R={}: {:.3}%", row.r, 100.0 * rel));
    }
    Outcome::new(
        worst <= 0.05,
        format!(
            "1e7 samples, relative error vs c2 R^3: {}",
            parts.join(", ")
        ),
    )
}

fn kissing() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for n in [2usize, 4] {
        let samples = kissing_mc(n, &MCConfig::new(100_000, SEED)).unwrap();
        let below = samples.iter().filter(|s| s.mid < s.lo - 1e-9).count();
        let above = samples.iter().filter(|s| s.mid > s.hi + 1e-9).count();
        pass &= below == 0 && above == 0;
        parts.push(format!(
            "n={n}: {} of {} inside ({below} below lo, {above} above hi)",
            samples.len() - below - above,
            samples.len()
        ));
    }
    let grid_ok = (1..=10_000).all(|i| {
        let d = i as f64 / 10_000.0;
        kissing_bounds(d).unwrap().0 >= d / 2.0
    });
    pass &= grid_ok;
    parts.push(format!("lo >= delta/2 on 1e4-point grid: {grid_ok}"));
    Outcome::new(pass, parts.join("; "))
}

fn observed_codebooks() -> Vec<Codebook> {
    let mut out = vec![
        pauli_codebook(1).unwrap(),
        pauli_codebook(2).unwrap(),
        pauli_codebook(3).unwrap(),
        clifford_codebook(1).unwrap(),
        clifford_codebook(2).unwrap(),
    ];
    out.extend((2..=8).map(|k| diagonal_hierarchy_codebook(1, k).unwrap()));
    out.extend((2..=5).map(|k| diagonal_hierarchy_codebook(2, k).unwrap()));
    out.extend((2..=3).map(|k| diagonal_hierarchy_codebook(3, k).unwrap()));
    out.extend((0..=8).map(|l| clifford_t_codebook(l).unwrap()));
    out.extend((0..=3).map(|l| clifford_s_codebook(l).unwrap()));
    out.extend((2..=7).map(|k| semi_clifford_codebook(k).unwrap()));
    out
}

fn bound_ordering() -> Outcome {
    let mut errors = Vec::new();
    for n in [2usize, 4] {
        for i in 1..=1000 {
            let d = i as f64 / 1000.0;
            let gv = gv_cardinality(n, d).unwrap();
            let th = tight_hamming_cardinality(n, d).unwrap();
            let h = hamming_cardinality(n, d).unwrap();
            if !(gv <= th * (1.0 + 1e-12) && th <= h * (1.0 + 1e-12)) {
                errors.push(format!("n={n} delta={d}: {gv} {th} {h}"));
            }
        }
    }
    let th = tight_hamming_cardinality(2, DELTA_CLIFFORD)
        .unwrap()
        .floor();
    let h = hamming_cardinality(2, DELTA_CLIFFORD).unwrap().floor();
    if (th, h) != (39.0, 42.0) {
        errors.push(format!("tight/plain Hamming at delta_c: {th}/{h}"));
    }
    let books = observed_codebooks();
    for cb in &books {
        let md = if cb.is_group {
            min_distance_exact(cb)
        } else {
            min_distance_numeric(cb, DEFAULT_PAIR_BUDGET)
        }
        .unwrap();
        let cap = tight_hamming_cardinality(cb.n(), md.delta).unwrap();
        if cb.len() as f64 > cap * (1.0 + 1e-9) {
            errors.push(format!(
                "{} m={} param={:?}: K={} > {cap}",
                cb.kind,
                cb.m,
                cb.param,
                cb.len()
            ));
        }
    }
    Outcome::new(
        errors.is_empty(),
        format!(
            "gv <= tight <= hamming on 2x1000 grid; floor(tight, hamming) at delta_c = ({th}, {h}); {} codebooks under tight Hamming{}",
            books.len(),
            if errors.is_empty() { String::new() } else { format!("; {}", errors.join("; ")) }
        ),
    )
}

/// Distortion of `{I}` in `PU_2` by an independent route: Haar `SU(2)` is a
/// uniform unit quaternion `q`, and `1 − |Tr U|/2 = 1 − |q₀|`.
fn quaternion_single_codeword(samples: u64, seed: u64) -> (f64, f64) {
    let mut rng = RandomStream::new(seed, u64::MAX);
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..samples {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        let d2 = 1.0 - (q[0] / norm).abs();
        sum += d2;
        sum_sq += d2 * d2;
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = (sum_sq - n * mean * mean) / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn distortion() -> Outcome {
    let cfg = MCConfig::new(500_000, SEED);
    let cliff = clifford_codebook(1).unwrap();
    let r = distortion_mc(&cliff, &cfg).unwrap();
    let (lo, _) = distortion_rate_bounds(2, 24.0).unwrap();
    let hi = distortion_upper_bound(2, 24.0, DELTA_CLIFFORD, DistortionMode::Kissing).unwrap();
    let in_range = r.mean >= lo - 3.0 * r.stderr && r.mean <= hi + 3.0 * r.stderr;

    let single = Codebook::custom(1, &[CMatrix::identity(2)], DEFAULT_QUANTUM).unwrap();
    let s = distortion_mc(&single, &cfg).unwrap();
    let (oracle, oracle_se) = quaternion_single_codeword(500_000, SEED + 1);
    let combined = (s.stderr.powi(2) + oracle_se.powi(2)).sqrt();
    let agree = (s.mean - oracle).abs() <= 3.0 * combined;
    let exact = 1.0 - 4.0 / (3.0 * PI);
    Outcome::new(
        in_range && agree,
        format!(
            "clifford m=1: {:.5} +- {:.1e} in [{lo:.5}, {hi:.5}]: {in_range}; \
             {{I}}: {:.5} +- {:.1e} vs quaternion oracle {oracle:.5} +- {oracle_se:.1e} \
             (|diff| = {:.2} sigma; closed form 1 - 4/(3 pi) = {exact:.5})",
            r.mean,
            r.stderr,
            s.mean,
            s.stderr,
            (s.mean - oracle).abs() / combined
        ),
    )
}

fn covering() -> Outcome {
    let cliff = clifford_codebook(1).unwrap();
    let c = covering_radius_mc(&cliff, &MCConfig::new(500_000, SEED)).unwrap();
    let floor = 0.95 * 0.326_22;
    let above = c.rho_hat >= floor;

    let prefixes = [10_000u64, 50_000, 100_000, 250_000, 500_000];
    let trace: Vec<f64> = prefixes
        .iter()
        .map(|&n| {
            covering_radius_mc(&cliff, &MCConfig::new(n, SEED))
                .unwrap()
                .rho_hat
        })
        .collect();
    let monotone = trace.windows(2).all(|w| w[0] <= w[1]);

    let mut points = Vec::new();
    for l in 0..=4 {
        let cb = clifford_t_codebook(l).unwrap();
        let est = covering_radius_mc(&cb, &MCConfig::new(500_000, SEED)).unwrap();
        points.push((cb.len() as f64, est.rho_hat));
    }
    let verdict = arbitrate_covering(2, &points).unwrap();
    let (closer, other) = match verdict.closer {
        Convention::MetricConsistent => (verdict.metric_log_error, verdict.frobenius_log_error),
        Convention::FrobeniusLiteral => (verdict.frobenius_log_error, verdict.metric_log_error),
    };
    let identified = verdict.bracketed || closer <= 0.5 * other;
    let rho: Vec<String> = points
        .iter()
        .map(|(k, r)| format!("K={k}: {r:.4}"))
        .collect();
    Outcome::new(
        above && monotone && identified,
        format!(
            "rho_hat(clifford m=1) = {:.5} >= {floor:.5}: {above}; prefix trace {trace:.4?} monotone: {monotone}; \
             clifford_t l=0..4 [{}]; mean |log error| frobenius_literal {:.3}, metric_consistent {:.3}; \
             bracketed: {}; matching convention: {:?}",
            c.rho_hat,
            rho.join(", "),
            verdict.frobenius_log_error,
            verdict.metric_log_error,
            verdict.bracketed,
            verdict.closer
        ),
    )
}

fn identities() -> Outcome {
    let mut worst_ball: f64 = 0.0;
    for n in [2usize, 4, 8] {
        for r in [0.01, 0.05, 0.1, 0.2, 0.3] {
            let lhs = ball_measure_unclamped(n, r).unwrap();
            let rhs =
                sphere_volume(manifold_dim(n), (2.0 * n as f64).sqrt() * r) / pu_volume(n).unwrap();
            worst_ball = worst_ball.max((lhs / rhs - 1.0).abs());
        }
    }
    let mut worst_lemma2: f64 = 0.0;
    for (m, stream) in [(1usize, 0u64), (2, 1)] {
        let mut rng = RandomStream::new(SEED, stream);
        for _ in 0..1000 {
            let u = haar_unitary(1 << m, &mut rng);
            worst_lemma2 = worst_lemma2.max(completeness_check(u.matrix(), m).unwrap());
        }
    }
    // Each overlap must be exactly ±1 when conjugation fixes E(c) up to
    // phase, and exactly 0 otherwise.
    let mut dichotomy_err: f64 = 0.0;
    let mut counts = [0usize; 2];
    let basis = heisenberg_weyl_basis(1);
    for g in clifford_codebook(1).unwrap().elements() {
        for (_, e) in &basis {
            let v = conjugation_overlap(g.matrix(), e);
            let conj = &(&g.matrix().adjoint() * e) * g.matrix();
            let fixed = (e.inner(&conj).norm() - 1.0).abs() < 1e-9;
            let err = if fixed {
                counts[1] += 1;
                v.im.abs().max((v.re.abs() - 1.0).abs())
            } else {
                counts[0] += 1;
                v.norm()
            };
            dichotomy_err = dichotomy_err.max(err);
        }
    }
    let pass = worst_ball <= 1e-12 && worst_lemma2 <= 1e-10 && dichotomy_err <= 1e-12;
    Outcome::new(
        pass,
        format!(
            "ball measure vs volume ratio max rel err {worst_ball:.1e}; completeness residual max {worst_lemma2:.1e} over 2x1000 Haar matrices; \
             overlap dichotomy over 24x4 pairs ({} of +-1, {} of 0) max err {dichotomy_err:.1e}",
            counts[1], counts[0]
        ),
    )
}

fn run_sim(dir: &Path, args: &[&str], workers: &str, name: &str) -> Result<Vec<u8>, String> {
    let out = dir.join(name);
    let output = Command::new(env!("CARGO_BIN_EXE_pucb"))
        .args(args)
        .arg("--out")
        .arg(&out)
        .env("PUCB_WORKERS", workers)
        .output()
        .map_err(|e| e.to_string())?;
    if !output.status.success() {
        return Err(format!(
            "{args:?} exited with {}: {}",
            output.status,
            String::from_utf8_lossy(&output.stderr)
        ));
    }
    std::fs::read(&out).map_err(|e| e.to_string())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let commands: [&[&str]; 4] = [
        &[
            "sim",
            "ball",
            "--n",
            "2",
            "--samples",
            "300000",
            "--seed",
            "7",
            "--rmax",
            "0.3",
            "--bins",
            "30",
        ],
        &[
            "sim",
            "kissing",
            "--n",
            "4",
            "--samples",
            "3000",
            "--seed",
            "7",
        ],
        &[
            "sim",
            "distortion",
            "--kind",
            "clifford_t",
            "--l",
            "2",
            "--samples",
            "50000",
            "--seed",
            "7",
        ],
        &[
            "sim",
            "covering",
            "--kind",
            "clifford",
            "--m",
            "1",
            "--samples",
            "50000",
            "--seed",
            "7",
        ],
    ];
    let mut parts = Vec::new();
    let mut pass = true;
    for (i, args) in commands.iter().enumerate() {
        let runs: Result<Vec<Vec<u8>>, String> = [("1", "a"), ("4", "b"), ("1", "c")]
            .iter()
            .map(|(w, tag)| run_sim(dir.path(), args, w, &format!("{i}{tag}.csv")))
            .collect();
        match runs {
            Ok(r) => {
                let same = r[0] == r[1] && r[0] == r[2] && !r[0].is_empty();
                pass &= same;
                parts.push(format!(
                    "{} {}: {}",
                    args[0],
                    args[1],
                    if same { "identical" } else { "DIFFERENT" }
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(e);
            }
        }
    }
    Outcome::new(pass, format!("workers {{1, 4, 1}}: {}", parts.join(", ")))
}
