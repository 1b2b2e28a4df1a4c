//! CSV bundles behind each figure, with a manifest naming every file,
//! its columns and the plotted series.

use std::path::Path;

use anyhow::Result;
use pucodes::analysis::{
    arbitrate_covering, ball_measure_mc, covering_radius_mc, distortion_mc, kissing_mc, MCConfig,
    DEFAULT_PAIR_BUDGET,
};
use pucodes::bounds::{
    covering_lower_bound, covering_radius_approx, distortion_rate_bounds, gv_cardinality,
    hamming_cardinality, kissing_bounds, tight_hamming_cardinality, CoveringConvention,
};
use pucodes::codebook::{
    clifford_codebook, clifford_s_codebook, clifford_t_codebook, diagonal_hierarchy_codebook,
    pauli_codebook, semi_clifford_codebook,
};
use pucodes::Codebook;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds_cmd::k_grid;
use crate::codebook_cmd::{check_cardinality, measure};
use crate::sim_cmd::{
    ball_grid, ball_table, covering_cells, distortion_cells, kissing_table, COVERING_COLUMNS,
    DISTORTION_COLUMNS,
};
use crate::table::{opt_int, real, Run, Table};
use crate::FigureArgs;

pub const MANIFEST: &str = "manifest.json";

/// Points of each δ-grid curve.
const CURVE_POINTS: usize = 200;

/// Largest parameters used per family, bounded by the pair budget.
pub const CLIFFORD_T_MINDIST_CAP: u32 = 8;
pub const CLIFFORD_S_MINDIST_CAP: u32 = 3;
pub const CLIFFORD_T_MC_CAP: u32 = 4;
pub const CLIFFORD_S_MC_CAP: u32 = 2;
pub const SEMI_CLIFFORD_LEVELS: std::ops::RangeInclusive<u32> = 2..=7;

#[derive(Debug, Serialize)]
pub struct CsvEntry {
    pub file: String,
    pub columns: Vec<&'static str>,
    pub rows: usize,
}

#[derive(Debug, Serialize)]
pub struct Series {
    pub name: String,
    pub file: String,
    pub x: &'static str,
    pub y: &'static str,
    /// `marker` for measured points, `curve` for closed forms.
    pub style: &'static str,
    /// Column/value pair selecting the rows of this series, if any.
    pub filter: Option<(&'static str, String)>,
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub figure: u8,
    pub title: &'static str,
    pub seed: u64,
    pub samples: Option<u64>,
    pub csv: Vec<CsvEntry>,
    pub series: Vec<Series>,
    pub caps: Value,
    pub notes: Vec<String>,
}

struct Bundle<'a> {
    dir: &'a Path,
    run: Run,
    manifest: Manifest,
}

impl<'a> Bundle<'a> {
    fn new(args: &'a FigureArgs, title: &'static str, samples: Option<u64>) -> Self {
        let run = Run::new(
            &format!("figure --id {}", args.id),
            Some(args.seed),
            json!({ "id": args.id, "samples": samples }),
        );
        Self {
            dir: &args.out,
            run,
            manifest: Manifest {
                figure: args.id,
                title,
                seed: args.seed,
                samples,
                csv: Vec::new(),
                series: Vec::new(),
                caps: json!({}),
                notes: Vec::new(),
            },
        }
    }

    fn csv(&mut self, file: &str, table: &Table) -> Result<()> {
        self.run.write(&self.dir.join(file), table)?;
        self.manifest.csv.push(CsvEntry {
            file: file.to_owned(),
            columns: table.header.clone(),
            rows: table.rows.len(),
        });
        Ok(())
    }

    fn series(
        &mut self,
        name: &str,
        file: &str,
        x: &'static str,
        y: &'static str,
        style: &'static str,
    ) {
        self.manifest.series.push(Series {
            name: name.to_owned(),
            file: file.to_owned(),
            x,
            y,
            style,
            filter: None,
        });
    }

    fn marker_by(
        &mut self,
        value: &str,
        file: &str,
        column: &'static str,
        x: &'static str,
        y: &'static str,
    ) {
        self.manifest.series.push(Series {
            name: value.to_owned(),
            file: file.to_owned(),
            x,
            y,
            style: "marker",
            filter: Some((column, value.to_owned())),
        });
    }

    fn note(&mut self, s: impl Into<String>) {
        let s = s.into();
        self.run.note(s.clone());
        self.manifest.notes.push(s);
    }

    fn finish(self) -> Result<()> {
        std::fs::write(
            self.dir.join(MANIFEST),
            serde_json::to_string_pretty(&self.manifest)? + "\n",
        )?;
        Ok(())
    }
}

fn mc(args: &FigureArgs, default: u64) -> MCConfig {
    MCConfig::new(args.samples.unwrap_or(default), args.seed).with_workers(args.workers)
}

fn delta_curve() -> Vec<f64> {
    (1..=CURVE_POINTS)
        .map(|i| i as f64 / CURVE_POINTS as f64)
        .collect()
}

/// GV and Hamming cardinalities over a δ grid for each dimension.
fn packing_curves(ms: &[usize]) -> Result<Table> {
    let mut t = Table::new(&[
        "m",
        "n",
        "delta",
        "delta_sq",
        "gv_K",
        "log2_gv_K",
        "hamming_K",
        "log2_hamming_K",
    ]);
    for &m in ms {
        let n = 1usize << m;
        for d in delta_curve() {
            let gv = gv_cardinality(n, d)?;
            let h = hamming_cardinality(n, d)?;
            t.push(vec![
                m.to_string(),
                n.to_string(),
                real(d),
                real(d * d),
                real(gv),
                real(gv.log2()),
                real(h),
                real(h.log2()),
            ]);
        }
    }
    Ok(t)
}

const POINT_COLUMNS: [&str; 10] = [
    "family", "m", "n", "param", "K", "log2K", "delta", "delta_sq", "i", "j",
];

fn point_cells(family: &str, cb: &Codebook) -> Result<Vec<String>> {
    check_cardinality(cb)?;
    let md = measure(cb, DEFAULT_PAIR_BUDGET)?;
    Ok(vec![
        family.to_owned(),
        cb.m.to_string(),
        cb.n().to_string(),
        opt_int(cb.param),
        cb.len().to_string(),
        real((cb.len() as f64).log2()),
        real(md.delta),
        real(md.delta * md.delta),
        md.i.to_string(),
        md.j.to_string(),
    ])
}

fn c_family(max_t: u32, max_s: u32) -> Result<Vec<(&'static str, Codebook)>> {
    let mut out = Vec::new();
    for l in 0..=max_t {
        out.push(("clifford_t", clifford_t_codebook(l)?));
    }
    for l in 0..=max_s {
        out.push(("clifford_s", clifford_s_codebook(l)?));
    }
    Ok(out)
}

pub fn run(args: &FigureArgs) -> Result<()> {
    std::fs::create_dir_all(&args.out)?;
    match args.id {
        1 => fig1(args),
        2 => fig2(args),
        3 => fig3(args),
        4 => fig4(args),
        5 => fig5(args),
        6 => fig6(args),
        7 => fig7(args),
        id => Err(pucodes::Error::InvalidParameter(format!("no figure {id}")).into()),
    }
}

fn fig1(args: &FigureArgs) -> Result<()> {
    let cfg = mc(args, 10_000_000);
    let mut b = Bundle::new(args, "Ball measure in PU_2", Some(cfg.samples));
    let rows = ball_measure_mc(2, &cfg, &ball_grid(0.3, 30)?)?;
    b.csv("fig1_ball.csv", &ball_table(&rows))?;
    b.series("empirical", "fig1_ball.csv", "R", "empirical", "marker");
    b.series("predicted", "fig1_ball.csv", "R", "predicted", "curve");
    b.note("default 1e7 samples; pass --samples for more");
    b.finish()
}

fn fig2(args: &FigureArgs) -> Result<()> {
    let cfg = mc(args, 100_000);
    let mut b = Bundle::new(args, "Kissing radius bounds in PU_4", Some(cfg.samples));
    let samples = kissing_mc(4, &cfg)?;
    let violations = samples.iter().filter(|s| !s.within_bounds(1e-9)).count();
    b.csv("fig2_kissing_samples.csv", &kissing_table(&samples))?;
    let mut curves = Table::new(&["delta", "delta_sq", "lo", "hi", "half_delta"]);
    for d in delta_curve() {
        let (lo, hi) = kissing_bounds(d)?;
        curves.push(vec![
            real(d),
            real(d * d),
            real(lo),
            real(hi),
            real(d / 2.0),
        ]);
    }
    b.csv("fig2_kissing_curves.csv", &curves)?;
    b.series(
        "midpoints",
        "fig2_kissing_samples.csv",
        "delta",
        "mid",
        "marker",
    );
    b.series("lo", "fig2_kissing_curves.csv", "delta", "lo", "curve");
    b.series("hi", "fig2_kissing_curves.csv", "delta", "hi", "curve");
    b.series(
        "half_delta",
        "fig2_kissing_curves.csv",
        "delta",
        "half_delta",
        "curve",
    );
    b.note(format!(
        "{violations} of {} midpoints lie outside [lo - 1e-9, hi + 1e-9]",
        samples.len()
    ));
    b.note("default 1e5 pairs; pass --samples for more");
    b.finish()
}

fn fig3(args: &FigureArgs) -> Result<()> {
    let mut b = Bundle::new(args, "Hamming versus tight Hamming bound in PU_4", None);
    let mut t = Table::new(&[
        "delta",
        "delta_sq",
        "hamming_K",
        "log2_hamming_K",
        "tight_hamming_K",
        "log2_tight_hamming_K",
    ]);
    for d in delta_curve() {
        let h = hamming_cardinality(4, d)?;
        let th = tight_hamming_cardinality(4, d)?;
        t.push(vec![
            real(d),
            real(d * d),
            real(h),
            real(h.log2()),
            real(th),
            real(th.log2()),
        ]);
    }
    b.csv("fig3_hamming.csv", &t)?;
    b.series(
        "hamming",
        "fig3_hamming.csv",
        "delta_sq",
        "log2_hamming_K",
        "curve",
    );
    b.series(
        "tight_hamming",
        "fig3_hamming.csv",
        "delta_sq",
        "log2_tight_hamming_K",
        "curve",
    );
    b.finish()
}

fn fig4(args: &FigureArgs) -> Result<()> {
    let mut b = Bundle::new(
        args,
        "Minimum distance of Pauli, Clifford and diagonal codebooks",
        None,
    );
    let mut points = Table::new(&POINT_COLUMNS);
    for m in 1..=3 {
        points.push(point_cells("pauli", &pauli_codebook(m)?)?);
    }
    for m in 1..=2 {
        points.push(point_cells("clifford", &clifford_codebook(m)?)?);
    }
    for m in 1..=3 {
        points.push(point_cells(
            "diag_hierarchy",
            &diagonal_hierarchy_codebook(m, 3)?,
        )?);
    }
    b.csv("fig4_points.csv", &points)?;
    b.csv("fig4_bounds.csv", &packing_curves(&[1, 2, 3])?)?;
    for fam in ["pauli", "clifford", "diag_hierarchy"] {
        b.marker_by(fam, "fig4_points.csv", "family", "delta_sq", "log2K");
    }
    b.series("gv", "fig4_bounds.csv", "delta_sq", "log2_gv_K", "curve");
    b.series(
        "hamming",
        "fig4_bounds.csv",
        "delta_sq",
        "log2_hamming_K",
        "curve",
    );
    b.manifest.caps =
        json!({ "pauli_m_max": 3, "clifford_m_max": 2, "diag_k": 3, "diag_m_max": 3 });
    b.note("bound curves are split by the m column, one per dimension n = 2^m");
    b.note("the three-qubit Clifford group (92897280 classes) is beyond the build cap");
    b.finish()
}

fn fig5(args: &FigureArgs) -> Result<()> {
    let mut b = Bundle::new(
        args,
        "Minimum distance of Clifford+T, Clifford+S and semi-Clifford codebooks",
        None,
    );
    let mut points = Table::new(&POINT_COLUMNS);
    for (fam, cb) in c_family(CLIFFORD_T_MINDIST_CAP, CLIFFORD_S_MINDIST_CAP)? {
        points.push(point_cells(fam, &cb)?);
    }
    for k in SEMI_CLIFFORD_LEVELS {
        points.push(point_cells("semi_clifford", &semi_clifford_codebook(k)?)?);
    }
    b.csv("fig5_points.csv", &points)?;
    b.csv("fig5_bounds.csv", &packing_curves(&[1])?)?;
    for fam in ["clifford_t", "clifford_s", "semi_clifford"] {
        b.marker_by(fam, "fig5_points.csv", "family", "delta_sq", "log2K");
    }
    b.series("gv", "fig5_bounds.csv", "delta_sq", "log2_gv_K", "curve");
    b.series(
        "hamming",
        "fig5_bounds.csv",
        "delta_sq",
        "log2_hamming_K",
        "curve",
    );
    b.manifest.caps = json!({
        "clifford_t_l_max": CLIFFORD_T_MINDIST_CAP,
        "clifford_s_l_max": CLIFFORD_S_MINDIST_CAP,
        "semi_clifford_k": [SEMI_CLIFFORD_LEVELS.start(), SEMI_CLIFFORD_LEVELS.end()],
        "pair_budget": DEFAULT_PAIR_BUDGET.to_string(),
    });
    b.note("clifford_t beyond l = 8 and clifford_s beyond l = 3 are omitted to keep exact pairwise scans short");
    b.finish()
}

fn mc_families() -> Result<Vec<(&'static str, Codebook)>> {
    let mut out = c_family(CLIFFORD_T_MC_CAP, CLIFFORD_S_MC_CAP)?;
    for k in SEMI_CLIFFORD_LEVELS {
        out.push(("semi_clifford", semi_clifford_codebook(k)?));
    }
    Ok(out)
}

fn k_axis() -> Result<Vec<f64>> {
    k_grid(2.0, 65_536.0, 2f64.sqrt())
}

fn fig6(args: &FigureArgs) -> Result<()> {
    let cfg = mc(args, 500_000);
    let mut b = Bundle::new(
        args,
        "Distortion of Clifford+T, Clifford+S and semi-Clifford codebooks",
        Some(cfg.samples),
    );
    let mut points = Table::new(&DISTORTION_COLUMNS);
    for (_, cb) in mc_families()? {
        points.push(distortion_cells(&cb, &distortion_mc(&cb, &cfg)?)?);
    }
    b.csv("fig6_points.csv", &points)?;
    let mut curves = Table::new(&["K", "log2K", "dist_lower", "dist_upper"]);
    for k in k_axis()? {
        let (lo, hi) = distortion_rate_bounds(2, k)?;
        curves.push(vec![real(k), real(k.log2()), real(lo), real(hi)]);
    }
    b.csv("fig6_bounds.csv", &curves)?;
    for fam in ["clifford_t", "clifford_s", "semi_clifford"] {
        b.marker_by(fam, "fig6_points.csv", "kind", "log2K", "mean");
    }
    b.series(
        "dist_lower",
        "fig6_bounds.csv",
        "log2K",
        "dist_lower",
        "curve",
    );
    b.series(
        "dist_upper",
        "fig6_bounds.csv",
        "log2K",
        "dist_upper",
        "curve",
    );
    b.manifest.caps = json!({
        "clifford_t_l_max": CLIFFORD_T_MC_CAP,
        "clifford_s_l_max": CLIFFORD_S_MC_CAP,
        "semi_clifford_k": [SEMI_CLIFFORD_LEVELS.start(), SEMI_CLIFFORD_LEVELS.end()],
    });
    b.note("the (1 + o(1)) factor of dist_upper is taken as 1");
    b.note("every codebook is evaluated on the same Haar samples");
    b.finish()
}

fn fig7(args: &FigureArgs) -> Result<()> {
    let cfg = mc(args, 500_000);
    let mut b = Bundle::new(
        args,
        "Covering radius of Clifford+T and Clifford+S codebooks",
        Some(cfg.samples),
    );
    let mut points = Table::new(&COVERING_COLUMNS);
    let mut measured = Vec::new();
    for (_, cb) in c_family(CLIFFORD_T_MC_CAP, CLIFFORD_S_MC_CAP)? {
        let c = covering_radius_mc(&cb, &cfg)?;
        measured.push((cb.len() as f64, c.rho_hat));
        points.push(covering_cells(&cb, &c)?);
    }
    b.csv("fig7_points.csv", &points)?;
    let mut curves = Table::new(&[
        "K",
        "log2K",
        "cover_lower",
        "cover_approx_frobenius_conv",
        "cover_approx_metric_conv",
    ]);
    for k in k_axis()?.into_iter().filter(|&k| k >= 3.0) {
        curves.push(vec![
            real(k),
            real(k.log2()),
            real(covering_lower_bound(2, k)?),
            real(covering_radius_approx(
                2,
                k,
                CoveringConvention::FrobeniusLiteral,
            )?),
            real(covering_radius_approx(
                2,
                k,
                CoveringConvention::MetricConsistent,
            )?),
        ]);
    }
    b.csv("fig7_bounds.csv", &curves)?;
    for fam in ["clifford_t", "clifford_s"] {
        b.marker_by(fam, "fig7_points.csv", "kind", "log2K", "rho_hat");
    }
    b.series(
        "cover_lower",
        "fig7_bounds.csv",
        "log2K",
        "cover_lower",
        "curve",
    );
    b.series(
        "cover_approx_frobenius_conv",
        "fig7_bounds.csv",
        "log2K",
        "cover_approx_frobenius_conv",
        "curve",
    );
    b.series(
        "cover_approx_metric_conv",
        "fig7_bounds.csv",
        "log2K",
        "cover_approx_metric_conv",
        "curve",
    );
    let verdict = arbitrate_covering(2, &measured)?;
    b.note(format!(
        "covering approximation: mean |log error| {:.3} (frobenius_literal) vs {:.3} (metric_consistent); closer: {:?}; bracketed: {}",
        verdict.frobenius_log_error, verdict.metric_log_error, verdict.closer, verdict.bracketed
    ));
    b.manifest.caps = json!({
        "clifford_t_l_max": CLIFFORD_T_MC_CAP,
        "clifford_s_l_max": CLIFFORD_S_MC_CAP,
        "arbitration": verdict,
    });
    b.note("rho_hat is a running maximum and underestimates the covering radius");
    b.finish()
}
