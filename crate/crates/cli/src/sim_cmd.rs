use anyhow::Result;
use pucodes::analysis::{
    ball_measure_mc, covering_radius_mc, distortion_mc, kissing_mc, BallCdfRow, CoveringEstimate,
    DistortionResult, KissingSample, DEFAULT_PAIR_BUDGET,
};
use pucodes::bounds::{
    covering_lower_bound, covering_radius_approx, distortion_rate_bounds, distortion_upper_bound,
    CoveringConvention, DistortionMode,
};
use pucodes::{Codebook, Error};
use serde_json::json;

use crate::codebook_cmd::measure;
use crate::table::{opt_int, opt_real, real, Run, Table};
use crate::{McArgs, SimCommand};

pub(crate) const BALL_COLUMNS: [&str; 4] = ["R", "empirical", "predicted", "stderr"];

pub(crate) fn ball_table(rows: &[BallCdfRow]) -> Table {
    let mut t = Table::new(&BALL_COLUMNS);
    for r in rows {
        t.push(vec![
            real(r.r),
            real(r.empirical),
            real(r.predicted),
            real(r.stderr),
        ]);
    }
    t
}

pub(crate) fn ball_grid(rmax: f64, bins: usize) -> Result<Vec<f64>> {
    if !(rmax > 0.0 && rmax <= 1.0) || bins == 0 {
        return Err(Error::InvalidParameter("need 0 < rmax <= 1 and bins > 0".into()).into());
    }
    Ok((1..=bins).map(|i| rmax * i as f64 / bins as f64).collect())
}

pub(crate) const KISSING_COLUMNS: [&str; 7] = [
    "delta",
    "delta_sq",
    "mid",
    "lo",
    "hi",
    "half_delta",
    "within_bounds",
];

pub(crate) fn kissing_table(samples: &[KissingSample]) -> Table {
    let mut t = Table::new(&KISSING_COLUMNS);
    for s in samples {
        t.push(vec![
            real(s.delta),
            real(s.delta * s.delta),
            real(s.mid),
            real(s.lo),
            real(s.hi),
            real(s.delta / 2.0),
            s.within_bounds(1e-9).to_string(),
        ]);
    }
    t
}

pub(crate) const DISTORTION_COLUMNS: [&str; 12] = [
    "kind",
    "m",
    "param",
    "K",
    "log2K",
    "delta",
    "mean",
    "stderr",
    "samples",
    "dist_lower",
    "dist_upper",
    "dist_upper_kissing",
];

/// Minimum distance where it is affordable, for the kissing upper bound.
fn known_delta(cb: &Codebook) -> Option<f64> {
    if cb.len() < 2 {
        return None;
    }
    measure(cb, DEFAULT_PAIR_BUDGET).ok().map(|md| md.delta)
}

pub(crate) fn distortion_cells(cb: &Codebook, r: &DistortionResult) -> Result<Vec<String>> {
    let n = cb.n();
    let k = cb.len() as f64;
    let (lo, hi) = if k >= 2.0 {
        let (lo, hi) = distortion_rate_bounds(n, k)?;
        (Some(lo), Some(hi))
    } else {
        (None, None)
    };
    let delta = known_delta(cb);
    let kiss = delta
        .map(|d| distortion_upper_bound(n, k, d, DistortionMode::Kissing))
        .transpose()?;
    Ok(vec![
        cb.kind.to_string(),
        cb.m.to_string(),
        opt_int(cb.param),
        cb.len().to_string(),
        real(k.log2()),
        opt_real(delta),
        real(r.mean),
        real(r.stderr),
        r.samples.to_string(),
        opt_real(lo),
        opt_real(hi),
        opt_real(kiss),
    ])
}

pub(crate) const COVERING_COLUMNS: [&str; 10] = [
    "kind",
    "m",
    "param",
    "K",
    "log2K",
    "rho_hat",
    "samples",
    "cover_lower",
    "cover_approx_frobenius_conv",
    "cover_approx_metric_conv",
];

pub(crate) fn covering_cells(cb: &Codebook, c: &CoveringEstimate) -> Result<Vec<String>> {
    let n = cb.n();
    let k = cb.len() as f64;
    let approx = |conv| {
        if k >= 3.0 {
            covering_radius_approx(n, k, conv).map(Some)
        } else {
            Ok(None)
        }
    };
    Ok(vec![
        cb.kind.to_string(),
        cb.m.to_string(),
        opt_int(cb.param),
        cb.len().to_string(),
        real(k.log2()),
        real(c.rho_hat),
        c.samples.to_string(),
        real(covering_lower_bound(n, k)?),
        opt_real(approx(CoveringConvention::FrobeniusLiteral)?),
        opt_real(approx(CoveringConvention::MetricConsistent)?),
    ])
}

fn mc_params(mc: &McArgs, extra: serde_json::Value) -> serde_json::Value {
    let mut v = json!({ "samples": mc.samples, "seed": mc.seed });
    if let (Some(obj), Some(more)) = (v.as_object_mut(), extra.as_object()) {
        obj.extend(more.clone());
    }
    v
}

fn source_params(cb: &Codebook) -> serde_json::Value {
    json!({ "kind": cb.kind, "m": cb.m, "param": cb.param, "K": cb.len() })
}

pub fn run(cmd: SimCommand) -> Result<()> {
    match cmd {
        SimCommand::Ball { n, rmax, bins, mc } => {
            let rows = ball_measure_mc(n, &mc.config(), &ball_grid(rmax, bins)?)?;
            let mut run = Run::new(
                "sim ball",
                Some(mc.seed),
                mc_params(&mc, json!({ "n": n, "rmax": rmax, "bins": bins })),
            );
            run.note("predicted is the leading term c_n R^D clamped at 1");
            run.emit(mc.out.as_deref(), &ball_table(&rows))?;
        }
        SimCommand::Kissing { n, mc } => {
            let samples = kissing_mc(n, &mc.config())?;
            let violations = samples.iter().filter(|s| !s.within_bounds(1e-9)).count();
            let mut run = Run::new(
                "sim kissing",
                Some(mc.seed),
                mc_params(&mc, json!({ "n": n })),
            );
            run.note(format!(
                "{violations} of {} samples violate the bounds",
                samples.len()
            ));
            eprintln!(
                "{violations} of {} midpoints outside the kissing bounds",
                samples.len()
            );
            run.emit(mc.out.as_deref(), &kissing_table(&samples))?;
        }
        SimCommand::Distortion { source, mc } => {
            let cb = source.load()?;
            let r = distortion_mc(&cb, &mc.config())?;
            let mut table = Table::new(&DISTORTION_COLUMNS);
            table.push(distortion_cells(&cb, &r)?);
            let mut run = Run::new(
                "sim distortion",
                Some(mc.seed),
                mc_params(&mc, source_params(&cb)),
            );
            run.note("the (1 + o(1)) factor of dist_upper is taken as 1");
            run.emit(mc.out.as_deref(), &table)?;
        }
        SimCommand::Covering { source, mc } => {
            let cb = source.load()?;
            let c = covering_radius_mc(&cb, &mc.config())?;
            let mut table = Table::new(&COVERING_COLUMNS);
            table.push(covering_cells(&cb, &c)?);
            let mut run = Run::new(
                "sim covering",
                Some(mc.seed),
                mc_params(&mc, source_params(&cb)),
            );
            run.note("rho_hat is a running maximum and underestimates the covering radius");
            run.emit(mc.out.as_deref(), &table)?;
        }
    }
    Ok(())
}
