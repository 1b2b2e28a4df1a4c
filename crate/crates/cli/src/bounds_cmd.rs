use anyhow::Result;
use pucodes::bounds::{evaluate, BoundQuery, BoundsRow};
use pucodes::Error;
use serde_json::json;

use crate::table::{opt_real, Run, Table};
use crate::BoundsCommand;

pub(crate) const COLUMNS: [&str; 24] = [
    "n",
    "dim",
    "K",
    "log2K",
    "delta",
    "delta_sq",
    "vol_pu",
    "ball_measure",
    "gv_K",
    "hamming_K",
    "tight_hamming_K",
    "delta_gv",
    "delta_hamming",
    "delta_tight_hamming",
    "kiss_lower",
    "kiss_upper",
    "dist_lower",
    "dist_upper",
    "dist_upper_simple",
    "dist_upper_kissing",
    "cover_lower",
    "cover_approx_frobenius_conv",
    "cover_approx_metric_conv",
    "beyond_small_ball",
];

pub(crate) fn cells(r: &BoundsRow) -> Vec<String> {
    vec![
        r.n.to_string(),
        r.dim.to_string(),
        opt_real(r.cardinality),
        opt_real(r.cardinality.map(f64::log2)),
        opt_real(r.delta),
        opt_real(r.delta.map(|d| d * d)),
        opt_real(r.vol_pu),
        opt_real(r.ball_measure),
        opt_real(r.gv_k),
        opt_real(r.hamming_k),
        opt_real(r.tight_hamming_k),
        opt_real(r.delta_gv),
        opt_real(r.delta_hamming),
        opt_real(r.delta_tight_hamming),
        opt_real(r.kiss_lower),
        opt_real(r.kiss_upper),
        opt_real(r.dist_lower),
        opt_real(r.dist_upper),
        opt_real(r.dist_upper_simple),
        opt_real(r.dist_upper_kissing),
        opt_real(r.cover_lower),
        opt_real(r.cover_approx_frobenius_conv),
        opt_real(r.cover_approx_metric_conv),
        r.beyond_small_ball.to_string(),
    ]
}

/// `K = k_min·step^i` up to `k_max`.
pub(crate) fn k_grid(k_min: f64, k_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(k_min >= 1.0 && k_max >= k_min && step > 1.0) {
        return Err(
            Error::InvalidParameter("need 1 <= k-min <= k-max and log-step > 1".into()).into(),
        );
    }
    let mut out = Vec::new();
    let mut i = 0;
    loop {
        let k = k_min * step.powi(i);
        if k > k_max * (1.0 + 1e-12) {
            break;
        }
        out.push(k);
        i += 1;
    }
    Ok(out)
}

/// `δ = i/N` for `i = 1..=N`.
pub(crate) fn delta_grid(points: usize) -> Result<Vec<f64>> {
    if points == 0 {
        return Err(Error::InvalidParameter("delta-points must be positive".into()).into());
    }
    Ok((1..=points).map(|i| i as f64 / points as f64).collect())
}

pub(crate) const NOTES: [&str; 3] = [
    "ball measure is the small-radius leading term c_n R^D clamped at 1",
    "the (1 + o(1)) factor of the distortion upper bound is taken as 1",
    "covering approximation uses the natural logarithm",
];

pub fn run(cmd: BoundsCommand) -> Result<()> {
    match cmd {
        BoundsCommand::Table {
            n,
            k_min,
            k_max,
            log_step,
            delta,
            delta_points,
            out,
        } => {
            let mut table = Table::new(&COLUMNS);
            let params;
            if let Some(points) = delta_points {
                for d in delta_grid(points)? {
                    table.push(cells(&evaluate(&BoundQuery::new(n, None, Some(d))?)?));
                }
                params = json!({ "n": n, "delta_points": points });
            } else {
                for k in k_grid(k_min, k_max, log_step)? {
                    table.push(cells(&evaluate(&BoundQuery::new(n, Some(k), delta)?)?));
                }
                params = json!({
                    "n": n, "k_min": k_min, "k_max": k_max, "log_step": log_step, "delta": delta,
                });
            }
            let mut run = Run::new("bounds table", None, params);
            NOTES.iter().for_each(|s| run.note(*s));
            run.emit(out.as_deref(), &table)?;
        }
        BoundsCommand::Point {
            n,
            cardinality,
            delta,
            out,
        } => {
            let row = evaluate(&BoundQuery::new(n, cardinality, delta)?)?;
            match out {
                Some(path) => {
                    let mut table = Table::new(&COLUMNS);
                    table.push(cells(&row));
                    let mut run = Run::new(
                        "bounds point",
                        None,
                        json!({ "n": n, "K": cardinality, "delta": delta }),
                    );
                    NOTES.iter().for_each(|s| run.note(*s));
                    run.write(&path, &table)?;
                }
                None => println!("{}", serde_json::to_string_pretty(&row)?),
            }
        }
    }
    Ok(())
}
