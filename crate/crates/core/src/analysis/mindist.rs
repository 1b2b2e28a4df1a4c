use rayon::prelude::*;
use serde::Serialize;

use super::nearest::FlatCodebook;
use crate::codebook::{Codebook, SAME_CLASS_TOL};
use crate::error::{Error, Result};
use crate::pu::distance_from_overlap;

/// Largest codebook scanned pairwise by [`min_distance_exact`].
pub const MAX_PAIRWISE_ELEMENTS: usize = 100_000;

/// Default cap on `|C|²` for [`min_distance_numeric`].
pub const DEFAULT_PAIR_BUDGET: u128 = 10_000_000_000;

/// Minimum distance with a pair attaining it, `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MinDistance {
    pub delta: f64,
    pub i: usize,
    pub j: usize,
    /// Whether the group reduction `d(U, V) = d(I, UᴴV)` was used.
    pub group_mode: bool,
}

/// Exact minimum distance. Groups are scanned against the identity only.
pub fn min_distance_exact(cb: &Codebook) -> Result<MinDistance> {
    check_size(cb)?;
    if cb.is_group {
        return group_scan(cb);
    }
    if cb.len() > MAX_PAIRWISE_ELEMENTS {
        return Err(Error::Unsupported(format!(
            "{} elements exceed the pairwise limit of {MAX_PAIRWISE_ELEMENTS}; \
             subsample the codebook or use a group family",
            cb.len()
        )));
    }
    pairwise_scan(cb)
}

/// Exact pairwise minimum distance when `|C|² ≤ budget`.
pub fn min_distance_numeric(cb: &Codebook, budget: u128) -> Result<MinDistance> {
    check_size(cb)?;
    let required = (cb.len() as u128).pow(2);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    pairwise_scan(cb)
}

fn check_size(cb: &Codebook) -> Result<()> {
    if cb.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "minimum distance needs at least 2 elements, got {}",
            cb.len()
        )));
    }
    Ok(())
}

fn group_scan(cb: &Codebook) -> Result<MinDistance> {
    let flat = FlatCodebook::new(cb)?;
    let n = cb.n();
    let id = crate::matrix::CMatrix::identity(n);
    let identity = (0..cb.len())
        .find(|&i| distance_from_overlap(flat.overlap(i, id.as_slice()), n) < SAME_CLASS_TOL)
        .ok_or_else(|| Error::Consistency("group codebook lacks the identity".into()))?;
    let mut best: Option<(usize, f64)> = None;
    for i in (0..cb.len()).filter(|&i| i != identity) {
        let t = flat.overlap(i, id.as_slice());
        if best.is_none_or(|(_, bt)| t > bt) {
            best = Some((i, t));
        }
    }
    let (other, t) = best.expect("at least two elements");
    Ok(MinDistance {
        delta: distance_from_overlap(t, n),
        i: identity.min(other),
        j: identity.max(other),
        group_mode: true,
    })
}

fn pairwise_scan(cb: &Codebook) -> Result<MinDistance> {
    let flat = FlatCodebook::new(cb)?;
    let n = cb.n();
    let nn = n * n;
    let reps: Vec<_> = cb
        .elements()
        .iter()
        .flat_map(|e| e.matrix().as_slice().iter().copied())
        .collect();
    // Per-row maxima reduced in row order, so ties resolve to the
    // lexicographically first pair regardless of scheduling.
    let rows: Vec<(usize, f64)> = (0..cb.len() - 1)
        .into_par_iter()
        .map(|i| {
            let mut best = (i + 1, f64::NEG_INFINITY);
            for j in i + 1..cb.len() {
                let t = flat.overlap(i, &reps[j * nn..(j + 1) * nn]);
                if t > best.1 {
                    best = (j, t);
                }
            }
            best
        })
        .collect();
    let mut best = (0, rows[0].0, rows[0].1);
    for (i, &(j, t)) in rows.iter().enumerate().skip(1) {
        if t > best.2 {
            best = (i, j, t);
        }
    }
    Ok(MinDistance {
        delta: distance_from_overlap(best.2, n),
        i: best.0,
        j: best.1,
        group_mode: false,
    })
}
