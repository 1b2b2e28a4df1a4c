use anyhow::Result;
use pucodes::analysis::{min_distance_exact, min_distance_numeric, MinDistance};
use pucodes::bounds::family_min_distance;
use pucodes::codebook::io::{write_codebook, Header};
use pucodes::{Codebook, Error};
use serde_json::json;

use crate::table::{opt_int, real, Run, Table};
use crate::CodebookCommand;

/// Checks the observed cardinality against the closed form.
pub(crate) fn check_cardinality(cb: &Codebook) -> Result<()> {
    let report = cb.cardinality_report();
    if !report.matches() {
        return Err(Error::Consistency(format!(
            "{} m={} param={:?}: built {} elements, closed form gives {:?}",
            report.kind, report.m, report.param, report.observed, report.expected
        ))
        .into());
    }
    Ok(())
}

/// Group scan for groups, budgeted pairwise scan otherwise; group results
/// are cross-checked against the closed form.
pub(crate) fn measure(cb: &Codebook, budget: u128) -> Result<MinDistance> {
    let md = if cb.is_group {
        min_distance_exact(cb)?
    } else {
        min_distance_numeric(cb, budget)?
    };
    if cb.is_group {
        if let Ok(expected) = family_min_distance(cb.kind, cb.m, cb.param) {
            if (md.delta - expected).abs() > 1e-9 {
                return Err(Error::Consistency(format!(
                    "{} minimum distance {} differs from closed form {expected}",
                    cb.kind, md.delta
                ))
                .into());
            }
        }
    }
    Ok(md)
}

pub fn run(cmd: CodebookCommand) -> Result<()> {
    match cmd {
        CodebookCommand::Build { family, out } => {
            let cb = family.build()?;
            check_cardinality(&cb)?;
            write_codebook(&out, &cb)?;
            println!(
                "{} m={} param={} count={} -> {}",
                cb.kind,
                cb.m,
                opt_int(cb.param),
                cb.len(),
                out.display()
            );
        }
        CodebookCommand::Info { source } => {
            let cb = source.load()?;
            let info = json!({
                "header": Header::of(&cb)?,
                "n": cb.n(),
                "is_group": cb.is_group,
                "cardinality": cb.cardinality_report(),
            });
            println!("{}", serde_json::to_string_pretty(&info)?);
            check_cardinality(&cb)?;
        }
        CodebookCommand::Mindist {
            source,
            budget,
            out,
        } => {
            let cb = source.load()?;
            let md = measure(&cb, budget)?;
            let k = cb.len() as f64;
            let mut table = Table::new(&[
                "kind",
                "m",
                "param",
                "K",
                "log2K",
                "delta",
                "delta_sq",
                "i",
                "j",
                "group_mode",
            ]);
            table.push(vec![
                cb.kind.to_string(),
                cb.m.to_string(),
                opt_int(cb.param),
                cb.len().to_string(),
                real(k.log2()),
                real(md.delta),
                real(md.delta * md.delta),
                md.i.to_string(),
                md.j.to_string(),
                md.group_mode.to_string(),
            ]);
            let run = Run::new(
                "codebook mindist",
                None,
                json!({ "kind": cb.kind, "m": cb.m, "param": cb.param, "budget": budget.to_string() }),
            );
            run.emit(out.as_deref(), &table)?;
        }
    }
    Ok(())
}
