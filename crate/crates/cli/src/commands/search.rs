use std::io::Read;

use anyhow::{Context, Result};
use monochrome::coloring::Coloring;
use monochrome::ring::{Domain, Integers};
use monochrome::search::cnf::{cnf_export, cnf_model_decode, parse_model};
use monochrome::search::{
    avoidance_backtrack_par, build_instance, moreira_number, AvoidanceInstance, AvoidanceResult, MoreiraOutcome,
};
use serde_json::{json, Value};

use super::{constraints, family, window, Outcome};
use crate::cli::{AvoidArgs, DecodeArgs, ExportArgs, InstanceArgs, MoreiraArgs};

fn instance<R: Domain>(ring: R, args: &InstanceArgs) -> Result<AvoidanceInstance<R>> {
    let w = window(ring.clone(), args.space.window)?;
    let fam = family(&ring, &args.family)?;
    let cons = constraints(&ring, &args.constraints)?;
    anyhow::ensure!(
        (1..=monochrome::search::MAX_COLORS).contains(&args.colors),
        "--colors must be between 1 and {}",
        monochrome::search::MAX_COLORS
    );
    Ok(build_instance(w, args.colors, fam, cons))
}

fn colors_json<R: Domain>(c: &Coloring<R>) -> Value {
    json!(c.colors())
}

fn store<R: Domain>(c: &Coloring<R>, path: Option<&std::path::Path>) -> Result<()> {
    if let Some(p) = path {
        c.store(p).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

pub fn avoid<R: Domain>(ring: R, args: &AvoidArgs, jobs: usize) -> Result<Outcome> {
    let inst = instance(ring, &args.instance)?;
    let res = avoidance_backtrack_par(&inst, args.budget, jobs);
    let stats = res.stats();
    let mut payload = json!({
        "status": res.status(),
        "candidates": inst.candidates.len(),
        "nodes": stats.nodes,
        "propagations": stats.propagations,
        "conflicts": stats.conflicts,
    });
    if let AvoidanceResult::AvoidanceFound(c, _) = &res {
        store(c, args.out.as_deref())?;
        payload["coloring"] = colors_json(c);
        return Ok(Outcome::ok(payload));
    }
    Ok(Outcome::negative(payload))
}

pub fn moreira(args: &MoreiraArgs) -> Result<Outcome> {
    let fam = family(&Integers, &args.family)?;
    anyhow::ensure!(
        (1..=monochrome::search::MAX_COLORS).contains(&args.colors),
        "--colors must be between 1 and {}",
        monochrome::search::MAX_COLORS
    );
    let report = moreira_number(args.colors, &fam, args.max_n, args.budget);
    let mut payload = json!({
        "notion": "least N such that every coloring of {1..N} has a monochromatic instance",
        "r": args.colors,
        "F": fam.format(&Integers),
    });
    let exit = match &report.outcome {
        MoreiraOutcome::Found { n, avoiding } => {
            payload["status"] = json!("found");
            payload["N"] = json!(n);
            payload["avoiding_coloring"] = avoiding.as_ref().map(colors_json).unwrap_or(Value::Null);
            0
        }
        MoreiraOutcome::NotFoundWithin { max_n, avoiding } => {
            payload["status"] = json!("not_found_within");
            payload["N"] = json!(max_n);
            payload["avoiding_coloring"] = colors_json(avoiding);
            1
        }
        MoreiraOutcome::Inconclusive { n } => {
            payload["status"] = json!("timeout");
            payload["N"] = json!(n);
            1
        }
    };
    payload["probes"] = json!(report.probes);
    Ok(Outcome::Report { payload, exit })
}

pub fn export<R: Domain>(ring: R, args: &ExportArgs) -> Result<Outcome> {
    let inst = instance(ring, &args.instance)?;
    let doc = cnf_export(&inst);
    let text = doc.to_dimacs();
    match &args.output {
        None => Ok(Outcome::Raw(text)),
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            Ok(Outcome::ok(json!({
                "path": path.display().to_string(),
                "vars": doc.num_vars,
                "clauses": doc.clauses.len(),
                "candidates": inst.candidates.len(),
            })))
        }
    }
}

pub fn decode<R: Domain>(ring: R, args: &DecodeArgs) -> Result<Outcome> {
    let inst = instance(ring, &args.instance)?;
    let text = if args.model.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&args.model).with_context(|| format!("reading {}", args.model.display()))?
    };
    let model = parse_model(&text).context("parsing model")?;
    Ok(match cnf_model_decode(&model, &inst) {
        Ok(c) => {
            store(&c, args.out.as_deref())?;
            Outcome::ok(json!({ "valid": true, "coloring": colors_json(&c) }))
        }
        Err(e) => Outcome::negative(json!({ "valid": false, "error": e.to_string() })),
    })
}
