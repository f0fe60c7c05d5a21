use anyhow::{Context, Result};
use monochrome::largeness::{
    dilate_set, dilation_transport, divide_set, division_transport, ipstar_refute, parse_element_set,
    ps_witness_search, ps_witness_search_par, syndetic_check, LargenessError, PsWitness, SyndeticCheck,
};
use monochrome::ring::Domain;
use serde_json::{json, Value};

use super::{element, elements, fmt, fmt_all, window, Outcome};
use crate::cli::{IpstarArgs, PsArgs, SyndeticArgs, TransportArgs, TransportMode};

fn witness_json<R: Domain>(ring: &R, w: &PsWitness<R::Elem>) -> Value {
    json!({
        "gaps": fmt_all(ring, &w.gaps),
        "block": fmt_all(ring, &w.block),
        "anchor": fmt(ring, &w.anchor),
    })
}

pub fn syndetic<R: Domain>(ring: R, args: &SyndeticArgs) -> Result<Outcome> {
    let w = window(ring.clone(), args.space.window)?;
    let a = parse_element_set(&w, &args.a).with_context(|| format!("set `{}`", args.a))?;
    let gaps = elements(&ring, &args.gaps)?;
    Ok(match syndetic_check(&a, &gaps, &w) {
        SyndeticCheck::Holds => Outcome::ok(json!({ "status": "holds" })),
        SyndeticCheck::Counterexample(e) => {
            Outcome::negative(json!({ "status": "counterexample", "uncovered": fmt(&ring, &e) }))
        }
    })
}

pub fn ps_witness<R: Domain>(ring: R, args: &PsArgs, jobs: usize) -> Result<Outcome> {
    let w = window(ring.clone(), args.space.window)?;
    let a = parse_element_set(&w, &args.a).with_context(|| format!("set `{}`", args.a))?;
    let gaps = elements(&ring, &args.gaps)?;
    let block = elements(&ring, &args.block)?;
    let found = if jobs > 1 {
        ps_witness_search_par(&a, &gaps, &block, &w, jobs)
    } else {
        ps_witness_search(&a, &gaps, &block, &w)
    };
    Ok(match found {
        Some(wit) => {
            let mut payload = json!({ "status": "found" });
            payload.as_object_mut().unwrap().extend(witness_json(&ring, &wit).as_object().unwrap().clone());
            Outcome::ok(payload)
        }
        None => Outcome::negative(json!({ "status": "not_found" })),
    })
}

pub fn ipstar<R: Domain>(ring: R, args: &IpstarArgs) -> Result<Outcome> {
    let w = window(ring.clone(), args.space.window)?;
    let a = parse_element_set(&w, &args.a).with_context(|| format!("set `{}`", args.a))?;
    let entries = window(ring.clone(), args.entries.unwrap_or(args.space.window))?;
    let found = ipstar_refute(&a, &entries, args.len, args.samples, args.seed)?;
    Ok(match found {
        // Evidence only: sampling cannot prove A meets every IP set.
        None => Outcome::ok(json!({ "status": "none_found", "samples": args.samples, "length": args.len })),
        Some(seq) => Outcome::negative(json!({ "status": "refuted", "sequence": fmt_all(&ring, &seq) })),
    })
}

pub fn transport<R: Domain>(ring: R, args: &TransportArgs) -> Result<Outcome> {
    let w = window(ring.clone(), args.space.window)?;
    let a = parse_element_set(&w, &args.a).with_context(|| format!("set `{}`", args.a))?;
    let gaps = elements(&ring, &args.gaps)?;
    let block = elements(&ring, &args.block)?;
    let scalar = element(&ring, &args.scalar)?;
    let Some(wit) = ps_witness_search(&a, &gaps, &block, &w) else {
        return Ok(Outcome::negative(json!({ "status": "no_witness" })));
    };
    let moved = match args.mode {
        TransportMode::Dilate => dilation_transport(&ring, &wit, &scalar).map(|t| (t, dilate_set(&ring, &a, &scalar))),
        TransportMode::Divide => {
            division_transport(&ring, &wit, &scalar).and_then(|t| Ok((t, divide_set(&ring, &a, &scalar)?)))
        }
    };
    Ok(match moved {
        Ok((t, target)) => {
            let valid = t.is_valid_for(&ring, &target);
            Outcome::with_status(
                json!({
                    "status": if valid { "valid" } else { "invalid" },
                    "witness": witness_json(&ring, &wit),
                    "transported": witness_json(&ring, &t),
                }),
                valid,
            )
        }
        Err(e @ (LargenessError::NotDivisible(_) | LargenessError::ZeroScalar)) => Outcome::negative(json!({
            "status": "not_transportable",
            "witness": witness_json(&ring, &wit),
            "reason": e.to_string(),
        })),
        Err(e) => return Err(e.into()),
    })
}
