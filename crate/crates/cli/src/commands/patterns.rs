use anyhow::{bail, Result};
use monochrome::patterns::{abundance_profile, witness_scan_par};
use monochrome::ring::Domain;
use serde_json::{json, Value};

use super::{coloring, constraints, elements, family, fmt, fmt_all, Outcome};
use crate::cli::{AbundanceArgs, ScanArgs};

pub fn scan(args: &ScanArgs, jobs: usize) -> Result<Outcome> {
    monochrome::with_ring!(args.source.ring, |ring| scan_in(ring, args, jobs))
}

fn scan_in<R: Domain>(ring: R, args: &ScanArgs, jobs: usize) -> Result<Outcome> {
    let c = coloring(ring.clone(), &args.source)?;
    let fam = family(&ring, &args.source.family)?;
    let cons = constraints(&ring, &args.source.constraints)?;
    let found = witness_scan_par(&c, &fam, &cons, args.limit, jobs);
    let payload: Vec<Value> = found
        .iter()
        .map(|w| {
            json!({
                "x": fmt(&ring, &w.x),
                "y": fmt(&ring, &w.y),
                "color": w.color,
                "elements": fmt_all(&ring, &w.elements),
            })
        })
        .collect();
    let any = !payload.is_empty();
    Ok(Outcome::with_status(Value::Array(payload), any))
}

pub fn abundance(args: &AbundanceArgs) -> Result<Outcome> {
    monochrome::with_ring!(args.source.ring, |ring| abundance_in(ring, args))
}

fn abundance_in<R: Domain>(ring: R, args: &AbundanceArgs) -> Result<Outcome> {
    let c = coloring(ring.clone(), &args.source)?;
    let fam = family(&ring, &args.source.family)?;
    let cons = constraints(&ring, &args.source.constraints)?;
    let ys: Vec<R::Elem> = match &args.y {
        Some(list) => elements(&ring, list)?,
        None => c.window().elements().iter().filter(|y| cons.allows_y(y)).cloned().collect(),
    };
    if ys.is_empty() {
        bail!("no admissible y");
    }
    let mut rows = Vec::with_capacity(ys.len());
    for y in &ys {
        let prof = abundance_profile(&c, &fam, y, &cons)?;
        rows.push(json!({
            "y": fmt(&ring, &prof.y),
            "sizes": prof.sizes(),
            "classes": prof.classes.iter().map(|cl| fmt_all(&ring, cl)).collect::<Vec<_>>(),
        }));
    }
    Ok(Outcome::ok(Value::Array(rows)))
}
