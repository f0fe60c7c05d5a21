use anyhow::{bail, Context, Result};
use monochrome::halesjewett::{
    find_line_free_coloring, hj_number_exhaustive, verify_sigma_line_identity, CoefficientAlphabet, HjError, HjOutcome,
    PhjPoint, WildcardSet, YAssignment,
};
use monochrome::ring::Domain;
use monochrome::ufp::{grow_ufp, has_ufp, trivial_product, UfpCheck, UfpError};
use serde_json::{json, Value};

use super::{element, elements, family, fmt, fmt_all, window, Outcome};
use crate::cli::{GrowArgs, HjArgs, SigmaArgs, VerifyArgs};

fn index_list(text: &str, what: &str) -> Result<Vec<u32>> {
    text.trim()
        .trim_start_matches(['{', '['])
        .trim_end_matches(['}', ']'])
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>().with_context(|| format!("{what}: `{s}` is not a positive integer")))
        .collect()
}

pub fn hj(args: &HjArgs, jobs: usize) -> Result<Outcome> {
    let (r, t) = (args.colors, args.alphabet);
    let head = json!({ "r": r, "t": t });
    let result = hj_number_exhaustive(r, t, args.max_n, args.budget, jobs);
    let mut payload = head;
    let exit = match result {
        Ok(HjOutcome::Found(n)) => {
            let avoiding = if n > 1 { find_line_free_coloring(r, t, n as usize - 1, jobs) } else { None };
            payload["status"] = json!("found");
            payload["N"] = json!(n);
            payload["avoiding_coloring"] = json!(avoiding);
            0
        }
        Ok(HjOutcome::NotFoundWithin { max_n, avoiding }) => {
            payload["status"] = json!("not_found_within");
            payload["N"] = json!(max_n);
            payload["avoiding_coloring"] = json!(avoiding);
            1
        }
        Err(HjError::BudgetExceeded { n, estimate, budget }) => {
            payload["status"] = json!("budget_exceeded");
            payload["N"] = json!(n);
            payload["estimate"] = json!(estimate.to_string());
            payload["budget"] = json!(budget.to_string());
            1
        }
        Err(e) => return Err(e.into()),
    };
    Ok(Outcome::Report { payload, exit })
}

pub fn sigma<R: Domain>(ring: R, args: &SigmaArgs) -> Result<Outcome> {
    let fam = family(&ring, &args.family)?;
    let base = elements(&ring, &args.y)?;
    if base.is_empty() {
        bail!("--y needs at least one value");
    }
    let d = fam.max_degree() as usize;
    if d == 0 {
        bail!("the family has no nonzero member");
    }
    let n = base.len();
    let alphabet = CoefficientAlphabet::of_family(&ring, &fam);
    let q = alphabet.len() as u32;
    let y = YAssignment::multiplicative(&ring, &base, d);
    let gamma: Vec<usize> = index_list(&args.gamma, "--gamma")?.into_iter().map(|i| i as usize).collect();
    let gamma = WildcardSet::new(n, gamma)?;
    let u = match &args.u {
        Some(text) => PhjPoint::from_flat(d, n, q, &index_list(text, "--u")?)?,
        None => PhjPoint::constant(d, n, q, 1)?,
    };
    let r0 = element(&ring, &args.r0)?;
    let checks = verify_sigma_line_identity(&ring, &fam, &y, &gamma, &u, &r0)?;
    let all = checks.iter().all(|c| c.holds);
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "poly": fam.polys()[c.poly_index].format(&ring),
                "lhs": fmt(&ring, &c.lhs),
                "rhs": fmt(&ring, &c.rhs),
                "s": fmt(&ring, &c.s),
                "y_gamma": fmt(&ring, &c.y_gamma),
                "holds": c.holds,
            })
        })
        .collect();
    let letters: Vec<Value> = (1..=q).map(|k| fmt(&ring, alphabet.value(k))).collect();
    Ok(Outcome::with_status(json!({ "alphabet": letters, "checks": rows }), all))
}

pub fn ufp_verify<R: Domain>(ring: R, args: &VerifyArgs) -> Result<Outcome> {
    let seq = elements(&ring, &args.seq)?;
    if let Some(idx) = trivial_product(&ring, &seq)? {
        return Ok(Outcome::negative(json!({ "status": "trivial_product", "H": idx })));
    }
    Ok(match has_ufp(&ring, &seq)? {
        UfpCheck::Holds => Outcome::ok(json!({ "status": "holds", "length": seq.len() })),
        UfpCheck::Violation(c) => Outcome::negative(json!({
            "status": "violation",
            "H": c.h,
            "K": c.k,
            "product": fmt(&ring, &c.product),
        })),
    })
}

pub fn ufp_grow<R: Domain>(ring: R, args: &GrowArgs) -> Result<Outcome> {
    let w = window(ring.clone(), args.space.window)?;
    let start = element(&ring, &args.start)?;
    match grow_ufp(&start, &w, args.m) {
        Ok(seq) => Ok(Outcome::ok(fmt_all(&ring, seq.elements()))),
        Err(UfpError::PoolExhausted { step }) => Ok(Outcome::negative(json!({
            "status": "pool_exhausted",
            "step": step,
        }))),
        Err(e) => Err(e.into()),
    }
}
