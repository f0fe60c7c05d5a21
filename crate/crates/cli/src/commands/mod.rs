mod largeness;
mod patterns;
mod search;
mod structure;

use std::sync::Arc;

use anyhow::{bail, Context, Result};
use monochrome::coloring::Coloring;
use monochrome::largeness::parse_element_seq;
use monochrome::patterns::{PolyFamily, ScanConstraints};
use monochrome::ring::{Domain, Window, WindowParams};
use serde_json::Value;

use crate::cli::{Cli, CnfCommand, Command, ConstraintArgs, LargenessCommand, SearchCommand, UfpCommand};

pub const EXIT_NEGATIVE: i32 = 1;

/// What a subcommand produced.
pub enum Outcome {
    /// A payload for the report envelope, with the process exit status.
    Report { payload: Value, exit: i32 },
    /// Text written verbatim to standard output, no envelope.
    Raw(String),
}

impl Outcome {
    fn ok(payload: Value) -> Self {
        Outcome::Report { payload, exit: 0 }
    }

    fn negative(payload: Value) -> Self {
        Outcome::Report { payload, exit: EXIT_NEGATIVE }
    }

    fn with_status(payload: Value, success: bool) -> Self {
        if success {
            Outcome::ok(payload)
        } else {
            Outcome::negative(payload)
        }
    }
}

pub fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Scan(_) => "scan",
        Command::Abundance(_) => "abundance",
        Command::Largeness(LargenessCommand::Syndetic(_)) => "largeness syndetic",
        Command::Largeness(LargenessCommand::PsWitness(_)) => "largeness ps-witness",
        Command::Largeness(LargenessCommand::Ipstar(_)) => "largeness ipstar",
        Command::Largeness(LargenessCommand::Transport(_)) => "largeness transport",
        Command::Hj(_) => "hj",
        Command::Sigma(_) => "sigma",
        Command::Search(SearchCommand::Avoid(_)) => "search avoid",
        Command::Search(SearchCommand::Moreira(_)) => "search moreira",
        Command::Cnf(CnfCommand::Export(_)) => "cnf export",
        Command::Cnf(CnfCommand::Decode(_)) => "cnf decode",
        Command::Ufp(UfpCommand::Verify(_)) => "ufp verify",
        Command::Ufp(UfpCommand::Grow(_)) => "ufp grow",
        Command::Report(_) => "report",
    }
}

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    let jobs = cli.jobs.max(1);
    match &cli.command {
        Command::Scan(a) => patterns::scan(a, jobs),
        Command::Abundance(a) => patterns::abundance(a),
        Command::Largeness(LargenessCommand::Syndetic(a)) => {
            monochrome::with_ring!(a.space.ring, |ring| largeness::syndetic(ring, a))
        }
        Command::Largeness(LargenessCommand::PsWitness(a)) => {
            monochrome::with_ring!(a.space.ring, |ring| largeness::ps_witness(ring, a, jobs))
        }
        Command::Largeness(LargenessCommand::Ipstar(a)) => {
            monochrome::with_ring!(a.space.ring, |ring| largeness::ipstar(ring, a))
        }
        Command::Largeness(LargenessCommand::Transport(a)) => {
            monochrome::with_ring!(a.space.ring, |ring| largeness::transport(ring, a))
        }
        Command::Hj(a) => structure::hj(a, jobs),
        Command::Sigma(a) => monochrome::with_ring!(a.ring, |ring| structure::sigma(ring, a)),
        Command::Search(SearchCommand::Avoid(a)) => {
            monochrome::with_ring!(a.instance.space.ring, |ring| search::avoid(ring, a, jobs))
        }
        Command::Search(SearchCommand::Moreira(a)) => search::moreira(a),
        Command::Cnf(CnfCommand::Export(a)) => {
            monochrome::with_ring!(a.instance.space.ring, |ring| search::export(ring, a))
        }
        Command::Cnf(CnfCommand::Decode(a)) => {
            monochrome::with_ring!(a.instance.space.ring, |ring| search::decode(ring, a))
        }
        Command::Ufp(UfpCommand::Verify(a)) => monochrome::with_ring!(a.ring, |ring| structure::ufp_verify(ring, a)),
        Command::Ufp(UfpCommand::Grow(a)) => monochrome::with_ring!(a.space.ring, |ring| structure::ufp_grow(ring, a)),
        Command::Report(a) => {
            let csv = crate::output::merge_reports(&a.inputs)?;
            match &a.output {
                Some(path) => {
                    std::fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
                    Ok(Outcome::Raw(String::new()))
                }
                None => Ok(Outcome::Raw(csv)),
            }
        }
    }
}

fn window<R: Domain>(ring: R, params: WindowParams) -> Result<Arc<Window<R>>> {
    Ok(Arc::new(Window::new(ring, params).with_context(|| format!("window {params}"))?))
}

fn family<R: Domain>(ring: &R, text: &str) -> Result<PolyFamily<R::Elem>> {
    PolyFamily::parse(ring, text).with_context(|| format!("family `{text}`"))
}

fn elements<R: Domain>(ring: &R, text: &str) -> Result<Vec<R::Elem>> {
    parse_element_seq(ring, text).with_context(|| format!("element list `{text}`"))
}

fn element<R: Domain>(ring: &R, text: &str) -> Result<R::Elem> {
    ring.parse(text.trim()).with_context(|| format!("element `{text}`"))
}

fn constraints<R: Domain>(ring: &R, args: &ConstraintArgs) -> Result<ScanConstraints<R::Elem>> {
    let mut c = ScanConstraints::defaults(ring);
    if let Some(s) = &args.exclude_y {
        c.exclude_y = elements(ring, s)?.into_iter().collect();
    }
    if let Some(s) = &args.exclude_x {
        c.exclude_x = elements(ring, s)?.into_iter().collect();
    }
    c.require_in_window = !args.allow_outside;
    c.forbid_degenerate = !args.allow_degenerate;
    Ok(c)
}

fn fmt<R: Domain>(ring: &R, e: &R::Elem) -> Value {
    Value::String(ring.format(e))
}

fn fmt_all<'a, R: Domain>(ring: &R, es: impl IntoIterator<Item = &'a R::Elem>) -> Value {
    Value::Array(es.into_iter().map(|e| fmt(ring, e)).collect())
}

fn coloring<R: Domain>(ring: R, args: &crate::cli::ColoringArgs) -> Result<Coloring<R>> {
    if let Some(path) = &args.coloring {
        let c = Coloring::load(ring, path).with_context(|| format!("loading {}", path.display()))?;
        if let Some(w) = args.window {
            if w != c.window().params() {
                bail!("--window {w} does not match the coloring file's window {}", c.window().params());
            }
        }
        if let Some(r) = args.colors {
            if r != c.num_colors() {
                bail!("--colors {r} does not match the coloring file's {} colors", c.num_colors());
            }
        }
        return Ok(c);
    }
    let params = args.window.context("--window is required without --coloring")?;
    let r = args.colors.context("--colors is required without --coloring")?;
    Ok(Coloring::random(window(ring, params)?, r, args.seed)?)
}
