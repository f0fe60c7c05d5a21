//! DIMACS encoding of an avoidance instance.
//!
//! Variable `var(e, c) = index(e) * r + c + 1` for 0-based window index and
//! 0-based color. Clauses come in three blocks: at-least-one color per
//! element, pairwise at-most-one, then one clause per candidate and color
//! forbidding that candidate in that color.

use std::fmt::Write as _;

use thiserror::Error;

use super::AvoidanceInstance;
use crate::coloring::Coloring;
use crate::ring::Domain;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("header declares {declared} clauses but {found} were read")]
    ClauseCount { declared: usize, found: usize },
    #[error("literal {0} exceeds the declared variable count")]
    VariableOutOfRange(i64),
    #[error("model leaves element {0} without a color")]
    NoColor(String),
    #[error("model assigns colors {1} and {2} to element {0}")]
    TwoColors(String, u32, u32),
    #[error("decoded coloring makes candidate {0} monochromatic")]
    Monochromatic(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfDocument {
    /// Comment bodies, without the leading `c `.
    pub comments: Vec<String>,
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl CnfDocument {
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            if c.is_empty() {
                out.push_str("c\n");
            } else {
                let _ = writeln!(out, "c {c}");
            }
        }
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                let _ = write!(out, "{lit} ");
            }
            out.push_str("0\n");
        }
        out
    }

    /// Parses DIMACS text; clauses may span lines.
    pub fn parse_dimacs(text: &str) -> Result<Self, CnfError> {
        let mut comments = Vec::new();
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            if line.is_empty() {
                continue;
            }
            if line == "c" || line.starts_with("c ") || line.starts_with("c\t") {
                comments.push(line[1..].trim_start().to_string());
                continue;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if header.is_some() || parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                    return Err(CnfError::Parse { line: lineno, msg: format!("bad header `{line}`") });
                }
                let num = |s: &str| {
                    s.parse::<usize>().map_err(|_| CnfError::Parse { line: lineno, msg: format!("bad count `{s}`") })
                };
                header = Some((num(parts[2])?, num(parts[3])?));
                continue;
            }
            let Some((vars, _)) = header else {
                return Err(CnfError::Parse { line: lineno, msg: "clause before header".into() });
            };
            for tok in line.split_whitespace() {
                let lit: i64 =
                    tok.parse().map_err(|_| CnfError::Parse { line: lineno, msg: format!("bad literal `{tok}`") })?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                } else if lit.unsigned_abs() as usize > vars {
                    return Err(CnfError::VariableOutOfRange(lit));
                } else {
                    current.push(lit);
                }
            }
        }
        let Some((num_vars, declared)) = header else {
            return Err(CnfError::Parse { line: 0, msg: "missing `p cnf` header".into() });
        };
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != declared {
            return Err(CnfError::ClauseCount { declared, found: clauses.len() });
        }
        Ok(CnfDocument { comments, num_vars, clauses })
    }
}

pub fn var(index: usize, color0: u32, r: u32) -> i64 {
    (index as i64) * i64::from(r) + i64::from(color0) + 1
}

pub fn cnf_export<R: Domain>(inst: &AvoidanceInstance<R>) -> CnfDocument {
    let ring = inst.window.ring();
    let r = inst.r;
    let n = inst.window.len();
    let mut comments = vec![
        format!("ring {}", ring.spec()),
        format!("window {}", inst.window.params()),
        format!("colors {r}"),
        format!("family {}", inst.family.format(ring)),
        format!("candidates {}", inst.candidates.len()),
    ];
    for (k, e) in inst.window.elements().iter().enumerate() {
        comments.push(format!("map {} {k}", ring.format(e)));
    }
    let mut clauses =
        Vec::with_capacity(n * (1 + (r * r.saturating_sub(1) / 2) as usize) + inst.candidates.len() * r as usize);
    for k in 0..n {
        clauses.push((0..r).map(|c| var(k, c, r)).collect());
    }
    for k in 0..n {
        for a in 0..r {
            for b in a + 1..r {
                clauses.push(vec![-var(k, a, r), -var(k, b, r)]);
            }
        }
    }
    for cand in &inst.candidates {
        for c in 0..r {
            clauses.push(cand.iter().map(|&k| -var(k, c, r)).collect());
        }
    }
    CnfDocument { comments, num_vars: n * r as usize, clauses }
}

/// Reads a solver model: `v` lines (with optional `s`/`c` lines) or one
/// literal per line. A `0` ends the model.
pub fn parse_model(text: &str) -> Result<Vec<i64>, CnfError> {
    let mut lits = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let mut line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('s') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('v') {
            line = rest;
        }
        for tok in line.split_whitespace() {
            let lit: i64 =
                tok.parse().map_err(|_| CnfError::Parse { line: i + 1, msg: format!("bad literal `{tok}`") })?;
            if lit == 0 {
                return Ok(lits);
            }
            lits.push(lit);
        }
    }
    Ok(lits)
}

pub fn cnf_model_decode<R: Domain>(model: &[i64], inst: &AvoidanceInstance<R>) -> Result<Coloring<R>, CnfError> {
    let r = inst.r;
    let n = inst.window.len();
    let mut colors = vec![0u32; n];
    let ring = inst.window.ring();
    for &lit in model {
        if lit <= 0 {
            continue;
        }
        let v = (lit - 1) as usize;
        let (k, c) = (v / r as usize, (v % r as usize) as u32 + 1);
        if k >= n {
            return Err(CnfError::VariableOutOfRange(lit));
        }
        if colors[k] != 0 && colors[k] != c {
            let e = ring.format(&inst.window.elements()[k]);
            return Err(CnfError::TwoColors(e, colors[k].min(c), colors[k].max(c)));
        }
        colors[k] = c;
    }
    if let Some(k) = colors.iter().position(|&c| c == 0) {
        return Err(CnfError::NoColor(ring.format(&inst.window.elements()[k])));
    }
    let coloring = Coloring::new(inst.window.clone(), r, colors).expect("decoded colors are in range");
    match inst.first_monochromatic(&coloring) {
        Some(k) => Err(CnfError::Monochromatic(k)),
        None => Ok(coloring),
    }
}

/// The complete assignment describing `c`, one literal per variable.
pub fn coloring_to_model<R: Domain>(c: &Coloring<R>) -> Vec<i64> {
    let r = c.num_colors();
    let mut lits = Vec::with_capacity(c.colors().len() * r as usize);
    for (k, &col) in c.colors().iter().enumerate() {
        for c0 in 0..r {
            let v = var(k, c0, r);
            lits.push(if c0 + 1 == col { v } else { -v });
        }
    }
    lits
}
