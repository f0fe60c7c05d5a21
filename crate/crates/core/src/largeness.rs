//! Witness-based finite versions of the largeness notions: syndetic and
//! piecewise syndetic sets, finite sums / products, IP*-refutation sampling,
//! and exact transport of witnesses under dilation and division.
//!
//! On a finite window nothing is ever certified "piecewise syndetic"; the
//! module only produces and checks `(G, B, x)` witnesses for the inclusion
//! `B + x ⊆ ⋃_{t∈G} (-t + A)`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::ring::{DivisionError, Domain, RingError, Window};
use crate::rng::SplitMix64;

/// Longest sequence accepted by [`finite_sums`] and [`finite_products`].
pub const MAX_SEQUENCE_LEN: usize = 24;

pub type ElementSet<E> = BTreeSet<E>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LargenessError {
    #[error("sequence of length {0} exceeds the cap of {MAX_SEQUENCE_LEN}")]
    TooLong(usize),
    #[error("sequence is empty")]
    EmptySequence,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("`{0}` is not divisible by the divisor")]
    NotDivisible(String),
    #[error("cannot parse element set `{0}`")]
    Parse(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A `(G, B, x)` triple claiming `∀ b ∈ B ∃ t ∈ G : t + b + x ∈ A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsWitness<E> {
    pub gaps: Vec<E>,
    pub block: Vec<E>,
    pub anchor: E,
}

impl<E: Clone + Ord> PsWitness<E> {
    /// First block element with no covering gap, if any.
    pub fn first_failure<R: Domain<Elem = E>>(&self, ring: &R, a: &ElementSet<E>) -> Option<E> {
        self.block.iter().find(|b| !covered(ring, a, &self.gaps, &ring.add(b, &self.anchor))).cloned()
    }

    pub fn is_valid_for<R: Domain<Elem = E>>(&self, ring: &R, a: &ElementSet<E>) -> bool {
        self.first_failure(ring, a).is_none()
    }
}

fn covered<R: Domain>(ring: &R, a: &ElementSet<R::Elem>, gaps: &[R::Elem], w: &R::Elem) -> bool {
    gaps.iter().any(|t| a.contains(&ring.add(t, w)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyndeticCheck<E> {
    Holds,
    Counterexample(E),
}

/// Whether the `G`-translates of `A` cover the window: every `w` has some
/// `t ∈ G` with `t + w ∈ A`. Returns the first uncovered `w` otherwise.
pub fn syndetic_check<R: Domain>(
    a: &ElementSet<R::Elem>,
    gaps: &[R::Elem],
    window: &Window<R>,
) -> SyndeticCheck<R::Elem> {
    let ring = window.ring();
    match window.elements().iter().find(|w| !covered(ring, a, gaps, w)) {
        Some(w) => SyndeticCheck::Counterexample(w.clone()),
        None => SyndeticCheck::Holds,
    }
}

/// Least anchor `x` of the window (canonical order) for which `(G, B, x)` is a
/// witness for `A`.
pub fn ps_witness_search<R: Domain>(
    a: &ElementSet<R::Elem>,
    gaps: &[R::Elem],
    block: &[R::Elem],
    window: &Window<R>,
) -> Option<PsWitness<R::Elem>> {
    let ring = window.ring();
    window.elements().iter().find(|x| anchor_works(ring, a, gaps, block, x)).map(|x| PsWitness {
        gaps: gaps.to_vec(),
        block: block.to_vec(),
        anchor: x.clone(),
    })
}

/// [`ps_witness_search`] with the anchors split across `jobs` workers; the
/// least anchor is still the one returned.
pub fn ps_witness_search_par<R: Domain>(
    a: &ElementSet<R::Elem>,
    gaps: &[R::Elem],
    block: &[R::Elem],
    window: &Window<R>,
    jobs: usize,
) -> Option<PsWitness<R::Elem>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build();
    let Ok(pool) = pool else {
        return ps_witness_search(a, gaps, block, window);
    };
    let ring = window.ring();
    pool.install(|| {
        window.elements().par_iter().find_first(|x| anchor_works(ring, a, gaps, block, x)).map(|x| PsWitness {
            gaps: gaps.to_vec(),
            block: block.to_vec(),
            anchor: x.clone(),
        })
    })
}

fn anchor_works<R: Domain>(
    ring: &R,
    a: &ElementSet<R::Elem>,
    gaps: &[R::Elem],
    block: &[R::Elem],
    x: &R::Elem,
) -> bool {
    block.iter().all(|b| covered(ring, a, gaps, &ring.add(b, x)))
}

/// Generators together with every combination over nonempty index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetClosure<E> {
    pub generators: Vec<E>,
    pub values: BTreeSet<E>,
}

/// `FS(⟨x_n⟩)`: all sums over nonempty index sets.
pub type FsSet<E> = SubsetClosure<E>;
/// `FP(⟨y_t⟩)`: all products over nonempty index sets.
pub type FpSet<E> = SubsetClosure<E>;

fn subset_closure<E: Clone + Ord>(seq: &[E], op: impl Fn(&E, &E) -> E) -> Result<SubsetClosure<E>, LargenessError> {
    if seq.is_empty() {
        return Err(LargenessError::EmptySequence);
    }
    if seq.len() > MAX_SEQUENCE_LEN {
        return Err(LargenessError::TooLong(seq.len()));
    }
    // FS(x_1..x_k+1) = FS(x_1..x_k) ∪ {x_k+1} ∪ (FS(x_1..x_k) ∘ x_k+1)
    let mut values: BTreeSet<E> = BTreeSet::new();
    for g in seq {
        let shifted: Vec<E> = values.iter().map(|v| op(v, g)).collect();
        values.extend(shifted);
        values.insert(g.clone());
    }
    Ok(SubsetClosure { generators: seq.to_vec(), values })
}

pub fn finite_sums<R: Domain>(ring: &R, seq: &[R::Elem]) -> Result<FsSet<R::Elem>, LargenessError> {
    subset_closure(seq, |a, b| ring.add(a, b))
}

pub fn finite_products<R: Domain>(ring: &R, seq: &[R::Elem]) -> Result<FpSet<R::Elem>, LargenessError> {
    subset_closure(seq, |a, b| ring.mul(a, b))
}

/// Samples `samples` sequences of length `seq_len` with entries drawn
/// uniformly from `entries` and returns the first one whose finite sums miss
/// `A` entirely. Sums are computed in the ring; a sum outside `A` (inside the
/// window or not) does not meet `A`. `None` is evidence, not proof, that `A`
/// is IP*.
pub fn ipstar_refute<R: Domain>(
    a: &ElementSet<R::Elem>,
    entries: &Window<R>,
    seq_len: usize,
    samples: usize,
    seed: u64,
) -> Result<Option<Vec<R::Elem>>, LargenessError> {
    if seq_len == 0 {
        return Err(LargenessError::EmptySequence);
    }
    if seq_len > MAX_SEQUENCE_LEN {
        return Err(LargenessError::TooLong(seq_len));
    }
    let ring = entries.ring();
    let mut rng = SplitMix64::new(seed);
    for _ in 0..samples {
        let seq: Vec<R::Elem> =
            (0..seq_len).map(|_| entries.elements()[rng.below(entries.len() as u64) as usize].clone()).collect();
        let fs = finite_sums(ring, &seq)?;
        if fs.values.iter().all(|s| !a.contains(s)) {
            return Ok(Some(seq));
        }
    }
    Ok(None)
}

pub fn dilate_set<R: Domain>(ring: &R, a: &ElementSet<R::Elem>, r: &R::Elem) -> ElementSet<R::Elem> {
    a.iter().map(|e| ring.mul(r, e)).collect()
}

/// `A / y`, defined only when every element of `A` is a multiple of `y`.
pub fn divide_set<R: Domain>(
    ring: &R,
    a: &ElementSet<R::Elem>,
    y: &R::Elem,
) -> Result<ElementSet<R::Elem>, LargenessError> {
    a.iter().map(|e| divide(ring, e, y)).collect()
}

fn divide<R: Domain>(ring: &R, e: &R::Elem, y: &R::Elem) -> Result<R::Elem, LargenessError> {
    ring.exact_div(e, y).map_err(|err| match err {
        DivisionError::DivideByZero => LargenessError::ZeroScalar,
        DivisionError::NotDivisible => LargenessError::NotDivisible(ring.format(e)),
    })
}

/// `(rG, rB, rx)`. Since `r(t + b + x) = rt + rb + rx` and `R` has no zero
/// divisors, the result is a witness for `rA` exactly when `w` is one for `A`.
pub fn dilation_transport<R: Domain>(
    ring: &R,
    w: &PsWitness<R::Elem>,
    r: &R::Elem,
) -> Result<PsWitness<R::Elem>, LargenessError> {
    ring.check(r)?;
    if ring.is_zero(r) {
        return Err(LargenessError::ZeroScalar);
    }
    let scale = |v: &[R::Elem]| v.iter().map(|e| ring.mul(r, e)).collect();
    Ok(PsWitness { gaps: scale(&w.gaps), block: scale(&w.block), anchor: ring.mul(r, &w.anchor) })
}

/// `(G/y, B/y, x/y)`, the inverse of [`dilation_transport`] by `y`.
pub fn division_transport<R: Domain>(
    ring: &R,
    w: &PsWitness<R::Elem>,
    y: &R::Elem,
) -> Result<PsWitness<R::Elem>, LargenessError> {
    ring.check(y)?;
    let shrink = |v: &[R::Elem]| v.iter().map(|e| divide(ring, e, y)).collect::<Result<Vec<_>, _>>();
    Ok(PsWitness { gaps: shrink(&w.gaps)?, block: shrink(&w.block)?, anchor: divide(ring, &w.anchor, y)? })
}

/// `m R ∩ window`.
pub fn ideal_in_window<R: Domain>(window: &Window<R>, m: &R::Elem) -> ElementSet<R::Elem> {
    let ring = window.ring();
    window
        .elements()
        .iter()
        .filter(|e| if ring.is_zero(m) { ring.is_zero(e) } else { ring.exact_div(e, m).is_ok() })
        .cloned()
        .collect()
}

/// Parses an element-set literal relative to a window: `{e1,e2,...}`,
/// `all`, `evens` (= `ideal(2)`), `odds` (window minus evens) or `ideal(m)`.
pub fn parse_element_set<R: Domain>(window: &Window<R>, s: &str) -> Result<ElementSet<R::Elem>, LargenessError> {
    let ring = window.ring();
    let s = s.trim();
    let two = ring.from_i64(2);
    match s {
        "all" => return Ok(window.elements().iter().cloned().collect()),
        "evens" => return Ok(ideal_in_window(window, &two)),
        "odds" => {
            let evens = ideal_in_window(window, &two);
            return Ok(window.elements().iter().filter(|e| !evens.contains(e)).cloned().collect());
        }
        _ => {}
    }
    if let Some(inner) = s.strip_prefix("ideal(").and_then(|r| r.strip_suffix(')')) {
        let m = ring.parse(inner)?;
        return Ok(ideal_in_window(window, &m));
    }
    parse_element_list(ring, s)
}

/// Parses `{e1,e2,...}` (braces optional) into a set.
pub fn parse_element_list<R: Domain>(ring: &R, s: &str) -> Result<ElementSet<R::Elem>, LargenessError> {
    Ok(parse_element_seq(ring, s)?.into_iter().collect())
}

/// Parses `{e1,e2,...}`, `[e1,...]` or a bare comma list, keeping order.
pub fn parse_element_seq<R: Domain>(ring: &R, s: &str) -> Result<Vec<R::Elem>, LargenessError> {
    let s = s.trim();
    let inner = s
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .or_else(|| s.strip_prefix('[').and_then(|r| r.strip_suffix(']')))
        .unwrap_or(s)
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|tok| ring.parse(tok.trim()).map_err(|_| LargenessError::Parse(s.to_string()))).collect()
}
