//! The configuration `{xy} ∪ {x + f(y) : f ∈ F}` for a finite family `F` of
//! polynomials with zero constant term: evaluation, monochromaticity,
//! witness scans and per-`y` abundance profiles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::coloring::Coloring;
use crate::ring::{Domain, RingError};

#[derive(Debug, Error)]
pub enum PatternError {
    #[error("polynomial has a nonzero constant term")]
    NonZeroConstant,
    #[error("polynomial family is empty")]
    EmptyFamily,
    #[error("cannot parse polynomial `{0}`")]
    Parse(String),
    #[error("y = {0} is excluded by the scan constraints")]
    ExcludedY(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A polynomial in `tR[t]`: nonzero coefficients keyed by degree `>= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZeroConstPoly<E> {
    coeffs: BTreeMap<u32, E>,
}

impl<E: Clone + Eq> ZeroConstPoly<E> {
    pub fn zero() -> Self {
        ZeroConstPoly { coeffs: BTreeMap::new() }
    }

    /// Sums the given `(degree, coefficient)` terms. A nonzero total in
    /// degree 0 is rejected.
    pub fn from_terms<R: Domain<Elem = E>>(
        ring: &R,
        terms: impl IntoIterator<Item = (u32, E)>,
    ) -> Result<Self, PatternError> {
        let mut coeffs: BTreeMap<u32, E> = BTreeMap::new();
        for (deg, c) in terms {
            ring.check(&c)?;
            let slot = coeffs.entry(deg).or_insert_with(|| ring.zero());
            *slot = ring.add(slot, &c);
        }
        coeffs.retain(|_, c| !ring.is_zero(c));
        if coeffs.contains_key(&0) {
            return Err(PatternError::NonZeroConstant);
        }
        Ok(ZeroConstPoly { coeffs })
    }

    /// `c * t^degree`.
    pub fn monomial<R: Domain<Elem = E>>(ring: &R, c: E, degree: u32) -> Result<Self, PatternError> {
        Self::from_terms(ring, [(degree, c)])
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &E)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    /// Coefficient of `t^j`; zero when absent.
    pub fn coefficient<R: Domain<Elem = E>>(&self, ring: &R, j: u32) -> E {
        self.coeffs.get(&j).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn eval<R: Domain<Elem = E>>(&self, ring: &R, y: &E) -> E {
        self.coeffs.iter().fold(ring.zero(), |acc, (&d, c)| ring.add(&acc, &ring.mul(c, &ring.pow(y, d))))
    }

    /// Checked evaluation: `y` must be a canonical element of `ring`.
    pub fn try_eval<R: Domain<Elem = E>>(&self, ring: &R, y: &E) -> Result<E, PatternError> {
        ring.check(y)?;
        Ok(self.eval(ring, y))
    }

    pub fn format<R: Domain<Elem = E>>(&self, ring: &R) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(&d, c)| {
                let var = if d == 1 { "t".to_string() } else { format!("t^{d}") };
                if ring.is_one(c) {
                    var
                } else {
                    format!("({}){var}", ring.format(c))
                }
            })
            .collect();
        terms.join("+")
    }

    /// Parses a sum of monomials `c t^k` in the variable `t`. Coefficients
    /// are ring literals; compound ones go in parentheses, e.g. `(1+i)t^2`.
    pub fn parse<R: Domain<Elem = E>>(ring: &R, s: &str) -> Result<Self, PatternError> {
        let err = || PatternError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut terms = Vec::new();
        for mono in split_top_level(&compact) {
            let (negative, body) = match mono.as_bytes().first() {
                Some(b'-') => (true, &mono[1..]),
                Some(b'+') => (false, &mono[1..]),
                _ => (false, mono),
            };
            if body.is_empty() {
                return Err(err());
            }
            let (coeff, degree) = match find_top_level(body, b't') {
                None => (body, 0),
                Some(pos) => {
                    let coeff = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
                    let rest = &body[pos + 1..];
                    let degree = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|e| e.parse::<u32>().ok())
                            .filter(|&e| e >= 1)
                            .ok_or_else(err)?
                    };
                    (coeff, degree)
                }
            };
            let c = if coeff.is_empty() { ring.one() } else { ring.parse(coeff).map_err(|_| err())? };
            let c = if negative { ring.neg(&c) } else { c };
            terms.push((degree, c));
        }
        Self::from_terms(ring, terms)
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && k > start => {
                out.push(&s[start..k]);
                start = k;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn find_top_level(s: &str, needle: u8) -> Option<usize> {
    let mut depth = 0i32;
    for (k, &c) in s.as_bytes().iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            c if c == needle && depth == 0 => return Some(k),
            _ => {}
        }
    }
    None
}

/// The finite family `F`, deduplicated and sorted by degree, then by the
/// coefficient vector `(a_1, ..., a_deg)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFamily<E> {
    polys: Vec<ZeroConstPoly<E>>,
}

impl<E: Clone + Eq + Ord> PolyFamily<E> {
    pub fn new<R: Domain<Elem = E>>(
        ring: &R,
        polys: impl IntoIterator<Item = ZeroConstPoly<E>>,
    ) -> Result<Self, PatternError> {
        let mut keyed: Vec<((u32, Vec<E>), ZeroConstPoly<E>)> = polys
            .into_iter()
            .map(|p| {
                let deg = p.degree();
                let coeffs = (1..=deg).map(|j| p.coefficient(ring, j)).collect();
                ((deg, coeffs), p)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        if keyed.is_empty() {
            return Err(PatternError::EmptyFamily);
        }
        Ok(PolyFamily { polys: keyed.into_iter().map(|(_, p)| p).collect() })
    }

    /// Parses `;`-separated polynomials, e.g. `"t; 0; 2t^2+t"`.
    pub fn parse<R: Domain<Elem = E>>(ring: &R, s: &str) -> Result<Self, PatternError> {
        let polys = s.split(';').map(|p| ZeroConstPoly::parse(ring, p)).collect::<Result<Vec<_>, _>>()?;
        Self::new(ring, polys)
    }

    pub fn polys(&self) -> &[ZeroConstPoly<E>] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Largest degree in the family, at least 1.
    pub fn max_degree(&self) -> u32 {
        self.polys.iter().map(ZeroConstPoly::degree).max().unwrap_or(0).max(1)
    }

    pub fn format<R: Domain<Elem = E>>(&self, ring: &R) -> String {
        let parts: Vec<String> = self.polys.iter().map(|p| p.format(ring)).collect();
        parts.join("; ")
    }
}

/// One instance of the configuration. `elements[0] = x*y`, followed by the
/// values `x + f(y)` in family order, first occurrences only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternInstance<E> {
    pub x: E,
    pub y: E,
    pub elements: Vec<E>,
}

impl<E> PatternInstance<E> {
    pub fn is_degenerate(&self) -> bool {
        self.elements.len() == 1
    }
}

pub fn pattern_elements<R: Domain>(
    ring: &R,
    x: &R::Elem,
    y: &R::Elem,
    family: &PolyFamily<R::Elem>,
) -> Result<PatternInstance<R::Elem>, PatternError> {
    ring.check(x)?;
    ring.check(y)?;
    let values: Vec<R::Elem> = family.polys().iter().map(|f| f.eval(ring, y)).collect();
    Ok(instance_from_values(ring, x, y, &values))
}

/// Builds the instance from precomputed `f(y)` values.
fn instance_from_values<R: Domain>(
    ring: &R,
    x: &R::Elem,
    y: &R::Elem,
    f_values: &[R::Elem],
) -> PatternInstance<R::Elem> {
    let mut elements = Vec::with_capacity(f_values.len() + 1);
    elements.push(ring.mul(x, y));
    for fy in f_values {
        let e = ring.add(x, fy);
        if !elements.contains(&e) {
            elements.push(e);
        }
    }
    PatternInstance { x: x.clone(), y: y.clone(), elements }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternColor {
    Monochromatic(u32),
    NotMonochromatic,
    OutOfWindow,
}

impl PatternColor {
    pub fn color(self) -> Option<u32> {
        match self {
            PatternColor::Monochromatic(c) => Some(c),
            _ => None,
        }
    }
}

/// Filters applied to `(x, y)` pairs during scans.
///
/// With `require_in_window` off, elements outside the window are ignored and
/// the instance is judged on its in-window part, which must be nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConstraints<E> {
    pub exclude_y: BTreeSet<E>,
    pub exclude_x: BTreeSet<E>,
    pub require_in_window: bool,
    pub forbid_degenerate: bool,
}

impl<E: Clone + Ord> ScanConstraints<E> {
    /// `y ∉ {0, 1}`, `x ≠ 0`, every element in the window, no singletons.
    pub fn defaults<R: Domain<Elem = E>>(ring: &R) -> Self {
        ScanConstraints {
            exclude_y: [ring.zero(), ring.one()].into_iter().collect(),
            exclude_x: [ring.zero()].into_iter().collect(),
            require_in_window: true,
            forbid_degenerate: true,
        }
    }

    pub fn allows_y(&self, y: &E) -> bool {
        !self.exclude_y.contains(y)
    }

    pub fn allows_x(&self, x: &E) -> bool {
        !self.exclude_x.contains(x)
    }
}

/// Color of the instance under `c`: monochromatic only if every element is
/// in the window and carries the same color.
pub fn pattern_color<R: Domain>(
    c: &Coloring<R>,
    x: &R::Elem,
    y: &R::Elem,
    family: &PolyFamily<R::Elem>,
) -> Result<PatternColor, PatternError> {
    let inst = pattern_elements(c.window().ring(), x, y, family)?;
    Ok(classify(c, &inst.elements, true))
}

fn classify<R: Domain>(c: &Coloring<R>, elements: &[R::Elem], require_in_window: bool) -> PatternColor {
    let mut color = None;
    let mut mixed = false;
    for e in elements {
        match c.color_of(e) {
            None if require_in_window => return PatternColor::OutOfWindow,
            None => {}
            Some(k) => match color {
                None => color = Some(k),
                Some(prev) if prev != k => mixed = true,
                Some(_) => {}
            },
        }
    }
    match (color, mixed) {
        (None, _) => PatternColor::OutOfWindow,
        (Some(_), true) => PatternColor::NotMonochromatic,
        (Some(k), false) => PatternColor::Monochromatic(k),
    }
}

/// A monochromatic `(x, y)` pair found by a scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<E> {
    pub x: E,
    pub y: E,
    pub color: u32,
    pub elements: Vec<E>,
}

/// Lazily yields every monochromatic pair passing `constraints`, in
/// `(index(y), index(x))` order.
pub fn witnesses<'a, R: Domain>(
    c: &'a Coloring<R>,
    family: &'a PolyFamily<R::Elem>,
    constraints: &'a ScanConstraints<R::Elem>,
) -> impl Iterator<Item = Witness<R::Elem>> + 'a {
    let window = c.window();
    let ring = window.ring();
    window.elements().iter().filter(move |y| constraints.allows_y(y)).flat_map(move |y| {
        let f_values: Vec<R::Elem> = family.polys().iter().map(|f| f.eval(ring, y)).collect();
        window
            .elements()
            .iter()
            .filter(move |x| constraints.allows_x(x))
            .filter_map(move |x| witness_at(c, constraints, x, y, &f_values))
    })
}

fn witness_at<R: Domain>(
    c: &Coloring<R>,
    constraints: &ScanConstraints<R::Elem>,
    x: &R::Elem,
    y: &R::Elem,
    f_values: &[R::Elem],
) -> Option<Witness<R::Elem>> {
    let inst = instance_from_values(c.window().ring(), x, y, f_values);
    if constraints.forbid_degenerate && inst.is_degenerate() {
        return None;
    }
    let color = classify(c, &inst.elements, constraints.require_in_window).color()?;
    Some(Witness { x: inst.x, y: inst.y, color, elements: inst.elements })
}

/// All witnesses in scan order, truncated to `limit`.
pub fn witness_scan<R: Domain>(
    c: &Coloring<R>,
    family: &PolyFamily<R::Elem>,
    constraints: &ScanConstraints<R::Elem>,
    limit: Option<usize>,
) -> Vec<Witness<R::Elem>> {
    let it = witnesses(c, family, constraints);
    match limit {
        Some(n) => it.take(n).collect(),
        None => it.collect(),
    }
}

/// Same result as [`witness_scan`], with the `y` range split across `jobs`
/// rayon workers and merged back in canonical order.
pub fn witness_scan_par<R: Domain>(
    c: &Coloring<R>,
    family: &PolyFamily<R::Elem>,
    constraints: &ScanConstraints<R::Elem>,
    limit: Option<usize>,
    jobs: usize,
) -> Vec<Witness<R::Elem>> {
    if jobs <= 1 {
        return witness_scan(c, family, constraints, limit);
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build();
    let Ok(pool) = pool else {
        return witness_scan(c, family, constraints, limit);
    };
    let window = c.window();
    let ring = window.ring();
    let per_y: Vec<Vec<Witness<R::Elem>>> = pool.install(|| {
        window
            .elements()
            .par_iter()
            .filter(|y| constraints.allows_y(y))
            .map(|y| {
                let f_values: Vec<R::Elem> = family.polys().iter().map(|f| f.eval(ring, y)).collect();
                window
                    .elements()
                    .iter()
                    .filter(|x| constraints.allows_x(x))
                    .filter_map(|x| witness_at(c, constraints, x, y, &f_values))
                    .collect()
            })
            .collect()
    });
    let merged = per_y.into_iter().flatten();
    match limit {
        Some(n) => merged.take(n).collect(),
        None => merged.collect(),
    }
}

/// The sets `X_y^i = {x : the instance at (x, y) is monochromatic of color i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbundanceProfile<E> {
    pub y: E,
    /// `classes[i - 1]` is `X_y^i`, in window order.
    pub classes: Vec<Vec<E>>,
}

impl<E> AbundanceProfile<E> {
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

impl<E: fmt::Debug> fmt::Display for AbundanceProfile<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y={:?} sizes={:?}", self.y, self.sizes())
    }
}

/// Per-color abundance at a fixed `y`.
///
/// `y` must pass the constraints. Candidates `x` are filtered by
/// `exclude_x` and judged with `require_in_window`; degenerate instances are
/// kept, so that `x ∈ X_y^i` exactly when the instance is monochromatic of
/// color `i`.
pub fn abundance_profile<R: Domain>(
    c: &Coloring<R>,
    family: &PolyFamily<R::Elem>,
    y: &R::Elem,
    constraints: &ScanConstraints<R::Elem>,
) -> Result<AbundanceProfile<R::Elem>, PatternError> {
    let ring = c.window().ring();
    ring.check(y)?;
    if !constraints.allows_y(y) {
        return Err(PatternError::ExcludedY(ring.format(y)));
    }
    let f_values: Vec<R::Elem> = family.polys().iter().map(|f| f.eval(ring, y)).collect();
    let mut classes = vec![Vec::new(); c.num_colors() as usize];
    for x in c.window().elements().iter().filter(|x| constraints.allows_x(x)) {
        let inst = instance_from_values(ring, x, y, &f_values);
        if let Some(i) = classify(c, &inst.elements, constraints.require_in_window).color() {
            classes[i as usize - 1].push(x.clone());
        }
    }
    Ok(AbundanceProfile { y: y.clone(), classes })
}
