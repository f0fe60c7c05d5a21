//! Words, variable words and combinatorial lines; exhaustive Hales–Jewett
//! numbers at tiny scale; polynomial Hales–Jewett points with wildcard
//! translation; and the σ-embedding that maps a PHJ line onto the
//! configuration `r0 + s + f(y_γ)` in a ring.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::patterns::PolyFamily;
use crate::ring::{Domain, RingError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HjError {
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,
    #[error("color count must be at least 1")]
    NoColors,
    #[error("word must be nonempty")]
    EmptyWord,
    #[error("letter {letter} is outside 1..={t}")]
    LetterOutOfRange { letter: u32, t: u32 },
    #[error("variable word has no occurrence of the variable")]
    NoVariable,
    #[error("estimated work {estimate} at N={n} exceeds the budget {budget}")]
    BudgetExceeded { n: u32, estimate: u128, budget: u128 },
    #[error("wildcard set must be a nonempty subset of 1..={0}")]
    BadWildcard(usize),
    #[error("expected {expected} letters, got {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("array {j} must have {expected} entries, found {found}")]
    BadShape { j: usize, expected: usize, found: usize },
    #[error("dimension too large")]
    TooLarge,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SigmaError {
    #[error("no y value for multi-index {0:?}")]
    MissingIndex(Vec<usize>),
    #[error("y is not multiplicative at multi-index {0:?}")]
    NotMultiplicative(Vec<usize>),
    #[error("point uses an alphabet of {found} letters, the family has {expected} coefficients")]
    AlphabetMismatch { expected: usize, found: usize },
    #[error("point has degree {found}, the family needs {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Hj(#[from] HjError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A word over the alphabet `{1..t}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    t: u32,
    letters: Vec<u32>,
}

impl Word {
    pub fn new(t: u32, letters: Vec<u32>) -> Result<Self, HjError> {
        check_letters(t, letters.iter().copied())?;
        if letters.is_empty() {
            return Err(HjError::EmptyWord);
        }
        Ok(Word { t, letters })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn alphabet(&self) -> u32 {
        self.t
    }

    /// Position of the word in `[t]^N` read as a base-`t` number, first
    /// letter most significant.
    pub fn cell(&self) -> usize {
        self.letters.iter().fold(0, |acc, &a| acc * self.t as usize + (a - 1) as usize)
    }
}

fn check_letters(t: u32, letters: impl IntoIterator<Item = u32>) -> Result<(), HjError> {
    if t == 0 {
        return Err(HjError::EmptyAlphabet);
    }
    for letter in letters {
        if letter == 0 || letter > t {
            return Err(HjError::LetterOutOfRange { letter, t });
        }
    }
    Ok(())
}

/// A word over `{1..t} ∪ {v}` with at least one `v` (stored as `None`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableWord {
    t: u32,
    letters: Vec<Option<u32>>,
}

impl VariableWord {
    pub fn new(t: u32, letters: Vec<Option<u32>>) -> Result<Self, HjError> {
        check_letters(t, letters.iter().flatten().copied())?;
        if !letters.iter().any(Option::is_none) {
            return Err(HjError::NoVariable);
        }
        Ok(VariableWord { t, letters })
    }

    /// Parses e.g. `1v2`; letters are single digits.
    pub fn parse(t: u32, s: &str) -> Result<Self, HjError> {
        let letters = s
            .chars()
            .map(|c| match c {
                'v' => Ok(None),
                d => d.to_digit(10).map(Some).ok_or(HjError::LetterOutOfRange { letter: 0, t }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        VariableWord::new(t, letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `w(a)`: every `v` replaced by `a`.
    pub fn substitute(&self, a: u32) -> Result<Word, HjError> {
        check_letters(self.t, [a])?;
        Ok(Word { t: self.t, letters: self.letters.iter().map(|l| l.unwrap_or(a)).collect() })
    }

    /// The combinatorial line `{w(a) : a ∈ [t]}`.
    pub fn line(&self) -> Vec<Word> {
        (1..=self.t).map(|a| self.substitute(a).expect("a in range")).collect()
    }
}

/// Every variable word of length `n` over `[t]`, in base-`(t+1)` counter
/// order with `v` as the last digit value.
pub fn variable_words(t: u32, n: usize) -> Vec<VariableWord> {
    let base = t as usize + 1;
    let total = base.pow(n as u32);
    (0..total)
        .filter_map(|mut code| {
            let mut letters = vec![None; n];
            for slot in letters.iter_mut().rev() {
                let digit = code % base;
                code /= base;
                *slot = if digit == t as usize { None } else { Some(digit as u32 + 1) };
            }
            VariableWord::new(t, letters).ok()
        })
        .collect()
}

/// Lines of `[t]^n` as lists of cell indices.
fn line_cells(t: u32, n: usize) -> Vec<Vec<usize>> {
    variable_words(t, n).iter().map(|w| w.line().iter().map(Word::cell).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HjOutcome {
    /// Least `N` at which every coloring contains a monochromatic line.
    Found(u32),
    /// Every `N <= max_n` admits a line-free coloring; `avoiding` is one at
    /// `max_n`, colors `1..=r` indexed by cell.
    NotFoundWithin { max_n: u32, avoiding: Vec<u32> },
}

/// Work estimate `t^N * r^(t^N)`, or `None` on overflow.
pub fn hj_work_estimate(r: u32, t: u32, n: u32) -> Option<u128> {
    let cells = (t as u128).checked_pow(n)?;
    let colorings = (r as u128).checked_pow(u32::try_from(cells).ok()?)?;
    cells.checked_mul(colorings)
}

/// Least `N <= max_n` such that every `r`-coloring of `[t]^N` has a
/// monochromatic combinatorial line, by exhaustive enumeration.
pub fn hj_number_exhaustive(r: u32, t: u32, max_n: u32, budget: u128, jobs: usize) -> Result<HjOutcome, HjError> {
    if r == 0 {
        return Err(HjError::NoColors);
    }
    if t == 0 {
        return Err(HjError::EmptyAlphabet);
    }
    let mut avoiding = Vec::new();
    for n in 1..=max_n {
        let estimate = hj_work_estimate(r, t, n).unwrap_or(u128::MAX);
        if estimate > budget {
            return Err(HjError::BudgetExceeded { n, estimate, budget });
        }
        match find_line_free_coloring(r, t, n as usize, jobs) {
            None => return Ok(HjOutcome::Found(n)),
            Some(c) => avoiding = c,
        }
    }
    Ok(HjOutcome::NotFoundWithin { max_n, avoiding })
}

/// First coloring (colors `1..=r`, lexicographic over cells) of `[t]^n` with
/// no monochromatic line, if any.
pub fn find_line_free_coloring(r: u32, t: u32, n: usize, jobs: usize) -> Option<Vec<u32>> {
    let cells = (t as usize).pow(n as u32);
    let lines = line_cells(t, n);
    // Each line is checked when its last cell gets a color.
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); cells];
    for (k, line) in lines.iter().enumerate() {
        closing[*line.iter().max().expect("t >= 1")].push(k);
    }
    let search = LineSearch { r, cells, lines, closing };

    let prefix_len = if jobs > 1 {
        let mut p = 0;
        while p < cells && (r as usize).pow(p as u32) < 4 * jobs {
            p += 1;
        }
        p
    } else {
        0
    };
    if prefix_len == 0 {
        let mut colors = vec![0u32; cells];
        return search.extend(&mut colors, 0).then(|| colors.iter().map(|c| c + 1).collect());
    }
    let prefixes: Vec<Vec<u32>> = (0..(r as usize).pow(prefix_len as u32))
        .map(|mut code| {
            let mut p = vec![0u32; prefix_len];
            for slot in p.iter_mut().rev() {
                *slot = (code % r as usize) as u32;
                code /= r as usize;
            }
            p
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().ok()?;
    pool.install(|| {
        prefixes.par_iter().find_map_first(|prefix| {
            let mut colors = vec![0u32; cells];
            colors[..prefix_len].copy_from_slice(prefix);
            let consistent = (0..prefix_len).all(|k| search.closes_ok(&colors, k));
            (consistent && search.extend(&mut colors, prefix_len)).then(|| colors.iter().map(|c| c + 1).collect())
        })
    })
}

struct LineSearch {
    r: u32,
    cells: usize,
    lines: Vec<Vec<usize>>,
    closing: Vec<Vec<usize>>,
}

impl LineSearch {
    fn closes_ok(&self, colors: &[u32], cell: usize) -> bool {
        self.closing[cell].iter().all(|&k| {
            let line = &self.lines[k];
            line.iter().any(|&c| colors[c] != colors[line[0]])
        })
    }

    fn extend(&self, colors: &mut [u32], cell: usize) -> bool {
        if cell == self.cells {
            return true;
        }
        for c in 0..self.r {
            colors[cell] = c;
            if self.closes_ok(colors, cell) && self.extend(colors, cell + 1) {
                return true;
            }
        }
        false
    }
}

/// Whether `colors` (indexed by cell, any labels) has no monochromatic line.
pub fn is_line_free(t: u32, n: usize, colors: &[u32]) -> bool {
    line_cells(t, n).iter().all(|line| line.iter().any(|&c| colors[c] != colors[line[0]]))
}

/// A nonempty `γ ⊆ {1..N}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WildcardSet {
    members: BTreeSet<usize>,
}

impl WildcardSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self, HjError> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if members.is_empty() || members.iter().any(|&i| i == 0 || i > n) {
            return Err(HjError::BadWildcard(n));
        }
        Ok(WildcardSet { members })
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    /// Whether every coordinate of the multi-index lies in `γ`.
    pub fn contains_all(&self, idx: &[usize]) -> bool {
        idx.iter().all(|&i| self.contains(i))
    }
}

/// All multi-indices in `{1..n}^j`, row-major (first coordinate slowest).
pub fn multi_indices(n: usize, j: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.pow(j as u32);
    (0..total).map(move |mut flat| {
        let mut idx = vec![0; j];
        for slot in idx.iter_mut().rev() {
            *slot = flat % n + 1;
            flat /= n;
        }
        idx
    })
}

fn flat_index(n: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + (i - 1))
}

/// A point of `[q]^N × [q]^{N^2} × … × [q]^{N^d}`. `arrays[j-1]` holds the
/// `N^j` letters of the `j`-th factor in row-major multi-index order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhjPoint {
    d: usize,
    n: usize,
    q: u32,
    arrays: Vec<Vec<u32>>,
}

impl PhjPoint {
    pub fn new(d: usize, n: usize, q: u32, arrays: Vec<Vec<u32>>) -> Result<Self, HjError> {
        if d == 0 || n == 0 {
            return Err(HjError::EmptyWord);
        }
        if arrays.len() != d {
            return Err(HjError::WrongArity { expected: d, found: arrays.len() });
        }
        for (j, a) in arrays.iter().enumerate() {
            let expected = n.checked_pow(j as u32 + 1).ok_or(HjError::TooLarge)?;
            if a.len() != expected {
                return Err(HjError::BadShape { j: j + 1, expected, found: a.len() });
            }
            check_letters(q, a.iter().copied())?;
        }
        Ok(PhjPoint { d, n, q, arrays })
    }

    /// The point with every coordinate equal to `letter`.
    pub fn constant(d: usize, n: usize, q: u32, letter: u32) -> Result<Self, HjError> {
        let arrays = (1..=d).map(|j| vec![letter; n.pow(j as u32)]).collect();
        PhjPoint::new(d, n, q, arrays)
    }

    /// Builds a point from a flat letter list: factor 1 first, then factor 2, …
    pub fn from_flat(d: usize, n: usize, q: u32, flat: &[u32]) -> Result<Self, HjError> {
        let mut arrays = Vec::with_capacity(d);
        let mut rest = flat;
        for j in 1..=d {
            let len = n.pow(j as u32);
            if rest.len() < len {
                return Err(HjError::BadShape { j, expected: len, found: rest.len() });
            }
            arrays.push(rest[..len].to_vec());
            rest = &rest[len..];
        }
        if !rest.is_empty() {
            return Err(HjError::WrongArity { expected: flat.len() - rest.len(), found: flat.len() });
        }
        PhjPoint::new(d, n, q, arrays)
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> u32 {
        self.q
    }

    pub fn arrays(&self) -> &[Vec<u32>] {
        &self.arrays
    }

    /// Letter at multi-index `idx` of factor `idx.len()`.
    pub fn get(&self, idx: &[usize]) -> u32 {
        self.arrays[idx.len() - 1][flat_index(self.n, idx)]
    }

    fn set(&mut self, idx: &[usize], letter: u32) {
        let k = flat_index(self.n, idx);
        self.arrays[idx.len() - 1][k] = letter;
    }
}

/// `a ⊕ x_1 γ ⊕ x_2 (γ×γ) ⊕ … ⊕ x_d γ^d`: coordinates in `γ^j` are set to
/// `x_j`, all others copied from `a`.
pub fn phj_translate(a: &PhjPoint, gamma: &WildcardSet, xs: &[u32]) -> Result<PhjPoint, HjError> {
    if xs.len() != a.d {
        return Err(HjError::WrongArity { expected: a.d, found: xs.len() });
    }
    check_letters(a.q, xs.iter().copied())?;
    if gamma.members().iter().any(|&i| i > a.n) {
        return Err(HjError::BadWildcard(a.n));
    }
    let mut b = a.clone();
    let members: Vec<usize> = gamma.members().iter().copied().collect();
    for (j, &x) in xs.iter().enumerate() {
        for pick in multi_indices(members.len(), j + 1) {
            let idx: Vec<usize> = pick.iter().map(|&p| members[p - 1]).collect();
            b.set(&idx, x);
        }
    }
    Ok(b)
}

/// The distinct coefficients `a_j^i` (`1 <= j <= d`, absent ones counted as
/// zero) of a family, sorted. Letter `k` of a PHJ point stands for
/// `letters[k - 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientAlphabet<E> {
    degree: usize,
    letters: Vec<E>,
}

impl<E: Clone + Ord> CoefficientAlphabet<E> {
    pub fn of_family<R: Domain<Elem = E>>(ring: &R, family: &PolyFamily<E>) -> Self {
        let degree = family.max_degree() as usize;
        let set: BTreeSet<E> =
            family.polys().iter().flat_map(|f| (1..=degree as u32).map(move |j| f.coefficient(ring, j))).collect();
        CoefficientAlphabet { degree, letters: set.into_iter().collect() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn value(&self, letter: u32) -> &E {
        &self.letters[letter as usize - 1]
    }

    pub fn letter_of(&self, value: &E) -> Option<u32> {
        self.letters.iter().position(|v| v == value).map(|k| k as u32 + 1)
    }
}

/// The values `y_ī` attached to multi-indices `ī ∈ {1..N}^j`, `j <= d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YAssignment<E> {
    n: usize,
    d: usize,
    values: HashMap<Vec<usize>, E>,
}

impl<E: Clone + Eq> YAssignment<E> {
    /// `y_(i1..ij) = y_i1 ⋯ y_ij` for base values `y_1..y_N`.
    pub fn multiplicative<R: Domain<Elem = E>>(ring: &R, base: &[E], d: usize) -> Self {
        let n = base.len();
        let values = (1..=d)
            .flat_map(|j| multi_indices(n, j))
            .map(|idx| {
                let v = idx.iter().fold(ring.one(), |acc, &i| ring.mul(&acc, &base[i - 1]));
                (idx, v)
            })
            .collect();
        YAssignment { n, d, values }
    }

    pub fn from_entries(n: usize, d: usize, entries: impl IntoIterator<Item = (Vec<usize>, E)>) -> Self {
        YAssignment { n, d, values: entries.into_iter().collect() }
    }

    pub fn get(&self, idx: &[usize]) -> Result<&E, SigmaError> {
        self.values.get(idx).ok_or_else(|| SigmaError::MissingIndex(idx.to_vec()))
    }

    /// Checks `y_(i1..ij) = y_i1 ⋯ y_ij` on every multi-index.
    pub fn check_multiplicative<R: Domain<Elem = E>>(&self, ring: &R) -> Result<(), SigmaError> {
        for j in 1..=self.d {
            for idx in multi_indices(self.n, j) {
                let mut expect = ring.one();
                for &i in &idx {
                    expect = ring.mul(&expect, self.get(&[i])?);
                }
                if *self.get(&idx)? != expect {
                    return Err(SigmaError::NotMultiplicative(idx));
                }
            }
        }
        Ok(())
    }
}

fn check_point<E: Clone + Ord>(alphabet: &CoefficientAlphabet<E>, u: &PhjPoint) -> Result<(), SigmaError> {
    if u.q as usize != alphabet.len() {
        return Err(SigmaError::AlphabetMismatch { expected: alphabet.len(), found: u.q as usize });
    }
    if u.d != alphabet.degree() {
        return Err(SigmaError::DegreeMismatch { expected: alphabet.degree(), found: u.d });
    }
    Ok(())
}

/// `σ(u) = r0 + Σ_j Σ_{ī ∈ [N]^j} u_{j,ī} · y_ī`, with letters of `u` read
/// through the family's coefficient alphabet.
pub fn sigma_embed<R: Domain>(
    ring: &R,
    family: &PolyFamily<R::Elem>,
    y: &YAssignment<R::Elem>,
    r0: &R::Elem,
    u: &PhjPoint,
) -> Result<R::Elem, SigmaError> {
    let alphabet = CoefficientAlphabet::of_family(ring, family);
    check_point(&alphabet, u)?;
    sigma_with(ring, &alphabet, y, r0, u, |_| true)
}

fn sigma_with<R: Domain>(
    ring: &R,
    alphabet: &CoefficientAlphabet<R::Elem>,
    y: &YAssignment<R::Elem>,
    base: &R::Elem,
    u: &PhjPoint,
    keep: impl Fn(&[usize]) -> bool,
) -> Result<R::Elem, SigmaError> {
    let mut acc = base.clone();
    for j in 1..=u.d {
        for idx in multi_indices(u.n, j).filter(|idx| keep(idx)) {
            let term = ring.mul(alphabet.value(u.get(&idx)), y.get(&idx)?);
            acc = ring.add(&acc, &term);
        }
    }
    Ok(acc)
}

/// Both sides of `σ(u ⊕ a_1 γ ⊕ … ⊕ a_d γ^d) = r0 + s + f(y_γ)` for one
/// member `f` of the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaLineCheck<E> {
    /// Position of `f` in the family.
    pub poly_index: usize,
    pub lhs: E,
    pub rhs: E,
    /// `s`, the part of `σ(u) - r0` supported off `γ^j`.
    pub s: E,
    /// `y_γ = Σ_{i ∈ γ} y_i`.
    pub y_gamma: E,
    pub holds: bool,
}

/// Evaluates the line identity for every member of the family. `y` must be
/// multiplicative; this is checked first.
pub fn verify_sigma_line_identity<R: Domain>(
    ring: &R,
    family: &PolyFamily<R::Elem>,
    y: &YAssignment<R::Elem>,
    gamma: &WildcardSet,
    u: &PhjPoint,
    r0: &R::Elem,
) -> Result<Vec<SigmaLineCheck<R::Elem>>, SigmaError> {
    y.check_multiplicative(ring)?;
    let alphabet = CoefficientAlphabet::of_family(ring, family);
    check_point(&alphabet, u)?;
    let zero = ring.zero();
    let s = sigma_with(ring, &alphabet, y, &zero, u, |idx| !gamma.contains_all(idx))?;
    let mut y_gamma = ring.zero();
    for &i in gamma.members() {
        y_gamma = ring.add(&y_gamma, y.get(&[i])?);
    }
    family
        .polys()
        .iter()
        .enumerate()
        .map(|(poly_index, f)| {
            let xs: Vec<u32> = (1..=u.d as u32)
                .map(|j| alphabet.letter_of(&f.coefficient(ring, j)).expect("coefficient is in the alphabet"))
                .collect();
            let moved = phj_translate(u, gamma, &xs)?;
            let lhs = sigma_with(ring, &alphabet, y, r0, &moved, |_| true)?;
            let rhs = ring.add(&ring.add(r0, &s), &f.eval(ring, &y_gamma));
            Ok(SigmaLineCheck { poly_index, holds: lhs == rhs, lhs, rhs, s: s.clone(), y_gamma: y_gamma.clone() })
        })
        .collect()
}
