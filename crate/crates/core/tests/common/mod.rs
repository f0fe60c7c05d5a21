//! Independent reference implementations shared by the integration tests.
//! Nothing here calls the library's arithmetic, scanning or search code.
#![allow(dead_code)]

use std::collections::HashMap;
use std::hash::Hash;

use monochrome::ring::{Domain, FpPoly, Gaussian, PolyOverPrimeField, Window};
use monochrome::rng::SplitMix64;
use num_bigint::BigInt;

/// Plain machine-word arithmetic for one ring.
pub trait Naive {
    type E: Clone + Eq + Hash + std::fmt::Debug;
    fn from_i64(&self, v: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
}

pub struct NaiveZ;

impl Naive for NaiveZ {
    type E = i64;
    fn from_i64(&self, v: i64) -> i64 {
        v
    }
    fn add(&self, a: &i64, b: &i64) -> i64 {
        a.checked_add(*b).expect("overflow")
    }
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a.checked_mul(*b).expect("overflow")
    }
}

pub struct NaiveGauss;

impl Naive for NaiveGauss {
    type E = (i64, i64);
    fn from_i64(&self, v: i64) -> (i64, i64) {
        (v, 0)
    }
    fn add(&self, a: &(i64, i64), b: &(i64, i64)) -> (i64, i64) {
        (a.0 + b.0, a.1 + b.1)
    }
    fn mul(&self, a: &(i64, i64), b: &(i64, i64)) -> (i64, i64) {
        (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
    }
}

/// Coefficient vectors, low degree first, no trailing zeros.
pub struct NaiveGf(pub u64);

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl Naive for NaiveGf {
    type E = Vec<u64>;
    fn from_i64(&self, v: i64) -> Vec<u64> {
        trim(vec![v.rem_euclid(self.0 as i64) as u64])
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % self.0).collect())
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.0;
            }
        }
        trim(out)
    }
}

pub fn z_naive(e: &BigInt) -> i64 {
    i64::try_from(e).expect("small integer")
}

pub fn gauss_naive(e: &Gaussian) -> (i64, i64) {
    (i64::try_from(&e.re).expect("small"), i64::try_from(&e.im).expect("small"))
}

pub fn gf_naive(e: &FpPoly) -> Vec<u64> {
    e.coeffs().to_vec()
}

/// A family as integer-coefficient term lists `[(degree, coefficient)]`.
pub type NaiveFamily = Vec<Vec<(u32, i64)>>;

pub fn naive_eval<N: Naive>(ring: &N, f: &[(u32, i64)], y: &N::E) -> N::E {
    let mut acc = ring.from_i64(0);
    for &(deg, c) in f {
        let mut term = ring.from_i64(c);
        for _ in 0..deg {
            term = ring.mul(&term, y);
        }
        acc = ring.add(&acc, &term);
    }
    acc
}

/// Brute-force witness list `(x position, y position, color)` under the
/// default constraints: `y ∉ {0,1}`, `x ≠ 0`, all elements in the window,
/// no single-element instances.
pub fn naive_witnesses<N: Naive>(
    ring: &N,
    elems: &[N::E],
    colors: &[u32],
    family: &NaiveFamily,
) -> Vec<(usize, usize, u32)> {
    let pos: HashMap<&N::E, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let (zero, one) = (ring.from_i64(0), ring.from_i64(1));
    let mut out = Vec::new();
    for (yi, y) in elems.iter().enumerate() {
        if *y == zero || *y == one {
            continue;
        }
        let fy: Vec<N::E> = family.iter().map(|f| naive_eval(ring, f, y)).collect();
        for (xi, x) in elems.iter().enumerate() {
            if *x == zero {
                continue;
            }
            let mut set = vec![ring.mul(x, y)];
            for v in &fy {
                let e = ring.add(x, v);
                if !set.contains(&e) {
                    set.push(e);
                }
            }
            if set.len() < 2 {
                continue;
            }
            let Some(ps) = set.iter().map(|e| pos.get(e).copied()).collect::<Option<Vec<usize>>>() else {
                continue;
            };
            let c = colors[ps[0]];
            if ps.iter().all(|&p| colors[p] == c) {
                out.push((xi, yi, c));
            }
        }
    }
    out
}

/// Brute-force `X_y^i` as position lists; degenerate instances count.
pub fn naive_abundance<N: Naive>(
    ring: &N,
    elems: &[N::E],
    colors: &[u32],
    r: u32,
    family: &NaiveFamily,
    y: &N::E,
) -> Vec<Vec<usize>> {
    let pos: HashMap<&N::E, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let zero = ring.from_i64(0);
    let fy: Vec<N::E> = family.iter().map(|f| naive_eval(ring, f, y)).collect();
    let mut classes = vec![Vec::new(); r as usize];
    for (xi, x) in elems.iter().enumerate() {
        if *x == zero {
            continue;
        }
        let mut set = vec![ring.mul(x, y)];
        set.extend(fy.iter().map(|v| ring.add(x, v)));
        let Some(ps) = set.iter().map(|e| pos.get(e).copied()).collect::<Option<Vec<usize>>>() else {
            continue;
        };
        let c = colors[ps[0]];
        if ps.iter().all(|&p| colors[p] == c) {
            classes[c as usize - 1].push(xi);
        }
    }
    classes
}

/// Satisfiability by DPLL with unit propagation. Clauses use DIMACS literals.
pub fn dpll_sat(num_vars: usize, clauses: &[Vec<i64>]) -> Option<Vec<bool>> {
    fn value(assign: &[Option<bool>], lit: i64) -> Option<bool> {
        assign[lit.unsigned_abs() as usize].map(|v| v == (lit > 0))
    }
    fn go(assign: &mut Vec<Option<bool>>, clauses: &[Vec<i64>]) -> bool {
        let mut set_here = Vec::new();
        loop {
            let mut unit = None;
            let mut all_sat = true;
            for cl in clauses {
                let mut free = None;
                let mut n_free = 0;
                let mut sat = false;
                for &l in cl {
                    match value(assign, l) {
                        Some(true) => {
                            sat = true;
                            break;
                        }
                        Some(false) => {}
                        None => {
                            n_free += 1;
                            free = Some(l);
                        }
                    }
                }
                if sat {
                    continue;
                }
                all_sat = false;
                if n_free == 0 {
                    for v in set_here {
                        assign[v] = None;
                    }
                    return false;
                }
                if n_free == 1 {
                    unit = free;
                    break;
                }
            }
            if all_sat {
                return true;
            }
            match unit {
                Some(l) => {
                    let v = l.unsigned_abs() as usize;
                    assign[v] = Some(l > 0);
                    set_here.push(v);
                }
                None => break,
            }
        }
        let v = (1..assign.len()).find(|&v| assign[v].is_none()).expect("an open clause has a free variable");
        for b in [true, false] {
            assign[v] = Some(b);
            if go(assign, clauses) {
                return true;
            }
        }
        assign[v] = None;
        for v in set_here {
            assign[v] = None;
        }
        false
    }
    let mut assign = vec![None; num_vars + 1];
    if go(&mut assign, clauses) {
        Some(assign[1..].iter().map(|v| v.unwrap_or(false)).collect())
    } else {
        None
    }
}

/// Cells of every combinatorial line of `[t]^n` (base-`t` cell indices,
/// first coordinate most significant), by enumerating words over
/// `{0..t-1} ∪ {wildcard}` with at least one wildcard.
pub fn naive_lines(t: u32, n: usize) -> Vec<Vec<usize>> {
    let mut lines = Vec::new();
    let total = (t as usize + 1).pow(n as u32);
    for code in 0..total {
        let mut digits = vec![0usize; n];
        let mut c = code;
        for d in digits.iter_mut().rev() {
            *d = c % (t as usize + 1);
            c /= t as usize + 1;
        }
        if !digits.contains(&(t as usize)) {
            continue;
        }
        let line = (0..t as usize)
            .map(|a| digits.iter().fold(0, |acc, &d| acc * t as usize + if d == t as usize { a } else { d }))
            .collect();
        lines.push(line);
    }
    lines
}

/// Least `n <= max_n` such that every `r`-coloring of `[t]^n` has a
/// monochromatic line, by enumerating all colorings.
pub fn naive_hj(r: u32, t: u32, max_n: usize) -> Option<usize> {
    (1..=max_n).find(|&n| {
        let cells = (t as usize).pow(n as u32);
        let lines = naive_lines(t, n);
        let total = (r as u64).pow(cells as u32);
        (0..total).all(|code| {
            let mut c = code;
            let colors: Vec<u64> = (0..cells)
                .map(|_| {
                    let v = c % r as u64;
                    c /= r as u64;
                    v
                })
                .collect();
            lines.iter().any(|l| l.iter().all(|&p| colors[p] == colors[l[0]]))
        })
    })
}

pub fn pick<R: Domain>(w: &Window<R>, rng: &mut SplitMix64) -> R::Elem {
    w.elements()[rng.below(w.len() as u64) as usize].clone()
}

pub fn gf(q: u64) -> PolyOverPrimeField {
    PolyOverPrimeField::new(q).expect("prime")
}

/// The families used for oracle comparisons, as library text and as terms.
pub fn oracle_families() -> Vec<(&'static str, NaiveFamily)> {
    vec![("t", vec![vec![(1, 1)]]), ("0; t", vec![vec![], vec![(1, 1)]]), ("2t^2+t", vec![vec![(2, 2), (1, 1)]])]
}

/// Compares `witness_scan` and `abundance_profile` (default constraints,
/// every admissible `y`) against the brute-force loops on one coloring.
pub fn check_against_oracle<R: Domain, N: Naive>(
    coloring: &monochrome::coloring::Coloring<R>,
    naive: &N,
    conv: impl Fn(&R::Elem) -> N::E,
    family_text: &str,
    family: &NaiveFamily,
) -> Result<usize, String> {
    use monochrome::patterns::{abundance_profile, witness_scan, PolyFamily, ScanConstraints};
    let w = coloring.window();
    let ring = w.ring();
    let fam = PolyFamily::parse(ring, family_text).map_err(|e| e.to_string())?;
    let cons = ScanConstraints::defaults(ring);
    let elems: Vec<N::E> = w.elements().iter().map(&conv).collect();
    let pos: HashMap<&N::E, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let at = |e: &R::Elem| pos[&conv(e)];

    let expected = naive_witnesses(naive, &elems, coloring.colors(), family);
    let got: Vec<(usize, usize, u32)> =
        witness_scan(coloring, &fam, &cons, None).iter().map(|wt| (at(&wt.x), at(&wt.y), wt.color)).collect();
    if got != expected {
        return Err(format!(
            "{} {family_text}: scan found {} witnesses, oracle {}",
            w.params(),
            got.len(),
            expected.len()
        ));
    }
    let (zero, one) = (naive.from_i64(0), naive.from_i64(1));
    for (yi, y) in w.elements().iter().enumerate() {
        if elems[yi] == zero || elems[yi] == one {
            continue;
        }
        let prof = abundance_profile(coloring, &fam, y, &cons).map_err(|e| e.to_string())?;
        let got: Vec<Vec<usize>> = prof.classes.iter().map(|cl| cl.iter().map(&at).collect()).collect();
        let expected = naive_abundance(naive, &elems, coloring.colors(), coloring.num_colors(), family, &elems[yi]);
        if got != expected {
            return Err(format!("{} {family_text}: abundance differs at y = {}", w.params(), ring.format(y)));
        }
    }
    Ok(expected.len())
}

/// One randomized σ line-identity check: random family of degree at most 3,
/// multiplicative `y` over `N <= 3` base values, random point, wildcard set
/// and base element. Returns whether every member's identity held.
pub fn sigma_trial<R: Domain>(w: &Window<R>, rng: &mut SplitMix64) -> Result<bool, String> {
    use monochrome::halesjewett::{
        verify_sigma_line_identity, CoefficientAlphabet, PhjPoint, WildcardSet, YAssignment,
    };
    use monochrome::patterns::{PolyFamily, ZeroConstPoly};
    let ring = w.ring();
    let members = 1 + rng.below(3) as usize;
    let polys: Vec<ZeroConstPoly<R::Elem>> = (0..members)
        .map(|_| {
            let deg = 1 + rng.below(3) as u32;
            let terms: Vec<(u32, R::Elem)> = (1..=deg).map(|j| (j, pick(w, rng))).collect();
            ZeroConstPoly::from_terms(ring, terms).map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    let family = PolyFamily::new(ring, polys).map_err(|e| e.to_string())?;
    let alphabet = CoefficientAlphabet::of_family(ring, &family);
    let d = alphabet.degree();
    let q = alphabet.len() as u32;
    let n = 1 + rng.below(3) as usize;
    let base: Vec<R::Elem> = (0..n).map(|_| pick(w, rng)).collect();
    let y = YAssignment::multiplicative(ring, &base, d);
    let len: usize = (1..=d).map(|j| n.pow(j as u32)).sum();
    let flat: Vec<u32> = (0..len).map(|_| 1 + rng.below(u64::from(q)) as u32).collect();
    let u = PhjPoint::from_flat(d, n, q, &flat).map_err(|e| e.to_string())?;
    let mut gamma: Vec<usize> = (1..=n).filter(|_| rng.below(2) == 1).collect();
    if gamma.is_empty() {
        gamma.push(1 + rng.below(n as u64) as usize);
    }
    let gamma = WildcardSet::new(n, gamma).map_err(|e| e.to_string())?;
    let r0 = pick(w, rng);
    let checks = verify_sigma_line_identity(ring, &family, &y, &gamma, &u, &r0).map_err(|e| e.to_string())?;
    Ok(checks.len() == family.len() && checks.iter().all(|c| c.holds && c.lhs == c.rhs))
}

/// One randomized transport check: plant a witness `(G, B, x)` for a random
/// set `A`, find the least-anchor witness, dilate it by a random nonzero `r`,
/// then divide it back by `r`. Every witness is re-validated.
pub fn transport_trial<R: Domain>(w: &Window<R>, rng: &mut SplitMix64) -> Result<(), String> {
    use monochrome::largeness::{
        dilate_set, dilation_transport, divide_set, division_transport, ps_witness_search, ElementSet,
    };
    let ring = w.ring();
    let gaps: Vec<R::Elem> = (0..1 + rng.below(3)).map(|_| pick(w, rng)).collect();
    let block: Vec<R::Elem> = (0..1 + rng.below(3)).map(|_| pick(w, rng)).collect();
    let x = pick(w, rng);
    let mut a: ElementSet<R::Elem> = block
        .iter()
        .map(|b| {
            let t = &gaps[rng.below(gaps.len() as u64) as usize];
            ring.add(&ring.add(t, b), &x)
        })
        .collect();
    for _ in 0..rng.below(5) {
        a.insert(pick(w, rng));
    }
    let wit = ps_witness_search(&a, &gaps, &block, w).ok_or("planted anchor not found")?;
    if !wit.is_valid_for(ring, &a) {
        return Err("search returned an invalid witness".into());
    }
    let ix = w.index_of(&x).expect("x from window");
    if w.index_of(&wit.anchor).expect("anchor from window") > ix {
        return Err("anchor is not least".into());
    }
    let r = loop {
        let r = pick(w, rng);
        if !ring.is_zero(&r) {
            break r;
        }
    };
    let ra = dilate_set(ring, &a, &r);
    let dilated = dilation_transport(ring, &wit, &r).map_err(|e| e.to_string())?;
    if !dilated.is_valid_for(ring, &ra) {
        return Err(format!("dilation by {} broke the witness", ring.format(&r)));
    }
    let back = division_transport(ring, &dilated, &r).map_err(|e| e.to_string())?;
    if back != wit || !back.is_valid_for(ring, &a) {
        return Err("division did not invert dilation".into());
    }
    if divide_set(ring, &ra, &r).map_err(|e| e.to_string())? != a {
        return Err("rA / r != A".into());
    }
    Ok(())
}

/// Exclusion-set soundness, the `(|B|+1)^2` bound, and completeness against
/// a scan of the window, for a random `B` drawn from `w`.
pub fn exclusion_trial<R: Domain>(w: &Window<R>, rng: &mut SplitMix64) -> Result<(), String> {
    use std::collections::BTreeSet;
    let ring = w.ring();
    let b: BTreeSet<R::Elem> = (0..rng.below(7)).map(|_| pick(w, rng)).filter(|e| !ring.is_zero(e)).collect();
    let c = monochrome::ufp::exclusion_set(ring, &b);
    if c.len() > (b.len() + 1).pow(2) {
        return Err(format!("|C| = {} exceeds the bound for |B| = {}", c.len(), b.len()));
    }
    let base: Vec<R::Elem> = b.iter().cloned().chain([ring.one()]).collect();
    let hit = |x: &R::Elem| base.iter().any(|al| base.iter().any(|be| ring.mul(x, al) == *be));
    for x in &c {
        if ring.is_zero(x) || ring.is_one(x) || !hit(x) {
            return Err(format!("{} should not be excluded", ring.format(x)));
        }
    }
    for x in w.elements() {
        if !ring.is_zero(x) && !ring.is_one(x) && hit(x) && !c.contains(x) {
            return Err(format!("{} is missing from the exclusion set", ring.format(x)));
        }
    }
    Ok(())
}
