//! Avoidance search: can a window be `r`-colored with no monochromatic
//! instance of the configuration? A propagating backtracker, DIMACS export
//! for external solvers, and the least window size `N` over `Z` at which
//! avoidance becomes impossible.

mod backtrack;
pub mod cnf;

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::coloring::Coloring;
use crate::patterns::{PolyFamily, ScanConstraints};
use crate::ring::{Domain, Integers, Window, WindowParams};

pub use backtrack::{avoidance_backtrack, avoidance_backtrack_par};

/// Colors handled by the backtracker's bitmask domains.
pub const MAX_COLORS: u32 = 64;

/// The finite constraint system for one window: every candidate is an
/// element set (window positions, ascending) that must not be monochromatic.
#[derive(Debug, Clone)]
pub struct AvoidanceInstance<R: Domain> {
    pub window: Arc<Window<R>>,
    pub r: u32,
    pub family: PolyFamily<R::Elem>,
    pub constraints: ScanConstraints<R::Elem>,
    pub candidates: Vec<Vec<usize>>,
}

impl<R: Domain> AvoidanceInstance<R> {
    /// Candidates as element lists, for display.
    pub fn candidate_elements(&self) -> Vec<Vec<R::Elem>> {
        self.candidates.iter().map(|cand| cand.iter().map(|&k| self.window.elements()[k].clone()).collect()).collect()
    }

    /// First candidate that is monochromatic under `c`, if any.
    pub fn first_monochromatic(&self, c: &Coloring<R>) -> Option<usize> {
        self.candidates.iter().position(|cand| {
            let first = c.color_at(cand[0]);
            cand.iter().all(|&k| c.color_at(k) == first)
        })
    }
}

/// Enumerates the candidates in scan order (`y` outer, `x` inner), keeping
/// the first occurrence of each element set.
pub fn build_instance<R: Domain>(
    window: Arc<Window<R>>,
    r: u32,
    family: PolyFamily<R::Elem>,
    constraints: ScanConstraints<R::Elem>,
) -> AvoidanceInstance<R> {
    let ring = window.ring().clone();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut candidates = Vec::new();
    for y in window.elements().iter().filter(|y| constraints.allows_y(y)) {
        let f_values: Vec<R::Elem> = family.polys().iter().map(|f| f.eval(&ring, y)).collect();
        for x in window.elements().iter().filter(|x| constraints.allows_x(x)) {
            let mut elements = vec![ring.mul(x, y)];
            for fy in &f_values {
                let e = ring.add(x, fy);
                if !elements.contains(&e) {
                    elements.push(e);
                }
            }
            if constraints.forbid_degenerate && elements.len() == 1 {
                continue;
            }
            let positions: Option<Vec<usize>> = if constraints.require_in_window {
                elements.iter().map(|e| window.index_of(e)).collect()
            } else {
                Some(elements.iter().filter_map(|e| window.index_of(e)).collect())
            };
            let Some(mut positions) = positions.filter(|p| !p.is_empty()) else {
                continue;
            };
            positions.sort_unstable();
            if seen.insert(positions.clone()) {
                candidates.push(positions);
            }
        }
    }
    AvoidanceInstance { window, r, family, constraints, candidates }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Branching decisions taken.
    pub nodes: u64,
    /// Colors removed from domains by propagation.
    pub propagations: u64,
    pub conflicts: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AvoidanceResult<R: Domain> {
    /// A coloring with no monochromatic candidate.
    AvoidanceFound(Coloring<R>, SearchStats),
    /// The whole space was refuted.
    Forced(SearchStats),
    /// The node budget ran out first.
    Timeout(SearchStats),
}

impl<R: Domain> AvoidanceResult<R> {
    pub fn status(&self) -> &'static str {
        match self {
            AvoidanceResult::AvoidanceFound(..) => "avoidance_found",
            AvoidanceResult::Forced(_) => "forced",
            AvoidanceResult::Timeout(_) => "timeout",
        }
    }

    pub fn stats(&self) -> SearchStats {
        match self {
            AvoidanceResult::AvoidanceFound(_, s) | AvoidanceResult::Forced(s) | AvoidanceResult::Timeout(s) => *s,
        }
    }
}

/// Status of one probed window size during a Moreira-number search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Probe {
    pub n: u64,
    pub status: &'static str,
    pub candidates: usize,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MoreiraOutcome {
    /// Least `N` with no avoiding coloring of `{1..N}`; `avoiding` is an
    /// avoiding coloring of `{1..N-1}` (absent when `N = 1`).
    Found { n: u64, avoiding: Option<Coloring<Integers>> },
    /// Every `N <= max_n` admits an avoiding coloring.
    NotFoundWithin { max_n: u64, avoiding: Coloring<Integers> },
    /// The search at this `N` timed out.
    Inconclusive { n: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MoreiraReport {
    pub outcome: MoreiraOutcome,
    pub probes: Vec<Probe>,
}

/// Least `N <= max_n` such that every `r`-coloring of `{1..N}` contains a
/// monochromatic instance (default scan constraints).
///
/// Avoidance at `N` restricts to avoidance at every smaller window, so the
/// status is monotone in `N`; sizes are probed by doubling and the first
/// forced size is located by bisection.
pub fn moreira_number(r: u32, family: &PolyFamily<num_bigint::BigInt>, max_n: u64, budget: u64) -> MoreiraReport {
    let mut probes = Vec::new();
    let mut best_avoiding: Option<Coloring<Integers>> = None;
    let probe = |n: u64, probes: &mut Vec<Probe>| -> AvoidanceResult<Integers> {
        let window = Arc::new(Window::new(Integers, WindowParams::n(n)).expect("N >= 1"));
        let inst = build_instance(window, r, family.clone(), ScanConstraints::defaults(&Integers));
        let res = avoidance_backtrack(&inst, budget);
        probes.push(Probe { n, status: res.status(), candidates: inst.candidates.len(), nodes: res.stats().nodes });
        res
    };

    if max_n == 0 {
        let w = Arc::new(Window::new(Integers, WindowParams::n(1)).expect("N = 1"));
        return MoreiraReport {
            outcome: MoreiraOutcome::NotFoundWithin {
                max_n,
                avoiding: Coloring::constant(w, r.max(1)).expect("r >= 1"),
            },
            probes,
        };
    }

    // Largest size known avoidable, smallest known forced.
    let mut lo = 0u64;
    let mut hi = None;
    let mut n = 1u64;
    loop {
        match probe(n, &mut probes) {
            AvoidanceResult::AvoidanceFound(c, _) => {
                lo = n;
                best_avoiding = Some(c);
            }
            AvoidanceResult::Forced(_) => {
                hi = Some(n);
                break;
            }
            AvoidanceResult::Timeout(_) => {
                return MoreiraReport { outcome: MoreiraOutcome::Inconclusive { n }, probes };
            }
        }
        if n == max_n {
            break;
        }
        n = (n * 2).min(max_n);
    }
    let Some(mut hi) = hi else {
        return MoreiraReport {
            outcome: MoreiraOutcome::NotFoundWithin { max_n, avoiding: best_avoiding.expect("probed at least once") },
            probes,
        };
    };
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match probe(mid, &mut probes) {
            AvoidanceResult::AvoidanceFound(c, _) => {
                lo = mid;
                best_avoiding = Some(c);
            }
            AvoidanceResult::Forced(_) => hi = mid,
            AvoidanceResult::Timeout(_) => {
                return MoreiraReport { outcome: MoreiraOutcome::Inconclusive { n: mid }, probes };
            }
        }
    }
    let avoiding = best_avoiding.filter(|c| c.window().len() as u64 == hi - 1);
    MoreiraReport { outcome: MoreiraOutcome::Found { n: hi, avoiding }, probes }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;

    fn inst(n: u64, r: u32, f: &str) -> AvoidanceInstance<Integers> {
        let w = Arc::new(Window::new(Integers, WindowParams::n(n)).unwrap());
        build_instance(w, r, PolyFamily::parse(&Integers, f).unwrap(), ScanConstraints::defaults(&Integers))
    }

    fn as_i64(v: Vec<Vec<BigInt>>) -> Vec<Vec<i64>> {
        v.into_iter().map(|c| c.iter().map(|e| i64::try_from(e).unwrap()).collect()).collect()
    }

    #[test]
    fn instance_examples() {
        assert_eq!(as_i64(inst(3, 2, "t").candidate_elements()), vec![vec![2, 3]]);
        assert_eq!(as_i64(inst(4, 2, "t").candidate_elements()), vec![vec![2, 3], vec![3, 4]]);
        assert!(inst(1, 2, "t").candidates.is_empty());
    }

    #[test]
    fn backtrack_examples() {
        let i4 = inst(4, 2, "t");
        match avoidance_backtrack(&i4, 1000) {
            AvoidanceResult::AvoidanceFound(c, _) => assert_eq!(i4.first_monochromatic(&c), None),
            other => panic!("{other:?}"),
        }
        assert!(matches!(avoidance_backtrack(&inst(4, 1, "t"), 1000), AvoidanceResult::Forced(_)));
        assert!(matches!(avoidance_backtrack(&i4, 0), AvoidanceResult::Timeout(_)));
        assert!(matches!(avoidance_backtrack(&inst(1, 2, "t"), 0), AvoidanceResult::AvoidanceFound(..)));
    }

    #[test]
    fn moreira_single_color() {
        let fam = PolyFamily::parse(&Integers, "t").unwrap();
        let rep = moreira_number(1, &fam, 20, 1 << 20);
        assert!(matches!(rep.outcome, MoreiraOutcome::Found { n: 3, .. }), "{:?}", rep.outcome);
        let rep = moreira_number(1, &fam, 2, 1 << 20);
        assert!(matches!(rep.outcome, MoreiraOutcome::NotFoundWithin { max_n: 2, .. }));
        let rep = moreira_number(2, &fam, 40, 0);
        assert!(matches!(rep.outcome, MoreiraOutcome::Inconclusive { .. }));
    }
}
