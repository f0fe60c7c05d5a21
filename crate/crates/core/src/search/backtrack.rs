use rayon::prelude::*;

use super::{AvoidanceInstance, AvoidanceResult, SearchStats, MAX_COLORS};
use crate::coloring::Coloring;
use crate::ring::Domain;

const UNCOLORED: u32 = u32::MAX;

enum Trail {
    Assign(usize),
    Domain(usize, u64),
}

struct Timeout;

struct Solver<'a> {
    r: usize,
    candidates: &'a [Vec<usize>],
    /// Candidates containing each element.
    member_of: Vec<Vec<usize>>,
    order: Vec<usize>,
    color: Vec<u32>,
    domain: Vec<u64>,
    /// `count[cand * r + c]`: elements of `cand` holding color `c`.
    count: Vec<u32>,
    uncolored: Vec<u32>,
    trail: Vec<Trail>,
    stats: SearchStats,
    budget: u64,
}

impl<'a> Solver<'a> {
    fn new(n: usize, r: u32, candidates: &'a [Vec<usize>], budget: u64) -> Self {
        let mut member_of = vec![Vec::new(); n];
        for (k, cand) in candidates.iter().enumerate() {
            for &e in cand {
                member_of[e].push(k);
            }
        }
        // Most-constrained first, ties by window position.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&e| (std::cmp::Reverse(member_of[e].len()), e));
        let full = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
        Solver {
            r: r as usize,
            candidates,
            member_of,
            order,
            color: vec![UNCOLORED; n],
            domain: vec![full; n],
            count: vec![0; candidates.len() * r as usize],
            uncolored: candidates.iter().map(|c| c.len() as u32).collect(),
            trail: Vec::new(),
            stats: SearchStats::default(),
            budget,
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("len > mark") {
                Trail::Assign(e) => {
                    let c = self.color[e] as usize;
                    for &k in &self.member_of[e] {
                        self.count[k * self.r + c] -= 1;
                        self.uncolored[k] += 1;
                    }
                    self.color[e] = UNCOLORED;
                }
                Trail::Domain(e, old) => self.domain[e] = old,
            }
        }
    }

    /// Assigns `e := c` and propagates. `false` on conflict; the caller undoes.
    fn assign(&mut self, e: usize, c: u32) -> bool {
        let mut queue = vec![(e, c)];
        while let Some((e, c)) = queue.pop() {
            if self.color[e] != UNCOLORED {
                if self.color[e] == c {
                    continue;
                }
                self.stats.conflicts += 1;
                return false;
            }
            if self.domain[e] & (1 << c) == 0 {
                self.stats.conflicts += 1;
                return false;
            }
            self.color[e] = c;
            let ci = c as usize;
            for &k in &self.member_of[e] {
                self.count[k * self.r + ci] += 1;
                self.uncolored[k] -= 1;
            }
            self.trail.push(Trail::Assign(e));
            for idx in 0..self.member_of[e].len() {
                let k = self.member_of[e][idx];
                let len = self.candidates[k].len() as u32;
                let same = self.count[k * self.r + ci];
                if same == len {
                    self.stats.conflicts += 1;
                    return false;
                }
                if self.uncolored[k] == 1 && same == len - 1 {
                    // The last free element must avoid color c.
                    let last = *self.candidates[k]
                        .iter()
                        .find(|&&u| self.color[u] == UNCOLORED)
                        .expect("one uncolored element");
                    let old = self.domain[last];
                    if old & (1 << c) != 0 {
                        let new = old & !(1 << c);
                        self.trail.push(Trail::Domain(last, old));
                        self.domain[last] = new;
                        self.stats.propagations += 1;
                        if new == 0 {
                            self.stats.conflicts += 1;
                            return false;
                        }
                        if new.count_ones() == 1 {
                            queue.push((last, new.trailing_zeros()));
                        }
                    }
                }
            }
        }
        true
    }

    fn solve(&mut self, from: usize) -> Result<bool, Timeout> {
        let Some(step) = (from..self.order.len()).find(|&s| self.color[self.order[s]] == UNCOLORED) else {
            return Ok(true);
        };
        let e = self.order[step];
        if self.stats.nodes >= self.budget {
            return Err(Timeout);
        }
        self.stats.nodes += 1;
        let mut dom = self.domain[e];
        while dom != 0 {
            let c = dom.trailing_zeros();
            dom &= dom - 1;
            let mark = self.trail.len();
            if self.assign(e, c) && self.solve(step + 1)? {
                return Ok(true);
            }
            self.undo_to(mark);
        }
        Ok(false)
    }
}

fn finish<R: Domain>(inst: &AvoidanceInstance<R>, solver: &Solver<'_>) -> AvoidanceResult<R> {
    let colors = solver.color.iter().map(|&c| c + 1).collect();
    let coloring = Coloring::new(inst.window.clone(), inst.r, colors).expect("solver colors are in range");
    debug_assert_eq!(inst.first_monochromatic(&coloring), None);
    AvoidanceResult::AvoidanceFound(coloring, solver.stats)
}

/// Searches for an avoiding coloring, spending at most `budget` branching
/// decisions. Instances without candidates are answered without search.
pub fn avoidance_backtrack<R: Domain>(inst: &AvoidanceInstance<R>, budget: u64) -> AvoidanceResult<R> {
    assert!(inst.r >= 1 && inst.r <= MAX_COLORS, "color count must be in 1..={MAX_COLORS}");
    if inst.candidates.is_empty() {
        let coloring = Coloring::constant(inst.window.clone(), inst.r).expect("r >= 1");
        return AvoidanceResult::AvoidanceFound(coloring, SearchStats::default());
    }
    let mut solver = Solver::new(inst.window.len(), inst.r, &inst.candidates, budget);
    match solver.solve(0) {
        Ok(true) => finish(inst, &solver),
        Ok(false) => AvoidanceResult::Forced(solver.stats),
        Err(Timeout) => AvoidanceResult::Timeout(solver.stats),
    }
}

/// Splits on the colors of the first branching element, one worker per
/// color, each with the full budget. Forced only if every branch is refuted;
/// the reported coloring comes from the lowest successful color.
pub fn avoidance_backtrack_par<R: Domain>(inst: &AvoidanceInstance<R>, budget: u64, jobs: usize) -> AvoidanceResult<R> {
    if jobs <= 1 || inst.candidates.is_empty() {
        return avoidance_backtrack(inst, budget);
    }
    assert!(inst.r >= 1 && inst.r <= MAX_COLORS, "color count must be in 1..={MAX_COLORS}");
    let probe = Solver::new(inst.window.len(), inst.r, &inst.candidates, budget);
    let first = probe.order[0];
    let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() else {
        return avoidance_backtrack(inst, budget);
    };
    let branches: Vec<AvoidanceResult<R>> = pool.install(|| {
        (0..inst.r)
            .into_par_iter()
            .map(|c| {
                let mut solver = Solver::new(inst.window.len(), inst.r, &inst.candidates, budget);
                solver.stats.nodes = 1;
                let outcome = if solver.assign(first, c) { solver.solve(1) } else { Ok(false) };
                match outcome {
                    Ok(true) => finish(inst, &solver),
                    Ok(false) => AvoidanceResult::Forced(solver.stats),
                    Err(Timeout) => AvoidanceResult::Timeout(solver.stats),
                }
            })
            .collect()
    });
    let mut total = SearchStats::default();
    let mut timed_out = false;
    for b in &branches {
        let s = b.stats();
        total.nodes += s.nodes;
        total.propagations += s.propagations;
        total.conflicts += s.conflicts;
        timed_out |= matches!(b, AvoidanceResult::Timeout(_));
    }
    if let Some(AvoidanceResult::AvoidanceFound(c, _)) =
        branches.into_iter().find(|b| matches!(b, AvoidanceResult::AvoidanceFound(..)))
    {
        return AvoidanceResult::AvoidanceFound(c, total);
    }
    if timed_out {
        AvoidanceResult::Timeout(total)
    } else {
        AvoidanceResult::Forced(total)
    }
}
