//! Exact Stanley depth of `J/I` through interval partitions of the
//! characteristic poset.
//!
//! Let `g` be the componentwise maximum exponent over the generators of `I`
//! and `J`. The poset is the set of `a <= g` with `x^a ∈ J \ I`. An interval
//! `[a, b]` of the poset lifts to Stanley spaces whose free variables are the
//! coordinates where `b` reaches `g` (plus the variables no generator
//! mentions), so a partition whose tops all reach `g` in at least `d`
//! coordinates is a Stanley decomposition of depth at least `d`, and every
//! decomposition arises this way.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::monomial::Multidegree;
use crate::stanley::{ModulePresentation, StanleyDecomposition, StanleySpace};

/// Default node budget for a single partition search.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Cap on remembered dead states.
const FAILURE_CACHE_CAP: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct CharacteristicPoset {
    module: ModulePresentation,
    g: Multidegree,
    /// Variables mentioned by some generator; the poset lives on these.
    vars: Vec<usize>,
    free_vars: Vec<usize>,
    grid: Grid,
    /// Projected coordinates of the elements, lexicographically sorted.
    points: Vec<Vec<u32>>,
    /// Grid index to element id.
    lookup: Vec<Option<usize>>,
}

impl CharacteristicPoset {
    pub fn new(module: &ModulePresentation) -> Result<Self> {
        if module.is_zero() {
            return Err(Error::ZeroModule);
        }
        let g = module.generator_corner();
        let vars: Vec<usize> = (0..g.len()).filter(|&j| g[j] > 0).collect();
        let free_vars: Vec<usize> = (0..g.len()).filter(|&j| g[j] == 0).collect();
        let grid = Grid::new(vars.iter().map(|&j| g[j]).collect());
        let n = module.n();
        let mut points = Vec::new();
        let mut lookup = vec![None; grid.len()];
        for (idx, slot) in lookup.iter_mut().enumerate() {
            let p = grid.point(idx);
            let full = Multidegree::new(p.clone()).embed(&vars, n);
            if module.contains(&full) {
                *slot = Some(points.len());
                points.push(p);
            }
        }
        Ok(CharacteristicPoset {
            module: module.clone(),
            g: Multidegree::new(g),
            vars,
            free_vars,
            grid,
            points,
            lookup,
        })
    }

    pub fn module(&self) -> &ModulePresentation {
        &self.module
    }

    pub fn g(&self) -> &Multidegree {
        &self.g
    }

    pub fn free_vars(&self) -> &[usize] {
        &self.free_vars
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Elements as full-length multidegrees (zero on free variables).
    pub fn elements(&self) -> Vec<Multidegree> {
        self.points.iter().map(|p| self.lift(p)).collect()
    }

    fn lift(&self, p: &[u32]) -> Multidegree {
        Multidegree::new(p.to_vec()).embed(&self.vars, self.g.len())
    }

    /// Number of coordinates where the projected point reaches `g`.
    fn saturated(&self, p: &[u32]) -> usize {
        p.iter().zip(self.grid.corner()).filter(|(a, g)| a == g).count()
    }

    /// `ρ(b)`: the dimension of the Stanley spaces an interval with top `b`
    /// lifts to.
    pub fn rho(&self, b: &Multidegree) -> usize {
        self.saturated(&b.project(&self.vars).into_exponents()) + self.free_vars.len()
    }

    /// Element id of a full-length multidegree, if it is in the poset.
    fn element_id(&self, a: &Multidegree) -> Option<usize> {
        if a.len() != self.g.len() || self.free_vars.iter().any(|&j| a[j] != 0) {
            return None;
        }
        let p = a.project(&self.vars).into_exponents();
        if p.iter().zip(self.grid.corner()).any(|(x, c)| x > c) {
            return None;
        }
        self.lookup[self.grid.index(&p)]
    }

    /// The partition into singletons, which always exists.
    pub fn singleton_partition(&self) -> IntervalPartition {
        IntervalPartition { intervals: self.points.iter().map(|p| (self.lift(p), self.lift(p))).collect() }
    }

    /// Checks that `partition` covers every element exactly once with
    /// intervals lying inside the poset.
    pub fn check_partition(&self, partition: &IntervalPartition) -> Result<()> {
        let mut covered = vec![false; self.len()];
        for (a, b) in &partition.intervals {
            let (Some(ia), Some(ib)) = (self.element_id(a), self.element_id(b)) else {
                return Err(Error::InvalidCertificate(format!("interval [{a}, {b}] leaves the poset")));
            };
            let (pa, pb) = (&self.points[ia], &self.points[ib]);
            if pa.iter().zip(pb).any(|(x, y)| x > y) {
                return Err(Error::InvalidCertificate(format!("empty interval [{a}, {b}]")));
            }
            let mut err = None;
            self.grid.for_each_in(pa, pb, |idx| match self.lookup[idx] {
                Some(e) if !covered[e] => covered[e] = true,
                Some(_) => err = Some("overlapping intervals"),
                None => err = Some("interval leaves the poset"),
            });
            if let Some(e) = err {
                return Err(Error::InvalidCertificate(format!("{e} at [{a}, {b}]")));
            }
        }
        if covered.iter().all(|&c| c) {
            Ok(())
        } else {
            Err(Error::InvalidCertificate("partition misses poset elements".into()))
        }
    }

    /// Lift a partition to a Stanley decomposition of the module. An
    /// interval `[a, b]` becomes the spaces `x^c K[Z]` with
    /// `Z = {j : b_j = g_j} ∪ free`, where `c` runs over the points of
    /// `[a, b]` that agree with `a` on `Z`.
    pub fn partition_to_decomposition(&self, partition: &IntervalPartition) -> Result<StanleyDecomposition> {
        let n = self.g.len();
        let mut spaces = Vec::new();
        for (a, b) in &partition.intervals {
            a.check_len(n)?;
            b.check_len(n)?;
            let z: Vec<usize> = self
                .vars
                .iter()
                .copied()
                .filter(|&j| b[j] == self.g[j])
                .chain(self.free_vars.iter().copied())
                .collect();
            let pa = a.project(&self.vars).into_exponents();
            let hi: Vec<u32> = self.vars.iter().map(|&j| if z.contains(&j) { a[j] } else { b[j] }).collect();
            self.grid.for_each_in(&pa, &hi, |idx| {
                spaces.push(StanleySpace::new(self.lift(&self.grid.point(idx)), z.clone()));
            });
        }
        StanleyDecomposition::new(self.module.clone(), spaces)
    }
}

/// Intervals `[a, b]` of the characteristic poset, as full-length
/// multidegrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalPartition {
    pub intervals: Vec<(Multidegree, Multidegree)>,
}

impl IntervalPartition {
    /// Minimum of `ρ(b)` over the interval tops; `None` when empty.
    pub fn value(&self, poset: &CharacteristicPoset) -> Option<usize> {
        self.intervals.iter().map(|(_, b)| poset.rho(b)).min()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(IntervalPartition),
    /// Exhaustive search proved there is no partition at the target.
    Infeasible,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub nodes: u64,
}

/// Bitset over poset elements.
type Mask = Vec<u64>;

fn mask_len(n: usize) -> usize {
    n.div_ceil(64)
}

fn disjoint(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

struct Candidate {
    top: usize,
    mask: Mask,
}

struct Search<'a> {
    poset: &'a CharacteristicPoset,
    /// Strict down-sets of the elements.
    below: Vec<Mask>,
    /// Admissible tops above (or equal to) each element.
    tops_above: Vec<Mask>,
    /// Intervals `[c, b]` usable at the target, per bottom `c`.
    candidates: Vec<Vec<Candidate>>,
    covered: Mask,
    chosen: Vec<(usize, usize)>,
    nodes: u64,
    budget: u64,
    dead: HashSet<Mask>,
}

enum Step {
    Done,
    Dead,
    OutOfBudget,
}

impl Search<'_> {
    fn is_covered(&self, e: usize) -> bool {
        self.covered[e / 64] >> (e % 64) & 1 == 1
    }

    fn toggle(&mut self, mask: &[u64]) {
        for (c, m) in self.covered.iter_mut().zip(mask) {
            *c ^= m;
        }
    }

    /// Every uncovered element that is minimal among the uncovered ones must
    /// be the bottom of its interval, since everything below it already sits
    /// in other intervals. Branch on the one with the fewest usable tops.
    fn pick(&self) -> Option<(usize, Vec<usize>)> {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for e in 0..self.poset.len() {
            if self.is_covered(e) {
                continue;
            }
            // Whatever interval ends up holding `e` has an uncovered top
            // above it.
            if self.tops_above[e].iter().zip(&self.covered).all(|(t, c)| t & !c == 0) {
                return Some((e, Vec::new()));
            }
            let minimal = self.below[e].iter().zip(&self.covered).all(|(b, c)| b & !c == 0);
            if !minimal {
                continue;
            }
            let options: Vec<usize> = self.candidates[e]
                .iter()
                .enumerate()
                .filter(|(_, c)| disjoint(&c.mask, &self.covered))
                .map(|(i, _)| i)
                .collect();
            if options.is_empty() {
                return Some((e, options));
            }
            if best.as_ref().is_none_or(|(_, o)| options.len() < o.len()) {
                best = Some((e, options));
            }
        }
        best
    }

    fn run(&mut self) -> Step {
        let Some((e, options)) = self.pick() else {
            return Step::Done;
        };
        if options.is_empty() || self.dead.contains(&self.covered) {
            return Step::Dead;
        }
        for i in options {
            if self.nodes >= self.budget {
                return Step::OutOfBudget;
            }
            self.nodes += 1;
            let mask = std::mem::take(&mut self.candidates[e][i].mask);
            self.toggle(&mask);
            self.chosen.push((e, self.candidates[e][i].top));
            let step = self.run();
            self.toggle(&mask);
            self.candidates[e][i].mask = mask;
            match step {
                Step::Dead => {
                    self.chosen.pop();
                }
                other => return other,
            }
        }
        if self.dead.len() < FAILURE_CACHE_CAP {
            self.dead.insert(self.covered.clone());
        }
        Step::Dead
    }
}

/// Look for an interval partition of value at least `target`.
///
/// Exact-cover backtracking over intervals whose top `b` has `ρ(b) >= target`.
/// The outcome is deterministic for a given poset, target and budget.
pub fn search_partition(poset: &CharacteristicPoset, target: usize, budget: u64) -> SearchReport {
    let free = poset.free_vars.len();
    if target <= free {
        return SearchReport { outcome: SearchOutcome::Found(poset.singleton_partition()), nodes: 0 };
    }
    let need = target - free;
    let count = poset.len();
    let words = mask_len(count);
    let leq = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| x <= y);

    let mut below = vec![vec![0u64; words]; count];
    for (e, p) in poset.points.iter().enumerate() {
        for (f, q) in poset.points.iter().enumerate().take(e) {
            if leq(q, p) {
                below[e][f / 64] |= 1 << (f % 64);
            }
        }
    }

    let tops: Vec<usize> = (0..count).filter(|&b| poset.saturated(&poset.points[b]) >= need).collect();
    let mut tops_above = vec![vec![0u64; words]; count];
    for (e, p) in poset.points.iter().enumerate() {
        for &b in tops.iter().filter(|&&b| leq(p, &poset.points[b])) {
            tops_above[e][b / 64] |= 1 << (b % 64);
        }
    }
    let mut candidates: Vec<Vec<Candidate>> = Vec::with_capacity(count);
    for c in 0..count {
        let pc = &poset.points[c];
        let mut list: Vec<(usize, Candidate)> = Vec::new();
        for &b in tops.iter().filter(|&&b| leq(pc, &poset.points[b])) {
            let mut mask = vec![0u64; words];
            let mut size = 0usize;
            poset.grid.for_each_in(pc, &poset.points[b], |idx| {
                let e = poset.lookup[idx].expect("interval between poset elements stays in the poset");
                mask[e / 64] |= 1 << (e % 64);
                size += 1;
            });
            list.push((size, Candidate { top: b, mask }));
        }
        // Larger intervals first, then lexicographically larger tops.
        list.sort_by(|(sa, ca), (sb, cb)| sb.cmp(sa).then(cb.top.cmp(&ca.top)));
        candidates.push(list.into_iter().map(|(_, c)| c).collect());
    }

    let mut search = Search {
        poset,
        below,
        tops_above,
        candidates,
        covered: vec![0u64; words],
        chosen: Vec::new(),
        nodes: 0,
        budget,
        dead: HashSet::new(),
    };
    let outcome = match search.run() {
        Step::Done => {
            let mut intervals: Vec<(Multidegree, Multidegree)> = search
                .chosen
                .iter()
                .map(|&(a, b)| (poset.lift(&poset.points[a]), poset.lift(&poset.points[b])))
                .collect();
            intervals.sort();
            SearchOutcome::Found(IntervalPartition { intervals })
        }
        Step::Dead => SearchOutcome::Infeasible,
        Step::OutOfBudget => SearchOutcome::BudgetExceeded,
    };
    SearchReport { outcome, nodes: search.nodes }
}

#[derive(Clone, Debug)]
pub struct SdepthResult {
    pub value: usize,
    /// `true` when `value + 1` was proven unreachable (or `value = n`).
    pub exact: bool,
    pub partition: IntervalPartition,
    pub nodes: u64,
}

impl SdepthResult {
    pub fn flag(&self) -> &'static str {
        if self.exact {
            "exact"
        } else {
            "lower-bound only"
        }
    }
}

/// The Stanley depth of a nonzero module: the largest target with a
/// partition. `budget` bounds each individual search.
pub fn sdepth_exact(module: &ModulePresentation, budget: u64) -> Result<SdepthResult> {
    let poset = CharacteristicPoset::new(module)?;
    sdepth_of_poset(&poset, budget)
}

pub fn sdepth_of_poset(poset: &CharacteristicPoset, budget: u64) -> Result<SdepthResult> {
    let n = poset.g.len();
    let mut best = poset.singleton_partition();
    let mut value = best.value(poset).expect("nonzero module has a nonempty poset");
    let mut nodes = 0;
    let mut exact = value == n;
    while !exact {
        let report = search_partition(poset, value + 1, budget);
        nodes += report.nodes;
        match report.outcome {
            SearchOutcome::Found(p) => {
                value = p.value(poset).expect("nonempty");
                best = p;
                exact = value == n;
            }
            SearchOutcome::Infeasible => exact = true,
            SearchOutcome::BudgetExceeded => break,
        }
    }
    Ok(SdepthResult { value, exact, partition: best, nodes })
}

/// Find a decomposition with `sdepth >= target`, reporting a failure at a
/// target that a theorem guarantees as a contradiction.
pub fn decomposition_at_guaranteed_target(
    module: &ModulePresentation,
    target: usize,
    budget: u64,
    context: &str,
) -> Result<StanleyDecomposition> {
    let poset = CharacteristicPoset::new(module)?;
    let report = search_partition(&poset, target, budget);
    match report.outcome {
        SearchOutcome::Found(p) => poset.partition_to_decomposition(&p),
        SearchOutcome::Infeasible => Err(Error::Contradiction { target, context: format!("{context}: {module}") }),
        SearchOutcome::BudgetExceeded => Err(Error::BudgetExceeded { budget }),
    }
}

/// Best decomposition reachable within `budget`: the largest target that
/// succeeds, falling back to singletons.
pub fn best_effort_decomposition(module: &ModulePresentation, budget: u64) -> Result<StanleyDecomposition> {
    let poset = CharacteristicPoset::new(module)?;
    let result = sdepth_of_poset(&poset, budget)?;
    poset.partition_to_decomposition(&result.partition)
}
