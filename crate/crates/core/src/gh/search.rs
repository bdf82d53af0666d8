//! Exact minimization of isometry and equivariance defects over all maps
//! between two finite spaces.
//!
//! Maps are explored in lexicographic order of their tables (source point 0
//! first, target values ascending). The branch-and-bound engine prunes a
//! partial map as soon as the defect accumulated on its assigned rows reaches
//! the best value found so far; since every defect is a maximum of terms, the
//! partial value is a lower bound for every completion. The first optimal map
//! in lexicographic order is reported.

use serde::Serialize;

use crate::action::GroupAction;
use crate::error::Result;
use crate::gh::candidate::{equi_defect, iso_defect, match_generators, CandidateMap};
use crate::metric::FiniteMetricSpace;
use crate::scalar::{self, Scalar};

/// Which engine to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// Exhaustive when the map space fits in the budget, else branch and bound.
    #[default]
    Auto,
    Exhaustive,
    BranchAndBound,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GhOptions {
    /// Node budget per search.
    pub budget: Option<u64>,
    pub engine: Engine,
}

/// Optimum of one map search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MapOptimum {
    #[serde(with = "scalar::serde_text")]
    pub value: Scalar,
    /// Certified lower bound; equals `value` when `exact`.
    #[serde(with = "scalar::serde_text")]
    pub lower_bound: Scalar,
    pub exact: bool,
    pub optimizer: Option<CandidateMap>,
    #[serde(with = "scalar::serde_text_opt")]
    pub iso_defect: Option<Scalar>,
    #[serde(with = "scalar::serde_text_opt")]
    pub equi_defect: Option<Scalar>,
    pub engine: Engine,
    pub nodes: u64,
}

/// The objective `max(iso_defect(i), equi_defect(i))` on an integer grid.
pub(crate) struct MapProblem {
    ns: usize,
    nt: usize,
    den: i64,
    ds: Vec<i64>,
    dt: Vec<i64>,
    /// Per generator: source table, target table, source preimage table.
    gens: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)>,
    /// Order in which source points are assigned, and each point's position.
    order: Vec<usize>,
    rank: Vec<usize>,
}

const NONE: i64 = i64::MAX;
const UNSET: usize = usize::MAX;

impl MapProblem {
    pub(crate) fn spaces(source: &FiniteMetricSpace, target: &FiniteMetricSpace) -> Self {
        let (ns, nt) = (source.len(), target.len());
        let bs: Vec<Scalar> = (0..ns * ns).map(|k| source.bounded(k / ns, k % ns)).collect();
        let bt: Vec<Scalar> = (0..nt * nt).map(|k| target.bounded(k / nt, k % nt)).collect();
        let den = scalar::common_denominator(bs.iter().chain(&bt));
        let grid = |v: &Scalar| scalar::on_grid(v, den) as i64;
        MapProblem {
            ns,
            nt,
            den,
            ds: bs.iter().map(grid).collect(),
            dt: bt.iter().map(grid).collect(),
            gens: Vec::new(),
            order: (0..ns).collect(),
            rank: (0..ns).collect(),
        }
    }

    /// Breadth-first order over the generator graph, so equivariance terms
    /// constrain the search as early as possible.
    fn order_by_generators(&mut self) {
        let mut seen = vec![false; self.ns];
        let mut order = Vec::with_capacity(self.ns);
        for start in 0..self.ns {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                order.push(x);
                for (src, _, pre) in &self.gens {
                    for z in [src[x], pre[x]] {
                        if !seen[z] {
                            seen[z] = true;
                            queue.push_back(z);
                        }
                    }
                }
            }
        }
        for (i, &x) in order.iter().enumerate() {
            self.rank[x] = i;
        }
        self.order = order;
    }

    /// Maps from the space of `source` to the space of `target`, with the
    /// equivariance term.
    pub(crate) fn actions(source: &GroupAction, target: &GroupAction) -> Result<Self> {
        let sigma = match_generators(source.generators(), target.generators())?;
        let mut p = Self::spaces(source.space(), target.space());
        p.gens = sigma
            .iter()
            .enumerate()
            .map(|(s, &t)| {
                let src = source.generator_map(s);
                (src.table().to_vec(), target.generator_map(t).table().to_vec(), src.inverse().table().to_vec())
            })
            .collect();
        p.order_by_generators();
        Ok(p)
    }

    fn scalar(&self, v: i64) -> Scalar {
        Scalar::new(v, self.den)
    }

    /// Cost added by assigning `order[depth] ↦ y` once the points before it
    /// in `order` are assigned in `table`.
    #[inline]
    fn step(&self, table: &[usize], depth: usize, y: usize) -> i64 {
        let (ns, nt) = (self.ns, self.nt);
        let x = self.order[depth];
        let mut cost = 0;
        for &x2 in &self.order[..depth] {
            cost = cost.max((self.dt[y * nt + table[x2]] - self.ds[x * ns + x2]).abs());
        }
        for (src, tgt, pre) in &self.gens {
            // Term for x itself when Φ_s x is already assigned (or is x).
            let fx = src[x];
            if fx == x {
                cost = cost.max(self.dt[tgt[y] * nt + y]);
            } else if self.rank[fx] < depth {
                cost = cost.max(self.dt[tgt[y] * nt + table[fx]]);
            }
            // Term for the earlier point x' with Φ_s x' = x.
            let xp = pre[x];
            if xp != x && self.rank[xp] < depth {
                cost = cost.max(self.dt[tgt[table[xp]] * nt + y]);
            }
        }
        cost
    }

    /// Target points for `order[depth]` with their step costs, cheapest first.
    fn children(&self, table: &[usize], depth: usize, partial: i64) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = (0..self.nt).map(|y| (partial.max(self.step(table, depth, y)), y)).collect();
        out.sort_unstable();
        out
    }

    fn coverage(&self, table: &[usize]) -> i64 {
        let nt = self.nt;
        (0..nt)
            .map(|t| table.iter().map(|&y| self.dt[t * nt + y]).min().unwrap_or(NONE))
            .max()
            .unwrap_or(0)
    }

    /// Full objective of a complete table.
    fn value(&self, table: &[usize]) -> i64 {
        let mut partial = 0;
        for depth in 0..self.ns {
            partial = partial.max(self.step(table, depth, table[self.order[depth]]));
        }
        partial.max(self.coverage(table))
    }

    fn map_space_size(&self) -> Option<u64> {
        (self.nt as u64).checked_pow(self.ns as u32)
    }
}

/// Depth-first branch and bound with an optional floor (a value already
/// committed elsewhere, as in the two-map search).
pub(crate) struct BranchAndBound<'p> {
    problem: &'p MapProblem,
    budget: Option<u64>,
    pub(crate) nodes: u64,
    pub(crate) best: i64,
    pub(crate) best_table: Option<Vec<usize>>,
    /// Smallest partial cost among subtrees abandoned when the budget ran out.
    pub(crate) frontier: i64,
    pub(crate) interrupted: bool,
}

impl<'p> BranchAndBound<'p> {
    pub(crate) fn new(problem: &'p MapProblem, budget: Option<u64>, bound: i64) -> Self {
        BranchAndBound { problem, budget, nodes: 0, best: bound, best_table: None, frontier: NONE, interrupted: false }
    }

    pub(crate) fn run(&mut self, floor: i64) {
        let mut table = vec![UNSET; self.problem.ns];
        self.descend(&mut table, 0, floor);
    }

    fn descend(&mut self, table: &mut [usize], depth: usize, partial: i64) {
        let p = self.problem;
        if depth == p.ns {
            let v = partial.max(p.coverage(table));
            if v < self.best {
                self.best = v;
                self.best_table = Some(table.to_vec());
            }
            return;
        }
        let x = p.order[depth];
        for (cost, y) in p.children(table, depth, partial) {
            if cost >= self.best {
                break;
            }
            if self.interrupted || self.budget.is_some_and(|b| self.nodes >= b) {
                self.interrupted = true;
                self.frontier = self.frontier.min(cost);
                continue;
            }
            self.nodes += 1;
            table[x] = y;
            self.descend(table, depth + 1, cost);
            table[x] = UNSET;
        }
    }
}

fn finish(problem: &MapProblem, value: i64, lower: i64, table: Option<Vec<usize>>, engine: Engine, nodes: u64) -> (Scalar, Scalar, Option<CandidateMap>, Engine, u64) {
    let value_s = problem.scalar(value);
    let lower_s = problem.scalar(lower.min(value));
    (value_s, lower_s, table.map(|table| CandidateMap { table }), engine, nodes)
}

/// Minimizes the objective of `problem`.
pub(crate) fn minimize(problem: &MapProblem, options: GhOptions) -> (Scalar, Scalar, Option<CandidateMap>, Engine, u64) {
    let exhaustive = match options.engine {
        Engine::Exhaustive => true,
        Engine::BranchAndBound => false,
        Engine::Auto => match (problem.map_space_size(), options.budget) {
            (Some(size), Some(b)) => size <= b,
            (Some(size), None) => size <= 4096,
            _ => false,
        },
    };
    if exhaustive {
        let mut best = NONE;
        let mut best_table = None;
        let mut table = vec![0usize; problem.ns];
        let mut nodes = 0u64;
        loop {
            nodes += 1;
            let v = problem.value(&table);
            if v < best {
                best = v;
                best_table = Some(table.clone());
            }
            let mut k = problem.ns;
            loop {
                if k == 0 {
                    return finish(problem, best, best, best_table, Engine::Exhaustive, nodes);
                }
                k -= 1;
                table[k] += 1;
                if table[k] < problem.nt {
                    break;
                }
                table[k] = 0;
            }
        }
    }
    let mut bb = BranchAndBound::new(problem, options.budget, NONE);
    bb.run(0);
    let lower = if bb.interrupted { bb.frontier } else { bb.best };
    finish(problem, bb.best, lower, bb.best_table, Engine::BranchAndBound, bb.nodes)
}

fn optimum_of(
    problem: &MapProblem,
    options: GhOptions,
    defects: impl Fn(&CandidateMap) -> (Scalar, Option<Scalar>),
) -> MapOptimum {
    let (value, lower_bound, optimizer, engine, nodes) = minimize(problem, options);
    let (iso, equi) = match &optimizer {
        Some(m) => {
            let (i, e) = defects(m);
            (Some(i), e)
        }
        None => (None, None),
    };
    MapOptimum { exact: lower_bound == value, value, lower_bound, optimizer, iso_defect: iso, equi_defect: equi, engine, nodes }
}

/// `min_i iso_defect(i)` over maps `source → target`.
pub fn min_iso_defect(source: &FiniteMetricSpace, target: &FiniteMetricSpace, options: GhOptions) -> MapOptimum {
    let problem = MapProblem::spaces(source, target);
    optimum_of(&problem, options, |m| (iso_defect(source, target, m), None))
}

/// `min_i max(iso_defect(i), equi_defect(i))` over maps from the space of
/// `source` to the space of `target`.
pub fn min_equivariant_defect(source: &GroupAction, target: &GroupAction, options: GhOptions) -> Result<MapOptimum> {
    let problem = MapProblem::actions(source, target)?;
    Ok(optimum_of(&problem, options, |m| {
        (iso_defect(source.space(), target.space(), m), equi_defect(source, target, m).ok())
    }))
}

/// Joint minimization over pairs `(i: X → Y, j: Y → X)` of the larger of the
/// two objectives, by nested branch and bound. Both problems must share one
/// grid (see [`shared_grid_pair`]).
pub(crate) fn minimize_pair(
    forward: &MapProblem,
    backward: &MapProblem,
    budget: Option<u64>,
) -> PairOptimum {
    debug_assert_eq!(forward.den, backward.den);
    let mut state = PairState { best: NONE, best_pair: None, nodes: 0, budget, exact: true };
    let mut table = vec![UNSET; forward.ns];
    pair_descend(forward, backward, &mut table, 0, 0, &mut state);
    PairOptimum {
        value: forward.scalar(state.best),
        exact: state.exact,
        optimizers: state.best_pair.map(|(i, j)| (CandidateMap { table: i }, CandidateMap { table: j })),
        nodes: state.nodes,
    }
}

pub(crate) struct PairOptimum {
    pub value: Scalar,
    pub exact: bool,
    pub optimizers: Option<(CandidateMap, CandidateMap)>,
    pub nodes: u64,
}

struct PairState {
    best: i64,
    best_pair: Option<(Vec<usize>, Vec<usize>)>,
    nodes: u64,
    budget: Option<u64>,
    exact: bool,
}

fn pair_descend(forward: &MapProblem, backward: &MapProblem, table: &mut [usize], depth: usize, partial: i64, st: &mut PairState) {
    if depth == forward.ns {
        let v = partial.max(forward.coverage(table));
        if v >= st.best {
            return;
        }
        let mut inner = BranchAndBound::new(backward, st.budget.map(|b| b.saturating_sub(st.nodes)), st.best);
        inner.run(v);
        st.nodes += inner.nodes;
        if inner.interrupted {
            st.exact = false;
        }
        if let Some(j) = inner.best_table {
            st.best = inner.best;
            st.best_pair = Some((table.to_vec(), j));
        }
        return;
    }
    let x = forward.order[depth];
    for (cost, y) in forward.children(table, depth, partial) {
        if cost >= st.best {
            break;
        }
        if st.budget.is_some_and(|b| st.nodes >= b) {
            st.exact = false;
            return;
        }
        st.nodes += 1;
        table[x] = y;
        pair_descend(forward, backward, table, depth + 1, cost, st);
        table[x] = UNSET;
    }
}

/// Problems for both directions between two actions, on one shared grid.
pub(crate) fn shared_grid_pair(a: &GroupAction, b: &GroupAction) -> Result<(MapProblem, MapProblem)> {
    let mut f = MapProblem::actions(a, b)?;
    let mut g = MapProblem::actions(b, a)?;
    let den = num_integer::Integer::lcm(&f.den, &g.den);
    for p in [&mut f, &mut g] {
        let k = den / p.den;
        p.ds.iter_mut().for_each(|v| *v *= k);
        p.dt.iter_mut().for_each(|v| *v *= k);
        p.den = den;
    }
    Ok((f, g))
}
