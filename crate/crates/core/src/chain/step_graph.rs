//! The δ-step digraph: `x → y` iff `d(Φ_s x, y) < δ` for some generator `s`.

use std::collections::VecDeque;

use petgraph::graph::{DiGraph, NodeIndex};

use crate::action::GroupAction;
use crate::pointset::PointSet;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct StepGraph {
    delta: Scalar,
    succ: Vec<PointSet>,
    pred: Vec<PointSet>,
    /// `(x, y)` → generators witnessing the edge, in label order.
    witnesses: Vec<Vec<Vec<usize>>>,
}

impl StepGraph {
    pub fn new(action: &GroupAction, delta: Scalar) -> Self {
        let space = action.space();
        let n = space.len();
        let near = space.open_balls(&delta);
        let mut succ = vec![PointSet::empty(n); n];
        let mut pred = vec![PointSet::empty(n); n];
        let mut witnesses = vec![vec![Vec::new(); n]; n];
        for (s, m) in action.maps().iter().enumerate() {
            for x in 0..n {
                for y in near[m.apply(x)].iter() {
                    succ[x].insert(y);
                    pred[y].insert(x);
                    witnesses[x][y].push(s);
                }
            }
        }
        StepGraph { delta, succ, pred, witnesses }
    }

    pub fn delta(&self) -> Scalar {
        self.delta
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn successors(&self, x: usize) -> &PointSet {
        &self.succ[x]
    }

    pub fn predecessors(&self, y: usize) -> &PointSet {
        &self.pred[y]
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.succ[x].contains(y)
    }

    /// Generators `s` with `d(Φ_s x, y) < δ`.
    pub fn witnesses(&self, x: usize, y: usize) -> &[usize] {
        &self.witnesses[x][y]
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(PointSet::count).sum()
    }

    /// Edge list `(x, y, first witnessing generator)`.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        (0..self.len())
            .flat_map(|x| self.succ[x].iter().map(move |y| (x, y, self.witnesses[x][y][0])))
            .collect()
    }

    /// Points reachable from `x` in one or more steps.
    pub fn reach(&self, x: usize) -> PointSet {
        let mut seen = PointSet::empty(self.len());
        let mut queue: VecDeque<usize> = self.succ[x].iter().collect();
        for y in self.succ[x].iter() {
            seen.insert(y);
        }
        while let Some(v) = queue.pop_front() {
            for w in self.succ[v].iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Reach sets of every point.
    pub fn closure(&self) -> Vec<PointSet> {
        (0..self.len()).map(|x| self.reach(x)).collect()
    }

    pub fn on_cycle(&self, x: usize) -> bool {
        self.reach(x).contains(x)
    }

    /// A shortest chain `x = x_0 → … → x_m = y` with `m ≥ 1`, preferring
    /// smaller indices among shortest chains.
    pub fn shortest_chain(&self, x: usize, y: usize) -> Option<Vec<usize>> {
        let n = self.len();
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for w in self.succ[x].iter() {
            if parent[w] == usize::MAX {
                parent[w] = x;
                queue.push_back(w);
            }
        }
        while let Some(v) = queue.pop_front() {
            if v == y {
                let mut chain = vec![y];
                let mut cur = y;
                loop {
                    let p = parent[cur];
                    chain.push(p);
                    if p == x && chain.len() >= 2 {
                        break;
                    }
                    cur = p;
                }
                chain.reverse();
                return Some(chain);
            }
            for w in self.succ[v].iter() {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// The graph as a petgraph digraph (node `i` is point `i`), for external
    /// graph tooling.
    pub fn to_digraph(&self) -> DiGraph<usize, ()> {
        let mut g = DiGraph::with_capacity(self.len(), self.edge_count());
        for x in 0..self.len() {
            g.add_node(x);
        }
        for x in 0..self.len() {
            for y in self.succ[x].iter() {
                g.add_edge(NodeIndex::new(x), NodeIndex::new(y), ());
            }
        }
        g
    }
}
