//! Exact ground truth: maximum clique / independent set through a vertex,
//! per-vertex k-enabling classification, and exhaustive `k(n)` tables.
//!
//! The clique search is a bitset branch-and-bound in the MCQ style: the
//! candidate set is ordered by descending candidate-degree (ties to the
//! lowest id), greedily coloured, and a branch is cut as soon as
//! `|current| + colour` cannot beat the incumbent. Independent sets are
//! cliques of the complement.

pub mod canon;
pub mod enumerate;

use crate::graph::{Graph, GraphError, VertexSet};
use serde::{Deserialize, Serialize};

pub use enumerate::{k_of_n_exhaustive, n_of_k_small, EnumError, EnumMode, KTable};

/// Which of the two membership requirements is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Clique,
    IndependentSet,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Clique => Side::IndependentSet,
            Side::IndependentSet => Side::Clique,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

struct CliqueSearch<'g> {
    g: &'g Graph,
    current: Vec<usize>,
    best: Vec<usize>,
    /// Stop as soon as the incumbent reaches this size.
    stop_at: usize,
    nodes: u64,
}

impl<'g> CliqueSearch<'g> {
    fn new(g: &'g Graph, stop_at: usize) -> Self {
        CliqueSearch { g, current: Vec::new(), best: Vec::new(), stop_at, nodes: 0 }
    }

    fn done(&self) -> bool {
        self.best.len() >= self.stop_at
    }

    /// Greedy sequential colouring of `cand`. Returns vertices grouped by
    /// colour class (ascending) together with each vertex's colour.
    fn colour_order(&self, cand: &VertexSet) -> (Vec<usize>, Vec<usize>) {
        let mut by_degree: Vec<(usize, usize)> = cand.iter().map(|v| (self.g.degree_in(v, cand), v)).collect();
        by_degree.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut uncoloured: Vec<usize> = by_degree.into_iter().map(|(_, v)| v).collect();
        let mut order = Vec::with_capacity(uncoloured.len());
        let mut colours = Vec::with_capacity(uncoloured.len());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut blocked = VertexSet::empty(self.g.n());
            let mut rest = Vec::new();
            for &v in &uncoloured {
                if blocked.contains(v) {
                    rest.push(v);
                } else {
                    order.push(v);
                    colours.push(colour);
                    blocked.union_words(self.g.row(v));
                }
            }
            uncoloured = rest;
        }
        (order, colours)
    }

    fn expand(&mut self, mut cand: VertexSet) {
        self.nodes += 1;
        let (order, colours) = self.colour_order(&cand);
        for idx in (0..order.len()).rev() {
            if self.done() || self.current.len() + colours[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            self.current.push(v);
            let mut next = cand.clone();
            next.intersect_words(self.g.row(v));
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand.remove(v);
        }
    }
}

/// Largest clique inside `cand`, or the first one found of size `stop_at`.
fn clique_in(g: &Graph, cand: &VertexSet, stop_at: usize) -> Vec<usize> {
    if cand.is_empty() || stop_at == 0 {
        return Vec::new();
    }
    let mut search = CliqueSearch::new(g, stop_at);
    search.expand(cand.clone());
    search.best
}

/// Maximum clique of `g` restricted to `cand`.
pub fn max_clique_in(g: &Graph, cand: &VertexSet) -> VertexSet {
    VertexSet::from_ids(g.n(), clique_in(g, cand, usize::MAX)).expect("ids from g")
}

fn through(g: &Graph, v: usize, stop_at: usize) -> VertexSet {
    let inner = clique_in(g, &g.neighborhood(v), stop_at.saturating_sub(1));
    let mut s = VertexSet::from_ids(g.n(), inner).expect("ids from g");
    s.insert(v);
    s
}

fn check_vertex(g: &Graph, v: usize) -> Result<(), GraphError> {
    if v >= g.n() {
        return Err(GraphError::VertexOutOfRange { v, n: g.n() });
    }
    Ok(())
}

/// Size of the largest clique containing `v`, with a witness.
pub fn max_clique_through(g: &Graph, v: usize) -> Result<(usize, VertexSet), OracleError> {
    check_vertex(g, v)?;
    let w = through(g, v, usize::MAX);
    debug_assert!(w.contains(v) && g.is_clique(&w));
    Ok((w.len(), w))
}

/// Size of the largest independent set containing `v`, with a witness.
pub fn max_is_through(g: &Graph, v: usize) -> Result<(usize, VertexSet), OracleError> {
    max_clique_through(&g.complement(), v)
}

/// Exact queries against one graph and its (cached) complement.
pub struct ExactOracle<'g> {
    g: &'g Graph,
    comp: Graph,
}

impl<'g> ExactOracle<'g> {
    pub fn new(g: &'g Graph) -> Self {
        ExactOracle { g, comp: g.complement() }
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    fn side_graph(&self, side: Side) -> &Graph {
        match side {
            Side::Clique => self.g,
            Side::IndependentSet => &self.comp,
        }
    }

    /// Largest clique (or independent set) through `v`, with witness.
    pub fn max_through(&self, v: usize, side: Side) -> (usize, VertexSet) {
        let w = through(self.side_graph(side), v, usize::MAX);
        debug_assert!(w.contains(v));
        debug_assert!(match side {
            Side::Clique => self.g.is_clique(&w),
            Side::IndependentSet => self.g.is_independent_set(&w),
        });
        (w.len(), w)
    }

    /// `min(size of largest structure through v, cap)`.
    pub fn max_through_capped(&self, v: usize, side: Side, cap: usize) -> usize {
        through(self.side_graph(side), v, cap).len().min(cap)
    }

    /// A clique (independent set) of size `size` through `v`, if one exists.
    pub fn find_through(&self, v: usize, side: Side, size: usize) -> Option<VertexSet> {
        let w = through(self.side_graph(side), v, size);
        (w.len() >= size).then_some(w)
    }

    pub fn is_enabling(&self, v: usize, k: usize) -> bool {
        self.find_through(v, Side::Clique, k).is_some() && self.find_through(v, Side::IndependentSet, k).is_some()
    }

    pub fn classify(&self, v: usize) -> VertexClassification {
        let (omega, wc) = self.max_through(v, Side::Clique);
        let (alpha, wi) = self.max_through(v, Side::IndependentSet);
        VertexClassification { vertex: v, max_clique_through: omega, max_is_through: alpha, witness_clique: wc, witness_is: wi }
    }

    /// `min over v of min(omega_v, alpha_v)`; 0 for the empty graph.
    pub fn k_of_graph(&self) -> usize {
        let mut best = usize::MAX;
        for v in 0..self.g.n() {
            best = best.min(self.max_through_capped(v, Side::Clique, best));
            best = best.min(self.max_through_capped(v, Side::IndependentSet, best));
        }
        if best == usize::MAX {
            0
        } else {
            best
        }
    }

    /// True iff every vertex is k-enabling; stops at the first failure.
    pub fn is_k_enabling(&self, k: usize) -> bool {
        (0..self.g.n()).all(|v| self.is_enabling(v, k))
    }
}

/// Exact per-vertex verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClassification {
    pub vertex: usize,
    pub max_clique_through: usize,
    pub max_is_through: usize,
    pub witness_clique: VertexSet,
    pub witness_is: VertexSet,
}

impl VertexClassification {
    pub fn enabling_for(&self, k: usize) -> bool {
        self.max_clique_through.min(self.max_is_through) >= k
    }

    /// The requirements `v` fails at `k` (empty when enabling).
    pub fn failing_sides(&self, k: usize) -> Vec<Side> {
        let mut out = Vec::new();
        if self.max_clique_through < k {
            out.push(Side::Clique);
        }
        if self.max_is_through < k {
            out.push(Side::IndependentSet);
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub k: usize,
    pub vertices: Vec<VertexClassification>,
}

impl Classification {
    pub fn excluding(&self) -> Vec<usize> {
        self.vertices.iter().filter(|c| !c.enabling_for(self.k)).map(|c| c.vertex).collect()
    }

    pub fn is_k_enabling(&self) -> bool {
        self.vertices.iter().all(|c| c.enabling_for(self.k))
    }
}

/// Classifies every vertex of `g` at parameter `k`.
pub fn classify_all(g: &Graph, k: usize) -> Result<Classification, OracleError> {
    if k == 0 {
        return Err(OracleError::ZeroK);
    }
    let oracle = ExactOracle::new(g);
    let vertices = (0..g.n()).map(|v| oracle.classify(v)).collect();
    Ok(Classification { k, vertices })
}

/// Largest `k` for which `g` is k-enabling.
pub fn k_of_graph(g: &Graph) -> usize {
    ExactOracle::new(g).k_of_graph()
}
