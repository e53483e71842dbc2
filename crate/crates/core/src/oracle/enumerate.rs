//! Exhaustive computation of `k(n)` (largest k such that some n-vertex graph
//! is k-enabling) and of its inverse `n(k)` at small scale.
//!
//! Labeled mode walks every adjacency bitmask. Canonical mode grows graphs
//! one vertex at a time and keeps a child only when the new vertex lies in
//! the orbit of the child's canonically-last vertex (canonical augmentation),
//! so each isomorphism class is produced exactly once.

use super::canon::{canonical_form, same_orbit, SmallGraph, MAX_CANON};
use super::ExactOracle;
use crate::graph::{Graph, GraphBuilder};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

pub const LABELED_CAP: usize = 7;
pub const CANONICAL_CAP: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnumMode {
    Labeled,
    Canonical,
}

impl EnumMode {
    pub fn cap(self) -> usize {
        match self {
            EnumMode::Labeled => LABELED_CAP,
            EnumMode::Canonical => CANONICAL_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("n must be at least 1")]
    ZeroN,
    #[error("{mode:?} enumeration is capped at n <= {cap}, got n = {n}")]
    TooLarge { mode: EnumMode, n: usize, cap: usize },
    #[error("n(k) is only computed exhaustively for 1 <= k <= 3, got k = {0}")]
    KTooLarge(usize),
    #[error("could not build a thread pool: {0}")]
    ThreadPool(String),
}

/// Result of an exhaustive `k(n)` computation.
#[derive(Debug, Clone)]
pub struct KTable {
    pub n: usize,
    pub k_of_n: usize,
    /// An n-vertex graph that is `k_of_n`-enabling.
    pub witness: Graph,
    pub mode: EnumMode,
    /// Graphs generated (labeled bitmasks, or isomorphism classes).
    pub graphs_examined: u64,
    /// Graphs that survived the degree filter and hit the exact oracle.
    pub graphs_evaluated: u64,
    /// Every graph of the mode's search space was covered.
    pub exhaustive: bool,
}

/// Could `g` be (best+1)-enabling? Each vertex needs at least `best`
/// neighbours and at least `best` non-neighbours.
fn may_improve(degrees: &[usize], n: usize, best: usize) -> bool {
    degrees.iter().all(|&d| d >= best && n - 1 - d >= best)
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

#[derive(Clone, Copy)]
struct Best {
    k: usize,
    key: u64,
    examined: u64,
    evaluated: u64,
}

impl Best {
    fn merge(a: Best, b: Best) -> Best {
        let (k, key) = if (a.k, std::cmp::Reverse(a.key)) >= (b.k, std::cmp::Reverse(b.key)) {
            (a.k, a.key)
        } else {
            (b.k, b.key)
        };
        Best { k, key, examined: a.examined + b.examined, evaluated: a.evaluated + b.evaluated }
    }
}

fn labeled_graph(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let mut b = GraphBuilder::new(n);
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            b.add_edge(u, v).expect("in range");
        }
    }
    b.build()
}

fn labeled(n: usize) -> KTable {
    let ps = pairs(n);
    let total: u64 = 1 << ps.len();
    let chunk_bits = ps.len().min(10);
    let chunks: u64 = 1 << chunk_bits;
    let per_chunk = total / chunks;
    let best = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut best = Best { k: 1, key: 0, examined: 0, evaluated: 0 };
            let mut degrees = vec![0usize; n];
            for mask in c * per_chunk..(c + 1) * per_chunk {
                best.examined += 1;
                degrees.iter_mut().for_each(|d| *d = 0);
                for (i, &(u, v)) in ps.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        degrees[u] += 1;
                        degrees[v] += 1;
                    }
                }
                if !may_improve(&degrees, n, best.k) {
                    continue;
                }
                best.evaluated += 1;
                let g = labeled_graph(n, &ps, mask);
                let k = ExactOracle::new(&g).k_of_graph();
                if k > best.k {
                    best.k = k;
                    best.key = mask;
                }
            }
            best
        })
        .reduce_with(Best::merge)
        .expect("at least one chunk");
    KTable {
        n,
        k_of_n: best.k,
        witness: labeled_graph(n, &ps, best.key),
        mode: EnumMode::Labeled,
        graphs_examined: best.examined,
        graphs_evaluated: best.evaluated,
        exhaustive: true,
    }
}

/// Accepted children of `parent`, each relabelled canonically.
fn augment(parent: &SmallGraph) -> Vec<(u64, SmallGraph)> {
    let m = parent.n();
    let fresh = m;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for nbrs in 0u16..(1 << m) {
        let child = parent.with_vertex(nbrs);
        let (form, order) = canonical_form(&child);
        let last = *order.last().expect("nonempty") as usize;
        if !same_orbit(&child, fresh, last) {
            continue;
        }
        if seen.insert(form) {
            out.push((form, child.relabel(&order)));
        }
    }
    out
}

/// One representative per isomorphism class of `n`-vertex graphs, in a
/// deterministic order.
pub fn nonisomorphic_graphs(n: usize) -> Vec<SmallGraph> {
    assert!((1..=MAX_CANON).contains(&n));
    let mut level = vec![SmallGraph::empty(1)];
    for _ in 1..n {
        level = level.par_iter().flat_map_iter(|p| augment(p).into_iter().map(|(_, g)| g)).collect();
    }
    level
}

fn degrees_small(g: &SmallGraph) -> Vec<usize> {
    (0..g.n()).map(|v| g.row(v).count_ones() as usize).collect()
}

fn canonical(n: usize) -> KTable {
    let parents = if n == 1 { Vec::new() } else { nonisomorphic_graphs(n - 1) };
    let evaluate = |best: &mut Best, form: u64, g: &SmallGraph| {
        best.examined += 1;
        if !may_improve(&degrees_small(g), n, best.k) {
            return;
        }
        best.evaluated += 1;
        let k = ExactOracle::new(&g.to_graph()).k_of_graph();
        if (k, std::cmp::Reverse(form)) > (best.k, std::cmp::Reverse(best.key)) {
            best.k = k;
            best.key = form;
        }
    };
    let best = if n == 1 {
        let mut b = Best { k: 1, key: 0, examined: 0, evaluated: 0 };
        evaluate(&mut b, 0, &SmallGraph::empty(1));
        b
    } else {
        parents
            .par_iter()
            .map(|p| {
                let mut b = Best { k: 1, key: u64::MAX, examined: 0, evaluated: 0 };
                for (form, child) in augment(p) {
                    evaluate(&mut b, form, &child);
                }
                b
            })
            .reduce_with(Best::merge)
            .expect("nonempty level")
    };
    KTable {
        n,
        k_of_n: best.k,
        witness: witness_from_form(n, best.key),
        mode: EnumMode::Canonical,
        graphs_examined: best.examined,
        graphs_evaluated: best.evaluated,
        exhaustive: true,
    }
}

/// Inverse of the canonical-form packing (upper triangle, row-major, most
/// significant bit first). `u64::MAX` means "no graph beat k = 1": the
/// edgeless graph is returned, which is 1-enabling.
fn witness_from_form(n: usize, form: u64) -> Graph {
    if form == u64::MAX {
        return Graph::empty(n);
    }
    let ps = pairs(n);
    let len = ps.len();
    let edges: Vec<_> = ps.iter().enumerate().filter(|(i, _)| form >> (len - 1 - i) & 1 == 1).map(|(_, &p)| p).collect();
    Graph::from_edges(n, &edges).expect("in range")
}

/// Exact `k(n)` over every n-vertex graph.
pub fn k_of_n_exhaustive(n: usize, mode: EnumMode) -> Result<KTable, EnumError> {
    if n == 0 {
        return Err(EnumError::ZeroN);
    }
    if n > mode.cap() {
        return Err(EnumError::TooLarge { mode, n, cap: mode.cap() });
    }
    Ok(match mode {
        EnumMode::Labeled => labeled(n),
        EnumMode::Canonical => canonical(n),
    })
}

/// As [`k_of_n_exhaustive`], on a dedicated pool of `threads` workers.
pub fn k_of_n_with_threads(n: usize, mode: EnumMode, threads: usize) -> Result<KTable, EnumError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| EnumError::ThreadPool(e.to_string()))?;
    pool.install(|| k_of_n_exhaustive(n, mode))
}

/// Smallest n admitting a k-enabling graph, for k <= 3.
pub fn n_of_k_small(k: usize) -> Result<usize, EnumError> {
    if !(1..=3).contains(&k) {
        return Err(EnumError::KTooLarge(k));
    }
    for n in 1..=CANONICAL_CAP {
        if k_of_n_exhaustive(n, EnumMode::Canonical)?.k_of_n >= k {
            return Ok(n);
        }
    }
    unreachable!("4P_2 is 3-enabling on 8 vertices")
}
