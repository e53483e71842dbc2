//! Graph families: the blown-up path `4P_d`, random and planted models,
//! and the two hardness constructions (reduction from per-vertex
//! independent-set membership, and isolated-vertex padding).

use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::ratio::Rational;
use num_traits::{Signed, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::ops::Range;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenError {
    #[error("cluster size d must be at least 1")]
    ZeroClusterSize,
    #[error("edge probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("planted size {size} exceeds vertex count {n}")]
    PlantTooLarge { size: usize, n: usize },
    #[error("k must be at least 1")]
    ZeroK,
    #[error("eps must be positive, got {0}")]
    NonPositiveEps(Rational),
    #[error("eps*k = {0} is not an integer")]
    EpsKNotInteger(Rational),
    #[error("eps*k/6 = {0} is not an integer")]
    EpsKSixthNotInteger(Rational),
    #[error("eps*k/6 = {threshold} exceeds k = {k}, so the excluded set would be negative")]
    ThresholdExceedsK { threshold: usize, k: usize },
    #[error("g1 has {actual} vertices but eps*k = {expected}")]
    WrongG1Size { expected: usize, actual: usize },
}

/// The four clusters of `4P_d`, in path order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cluster {
    ExternalA,
    InternalB,
    InternalC,
    ExternalD,
}

impl Cluster {
    pub const ALL: [Cluster; 4] = [Cluster::ExternalA, Cluster::InternalB, Cluster::InternalC, Cluster::ExternalD];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_internal(self) -> bool {
        matches!(self, Cluster::InternalB | Cluster::InternalC)
    }
}

/// Cluster membership of every vertex of a `4P_d`. Cluster `i` occupies ids
/// `i*d .. (i+1)*d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterLayout {
    pub d: usize,
    pub assignment: Vec<Cluster>,
}

impl ClusterLayout {
    pub fn range(&self, c: Cluster) -> Range<usize> {
        c.index() * self.d..(c.index() + 1) * self.d
    }

    pub fn cluster_of(&self, v: usize) -> Cluster {
        self.assignment[v]
    }
}

/// `4P_d`: a path `A - B - C - D` with every vertex blown up into `d` copies.
/// Internal clusters are cliques, external clusters independent sets, and
/// consecutive clusters are joined completely.
pub fn gen_4pd(d: usize) -> Result<(Graph, ClusterLayout), GenError> {
    if d == 0 {
        return Err(GenError::ZeroClusterSize);
    }
    let n = 4 * d;
    let assignment: Vec<Cluster> = (0..n).map(|v| Cluster::ALL[v / d]).collect();
    let layout = ClusterLayout { d, assignment };
    let mut b = GraphBuilder::new(n);
    for c in [Cluster::InternalB, Cluster::InternalC] {
        let r = layout.range(c);
        for u in r.clone() {
            for v in u + 1..r.end {
                b.add_edge(u, v).expect("in range");
            }
        }
    }
    for pair in Cluster::ALL.windows(2) {
        for u in layout.range(pair[0]) {
            for v in layout.range(pair[1]) {
                b.add_edge(u, v).expect("in range");
            }
        }
    }
    Ok((b.build(), layout))
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gnp_builder(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Result<GraphBuilder, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::BadProbability(p));
    }
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                b.add_edge(u, v).expect("in range");
            }
        }
    }
    Ok(b)
}

/// Erdős–Rényi `G(n, p)`. Pairs are drawn in lexicographic order from a
/// ChaCha8 stream seeded with `seed`.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    let mut rng = rng_for(seed);
    Ok(gnp_builder(n, p, &mut rng)?.build())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlantKind {
    Clique,
    IndependentSet,
}

/// `G(n, p)` with a uniformly chosen `size`-subset overwritten into a clique
/// or an independent set.
pub fn gen_planted(n: usize, p: f64, size: usize, kind: PlantKind, seed: u64) -> Result<(Graph, VertexSet), GenError> {
    if size > n {
        return Err(GenError::PlantTooLarge { size, n });
    }
    let mut rng = rng_for(seed);
    let mut b = gnp_builder(n, p, &mut rng)?;
    let mut members: Vec<usize> = sample(&mut rng, n, size).into_vec();
    members.sort_unstable();
    let present = kind == PlantKind::Clique;
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            b.set_edge(u, v, present).expect("in range");
        }
    }
    let planted = VertexSet::from_ids(n, members).expect("sampled ids are in range");
    Ok((b.build(), planted))
}

/// Bookkeeping for [`gen_hardness_reduction`]. Ids refer to the output graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionLayout {
    pub k: usize,
    pub layout: ClusterLayout,
    /// Vertices of the `4P_k` joined completely to `g1`.
    pub s: VertexSet,
    /// The `k - eps*k/6` lowest ids of external cluster A; not joined to `g1`.
    pub t: VertexSet,
    /// `g1` vertex `i` is output vertex `g1_offset + i`.
    pub g1_offset: usize,
    pub g1_size: usize,
    /// `eps*k/6`: the independent-set size each `g1` vertex must reach.
    pub threshold: usize,
}

fn exact_usize(r: &Rational) -> Option<usize> {
    (r.is_integer() && !r.is_negative()).then(|| r.to_integer() as usize)
}

/// Embeds `g1` (on `eps*k` vertices) next to `4P_k`, joining it completely
/// to every `4P_k` vertex except `k - eps*k/6` vertices of one external
/// cluster. The result has `(4 + eps)k` vertices and is `k`-enabling exactly
/// when every `g1` vertex lies in an independent set of size `eps*k/6`.
pub fn gen_hardness_reduction(g1: &Graph, k: usize, eps: Rational) -> Result<(Graph, ReductionLayout), GenError> {
    if k == 0 {
        return Err(GenError::ZeroK);
    }
    if eps.is_zero() || eps.is_negative() {
        return Err(GenError::NonPositiveEps(eps));
    }
    let eps_k = eps * Rational::from_integer(k as i128);
    let g1_size = exact_usize(&eps_k).ok_or(GenError::EpsKNotInteger(eps_k))?;
    let sixth = eps_k / Rational::from_integer(6);
    let threshold = exact_usize(&sixth).ok_or(GenError::EpsKSixthNotInteger(sixth))?;
    if threshold > k {
        return Err(GenError::ThresholdExceedsK { threshold, k });
    }
    if g1.n() != g1_size {
        return Err(GenError::WrongG1Size { expected: g1_size, actual: g1.n() });
    }

    let (base, layout) = gen_4pd(k)?;
    let offset = base.n();
    let n = offset + g1_size;
    let mut b = GraphBuilder::new(n);
    for (u, v) in base.edges() {
        b.add_edge(u, v).expect("in range");
    }
    for (u, v) in g1.edges() {
        b.add_edge(offset + u, offset + v).expect("in range");
    }
    let a = layout.range(Cluster::ExternalA);
    let t = VertexSet::from_ids(n, a.start..a.start + (k - threshold)).expect("in range");
    let s = VertexSet::from_ids(n, (0..offset).filter(|v| !t.contains(*v))).expect("in range");
    for u in s.iter() {
        for w in offset..n {
            b.add_edge(u, w).expect("in range");
        }
    }
    let meta = ReductionLayout { k, layout, s, t, g1_offset: offset, g1_size, threshold };
    Ok((b.build(), meta))
}

/// `g` followed by `count` isolated vertices.
pub fn append_isolated(g: &Graph, count: usize) -> Graph {
    let mut b = GraphBuilder::new(g.n() + count);
    for (u, v) in g.edges() {
        b.add_edge(u, v).expect("in range");
    }
    b.build()
}
