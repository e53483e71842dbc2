//! Immutable undirected simple graphs with bit-packed adjacency rows.
//!
//! Rows are stored as 64-bit words; every set query (degree into a set,
//! neighbourhood intersection) reduces to word-wise AND plus popcount.

use std::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("edge ({v}, {v}) is a self-loop")]
    SelfLoop { v: usize },
    #[error("vertex {v} is outside 0..{n}")]
    VertexOutOfRange { v: usize, n: usize },
}

/// A set of vertex ids drawn from `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet { universe, words: vec![0; words_for(universe)] }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = VertexSet { universe, words: vec![!0u64; words_for(universe)] };
        s.clear_padding();
        s
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(universe: usize, ids: I) -> Result<Self, GraphError> {
        let mut s = Self::empty(universe);
        for v in ids {
            if v >= universe {
                return Err(GraphError::VertexOutOfRange { v, n: universe });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub(crate) fn from_words(universe: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(universe));
        let mut s = VertexSet { universe, words };
        s.clear_padding();
        s
    }

    fn clear_padding(&mut self) {
        let rem = self.universe % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        self.words[v / WORD] |= 1u64 << (v % WORD);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        if v < self.universe {
            self.words[v / WORD] &= !(1u64 << (v % WORD));
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones { words: &self.words, idx: 0, cur: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_words(&other.words);
        out
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out
    }

    /// Complement within `0..universe`.
    pub fn complement(&self) -> VertexSet {
        let words = self.words.iter().map(|w| !w).collect();
        VertexSet::from_words(self.universe, words)
    }

    #[inline]
    pub(crate) fn intersect_words(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a &= b;
        }
    }

    #[inline]
    pub(crate) fn union_words(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a |= b;
        }
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        popcount_and(&self.words, &other.words)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + bit);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

#[inline]
pub(crate) fn popcount_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// Mutable adjacency used while a graph is being assembled.
#[derive(Clone)]
pub struct GraphBuilder {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        let stride = words_for(n);
        GraphBuilder { n, stride, bits: vec![0; n * stride] }
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphBuilder { n: g.n, stride: g.stride, bits: g.bits.clone() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::EndpointOutOfRange { u, v, n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop { v });
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self, GraphError> {
        self.set_edge(u, v, true)
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) -> Result<&mut Self, GraphError> {
        self.check(u, v)?;
        let (iu, iv) = (u * self.stride + v / WORD, v * self.stride + u / WORD);
        if present {
            self.bits[iu] |= 1u64 << (v % WORD);
            self.bits[iv] |= 1u64 << (u % WORD);
        } else {
            self.bits[iu] &= !(1u64 << (v % WORD));
            self.bits[iv] &= !(1u64 << (u % WORD));
        }
        Ok(self)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.stride + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn build(self) -> Graph {
        let g = Graph { n: self.n, stride: self.stride, bits: self.bits };
        debug_assert!(g.check_invariants(), "builder produced an asymmetric or looped graph");
        g
    }
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// Builds a graph from unordered pairs; duplicate pairs collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).build()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::empty(n).complement()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.stride..(v + 1) * self.stride]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.stride + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of neighbours of `v` inside `s`.
    #[inline]
    pub fn degree_in(&self, v: usize, s: &VertexSet) -> usize {
        debug_assert_eq!(s.universe(), self.n);
        popcount_and(self.row(v), s.words())
    }

    pub fn neighbors(&self, v: usize) -> Ones<'_> {
        let row = self.row(v);
        Ones { words: row, idx: 0, cur: row.first().copied().unwrap_or(0) }
    }

    pub fn neighborhood(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v).to_vec())
    }

    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.neighborhood(v);
        s.insert(v);
        s
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let mut bits: Vec<u64> = self.bits.iter().map(|w| !w).collect();
        let rem = self.n % WORD;
        for v in 0..self.n {
            let row = &mut bits[v * self.stride..(v + 1) * self.stride];
            if rem != 0 {
                row[self.stride - 1] &= (1u64 << rem) - 1;
            }
            row[v / WORD] &= !(1u64 << (v % WORD));
        }
        Graph { n: self.n, stride: self.stride, bits }
    }

    /// Subgraph induced by `s`. Vertex `i` of the result is `remap[i]` in `self`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let remap = s.to_vec();
        let mut b = GraphBuilder::new(remap.len());
        for (i, &u) in remap.iter().enumerate() {
            for (j, &v) in remap.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.add_edge(i, j).expect("remapped ids are in range");
                }
            }
        }
        (b.build(), remap)
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.degree_in(v, s) + 1 == s.len())
    }

    pub fn is_independent_set(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.degree_in(v, s) == 0)
    }

    /// Symmetric, loop-free, no bits beyond `n`.
    pub fn check_invariants(&self) -> bool {
        let rem = self.n % WORD;
        for u in 0..self.n {
            let row = self.row(u);
            if row[u / WORD] >> (u % WORD) & 1 == 1 {
                return false;
            }
            if rem != 0 && row[self.stride - 1] >> rem != 0 {
                return false;
            }
            for v in self.neighbors(u) {
                if !self.has_edge(v, u) {
                    return false;
                }
            }
        }
        true
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}
