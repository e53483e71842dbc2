//! Canonical forms for small graphs (at most [`MAX_CANON`] vertices).
//!
//! Equitable-partition refinement followed by an individualisation search
//! over the first non-singleton cell. Vertices of the target cell that are
//! twins of an already-explored vertex are skipped: the transposition of two
//! twins is an automorphism fixing everything individualised so far, so
//! both subtrees carry the same leaf forms. The canonical form is the
//! smallest upper-triangle adjacency word over all leaves.

use crate::graph::{Graph, GraphBuilder};

pub const MAX_CANON: usize = 11;

/// Adjacency rows as 16-bit masks.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SmallGraph {
    n: usize,
    rows: [u16; 16],
}

impl SmallGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_CANON);
        SmallGraph { n, rows: [0; 16] }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut s = SmallGraph::empty(g.n());
        for (u, v) in g.edges() {
            s.rows[u] |= 1 << v;
            s.rows[v] |= 1 << u;
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, v: usize) -> u16 {
        self.rows[v]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    /// Appends vertex `n` adjacent to `nbrs`.
    pub fn with_vertex(&self, nbrs: u16) -> SmallGraph {
        let mut g = *self;
        let v = self.n;
        assert!(v < MAX_CANON);
        g.n += 1;
        g.rows[v] = nbrs;
        for u in 0..self.n {
            if nbrs >> u & 1 == 1 {
                g.rows[u] |= 1 << v;
            }
        }
        g
    }

    /// Graph whose vertex `i` is `order[i]` of `self`.
    pub fn relabel(&self, order: &[u8]) -> SmallGraph {
        let mut g = SmallGraph::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.adjacent(order[i] as usize, order[j] as usize) {
                    g.rows[i] |= 1 << j;
                    g.rows[j] |= 1 << i;
                }
            }
        }
        g
    }

    pub fn to_graph(&self) -> Graph {
        let mut b = GraphBuilder::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) {
                    b.add_edge(u, v).expect("in range");
                }
            }
        }
        b.build()
    }

    fn twins(&self, x: usize, y: usize) -> bool {
        self.rows[x] & !(1 << y) == self.rows[y] & !(1 << x)
    }

    /// Upper-triangle adjacency bits of `self` listed in `order`.
    fn form(&self, order: &[u8]) -> u64 {
        let mut w = 0u64;
        for i in 0..self.n {
            let ri = self.rows[order[i] as usize];
            for &oj in &order[i + 1..self.n] {
                w = w << 1 | (ri >> oj & 1) as u64;
            }
        }
        w
    }
}

/// Ordered partition: `order` lists vertices, bit `p` of `starts` marks the
/// first position of a cell.
#[derive(Clone, Copy)]
struct Partition {
    n: usize,
    order: [u8; 16],
    starts: u16,
}

impl Partition {
    fn cell_end(&self, start: usize) -> usize {
        let mut e = start + 1;
        while e < self.n && self.starts >> e & 1 == 0 {
            e += 1;
        }
        e
    }

    fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n);
        let mut s = 0;
        while s < self.n {
            let e = self.cell_end(s);
            out.push((s, e));
            s = e;
        }
        out
    }

    fn mask(&self, s: usize, e: usize) -> u16 {
        self.order[s..e].iter().fold(0, |m, &v| m | 1 << v)
    }

    fn discrete(&self) -> bool {
        self.starts.count_ones() as usize == self.n
    }

    /// Splits cells by neighbour counts into splitter cells until stable.
    fn refine(&mut self, g: &SmallGraph) {
        'restart: loop {
            let cells = self.cells();
            for &(ss, se) in &cells {
                let smask = self.mask(ss, se);
                for &(cs, ce) in &cells {
                    if ce - cs < 2 {
                        continue;
                    }
                    let count = |v: u8| (g.row(v as usize) & smask).count_ones();
                    let first = count(self.order[cs]);
                    if self.order[cs + 1..ce].iter().all(|&v| count(v) == first) {
                        continue;
                    }
                    let seg = &mut self.order[cs..ce];
                    seg.sort_by_key(|&v| count(v));
                    for p in cs + 1..ce {
                        if count(self.order[p]) != count(self.order[p - 1]) {
                            self.starts |= 1 << p;
                        }
                    }
                    continue 'restart;
                }
            }
            return;
        }
    }
}

struct Search<'a> {
    g: &'a SmallGraph,
    best: Option<(u64, [u8; 16])>,
}

impl Search<'_> {
    fn run(&mut self, mut p: Partition) {
        p.refine(self.g);
        if p.discrete() {
            let form = self.g.form(&p.order);
            if self.best.is_none_or(|(b, _)| form < b) {
                self.best = Some((form, p.order));
            }
            return;
        }
        let (s, e) = p.cells().into_iter().find(|&(s, e)| e - s > 1).expect("not discrete");
        let mut tried: Vec<u8> = Vec::new();
        for i in s..e {
            let x = p.order[i];
            if tried.iter().any(|&y| self.g.twins(x as usize, y as usize)) {
                continue;
            }
            tried.push(x);
            let mut child = p;
            child.order.swap(s, i);
            child.starts |= 1 << (s + 1);
            self.run(child);
        }
    }
}

/// Canonical form and labelling of `g` under a vertex colouring.
/// `order[i]` is the vertex placed at canonical position `i`; colour
/// classes occupy consecutive positions in ascending colour order.
pub fn canonical_form_coloured(g: &SmallGraph, colours: &[u8]) -> (u64, Vec<u8>) {
    let n = g.n();
    if n == 0 {
        return (0, Vec::new());
    }
    debug_assert_eq!(colours.len(), n);
    let mut verts: Vec<u8> = (0..n as u8).collect();
    verts.sort_by_key(|&v| (colours[v as usize], v));
    let mut p = Partition { n, order: [0; 16], starts: 1 };
    p.order[..n].copy_from_slice(&verts);
    for i in 1..n {
        if colours[verts[i] as usize] != colours[verts[i - 1] as usize] {
            p.starts |= 1 << i;
        }
    }
    let mut search = Search { g, best: None };
    search.run(p);
    let (form, order) = search.best.expect("at least one leaf");
    (form, order[..n].to_vec())
}

pub fn canonical_form(g: &SmallGraph) -> (u64, Vec<u8>) {
    canonical_form_coloured(g, &vec![0; g.n()])
}

/// True iff some automorphism of `g` maps `x` to `y`.
pub fn same_orbit(g: &SmallGraph, x: usize, y: usize) -> bool {
    if x == y {
        return true;
    }
    let mut cx = vec![0u8; g.n()];
    cx[x] = 1;
    let mut cy = vec![0u8; g.n()];
    cy[y] = 1;
    canonical_form_coloured(g, &cx).0 == canonical_form_coloured(g, &cy).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_small(n: usize, rng: &mut ChaCha8Rng) -> SmallGraph {
        let mut g = SmallGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.5) {
                    g.rows[u] |= 1 << v;
                    g.rows[v] |= 1 << u;
                }
            }
        }
        g
    }

    /// Minimum form over all n! orderings.
    fn brute_form(g: &SmallGraph) -> u64 {
        fn rec(g: &SmallGraph, order: &mut Vec<u8>, used: u16, best: &mut u64) {
            if order.len() == g.n() {
                *best = (*best).min(g.form(order));
                return;
            }
            for v in 0..g.n() as u8 {
                if used >> v & 1 == 0 {
                    order.push(v);
                    rec(g, order, used | 1 << v, best);
                    order.pop();
                }
            }
        }
        let mut best = u64::MAX;
        rec(g, &mut Vec::new(), 0, &mut best);
        best
    }

    #[test]
    fn invariant_under_relabelling() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=9 {
            for _ in 0..30 {
                let g = random_small(n, &mut rng);
                let mut perm: Vec<u8> = (0..n as u8).collect();
                perm.shuffle(&mut rng);
                let h = g.relabel(&perm);
                let (fg, og) = canonical_form(&g);
                let (fh, _) = canonical_form(&h);
                assert_eq!(fg, fh);
                assert_eq!(g.relabel(&og).form(&(0..n as u8).collect::<Vec<_>>()), fg);
            }
        }
    }

    #[test]
    fn separates_non_isomorphic() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 2..=6 {
            for _ in 0..20 {
                let g = random_small(n, &mut rng);
                let h = random_small(n, &mut rng);
                let iso = brute_form(&g) == brute_form(&h);
                assert_eq!(canonical_form(&g).0 == canonical_form(&h).0, iso);
            }
        }
    }

    #[test]
    fn symmetric_graphs_are_cheap() {
        let e = SmallGraph::empty(11);
        assert_eq!(canonical_form(&e).0, 0);
        let k = SmallGraph::from_graph(&Graph::complete(11));
        assert_eq!(canonical_form(&k).0, (1u64 << 55) - 1);
    }

    #[test]
    fn orbits_of_a_path() {
        let p4 = SmallGraph::from_graph(&Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap());
        assert!(same_orbit(&p4, 0, 3));
        assert!(same_orbit(&p4, 1, 2));
        assert!(!same_orbit(&p4, 0, 1));
    }
}
