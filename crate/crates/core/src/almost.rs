//! ε-almost cliques and independent sets, and the recursive min-degree
//! search that either finds a large ε-almost clique or certifies that no
//! k-clique exists.
//!
//! A set `C` is an ε-almost clique when every member has at least
//! `(1 - ε)|C|` neighbours inside `C`; an ε-almost independent set allows at
//! most `ε|I|` neighbours inside. All comparisons are exact rationals.

use crate::graph::{Graph, VertexSet};
use crate::oracle::Side;
use crate::ratio::{int, Rational};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlmostError {
    #[error("eps = {eps} is below 2/k = {bound}; the search needs eps >= 2/k")]
    EpsTooSmall { eps: Rational, bound: Rational },
    #[error("k must be at least 1")]
    ZeroK,
    #[error("eps must be positive, got {0}")]
    NonPositiveEps(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostStructure {
    pub kind: Side,
    pub vertices: VertexSet,
    pub eps: Rational,
}

impl AlmostStructure {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Degree condition for every member, plus `eps*|S| >= 1` when nonempty.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let big_enough = self.is_empty() || self.eps * int(self.len() as i128) >= Rational::one();
        big_enough && check_almost(g, &self.vertices, self.kind, self.eps).holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostCheck {
    pub holds: bool,
    pub violators: Vec<usize>,
}

/// Checks the ε-degree condition on every member of `s`.
pub fn check_almost(g: &Graph, s: &VertexSet, kind: Side, eps: Rational) -> AlmostCheck {
    let size = int(s.len() as i128);
    let violators: Vec<usize> = s
        .iter()
        .filter(|&v| {
            let deg = int(g.degree_in(v, s) as i128);
            match kind {
                Side::Clique => deg < (Rational::one() - eps) * size,
                Side::IndependentSet => deg > eps * size,
            }
        })
        .collect();
    AlmostCheck { holds: violators.is_empty(), violators }
}

/// Largest independent set an ε-almost clique can hold: `floor(ε|C|)`.
pub fn max_is_bound_in_almost_clique(c: &AlmostStructure) -> usize {
    debug_assert_eq!(c.kind, Side::Clique);
    (c.eps * int(c.len() as i128)).floor().to_integer() as usize
}

/// Largest clique an ε-almost independent set can hold: `floor(ε|I|) + 1`.
pub fn max_clique_bound_in_almost_is(i: &AlmostStructure) -> usize {
    debug_assert_eq!(i.kind, Side::IndependentSet);
    (i.eps * int(i.len() as i128)).floor().to_integer() as usize + 1
}

/// `|C ∩ I| <= ε(|C| + |I|)`, with ε the larger of the two structures' ε.
pub fn check_intersection_lemma(c: &AlmostStructure, i: &AlmostStructure) -> bool {
    let eps = c.eps.max(i.eps);
    int(c.vertices.intersection_len(&i.vertices) as i128) <= eps * int((c.len() + i.len()) as i128)
}

/// Disjoint ε-almost cliques and disjoint ε-almost independent sets.
#[derive(Debug, Clone)]
pub struct EpsMSystem {
    pub cliques: Vec<AlmostStructure>,
    pub iss: Vec<AlmostStructure>,
    pub eps: Rational,
}

impl EpsMSystem {
    /// Order of the system: shorter family padded with empty sets.
    pub fn m(&self) -> usize {
        self.cliques.len().max(self.iss.len())
    }

    pub fn families_disjoint(&self) -> bool {
        fn disjoint(family: &[AlmostStructure]) -> bool {
            family.iter().enumerate().all(|(i, a)| family[i + 1..].iter().all(|b| a.vertices.is_disjoint(&b.vertices)))
        }
        disjoint(&self.cliques) && disjoint(&self.iss)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSize {
    /// Cardinality of the union of every set.
    pub union: usize,
    /// `Σ|I_i| + Σ|C_i|`.
    pub total: usize,
    /// `(1 - mε) * total`.
    pub lower_bound: Rational,
    pub holds: bool,
}

/// Size of the system and the check `union >= (1 - mε)(Σ|I_i| + Σ|C_i|)`.
pub fn system_size(sys: &EpsMSystem) -> SystemSize {
    let mut all = sys.cliques.iter().chain(&sys.iss);
    let union = match all.next() {
        None => return SystemSize { union: 0, total: 0, lower_bound: Rational::zero(), holds: true },
        Some(first) => all.fold(first.vertices.clone(), |acc, s| acc.union(&s.vertices)).len(),
    };
    let total: usize = sys.cliques.iter().chain(&sys.iss).map(AlmostStructure::len).sum();
    let lower_bound = (Rational::one() - int(sys.m() as i128) * sys.eps) * int(total as i128);
    SystemSize { union, total, holds: int(union as i128) >= lower_bound, lower_bound }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FindResult {
    /// The input certainly has no clique of the target size.
    NoClique,
    /// An ε-almost clique of at least the target size.
    Acceptable(AlmostStructure),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FindOutcome {
    pub result: FindResult,
    /// Recursive invocations, including the peeling steps.
    pub calls: u64,
}

struct Finder<'g> {
    g: &'g Graph,
    k: usize,
    keep: Rational,
    calls: u64,
}

impl Finder<'_> {
    fn search(&mut self, mut s: VertexSet) -> Option<VertexSet> {
        loop {
            self.calls += 1;
            let size = s.len();
            if size < self.k || size == 0 {
                return None;
            }
            let (v, h) = s.iter().map(|v| (v, self.g.degree_in(v, &s))).min_by_key(|&(v, d)| (d, v)).expect("nonempty");
            // a complete set is returned even when eps*|S| < 1 would make the
            // degree test fail; otherwise the neighbourhood branch is S again
            if h + 1 == size || int(h as i128) >= self.keep * int(size as i128) {
                return Some(s);
            }
            let mut closed = s.clone();
            closed.intersect_words(self.g.row(v));
            closed.insert(v);
            if let Some(found) = self.search(closed) {
                return Some(found);
            }
            s.remove(v);
        }
    }
}

/// The search restricted to `within`, without the `ε >= 2/k` precondition.
///
/// `NoClique` is sound for every `ε > 0`: a k-clique survives into one of
/// the two branches at every step. When `ε|S| < 1` a returned set may be a
/// true clique that fails the ε-degree test; its `eps` is then raised to
/// `1/|S|`, the smallest value for which it qualifies.
pub fn find_acceptable_within(g: &Graph, within: &VertexSet, k: usize, eps: Rational) -> FindOutcome {
    let mut f = Finder { g, k: k.max(1), keep: Rational::one() - eps, calls: 0 };
    let found = f.search(within.clone());
    let result = match found {
        None => FindResult::NoClique,
        Some(vertices) => {
            let size = int(vertices.len() as i128);
            let own_eps = if eps * size >= Rational::one() { eps } else { eps.max(Rational::one() / size) };
            let s = AlmostStructure { kind: Side::Clique, vertices, eps: own_eps };
            debug_assert!(s.is_valid_in(g));
            FindResult::Acceptable(s)
        }
    };
    FindOutcome { result, calls: f.calls }
}

fn check_params(k: usize, eps: Rational) -> Result<(), AlmostError> {
    if k == 0 {
        return Err(AlmostError::ZeroK);
    }
    if !eps.is_positive() {
        return Err(AlmostError::NonPositiveEps(eps));
    }
    let bound = Rational::new(2, k as i128);
    if eps < bound {
        return Err(AlmostError::EpsTooSmall { eps, bound });
    }
    Ok(())
}

/// Either an ε-almost clique with at least `k` vertices, or a certificate
/// that `g` has no k-clique. Requires `ε >= 2/k`.
pub fn find_acceptable_graph(g: &Graph, k: usize, eps: Rational) -> Result<FindOutcome, AlmostError> {
    check_params(k, eps)?;
    Ok(find_acceptable_within(g, &g.vertices(), k, eps))
}

/// The dual search: an ε-almost independent set of size `>= k`, or a
/// certificate that `g` has no independent set of size `k`.
pub fn find_acceptable_is(g: &Graph, k: usize, eps: Rational) -> Result<FindOutcome, AlmostError> {
    let mut out = find_acceptable_graph(&g.complement(), k, eps)?;
    if let FindResult::Acceptable(s) = &mut out.result {
        s.kind = Side::IndependentSet;
    }
    Ok(out)
}

/// Upper bound on [`FindOutcome::calls`] for an input of `n` vertices:
/// `E(s) = 1` for `s < k`, otherwise
/// `E(s) = 1 + E(min(s - 1, ceil((1 - ε)s))) + E(s - 1)`.
pub fn recursion_envelope(n: usize, k: usize, eps: Rational) -> u128 {
    let keep = Rational::one() - eps;
    let mut table = vec![1u128; n + 1];
    for s in k.max(1)..=n {
        let dense = (keep * int(s as i128)).ceil().to_integer().clamp(0, s as i128 - 1) as usize;
        let v = 1u128.saturating_add(table[dense]).saturating_add(table[s - 1]);
        table[s] = v;
    }
    table[n]
}
