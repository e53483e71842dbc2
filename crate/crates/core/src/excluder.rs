//! Polynomial-time search for a k-excluding vertex when `n <= (4 - δ)k`.
//!
//! Each side grows a family of disjoint ε-almost cliques (the independent
//! set side runs the same code on the complement). A round either finds a
//! vertex that cannot lie in a k-structure of the other kind, or extends the
//! family by an almost clique of size at least `n_{j+1} = k - (c_j - t)`.
//! Completing `m` rounds on both sides is impossible in this regime, so it
//! is reported as an internal contradiction rather than silently ignored.

use crate::almost::{check_intersection_lemma, find_acceptable_within, AlmostStructure, FindResult};
use crate::bounds::{cj_floor, cj_floor_applies, derive_params, final_system_lower, in_regime, BoundError, ExcluderParams};
use crate::graph::{Graph, VertexSet};
use crate::oracle::{classify_all, Classification, ExactOracle, Side};
use crate::ratio::{int, Rational};
use num_traits::One;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reason {
    NoKClique,
    NoKIndependentSet,
}

impl Reason {
    /// The requirement the vertex fails.
    pub fn side(self) -> Side {
        match self {
            Reason::NoKClique => Side::Clique,
            Reason::NoKIndependentSet => Side::IndependentSet,
        }
    }

    pub fn of(side: Side) -> Reason {
        match side {
            Side::Clique => Reason::NoKClique,
            Side::IndependentSet => Reason::NoKIndependentSet,
        }
    }
}

/// One member of a family, as stored in certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureRecord {
    pub vertices: Vec<usize>,
    #[serde(with = "crate::ratio::serde_rational")]
    pub eps: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// The search on the whole side graph found no k-clique.
    WholeGraphNoClique { target: usize },
    /// The vertex lies in the union and has too few non-edges leaving it.
    FewOutsideNonEdges {
        structures: Vec<StructureRecord>,
        union_size: usize,
        outside_non_edges: usize,
        #[serde(with = "crate::ratio::serde_rational")]
        threshold: Rational,
    },
    /// The vertex lies outside the union; its candidate set has no clique
    /// of the target size.
    CandidateNoClique {
        structures: Vec<StructureRecord>,
        union_size: usize,
        non_edges_to_union: usize,
        target: i64,
        candidate: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionCertificate {
    pub vertex: usize,
    pub reason: Reason,
    /// Family that produced the certificate: `Clique` runs on the graph,
    /// `IndependentSet` on its complement.
    pub side: Side,
    pub round: usize,
    pub k: usize,
    pub params: ExcluderParams,
    pub evidence: Evidence,
}

/// A family of disjoint almost cliques in a side graph.
#[derive(Debug, Clone)]
pub struct SystemState {
    pub side: Side,
    pub structures: Vec<AlmostStructure>,
    pub union: VertexSet,
    /// Calls made by every search on this side.
    pub calls: u64,
}

impl SystemState {
    fn new(side: Side, n: usize) -> Self {
        SystemState { side, structures: Vec::new(), union: VertexSet::empty(n), calls: 0 }
    }

    /// `c_j`.
    pub fn union_size(&self) -> usize {
        self.union.len()
    }

    /// `j`, empty structures included.
    pub fn round(&self) -> usize {
        self.structures.len()
    }

    pub fn records(&self) -> Vec<StructureRecord> {
        self.structures.iter().map(|s| StructureRecord { vertices: s.vertices.to_vec(), eps: s.eps }).collect()
    }

    /// Structures in terms of the original graph.
    pub fn structures_in_original(&self) -> Vec<AlmostStructure> {
        self.structures.iter().map(|s| AlmostStructure { kind: self.side, ..s.clone() }).collect()
    }

    fn push(&mut self, s: AlmostStructure) {
        self.union = self.union.union(&s.vertices);
        self.structures.push(s);
    }
}

/// Forensic dump for an outcome the analysis rules out.
#[derive(Debug, Clone)]
pub struct Contradiction {
    pub message: String,
    pub clique_side: SystemState,
    pub is_side: Option<SystemState>,
}

#[derive(Debug, Clone)]
pub enum ExcluderOutcome {
    Certificate(ExclusionCertificate),
    /// `k <= K_δ`: every vertex classified exactly.
    SmallKFallback(Classification),
    InternalContradiction(Box<Contradiction>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExcluderError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("n = {n} exceeds (4 - delta) k = {bound} for k = {k}, delta = {delta}")]
    OutOfRegime { n: usize, k: usize, delta: Rational, bound: Rational },
    #[error(transparent)]
    Params(#[from] BoundError),
}

enum SideOutcome {
    Certificate(ExclusionCertificate),
    Completed,
    Broken(String),
}

struct SideRun<'a> {
    sg: &'a Graph,
    k: usize,
    params: &'a ExcluderParams,
    cj_floor_check: bool,
    state: SystemState,
}

impl SideRun<'_> {
    fn certificate(&self, vertex: usize, reason_side: Side, evidence: Evidence) -> SideOutcome {
        let reason = match self.state.side {
            Side::Clique => Reason::of(reason_side),
            Side::IndependentSet => Reason::of(reason_side.flip()),
        };
        SideOutcome::Certificate(ExclusionCertificate {
            vertex,
            reason,
            side: self.state.side,
            round: self.state.round(),
            k: self.k,
            params: self.params.clone(),
            evidence,
        })
    }

    fn threshold(&self) -> Rational {
        let cj = int(self.state.union_size() as i128);
        let j = int(self.state.round() as i128);
        int(self.k as i128) - self.params.eps * cj - j - Rational::one()
    }

    fn run(&mut self) -> SideOutcome {
        let n = self.sg.n();
        let eps = self.params.eps;
        let first = find_acceptable_within(self.sg, &self.sg.vertices(), self.k, eps);
        self.state.calls += first.calls;
        match first.result {
            FindResult::NoClique => {
                return self.certificate(0, Side::Clique, Evidence::WholeGraphNoClique { target: self.k });
            }
            FindResult::Acceptable(c) => self.state.push(c),
        }
        loop {
            if let Some(msg) = self.check_invariants() {
                return SideOutcome::Broken(msg);
            }
            let outside = self.state.union.complement();
            let threshold = self.threshold();
            let weak = self.state.union.iter().map(|u| (u, outside.len() - self.sg.degree_in(u, &outside))).find(|&(_, non)| int(non as i128) < threshold);
            if let Some((u, non)) = weak {
                let evidence = Evidence::FewOutsideNonEdges {
                    structures: self.state.records(),
                    union_size: self.state.union_size(),
                    outside_non_edges: non,
                    threshold,
                };
                return self.certificate(u, Side::IndependentSet, evidence);
            }
            if self.state.round() == self.params.m || outside.is_empty() {
                return SideOutcome::Completed;
            }
            let cj = self.state.union_size();
            let (v, t) = outside
                .iter()
                .map(|v| (v, cj - self.sg.degree_in(v, &self.state.union)))
                .max_by_key(|&(v, t)| (t, std::cmp::Reverse(v)))
                .expect("outside is nonempty");
            let target = self.k as i64 - (cj as i64 - t as i64);
            if target <= 0 {
                self.state.push(AlmostStructure { kind: Side::Clique, vertices: VertexSet::empty(n), eps });
                continue;
            }
            let mut candidate = self.sg.neighborhood(v).difference(&self.state.union);
            candidate.insert(v);
            let found = find_acceptable_within(self.sg, &candidate, target as usize, eps);
            self.state.calls += found.calls;
            match found.result {
                FindResult::NoClique => {
                    let evidence = Evidence::CandidateNoClique {
                        structures: self.state.records(),
                        union_size: cj,
                        non_edges_to_union: t,
                        target,
                        candidate: candidate.to_vec(),
                    };
                    return self.certificate(v, Side::Clique, evidence);
                }
                FindResult::Acceptable(c) => self.state.push(c),
            }
        }
    }

    fn check_invariants(&self) -> Option<String> {
        let s = &self.state;
        let total: usize = s.structures.iter().map(AlmostStructure::len).sum();
        if total != s.union_size() {
            return Some(format!("{:?} side: structures overlap after round {}", s.side, s.round()));
        }
        if let Some(bad) = s.structures.iter().position(|c| !c.is_valid_in(self.sg)) {
            return Some(format!("{:?} side: structure {} is not an almost clique", s.side, bad + 1));
        }
        let floor = cj_floor(s.round(), self.k);
        if self.cj_floor_check && s.union_size() < floor {
            return Some(format!("{:?} side: c_{} = {} is below {}", s.side, s.round(), s.union_size(), floor));
        }
        None
    }
}

fn run_side(g: &Graph, side: Side, k: usize, params: &ExcluderParams) -> (SideOutcome, SystemState) {
    let comp;
    let sg = match side {
        Side::Clique => g,
        Side::IndependentSet => {
            comp = g.complement();
            &comp
        }
    };
    let mut run = SideRun {
        sg,
        k,
        params,
        cj_floor_check: cj_floor_applies(g.n(), k, params),
        state: SystemState::new(side, g.n()),
    };
    let outcome = run.run();
    (outcome, run.state)
}

fn check_regime(n: usize, k: usize, delta: Rational) -> Result<ExcluderParams, ExcluderError> {
    if k == 0 {
        return Err(ExcluderError::ZeroK);
    }
    let params = derive_params(delta)?;
    if !in_regime(n, k, delta) {
        let bound = (int(4) - delta) * int(k as i128);
        return Err(ExcluderError::OutOfRegime { n, k, delta, bound });
    }
    Ok(params)
}

/// Finds a k-excluding vertex and the requirement it fails.
pub fn find_excluding_poly(g: &Graph, k: usize, delta: Rational) -> Result<ExcluderOutcome, ExcluderError> {
    let params = check_regime(g.n(), k, delta)?;
    if k <= params.k_min {
        return Ok(ExcluderOutcome::SmallKFallback(classify_all(g, k).expect("k >= 1")));
    }
    let contradiction = |message: String, clique_side, is_side| {
        Ok(ExcluderOutcome::InternalContradiction(Box::new(Contradiction { message, clique_side, is_side })))
    };
    let (outcome, clique_side) = run_side(g, Side::Clique, k, &params);
    match outcome {
        SideOutcome::Certificate(c) => return Ok(ExcluderOutcome::Certificate(c)),
        SideOutcome::Broken(msg) => return contradiction(msg, clique_side, None),
        SideOutcome::Completed => {}
    }
    let (outcome, is_side) = run_side(g, Side::IndependentSet, k, &params);
    match outcome {
        SideOutcome::Certificate(c) => Ok(ExcluderOutcome::Certificate(c)),
        SideOutcome::Broken(msg) => contradiction(msg, clique_side, Some(is_side)),
        SideOutcome::Completed => {
            let pairs = intersection_violations(&clique_side, &is_side);
            let lower = final_system_lower(k, &params);
            let msg = format!(
                "both sides completed {} rounds; 2(1-eps*m)(2-2/(m+1))k = {} {} n = {}; {} intersection violations",
                params.m,
                lower,
                if lower <= int(g.n() as i128) { "<=" } else { ">" },
                g.n(),
                pairs
            );
            contradiction(msg, clique_side, Some(is_side))
        }
    }
}

fn intersection_violations(cliques: &SystemState, iss: &SystemState) -> usize {
    let cs = cliques.structures_in_original();
    let is = iss.structures_in_original();
    cs.iter().flat_map(|c| is.iter().map(move |i| (c, i))).filter(|(c, i)| !check_intersection_lemma(c, i)).count()
}

/// Both families, each grown until its own side stops, in terms of the
/// original graph. Used to audit cross-family intersections.
#[derive(Debug, Clone)]
pub struct Harvest {
    pub cliques: Vec<AlmostStructure>,
    pub iss: Vec<AlmostStructure>,
    pub calls: u64,
}

impl Harvest {
    /// (pairs checked, pairs violating the intersection bound).
    pub fn intersection_audit(&self) -> (usize, usize) {
        let nonempty = |v: &Vec<AlmostStructure>| v.iter().filter(|s| !s.is_empty()).cloned().collect::<Vec<_>>();
        let (cs, is) = (nonempty(&self.cliques), nonempty(&self.iss));
        let bad = cs.iter().flat_map(|c| is.iter().map(move |i| (c, i))).filter(|(c, i)| !check_intersection_lemma(c, i)).count();
        (cs.len() * is.len(), bad)
    }
}

/// Runs both sides independently with the excluder's parameters.
pub fn harvest_structures(g: &Graph, k: usize, delta: Rational) -> Result<Harvest, ExcluderError> {
    let params = check_regime(g.n(), k, delta)?;
    let (_, c) = run_side(g, Side::Clique, k, &params);
    let (_, i) = run_side(g, Side::IndependentSet, k, &params);
    Ok(Harvest { cliques: c.structures_in_original(), iss: i.structures_in_original(), calls: c.calls + i.calls })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("certificate is for k = {cert}, expected k = {expected}")]
    WrongK { cert: usize, expected: usize },
    #[error("stored parameters do not match those derived from delta")]
    ParamsMismatch,
    #[error("vertex {vertex} is out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("evidence does not match the graph: {0}")]
    Evidence(String),
    #[error("exact oracle finds a {side:?} of size k through vertex {vertex}")]
    OracleDisagrees { vertex: usize, side: Side },
}

fn evidence_err<T>(msg: impl Into<String>) -> Result<T, VerifyError> {
    Err(VerifyError::Evidence(msg.into()))
}

/// Rebuilds and validates the stored family; returns its union.
fn replay_structures(sg: &Graph, records: &[StructureRecord], eps: Rational, union_size: usize) -> Result<VertexSet, VerifyError> {
    let n = sg.n();
    let mut union = VertexSet::empty(n);
    for (i, r) in records.iter().enumerate() {
        let vertices = VertexSet::from_ids(n, r.vertices.iter().copied()).map_err(|e| VerifyError::Evidence(e.to_string()))?;
        if vertices.len() != r.vertices.len() {
            return evidence_err(format!("structure {} repeats a vertex", i + 1));
        }
        if !vertices.is_disjoint(&union) {
            return evidence_err(format!("structure {} overlaps an earlier one", i + 1));
        }
        // a true clique is accepted at any eps; otherwise the run's eps applies
        let s = AlmostStructure { kind: Side::Clique, vertices, eps };
        if !(sg.is_clique(&s.vertices) || s.is_valid_in(sg)) {
            return evidence_err(format!("structure {} is not an eps-almost clique", i + 1));
        }
        union = union.union(&s.vertices);
    }
    if union.len() != union_size {
        return evidence_err(format!("union has {} vertices, certificate says {}", union.len(), union_size));
    }
    Ok(union)
}

fn replay_evidence(sg: &Graph, cert: &ExclusionCertificate) -> Result<(), VerifyError> {
    let eps = cert.params.eps;
    let k = cert.k;
    let v = cert.vertex;
    let own = match cert.side {
        Side::Clique => cert.reason.side(),
        Side::IndependentSet => cert.reason.side().flip(),
    };
    match &cert.evidence {
        Evidence::WholeGraphNoClique { target } => {
            if *target != k || cert.round != 0 || own != Side::Clique {
                return evidence_err("whole-graph evidence must be round 0 with target k and a missing clique");
            }
            if find_acceptable_within(sg, &sg.vertices(), k, eps).result != FindResult::NoClique {
                return evidence_err("the search finds an acceptable graph");
            }
        }
        Evidence::FewOutsideNonEdges { structures, union_size, outside_non_edges, threshold } => {
            if own != Side::IndependentSet || cert.round != structures.len() || structures.is_empty() {
                return evidence_err("non-edge evidence must name a missing independent set at its round");
            }
            let union = replay_structures(sg, structures, eps, *union_size)?;
            if !union.contains(v) {
                return evidence_err("vertex is not in the union");
            }
            let outside = union.complement();
            let non = outside.len() - sg.degree_in(v, &outside);
            if non != *outside_non_edges {
                return evidence_err(format!("vertex has {non} outside non-edges, certificate says {outside_non_edges}"));
            }
            let expected = int(k as i128) - eps * int(*union_size as i128) - int(structures.len() as i128) - Rational::one();
            if expected != *threshold {
                return evidence_err(format!("threshold recomputes to {expected}, certificate says {threshold}"));
            }
            if int(non as i128) >= expected {
                return evidence_err("non-edge count meets the threshold");
            }
        }
        Evidence::CandidateNoClique { structures, union_size, non_edges_to_union, target, candidate } => {
            if own != Side::Clique || cert.round != structures.len() || structures.is_empty() {
                return evidence_err("candidate evidence must name a missing clique at its round");
            }
            let union = replay_structures(sg, structures, eps, *union_size)?;
            if union.contains(v) {
                return evidence_err("vertex lies in the union");
            }
            let t = union.len() - sg.degree_in(v, &union);
            if t != *non_edges_to_union {
                return evidence_err(format!("vertex has {t} non-edges to the union, certificate says {non_edges_to_union}"));
            }
            let expected = k as i64 - (union.len() as i64 - t as i64);
            if expected != *target || expected <= 0 {
                return evidence_err(format!("target recomputes to {expected}, certificate says {target}"));
            }
            let mut cand = sg.neighborhood(v).difference(&union);
            cand.insert(v);
            if cand.to_vec() != *candidate {
                return evidence_err("candidate set differs from the vertex's outside neighbourhood");
            }
            if find_acceptable_within(sg, &cand, expected as usize, eps).result != FindResult::NoClique {
                return evidence_err("the search finds an acceptable graph in the candidate set");
            }
        }
    }
    Ok(())
}

/// Replays the evidence and confirms the claim with the exact oracle.
pub fn check_certificate(g: &Graph, k: usize, cert: &ExclusionCertificate) -> Result<(), VerifyError> {
    if cert.k != k {
        return Err(VerifyError::WrongK { cert: cert.k, expected: k });
    }
    if derive_params(cert.params.delta).ok().as_ref() != Some(&cert.params) {
        return Err(VerifyError::ParamsMismatch);
    }
    if cert.vertex >= g.n() {
        return Err(VerifyError::VertexOutOfRange { vertex: cert.vertex, n: g.n() });
    }
    let comp;
    let sg = match cert.side {
        Side::Clique => g,
        Side::IndependentSet => {
            comp = g.complement();
            &comp
        }
    };
    replay_evidence(sg, cert)?;
    let side = cert.reason.side();
    if ExactOracle::new(g).find_through(cert.vertex, side, k).is_some() {
        return Err(VerifyError::OracleDisagrees { vertex: cert.vertex, side });
    }
    Ok(())
}

pub fn verify_certificate(g: &Graph, k: usize, cert: &ExclusionCertificate) -> bool {
    check_certificate(g, k, cert).is_ok()
}
