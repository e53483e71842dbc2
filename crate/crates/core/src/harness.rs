//! Seeded sweeps that run the polynomial algorithms and check every answer
//! against the exact oracle. Seeds are processed in parallel; reports are
//! ordered by seed.

use crate::almost::{check_almost, check_intersection_lemma, find_acceptable_graph, find_acceptable_is, recursion_envelope, FindResult};
use crate::excluder::{check_certificate, find_excluding_poly, harvest_structures, ExcluderOutcome, Reason};
use crate::generators::{gen_gnp, gen_planted, PlantKind};
use crate::oracle::Side;
use crate::ratio::Rational;
use rayon::prelude::*;
use std::ops::Range;

#[derive(Debug, Clone, Default)]
pub struct ExcluderSweep {
    pub runs: usize,
    pub certificates: usize,
    pub verified: usize,
    pub fallbacks: usize,
    pub contradictions: usize,
    pub no_clique: usize,
    pub no_independent_set: usize,
    /// `(seed, message)` for every run that did not verify.
    pub failures: Vec<(u64, String)>,
}

impl ExcluderSweep {
    pub fn all_verified(&self) -> bool {
        self.runs > 0 && self.verified == self.runs && self.contradictions == 0
    }
}

enum RunResult {
    Verified(Reason),
    Fallback,
    Contradiction(String),
    Failed(String),
}

/// `find_excluding_poly` on `G(n, p)` for each seed, with verification.
pub fn excluder_sweep(n: usize, p: f64, k: usize, delta: Rational, seeds: Range<u64>) -> ExcluderSweep {
    let results: Vec<(u64, RunResult)> = seeds
        .into_par_iter()
        .map(|seed| {
            let g = gen_gnp(n, p, seed).expect("valid probability");
            let r = match find_excluding_poly(&g, k, delta) {
                Err(e) => RunResult::Failed(e.to_string()),
                Ok(ExcluderOutcome::SmallKFallback(_)) => RunResult::Fallback,
                Ok(ExcluderOutcome::InternalContradiction(c)) => RunResult::Contradiction(c.message),
                Ok(ExcluderOutcome::Certificate(c)) => match check_certificate(&g, k, &c) {
                    Ok(()) => RunResult::Verified(c.reason),
                    Err(e) => RunResult::Failed(e.to_string()),
                },
            };
            (seed, r)
        })
        .collect();
    let mut s = ExcluderSweep { runs: results.len(), ..Default::default() };
    for (seed, r) in results {
        match r {
            RunResult::Verified(reason) => {
                s.certificates += 1;
                s.verified += 1;
                match reason {
                    Reason::NoKClique => s.no_clique += 1,
                    Reason::NoKIndependentSet => s.no_independent_set += 1,
                }
            }
            RunResult::Fallback => s.fallbacks += 1,
            RunResult::Contradiction(m) => {
                s.contradictions += 1;
                s.failures.push((seed, m));
            }
            RunResult::Failed(m) => {
                s.certificates += 1;
                s.failures.push((seed, m));
            }
        }
    }
    s
}

#[derive(Debug, Clone, Default)]
pub struct PlantedSweep {
    pub runs: usize,
    pub acceptable: usize,
    /// Acceptable, large enough, and passing the ε-degree check.
    pub passed: usize,
    pub max_calls: u64,
    pub envelope: u128,
    pub within_envelope: usize,
    pub failures: Vec<(u64, String)>,
}

/// `find_acceptable_graph` on planted-clique instances.
pub fn planted_sweep(n: usize, p: f64, size: usize, eps: Rational, seeds: Range<u64>) -> PlantedSweep {
    let envelope = recursion_envelope(n, size, eps);
    // Err carries (was the result acceptable, message)
    type Run = (u64, Result<u64, (bool, String)>);
    let results: Vec<Run> = seeds
        .into_par_iter()
        .map(|seed| {
            let (g, _) = gen_planted(n, p, size, PlantKind::Clique, seed).expect("valid parameters");
            let out = match find_acceptable_graph(&g, size, eps) {
                Ok(out) => out,
                Err(e) => return (seed, Err((false, e.to_string()))),
            };
            let r = match &out.result {
                FindResult::NoClique => Err((false, "NoClique on a planted clique".to_string())),
                FindResult::Acceptable(s) if s.len() < size => Err((true, format!("size {} < {size}", s.len()))),
                FindResult::Acceptable(s) if !check_almost(&g, &s.vertices, Side::Clique, eps).holds => {
                    Err((true, "degree check fails".to_string()))
                }
                FindResult::Acceptable(_) => Ok(out.calls),
            };
            (seed, r)
        })
        .collect();
    let mut s = PlantedSweep { runs: results.len(), envelope, ..Default::default() };
    for (seed, r) in results {
        match r {
            Ok(calls) => {
                s.acceptable += 1;
                s.passed += 1;
                s.max_calls = s.max_calls.max(calls);
                if calls as u128 <= envelope {
                    s.within_envelope += 1;
                }
            }
            Err((acceptable, m)) => {
                s.acceptable += acceptable as usize;
                s.failures.push((seed, m));
            }
        }
    }
    s
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IntersectionAudit {
    pub pairs: usize,
    pub violations: usize,
}

impl IntersectionAudit {
    fn add(&mut self, pairs: usize, violations: usize) {
        self.pairs += pairs;
        self.violations += violations;
    }
}

/// Almost cliques and almost independent sets found on the same planted
/// instance (the independent-set search targets `is_target`).
pub fn planted_intersection_audit(n: usize, p: f64, size: usize, is_target: usize, eps: Rational, seeds: Range<u64>) -> IntersectionAudit {
    seeds
        .into_par_iter()
        .map(|seed| {
            let (g, _) = gen_planted(n, p, size, PlantKind::Clique, seed).expect("valid parameters");
            let mut a = IntersectionAudit::default();
            let c = find_acceptable_graph(&g, size, eps).ok().map(|o| o.result);
            let i = find_acceptable_is(&g, is_target, eps).ok().map(|o| o.result);
            if let (Some(FindResult::Acceptable(c)), Some(FindResult::Acceptable(i))) = (c, i) {
                a.add(1, !check_intersection_lemma(&c, &i) as usize);
            }
            a
        })
        .reduce(IntersectionAudit::default, |mut x, y| {
            x.add(y.pairs, y.violations);
            x
        })
}

/// Cross pairs from both excluder families on `G(n, p)`.
pub fn excluder_intersection_audit(n: usize, p: f64, k: usize, delta: Rational, seeds: Range<u64>) -> IntersectionAudit {
    seeds
        .into_par_iter()
        .map(|seed| {
            let g = gen_gnp(n, p, seed).expect("valid probability");
            let mut a = IntersectionAudit::default();
            if let Ok(h) = harvest_structures(&g, k, delta) {
                let (pairs, bad) = h.intersection_audit();
                a.add(pairs, bad);
            }
            a
        })
        .reduce(IntersectionAudit::default, |mut x, y| {
            x.add(y.pairs, y.violations);
            x
        })
}
