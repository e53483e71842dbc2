//! The excluder on perturbed blow-ups of a three-cluster path, where
//! certificates come from later rounds rather than from the first search.

use kenabling::excluder::{check_certificate, find_excluding_poly, ExcluderOutcome};
use kenabling::generators::gen_4pd;
use kenabling::oracle::ExactOracle;
use kenabling::{Graph, GraphBuilder, Rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `4P_d` restricted to its first `n` vertices, every pair flipped with
/// probability `q`.
fn perturbed(d: usize, n: usize, q: f64, seed: u64) -> Graph {
    let (g, _) = gen_4pd(d).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) ^ rng.gen_bool(q) {
                b.add_edge(u, v).unwrap();
            }
        }
    }
    b.build()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn certificates_are_sound(d in 45usize..52, cut in 0usize..20, q in 0.0f64..0.015, seed in any::<u64>()) {
        let n = 3 * d + cut;
        let k = n.div_ceil(3);
        let g = perturbed(d, n, q, seed);
        match find_excluding_poly(&g, k, Rational::from_integer(1)).unwrap() {
            ExcluderOutcome::Certificate(c) => {
                prop_assert!(check_certificate(&g, k, &c).is_ok(), "{:?}", check_certificate(&g, k, &c));
                let o = ExactOracle::new(&g);
                prop_assert!(!o.is_enabling(c.vertex, k));
            }
            ExcluderOutcome::SmallKFallback(_) => prop_assert!(k <= 49),
            ExcluderOutcome::InternalContradiction(c) => prop_assert!(false, "{}", c.message),
        }
    }
}

#[test]
fn later_rounds_are_exercised() {
    let mut later = 0;
    for seed in 0..10 {
        let g = perturbed(50, 160, 0.01, seed);
        if let ExcluderOutcome::Certificate(c) = find_excluding_poly(&g, 54, Rational::from_integer(1)).unwrap() {
            assert!(check_certificate(&g, 54, &c).is_ok());
            later += (c.round >= 1) as usize;
        }
    }
    assert!(later > 0);
}
