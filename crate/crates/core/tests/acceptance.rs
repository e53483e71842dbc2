//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! default test harness so the lines appear in order on stdout.

use kenabling::almost::{find_acceptable_graph, recursion_envelope, FindResult};
use kenabling::bounds::{kj_values, msystem_size_lower, theorem1_lower};
use kenabling::certificate::CertificateFile;
use kenabling::excluder::{find_excluding_poly, ExcluderOutcome, Reason};
use kenabling::generators::{gen_4pd, gen_gnp, gen_hardness_reduction, gen_planted, PlantKind};
use kenabling::harness::{excluder_intersection_audit, planted_intersection_audit};
use kenabling::oracle::enumerate::{k_of_n_exhaustive, EnumMode};
use kenabling::oracle::ExactOracle;
use kenabling::{Graph, Rational, VertexSet};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

const BIN: &str = env!("CARGO_BIN_EXE_kenabling");

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap_or(-1), text)
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

/// Number in the first line of the form "<N> excluding vertices".
fn excluding_count(text: &str) -> Option<usize> {
    text.lines().find_map(|l| l.strip_suffix(" excluding vertices")?.trim().parse().ok())
}

fn criterion_1(dir: &Path) -> Outcome {
    for d in 1..=8usize {
        let file = dir.join(format!("4p{d}.col"));
        let (code, text) = run_cli(&["gen", "4pd", "--d", &d.to_string(), "--out", path_str(&file)]);
        if code != 0 {
            return outcome(false, format!("gen 4pd --d {d} exited {code}: {text}"));
        }
        for (k, expected) in [(d + 1, 0), (d + 2, 4 * d)] {
            let (code, text) = run_cli(&["scan", "--graph", path_str(&file), "--k", &k.to_string()]);
            if code != 0 || excluding_count(&text) != Some(expected) {
                return outcome(false, format!("d = {d}, k = {k}: expected {expected} excluding, got `{}`", text.trim()));
            }
        }
    }
    outcome(true, "d = 1..8: 0 excluding at k = d+1, all 4d at k = d+2")
}

fn criterion_2() -> Outcome {
    let expected = [1, 1, 1, 2, 2, 2, 2];
    let mut got = Vec::new();
    for n in 1..=7usize {
        let (code, text) = run_cli(&["kfn", "--n", &n.to_string(), "--mode", "labeled", "--threads", "8"]);
        let prefix = format!("k({n}) = ");
        let k = text.lines().find_map(|l| l.strip_prefix(&prefix)?.trim().parse::<usize>().ok());
        if code != 0 || k.is_none() {
            return outcome(false, format!("kfn --n {n} exited {code}: {text}"));
        }
        got.push(k.unwrap());
    }
    // the closed form floor(n/4) + 1 as an independent oracle
    let formula: Vec<usize> = (1..=7).map(|n| n / 4 + 1).collect();
    let pass = got == expected && got == formula;
    outcome(pass, format!("labeled k(1..7) = {got:?}"))
}

/// Stretch goal: canonical enumeration at n = 8, 9. Reported, not gating.
fn stretch_canonical() -> String {
    let mut parts = Vec::new();
    for n in [8usize, 9] {
        let start = Instant::now();
        match k_of_n_exhaustive(n, EnumMode::Canonical) {
            Ok(t) => parts.push(format!("k({n}) = {} over {} classes in {:.1?}", t.k_of_n, t.graphs_examined, start.elapsed())),
            Err(e) => parts.push(format!("n = {n}: {e}")),
        }
    }
    parts.join("; ")
}

fn criterion_3() -> Outcome {
    let t1 = (theorem1_lower(8, 2), theorem1_lower(27, 3));
    if t1 != (Ok(12), Ok(63)) {
        return outcome(false, format!("theorem1_lower gave {t1:?}"));
    }
    let mut cases = 0;
    for k in 2i64..=60 {
        if msystem_size_lower(&[k], &[k]) != 2 * k - 1 {
            return outcome(false, format!("m = 1, k = {k}"));
        }
        for n in k + 1..=4 * k {
            let k2 = (k * (k - 1) + (n - k) - 1) / (n - k);
            let lib_k2 = kj_values(n, k, 2).map(|v| v[0]);
            if lib_k2 != Ok(k2) || msystem_size_lower(&[k, k2], &[k, k2]) != 2 * k + 2 * k2 - 4 {
                return outcome(false, format!("m = 2, k = {k}, n = {n}: k_2 {lib_k2:?} vs {k2}"));
            }
            cases += 1;
        }
    }
    outcome(true, format!("(4-5/m)k bounds 12 and 63; 2k-1 and 2k+2k_2-4 on {cases} (k, n) pairs"))
}

/// Integer-only recurrence, written independently of the library.
fn kj_oracle(n: i64, k: i64, m: i64) -> Vec<i64> {
    let ceil_div = |a: i64, b: i64| if a <= 0 { 0 } else { (a + b - 1) / b };
    let mut out = vec![ceil_div(k * (k - 1), n - k)];
    for j in 2..m {
        let prev = out[out.len() - 1];
        out.push(ceil_div((k + prev) * (k - j), n - k - prev));
    }
    out
}

fn criterion_4() -> Outcome {
    let (n, k, m) = (380, 100, 5);
    let lib = match kj_values(n, k, m as usize) {
        Ok(v) => v,
        Err(e) => return outcome(false, e.to_string()),
    };
    let oracle = kj_oracle(n, k, m);
    // k_j >= (1 - 2/(j+1)) k  <=>  (j+1) k_j >= (j-1) k
    let floors = oracle.iter().enumerate().all(|(i, &kj)| {
        let j = i as i64 + 2;
        (j + 1) * kj >= (j - 1) * k
    });
    let pass = lib == oracle && lib[0] == 36 && floors;
    outcome(pass, format!("k_2..k_5 = {lib:?}, oracle {oracle:?}, floors hold: {floors}"))
}

/// In-set degree check written directly against the adjacency relation.
fn degree_condition(g: &Graph, s: &[usize], eps: Rational) -> bool {
    let size = s.len() as i128;
    s.iter().all(|&v| {
        let deg = s.iter().filter(|&&u| u != v && g.has_edge(u, v)).count() as i128;
        // deg >= (1 - eps) |S|
        Rational::from_integer(deg) >= (Rational::from_integer(1) - eps) * Rational::from_integer(size)
    })
}

struct PlantedStats {
    runs: usize,
    passed: usize,
    max_calls: u64,
    envelope: u128,
    over_envelope: usize,
}

fn planted_runs() -> (PlantedStats, Vec<String>) {
    let eps = Rational::new(1, 4);
    let envelope = recursion_envelope(100, 20, eps);
    let mut s = PlantedStats { runs: 0, passed: 0, max_calls: 0, envelope, over_envelope: 0 };
    let mut failures = Vec::new();
    for seed in 0..500u64 {
        s.runs += 1;
        let (g, _) = gen_planted(100, 0.3, 20, PlantKind::Clique, seed).expect("valid");
        let out = find_acceptable_graph(&g, 20, eps).expect("eps >= 2/k");
        s.max_calls = s.max_calls.max(out.calls);
        if out.calls as u128 > envelope {
            s.over_envelope += 1;
        }
        match out.result {
            FindResult::Acceptable(c) if c.len() >= 20 && degree_condition(&g, &c.vertices.to_vec(), eps) => s.passed += 1,
            other => failures.push(format!("seed {seed}: {other:?}")),
        }
    }
    (s, failures)
}

fn criterion_5(stats: &PlantedStats, failures: &[String]) -> Outcome {
    let pass = stats.passed == stats.runs && stats.runs == 500;
    let first = failures.first().map(|f| format!("; first failure {f}")).unwrap_or_default();
    outcome(pass, format!("{}/{} planted instances acceptable, size >= 20, degree check passed{first}", stats.passed, stats.runs))
}

/// Greedy colouring of `cand` in `g`: an upper bound on its clique number.
fn colour_bound(g: &Graph, cand: &[usize]) -> usize {
    let mut colours: Vec<Vec<usize>> = Vec::new();
    for &v in cand {
        match colours.iter_mut().find(|c| c.iter().all(|&u| !g.has_edge(u, v))) {
            Some(c) => c.push(v),
            None => colours.push(vec![v]),
        }
    }
    colours.len()
}

/// Independent refutation: no k-structure through `v` of the named kind.
fn refutes(g: &Graph, v: usize, k: usize, reason: Reason) -> bool {
    let h = match reason {
        Reason::NoKClique => g.clone(),
        Reason::NoKIndependentSet => g.complement(),
    };
    let nbrs: Vec<usize> = h.neighbors(v).collect();
    1 + colour_bound(&h, &nbrs) < k
}

fn criterion_6(dir: &Path) -> Outcome {
    let k = 50;
    let (mut certs, mut cli_pass, mut independent, mut contradictions) = (0, 0, 0, 0);
    let mut notes = Vec::new();
    for seed in 0..50u64 {
        let file = dir.join(format!("gnp{seed}.col"));
        let cert = dir.join(format!("gnp{seed}.cert.json"));
        let (code, text) = run_cli(&["gen", "gnp", "--n", "150", "--p", "0.5", "--seed", &seed.to_string(), "--out", path_str(&file)]);
        if code != 0 {
            notes.push(format!("seed {seed}: gen failed: {text}"));
            continue;
        }
        let g = kenabling::format::load_graph(&file).expect("generated file parses");
        assert_eq!(g, gen_gnp(150, 0.5, seed).unwrap());
        match find_excluding_poly(&g, k, Rational::from_integer(1)) {
            Ok(ExcluderOutcome::Certificate(c)) => {
                certs += 1;
                if refutes(&g, c.vertex, k, c.reason) || ExactOracle::new(&g).find_through(c.vertex, c.reason.side(), k).is_none() {
                    independent += 1;
                }
                CertificateFile::new(&g, c).save(&dir.join(format!("lib{seed}.cert.json"))).expect("writable");
            }
            Ok(ExcluderOutcome::InternalContradiction(c)) => {
                contradictions += 1;
                notes.push(format!("seed {seed}: {}", c.message));
            }
            other => notes.push(format!("seed {seed}: {other:?}")),
        }
        let (code, text) = run_cli(&["poly-exclude", "--graph", path_str(&file), "--k", "50", "--delta", "1", "--cert-out", path_str(&cert)]);
        if code != 0 {
            notes.push(format!("seed {seed}: poly-exclude exited {code}: {text}"));
            continue;
        }
        let (code, text) = run_cli(&["verify", "--graph", path_str(&file), "--cert", path_str(&cert)]);
        if code == 0 && text.starts_with("PASS") {
            cli_pass += 1;
        } else {
            notes.push(format!("seed {seed}: verify: {text}"));
        }
    }
    let pass = certs == 50 && cli_pass == 50 && independent == 50 && contradictions == 0;
    let first = notes.first().map(|n| format!("; {n}")).unwrap_or_default();
    outcome(pass, format!("{certs}/50 certificates, verify PASS {cli_pass}/50, independent refutation {independent}/50, contradictions {contradictions}{first}"))
}

fn criterion_7() -> Outcome {
    let planted = planted_intersection_audit(100, 0.3, 20, 12, Rational::new(1, 4), 0..500);
    let excluder = excluder_intersection_audit(150, 0.5, 50, Rational::from_integer(1), 0..50);
    // 4P_60 without one external cluster: both families are nonempty
    let (g, _) = gen_4pd(60).unwrap();
    let (h, _) = g.induced_subgraph(&VertexSet::from_ids(240, 0..180).unwrap());
    let three = kenabling::excluder::harvest_structures(&h, 61, Rational::from_integer(1)).expect("in regime");
    let (tp, tv) = three.intersection_audit();
    let pairs = planted.pairs + excluder.pairs + tp;
    let violations = planted.violations + excluder.violations + tv;
    outcome(
        violations == 0 && pairs > 0,
        format!("{pairs} cross pairs ({} planted, {} random, {tp} three-cluster), {violations} violations", planted.pairs, excluder.pairs),
    )
}

fn criterion_8() -> Outcome {
    let g1 = Graph::empty(6);
    let (g, meta) = match gen_hardness_reduction(&g1, 12, Rational::new(1, 2)) {
        Ok(x) => x,
        Err(e) => return outcome(false, e.to_string()),
    };
    let shape = g.n() == 54 && meta.s.len() == 37 && meta.t.len() == 11 && meta.threshold == 1;
    let g1_ids: Vec<usize> = (meta.g1_offset..meta.g1_offset + meta.g1_size).collect();
    let block = meta.s.iter().all(|u| g1_ids.iter().all(|&w| g.has_edge(u, w)));
    let no_t_edges = meta.t.iter().all(|u| g1_ids.iter().all(|&w| !g.has_edge(u, w)));
    let inner = g1_ids.iter().all(|&u| g1_ids.iter().all(|&w| u == w || !g.has_edge(u, w)));
    let yes = ExactOracle::new(&g).is_k_enabling(12);

    let (h, meta2) = match gen_hardness_reduction(&Graph::complete(12), 24, Rational::new(1, 2)) {
        Ok(x) => x,
        Err(e) => return outcome(false, e.to_string()),
    };
    let no = meta2.threshold == 2 && h.n() == 108 && !ExactOracle::new(&h).is_k_enabling(24);
    let pass = shape && block && no_t_edges && inner && yes && no;
    outcome(
        pass,
        format!("n = {}, |S| = {}, |T| = {}, S x g1 complete: {block}, T x g1 empty: {no_t_edges}, yes-instance 12-enabling: {yes}, no-instance rejected: {no}", g.n(), meta.s.len(), meta.t.len()),
    )
}

fn criterion_9(stats: &PlantedStats) -> Outcome {
    let mut over = stats.over_envelope;
    let mut checked = stats.runs;
    for n in [40usize, 60, 80, 120, 150] {
        for seed in 0..20u64 {
            let g = gen_gnp(n, 0.5, seed).unwrap();
            for (k, eps) in [(n / 4, Rational::new(1, 4)), (n / 3, Rational::new(1, 8))] {
                if eps * Rational::from_integer(k as i128) < Rational::from_integer(2) {
                    continue;
                }
                let out = find_acceptable_graph(&g, k, eps).unwrap();
                checked += 1;
                if out.calls as u128 > recursion_envelope(n, k, eps) {
                    over += 1;
                }
            }
        }
    }
    outcome(
        over == 0,
        format!(
            "{checked} runs within the recursion envelope (planted max {} calls vs bound {}); asymptotic claims covered by soundness, metering and n <= 7 enumeration",
            stats.max_calls, stats.envelope
        ),
    )
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut all = true;
    let mut report = |id: &str, limit: Duration, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        let took = start.elapsed();
        let in_time = took <= limit;
        let pass = o.pass && in_time;
        all &= pass;
        let time_note = if in_time { String::new() } else { format!(" [over the {limit:?} limit]") };
        println!("{} criterion {id}: {} ({took:.1?}){time_note}", if pass { "PASS" } else { "FAIL" }, o.detail);
    };
    let mut planted: Option<PlantedStats> = None;

    report("1", Duration::from_secs(30), &mut || criterion_1(dir.path()));
    report("2", Duration::from_secs(600), &mut criterion_2);
    report("3", Duration::from_secs(60), &mut criterion_3);
    report("4", Duration::from_secs(60), &mut criterion_4);
    report("5", Duration::from_secs(120), &mut || {
        let (s, f) = planted_runs();
        let o = criterion_5(&s, &f);
        planted = Some(s);
        o
    });
    report("6", Duration::from_secs(300), &mut || criterion_6(dir.path()));
    report("7", Duration::from_secs(300), &mut criterion_7);
    report("8", Duration::from_secs(60), &mut criterion_8);
    let stats = planted.take().expect("criterion 5 ran");
    report("9", Duration::from_secs(300), &mut || criterion_9(&stats));
    println!("INFO stretch (not gating): canonical {}", stretch_canonical());

    if !all {
        std::process::exit(1);
    }
}
