use clap::{Args, Parser, Subcommand, ValueEnum};
use kenabling::almost::{find_acceptable_graph, FindResult};
use kenabling::bounds::{derive_params, kj_sequence, msystem_size_lower, theorem1_lower, BoundError};
use kenabling::certificate::CertificateFile;
use kenabling::excluder::{find_excluding_poly, ExcluderOutcome};
use kenabling::format::{load_graph, save_graph};
use kenabling::generators::{append_isolated, gen_4pd, gen_gnp, gen_hardness_reduction, gen_planted, PlantKind};
use kenabling::oracle::enumerate::{k_of_n_with_threads, EnumMode};
use kenabling::oracle::{ExactOracle, Side};
use kenabling::ratio::{parse_rational, Rational};
use kenabling::Graph;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "kenabling", version, about = "Find k-enabling and k-excluding vertices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph file
    Gen(GenArgs),
    /// Exact verdict for one vertex
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        k: usize,
    },
    /// List every k-excluding vertex (exact)
    Scan {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Exhaustive k(n)
    Kfn {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Labeled)]
        mode: ModeArg,
        #[arg(long)]
        threads: Option<usize>,
        /// Write the witness graph here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the k_j recurrence and related bounds
    Bounds {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: Option<i64>,
        #[arg(long, value_parser = rational)]
        delta: Option<Rational>,
    },
    /// Run the almost-clique search
    AlmostClique {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = rational)]
        eps: Rational,
    },
    /// Polynomial-time search for a k-excluding vertex
    PolyExclude {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = rational)]
        delta: Rational,
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Check a certificate against a graph
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Labeled,
    Canonical,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    #[value(name = "4pd")]
    FourPd,
    Gnp,
    Planted,
    Reduction,
    Isolated,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlantArg {
    Clique,
    Is,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Reduction parameter k, or the number of isolated vertices to append
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_parser = rational)]
    eps: Option<Rational>,
    /// Planted structure size
    #[arg(long)]
    size: Option<usize>,
    #[arg(long, value_enum, default_value_t = PlantArg::Clique)]
    plant: PlantArg,
    /// Input graph for `reduction` (g1) and `isolated`
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Exit status 2: bad usage, parameters or input files.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<bool, UsageError>;

fn need<T>(v: Option<T>, flag: &str) -> Result<T, UsageError> {
    v.ok_or_else(|| UsageError(format!("--{flag} is required here")))
}

fn load(path: &Path) -> Result<Graph, UsageError> {
    Ok(load_graph(path)?)
}

fn fmt_set(ids: impl IntoIterator<Item = usize>) -> String {
    let parts: Vec<String> = ids.into_iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn cmd_gen(a: GenArgs) -> CmdResult {
    let g = match a.kind {
        GenKind::FourPd => gen_4pd(need(a.d, "d")?)?.0,
        GenKind::Gnp => gen_gnp(need(a.n, "n")?, need(a.p, "p")?, need(a.seed, "seed")?)?,
        GenKind::Planted => {
            let kind = match a.plant {
                PlantArg::Clique => PlantKind::Clique,
                PlantArg::Is => PlantKind::IndependentSet,
            };
            let (g, planted) = gen_planted(need(a.n, "n")?, need(a.p, "p")?, need(a.size, "size")?, kind, need(a.seed, "seed")?)?;
            println!("planted: {}", fmt_set(planted.iter()));
            g
        }
        GenKind::Reduction => {
            let g1 = load(&need(a.graph, "graph")?)?;
            let (g, meta) = gen_hardness_reduction(&g1, need(a.k, "k")?, need(a.eps, "eps")?)?;
            println!("|S| = {}, |T| = {}, g1 at {}..{}, threshold {}", meta.s.len(), meta.t.len(), meta.g1_offset, meta.g1_offset + meta.g1_size, meta.threshold);
            g
        }
        GenKind::Isolated => append_isolated(&load(&need(a.graph, "graph")?)?, need(a.k, "k")?),
    };
    save_graph(&g, &a.out)?;
    println!("wrote {} vertices, {} edges to {}", g.n(), g.edge_count(), a.out.display());
    Ok(true)
}

fn cmd_check(graph: &Path, v: usize, k: usize) -> CmdResult {
    let g = load(graph)?;
    if v >= g.n() {
        return Err(UsageError(format!("vertex {v} is out of range for n = {}", g.n())));
    }
    if k == 0 {
        return Err(UsageError("k must be at least 1".into()));
    }
    let o = ExactOracle::new(&g);
    let c = o.classify(v);
    println!("max clique through {v}: {} {}", c.max_clique_through, fmt_set(c.witness_clique.iter()));
    println!("max independent set through {v}: {} {}", c.max_is_through, fmt_set(c.witness_is.iter()));
    if c.enabling_for(k) {
        println!("vertex {v} is {k}-enabling");
        Ok(true)
    } else {
        let fails: Vec<&str> = c
            .failing_sides(k)
            .into_iter()
            .map(|s| match s {
                Side::Clique => "no k-clique",
                Side::IndependentSet => "no k-independent set",
            })
            .collect();
        println!("vertex {v} is {k}-excluding ({})", fails.join(", "));
        Ok(false)
    }
}

fn cmd_scan(graph: &Path, k: usize) -> CmdResult {
    let g = load(graph)?;
    let c = kenabling::oracle::classify_all(&g, k)?;
    let ex = c.excluding();
    println!("{} excluding vertices", ex.len());
    if !ex.is_empty() {
        println!("{}", fmt_set(ex));
    }
    Ok(true)
}

fn cmd_kfn(n: usize, mode: ModeArg, threads: Option<usize>, out: Option<PathBuf>) -> CmdResult {
    let mode = match mode {
        ModeArg::Labeled => EnumMode::Labeled,
        ModeArg::Canonical => EnumMode::Canonical,
    };
    let threads = threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |t| t.get()));
    let t = k_of_n_with_threads(n, mode, threads)?;
    println!("k({n}) = {}", t.k_of_n);
    println!("graphs examined: {}, evaluated: {}", t.graphs_examined, t.graphs_evaluated);
    if let Some(path) = out {
        save_graph(&t.witness, &path)?;
        println!("witness written to {}", path.display());
    }
    Ok(true)
}

fn cmd_bounds(k: i64, m: usize, n: Option<i64>, delta: Option<Rational>) -> CmdResult {
    println!("k = {k}, m = {m}");
    match theorem1_lower(k, m as i64) {
        Ok(v) => println!("lower bound (4 - 5/m)k n(k) >= {v}"),
        Err(e) => println!("lower bound (4 - 5/m)k: not applicable ({e})"),
    }
    println!("m-system of k-sized sets, m = 1: size >= {}", msystem_size_lower(&[k], &[k]));
    if let Some(n) = n {
        match kj_sequence(n, k, m) {
            Ok(r) => {
                println!("{:>4} {:>8} {:>12} {:>6}", "j", "k_j", "floor", "ok");
                for f in &r.floors {
                    println!("{:>4} {:>8} {:>12} {:>6}", f.j, f.kj, f.floor.to_string(), f.holds);
                }
                println!("implied n lower = {} ({})", r.implied_n_lower, if r.contradicts_n() { "exceeds n" } else { "within n" });
            }
            Err(BoundError::Divergence(d)) => println!("divergence: {d}"),
            Err(e) => return Err(e.into()),
        }
    }
    if let Some(delta) = delta {
        let p = derive_params(delta)?;
        println!("delta = {}: m = {}, eps = {}, K = {}", p.delta, p.m, p.eps, p.k_min);
    }
    Ok(true)
}

fn cmd_almost(graph: &Path, k: usize, eps: Rational) -> CmdResult {
    let g = load(graph)?;
    let out = find_acceptable_graph(&g, k, eps)?;
    println!("calls: {}", out.calls);
    match out.result {
        FindResult::NoClique => {
            println!("NoClique: no clique of size {k}");
            Ok(false)
        }
        FindResult::Acceptable(s) => {
            println!("Acceptable: {} vertices {}", s.len(), fmt_set(s.vertices.iter()));
            Ok(true)
        }
    }
}

fn cmd_poly(graph: &Path, k: usize, delta: Rational, cert_out: Option<PathBuf>) -> CmdResult {
    let g = load(graph)?;
    match find_excluding_poly(&g, k, delta)? {
        ExcluderOutcome::Certificate(c) => {
            println!("vertex {} is {k}-excluding: {:?} (round {}, {:?} side)", c.vertex, c.reason, c.round, c.side);
            if let Some(path) = cert_out {
                CertificateFile::new(&g, c).save(&path)?;
                println!("certificate written to {}", path.display());
            }
            Ok(true)
        }
        ExcluderOutcome::SmallKFallback(cls) => {
            let ex = cls.excluding();
            println!("k at or below the small-k threshold: exact classification used");
            println!("{} excluding vertices", ex.len());
            if !ex.is_empty() {
                println!("{}", fmt_set(ex));
            }
            Ok(true)
        }
        ExcluderOutcome::InternalContradiction(c) => {
            eprintln!("internal contradiction: {}", c.message);
            eprintln!("clique side: {:#?}", c.clique_side.records());
            if let Some(is) = &c.is_side {
                eprintln!("independent-set side: {:#?}", is.records());
            }
            Ok(false)
        }
    }
}

fn cmd_verify(graph: &Path, cert: &Path) -> CmdResult {
    let g = load(graph)?;
    let file = CertificateFile::load(cert)?;
    match file.verify(&g) {
        Ok(()) => {
            println!("PASS: vertex {} fails {:?}", file.certificate.vertex, file.certificate.reason);
            Ok(true)
        }
        Err(e) => {
            println!("FAIL: {e}");
            Ok(false)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Check { graph, vertex, k } => cmd_check(&graph, vertex, k),
        Command::Scan { graph, k } => cmd_scan(&graph, k),
        Command::Kfn { n, mode, threads, out } => cmd_kfn(n, mode, threads, out),
        Command::Bounds { k, m, n, delta } => cmd_bounds(k, m, n, delta),
        Command::AlmostClique { graph, k, eps } => cmd_almost(&graph, k, eps),
        Command::PolyExclude { graph, k, delta, cert_out } => cmd_poly(&graph, k, delta, cert_out),
        Command::Verify { graph, cert } => cmd_verify(&graph, &cert),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
