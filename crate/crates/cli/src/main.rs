use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use jscheme::bounds::{equality_filter, equality_filter_uncapped, ratio_bound};
use jscheme::classify::{
    classify_separation, projective_plane_conjecture_check, reproduce_k4_tables, CellStatus, ClassifyOptions,
    PairDecision, SeparationReason, TableOptions, Verdict,
};
use jscheme::combinat::rat_string;
use jscheme::designs::{section3_witness_with, verify_steiner, verify_witness, BlockFamily, Witness, WitnessOptions};
use jscheme::graphs::{build_graph, ClassSet, GraphOptions, DEFAULT_MEMORY_BUDGET};
use jscheme::scheme::eigen_matrices;
use jscheme::search::{max_clique, max_coclique, verify_colouring, Partition, SearchOptions};
use jscheme::{Error, SchemeParams};
use serde::Serialize;
use serde_json::json;

const EXIT_DECIDED: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "jscheme", version, about = "Exact analysis of Johnson scheme graphs J(n,k)")]
struct Cli {
    /// Adjacency memory budget in bytes.
    #[arg(long, global = true, default_value_t = DEFAULT_MEMORY_BUDGET)]
    memory_budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Scheme {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
}

#[derive(Args, Clone)]
struct GraphArgs {
    #[command(flatten)]
    scheme: Scheme,
    /// Comma-separated classes, e.g. 1,3 (class j: sets meeting in k-j points).
    #[arg(long, value_delimiter = ',', required = true)]
    classes: Vec<usize>,
}

/// `--json` alone prints JSON to stdout; `--json FILE` writes it there.
#[derive(Args, Clone)]
struct JsonOut {
    #[arg(long, num_args = 0..=1, value_name = "FILE")]
    json: Option<Option<PathBuf>>,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalue matrices P and Q.
    Pq {
        #[command(flatten)]
        scheme: Scheme,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Size, degree and spectrum of Γ_I(n,k).
    Graph {
        #[command(flatten)]
        g: GraphArgs,
        /// Also print the distinct eigenvalues.
        #[arg(long)]
        stats: bool,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Maximum clique of Γ_I(n,k).
    Clique(SearchArgs),
    /// Maximum coclique of Γ_I(n,k).
    Coclique(SearchArgs),
    /// Ratio bound and divisibility.
    Bounds {
        #[command(flatten)]
        g: GraphArgs,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Clique/coclique equality candidates from the orthogonality filter (JSON).
    Filter {
        #[command(flatten)]
        g: GraphArgs,
        /// Skip the known clique-size caps.
        #[arg(long)]
        uncapped: bool,
    },
    /// Check a block file as a Steiner system, or a witness directory as a colouring.
    Verify(VerifyArgs),
    /// Build one of the small clique = chromatic number witnesses.
    Witness {
        /// One of k3n7, k3n8, k4n9, k5n11, k5n12.
        #[arg(long = "case")]
        case_id: String,
        /// Write clique.blocks and colour_NN.blocks here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Separation verdict and synchronization evidence for J(n,k).
    Classify {
        #[command(flatten)]
        scheme: Scheme,
        /// Seconds per decision search.
        #[arg(long, default_value_t = 60)]
        budget: u64,
        /// Spend the full budget on ω and α of every class set, not only on decisions.
        #[arg(long)]
        extended: bool,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Recompute the k = 4 clique-number tables and compare with the reference values.
    Tables {
        #[arg(long)]
        extended: bool,
        /// Seconds per search.
        #[arg(long, default_value_t = 300)]
        budget: u64,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Maximum cocliques of Γ_{q}(q²+q+1, q+1) against pair-kernel families.
    Plane {
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 600)]
        budget: u64,
        #[command(flatten)]
        out: JsonOut,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    g: GraphArgs,
    /// Seconds.
    #[arg(long, default_value_t = 300)]
    budget: u64,
    /// Print the clique or coclique as blocks.
    #[arg(long)]
    witness: bool,
    #[command(flatten)]
    out: JsonOut,
}

#[derive(Args)]
struct VerifyArgs {
    /// Block file to test as a Steiner system S(t,k,n).
    #[arg(long, requires = "t", conflicts_with = "colouring")]
    file: Option<PathBuf>,
    #[arg(long)]
    t: Option<usize>,
    /// Directory written by `witness --out`.
    #[arg(long, requires = "classes")]
    colouring: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    classes: Option<Vec<usize>>,
}

fn cache_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os("JSCHEME_CACHE") {
        return Some(PathBuf::from(dir));
    }
    if let Some(x) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(x).join("jscheme"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("jscheme"))
}

fn emit<T: Serialize>(out: &JsonOut, value: &T, text: impl FnOnce() -> String) -> jscheme::Result<()> {
    match &out.json {
        None => say(&text()),
        Some(dest) => {
            let s = serde_json::to_string_pretty(value).map_err(|e| Error::Consistency(e.to_string()))?;
            match dest {
                None => say(&(s + "\n")),
                Some(path) => fs::write(path, s + "\n")?,
            }
        }
    }
    Ok(())
}

/// Write to stdout, ignoring a closed pipe.
fn say(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn graph(a: &GraphArgs, mem: u64) -> jscheme::Result<jscheme::SchemeGraph> {
    let p = SchemeParams::new(a.scheme.n, a.scheme.k)?;
    let c = ClassSet::new(a.scheme.k, &a.classes)?;
    build_graph(&p, &c, &GraphOptions { memory_budget_bytes: mem })
}

fn run_search(a: &SearchArgs, coclique: bool, mem: u64) -> jscheme::Result<u8> {
    let g = graph(&a.g, mem)?;
    let so = SearchOptions::with_budget(Duration::from_secs(a.budget));
    let r = if coclique { max_coclique(&g, &so)? } else { max_clique(&g, &so)? };
    let what = if coclique { "coclique" } else { "clique" };
    let fam = BlockFamily::from_vertex_set(&format!("{what}-of-Γ_{}", g.classes()), &r.witness);
    let value = json!({
        "n": a.g.scheme.n,
        "k": a.g.scheme.k,
        "classes": g.classes(),
        "kind": what,
        "size": r.size,
        "proved": r.proved_optimal,
        "upper_bound": r.upper_bound,
        "nodes": r.nodes_explored,
        "elapsed_ms": r.elapsed.as_millis() as u64,
        "witness": if a.witness { Some(&fam) } else { None },
    });
    emit(&a.out, &value, || {
        let mut s = format!(
            "{what} number of Γ_{}({},{}): {}{}\nupper bound {}, {} nodes, {:.2?}\n",
            g.classes(),
            a.g.scheme.n,
            a.g.scheme.k,
            r.size,
            if r.proved_optimal { " (proved)" } else { " (not proved: budget exhausted)" },
            r.upper_bound,
            r.nodes_explored,
            r.elapsed
        );
        if a.witness {
            s += &fam.to_text();
        }
        s
    })?;
    Ok(if r.proved_optimal { EXIT_DECIDED } else { EXIT_UNDECIDED })
}

fn decision_text(d: &PairDecision) -> String {
    match d {
        PairDecision::Equality { source } => format!("equality ({source})"),
        PairDecision::Separated { reason } => match reason {
            SeparationReason::RatioProduct => "separated (ratio product exceeds v)".into(),
            SeparationReason::Filter => "separated (no pair passes the filter)".into(),
            SeparationReason::UpperBounds => "separated (upper bounds)".into(),
            SeparationReason::Search { refuted } => {
                let pairs: Vec<String> = refuted.iter().map(|[x, y]| format!("{x}x{y}")).collect();
                format!("separated (search refuted {})", pairs.join(", "))
            }
        },
        PairDecision::Undecided { reason } => format!("undecided ({reason})"),
        PairDecision::Skipped => "skipped".into(),
    }
}

fn write_witness(w: &Witness, dir: &Path) -> jscheme::Result<()> {
    fs::create_dir_all(dir)?;
    BlockFamily::from_vertex_set(&format!("{}-clique", w.case_id), &w.clique).write(&dir.join("clique.blocks"))?;
    for (i, part) in w.colouring.parts.iter().enumerate() {
        BlockFamily::from_vertex_set(&format!("{}-colour-{}", w.case_id, i + 1), part)
            .write(&dir.join(format!("colour_{:02}.blocks", i + 1)))?;
    }
    Ok(())
}

fn read_colouring(dir: &Path, classes: &[usize]) -> jscheme::Result<Witness> {
    let clique = BlockFamily::read(&dir.join("clique.blocks"))?;
    let mut names: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|f| f.to_str())
                .is_some_and(|f| f.starts_with("colour_") && f.ends_with(".blocks"))
        })
        .collect();
    names.sort();
    let parts = names
        .iter()
        .map(|p| BlockFamily::read(p)?.vertex_set())
        .collect::<jscheme::Result<Vec<_>>>()?;
    Ok(Witness {
        case_id: dir.display().to_string(),
        params: clique.params()?,
        classes: ClassSet::new(clique.k, classes)?,
        clique: clique.vertex_set()?,
        colouring: Partition { parts },
    })
}

fn run(cli: Cli) -> jscheme::Result<u8> {
    let mem = cli.memory_budget;
    match cli.command {
        Command::Pq { scheme, out } => {
            let e = eigen_matrices(&SchemeParams::new(scheme.n, scheme.k)?)?;
            emit(&out, &e, || {
                let mut s = format!("P (rows: eigenspaces, columns: classes) for J({},{})\n", scheme.n, scheme.k);
                for row in &e.p {
                    s += &row.iter().map(|x| format!("{x:>10}")).collect::<String>();
                    s.push('\n');
                }
                s += "Q\n";
                for row in &e.q {
                    s += &row.iter().map(|x| format!("{:>14}", rat_string(x))).collect::<String>();
                    s.push('\n');
                }
                s
            })?;
        }
        Command::Graph { g, stats, out } => {
            let gr = graph(&g, mem)?;
            let sp = gr.spectrum();
            let value = json!({
                "n": g.scheme.n,
                "k": g.scheme.k,
                "classes": gr.classes(),
                "v": gr.v(),
                "degree": sp.degree,
                "eigenvalues": sp.eigenvalues.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "tau": sp.tau.to_string(),
            });
            emit(&out, &value, || {
                let mut s = format!(
                    "Γ_{}({},{}): v = {}, degree = {}, τ = {}\n",
                    gr.classes(),
                    g.scheme.n,
                    g.scheme.k,
                    gr.v(),
                    sp.degree,
                    sp.tau
                );
                if stats {
                    let ev: Vec<String> = sp.eigenvalues.iter().map(|x| x.to_string()).collect();
                    s += &format!("eigenvalues by eigenspace: {}\n", ev.join(" "));
                }
                s
            })?;
        }
        Command::Clique(a) => return run_search(&a, false, mem),
        Command::Coclique(a) => return run_search(&a, true, mem),
        Command::Bounds { g, out } => {
            let gr = graph(&g, mem)?;
            let rb = ratio_bound(&gr)?;
            emit(&out, &rb, || {
                format!(
                    "degree {}\nτ {}\nratio bound α <= {}\n1 - deg/τ = {}\nτ divides degree: {}\n",
                    rb.degree,
                    rb.tau,
                    rat_string(&rb.alpha_bound),
                    rat_string(&rb.omega_if_equality),
                    if rb.divisibility_ok { "yes" } else { "no" }
                )
            })?;
        }
        Command::Filter { g, uncapped } => {
            let c = ClassSet::new(g.scheme.k, &g.classes)?;
            let f = if uncapped {
                equality_filter_uncapped(g.scheme.n, g.scheme.k, &c)?
            } else {
                equality_filter(g.scheme.n, g.scheme.k, &c)?
            };
            let s = serde_json::to_string_pretty(&f).map_err(|e| Error::Consistency(e.to_string()))?;
            println!("{s}");
        }
        Command::Verify(a) => {
            if let (Some(file), Some(t)) = (&a.file, a.t) {
                let fam = BlockFamily::read(file)?;
                let chk = verify_steiner(&fam, t)?;
                if chk.holds {
                    println!("Steiner: yes");
                    return Ok(EXIT_DECIDED);
                }
                let why = match &chk.failure {
                    Some(f) => format!("{:?} lies in {} blocks", f.t_set, f.count),
                    None => format!("{} blocks, expected {:?}", chk.block_count, chk.expected_blocks),
                };
                println!("Steiner: no ({why})");
                return Ok(EXIT_ERROR);
            }
            if let (Some(dir), Some(classes)) = (&a.colouring, &a.classes) {
                let w = read_colouring(dir, classes)?;
                let g = build_graph(&w.params, &w.classes, &GraphOptions { memory_budget_bytes: mem })?;
                let ok_clique = g.is_clique(&w.clique);
                let (ok_colouring, why) = match verify_colouring(&g, &w.colouring) {
                    Ok(b) => (b, None),
                    Err(Error::Domain(m)) => (false, Some(m)),
                    Err(e) => return Err(e),
                };
                let ok = ok_clique && ok_colouring && w.clique.len() == w.colouring.parts.len();
                println!(
                    "clique of size {}: {}; {} colour classes: {}",
                    w.clique.len(),
                    if ok_clique { "yes" } else { "no" },
                    w.colouring.parts.len(),
                    if ok_colouring { "cocliques partitioning the vertices" } else { "not a colouring" }
                );
                if let Some(m) = why {
                    println!("  {m}");
                }
                println!("clique number = chromatic number: {}", if ok { "yes" } else { "no" });
                return Ok(if ok { EXIT_DECIDED } else { EXIT_ERROR });
            }
            return Err(Error::Domain("verify needs --file with --t, or --colouring with --classes".into()));
        }
        Command::Witness { case_id, out, budget } => {
            let opts = WitnessOptions {
                cache_dir: cache_dir(),
                budget: budget.map(Duration::from_secs),
            };
            let w = section3_witness_with(&case_id, &opts)?;
            verify_witness(&w)?;
            println!(
                "{}: Γ_{}({},{}) clique of size {} and a colouring with {} cocliques (verified)",
                w.case_id,
                w.classes,
                w.params.n,
                w.params.k,
                w.clique.len(),
                w.colouring.parts.len()
            );
            if let Some(dir) = out {
                write_witness(&w, &dir)?;
                println!("wrote {}", dir.display());
            }
        }
        Command::Classify {
            scheme,
            budget,
            extended,
            out,
        } => {
            let b = Duration::from_secs(budget);
            let opts = ClassifyOptions {
                budget: Some(b),
                value_budget: if extended { b } else { ClassifyOptions::default().value_budget },
                witness: WitnessOptions {
                    cache_dir: cache_dir(),
                    budget: Some(b),
                },
                memory_budget_bytes: mem,
            };
            let r = classify_separation(scheme.n, scheme.k, &opts)?;
            emit(&out, &r, || {
                let mut s = format!("J({},{}), v = {}", r.n, r.k, r.v);
                if let Some(k0) = r.reduced_from {
                    s += &format!(" (answered for k = {k0} through the complementary scheme)");
                }
                s += "\n";
                for c in &r.per_class {
                    let est = |e: &jscheme::classify::Estimate| {
                        if e.proved {
                            e.value.to_string()
                        } else {
                            format!("{}..{}", e.value, e.upper_bound)
                        }
                    };
                    s += &format!(
                        "  {:<10} ω {:<10} α {:<10} 1-deg/τ {:<8} {}\n",
                        c.classes.to_string(),
                        est(&c.omega),
                        est(&c.alpha),
                        rat_string(&c.ratio.bound),
                        decision_text(&c.decision)
                    );
                }
                s += &format!("separation: {}\n", serde_json::to_string(&r.verdict).unwrap_or_default().trim_matches('"'));
                if let Some(w) = &r.witness {
                    s += &format!(
                        "  witness in Γ_{}: clique {} x coclique {} = {} ({})\n",
                        w.classes, w.check.clique_size, w.check.coclique_size, w.check.product, w.source
                    );
                }
                if !r.undecided.is_empty() {
                    let u: Vec<String> = r.undecided.iter().map(|c| c.to_string()).collect();
                    s += &format!("  undecided: {}\n", u.join(" "));
                }
                s += &format!(
                    "synchronization: {}\n",
                    serde_json::to_string(&r.sync_evidence.verdict).unwrap_or_default().trim_matches('"')
                );
                for note in &r.sync_evidence.notes {
                    s += &format!("  [{:?}] {}\n", note.source, note.text);
                }
                s
            })?;
            return Ok(if r.verdict == Verdict::Undecided { EXIT_UNDECIDED } else { EXIT_DECIDED });
        }
        Command::Tables { extended, budget, out } => {
            let opts = TableOptions {
                extended,
                budget: Some(Duration::from_secs(budget)),
                memory_budget_bytes: mem,
            };
            let set = reproduce_k4_tables(&opts)?;
            emit(&out, &set, || {
                let mut s = String::new();
                for t in &set.tables {
                    s += &format!("{} (graph Γ_{})\n", t.name, t.graph);
                    for row in &t.rows {
                        s += &format!("  n={:<3}", row.n);
                        for c in &row.cells {
                            let mark = match c.status {
                                CellStatus::Match => "ok",
                                CellStatus::Mismatch => "DIFF",
                                CellStatus::Timeout => "timeout",
                                CellStatus::TooLarge => "too large",
                            };
                            s += &format!(
                                "  {:?} expected {} got {} [{mark}]",
                                c.column,
                                c.expected,
                                c.computed.as_deref().unwrap_or("-")
                            );
                            if let Some(note) = &c.note {
                                s += &format!(" ({note})");
                            }
                        }
                        if row.ambiguous {
                            s += "  (one of several rows for this n)";
                        }
                        s.push('\n');
                    }
                }
                s += &format!(
                    "{} match, {} differ, {} unverified\n",
                    set.matched, set.mismatched, set.unverified
                );
                s
            })?;
            return Ok(if set.full_match { EXIT_DECIDED } else { EXIT_ERROR });
        }
        Command::Plane { q, budget, out } => {
            let c = projective_plane_conjecture_check(q, Some(Duration::from_secs(budget)))?;
            emit(&out, &c, || {
                format!(
                    "Γ_{{{q}}}({},{}): α = {}{}, pair-kernel size {}\n{} maximum cocliques{}, all pair-kernel: {}\nconjecture holds: {}\n",
                    c.n,
                    c.k,
                    c.max_coclique.value,
                    if c.max_coclique.proved { "" } else { " (not proved)" },
                    c.pair_kernel_size,
                    c.maximum_cocliques,
                    if c.exhaustive { "" } else { " (enumeration incomplete)" },
                    c.all_pair_kernel.map_or("unknown", |b| if b { "yes" } else { "no" }),
                    c.holds.map_or("undecided", |b| if b { "yes" } else { "no" }),
                )
            })?;
            return Ok(if c.holds.is_some() { EXIT_DECIDED } else { EXIT_UNDECIDED });
        }
    }
    Ok(EXIT_DECIDED)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_DECIDED });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Domain(_) | Error::Parse { .. } | Error::Lookup(_) => EXIT_USAGE,
                _ => EXIT_ERROR,
            })
        }
    }
}
