//! `fanramsey`: witness search, instance generation, exhaustive Ramsey
//! checks and seeded batches.
//!
//! Exit codes: 0 witness found, 1 bad input or I/O, 2 a guaranteed step
//! failed (a reproducer is written), 3 cycle search budget exhausted, 64
//! `m`, `n` or the host order outside the guaranteed range.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use fanramsey::graph6::{parse_graph6_file, write_graph6};
use fanramsey::instances::{tree_instance, unicyclic_instance, HostFamily, TreeFamily};
use fanramsey::oracle::{brute_ramsey, extremal_graph};
use fanramsey::trees::{
    random_unicyclic, unicyclic_with_cycle, Tree, TreeJson, UnicyclicGraph, UnicyclicJson,
};
use fanramsey::witness::{
    find_witness_tree, find_witness_unicyclic_traced, EngineError, UnicyclicOptions, Witness,
    WitnessJson, DEFAULT_SEARCH_BUDGET,
};
use fanramsey::Graph;
use rayon::prelude::*;
use serde::Serialize;

mod named;

const EXIT_INPUT: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_HYPOTHESIS: u8 = 64;

#[derive(Parser)]
#[command(
    name = "fanramsey",
    version,
    about = "Fan versus tree and unicyclic Ramsey witnesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a fan in the host or the pattern in its complement.
    Witness(WitnessArgs),
    /// Write a seeded host (graph6) or pattern (JSON).
    Generate(GenerateArgs),
    /// Exhaustive Ramsey number of two small named graphs.
    Brute(BruteArgs),
    /// Run a seeded suite of random instances.
    Batch(BatchArgs),
}

#[derive(clap::Args)]
struct WitnessArgs {
    /// Host graph in graph6, one graph.
    #[arg(long)]
    host: PathBuf,
    /// Tree or unicyclic pattern as `{"n", "edges", "t1"?, "t2"?}`.
    #[arg(long)]
    pattern: PathBuf,
    #[arg(long)]
    m: usize,
    /// Cycle search step budget.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    /// Recorded in reproducers; the engines themselves are deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for reproducer bundles.
    #[arg(long, default_value = ".")]
    repro_dir: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    /// `K_{n−1,n−1}`.
    Extremal,
    /// Host on `2n − 1` vertices from `--family`.
    Host,
    Tree,
    Unicyclic,
}

#[derive(clap::Args)]
struct GenerateArgs {
    kind: GenKind,
    #[arg(long)]
    n: usize,
    /// Hosts: empty, complete, extremal+vertex, random. Trees: path, broom,
    /// random. Unicyclic: random, near-cycle.
    #[arg(long, default_value = "random")]
    family: String,
    /// Edge probability of random hosts.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Broom handle size is derived from `m`.
    #[arg(long, default_value_t = 9)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct BruteArgs {
    /// First graph, e.g. `P4`, `S5`, `C5`, `K3`.
    h: String,
    /// Second graph, e.g. `2K2`, `F1`.
    k: String,
    /// Largest order tried.
    #[arg(long, default_value_t = 10)]
    max_order: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PatternKind {
    Tree,
    Unicyclic,
}

#[derive(clap::Args)]
struct BatchArgs {
    #[arg(long, value_enum, default_value_t = PatternKind::Tree)]
    kind: PatternKind,
    #[arg(long)]
    m: usize,
    /// Pattern order; defaults to `m² − m + 1`.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 18)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    /// JSON lines, one per trial, in trial order.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    repro_dir: PathBuf,
}

/// Everything needed to replay a failed guaranteed step.
#[derive(Serialize)]
struct Reproducer<'a> {
    step: &'a str,
    detail: &'a str,
    m: usize,
    seed: u64,
    budget: u64,
    host_graph6: String,
    pattern: UnicyclicJson,
}

enum Pattern {
    Tree(Tree),
    Unicyclic(UnicyclicGraph),
}

impl Pattern {
    fn order(&self) -> usize {
        match self {
            Pattern::Tree(t) => t.order(),
            Pattern::Unicyclic(u) => u.order(),
        }
    }

    fn json(&self) -> UnicyclicJson {
        match self {
            Pattern::Tree(t) => {
                let j = TreeJson::from(t);
                UnicyclicJson {
                    n: j.n,
                    edges: j.edges,
                    t1: None,
                    t2: None,
                }
            }
            Pattern::Unicyclic(u) => UnicyclicJson::from(u),
        }
    }

    /// Range where a witness is guaranteed, checked before any engine runs.
    fn check(&self, order: usize, m: usize) -> Result<(), String> {
        let n = self.order();
        let min_m = match self {
            Pattern::Tree(_) => 9,
            Pattern::Unicyclic(_) => 18,
        };
        if m < min_m {
            return Err(format!("m = {m} is below the required {min_m}"));
        }
        if n < m * m - m + 1 {
            return Err(format!("n = {n} is below m² − m + 1 = {}", m * m - m + 1));
        }
        if order != 2 * n - 1 {
            return Err(format!(
                "host has {order} vertices, expected 2n − 1 = {}",
                2 * n - 1
            ));
        }
        Ok(())
    }

    fn run(&self, g: &Graph, m: usize, budget: u64) -> Result<Witness, EngineError> {
        match self {
            Pattern::Tree(t) => find_witness_tree(g, t, m),
            Pattern::Unicyclic(u) => find_witness_unicyclic_traced(
                g,
                u,
                m,
                UnicyclicOptions {
                    search_budget: budget,
                },
            )
            .map(|(w, _)| w),
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("RAMSEY_LOG", "warn")).init();
    // Usage errors exit 1, keeping 2 for violations.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Witness(a) => cmd_witness(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Brute(a) => cmd_brute(a),
        Command::Batch(a) => cmd_batch(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_pattern(text: &str) -> Result<Pattern, Failure> {
    let j: UnicyclicJson =
        serde_json::from_str(text).map_err(|e| Failure::input(format!("pattern JSON: {e}")))?;
    let bad = |e: fanramsey::trees::TreeError| Failure::input(format!("pattern: {e}"));
    if j.edges.len() + 1 == j.n {
        Tree::try_from(TreeJson {
            n: j.n,
            edges: j.edges,
        })
        .map(Pattern::Tree)
        .map_err(bad)
    } else if j.edges.len() == j.n {
        UnicyclicGraph::try_from(j)
            .map(Pattern::Unicyclic)
            .map_err(bad)
    } else {
        Err(Failure::input(format!(
            "{} edges on {} vertices is neither a tree nor unicyclic",
            j.edges.len(),
            j.n
        )))
    }
}

/// Maps an engine error to its exit code, writing a reproducer for
/// violations.
fn engine_failure(
    e: EngineError,
    g: &Graph,
    p: &Pattern,
    m: usize,
    seed: u64,
    budget: u64,
    repro: &Path,
) -> Failure {
    match &e {
        EngineError::Hypothesis(msg) => Failure {
            code: EXIT_HYPOTHESIS,
            message: msg.clone(),
        },
        EngineError::SearchBudgetExhausted { .. } => Failure {
            code: EXIT_BUDGET,
            message: e.to_string(),
        },
        EngineError::TheoremViolation { step, detail } => {
            let bundle = Reproducer {
                step,
                detail,
                m,
                seed,
                budget,
                host_graph6: write_graph6(g),
                pattern: p.json(),
            };
            let text = serde_json::to_string_pretty(&bundle).expect("reproducer serializes");
            let note = match fs::write(repro, text) {
                Ok(()) => format!("reproducer written to {}", repro.display()),
                Err(err) => format!("could not write reproducer {}: {err}", repro.display()),
            };
            Failure {
                code: EXIT_VIOLATION,
                message: format!("{e}; {note}"),
            }
        }
        EngineError::Pattern(_) => Failure::input(e.to_string()),
    }
}

fn cmd_witness(a: WitnessArgs) -> Result<(), Failure> {
    let hosts = parse_graph6_file(&read(&a.host)?).map_err(|(line, e)| {
        Failure::input(format!("{} line {}: {e}", a.host.display(), line + 1))
    })?;
    let [g] = hosts.as_slice() else {
        return Err(Failure::input(format!(
            "{} holds {} graphs, expected one",
            a.host.display(),
            hosts.len()
        )));
    };
    let p = parse_pattern(&read(&a.pattern)?)?;
    p.check(g.order(), a.m).map_err(|message| Failure {
        code: EXIT_HYPOTHESIS,
        message,
    })?;
    let start = Instant::now();
    let repro = a.repro_dir.join(format!("repro-seed{}.json", a.seed));
    let w = p
        .run(g, a.m, a.budget)
        .map_err(|e| engine_failure(e, g, &p, a.m, a.seed, a.budget, &repro))?;
    log::info!(
        "{} witness in {:.3}s",
        w.kind(),
        start.elapsed().as_secs_f64()
    );
    let json =
        serde_json::to_string(&WitnessJson::new(&w, p.order(), a.m)).expect("witness serializes");
    emit(a.out.as_deref(), &(json + "\n"))
}

fn cmd_generate(a: GenerateArgs) -> Result<(), Failure> {
    let unknown = |kind: &str| Failure::input(format!("unknown {kind} family {:?}", a.family));
    let text = match a.kind {
        GenKind::Extremal => {
            if a.n < 2 {
                return Err(Failure::input("the extremal graph needs n ≥ 2"));
            }
            write_graph6(&extremal_graph(a.n)) + "\n"
        }
        GenKind::Host => {
            let family = match a.family.as_str() {
                "empty" => HostFamily::Empty,
                "complete" => HostFamily::Complete,
                "extremal+vertex" => HostFamily::ExtremalPlusVertex,
                "random" => HostFamily::Random(a.p),
                _ => return Err(unknown("host")),
            };
            write_graph6(&family.build(a.n, a.seed)) + "\n"
        }
        GenKind::Tree => {
            let family = match a.family.as_str() {
                "path" => TreeFamily::Path,
                "broom" => TreeFamily::Broom,
                "random" => TreeFamily::Random,
                _ => return Err(unknown("tree")),
            };
            serde_json::to_string(&TreeJson::from(&family.build(a.n, a.m, a.seed)))
                .expect("tree serializes")
                + "\n"
        }
        GenKind::Unicyclic => {
            if a.n < 4 {
                return Err(Failure::input("unicyclic patterns need n ≥ 4"));
            }
            let u = match a.family.as_str() {
                "random" => random_unicyclic(a.n, a.seed),
                "near-cycle" => unicyclic_with_cycle(a.n, a.n - 1, a.seed),
                _ => return Err(unknown("unicyclic")),
            };
            serde_json::to_string(&UnicyclicJson::from(&u)).expect("pattern serializes") + "\n"
        }
    };
    emit(a.out.as_deref(), &text)
}

fn cmd_brute(a: BruteArgs) -> Result<(), Failure> {
    let h = named::parse(&a.h).map_err(Failure::input)?;
    let k = named::parse(&a.k).map_err(Failure::input)?;
    let start = Instant::now();
    let r =
        brute_ramsey(&h.graph, &k.graph, a.max_order).map_err(|e| Failure::input(e.to_string()))?;
    let mut line = format!("R = {r}");
    // Tree versus matching: R(T_n, mK_2) = n + m − 1.
    if let (true, Some(m)) = (h.is_tree(), k.matching_size) {
        let formula = h.graph.order() + m - 1;
        let verdict = if formula == r { "MATCH" } else { "MISMATCH" };
        line += &format!(" (formula: {formula}, {verdict})");
    }
    log::info!("brute force took {:.3}s", start.elapsed().as_secs_f64());
    println!("{line}");
    Ok(())
}

#[derive(Serialize)]
struct TrialLine {
    trial: usize,
    host: String,
    pattern: String,
    witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn cmd_batch(a: BatchArgs) -> Result<(), Failure> {
    let min_m = if a.kind == PatternKind::Tree { 9 } else { 18 };
    if a.m < min_m {
        return Err(Failure {
            code: EXIT_HYPOTHESIS,
            message: format!("m = {} is below the required {min_m}", a.m),
        });
    }
    let n = a.n.unwrap_or(a.m * a.m - a.m + 1);
    if n < a.m * a.m - a.m + 1 {
        return Err(Failure {
            code: EXIT_HYPOTHESIS,
            message: format!("n = {n} is below m² − m + 1 = {}", a.m * a.m - a.m + 1),
        });
    }
    let results: Vec<(TrialLine, Option<Failure>)> = (0..a.trials)
        .into_par_iter()
        .map(|i| {
            let (host_label, pattern_label, g, p) = match a.kind {
                PatternKind::Tree => {
                    let inst = tree_instance(i, n, a.m, a.seed);
                    (
                        inst.host_family.to_string(),
                        inst.tree_family.to_string(),
                        inst.host,
                        Pattern::Tree(inst.tree),
                    )
                }
                PatternKind::Unicyclic => {
                    let inst = unicyclic_instance(i, n, a.seed);
                    (
                        inst.host_family.to_string(),
                        inst.pattern_family.to_string(),
                        inst.host,
                        Pattern::Unicyclic(inst.pattern),
                    )
                }
            };
            let start = Instant::now();
            let outcome = p.run(&g, a.m, a.budget);
            log::info!(
                "trial {i}: {host_label} × {pattern_label} in {:.3}s",
                start.elapsed().as_secs_f64()
            );
            let mut line = TrialLine {
                trial: i,
                host: host_label,
                pattern: pattern_label,
                witness: None,
                error: None,
            };
            match outcome {
                Ok(w) => {
                    line.witness = Some(WitnessJson::new(&w, n, a.m));
                    (line, None)
                }
                Err(e) => {
                    line.error = Some(e.to_string());
                    let repro = a.repro_dir.join(format!("repro-trial{i}.json"));
                    (
                        line,
                        Some(engine_failure(e, &g, &p, a.m, a.seed, a.budget, &repro)),
                    )
                }
            }
        })
        .collect();
    let mut text = String::new();
    let mut worst: Option<Failure> = None;
    let mut kinds = std::collections::BTreeMap::<String, usize>::new();
    for (line, failure) in results {
        text += &serde_json::to_string(&line).expect("trial serializes");
        text.push('\n');
        let kind = line
            .witness
            .as_ref()
            .map_or("error".to_string(), |w| w.kind.clone());
        *kinds.entry(kind).or_default() += 1;
        if let Some(f) = failure {
            eprintln!("trial {}: {}", line.trial, f.message);
            // Violations outrank budget exhaustion.
            let rank = |c: u8| if c == EXIT_VIOLATION { 2 } else { 1 };
            if worst.as_ref().is_none_or(|w| rank(f.code) > rank(w.code)) {
                worst = Some(f);
            }
        }
    }
    emit(a.out.as_deref(), &text)?;
    let summary: Vec<String> = kinds.iter().map(|(k, c)| format!("{k}: {c}")).collect();
    eprintln!("{} trials, {}", a.trials, summary.join(", "));
    match worst {
        Some(f) => Err(Failure {
            code: f.code,
            message: "batch had failing trials".into(),
        }),
        None => Ok(()),
    }
}
