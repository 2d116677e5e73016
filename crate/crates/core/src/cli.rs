//! The `isolation-kit` command line.
//!
//! Exit codes: 0 success, 1 violations found, 2 usage or input error,
//! 3 proof invariant violated.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::constructions::{
    build_special, verify_special, Attach, BuildOptions, Remainder, TreeShape,
};
use crate::edgelist;
use crate::exact::{iota_exact, is_isolating};
use crate::graph::{Graph, VertexSet};
use crate::harness::{find_extremal, verify_corpus, Corpus, HarnessError, VerifyOptions};
use crate::pattern::{Pattern, BUILTIN_NAMES};
use crate::proof::{bound, isolate, Certificate, SolverErrorKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

/// Environment variable read when `--workers` is not given.
pub const WORKERS_ENV: &str = "ISOLATION_KIT_WORKERS";

#[derive(Debug, Parser)]
#[command(
    name = "isolation-kit",
    version,
    about = "F-isolation numbers for patterns dominated by a vertex"
)]
struct Cli {
    /// Worker threads for corpus commands (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Smallest isolating set by brute force.
    SolveExact {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Isolating set within floor((m+1)/(k+2)) from the constructive solver.
    Solve {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        graph: PathBuf,
        /// Recover with the exact solver on special pairs or invariant failures.
        #[arg(long)]
        fallback_exact: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Prints floor((m+1)/(k+2)).
    Bound {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
    /// Writes an (m, F)-special graph and a JSON sidecar describing it.
    GenerateSpecial {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = TreeArg::Path)]
        tree: TreeArg,
        /// Remainder graph without edges (requires m+1 divisible by k+2).
        #[arg(long, conflicts_with = "remainder")]
        pure: bool,
        /// `path` or an edge-list file whose vertex 0 becomes v_q.
        #[arg(long)]
        remainder: Option<String>,
        #[arg(long, value_enum, default_value_t = AttachArg::Dominator)]
        attach: AttachArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Sidecar path (default: `<out>.json`).
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Checks the bound over a corpus.
    Verify {
        /// Built-in names or edge-list files; repeat or separate with commas; `all` for every built-in.
        #[arg(long, required = true, value_delimiter = ',')]
        pattern: Vec<String>,
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Also compute exact isolation numbers.
        #[arg(long)]
        exact: bool,
        /// Stop with exit code 3 at the first proof invariant violation.
        #[arg(long)]
        fail_fast: bool,
        /// CSV report path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON summary path.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Lists corpus graphs attaining the bound.
    FindExtremal {
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Write the graphs as concatenated edge lists.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lists the built-in patterns.
    Patterns,
}

#[derive(Debug, Args)]
struct CorpusArgs {
    /// Every connected graph on 1..=N vertices (N <= 8).
    #[arg(long)]
    exhaustive: Option<usize>,
    /// Random connected graphs: vertex count.
    #[arg(long, requires_all = ["m", "count"])]
    n: Option<usize>,
    /// Random connected graphs: edge count.
    #[arg(long)]
    m: Option<usize>,
    /// Random connected graphs: how many to draw.
    #[arg(long)]
    count: Option<usize>,
    /// Random connected graphs: RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list files.
    #[arg(long)]
    graph: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeArg {
    Path,
    Star,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AttachArg {
    Dominator,
    Random,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let workers = cli
        .workers
        .or_else(|| std::env::var(WORKERS_ENV).ok()?.parse().ok());
    match dispatch(cli.command, workers, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    usage(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| usage(format!("stdout: {e}")))
}

/// A built-in name, or an edge-list file named by its stem.
fn load_pattern(selector: &str) -> Result<Pattern, Failure> {
    if BUILTIN_NAMES.contains(&selector.to_ascii_lowercase().as_str()) {
        return Pattern::builtin(selector).map_err(usage);
    }
    let path = Path::new(selector);
    if !path.exists() {
        return Err(usage(format!(
            "unknown pattern `{selector}` (built-ins: {})",
            BUILTIN_NAMES.join(", ")
        )));
    }
    let g = edgelist::read_file(path).map_err(usage)?;
    let name = path
        .file_stem()
        .map_or(selector.to_string(), |s| s.to_string_lossy().into_owned());
    Pattern::new(name, g).map_err(|e| usage(format!("{selector}: {e}")))
}

fn load_patterns(selectors: &[String]) -> Result<Vec<Pattern>, Failure> {
    let mut out = Vec::new();
    for s in selectors {
        if s == "all" {
            out.extend(Pattern::all_builtins());
        } else {
            out.push(load_pattern(s)?);
        }
    }
    Ok(out)
}

fn load_corpus(args: &CorpusArgs, workers: Option<usize>) -> Result<Corpus, Failure> {
    let chosen = usize::from(args.exhaustive.is_some())
        + usize::from(args.n.is_some())
        + usize::from(!args.graph.is_empty());
    if chosen != 1 {
        return Err(usage(
            "choose exactly one corpus: --exhaustive N, --n/--m/--count, or --graph FILE",
        ));
    }
    let corpus = if let Some(n) = args.exhaustive {
        Corpus::exhaustive_up_to(n, workers)
    } else if let (Some(n), Some(m), Some(count)) = (args.n, args.m, args.count) {
        Corpus::random(n, m, count, args.seed)
    } else {
        Corpus::from_files(&args.graph)
    };
    corpus.map_err(usage)
}

fn set_text(set: VertexSet) -> String {
    let items: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

#[derive(Serialize)]
struct SolveJson<'a> {
    pattern: &'a str,
    n: usize,
    m: usize,
    method: &'a str,
    set: Vec<usize>,
    size: usize,
    bound: usize,
    isolating: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<&'a Certificate>,
}

fn print_solution(
    out: &mut dyn Write,
    format: Format,
    pattern: &Pattern,
    g: &Graph,
    method: &str,
    set: VertexSet,
    cert: Option<&Certificate>,
) -> Result<(), Failure> {
    let b = bound(g.m(), pattern.k());
    let isolating = is_isolating(g, pattern, set);
    let text = match format {
        Format::Json => {
            let json = SolveJson {
                pattern: pattern.name(),
                n: g.n(),
                m: g.m(),
                method,
                set: set.to_vec(),
                size: set.len(),
                bound: b,
                isolating,
                certificate: cert,
            };
            serde_json::to_string_pretty(&json).expect("serializable") + "\n"
        }
        Format::Text => {
            let mut t = format!(
                "pattern: {} (k={})\ngraph: n={} m={}\nmethod: {method}\nset: {}\nsize: {}\nbound: {b}\nisolating: {isolating}\n",
                pattern.display_name(),
                pattern.k(),
                g.n(),
                g.m(),
                set_text(set),
                set.len(),
            );
            if method == "oracle" {
                t.push_str(&format!("ι={} (oracle)\n", set.len()));
            }
            if let Some(c) = cert {
                let tags: Vec<&str> = c.tags().map(|t| t.as_str()).collect();
                t.push_str(&format!("cases: {}\n", tags.join(", ")));
                if !c.special_components.is_empty() {
                    let comps: Vec<String> =
                        c.special_components.iter().map(|s| set_text(*s)).collect();
                    t.push_str(&format!("special components: {}\n", comps.join(" ")));
                }
            }
            t
        }
    };
    emit(out, &text)
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    edgelist::read_file(path).map_err(usage)
}

fn dispatch(command: Command, workers: Option<usize>, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Patterns => {
            let mut text = String::from("name  k  ell  dominators\n");
            for p in Pattern::all_builtins() {
                text.push_str(&format!(
                    "{:<5} {:<2} {:<4} {:?}\n",
                    p.name(),
                    p.k(),
                    p.ell(),
                    p.dominators()
                ));
            }
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Bound { m, k } => {
            emit(out, &format!("{}\n", bound(m, k)))?;
            Ok(EXIT_OK)
        }
        Command::SolveExact {
            pattern,
            graph,
            format,
        } => {
            let pattern = load_pattern(&pattern)?;
            let g = read_graph(&graph)?;
            let r = iota_exact(&g, &pattern).map_err(usage)?;
            print_solution(out, format, &pattern, &g, "oracle", r.witness, None)?;
            Ok(EXIT_OK)
        }
        Command::Solve {
            pattern,
            graph,
            fallback_exact,
            format,
        } => {
            let pattern = load_pattern(&pattern)?;
            let g = read_graph(&graph)?;
            let oracle = |out: &mut dyn Write| -> Outcome {
                let r = iota_exact(&g, &pattern).map_err(usage)?;
                print_solution(out, format, &pattern, &g, "oracle", r.witness, None)?;
                Ok(EXIT_OK)
            };
            match isolate(&g, &pattern) {
                Ok(cert) => {
                    print_solution(out, format, &pattern, &g, "proof", cert.set, Some(&cert))?;
                    Ok(EXIT_OK)
                }
                Err(e) if e.kind == SolverErrorKind::PatternTooSmall => oracle(out),
                Err(_) if fallback_exact => oracle(out),
                Err(e) if e.kind == SolverErrorKind::SpecialPairInput => Err(usage(e.message)),
                Err(e) => Err(Failure {
                    code: EXIT_INVARIANT,
                    message: format!(
                        "{}\ntrace: {}",
                        e.message,
                        serde_json::to_string(&e.trace).expect("serializable")
                    ),
                }),
            }
        }
        Command::GenerateSpecial {
            pattern,
            m,
            tree,
            pure,
            remainder,
            attach,
            seed,
            out: path,
            spec,
        } => {
            let pattern = load_pattern(&pattern)?;
            let remainder = match (pure, remainder.as_deref()) {
                (true, _) => Remainder::Edgeless,
                (false, None | Some("path")) => Remainder::Path,
                (false, Some(file)) => Remainder::Graph(read_graph(Path::new(file))?),
            };
            let options = BuildOptions {
                tree: match tree {
                    TreeArg::Path => TreeShape::Path,
                    TreeArg::Star => TreeShape::Star,
                    TreeArg::Random => TreeShape::Random(seed),
                },
                remainder,
                attach: match attach {
                    AttachArg::Dominator => Attach::Dominator,
                    AttachArg::Random => Attach::Random(seed),
                },
            };
            let built = build_special(&pattern, m, &options).map_err(usage)?;
            let check = verify_special(&built, &pattern);
            write_file(&path, &edgelist::write(&built.graph))?;
            let spec_path = spec.unwrap_or_else(|| {
                let mut p = path.clone().into_os_string();
                p.push(".json");
                PathBuf::from(p)
            });
            #[derive(Serialize)]
            struct Sidecar<'a> {
                spec: &'a crate::constructions::SpecialGraphSpec,
                connections: &'a [usize],
                constituents: Vec<Vec<usize>>,
                check: &'a crate::constructions::SpecialCheck,
            }
            let sidecar = Sidecar {
                spec: &built.spec,
                connections: &built.connections,
                constituents: built
                    .constituent_vertex_sets
                    .iter()
                    .map(|s| s.to_vec())
                    .collect(),
                check: &check,
            };
            write_file(
                &spec_path,
                &(serde_json::to_string_pretty(&sidecar).expect("serializable") + "\n"),
            )?;
            emit(
                out,
                &format!(
                    "wrote {} (n={}, m={}, q={}, r={}, pure={}, verified={})\n",
                    path.display(),
                    built.graph.n(),
                    built.graph.m(),
                    built.spec.q,
                    built.spec.r,
                    built.spec.pure,
                    check.passed
                ),
            )?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            pattern,
            corpus,
            exact,
            fail_fast,
            out: csv_path,
            summary,
        } => {
            let patterns = load_patterns(&pattern)?;
            let corpus = load_corpus(&corpus, workers)?;
            let opts = VerifyOptions {
                use_exact: exact,
                fail_fast,
                workers,
            };
            let report = match verify_corpus(&corpus, &patterns, opts) {
                Ok(r) => r,
                Err(e @ HarnessError::ProofInvariant { .. }) => {
                    let trace = match &e {
                        HarnessError::ProofInvariant { source, .. } => {
                            serde_json::to_string(&source.trace).expect("serializable")
                        }
                        _ => unreachable!(),
                    };
                    return Err(Failure {
                        code: EXIT_INVARIANT,
                        message: format!("{e}\ntrace: {trace}"),
                    });
                }
                Err(e) => return Err(usage(e)),
            };
            if let Some(p) = &csv_path {
                write_file(p, &report.to_csv())?;
            }
            if let Some(p) = &summary {
                write_file(p, &(report.summary_json() + "\n"))?;
            }
            let s = &report.summary;
            let tags: Vec<String> = s
                .case_tags
                .iter()
                .map(|(t, c)| format!("{t}={c}"))
                .collect();
            emit(
                out,
                &format!(
                    "rows: {}\nviolations: {}\nspecial rows: {}\nequality: {}\ncase tags: {}\n",
                    s.rows,
                    s.violations,
                    s.special_rows,
                    s.equality_count,
                    tags.join(" ")
                ),
            )?;
            Ok(if s.violations > 0 {
                EXIT_VIOLATIONS
            } else {
                EXIT_OK
            })
        }
        Command::FindExtremal {
            pattern,
            corpus,
            out: path,
        } => {
            let pattern = load_pattern(&pattern)?;
            let corpus = load_corpus(&corpus, workers)?;
            let found = find_extremal(&pattern, &corpus, workers);
            let mut listing = String::new();
            let mut files = String::new();
            for g in &found {
                let id = crate::graph::canonical_form(g)
                    .map(hex::encode)
                    .unwrap_or_else(|_| "-".into());
                listing.push_str(&format!(
                    "{id} n={} m={} iota={}\n",
                    g.n(),
                    g.m(),
                    bound(g.m(), pattern.k())
                ));
                files.push_str(&format!("# {id}\n{}", edgelist::write(g)));
            }
            listing.push_str(&format!("found: {}\n", found.len()));
            emit(out, &listing)?;
            if let Some(p) = &path {
                write_file(p, &files)?;
            }
            Ok(EXIT_OK)
        }
    }
}
