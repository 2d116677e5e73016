//! Corpora of small graphs and bound verification over them.
//!
//! Every `(graph, pattern)` pair is an independent task. With the `parallel`
//! feature the tasks run on a rayon pool; results are always merged back in
//! corpus order, so reports do not depend on the worker count.

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::constructions::random_tree;
use crate::edgelist::{self, ParseError};
use crate::exact::{iota_exact, is_isolating, EXACT_LIMIT};
use crate::graph::{
    canonical_form, canonical_graph, Graph, VertexSet, CANONICAL_LIMIT, MAX_VERTICES,
};
use crate::pattern::{is_special_pair, Pattern};
use crate::proof::{bound, isolate, SolverError, SolverErrorKind};

/// Largest `n` for [`enumerate_connected`].
pub const ENUMERATION_LIMIT: usize = CANONICAL_LIMIT;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("exhaustive enumeration supports n <= {ENUMERATION_LIMIT}, got {0}")]
    Unsupported(usize),
    #[error("no connected graph has n = {n} vertices and m = {m} edges")]
    Infeasible { n: usize, m: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{graph_id} / {pattern}: {source}")]
    ProofInvariant {
        graph_id: String,
        pattern: String,
        #[source]
        source: SolverError,
    },
}

/// Maps `f` over `items`, keeping input order.
///
/// `workers = Some(1)` always runs sequentially; `None` uses the default
/// pool. Without the `parallel` feature everything runs sequentially.
pub fn ordered_map<T, R, F>(items: &[T], workers: Option<usize>, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        match workers {
            Some(1) => items.iter().map(f).collect(),
            Some(w) => rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .expect("thread pool")
                .install(|| items.par_iter().map(&f).collect()),
            None => items.par_iter().map(f).collect(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        items.iter().map(f).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CorpusSource {
    Exhaustive(usize),
    Random {
        n: usize,
        m: usize,
        count: usize,
        seed: u64,
    },
    Files(Vec<PathBuf>),
    Given(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusGraph {
    pub id: String,
    pub graph: Graph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub source: CorpusSource,
    pub graphs: Vec<CorpusGraph>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Wraps arbitrary graphs, named `label-0`, `label-1`, ...
    pub fn from_graphs(label: &str, graphs: impl IntoIterator<Item = Graph>) -> Self {
        Corpus {
            source: CorpusSource::Given(label.to_string()),
            graphs: graphs
                .into_iter()
                .enumerate()
                .map(|(i, graph)| CorpusGraph {
                    id: format!("{label}-{i}"),
                    graph,
                })
                .collect(),
        }
    }

    /// Reads each file as an edge list.
    pub fn from_files(paths: &[PathBuf]) -> Result<Self, HarnessError> {
        let graphs = paths
            .iter()
            .map(|p| {
                Ok(CorpusGraph {
                    id: p.display().to_string(),
                    graph: edgelist::read_file(p)?,
                })
            })
            .collect::<Result<_, HarnessError>>()?;
        Ok(Corpus {
            source: CorpusSource::Files(paths.to_vec()),
            graphs,
        })
    }

    /// `count` random connected `(n, m)` graphs from one seeded stream.
    pub fn random(n: usize, m: usize, count: usize, seed: u64) -> Result<Self, HarnessError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let graphs = (0..count)
            .map(|i| {
                Ok(CorpusGraph {
                    id: format!("rand-{seed}-{i}"),
                    graph: random_connected_with(n, m, &mut rng)?,
                })
            })
            .collect::<Result<_, HarnessError>>()?;
        Ok(Corpus {
            source: CorpusSource::Random { n, m, count, seed },
            graphs,
        })
    }

    /// All connected classes on `1..=max_n` vertices.
    pub fn exhaustive_up_to(max_n: usize, workers: Option<usize>) -> Result<Self, HarnessError> {
        let mut graphs = Vec::new();
        for n in 1..=max_n {
            graphs.extend(enumerate_connected_with(n, workers)?.graphs);
        }
        Ok(Corpus {
            source: CorpusSource::Exhaustive(max_n),
            graphs,
        })
    }
}

/// One connected graph per isomorphism class on `n` vertices, in order of
/// canonical form. Each graph is in canonical labeling and its id is the
/// hex-encoded canonical form.
pub fn enumerate_connected(n: usize) -> Result<Corpus, HarnessError> {
    enumerate_connected_with(n, None)
}

/// Every connected graph has a vertex whose removal leaves it connected, so
/// the classes on `n` vertices are found by joining a new vertex to every
/// nonempty subset of every class on `n - 1` vertices and deduplicating by
/// canonical form.
pub fn enumerate_connected_with(n: usize, workers: Option<usize>) -> Result<Corpus, HarnessError> {
    if n > ENUMERATION_LIMIT {
        return Err(HarnessError::Unsupported(n));
    }
    let mut classes: Vec<Graph> = match n {
        0 => Vec::new(),
        _ => vec![Graph::empty(1)],
    };
    for size in 2..=n {
        let mut candidates = Vec::new();
        for g in &classes {
            for mask in 1u64..(1 << (size - 1)) {
                candidates.push((g, mask));
            }
        }
        let forms = ordered_map(&candidates, workers, |&(g, mask)| {
            let h = extend_by_vertex(g, VertexSet::from_bits(mask));
            (canonical_form(&h).expect("within limit"), h)
        });
        let unique: BTreeMap<Vec<u8>, Graph> = forms.into_iter().collect();
        classes = ordered_map(&unique.into_values().collect::<Vec<_>>(), workers, |g| {
            canonical_graph(g).expect("within limit")
        });
    }
    let graphs = ordered_map(&classes, workers, |g| CorpusGraph {
        id: hex::encode(canonical_form(g).expect("within limit")),
        graph: g.clone(),
    });
    Ok(Corpus {
        source: CorpusSource::Exhaustive(n),
        graphs,
    })
}

fn extend_by_vertex(g: &Graph, neighbors: VertexSet) -> Graph {
    let n = g.n();
    let mut edges = g.edges();
    edges.extend(neighbors.iter().map(|u| (u, n)));
    Graph::new(n + 1, &edges).expect("valid extension")
}

/// A connected `(n, m)` graph: a random Prüfer tree plus `m - n + 1` distinct
/// random extra edges. Deterministic per seed.
pub fn random_connected(n: usize, m: usize, seed: u64) -> Result<Graph, HarnessError> {
    random_connected_with(n, m, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_connected_with(
    n: usize,
    m: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Graph, HarnessError> {
    let max_m = n * n.saturating_sub(1) / 2;
    if n == 0 || n > MAX_VERTICES || m + 1 < n || m > max_m {
        return Err(HarnessError::Infeasible { n, m });
    }
    let mut edges = random_tree(n, rng);
    let tree = Graph::new(n, &edges).expect("tree");
    let mut spare: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !tree.has_edge(u, v))
        .collect();
    spare.shuffle(rng);
    edges.extend(spare.into_iter().take(m + 1 - n));
    Ok(Graph::new(n, &edges).expect("valid edges"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub use_exact: bool,
    pub fail_fast: bool,
    pub workers: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            use_exact: true,
            fail_fast: true,
            workers: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub pattern: String,
    pub k: usize,
    pub special: bool,
    pub iota_exact: Option<usize>,
    pub proof_size: Option<usize>,
    pub bound: usize,
    /// `proof`, `oracle` (exact fallback for `k <= 1`) or `exempt`.
    pub method: &'static str,
    pub isolating: bool,
    pub ok: bool,
    /// `tag:count` pairs joined by `;`, sorted by tag.
    pub case_tags: String,
    pub error: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReportSummary {
    pub rows: usize,
    pub violations: usize,
    pub special_rows: usize,
    /// Non-special rows whose constructed set has exactly the bound's size.
    pub equality_count: usize,
    pub case_tags: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub rows: Vec<ReportRow>,
    pub summary: ReportSummary,
}

impl VerificationReport {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8")
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary).expect("summary serializes")
    }
}

/// Checks the bound on every `(graph, pattern)` pair of the corpus.
///
/// With `fail_fast`, the first proof invariant violation (in corpus order)
/// is returned as an error; otherwise it becomes a failing row.
pub fn verify_corpus(
    corpus: &Corpus,
    patterns: &[Pattern],
    opts: VerifyOptions,
) -> Result<VerificationReport, HarnessError> {
    let tasks: Vec<(&CorpusGraph, &Pattern)> = corpus
        .graphs
        .iter()
        .flat_map(|g| patterns.iter().map(move |p| (g, p)))
        .collect();
    let results = ordered_map(&tasks, opts.workers, |&(g, p)| verify_one(g, p, opts));
    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        rows.push(r?);
    }
    let mut summary = ReportSummary {
        rows: rows.len(),
        ..Default::default()
    };
    for row in &rows {
        summary.violations += usize::from(!row.ok);
        summary.special_rows += usize::from(row.special);
        summary.equality_count += usize::from(!row.special && row.proof_size == Some(row.bound));
    }
    summary.case_tags = tag_histogram(rows.iter().flat_map(|r| parse_tags(&r.case_tags)));
    Ok(VerificationReport { rows, summary })
}

fn tag_histogram(pairs: impl Iterator<Item = (String, usize)>) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for (tag, count) in pairs {
        *out.entry(tag).or_insert(0) += count;
    }
    out
}

fn parse_tags(s: &str) -> impl Iterator<Item = (String, usize)> + '_ {
    s.split(';').filter(|t| !t.is_empty()).filter_map(|t| {
        let (tag, count) = t.rsplit_once(':')?;
        Some((tag.to_string(), count.parse().ok()?))
    })
}

fn verify_one(
    cg: &CorpusGraph,
    pattern: &Pattern,
    opts: VerifyOptions,
) -> Result<ReportRow, HarnessError> {
    let g = &cg.graph;
    let k = pattern.k();
    let connected = g.is_connected();
    let special = connected && g.n() > 0 && is_special_pair(g, pattern);
    let b = bound(g.m(), k);
    let iota = (opts.use_exact && g.n() <= EXACT_LIMIT)
        .then(|| iota_exact(g, pattern).expect("within limit").iota);
    let mut row = ReportRow {
        graph_id: cg.id.clone(),
        n: g.n(),
        m: g.m(),
        pattern: pattern.name().to_string(),
        k,
        special,
        iota_exact: iota,
        proof_size: None,
        bound: b,
        method: "exempt",
        isolating: false,
        ok: true,
        case_tags: String::new(),
        error: String::new(),
    };
    if special {
        return Ok(row);
    }
    if k <= 1 {
        if g.n() > EXACT_LIMIT {
            row.ok = false;
            row.error = format!("exact fallback needs n <= {EXACT_LIMIT}");
            return Ok(row);
        }
        let r = iota_exact(g, pattern).expect("within limit");
        row.method = "oracle";
        row.proof_size = Some(r.iota);
        row.isolating = is_isolating(g, pattern, r.witness);
        row.ok = row.isolating && (!connected || r.iota <= b);
        return Ok(row);
    }
    row.method = "proof";
    match isolate(g, pattern) {
        Ok(cert) => {
            let size = cert.size();
            row.proof_size = Some(size);
            row.isolating = cert.isolating;
            let hist = tag_histogram(cert.tags().map(|t| (t.as_str().to_string(), 1)));
            row.case_tags = hist
                .iter()
                .map(|(t, c)| format!("{t}:{c}"))
                .collect::<Vec<_>>()
                .join(";");
            let bound_ok = !cert.bound_applies || size <= b;
            let exact_ok = iota.is_none_or(|i| i <= size && (!cert.bound_applies || i <= b));
            row.ok = cert.isolating && bound_ok && exact_ok;
        }
        Err(e) if e.kind == SolverErrorKind::ProofInvariantViolated && opts.fail_fast => {
            return Err(HarnessError::ProofInvariant {
                graph_id: cg.id.clone(),
                pattern: pattern.name().to_string(),
                source: e,
            });
        }
        Err(e) => {
            row.ok = false;
            row.error = e.message;
        }
    }
    Ok(row)
}

/// Graphs of the corpus with `ι(G, F) = ⌊(m+1)/(k+2)⌋ > 0`, canonically
/// relabeled where the size allows.
pub fn find_extremal(pattern: &Pattern, corpus: &Corpus, workers: Option<usize>) -> Vec<Graph> {
    let hits = ordered_map(&corpus.graphs, workers, |cg| {
        let g = &cg.graph;
        if g.n() > EXACT_LIMIT {
            return None;
        }
        let b = bound(g.m(), pattern.k());
        let iota = iota_exact(g, pattern).expect("within limit").iota;
        (b > 0 && iota == b).then(|| canonical_graph(g).unwrap_or_else(|_| g.clone()))
    });
    hits.into_iter().flatten().collect()
}
