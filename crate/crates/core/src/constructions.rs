//! Extremal `(m, F)`-special graphs.
//!
//! With `m + 1 = q(k+2) + r` and `0 ≤ r ≤ k+1`, the graph consists of `q`
//! constituents (a copy `F_i` of `F` plus a connection vertex `v_i` joined to
//! one vertex `w_i ∈ V(F_i)`), a tree `T` on the connection vertices, and a
//! connected remainder graph `T'` with `r` edges that meets the constituents
//! only in `v_q`. Every isolating set must meet each constituent, and the
//! connection vertices isolate, so `ι = q`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{iota_exact, is_isolating};
use crate::graph::{is_isomorphic, Graph, GraphError, VertexSet, MAX_VERTICES};
use crate::pattern::{is_special_pair, Pattern};
use crate::proof::bound;

/// Largest build on which [`verify_special`] runs the exact solver.
pub const EXACT_CHECK_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("remainder must have {expected} edges, got {got}")]
    RemainderEdges { expected: usize, got: usize },
    #[error("remainder graph is disconnected or empty")]
    RemainderDisconnected,
    #[error("q = 0 needs a connected remainder graph with m = {0} edges")]
    MissingRemainder(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Shape of the tree `T` on the connection vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeShape {
    Path,
    /// All connections joined to `v_1`.
    Star,
    /// Uniform labeled tree from a random Prüfer sequence.
    Random(u64),
}

/// The remainder graph `T'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Remainder {
    /// No edges; only allowed when `r = 0`.
    Edgeless,
    /// An `r`-edge path starting at `v_q`.
    Path,
    /// An explicit connected graph; its vertex 0 is identified with `v_q`.
    Graph(Graph),
}

/// Which vertex of each `F`-copy the connection is joined to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Attach {
    Dominator,
    Random(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildOptions {
    pub tree: TreeShape,
    pub remainder: Remainder,
    pub attach: Attach,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            tree: TreeShape::Path,
            remainder: Remainder::Edgeless,
            attach: Attach::Dominator,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialGraphSpec {
    pub pattern: String,
    pub k: usize,
    pub m: usize,
    pub q: usize,
    pub r: usize,
    pub tree: TreeShape,
    /// Edges of `T` as pairs of constituent indices.
    pub tree_edges: Vec<(usize, usize)>,
    /// Edges of `T'` in its own labeling; vertex 0 is `v_q`.
    pub remainder_edges: Vec<(usize, usize)>,
    /// For each constituent, the pattern vertex playing `w_i`.
    pub attach: Vec<usize>,
    pub pure: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuiltSpecial {
    pub graph: Graph,
    pub spec: SpecialGraphSpec,
    /// `V(G_i)`, connection vertex included.
    pub constituent_vertex_sets: Vec<VertexSet>,
    /// `v_1, .., v_q`.
    pub connections: Vec<usize>,
}

/// `(q, r)` with `m + 1 = q(k+2) + r`, `0 ≤ r ≤ k+1`.
pub fn quotient_remainder(m: usize, k: usize) -> (usize, usize) {
    ((m + 1) / (k + 2), (m + 1) % (k + 2))
}

/// Builds an `(m, F)`-special graph.
///
/// Constituent `i` occupies vertices `i(ℓ+1) .. (i+1)(ℓ+1)`, connection
/// vertex first; the remainder's extra vertices come last.
pub fn build_special(
    pattern: &Pattern,
    m: usize,
    options: &BuildOptions,
) -> Result<BuiltSpecial, ConstructionError> {
    let k = pattern.k();
    let ell = pattern.ell();
    let (q, r) = quotient_remainder(m, k);

    let remainder = match &options.remainder {
        Remainder::Edgeless => Graph::empty(1),
        Remainder::Path => Graph::path(r + 1),
        Remainder::Graph(t) => t.clone(),
    };
    if remainder.n() == 0 || !remainder.is_connected() {
        return Err(ConstructionError::RemainderDisconnected);
    }

    if q == 0 {
        if matches!(options.remainder, Remainder::Edgeless) && m > 0 {
            return Err(ConstructionError::MissingRemainder(m));
        }
        if remainder.m() != m {
            return Err(ConstructionError::RemainderEdges {
                expected: m,
                got: remainder.m(),
            });
        }
        let spec = SpecialGraphSpec {
            pattern: pattern.name().to_string(),
            k,
            m,
            q,
            r,
            tree: options.tree,
            tree_edges: Vec::new(),
            remainder_edges: remainder.edges(),
            attach: Vec::new(),
            pure: remainder.m() == 0,
        };
        return Ok(BuiltSpecial {
            graph: remainder,
            spec,
            constituent_vertex_sets: Vec::new(),
            connections: Vec::new(),
        });
    }

    if remainder.m() != r {
        return Err(ConstructionError::RemainderEdges {
            expected: r,
            got: remainder.m(),
        });
    }
    let n = q * (ell + 1) + remainder.n() - 1;
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices {
            n,
            limit: MAX_VERTICES,
        }
        .into());
    }

    let attach: Vec<usize> = match options.attach {
        Attach::Dominator => vec![pattern.dominators()[0]; q],
        Attach::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..q).map(|_| rng.gen_range(0..ell)).collect()
        }
    };
    let tree_edges = tree_edges(q, options.tree);

    let connection = |i: usize| i * (ell + 1);
    let copy_vertex = |i: usize, f: usize| i * (ell + 1) + 1 + f;
    let mut edges = Vec::with_capacity(m);
    let mut constituent_vertex_sets = Vec::with_capacity(q);
    for (i, &w) in attach.iter().enumerate() {
        edges.extend(
            pattern
                .graph()
                .edges()
                .iter()
                .map(|&(a, b)| (copy_vertex(i, a), copy_vertex(i, b))),
        );
        edges.push((connection(i), copy_vertex(i, w)));
        constituent_vertex_sets.push((connection(i)..connection(i + 1)).collect());
    }
    edges.extend(
        tree_edges
            .iter()
            .map(|&(a, b)| (connection(a), connection(b))),
    );
    let vq = connection(q - 1);
    let remainder_id = |t: usize| if t == 0 { vq } else { q * (ell + 1) + t - 1 };
    edges.extend(
        remainder
            .edges()
            .iter()
            .map(|&(a, b)| (remainder_id(a), remainder_id(b))),
    );

    let graph = Graph::new(n, &edges)?;
    let spec = SpecialGraphSpec {
        pattern: pattern.name().to_string(),
        k,
        m,
        q,
        r,
        tree: options.tree,
        tree_edges,
        remainder_edges: remainder.edges(),
        attach,
        pure: remainder.m() == 0,
    };
    Ok(BuiltSpecial {
        graph,
        spec,
        constituent_vertex_sets,
        connections: (0..q).map(connection).collect(),
    })
}

/// Edges of a tree on `0..q` of the requested shape.
pub fn tree_edges(q: usize, shape: TreeShape) -> Vec<(usize, usize)> {
    match shape {
        TreeShape::Path => (1..q).map(|i| (i - 1, i)).collect(),
        TreeShape::Star => (1..q).map(|i| (0, i)).collect(),
        TreeShape::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_tree(q, &mut rng)
        }
    }
}

/// Labeled tree on `0..n` decoded from a uniformly random Prüfer sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => return Vec::new(),
        2 => return vec![(0, 1)],
        _ => {}
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(n, &seq)
}

/// Tree with Prüfer sequence `seq` (length `n - 2`).
pub fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf exists");
        edges.push(sort_pair(leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let last: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push(sort_pair(last[0], last[1]));
    edges
}

fn sort_pair(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Shuffled copy of `0..n`; handy for relabeling builds in tests.
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    perm
}

/// Outcome of [`verify_special`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialCheck {
    /// Connected, `m` edges, disjoint constituents with `G_i - v_i ≃ F`.
    pub structure: bool,
    /// `(G, F)` is itself special (only possible for `q ≤ 1`).
    pub special_pair: bool,
    /// `{v_1, .., v_q}` is isolating.
    pub connections_isolate: bool,
    /// Each `F_i` has closed neighbourhood `V(G_i)`, forcing `ι ≥ q`.
    pub lower_bound: bool,
    /// `ι(G, F)` when the graph is small enough to solve exactly.
    pub iota_exact: Option<usize>,
    pub passed: bool,
}

/// Checks a build: structure, the upper bound via the connections, the
/// lower bound via the constituents and, on small graphs, `ι = q` exactly.
pub fn verify_special(b: &BuiltSpecial, pattern: &Pattern) -> SpecialCheck {
    let g = &b.graph;
    let q = b.spec.q;
    let mut structure = g.is_connected() && g.m() == b.spec.m && b.connections.len() == q;
    let mut seen = VertexSet::empty();
    let mut lower_bound = true;
    for (i, &set) in b.constituent_vertex_sets.iter().enumerate() {
        let Some(&vi) = b.connections.get(i) else {
            structure = false;
            break;
        };
        structure &= set.contains(vi) && seen.is_disjoint(set);
        seen = seen.union(set);
        let mut copy = set;
        copy.remove(vi);
        structure &= is_isomorphic(&g.induced(copy).graph, pattern.graph());
        lower_bound &= g.closed_neighborhood(copy) == set;
    }
    structure &= b.constituent_vertex_sets.len() == q;
    lower_bound &= structure;

    let special_pair = is_special_pair(g, pattern);
    let connections: VertexSet = b.connections.iter().copied().collect();
    let connections_isolate = is_isolating(g, pattern, connections);
    let iota = (g.n() <= EXACT_CHECK_LIMIT)
        .then(|| iota_exact(g, pattern).ok().map(|r| r.iota))
        .flatten();
    let expected = if special_pair { None } else { Some(q) };
    let passed = structure
        && !special_pair
        && connections_isolate
        && lower_bound
        && q == bound(g.m(), pattern.k())
        && iota.is_none_or(|i| Some(i) == expected);
    SpecialCheck {
        structure,
        special_pair,
        connections_isolate,
        lower_bound,
        iota_exact: iota,
        passed,
    }
}
