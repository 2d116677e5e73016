//! Simple undirected graphs on dense vertex ids `0..n`, stored as 64-bit
//! adjacency rows.
//!
//! Deleting vertices relabels the survivors to `0..n'` and hands back a
//! [`SubgraphHandle`] whose `back_map` recovers the host ids, so recursive
//! algorithms can work on self-contained graphs and still report vertices of
//! the original input.

use std::fmt;

use thiserror::Error;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

/// Largest vertex count accepted by [`canonical_form`].
pub const CANONICAL_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{n} vertices exceeds the limit of {limit}")]
    TooManyVertices { n: usize, limit: usize },
    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(usize, usize),
}

/// A set of vertex ids of some host graph.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

fn normalize(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph on `0..n`; duplicate pairs are merged.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices {
                n,
                limit: MAX_VERTICES,
            });
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Self::from_rows(adj))
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        Graph {
            adj: vec![0; n],
            m: 0,
        }
    }

    /// Rows must be symmetric and loop-free.
    pub(crate) fn from_rows(adj: Vec<u64>) -> Self {
        let m = adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
        Graph { adj, m }
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::new(n, &edges).expect("complete graph")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::new(n, &edges).expect("path graph")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Self::new(n, &edges).expect("cycle graph")
    }

    /// `K_{1,leaves}` with hub 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::new(leaves + 1, &edges).expect("star graph")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v] | 1 << v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u] >> v & 1 == 1
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for v in VertexSet(self.adj[u] >> u >> 1 << 1 << u).iter() {
                out.push((u, v));
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// `N[X]`, the union of the closed neighbourhoods of the members of `x`.
    pub fn closed_neighborhood(&self, x: VertexSet) -> VertexSet {
        x.iter().fold(VertexSet::empty(), |acc, v| {
            acc.union(self.closed_neighbors(v))
        })
    }

    /// Number of edges with both ends in `within`.
    pub fn edge_count_within(&self, within: VertexSet) -> usize {
        within
            .iter()
            .map(|v| (self.adj[v] & within.0).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// The subgraph induced by `keep`, relabeled in increasing id order.
    pub fn induced(&self, keep: VertexSet) -> SubgraphHandle {
        let back_map = keep.to_vec();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in back_map.iter().enumerate() {
            index[v] = i;
        }
        let adj = back_map
            .iter()
            .map(|&v| {
                VertexSet(self.adj[v] & keep.0)
                    .iter()
                    .fold(0u64, |row, w| row | 1 << index[w])
            })
            .collect();
        SubgraphHandle {
            graph: Graph::from_rows(adj),
            back_map,
        }
    }

    /// `G - X`.
    pub fn delete_vertices(&self, x: VertexSet) -> SubgraphHandle {
        self.induced(self.vertices().difference(x))
    }

    /// `G - Y` for a set of edges `Y ⊆ E(G)`; the vertex set is unchanged.
    pub fn delete_edges(&self, y: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = self.adj.clone();
        for &(u, v) in y {
            if !self.has_edge(u, v) {
                return Err(GraphError::NotAnEdge(u, v));
            }
            adj[u] &= !(1 << v);
            adj[v] &= !(1 << u);
        }
        Ok(Graph::from_rows(adj))
    }

    /// Vertex sets of the components of `G[within]`, ordered by smallest id.
    pub fn component_sets_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut rest = within;
        while let Some(start) = rest.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = 0u64;
                for v in frontier.iter() {
                    next |= self.adj[v];
                }
                frontier = VertexSet(next & within.0 & !comp.0);
                comp = comp.union(frontier);
            }
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    pub fn component_sets(&self) -> Vec<VertexSet> {
        self.component_sets_within(self.vertices())
    }

    /// Components as relabeled subgraphs, ordered by smallest original id.
    pub fn components(&self) -> Vec<SubgraphHandle> {
        self.component_sets()
            .into_iter()
            .map(|c| self.induced(c))
            .collect()
    }

    /// The null graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.component_sets().len() <= 1
    }

    /// `E(X, Y)`: edges with one end in `x` and the other in `y`.
    pub fn edges_between(&self, x: VertexSet, y: VertexSet) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = x
            .iter()
            .flat_map(|u| {
                VertexSet(self.adj[u] & y.0)
                    .iter()
                    .map(move |v| normalize(u, v))
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Graph with `perm[v]` as the new id of `v`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut adj = vec![0u64; self.n()];
        for u in 0..self.n() {
            for v in self.neighbors(u).iter() {
                adj[perm[u]] |= 1 << perm[v];
            }
        }
        Graph::from_rows(adj)
    }

    /// `self ⊎ other`, with `other` shifted up by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n() + other.n();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices {
                n,
                limit: MAX_VERTICES,
            });
        }
        let shift = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << shift));
        Ok(Graph::from_rows(adj))
    }

    /// True iff the graph is a 6-cycle.
    pub fn is_c6(&self) -> bool {
        self.n() == 6 && self.m == 6 && (0..6).all(|v| self.degree(v) == 2) && self.is_connected()
    }
}

/// A relabeled subgraph together with the host id of each of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphHandle {
    pub graph: Graph,
    pub back_map: Vec<usize>,
}

impl SubgraphHandle {
    /// Host id of local vertex `v`.
    pub fn lift_vertex(&self, v: usize) -> usize {
        self.back_map[v]
    }

    /// Host ids of a local vertex set.
    pub fn lift(&self, set: VertexSet) -> VertexSet {
        set.iter().map(|v| self.back_map[v]).collect()
    }

    /// Host ids of all vertices of the subgraph.
    pub fn host_vertices(&self) -> VertexSet {
        self.back_map.iter().copied().collect()
    }
}

/// Brute-force isomorphism test with degree pruning.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.m() != h.m() || g.degree_sequence() != h.degree_sequence() {
        return false;
    }
    let n = g.n();
    // Map high-degree vertices first; they constrain the search most.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut image = vec![usize::MAX; n];
    iso_extend(g, h, &order, 0, &mut image, VertexSet::empty())
}

fn iso_extend(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: VertexSet,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    for t in h.vertices().difference(used).iter() {
        if h.degree(t) != g.degree(u) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&p| g.has_edge(u, p) == h.has_edge(t, image[p]));
        if !consistent {
            continue;
        }
        image[u] = t;
        let mut next = used;
        next.insert(t);
        if iso_extend(g, h, order, depth + 1, image, next) {
            return true;
        }
    }
    image[u] = usize::MAX;
    false
}

/// Lexicographically smallest upper-triangular adjacency bitstring over all
/// vertex orders, read column by column (`(0,1), (0,2), (1,2), (0,3), ..`).
///
/// The returned bytes are `[n]` followed by the bitstring packed MSB-first,
/// so two graphs have equal forms iff they are isomorphic.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>, GraphError> {
    let (_, cols) = canonical_search(g)?;
    let n = g.n();
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for (j, &col) in cols.iter().enumerate() {
        for i in 0..j {
            bits.push(col >> (j - 1 - i) & 1 == 1);
        }
    }
    let mut out = vec![n as u8];
    for chunk in bits.chunks(8) {
        let byte = chunk
            .iter()
            .enumerate()
            .fold(0u8, |b, (i, &bit)| b | (u8::from(bit) << (7 - i)));
        out.push(byte);
    }
    Ok(out)
}

/// The graph relabeled into its canonical vertex order.
pub fn canonical_graph(g: &Graph) -> Result<Graph, GraphError> {
    let (order, _) = canonical_search(g)?;
    let mut perm = vec![0; g.n()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    Ok(g.relabel(&perm))
}

fn canonical_search(g: &Graph) -> Result<(Vec<usize>, Vec<u32>), GraphError> {
    let n = g.n();
    if n > CANONICAL_LIMIT {
        return Err(GraphError::TooManyVertices {
            n,
            limit: CANONICAL_LIMIT,
        });
    }
    let mut search = CanonSearch {
        g,
        order: Vec::with_capacity(n),
        cols: Vec::with_capacity(n),
        best_order: Vec::new(),
        best_cols: Vec::new(),
    };
    search.run(VertexSet::full(n));
    Ok((search.best_order, search.best_cols))
}

struct CanonSearch<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    cols: Vec<u32>,
    best_order: Vec<usize>,
    best_cols: Vec<u32>,
}

impl CanonSearch<'_> {
    fn run(&mut self, remaining: VertexSet) {
        let j = self.order.len();
        if remaining.is_empty() {
            if self.best_order.is_empty() || self.cols < self.best_cols {
                self.best_order = self.order.clone();
                self.best_cols = self.cols.clone();
            }
            return;
        }
        for w in remaining.iter() {
            let col = self.order.iter().enumerate().fold(0u32, |c, (i, &p)| {
                c | (u32::from(self.g.has_edge(p, w)) << (j - 1 - i))
            });
            if !self.best_order.is_empty() {
                // prune if this prefix is already larger than the best form
                let prefix_cmp = self.cols.as_slice().cmp(&self.best_cols[..j]);
                if prefix_cmp == std::cmp::Ordering::Equal && col > self.best_cols[j] {
                    continue;
                }
                if prefix_cmp == std::cmp::Ordering::Greater {
                    return;
                }
            }
            self.order.push(w);
            self.cols.push(col);
            let mut next = remaining;
            next.remove(w);
            self.run(next);
            self.order.pop();
            self.cols.pop();
        }
    }
}
