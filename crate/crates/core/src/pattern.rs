//! Patterns `F` with a dominating vertex, and detection of `F`-copies.
//!
//! Copies are subgraphs, not induced subgraphs. Since some vertex `f0` of `F`
//! is adjacent to every other vertex, every copy lies inside the closed
//! neighbourhood of the host vertex `f0` is mapped to, so the matcher only
//! ever looks inside one `N[u]` at a time.

use std::fmt;

use thiserror::Error;

use crate::graph::{is_isomorphic, Graph, GraphError, VertexSet};

/// Patterns with more vertices than this are rejected; matching is
/// exponential in the pattern size.
pub const PATTERN_VERTEX_LIMIT: usize = 8;

/// Names accepted by [`Pattern::builtin`].
pub const BUILTIN_NAMES: [&str; 8] = ["k1", "k2", "p3", "k3", "k13", "paw", "k4", "k14"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern lacks dominating vertex")]
    NoDominatingVertex,
    #[error("pattern is disconnected")]
    Disconnected,
    #[error("pattern has no vertices")]
    Empty,
    #[error("pattern has {0} vertices, limit is {PATTERN_VERTEX_LIMIT}")]
    TooLarge(usize),
    #[error("unknown built-in pattern `{0}`")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A validated pattern graph `F` with `γ(F) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    name: String,
    f: Graph,
    dominators: Vec<usize>,
    /// Match order: a dominator first, then by decreasing degree.
    order: Vec<usize>,
    /// For each position in `order`, the earlier positions adjacent to it in `F`.
    back_edges: Vec<Vec<usize>>,
}

/// An injective, edge-preserving map `V(F) → V(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopyWitness {
    /// `mapping[f]` is the host vertex pattern vertex `f` is sent to.
    pub mapping: Vec<usize>,
    /// Image of a dominating vertex of `F`.
    pub center: usize,
}

impl CopyWitness {
    pub fn vertex_set(&self) -> VertexSet {
        self.mapping.iter().copied().collect()
    }

    /// Checks the witness against the host and pattern graphs.
    pub fn is_valid(&self, g: &Graph, pattern: &Pattern) -> bool {
        let f = pattern.graph();
        self.mapping.len() == f.n()
            && self.vertex_set().len() == f.n()
            && self.mapping.iter().all(|&v| v < g.n())
            && f.edges()
                .iter()
                .all(|&(a, b)| g.has_edge(self.mapping[a], self.mapping[b]))
            && self.vertex_set().is_subset(g.closed_neighbors(self.center))
    }
}

impl Pattern {
    /// Validates `f` and names the pattern `name`.
    pub fn new(name: impl Into<String>, f: Graph) -> Result<Self, PatternError> {
        let ell = f.n();
        if ell == 0 {
            return Err(PatternError::Empty);
        }
        if ell > PATTERN_VERTEX_LIMIT {
            return Err(PatternError::TooLarge(ell));
        }
        if !f.is_connected() {
            return Err(PatternError::Disconnected);
        }
        let all = f.vertices();
        let dominators: Vec<usize> = (0..ell).filter(|&u| f.closed_neighbors(u) == all).collect();
        let Some(&root) = dominators.first() else {
            return Err(PatternError::NoDominatingVertex);
        };
        let mut rest: Vec<usize> = (0..ell).filter(|&u| u != root).collect();
        rest.sort_by_key(|&u| (std::cmp::Reverse(f.degree(u)), u));
        let mut order = vec![root];
        order.extend(rest);
        let back_edges = (0..ell)
            .map(|i| (0..i).filter(|&p| f.has_edge(order[i], order[p])).collect())
            .collect();
        Ok(Pattern {
            name: name.into(),
            f,
            dominators,
            order,
            back_edges,
        })
    }

    /// One of the library patterns listed in [`BUILTIN_NAMES`].
    pub fn builtin(name: &str) -> Result<Self, PatternError> {
        let lower = name.to_ascii_lowercase();
        let f = match lower.as_str() {
            "k1" => Graph::complete(1),
            "k2" => Graph::complete(2),
            "p3" => Graph::path(3),
            "k3" => Graph::complete(3),
            "k13" => Graph::star(3),
            "paw" => Graph::new(4, &[(0, 1), (0, 2), (1, 2), (0, 3)])?,
            "k4" => Graph::complete(4),
            "k14" => Graph::star(4),
            _ => return Err(PatternError::UnknownBuiltin(name.to_string())),
        };
        Pattern::new(lower, f)
    }

    pub fn all_builtins() -> Vec<Pattern> {
        BUILTIN_NAMES
            .iter()
            .map(|n| Pattern::builtin(n).expect("builtin"))
            .collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Display form of the name: `P3`, `K1,3`, `paw`, ...
    pub fn display_name(&self) -> String {
        match self.name.as_str() {
            "k13" => "K1,3".into(),
            "k14" => "K1,4".into(),
            "paw" => "paw".into(),
            other => other.to_ascii_uppercase(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.f
    }

    /// Edge count `k`.
    pub fn k(&self) -> usize {
        self.f.m()
    }

    /// Vertex count `ℓ`.
    pub fn ell(&self) -> usize {
        self.f.n()
    }

    pub fn dominators(&self) -> &[usize] {
        &self.dominators
    }

    /// `F ≃ K_{1,2}`.
    pub fn is_p3(&self) -> bool {
        self.ell() == 3 && self.k() == 2
    }

    /// Finds a copy of `F` in `g`, searching centers in increasing id order.
    pub fn contains_copy(&self, g: &Graph) -> Option<CopyWitness> {
        self.find_copy_within(g, g.vertices())
    }

    /// Like [`Pattern::contains_copy`], restricted to `G[alive]`.
    pub fn find_copy_within(&self, g: &Graph, alive: VertexSet) -> Option<CopyWitness> {
        alive
            .iter()
            .find_map(|u| self.copy_centered_at(g, alive, u))
    }

    /// True iff `G[alive]` has no copy of `F`.
    pub fn is_free_within(&self, g: &Graph, alive: VertexSet) -> bool {
        self.find_copy_within(g, alive).is_none()
    }

    /// `U`: host vertices that are the image of a dominator in some copy.
    pub fn find_copy_centers(&self, g: &Graph) -> VertexSet {
        self.centers_within(g, g.vertices())
    }

    pub fn centers_within(&self, g: &Graph, alive: VertexSet) -> VertexSet {
        alive
            .iter()
            .filter(|&u| self.copy_centered_at(g, alive, u).is_some())
            .collect()
    }

    /// A copy inside `G[alive]` whose dominator maps to `u`.
    ///
    /// Only the first dominator is tried: two dominators of `F` are adjacent
    /// twins, so swapping them is an automorphism and both give the same
    /// set of copies.
    pub fn copy_centered_at(&self, g: &Graph, alive: VertexSet, u: usize) -> Option<CopyWitness> {
        if !alive.contains(u) {
            return None;
        }
        let room = g.neighbors(u).intersection(alive);
        if room.len() + 1 < self.ell() {
            return None;
        }
        let mut image = vec![usize::MAX; self.ell()];
        image[0] = u;
        if self.extend(g, room, 1, &mut image, VertexSet::singleton(u)) {
            let mut mapping = vec![0; self.ell()];
            for (pos, &f_vertex) in self.order.iter().enumerate() {
                mapping[f_vertex] = image[pos];
            }
            Some(CopyWitness { mapping, center: u })
        } else {
            None
        }
    }

    fn extend(
        &self,
        g: &Graph,
        room: VertexSet,
        pos: usize,
        image: &mut [usize],
        used: VertexSet,
    ) -> bool {
        if pos == self.ell() {
            return true;
        }
        let cand = self.back_edges[pos]
            .iter()
            .fold(room.difference(used), |c, &p| {
                c.intersection(g.neighbors(image[p]))
            });
        for t in cand.iter() {
            image[pos] = t;
            let mut next = used;
            next.insert(t);
            if self.extend(g, room, pos + 1, image, next) {
                return true;
            }
        }
        false
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_name())
    }
}

/// `(G, F)` is special when `G ≃ F`, or `F ≃ K_{1,2}` and `G ≃ C6`.
pub fn is_special_pair(g: &Graph, pattern: &Pattern) -> bool {
    is_isomorphic(g, pattern.graph()) || (pattern.is_p3() && g.is_c6())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_pattern_examples() {
        let p3 = Pattern::new("p3", Graph::path(3)).unwrap();
        assert_eq!(p3.dominators(), &[1]);
        assert_eq!((p3.k(), p3.ell()), (2, 3));
        let k3 = Pattern::builtin("k3").unwrap();
        assert_eq!(k3.dominators(), &[0, 1, 2]);
        assert_eq!(k3.k(), 3);
        assert_eq!(
            Pattern::new("c6", Graph::cycle(6)),
            Err(PatternError::NoDominatingVertex)
        );
        assert_eq!(
            Pattern::new("2k1", Graph::empty(2)),
            Err(PatternError::Disconnected)
        );
        assert_eq!(
            Pattern::new("null", Graph::empty(0)),
            Err(PatternError::Empty)
        );
        assert!(matches!(
            Pattern::builtin("c5"),
            Err(PatternError::UnknownBuiltin(_))
        ));
    }

    #[test]
    fn builtin_library_shapes() {
        let expect = [
            ("k1", 0, 1),
            ("k2", 1, 2),
            ("p3", 2, 3),
            ("k3", 3, 3),
            ("k13", 3, 4),
            ("paw", 4, 4),
            ("k4", 6, 4),
            ("k14", 4, 5),
        ];
        for (name, k, ell) in expect {
            let p = Pattern::builtin(name).unwrap();
            assert_eq!((p.k(), p.ell()), (k, ell), "{name}");
        }
        assert_eq!(Pattern::builtin("paw").unwrap().dominators(), &[0]);
    }

    #[test]
    fn contains_copy_examples() {
        let p3 = Pattern::builtin("p3").unwrap();
        let k3 = Pattern::builtin("k3").unwrap();
        let c6 = Graph::cycle(6);
        let w = p3.contains_copy(&c6).unwrap();
        assert!(w.is_valid(&c6, &p3));
        assert!(k3.contains_copy(&c6).is_none());
        let star = Graph::star(3);
        let w = p3.contains_copy(&star).unwrap();
        assert_eq!(w.center, 0);
    }

    #[test]
    fn copies_need_not_be_induced() {
        let p3 = Pattern::builtin("p3").unwrap();
        assert!(p3.contains_copy(&Graph::complete(3)).is_some());
        let k13 = Pattern::builtin("k13").unwrap();
        assert!(k13.contains_copy(&Graph::complete(4)).is_some());
    }

    #[test]
    fn copy_centers_examples() {
        let p3 = Pattern::builtin("p3").unwrap();
        assert_eq!(
            p3.find_copy_centers(&Graph::cycle(6)),
            Graph::cycle(6).vertices()
        );
        assert_eq!(
            p3.find_copy_centers(&Graph::star(3)),
            VertexSet::singleton(0)
        );
        assert!(p3.find_copy_centers(&Graph::complete(2)).is_empty());
    }

    #[test]
    fn special_pairs() {
        let p3 = Pattern::builtin("p3").unwrap();
        let k3 = Pattern::builtin("k3").unwrap();
        assert!(is_special_pair(&Graph::cycle(6), &p3));
        assert!(is_special_pair(&Graph::complete(3), &k3));
        assert!(!is_special_pair(&Graph::path(4), &p3));
        assert!(!is_special_pair(&Graph::cycle(6), &k3));
        for p in Pattern::all_builtins() {
            assert!(is_special_pair(p.graph(), &p), "{}", p.name());
        }
    }
}
