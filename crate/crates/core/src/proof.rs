//! Constructive isolating sets within the `⌊(m+1)/(k+2)⌋` bound.
//!
//! For a connected graph `G` and a pattern `F` with `k ≥ 2` edges such that
//! `(G, F)` is not special, [`isolate`] walks the case analysis of the
//! induction on `|V(G)|`:
//!
//! * pick a copy center `v` of maximum degree and delete `N[v]`;
//! * the components `H` of `G - N[v]` are solved recursively;
//! * depending on whether some component is itself special (an `F`-copy, or
//!   a 6-cycle when `F` is a 3-path) and on how the edges are distributed,
//!   one of the cases below assembles the final set.
//!
//! Wherever the analysis compares `(k+2)·ι(H, F)` with `|E(H)| + 1`, the size
//! of the recursively returned set is used in place of `ι(H, F)`. Every
//! returned set satisfies the same floor bound, which is all the arithmetic
//! needs.
//!
//! Every level re-checks that its set is isolating and within the bound.
//! A failed check, or a structural fact the analysis guarantees that does not
//! hold, is reported as [`SolverErrorKind::ProofInvariantViolated`] along
//! with the trace so far.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exact::is_isolating;
use crate::graph::{is_isomorphic, Graph, SubgraphHandle, VertexSet};
use crate::pattern::{is_special_pair, Pattern};

/// `⌊(m+1)/(k+2)⌋`.
pub fn bound(m: usize, k: usize) -> usize {
    (m + 1) / (k + 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CaseTag {
    #[serde(rename = "NoCopy")]
    NoCopy,
    #[serde(rename = "WholeNbhd")]
    WholeNbhd,
    #[serde(rename = "Case1-strict")]
    Case1Strict,
    #[serde(rename = "Case1.1")]
    Case1_1,
    #[serde(rename = "Case1.2-Jempty")]
    Case1_2JEmpty,
    #[serde(rename = "Case1.2-Jspecial")]
    Case1_2JSpecial,
    #[serde(rename = "Case2-C6")]
    Case2C6,
    #[serde(rename = "Case2.1")]
    Case2_1,
    #[serde(rename = "Case2.2.1")]
    Case2_2_1,
    #[serde(rename = "Case2.2.2")]
    Case2_2_2,
}

impl CaseTag {
    pub const ALL: [CaseTag; 10] = [
        CaseTag::NoCopy,
        CaseTag::WholeNbhd,
        CaseTag::Case1Strict,
        CaseTag::Case1_1,
        CaseTag::Case1_2JEmpty,
        CaseTag::Case1_2JSpecial,
        CaseTag::Case2C6,
        CaseTag::Case2_1,
        CaseTag::Case2_2_1,
        CaseTag::Case2_2_2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::NoCopy => "NoCopy",
            CaseTag::WholeNbhd => "WholeNbhd",
            CaseTag::Case1Strict => "Case1-strict",
            CaseTag::Case1_1 => "Case1.1",
            CaseTag::Case1_2JEmpty => "Case1.2-Jempty",
            CaseTag::Case1_2JSpecial => "Case1.2-Jspecial",
            CaseTag::Case2C6 => "Case2-C6",
            CaseTag::Case2_1 => "Case2.1",
            CaseTag::Case2_2_1 => "Case2.2.1",
            CaseTag::Case2_2_2 => "Case2.2.2",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A named value in a [`CaseStep`]. Vertices are ids of the top-level input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Binding {
    Vertex(usize),
    Set(Vec<usize>),
    Count(usize),
    Label(&'static str),
}

/// One level of the recursion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseStep {
    pub depth: usize,
    /// Size of the graph at this level.
    pub n: usize,
    pub m: usize,
    pub tag: Option<CaseTag>,
    pub center: Option<usize>,
    pub locals: Vec<(&'static str, Binding)>,
}

impl CaseStep {
    pub fn local(&self, name: &str) -> Option<&Binding> {
        self.locals.iter().find(|(k, _)| *k == name).map(|(_, b)| b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SolverErrorKind {
    SpecialPairInput,
    ProofInvariantViolated,
    PatternTooSmall,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct SolverError {
    pub kind: SolverErrorKind,
    pub message: String,
    pub trace: Vec<CaseStep>,
}

/// An `F`-isolating set together with the bound and the case trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    #[serde(serialize_with = "ser_set")]
    pub set: VertexSet,
    pub bound: usize,
    /// Whether the bound is promised: `G` connected and `(G, F)` not special.
    pub bound_applies: bool,
    /// Result of re-checking that `set` is isolating in the input.
    pub isolating: bool,
    /// Vertex sets of components that formed special pairs and were
    /// isolated directly.
    #[serde(serialize_with = "ser_sets")]
    pub special_components: Vec<VertexSet>,
    pub trace: Vec<CaseStep>,
}

impl Certificate {
    pub fn size(&self) -> usize {
        self.set.len()
    }

    pub fn within_bound(&self) -> bool {
        self.size() <= self.bound
    }

    /// Case tags in trace order.
    pub fn tags(&self) -> impl Iterator<Item = CaseTag> + '_ {
        self.trace.iter().filter_map(|s| s.tag)
    }
}

fn ser_set<S: serde::Serializer>(set: &VertexSet, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(set.iter())
}

fn ser_sets<S: serde::Serializer>(sets: &[VertexSet], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(sets.iter().map(|v| v.to_vec()))
}

fn describe_special(g: &Graph, pattern: &Pattern) -> String {
    let gname = if is_isomorphic(g, pattern.graph()) {
        pattern.display_name()
    } else {
        "C6".to_string()
    };
    format!("special pair: F={}, G={}", pattern.display_name(), gname)
}

/// Isolating set for `(G, F)` built by the constructive case analysis.
///
/// Disconnected inputs are solved per component. Components that form a
/// special pair get one vertex (an `F`-copy) or two opposite vertices (a
/// 6-cycle) and are listed in [`Certificate::special_components`].
pub fn isolate(g: &Graph, pattern: &Pattern) -> Result<Certificate, SolverError> {
    if pattern.k() <= 1 {
        return Err(SolverError {
            kind: SolverErrorKind::PatternTooSmall,
            message: format!(
                "pattern {} has {} edge(s); the constructive solver needs k >= 2",
                pattern.display_name(),
                pattern.k()
            ),
            trace: Vec::new(),
        });
    }
    let components = g.components();
    let connected = components.len() <= 1;
    if connected && components.len() == 1 && is_special_pair(g, pattern) {
        return Err(SolverError {
            kind: SolverErrorKind::SpecialPairInput,
            message: describe_special(g, pattern),
            trace: Vec::new(),
        });
    }
    let mut solver = Solver {
        pattern,
        trace: Vec::new(),
    };
    let mut set = VertexSet::empty();
    let mut special_components = Vec::new();
    for comp in &components {
        let local = if is_special_pair(&comp.graph, pattern) {
            special_components.push(comp.host_vertices());
            isolate_special(&comp.graph, pattern)
        } else {
            solver.solve(&comp.graph, &comp.back_map, 0)?
        };
        set = set.union(comp.lift(local));
    }
    Ok(Certificate {
        set,
        bound: bound(g.m(), pattern.k()),
        bound_applies: connected && special_components.is_empty(),
        isolating: is_isolating(g, pattern, set),
        special_components,
        trace: solver.trace,
    })
}

/// Minimum isolating set of a special pair.
fn isolate_special(g: &Graph, pattern: &Pattern) -> VertexSet {
    if g.is_c6() && !is_isomorphic(g, pattern.graph()) {
        VertexSet::singleton(0).union(VertexSet::singleton(opposite_in_c6(g, g.vertices(), 0)))
    } else {
        VertexSet::singleton(0)
    }
}

/// The vertex at distance three from `u` in the 6-cycle `G[cycle]`.
fn opposite_in_c6(g: &Graph, cycle: VertexSet, u: usize) -> usize {
    let near = g.closed_neighbors(u).intersection(cycle);
    let near2 = g.closed_neighborhood(near).intersection(cycle);
    cycle
        .difference(near2)
        .first()
        .expect("6-cycle has an opposite vertex")
}

/// A component of `G - N[v]` with its chosen link edge `x_H y_H`.
struct Part {
    set: VertexSet,
    handle: SubgraphHandle,
    x: usize,
    y: usize,
    special: bool,
}

/// Data shared by the cases at one recursion level.
struct Level<'g> {
    g: &'g Graph,
    root: &'g [usize],
    depth: usize,
    step: usize,
    v: usize,
    parts: Vec<Part>,
}

impl Level<'_> {
    fn vtx(&self, u: usize) -> Binding {
        Binding::Vertex(self.root[u])
    }

    fn set(&self, s: VertexSet) -> Binding {
        Binding::Set(s.iter().map(|u| self.root[u]).collect())
    }
}

struct Solver<'p> {
    pattern: &'p Pattern,
    trace: Vec<CaseStep>,
}

type Solved = Result<VertexSet, SolverError>;

impl Solver<'_> {
    fn k(&self) -> usize {
        self.pattern.k()
    }

    fn violation(&self, message: String) -> SolverError {
        SolverError {
            kind: SolverErrorKind::ProofInvariantViolated,
            message,
            trace: self.trace.clone(),
        }
    }

    fn finish(&mut self, step: usize, tag: CaseTag, locals: Vec<(&'static str, Binding)>) {
        let s = &mut self.trace[step];
        s.tag = Some(tag);
        s.locals.extend(locals);
    }

    /// Solves a connected, non-special graph whose vertex `u` is `root[u]`
    /// in the input.
    fn solve(&mut self, g: &Graph, root: &[usize], depth: usize) -> Solved {
        let set = self.solve_level(g, root, depth)?;
        let limit = bound(g.m(), self.k());
        if set.len() > limit {
            return Err(self.violation(format!(
                "set of size {} exceeds bound {} at depth {} (n={}, m={})",
                set.len(),
                limit,
                depth,
                g.n(),
                g.m()
            )));
        }
        if !is_isolating(g, self.pattern, set) {
            return Err(self.violation(format!(
                "set {:?} is not isolating at depth {}",
                set.iter().map(|u| root[u]).collect::<Vec<_>>(),
                depth
            )));
        }
        Ok(set)
    }

    /// Solves a subgraph of `g`, returning the set in `g`'s ids.
    fn solve_sub(&mut self, root: &[usize], depth: usize, h: &SubgraphHandle) -> Solved {
        let sub_root: Vec<usize> = h.back_map.iter().map(|&u| root[u]).collect();
        let local = self.solve(&h.graph, &sub_root, depth + 1)?;
        Ok(h.lift(local))
    }

    /// Solves `G[within]` component by component; each must be non-special.
    fn solve_pieces(&mut self, lv: &Level, within: VertexSet, what: &str) -> Solved {
        let mut out = VertexSet::empty();
        for comp in lv.g.component_sets_within(within) {
            let h = lv.g.induced(comp);
            if is_special_pair(&h.graph, self.pattern) {
                return Err(self.violation(format!(
                    "{what}: component {:?} forms a special pair",
                    comp.iter().map(|u| lv.root[u]).collect::<Vec<_>>()
                )));
            }
            out = out.union(self.solve_sub(lv.root, lv.depth, &h)?);
        }
        Ok(out)
    }

    /// Solves `G[within]`, which must be connected and non-special.
    fn solve_connected(&mut self, lv: &Level, within: VertexSet, what: &str) -> Solved {
        if lv.g.component_sets_within(within).len() != 1 {
            return Err(self.violation(format!("{what} is not connected")));
        }
        self.solve_pieces(lv, within, what)
    }

    fn solve_level(&mut self, g: &Graph, root: &[usize], depth: usize) -> Solved {
        let step = self.trace.len();
        self.trace.push(CaseStep {
            depth,
            n: g.n(),
            m: g.m(),
            tag: None,
            center: None,
            locals: Vec::new(),
        });

        let pattern = self.pattern;
        let centers = pattern.find_copy_centers(g);
        if centers.is_empty() {
            self.finish(step, CaseTag::NoCopy, vec![]);
            return Ok(VertexSet::empty());
        }
        let v = centers
            .iter()
            .max_by_key(|&u| (g.degree(u), std::cmp::Reverse(u)))
            .expect("nonempty");
        let f1 = pattern
            .copy_centered_at(g, g.vertices(), v)
            .expect("v is a copy center")
            .vertex_set();
        self.trace[step].center = Some(root[v]);
        let nv = g.closed_neighbors(v);
        if nv == g.vertices() {
            self.finish(
                step,
                CaseTag::WholeNbhd,
                vec![("v", Binding::Vertex(root[v]))],
            );
            return Ok(VertexSet::singleton(v));
        }

        let parts = g
            .component_sets_within(g.vertices().difference(nv))
            .into_iter()
            .map(|set| {
                let (x, y) = g
                    .neighbors(v)
                    .iter()
                    .find_map(|x| g.neighbors(x).intersection(set).first().map(|y| (x, y)))
                    .expect("G is connected, so every component is linked to N(v)");
                let handle = g.induced(set);
                let special = is_special_pair(&handle.graph, pattern);
                Part {
                    set,
                    handle,
                    x,
                    y,
                    special,
                }
            })
            .collect::<Vec<_>>();
        let lv = Level {
            g,
            root,
            depth,
            step,
            v,
            parts,
        };
        let mut base = vec![("v", lv.vtx(v)), ("F1", lv.set(f1))];
        base.push(("H", Binding::Count(lv.parts.len())));
        let special_sets: Vec<usize> = lv
            .parts
            .iter()
            .filter(|p| p.special)
            .map(|p| root[p.set.first().expect("nonempty")])
            .collect();
        base.push(("H'", Binding::Set(special_sets)));
        self.trace[step].locals = base;

        if lv.parts.iter().all(|p| !p.special) {
            self.case1(&lv)
        } else {
            self.case2(&lv)
        }
    }

    /// No component of `G - N[v]` is special.
    fn case1(&mut self, lv: &Level) -> Solved {
        let k = self.k();
        let m = lv.g.m();
        let mut sets = Vec::with_capacity(lv.parts.len());
        for part in &lv.parts {
            sets.push(self.solve_sub(lv.root, lv.depth, &part.handle)?);
        }
        let union = sets
            .iter()
            .fold(VertexSet::singleton(lv.v), |acc, s| acc.union(*s));
        let need: usize = lv.parts.iter().map(|p| p.handle.graph.m() + 1).sum();

        if m >= k + 1 + need {
            self.finish(lv.step, CaseTag::Case1Strict, vec![]);
            return Ok(union);
        }
        if m < k + need {
            return Err(self.violation(format!(
                "Case 1: m = {m} is below k + sum(|E(H)|+1) = {}",
                k + need
            )));
        }
        // m = k + sum(|E(H)| + 1): the edges are exactly those of F1, the
        // components and one link per component.
        let slack = lv
            .parts
            .iter()
            .zip(&sets)
            .find(|(p, s)| (k + 2) * s.len() <= p.handle.graph.m());
        if let Some((part, _)) = slack {
            self.finish(lv.step, CaseTag::Case1_1, vec![("I", lv.set(part.set))]);
            return Ok(union);
        }
        self.case1_2(lv)
    }

    /// Every component `H` has `(k+2)|D_H| = |E(H)| + 1`.
    fn case1_2(&mut self, lv: &Level) -> Solved {
        let g = lv.g;
        let pattern = self.pattern;
        let i = &lv.parts[0];
        let (x_i, y_i) = (i.x, i.y);
        let js = g.component_sets_within(i.set.difference(VertexSet::singleton(y_i)));
        let special_js: Vec<VertexSet> = js
            .iter()
            .copied()
            .filter(|&j| is_special_pair(&g.induced(j).graph, pattern))
            .collect();

        let mut locals = vec![
            ("I", lv.set(i.set)),
            ("x_I", lv.vtx(x_i)),
            ("y_I", lv.vtx(y_i)),
            ("J", Binding::Count(js.len())),
        ];

        if special_js.is_empty() {
            let mut removed = VertexSet::singleton(lv.v);
            removed.insert(y_i);
            let rest = self.solve_pieces(
                lv,
                g.vertices().difference(removed),
                "Case 1.2, G - {v, y_I}",
            )?;
            self.finish(lv.step, CaseTag::Case1_2JEmpty, locals);
            return Ok(rest.union(VertexSet::singleton(x_i)));
        }

        let g_star = g.vertices().difference(i.set);
        let d_star = if lv.parts.len() == 1 {
            if !is_isomorphic(&g.induced(g_star).graph, pattern.graph()) {
                return Err(self.violation("Case 1.2: G* = G - V(I) is not F1".into()));
            }
            VertexSet::empty()
        } else {
            if g.induced(g_star).graph.is_c6() {
                return Err(self.violation("Case 1.2: G* is a 6-cycle".into()));
            }
            self.solve_connected(lv, g_star, "Case 1.2, G*")?
        };
        locals.push(("G*", lv.set(g_star)));

        let mut out = d_star.union(VertexSet::singleton(y_i));
        for &j in &js {
            let h = g.induced(j);
            if !special_js.contains(&j) {
                out = out.union(self.solve_sub(lv.root, lv.depth, &h)?);
                continue;
            }
            let z = g
                .neighbors(y_i)
                .intersection(j)
                .first()
                .expect("J is joined to y_I");
            locals.push(("z_J", lv.vtx(z)));
            if !is_isomorphic(&h.graph, pattern.graph()) {
                // a 6-cycle: the vertex opposite z_J together with z_J dominates J
                let z2 = opposite_in_c6(g, j, z);
                locals.push(("z_J'", lv.vtx(z2)));
                out.insert(z2);
            }
        }
        self.finish(lv.step, CaseTag::Case1_2JSpecial, locals);
        Ok(out)
    }

    /// Some component of `G - N[v]` is special.
    fn case2(&mut self, lv: &Level) -> Solved {
        let g = lv.g;
        let pattern = self.pattern;

        if let Some(h) = lv
            .parts
            .iter()
            .find(|p| p.special && p.handle.graph.is_c6())
        {
            if !pattern.is_p3() {
                return Err(self.violation("Case 2: 6-cycle component with F not a 3-path".into()));
            }
            let y1 = h.y;
            let y4 = opposite_in_c6(g, h.set, y1);
            let removed = g.closed_neighbors(y4).intersection(h.set);
            let g_star = g.vertices().difference(removed);
            let rest = self.solve_connected(lv, g_star, "Case 2, G - N_H[y4]")?;
            self.finish(
                lv.step,
                CaseTag::Case2C6,
                vec![
                    ("H", lv.set(h.set)),
                    ("y_H", lv.vtx(y1)),
                    ("y4", lv.vtx(y4)),
                    ("G*", lv.set(g_star)),
                ],
            );
            return Ok(rest.union(VertexSet::singleton(y4)));
        }

        let specials: Vec<&Part> = lv.parts.iter().filter(|p| p.special).collect();
        let linked = |x: usize, p: &Part| !g.neighbors(x).is_disjoint(p.set);

        for x in g.neighbors(lv.v).iter() {
            let count = specials.iter().filter(|p| linked(x, p)).count();
            if count < 2 {
                continue;
            }
            let xs: VertexSet = specials
                .iter()
                .filter(|p| !linked(x, p))
                .map(|p| p.x)
                .collect();
            let mut out = xs.union(VertexSet::singleton(lv.v));
            out.insert(x);
            for part in lv.parts.iter().filter(|p| !p.special) {
                out = out.union(self.solve_sub(lv.root, lv.depth, &part.handle)?);
            }
            self.finish(
                lv.step,
                CaseTag::Case2_1,
                vec![
                    ("x", lv.vtx(x)),
                    ("H'_x", Binding::Count(count)),
                    ("X", lv.set(xs)),
                ],
            );
            return Ok(out);
        }

        let h = specials[0];
        let (x, y) = (h.x, h.y);
        let other_link = g
            .neighbors(lv.v)
            .iter()
            .filter(|&u| u != x)
            .find_map(|u| g.neighbors(u).intersection(h.set).first().map(|w| (u, w)));
        match other_link {
            None => self.case2_2_1(lv, h),
            Some((x2, y2)) => self.case2_2_2(lv, h, (x, y), (x2, y2)),
        }
    }

    /// The chosen special component `H` is linked to `x_H` only.
    fn case2_2_1(&mut self, lv: &Level, h: &Part) -> Solved {
        let g = lv.g;
        let pattern = self.pattern;
        let x = h.x;
        let removed = h.set.union(VertexSet::singleton(x));
        let mut gv_star = VertexSet::empty();
        let mut out = VertexSet::singleton(x);
        for comp in g.component_sets_within(g.vertices().difference(removed)) {
            if comp.contains(lv.v) {
                gv_star = comp;
                continue;
            }
            let sub = g.induced(comp);
            if is_special_pair(&sub.graph, pattern) {
                return Err(
                    self.violation("Case 2.2.1: a component linked to x only is special".into())
                );
            }
            out = out.union(self.solve_sub(lv.root, lv.depth, &sub)?);
        }
        let star = g.induced(gv_star);
        let mut locals = vec![
            ("H", lv.set(h.set)),
            ("x", lv.vtx(x)),
            ("y", lv.vtx(h.y)),
            ("G_v*", lv.set(gv_star)),
        ];
        if !is_special_pair(&star.graph, pattern) {
            out = out.union(self.solve_sub(lv.root, lv.depth, &star)?);
            locals.push(("branch", Binding::Label("G_v* not special")));
        } else if is_isomorphic(&star.graph, pattern.graph()) {
            locals.push(("branch", Binding::Label("G_v* is an F-copy")));
        } else {
            let w2 = opposite_in_c6(g, gv_star, lv.v);
            out.insert(w2);
            locals.push(("branch", Binding::Label("G_v* is a 6-cycle")));
            locals.push(("w", lv.vtx(w2)));
        }
        self.finish(lv.step, CaseTag::Case2_2_1, locals);
        Ok(out)
    }

    /// The chosen special component `H` is also linked to `x' ≠ x_H`.
    fn case2_2_2(
        &mut self,
        lv: &Level,
        h: &Part,
        (x, y): (usize, usize),
        (x2, y2): (usize, usize),
    ) -> Solved {
        let g = lv.g;
        let pattern = self.pattern;
        let i_set = g.vertices().difference(h.set);
        let w = h
            .set
            .iter()
            .find(|&u| h.set.is_subset(g.closed_neighbors(u)))
            .expect("H is an F-copy, so it has a dominating vertex");
        let mut locals = vec![
            ("H", lv.set(h.set)),
            ("x", lv.vtx(x)),
            ("y", lv.vtx(y)),
            ("x'", lv.vtx(x2)),
            ("y'", lv.vtx(y2)),
            ("w", lv.vtx(w)),
        ];
        let i_graph = g.induced(i_set);
        if !is_special_pair(&i_graph.graph, pattern) {
            let rest = self.solve_connected(lv, i_set, "Case 2.2.2, G - V(H)")?;
            locals.push(("branch", Binding::Label("I not special")));
            self.finish(lv.step, CaseTag::Case2_2_2, locals);
            return Ok(rest.union(VertexSet::singleton(w)));
        }
        if !is_isomorphic(&i_graph.graph, pattern.graph()) {
            return Err(self.violation("Case 2.2.2: G - V(H) is a 6-cycle".into()));
        }
        let a = g.edges_between(g.neighbors(lv.v), h.set);
        locals.push(("A", Binding::Count(a.len())));
        let out = if a.len() >= 3 {
            locals.push(("branch", Binding::Label("|A| >= 3")));
            [lv.v, w].into_iter().collect()
        } else if a.len() != 2 {
            return Err(self.violation(format!("Case 2.2.2: |A| = {} < 2", a.len())));
        } else if w == y || w == y2 {
            locals.push(("branch", Binding::Label("w in {y, y'}")));
            VertexSet::singleton(w)
        } else {
            let deg_h = |u: usize| g.neighbors(u).intersection(h.set).len();
            // with d_H(y) <= d_H(y'), N[x'] alone isolates
            let chosen = if deg_h(y) <= deg_h(y2) { x2 } else { x };
            locals.push(("branch", Binding::Label("N[x'] isolates")));
            locals.push(("X", lv.vtx(chosen)));
            let d = VertexSet::singleton(chosen);
            if !is_isolating(g, pattern, d) {
                return Err(self.violation("Case 2.2.2: G - N[x'] still contains an F-copy".into()));
            }
            d
        };
        self.finish(lv.step, CaseTag::Case2_2_2, locals);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::iota_exact;

    #[test]
    fn bound_examples() {
        assert_eq!(bound(9, 3), 2);
        assert_eq!(bound(5, 2), 1);
        for k in 0..10 {
            assert_eq!(bound(k, k), 0);
        }
    }

    #[test]
    fn no_copy_gives_empty_set() {
        let k3 = Pattern::builtin("k3").unwrap();
        let cert = isolate(&Graph::cycle(6), &k3).unwrap();
        assert!(cert.set.is_empty());
        assert_eq!(cert.bound, 1);
        assert_eq!(cert.tags().collect::<Vec<_>>(), vec![CaseTag::NoCopy]);
    }

    #[test]
    fn star_is_isolated_by_its_hub() {
        let p3 = Pattern::builtin("p3").unwrap();
        let g = Graph::star(5);
        let cert = isolate(&g, &p3).unwrap();
        assert_eq!(cert.set, VertexSet::singleton(0));
        assert_eq!(cert.bound, 1);
        assert_eq!(iota_exact(&g, &p3).unwrap().iota, 1);
        assert_eq!(cert.tags().collect::<Vec<_>>(), vec![CaseTag::WholeNbhd]);
    }

    #[test]
    fn special_and_small_inputs_are_rejected() {
        let p3 = Pattern::builtin("p3").unwrap();
        let err = isolate(&Graph::cycle(6), &p3).unwrap_err();
        assert_eq!(err.kind, SolverErrorKind::SpecialPairInput);
        assert_eq!(err.message, "special pair: F=P3, G=C6");
        let err = isolate(&Graph::path(3), &p3).unwrap_err();
        assert_eq!(err.kind, SolverErrorKind::SpecialPairInput);
        let k2 = Pattern::builtin("k2").unwrap();
        let err = isolate(&Graph::path(4), &k2).unwrap_err();
        assert_eq!(err.kind, SolverErrorKind::PatternTooSmall);
    }

    #[test]
    fn disconnected_input_with_special_components() {
        let p3 = Pattern::builtin("p3").unwrap();
        let g = Graph::cycle(6).disjoint_union(&Graph::path(3)).unwrap();
        let g = g.disjoint_union(&Graph::path(5)).unwrap();
        let cert = isolate(&g, &p3).unwrap();
        assert!(cert.isolating);
        assert!(!cert.bound_applies);
        assert_eq!(cert.special_components.len(), 2);
        assert_eq!(cert.size(), iota_exact(&g, &p3).unwrap().iota);
    }

    #[test]
    fn spider_of_pendant_paths() {
        // v = 0 with three legs of length 3: each leg past N[v] is a P2
        // (no P3), so this is Case 1 with components free of copies.
        let g = Graph::new(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (0, 4),
                (4, 5),
                (5, 6),
                (0, 7),
                (7, 8),
                (8, 9),
            ],
        )
        .unwrap();
        let p3 = Pattern::builtin("p3").unwrap();
        let cert = isolate(&g, &p3).unwrap();
        assert!(cert.isolating && cert.within_bound());
        assert!(cert.size() >= iota_exact(&g, &p3).unwrap().iota);
    }

    #[test]
    fn pendant_triangle_reaches_case_2_2_1() {
        // triangle 0-1-2 with hub 0 of degree 4: 0-3, 3-4, and triangle 4-5-6
        let g = Graph::new(
            7,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (0, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (4, 6),
            ],
        )
        .unwrap();
        let k3 = Pattern::builtin("k3").unwrap();
        let cert = isolate(&g, &k3).unwrap();
        assert!(cert.isolating && cert.within_bound());
        assert_eq!(cert.size(), iota_exact(&g, &k3).unwrap().iota);
    }

    #[test]
    fn neighbor_linked_to_two_paths() {
        // v = 0 adjacent to 1, 2 (P3 copy centered at 0), 1 linked to two
        // separate P3s {3,4,5} and {6,7,8} through their ends.
        let g = Graph::new(
            9,
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (3, 4),
                (4, 5),
                (1, 6),
                (6, 7),
                (7, 8),
            ],
        )
        .unwrap();
        let p3 = Pattern::builtin("p3").unwrap();
        let cert = isolate(&g, &p3).unwrap();
        assert!(cert.isolating && cert.within_bound());
        assert!(cert.size() >= iota_exact(&g, &p3).unwrap().iota);
    }
}
