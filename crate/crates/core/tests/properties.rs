//! Property tests against brute-force oracles.

use isolation_kit::graph::{canonical_form, is_isomorphic};
use isolation_kit::proof::Binding;
use isolation_kit::{
    iota_exact, is_isolating, is_special_pair, isolate, CaseTag, Graph, Pattern, VertexSet,
};
use proptest::prelude::*;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let edges: Vec<_> = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| bits >> (i % 64) & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    Graph::new(n, &edges).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, bits)| graph_from_bits(n, bits))
}

/// Sparse connected graphs: a random tree plus a few extra edges.
fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(any::<prop::sample::Index>(), n - 1),
                prop::collection::vec((0..n, 0..n), 0..=n),
            )
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: Vec<_> = (1..n).map(|v| (parents[v - 1].index(v), v)).collect();
            edges.extend(extra.into_iter().filter(|(a, b)| a != b));
            Graph::new(n, &edges).unwrap()
        })
}

fn arb_pattern() -> impl Strategy<Value = Pattern> {
    prop::sample::select(Pattern::all_builtins())
}

fn arb_pattern_k2() -> impl Strategy<Value = Pattern> {
    prop::sample::select(
        Pattern::all_builtins()
            .into_iter()
            .filter(|p| p.k() >= 2)
            .collect::<Vec<_>>(),
    )
}

fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut s = seed | 1;
    for i in (1..n).rev() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        perm.swap(i, (s % (i as u64 + 1)) as usize);
    }
    perm
}

/// Every injective edge-preserving map `V(F) -> alive`.
fn all_copies(g: &Graph, f: &Graph, alive: VertexSet) -> Vec<Vec<usize>> {
    fn go(g: &Graph, f: &Graph, alive: VertexSet, img: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let pos = img.len();
        if pos == f.n() {
            out.push(img.clone());
            return;
        }
        for t in alive.iter() {
            if img.contains(&t) || (0..pos).any(|a| f.has_edge(a, pos) && !g.has_edge(img[a], t)) {
                continue;
            }
            img.push(t);
            go(g, f, alive, img, out);
            img.pop();
        }
    }
    let mut out = Vec::new();
    go(g, f, alive, &mut Vec::new(), &mut out);
    out
}

fn brute_free(g: &Graph, p: &Pattern, alive: VertexSet) -> bool {
    all_copies(g, p.graph(), alive).is_empty()
}

/// Smallest `D` with `G - N[D]` copy-free, by scanning all subsets.
fn brute_iota(g: &Graph, p: &Pattern) -> usize {
    let n = g.n();
    (0u64..1 << n)
        .map(VertexSet::from_bits)
        .filter(|&d| brute_free(g, p, g.vertices().difference(g.closed_neighborhood(d))))
        .map(|d| d.len())
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn closed_neighborhood_is_union_of_balls(g in arb_graph(10), bits in any::<u64>()) {
        let x = VertexSet::from_bits(bits).intersection(g.vertices());
        let union = x.iter().fold(VertexSet::empty(), |acc, v| acc.union(g.closed_neighbors(v)));
        prop_assert_eq!(g.closed_neighborhood(x), union);
    }

    #[test]
    fn components_partition_the_vertices(g in arb_graph(12)) {
        let comps = g.component_sets();
        let mut seen = VertexSet::empty();
        for c in &comps {
            prop_assert!(seen.is_disjoint(*c));
            seen = seen.union(*c);
            prop_assert!(g.induced(*c).graph.is_connected());
            prop_assert!(g.edges_between(*c, g.vertices().difference(*c)).is_empty());
        }
        prop_assert_eq!(seen, g.vertices());
    }

    #[test]
    fn canonical_form_ignores_labels(g in arb_graph(8), seed in any::<u64>()) {
        let h = g.relabel(&permutation(g.n(), seed));
        prop_assert!(is_isomorphic(&g, &h));
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
    }

    #[test]
    fn canonical_form_agrees_with_isomorphism(a in arb_graph(6), b in arb_graph(6)) {
        prop_assert_eq!(
            canonical_form(&a).unwrap() == canonical_form(&b).unwrap(),
            is_isomorphic(&a, &b)
        );
    }

    #[test]
    fn matcher_agrees_with_brute_force(g in arb_graph(6), p in arb_pattern(), bits in any::<u64>()) {
        prop_assume!(p.ell() <= 4);
        let alive = VertexSet::from_bits(bits).intersection(g.vertices());
        let copies = all_copies(&g, p.graph(), alive);
        prop_assert_eq!(p.is_free_within(&g, alive), copies.is_empty());
        if let Some(w) = p.find_copy_within(&g, alive) {
            prop_assert!(w.is_valid(&g, &p));
            prop_assert!(w.vertex_set().is_subset(alive));
        }
        let centers: VertexSet = copies
            .iter()
            .flat_map(|c| p.dominators().iter().map(move |&d| c[d]))
            .collect();
        prop_assert_eq!(p.centers_within(&g, alive), centers);
    }

    #[test]
    fn exact_matches_subset_scan(g in arb_graph(7), p in arb_pattern()) {
        let r = iota_exact(&g, &p).unwrap();
        prop_assert_eq!(r.iota, brute_iota(&g, &p));
        prop_assert_eq!(r.witness.len(), r.iota);
        prop_assert!(is_isolating(&g, &p, r.witness));
    }

    #[test]
    fn isolating_is_monotone(g in arb_graph(10), p in arb_pattern(), a in any::<u64>(), b in any::<u64>()) {
        let small = VertexSet::from_bits(a).intersection(g.vertices());
        let big = small.union(VertexSet::from_bits(b).intersection(g.vertices()));
        if is_isolating(&g, &p, small) {
            prop_assert!(is_isolating(&g, &p, big));
        }
    }

    #[test]
    fn solver_is_sound(g in arb_connected(14), p in arb_pattern_k2()) {
        prop_assume!(!is_special_pair(&g, &p));
        let cert = isolate(&g, &p).unwrap();
        prop_assert!(cert.isolating && cert.bound_applies);
        prop_assert!(cert.size() <= cert.bound);
        prop_assert!(cert.set.is_subset(g.vertices()));
        prop_assert!(cert.size() >= iota_exact(&g, &p).unwrap().iota);
    }

    #[test]
    fn solver_on_disjoint_unions(a in arb_connected(8), b in arb_connected(8), p in arb_pattern_k2()) {
        let g = a.disjoint_union(&b).unwrap();
        let cert = isolate(&g, &p).unwrap();
        prop_assert!(cert.isolating);
        prop_assert!(!cert.bound_applies);
        let expected = usize::from(is_special_pair(&a, &p)) + usize::from(is_special_pair(&b, &p));
        prop_assert_eq!(cert.special_components.len(), expected);
    }

    #[test]
    fn trace_bindings_are_valid(g in arb_connected(14), p in arb_pattern_k2()) {
        prop_assume!(!is_special_pair(&g, &p));
        let cert = isolate(&g, &p).unwrap();
        let n = g.n();
        prop_assert_eq!(cert.trace[0].depth, 0);
        prop_assert_eq!((cert.trace[0].n, cert.trace[0].m), (n, g.m()));
        for step in &cert.trace {
            prop_assert!(step.tag.is_some());
            prop_assert!(step.center.is_none_or(|c| c < n));
            for (name, b) in &step.locals {
                match b {
                    Binding::Vertex(v) => prop_assert!(*v < n, "{} = {}", name, v),
                    Binding::Set(s) => prop_assert!(s.iter().all(|&v| v < n), "{}", name),
                    Binding::Count(_) | Binding::Label(_) => {}
                }
            }
            match step.tag.unwrap() {
                CaseTag::Case2_1 => {
                    prop_assert!(matches!(step.local("H'_x"), Some(Binding::Count(c)) if *c >= 2));
                }
                CaseTag::NoCopy => prop_assert!(step.center.is_none()),
                _ => prop_assert!(step.center.is_some()),
            }
        }
    }
}
