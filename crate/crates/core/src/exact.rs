//! Brute-force isolation numbers.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::pattern::Pattern;

/// Largest graph the exact solvers accept.
pub const EXACT_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("exact solver supports at most {limit} vertices, got {n}")]
pub struct TooLarge {
    pub n: usize,
    pub limit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    /// `ι(G, F)`.
    pub iota: usize,
    /// First minimum isolating set in enumeration order.
    pub witness: VertexSet,
    /// Number of candidate sets tested.
    pub explored: u64,
}

/// True iff `G - N[D]` has no copy of `F`.
pub fn is_isolating(g: &Graph, pattern: &Pattern, d: VertexSet) -> bool {
    let alive = g.vertices().difference(g.closed_neighborhood(d));
    pattern.is_free_within(g, alive)
}

/// Smallest `F`-isolating set, by increasing size.
///
/// Only vertices within distance two of a copy center are tried: a vertex
/// whose closed neighbourhood misses every copy can be dropped from any
/// isolating set.
pub fn iota_exact(g: &Graph, pattern: &Pattern) -> Result<ExactResult, TooLarge> {
    if g.n() > EXACT_LIMIT {
        return Err(TooLarge {
            n: g.n(),
            limit: EXACT_LIMIT,
        });
    }
    let centers = pattern.find_copy_centers(g);
    let mut explored = 1;
    if centers.is_empty() {
        return Ok(ExactResult {
            iota: 0,
            witness: VertexSet::empty(),
            explored,
        });
    }
    let candidates = g
        .closed_neighborhood(g.closed_neighborhood(centers))
        .to_vec();
    // N[U] meets every copy, so |U| always suffices.
    for size in 1..=centers.len() {
        let found = first_subset(&candidates, size, |d| {
            explored += 1;
            is_isolating(g, pattern, d)
        });
        if let Some(witness) = found {
            return Ok(ExactResult {
                iota: size,
                witness,
                explored,
            });
        }
    }
    unreachable!("the copy centers form an isolating set")
}

/// Domination number, computed directly as the smallest `D` with `N[D] = V(G)`.
pub fn gamma(g: &Graph) -> Result<usize, TooLarge> {
    if g.n() > EXACT_LIMIT {
        return Err(TooLarge {
            n: g.n(),
            limit: EXACT_LIMIT,
        });
    }
    let all = g.vertices();
    let vertices = all.to_vec();
    for size in 0..=g.n() {
        if first_subset(&vertices, size, |d| g.closed_neighborhood(d) == all).is_some() {
            return Ok(size);
        }
    }
    unreachable!("V(G) dominates G")
}

/// First `size`-subset of `items` (lexicographic on positions) accepted by `accept`.
fn first_subset(
    items: &[usize],
    size: usize,
    mut accept: impl FnMut(VertexSet) -> bool,
) -> Option<VertexSet> {
    let len = items.len();
    if size > len {
        return None;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let set: VertexSet = idx.iter().map(|&i| items[i]).collect();
        if accept(set) {
            return Some(set);
        }
        // advance to the next combination
        let mut i = size;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < len - size + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
