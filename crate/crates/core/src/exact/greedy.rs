//! Heuristic contraction order used for upper bounds and for graphs beyond
//! the exact search.

use std::collections::BTreeSet;

use super::twins::find_twin_pair;
use crate::contraction::{ContractionSequence, Contractor};
use crate::graph::{Color, Trigraph, VertexId};

/// Score of contracting `u` and `v`: the largest red degree among the
/// product and its neighbours, then the change in total red degree.
fn score(g: &Trigraph, u: VertexId, v: VertexId) -> (usize, isize) {
    let mut w_red = 0usize;
    let mut worst = 0usize;
    let mut delta = -(g.red_degree(u) as isize) - (g.red_degree(v) as isize);
    let nbrs: BTreeSet<VertexId> = g
        .neighbors(u)
        .chain(g.neighbors(v))
        .map(|(x, _)| x)
        .filter(|&x| x != u && x != v)
        .collect();
    for x in nbrs {
        let cu = g.edge(x, u);
        let cv = g.edge(x, v);
        let red = !(cu == Some(Color::Black) && cv == Some(Color::Black));
        let before = g.red_degree(x);
        let after =
            before - usize::from(cu == Some(Color::Red)) - usize::from(cv == Some(Color::Red))
                + usize::from(red);
        if red {
            w_red += 1;
            delta += 1;
        }
        delta += after as isize - before as isize;
        worst = worst.max(after);
    }
    (worst.max(w_red), delta)
}

/// Best pair among vertices at distance at most two, or the two lowest ids
/// when no such pair exists.
fn best_pair(g: &Trigraph) -> (VertexId, VertexId) {
    if let Some(p) = find_twin_pair(g, &g.vertex_set()) {
        return p;
    }
    let mut best: Option<((usize, isize), VertexId, VertexId)> = None;
    for u in g.vertices() {
        let mut near: BTreeSet<VertexId> = BTreeSet::new();
        for (x, _) in g.neighbors(u) {
            near.insert(x);
            near.extend(g.neighbors(x).map(|(y, _)| y));
        }
        for v in near.into_iter().filter(|&v| v > u) {
            let s = score(g, u, v);
            if best.as_ref().is_none_or(|b| (s, u, v) < (b.0, b.1, b.2)) {
                best = Some((s, u, v));
            }
        }
    }
    match best {
        Some((_, u, v)) => (u, v),
        None => {
            let mut it = g.vertices();
            (
                it.next().expect("two vertices"),
                it.next().expect("two vertices"),
            )
        }
    }
}

/// Full sequence chosen greedily; deterministic.
pub fn greedy_sequence(g: &Trigraph) -> ContractionSequence {
    let mut k = Contractor::new(g.clone());
    while k.current().vertex_count() > 1 {
        let (u, v) = best_pair(k.current());
        k.contract(u, v).expect("live pair");
    }
    k.into_sequence()
}
