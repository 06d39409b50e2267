//! Twins: two vertices with identical coloured neighbourhoods apart from
//! each other. Contracting them leaves a copy of `G - v`.

use std::collections::{BTreeMap, BTreeSet};

use crate::contraction::Contractor;
use crate::graph::{Color, Trigraph, VertexId};

fn row(g: &Trigraph, v: VertexId, skip: VertexId) -> Vec<(VertexId, Color)> {
    g.neighbors(v).filter(|&(x, _)| x != skip).collect()
}

/// Lexicographically least twin pair inside `among`.
pub(crate) fn find_twin_pair(
    g: &Trigraph,
    among: &BTreeSet<VertexId>,
) -> Option<(VertexId, VertexId)> {
    let mut best: Option<(VertexId, VertexId)> = None;
    let mut consider = |p: (VertexId, VertexId)| {
        if best.is_none_or(|b| p < b) {
            best = Some(p);
        }
    };
    let mut open: BTreeMap<Vec<(VertexId, Color)>, VertexId> = BTreeMap::new();
    for &v in among {
        let r: Vec<_> = g.neighbors(v).collect();
        match open.get(&r) {
            Some(&u) => consider((u, v)),
            None => {
                open.insert(r, v);
            }
        }
    }
    for &u in among {
        for (v, _) in g.neighbors(u) {
            if v > u && among.contains(&v) && row(g, u, v) == row(g, v, u) {
                consider((u, v));
            }
        }
    }
    best
}

/// Contracts twins among `among` until none remain; returns the live set.
pub(crate) fn reduce_twins(k: &mut Contractor, among: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
    let mut live = among.clone();
    while let Some((u, v)) = find_twin_pair(k.current(), &live) {
        let w = k.contract(u, v).expect("live twins");
        live.remove(&u);
        live.remove(&v);
        live.insert(w);
    }
    live
}
