//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use tww_core::contraction::Contractor;
use tww_core::{Trigraph, VertexId};

type Key = Vec<BTreeSet<VertexId>>;

fn best_from(k: &Contractor, memo: &mut BTreeMap<Key, usize>) -> usize {
    let here = k.current().max_red_degree();
    if k.current().vertex_count() <= 1 {
        return here;
    }
    let key: Key = {
        let mut b: Key = k.bags().values().cloned().collect();
        b.sort();
        b
    };
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let vs: Vec<VertexId> = k.current().vertices().collect();
    let mut best = usize::MAX;
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            let mut next = k.clone();
            next.contract(u, v).unwrap();
            best = best.min(best_from(&next, memo));
        }
    }
    let v = here.max(best);
    memo.insert(key, v);
    v
}

/// Twin-width by exhaustive search over every contraction pair at every
/// step, memoised on the bag partition only. Meant for n ≤ 8.
pub fn brute_force_tww(g: &Trigraph) -> usize {
    assert!(g.vertex_count() <= 9, "oracle is exponential");
    best_from(&Contractor::new(g.clone()), &mut BTreeMap::new())
}
