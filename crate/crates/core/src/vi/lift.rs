//! Adding removed twin-blocks back into a contraction sequence of the
//! reduced graph, one block at a time.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::decomposition::{h_equivalence, ReducedGraph, TwinBlockClass, ViDecomposition};
use crate::contraction::{concatenate, restriction, translate, ContractionSequence, Contractor};
use crate::error::{Error, Result};
use crate::graph::{Color, Trigraph, VertexId};

/// First trigraph (1-based) of `c_star`, extended by `h`, in which a vertex
/// of `h` has a red neighbour; `None` if there is none.
///
/// Also checks that, before that trigraph, every vertex whose bag meets
/// `S^H` has its bag inside one class of `∼_H`.
pub fn critical_index(
    g: &Trigraph,
    s: &BTreeSet<VertexId>,
    c_star: &ContractionSequence,
    h: &BTreeSet<VertexId>,
) -> Result<Option<usize>> {
    let g_star = c_star.initial();
    if h.iter().any(|v| g_star.contains(*v)) {
        return Err(Error::Precondition("component already present".into()));
    }
    let eq = h_equivalence(g, s, h);
    let mut plus = g_star.vertex_set();
    plus.extend(h);
    let mut k = Contractor::new(g.induced_subtrigraph(&plus)?);
    let mut ids: BTreeMap<VertexId, VertexId> = g_star.vertices().map(|v| (v, v)).collect();
    for (j, st) in c_star.steps().iter().enumerate() {
        let w = k.contract(ids[&st.u], ids[&st.v])?;
        ids.insert(st.w, w);
        let red = k
            .current()
            .neighbors(w)
            .any(|(x, c)| c == Color::Red && h.contains(&x));
        let bag = k.bag(w).unwrap();
        let consistent = !bag.iter().any(|x| eq.s_h.contains(x)) || {
            let classes: BTreeSet<Option<usize>> = bag.iter().map(|&x| eq.class_of(x)).collect();
            classes.len() == 1 && !classes.contains(&None)
        };
        if red {
            return Ok(Some(j + 2));
        }
        if !consistent {
            return Err(Error::Invariant(format!(
                "bag of {w} mixes H-classes without a red edge to H"
            )));
        }
    }
    Ok(None)
}

/// A trigraph of `c_star` before the critical one in which two blocks of
/// `h`'s class are merged.
#[derive(Clone, Debug, Serialize)]
pub struct SafePoint {
    /// Component index of the block being added.
    pub h: usize,
    /// 1-based trigraph index.
    pub delta: usize,
    /// Merged blocks (component indices); the first one is `H'`.
    pub witness: (usize, usize),
    /// Canonical isomorphism from `h` to `H'`.
    pub iota: BTreeMap<VertexId, VertexId>,
}

/// True iff blocks `a` and `b` have every pair of corresponding vertices in
/// one bag.
fn merged(k: &Contractor, iso: &BTreeMap<VertexId, VertexId>) -> bool {
    iso.iter()
        .all(|(&x, &y)| k.descendant(x) == k.descendant(y))
}

/// Finds the trigraph just before the critical one (or the last trigraph)
/// and a merged pair of blocks of `h`'s class present in `c_star`.
pub fn find_safe_point(
    g: &Trigraph,
    d: &ViDecomposition,
    class: &TwinBlockClass,
    threshold: usize,
    c_star: &ContractionSequence,
    h: usize,
) -> Result<SafePoint> {
    let crit = critical_index(g, &d.s, c_star, &d.components[h])?;
    let delta = match crit {
        Some(i) => i - 1,
        None => c_star.len() + 1,
    };
    let mut k = Contractor::new(c_star.initial().clone());
    for st in &c_star.steps()[..delta - 1] {
        k.contract(st.u, st.v)?;
    }
    let present: Vec<usize> = class
        .members
        .iter()
        .copied()
        .filter(|&m| {
            d.components[m]
                .iter()
                .all(|v| c_star.initial().contains(*v))
        })
        .collect();
    for (i, &a) in present.iter().enumerate() {
        for &b in &present[i + 1..] {
            if merged(&k, &class.iso_between(a, b).expect("members")) {
                let iota = class
                    .iso_between(h, a)
                    .ok_or_else(|| Error::Precondition("block not in the class".into()))?;
                return Ok(SafePoint {
                    h,
                    delta,
                    witness: (a, b),
                    iota,
                });
            }
        }
    }
    Err(Error::ThresholdTooSmall { threshold })
}

fn progressive_ok(c: &ContractionSequence, a: usize, i: usize, b: usize) -> Result<bool> {
    let p = c.width_profile()?.per_trigraph;
    let cut = (i - 1).min(p.len());
    Ok(p[..cut].iter().all(|&r| r <= a) && p[cut..].iter().all(|&r| r <= b))
}

/// Sequence of `G[V(G*) ∪ V(h)]` from a sequence `c_star` of `G*` with
/// progressive width `(t →_(δ+1) 2t)`; the result has the same progressive
/// width and agrees with `c_star` (extended) on its first `δ` trigraphs.
pub fn one_new_h(
    g: &Trigraph,
    d: &ViDecomposition,
    c_star: &ContractionSequence,
    safe: &SafePoint,
    t: usize,
) -> Result<ContractionSequence> {
    let g_star = c_star.initial();
    let h = &d.components[safe.h];
    let h1 = &d.components[safe.witness.0];
    let delta = safe.delta;
    let i = delta + 1;
    if delta == 0 || delta > c_star.len() + 1 {
        return Err(Error::Precondition(format!(
            "safe index {delta} out of range"
        )));
    }
    if !progressive_ok(c_star, t, i, 2 * t)? {
        return Err(Error::Precondition(format!(
            "sequence lacks progressive width ({t} -> {i} {})",
            2 * t
        )));
    }
    let prefix = c_star.prefix(delta - 1);

    // G*_δ with the ids of `c_star`.
    let mut star = Contractor::new(g_star.clone());
    for st in prefix.steps() {
        star.contract(st.u, st.v)?;
    }

    // 1: the prefix, ignoring h.
    let mut plus_set = g_star.vertex_set();
    plus_set.extend(h);
    let g_plus = g.induced_subtrigraph(&plus_set)?;
    let mut k = Contractor::new(g_plus.clone());
    let mut ids: BTreeMap<VertexId, VertexId> = g_star.vertices().map(|v| (v, v)).collect();
    k.apply_mapped(&prefix, &mut ids)?;
    let mut expected: BTreeSet<BTreeSet<VertexId>> = star.bags().values().cloned().collect();
    expected.extend(h.iter().map(|&v| BTreeSet::from([v])));
    if k.bags().values().cloned().collect::<BTreeSet<_>>() != expected {
        return Err(Error::Invariant(
            "extended prefix disagrees with the prefix".into(),
        ));
    }

    // 2: the prefix restricted to H', carried over to h.
    let on_h1 = restriction(&prefix, &g_star.induced_subtrigraph(h1)?)?;
    let back: BTreeMap<VertexId, VertexId> = safe.iota.iter().map(|(&x, &y)| (y, x)).collect();
    let c_h = translate(&on_h1, &back)?;
    let mut h_ids: BTreeMap<VertexId, VertexId> = h.iter().map(|&v| (v, v)).collect();
    k.apply_mapped(&c_h, &mut h_ids)?;

    // 3: zip each descendant of h with its counterpart.
    let pairs: Vec<(VertexId, VertexId)> = k
        .bags()
        .iter()
        .filter(|(_, bag)| bag.iter().all(|x| h.contains(x)))
        .map(|(&x, bag)| {
            let image: BTreeSet<VertexId> = bag.iter().map(|u| safe.iota[u]).collect();
            let y = k.descendant(*image.iter().next().unwrap()).unwrap();
            let part: BTreeSet<VertexId> = k.bag(y).unwrap().intersection(h1).copied().collect();
            if part != image {
                return Err(Error::Invariant(format!(
                    "descendant {x} of h has no counterpart"
                )));
            }
            Ok((x, y))
        })
        .collect::<Result<_>>()?;
    for (x, y) in pairs {
        k.contract(x, y)?;
    }

    // 4: the rest of `c_star`, after checking that we are back at G*_δ.
    let by_bag: BTreeMap<&BTreeSet<VertexId>, VertexId> =
        star.bags().iter().map(|(&v, b)| (b, v)).collect();
    let mut to_star = BTreeMap::new();
    for (&z, bag) in k.bags() {
        let rest: BTreeSet<VertexId> = bag.difference(h).copied().collect();
        let v = by_bag
            .get(&rest)
            .ok_or_else(|| Error::Invariant(format!("no vertex of the safe trigraph for {z}")))?;
        to_star.insert(z, *v);
    }
    let mut tail = Contractor::new(star.current().clone());
    let mut same: BTreeMap<VertexId, VertexId> =
        star.current().vertices().map(|v| (v, v)).collect();
    for st in &c_star.steps()[delta - 1..] {
        let w = tail.contract(same[&st.u], same[&st.v])?;
        same.insert(st.w, w);
    }
    let out = concatenate(&k.into_sequence(), &tail.into_sequence(), &to_star).map_err(|e| {
        Error::Invariant(format!(
            "zipped trigraph differs from the safe trigraph: {e}"
        ))
    })?;
    if !progressive_ok(&out, t, i, 2 * t)? {
        return Err(Error::Invariant(format!(
            "result lacks progressive width ({t} -> {i} {})",
            2 * t
        )));
    }
    Ok(out)
}

/// Sequence of `g` of width at most `2·w(c_prime)` from a sequence of the
/// reduced graph.
pub fn lift_sequence(
    g: &Trigraph,
    d: &ViDecomposition,
    classes: &[TwinBlockClass],
    reduced: &ReducedGraph,
    c_prime: &ContractionSequence,
) -> Result<ContractionSequence> {
    if c_prime.initial() != &reduced.g_prime {
        return Err(Error::Precondition(
            "sequence is not on the reduced graph".into(),
        ));
    }
    let t = c_prime.width()?;
    let threshold: usize = reduced.threshold.clone().try_into().unwrap_or(usize::MAX);
    let mut list: Vec<SafePoint> = reduced
        .removed
        .par_iter()
        .map(|&(h, ci)| find_safe_point(g, d, &classes[ci], threshold, c_prime, h))
        .collect::<Result<_>>()?;
    list.sort_by_key(|sp| {
        (
            std::cmp::Reverse(sp.delta),
            *d.components[sp.h].iter().next().unwrap(),
        )
    });
    let mut c_star = c_prime.clone();
    for sp in &list {
        let crit = critical_index(g, &d.s, &c_star, &d.components[sp.h])?;
        if crit.is_some_and(|i| sp.delta >= i) {
            return Err(Error::Invariant(format!(
                "index {} is no longer safe",
                sp.delta
            )));
        }
        c_star = one_new_h(g, d, &c_star, sp, t)?;
    }
    if c_star.initial() != g || !c_star.is_complete() {
        return Err(Error::Invariant(
            "lifted sequence does not contract the input".into(),
        ));
    }
    let w = c_star.width()?;
    if w > 2 * t {
        return Err(Error::BoundViolated(format!(
            "lifted width {w} above {}",
            2 * t
        )));
    }
    Ok(c_star)
}
