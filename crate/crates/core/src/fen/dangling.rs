//! Collapsing maximal dangling trees into spikes.

use std::collections::{BTreeMap, BTreeSet};

use crate::contraction::{ContractionSequence, Contractor};
use crate::error::{Error, Result};
use crate::exact::tree_sequence;
use crate::graph::{dangling_structures, Trigraph, VertexId};

/// Result of [`contract_dangling_trees`].
#[derive(Clone, Debug)]
pub struct SpikeContraction {
    /// Partial sequence on the input graph.
    pub sequence: ContractionSequence,
    /// The trigraph after the sequence.
    pub trigraph: Trigraph,
    /// Spike of each vertex that has one, keyed by the vertex it hangs on.
    pub spikes: BTreeMap<VertexId, VertexId>,
}

/// Applies the dangling-tree phase to a contractor positioned at the
/// input graph and returns the spike map.
pub(crate) fn spikes_in(k: &mut Contractor) -> Result<BTreeMap<VertexId, VertexId>> {
    let g = k.current().clone();
    let mut d = dangling_structures(&g);
    d.trees.sort_by_key(|t| (t.attachment, t.root));
    let mut spikes: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for t in d.trees {
        let sub = g.induced_subtrigraph(&t.vertices)?;
        let seq = tree_sequence(&sub, t.root)?;
        let mut map: BTreeMap<VertexId, VertexId> = t.vertices.iter().map(|&v| (v, v)).collect();
        k.apply_mapped(&seq, &mut map)?;
        let top = match seq.steps().last() {
            Some(s) => map[&s.w],
            None => t.root,
        };
        let Some(x) = t.attachment else {
            continue;
        };
        let spike = match spikes.get(&x) {
            Some(&old) => k.contract(old, top)?,
            None => top,
        };
        spikes.insert(x, spike);
    }
    Ok(spikes)
}

/// Contracts every maximal dangling tree to a spike and merges spikes that
/// hang on the same vertex. A component that is a tree collapses to a
/// single vertex. The partial sequence has width at most 2 on graphs.
pub fn contract_dangling_trees(g: &Trigraph) -> Result<SpikeContraction> {
    let mut k = Contractor::new(g.clone());
    let spikes = spikes_in(&mut k)?;
    let bound = 2.max(g.max_red_degree());
    if k.width() > bound {
        return Err(Error::BoundViolated(format!(
            "dangling-tree phase reached width {} > {bound}",
            k.width()
        )));
    }
    Ok(SpikeContraction {
        trigraph: k.current().clone(),
        sequence: k.into_sequence(),
        spikes,
    })
}

/// Vertices in no dangling tree: the 2-core, by id.
pub(crate) fn core_of(g: &Trigraph, spikes: &BTreeMap<VertexId, VertexId>) -> BTreeSet<VertexId> {
    let s: BTreeSet<VertexId> = spikes.values().copied().collect();
    g.vertices().filter(|v| !s.contains(v)).collect()
}
