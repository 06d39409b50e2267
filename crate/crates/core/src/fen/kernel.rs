//! Shortening long dangling paths to a uniform length, which yields a
//! kernel of quadratic size in the feedback edge number.

use std::collections::{BTreeMap, BTreeSet};

use log::warn;
use serde::Serialize;

use super::tidy::{TidyHPGraph, TidyPreprocessed};
use crate::contraction::{concatenate, ContractionSequence, Contractor};
use crate::error::{Error, Result};
use crate::graph::{Trigraph, VertexId};

/// Vertex bound on the kernel for feedback edge number `k`.
pub fn kernel_size_bound(k: usize) -> usize {
    128 * k * k + 112 * k
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct KernelStats {
    pub vertices: usize,
    pub k: usize,
    pub bound: usize,
    /// Paths of the tidy graph (`m`).
    pub paths: usize,
    /// Paths with at least `8m` vertices, kept as paths.
    pub long_paths: usize,
}

#[derive(Clone, Debug)]
pub struct KernelResult {
    /// The kernel on `0..n`.
    pub kernel: Trigraph,
    /// Original vertex id (in the tidy graph) of each kernel vertex.
    pub kernel_ids: Vec<VertexId>,
    /// Partial sequence from the input graph to the unrelabelled kernel.
    pub to_kernel: ContractionSequence,
    /// Partial sequence from the input graph to the tidy graph.
    pub tidy_prefix: ContractionSequence,
    /// The tidy graph with short paths moved into `H`; `None` without long
    /// paths.
    pub long_tidy: Option<TidyHPGraph>,
    pub stats: KernelStats,
}

impl KernelResult {
    /// A sequence of the input graph from a sequence of the kernel.
    pub fn lift(&self, c: &ContractionSequence) -> Result<ContractionSequence> {
        let map: BTreeMap<VertexId, VertexId> = self
            .kernel_ids
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, VertexId(i)))
            .collect();
        concatenate(&self.to_kernel, c, &map)
    }

    /// The kernel's `H` as a vertex set of the kernel.
    pub fn kernel_h(&self) -> Option<BTreeSet<VertexId>> {
        let t = self.long_tidy.as_ref()?;
        Some(
            self.kernel_ids
                .iter()
                .enumerate()
                .filter(|(_, v)| t.h_vertices.contains(v))
                .map(|(i, _)| VertexId(i))
                .collect(),
        )
    }
}

/// Moves paths with fewer than `8m` vertices into `H` and shortens every
/// other path to exactly `8m` vertices by contracting its last two vertices.
pub fn shorten_paths_kernel(pre: &TidyPreprocessed) -> Result<KernelResult> {
    let t = &pre.tidy;
    let m = t.m();
    let target = 8 * m;
    let (long, short): (Vec<_>, Vec<_>) = t.paths.iter().cloned().partition(|p| p.len() >= target);
    let mut h_vertices = t.h_vertices.clone();
    h_vertices.extend(short.iter().flatten());
    let long_tidy = (!long.is_empty()).then(|| TidyHPGraph {
        g: t.g.clone(),
        h_vertices,
        paths: long.clone(),
    });
    if let Some(lt) = &long_tidy {
        lt.validate()?;
    }
    let mut c = Contractor::new(t.g.clone());
    for p in &long {
        let mut p = p.clone();
        while p.len() > target {
            let y = p.pop().unwrap();
            let x = p.pop().unwrap();
            p.push(c.contract(x, y)?);
        }
    }
    let map: BTreeMap<VertexId, VertexId> = t.g.vertices().map(|v| (v, v)).collect();
    let to_kernel = concatenate(&pre.prefix, &c.sequence(), &map)?;
    let (kernel, kernel_ids) = c.current().relabel_dense();
    let stats = KernelStats {
        vertices: kernel.vertex_count(),
        k: pre.stats.k,
        bound: kernel_size_bound(pre.stats.k),
        paths: m,
        long_paths: long.len(),
    };
    if stats.k == 0 {
        warn!("acyclic input: no kernel size bound applies");
    } else if stats.vertices > stats.bound {
        return Err(Error::BoundViolated(format!(
            "kernel has {} vertices, bound {}",
            stats.vertices, stats.bound
        )));
    }
    Ok(KernelResult {
        kernel,
        kernel_ids,
        to_kernel,
        tidy_prefix: pre.prefix.clone(),
        long_tidy,
        stats,
    })
}
