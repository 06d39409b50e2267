//! Approximating twin-width by way of vertex integrity: keep a bounded
//! number of twin-blocks per class, solve the rest exactly, and lift the
//! sequence back block by block at most doubling the width.

mod decomposition;
mod lift;

use log::info;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{optimal_sequence_with, SolveResult, SolverConfig};
use crate::graph::{Trigraph, VertexId};

pub use decomposition::{
    canonical_isomorphism, h_equivalence, reduced_graph, reduced_size_bound, twin_block_partition,
    vertex_integrity, HEquivalenceClasses, ReducedGraph, Threshold, TwinBlockClass,
    ViDecomposition,
};
pub use lift::{critical_index, find_safe_point, lift_sequence, one_new_h, SafePoint};

#[derive(Clone, Debug)]
pub struct ViConfig {
    pub solver: SolverConfig,
    pub threshold: Threshold,
    /// Largest vertex integrity searched for.
    pub p_cap: usize,
}

impl Default for ViConfig {
    fn default() -> Self {
        ViConfig {
            solver: SolverConfig::default(),
            threshold: Threshold::Guaranteed,
            p_cap: 8,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub representative: Vec<VertexId>,
    pub size: usize,
    pub kept: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Guarantee {
    /// The threshold is large enough for the lift to succeed on every
    /// input.
    #[serde(rename = "2-approx")]
    TwoApprox,
    /// A smaller threshold: the width bound holds whenever a result is
    /// returned, but the lift may fail.
    #[serde(rename = "best-effort")]
    BestEffort,
}

#[derive(Clone, Debug, Serialize)]
pub struct ViReport {
    pub n: usize,
    pub p: usize,
    pub separator: Vec<VertexId>,
    pub classes: Vec<ClassReport>,
    pub removed: usize,
    pub gprime_vertices: usize,
    pub width_gprime: usize,
    pub width_final: usize,
    pub guarantee: Guarantee,
}

#[derive(Clone, Debug)]
pub struct ViResult {
    pub result: SolveResult,
    pub report: ViReport,
}

/// Contraction sequence of `g` of width at most `2·tww(g)`.
pub fn vi_approximate(g: &Trigraph, cfg: &ViConfig) -> Result<ViResult> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let d = vertex_integrity(g, cfg.p_cap)?;
    let classes = twin_block_partition(g, &d);
    let reduced = reduced_graph(g, &d, &classes, cfg.threshold)?;
    let hint = 1usize
        .checked_shl(d.p as u32 + 1)
        .unwrap_or(usize::MAX)
        .min(g.vertex_count());
    let solved = optimal_sequence_with(&reduced.g_prime, Some(hint), &cfg.solver)?;
    let lifted = lift_sequence(g, &d, &classes, &reduced, &solved.sequence)?;
    let optimal = reduced.removed.is_empty() && solved.optimal;
    let result = SolveResult::from_sequence(lifted, optimal)?;
    let class_reports = classes
        .iter()
        .enumerate()
        .map(|(ci, c)| ClassReport {
            representative: d.components[c.representative].iter().copied().collect(),
            size: c.len(),
            kept: c.len() - reduced.removed.iter().filter(|&&(_, k)| k == ci).count(),
        })
        .collect();
    let guarantee = match cfg.threshold {
        Threshold::Guaranteed => Guarantee::TwoApprox,
        Threshold::Fixed(_) if reduced.removed.is_empty() => Guarantee::TwoApprox,
        Threshold::Fixed(_) => Guarantee::BestEffort,
    };
    info!(
        "vi: p = {}, removed {} blocks, width {} (reduced {})",
        d.p,
        reduced.removed.len(),
        result.width,
        solved.width
    );
    let report = ViReport {
        n: g.vertex_count(),
        p: d.p,
        separator: d.s.iter().copied().collect(),
        classes: class_reports,
        removed: reduced.removed.len(),
        gprime_vertices: reduced.g_prime.vertex_count(),
        width_gprime: solved.width,
        width_final: result.width,
        guarantee,
    };
    Ok(ViResult { result, report })
}
