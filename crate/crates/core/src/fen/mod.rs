//! Approximating twin-width by way of the feedback edge number: dangling
//! trees become spikes, long dangling paths are cut to a uniform length,
//! and the resulting kernel is solved exactly.

mod dangling;
mod gtidy;
mod kernel;
mod sqrt;
mod tidy;

use std::collections::BTreeMap;

use log::info;
use serde::Serialize;

use crate::contraction::{restriction, translate};
use crate::error::{Error, Result};
use crate::exact::{optimal_sequence_with, SolveResult, SolverConfig};
use crate::graph::{feedback_edge_set, Trigraph, VertexId};

pub use dangling::{contract_dangling_trees, SpikeContraction};
pub use gtidy::{
    contract_given_ch, contract_gtidy_tail, mirrored_sequence, GTidyState, GivenChResult,
};
pub use kernel::{kernel_size_bound, shorten_paths_kernel, KernelResult, KernelStats};
pub use sqrt::{
    check_follow_preconditions, follow_on_trigraph, sqrt_bound_sequence, SqrtBoundReport,
    SqrtBoundResult,
};
pub use tidy::{
    small_width_branch, synthetic_tidy, tidy_construct, tidy_preprocess, TidyHPGraph, TidyOutcome,
    TidyPreprocessed, TidyStats,
};

#[derive(Clone, Debug)]
pub struct FenConfig {
    pub solver: SolverConfig,
    /// Skip the width-2 check and always build the kernel.
    pub force_kernel: bool,
    /// Warning thresholds: `|V(H)| ≤ h_factor·k`, `|P| ≤ p_factor·k`.
    pub h_factor: usize,
    pub p_factor: usize,
}

impl Default for FenConfig {
    fn default() -> Self {
        FenConfig {
            solver: SolverConfig::default(),
            force_kernel: false,
            h_factor: 112,
            p_factor: 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FenRoute {
    /// Solved by the width-2 check.
    SmallWidth,
    Kernel,
}

#[derive(Clone, Debug, Serialize)]
pub struct FenReport {
    pub n: usize,
    pub k: usize,
    pub route: FenRoute,
    pub tidy: Option<TidyStats>,
    pub kernel: Option<KernelStats>,
    pub prefix_width: Option<usize>,
    pub kernel_width: Option<usize>,
    pub kernel_optimal: Option<bool>,
    /// Width of the kernel sequence concatenated behind the kernel prefix.
    pub lifted_width: Option<usize>,
    /// Width through the sequence built from the kernel's `H`.
    pub mirrored_width: Option<usize>,
    pub width: usize,
    /// A lower bound on the twin-width of the input.
    pub lower_bound: usize,
}

#[derive(Clone, Debug)]
pub struct FenResult {
    pub result: SolveResult,
    pub report: FenReport,
    pub kernel: Option<KernelResult>,
}

/// Tidy construction followed by path shortening, without a width check.
pub fn kernelize(g: &Trigraph, cfg: &FenConfig) -> Result<KernelResult> {
    shorten_paths_kernel(&tidy_construct(g, cfg)?)
}

/// Contraction sequence of `g` of width at most `tww(g) + 1`, verified by
/// replay.
pub fn fen_approximate(g: &Trigraph, cfg: &FenConfig) -> Result<FenResult> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let k = feedback_edge_set(g).len();
    let n = g.vertex_count();
    let pre = match tidy_preprocess(g, cfg)? {
        TidyOutcome::Solved(r) => {
            let lower = if r.optimal {
                r.width
            } else {
                r.width.saturating_sub(1)
            };
            let report = FenReport {
                n,
                k,
                route: FenRoute::SmallWidth,
                tidy: None,
                kernel: None,
                prefix_width: None,
                kernel_width: None,
                kernel_optimal: None,
                lifted_width: None,
                mirrored_width: None,
                width: r.width,
                lower_bound: lower,
            };
            return Ok(FenResult {
                result: r,
                report,
                kernel: None,
            });
        }
        TidyOutcome::Tidy(pre) => pre,
    };
    let kr = shorten_paths_kernel(&pre)?;
    let solved = optimal_sequence_with(&kr.kernel, None, &cfg.solver)?;
    let lifted = kr.lift(&solved.sequence)?;
    let lifted_width = lifted.width()?;
    let mirrored = match (&kr.long_tidy, kr.kernel_h()) {
        (Some(lt), Some(kh)) => {
            let h = kr.kernel.induced_subtrigraph(&kh)?;
            let c_h = restriction(&solved.sequence, &h)?;
            let ids: BTreeMap<VertexId, VertexId> =
                kh.iter().map(|&v| (v, kr.kernel_ids[v.0])).collect();
            let c_h = translate(&c_h, &ids)?;
            Some(pre.lift(&mirrored_sequence(lt, &c_h)?)?)
        }
        _ => None,
    };
    let mirrored_width = mirrored.as_ref().map(|c| c.width()).transpose()?;
    let best = match mirrored {
        Some(c) if mirrored_width.unwrap() < lifted_width => c,
        _ => lifted,
    };
    if !best.is_complete() || best.initial() != g {
        return Err(Error::Invariant(
            "lifted sequence does not contract the input".into(),
        ));
    }
    let result = SolveResult::from_sequence(best, false)?;
    // Shortening paths raises the twin-width by at most one.
    let lower = if solved.optimal {
        solved.width.saturating_sub(1)
    } else {
        0
    };
    info!(
        "fen: k = {k}, kernel {} vertices, width {} (kernel {})",
        kr.stats.vertices, result.width, solved.width
    );
    let report = FenReport {
        n,
        k,
        route: FenRoute::Kernel,
        tidy: Some(pre.stats.clone()),
        kernel: Some(kr.stats),
        prefix_width: Some(kr.to_kernel.width()?),
        kernel_width: Some(solved.width),
        kernel_optimal: Some(solved.optimal),
        lifted_width: Some(lifted_width),
        mirrored_width,
        width: result.width,
        lower_bound: lower,
    };
    Ok(FenResult {
        result,
        report,
        kernel: Some(kr),
    })
}
