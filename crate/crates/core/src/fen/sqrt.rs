//! The square-root construction: spikes, path shortening, then a finish on
//! the all-black remainder replayed on the red original.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use log::warn;
use serde::Serialize;

use super::dangling::{core_of, spikes_in};
use crate::contraction::{concatenate, ContractionSequence, Contractor};
use crate::error::{Error, Result};
use crate::exact::{
    greedy_sequence, optimal_sequence_with, reduced_size, tree_sequence, SolveResult, SolverConfig,
};
use crate::graph::{feedback_edge_set, is_forest, Color, Trigraph, VertexId};

/// Widths and sizes recorded along [`sqrt_bound_sequence`].
#[derive(Clone, Debug, Serialize)]
pub struct SqrtBoundReport {
    pub k: usize,
    pub beta_vertices: usize,
    pub beta_edges: usize,
    pub prefix_width: usize,
    /// Width of the all-black finish.
    pub black_width: usize,
    /// Whether the finish on the all-black trigraph is optimal.
    pub black_optimal: bool,
    pub followed_width: usize,
    pub width: usize,
    /// `⌈√(87k)⌉ + 10`; exceeding it only logs a warning.
    pub soft_ceiling: usize,
}

#[derive(Clone, Debug)]
pub struct SqrtBoundResult {
    pub result: SolveResult,
    pub report: SqrtBoundReport,
}

/// Checks the preconditions of [`follow_on_trigraph`].
pub fn check_follow_preconditions(g: &Trigraph) -> Result<()> {
    if g.max_red_degree() > 2 {
        return Err(Error::Precondition(format!(
            "red degree {} exceeds 2",
            g.max_red_degree()
        )));
    }
    for (u, v, c) in g.edges() {
        if c == Color::Red && g.total_degree(u) > 2 && g.total_degree(v) > 2 {
            return Err(Error::Precondition(format!(
                "red edge {u}-{v} has no endpoint of degree at most 2"
            )));
        }
    }
    Ok(())
}

/// Replays a sequence of the all-black copy of `g_red` on `g_red` itself.
/// The red edges can add at most 4 to any red degree.
pub fn follow_on_trigraph(
    g_red: &Trigraph,
    c_black: &ContractionSequence,
) -> Result<ContractionSequence> {
    check_follow_preconditions(g_red)?;
    if c_black.initial() != &g_red.all_black() {
        return Err(Error::Precondition(
            "sequence is not on the all-black copy".into(),
        ));
    }
    let pairs = c_black.steps().iter().map(|s| (s.u, s.v));
    let followed = ContractionSequence::from_pairs(g_red.clone(), pairs)?;
    let (wb, wr) = (c_black.width()?, followed.width()?);
    if wr > wb + 4 {
        return Err(Error::BoundViolated(format!(
            "followed width {wr} exceeds {wb} + 4"
        )));
    }
    Ok(followed)
}

/// Components of `t - q` (each a path) as ordered vertex lists, starting
/// from the endpoint with the lower id.
fn paths_outside(t: &Trigraph, q: &BTreeSet<VertexId>) -> Vec<Vec<VertexId>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let inner = |v: VertexId| {
        t.neighbors(v)
            .map(|(x, _)| x)
            .filter(|x| !q.contains(x))
            .collect::<Vec<_>>()
    };
    for s in t.vertices().filter(|v| !q.contains(v)) {
        if seen.contains(&s) {
            continue;
        }
        let mut comp = BTreeSet::from([s]);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for x in inner(v) {
                if comp.insert(x) {
                    queue.push_back(x);
                }
            }
        }
        seen.extend(comp.iter().copied());
        let start = comp
            .iter()
            .copied()
            .find(|&v| inner(v).len() <= 1)
            .expect("components of a forest minus branch vertices are paths");
        let mut order = vec![start];
        let mut prev = None;
        let mut cur = start;
        while let Some(next) = inner(cur).into_iter().find(|&x| Some(x) != prev) {
            order.push(next);
            prev = Some(cur);
            cur = next;
        }
        if order.len() > 1 && order[order.len() - 1] < order[0] {
            order.reverse();
        }
        out.push(order);
    }
    out.sort_by_key(|p| *p.iter().min().expect("non-empty"));
    out
}

/// Full contraction sequence of a connected graph following the
/// square-root construction. The finish on the all-black remainder is
/// exact when it fits the solver cap and greedy otherwise.
pub fn sqrt_bound_sequence(g: &Trigraph, cfg: &SolverConfig) -> Result<SqrtBoundResult> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if g.red_edge_count() > 0 {
        return Err(Error::Precondition(
            "input must be a graph without red edges".into(),
        ));
    }
    let k = feedback_edge_set(g).len();
    if is_forest(g) {
        let root = g
            .vertices()
            .next()
            .ok_or(Error::Precondition("empty graph".into()))?;
        let seq = tree_sequence(g, root)?;
        let result = SolveResult::from_sequence(seq, false)?;
        let report = SqrtBoundReport {
            k,
            beta_vertices: 1,
            beta_edges: 0,
            prefix_width: result.width,
            black_width: 0,
            black_optimal: true,
            followed_width: 0,
            width: result.width,
            soft_ceiling: 10,
        };
        return Ok(SqrtBoundResult { result, report });
    }

    let mut c = Contractor::new(g.clone());
    let mut spikes = spikes_in(&mut c)?;
    let core_set = core_of(c.current(), &spikes);
    let core = c.current().induced_subtrigraph(&core_set)?;
    let fes = feedback_edge_set(&core);
    let mut tree = core.clone();
    for &(u, v) in &fes {
        tree.set_edge(u, v, None)?;
    }
    let q: BTreeSet<VertexId> = core
        .vertices()
        .filter(|&u| tree.total_degree(u) > 2 || fes.iter().any(|&(a, b)| a == u || b == u))
        .collect();

    for path in paths_outside(&tree, &q) {
        let mut p = path;
        let n = p.len();
        if n > 2 {
            for x in &mut p[1..n - 1] {
                if let Some(s) = spikes.remove(x) {
                    *x = c.contract(*x, s)?;
                }
            }
            if let Some(s) = spikes.remove(&p[0]) {
                p[1] = c.contract(s, p[1])?;
            }
            if let Some(s) = spikes.remove(&p[n - 1]) {
                p[n - 2] = c.contract(s, p[n - 2])?;
            }
        }
        if n > 3 {
            let mut mid = p[1];
            for &x in &p[2..n - 1] {
                mid = c.contract(mid, x)?;
            }
        }
    }

    let beta = c.current().clone();
    let prefix_width = c.width();
    if beta.edge_count() > 29 * k {
        return Err(Error::BoundViolated(format!(
            "{} edges after shortening, more than 29k = {}",
            beta.edge_count(),
            29 * k
        )));
    }
    if prefix_width > 2 {
        return Err(Error::BoundViolated(format!(
            "preprocessing width {prefix_width} exceeds 2"
        )));
    }

    let (dense, old) = beta.relabel_dense();
    let gamma = dense.all_black();
    let (black, black_optimal) = if reduced_size(&gamma) <= cfg.cap {
        (optimal_sequence_with(&gamma, None, cfg)?.sequence, true)
    } else {
        (greedy_sequence(&gamma), false)
    };
    let black_width = black.width()?;
    let followed = follow_on_trigraph(&dense, &black)?;
    let followed_width = followed.width()?;

    let map: BTreeMap<VertexId, VertexId> = old
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, VertexId(i)))
        .collect();
    let full = concatenate(&c.into_sequence(), &followed, &map)?;
    let result = SolveResult::from_sequence(full, false)?;
    let soft_ceiling = ((87 * k) as f64).sqrt().ceil() as usize + 10;
    if result.width > soft_ceiling {
        warn!(
            "width {} above the soft ceiling {soft_ceiling} for k = {k}",
            result.width
        );
    }
    let report = SqrtBoundReport {
        k,
        beta_vertices: beta.vertex_count(),
        beta_edges: beta.edge_count(),
        prefix_width,
        black_width,
        black_optimal,
        followed_width,
        width: result.width,
        soft_ceiling,
    };
    Ok(SqrtBoundResult { result, report })
}
