//! Exact twin-width of small trigraphs, width-capped decisions, and the
//! width-2 tree contractor.
//!
//! Each component is first stripped of twins (which never raises a red
//! degree), then solved by iterative deepening over the width with a
//! memoised partition search. Component results are joined by contracting
//! the leftover single vertices, which carry no edges.

mod greedy;
mod search;
mod tree;
mod twins;

use std::collections::HashMap;

use serde::Serialize;

use crate::contraction::{ContractionSequence, Contractor};
use crate::error::{Error, Result};
use crate::graph::{Trigraph, VertexId};

pub use greedy::greedy_sequence;
pub use tree::tree_sequence;
pub(crate) use twins::reduce_twins;

use search::{Instance, Plan, MAX_SEARCH_VERTICES};

/// Environment variable overriding [`SolverConfig::cap`].
pub const CAP_ENV: &str = "TWW_SOLVER_CAP";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Largest component (after twin removal) solved optimally.
    pub cap: usize,
    /// Largest component (after twin removal) for width decisions.
    pub decide_cap: usize,
    /// Worker threads; `None` uses the global pool, `Some(1)` is sequential.
    pub jobs: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            cap: 16,
            decide_cap: 24,
            jobs: None,
        }
    }
}

impl SolverConfig {
    /// Defaults, with the cap taken from `TWW_SOLVER_CAP` when set.
    pub fn from_env() -> Self {
        let mut cfg = SolverConfig::default();
        if let Some(cap) = std::env::var(CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
        {
            cfg.cap = cap.min(MAX_SEARCH_VERTICES);
            cfg.decide_cap = cfg.decide_cap.max(cfg.cap);
        }
        cfg
    }

    pub fn sequential(mut self) -> Self {
        self.jobs = Some(1);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub width: usize,
    pub sequence: ContractionSequence,
    pub optimal: bool,
}

impl SolveResult {
    /// Wraps a sequence, taking the width from a replay.
    pub fn from_sequence(sequence: ContractionSequence, optimal: bool) -> Result<Self> {
        let width = sequence.width()?;
        Ok(SolveResult {
            width,
            sequence,
            optimal,
        })
    }
}

#[derive(Serialize)]
struct StepJson {
    u: VertexId,
    v: VertexId,
    w: VertexId,
}

impl Serialize for SolveResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let steps: Vec<StepJson> = self
            .sequence
            .steps()
            .iter()
            .map(|st| StepJson {
                u: st.u,
                v: st.v,
                w: st.w,
            })
            .collect();
        let mut st = s.serialize_struct("SolveResult", 3)?;
        st.serialize_field("width", &self.width)?;
        st.serialize_field("optimal", &self.optimal)?;
        st.serialize_field("steps", &steps)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug)]
enum Goal {
    /// Optimal, searching `hint` first if given.
    Optimal { hint: Option<usize> },
    /// Optimal if the twin-width is at most the bound, else nothing.
    OptimalUpTo(usize),
    /// Any sequence of width at most the bound.
    AtMost(usize),
}

/// Optimal contraction sequence. `upper_hint` is a guess at the twin-width
/// that is tried first; a wrong guess costs time, not correctness.
pub fn optimal_sequence(g: &Trigraph, upper_hint: Option<usize>) -> Result<SolveResult> {
    optimal_sequence_with(g, upper_hint, &SolverConfig::from_env())
}

pub fn optimal_sequence_with(
    g: &Trigraph,
    upper_hint: Option<usize>,
    cfg: &SolverConfig,
) -> Result<SolveResult> {
    let seq =
        solve(g, cfg, Goal::Optimal { hint: upper_hint })?.expect("optimal search always succeeds");
    SolveResult::from_sequence(seq, true)
}

/// Optimal sequence if `tww(g) ≤ max_width`, otherwise `None`.
pub fn optimal_sequence_capped(
    g: &Trigraph,
    max_width: usize,
    cfg: &SolverConfig,
) -> Result<Option<SolveResult>> {
    solve(g, cfg, Goal::OptimalUpTo(max_width))?
        .map(|s| SolveResult::from_sequence(s, true))
        .transpose()
}

/// A sequence of width at most `c`, or `None` when `tww(g) > c`.
pub fn decide_width_at_most(g: &Trigraph, c: usize) -> Result<Option<ContractionSequence>> {
    decide_width_at_most_with(g, c, &SolverConfig::from_env())
}

pub fn decide_width_at_most_with(
    g: &Trigraph,
    c: usize,
    cfg: &SolverConfig,
) -> Result<Option<ContractionSequence>> {
    solve(g, cfg, Goal::AtMost(c))
}

fn solve(g: &Trigraph, cfg: &SolverConfig, goal: Goal) -> Result<Option<ContractionSequence>> {
    match cfg.jobs {
        Some(j) if j > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::InvalidParameters(e.to_string()))?;
            pool.install(|| solve_inner(g, cfg, goal, true))
        }
        Some(_) => solve_inner(g, cfg, goal, false),
        None => solve_inner(g, cfg, goal, true),
    }
}

fn solve_inner(
    g: &Trigraph,
    cfg: &SolverConfig,
    goal: Goal,
    parallel: bool,
) -> Result<Option<ContractionSequence>> {
    let mut k = Contractor::new(g.clone());
    let mut roots = Vec::new();
    for comp in g.connected_components() {
        let live = reduce_twins(&mut k, &comp);
        let sub = k.current().induced_subtrigraph(&live)?;
        let (dense, old) = sub.relabel_dense();
        let cap = match goal {
            Goal::AtMost(_) => cfg.decide_cap,
            _ => cfg.cap,
        }
        .min(MAX_SEARCH_VERTICES);
        if dense.vertex_count() > cap {
            return Err(Error::CapExceeded {
                size: dense.vertex_count(),
                cap,
            });
        }
        let Some(plan) = solve_component(&dense, goal, parallel) else {
            return Ok(None);
        };
        let mut ids: HashMap<u64, VertexId> = old
            .iter()
            .enumerate()
            .map(|(i, &v)| (1u64 << i, v))
            .collect();
        for (a, b) in plan {
            let w = k.contract(ids[&a], ids[&b])?;
            ids.insert(a | b, w);
        }
        let full = if old.len() == 64 {
            u64::MAX
        } else {
            (1u64 << old.len()) - 1
        };
        roots.push(ids[&full]);
    }
    let mut it = roots.into_iter();
    if let Some(mut r) = it.next() {
        for x in it {
            r = k.contract(r, x)?;
        }
    }
    Ok(Some(k.into_sequence()))
}

fn greedy_plan(dense: &Trigraph) -> (usize, Plan) {
    let seq = greedy_sequence(dense);
    let mut masks: HashMap<VertexId, u64> = dense.vertices().map(|v| (v, 1u64 << v.0)).collect();
    let mut plan = Vec::new();
    for s in seq.steps() {
        let (a, b) = (masks[&s.u], masks[&s.v]);
        plan.push((a, b));
        masks.insert(s.w, a | b);
    }
    (seq.width().expect("greedy sequence is valid"), plan)
}

fn solve_component(dense: &Trigraph, goal: Goal, parallel: bool) -> Option<Plan> {
    let inst = Instance::new(dense);
    debug_assert_eq!(inst.len(), dense.vertex_count());
    let (ub, greedy) = greedy_plan(dense);
    let mut lb = search::initial_red(&inst);
    match goal {
        Goal::AtMost(c) => {
            if ub <= c {
                Some(greedy)
            } else {
                search::decide(&inst, c, parallel)
            }
        }
        Goal::OptimalUpTo(c) => {
            for w in lb..ub.min(c + 1) {
                if let Some(p) = search::decide(&inst, w, parallel) {
                    return Some(p);
                }
            }
            (ub <= c).then_some(greedy)
        }
        Goal::Optimal { hint } => {
            let mut best = greedy;
            let mut ub = ub;
            if let Some(h) = hint.filter(|&h| h >= lb && h < ub) {
                match search::decide(&inst, h, parallel) {
                    Some(p) => {
                        best = p;
                        ub = h;
                    }
                    None => lb = h + 1,
                }
            }
            for w in lb..ub {
                if let Some(p) = search::decide(&inst, w, parallel) {
                    return Some(p);
                }
            }
            Some(best)
        }
    }
}

/// Size of the largest component once twins are removed; the solvers
/// compare this against their caps.
pub fn reduced_size(g: &Trigraph) -> usize {
    let mut k = Contractor::new(g.clone());
    g.connected_components()
        .iter()
        .map(|c| reduce_twins(&mut k, c).len())
        .max()
        .unwrap_or(0)
}
