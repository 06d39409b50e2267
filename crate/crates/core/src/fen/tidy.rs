//! Tidy (H, P)-graphs: a core `H` plus dangling red paths whose attachment
//! vertices in `H` have no black edges.

use std::collections::{BTreeMap, BTreeSet};

use log::{info, warn};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::dangling::{core_of, spikes_in};
use super::FenConfig;
use crate::contraction::{concatenate, ContractionSequence, Contractor};
use crate::error::{Error, Result};
use crate::exact::{decide_width_at_most_with, optimal_sequence_capped, reduced_size, SolveResult};
use crate::generate;
use crate::graph::{dangling_structures, feedback_edge_set, Color, Trigraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TidyHPGraph {
    pub g: Trigraph,
    pub h_vertices: BTreeSet<VertexId>,
    /// Each path in order along its edges.
    pub paths: Vec<Vec<VertexId>>,
}

impl TidyHPGraph {
    pub fn m(&self) -> usize {
        self.paths.len()
    }

    pub fn h(&self) -> Trigraph {
        self.g
            .induced_subtrigraph(&self.h_vertices)
            .expect("H is a vertex subset")
    }

    pub fn path_vertices(&self) -> BTreeSet<VertexId> {
        self.paths.iter().flatten().copied().collect()
    }

    /// Checks every condition of a tidy (H, P)-graph except the twin-width
    /// lower bound, which is the caller's obligation.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Invariant(format!("tidy (H,P)-graph: {msg}")));
        if !self.g.is_connected() {
            return bad("graph is not connected".into());
        }
        if self.paths.is_empty() {
            return bad("no paths".into());
        }
        let pv = self.path_vertices();
        let total: usize = self.paths.iter().map(|p| p.len()).sum();
        if self.paths.iter().any(|p| p.is_empty()) || pv.len() != total {
            return bad("paths must be non-empty and disjoint".into());
        }
        if pv.iter().any(|v| self.h_vertices.contains(v)) {
            return bad("paths meet H".into());
        }
        if pv.len() + self.h_vertices.len() != self.g.vertex_count()
            || pv
                .iter()
                .chain(&self.h_vertices)
                .any(|&v| !self.g.contains(v))
        {
            return bad("H and the paths do not partition the vertices".into());
        }
        for p in &self.paths {
            for w in p.windows(2) {
                if self.g.edge(w[0], w[1]) != Some(Color::Red) {
                    return bad(format!("{}-{} is not a red path edge", w[0], w[1]));
                }
            }
            let inside: BTreeSet<VertexId> = p.iter().copied().collect();
            for &v in p {
                if self.g.total_degree(v) != 2 {
                    return bad(format!(
                        "path vertex {v} has degree {}",
                        self.g.total_degree(v)
                    ));
                }
                for (x, c) in self.g.neighbors(v) {
                    if c != Color::Red {
                        return bad(format!("edge {v}-{x} at a path vertex is black"));
                    }
                    if !inside.contains(&x) && !self.h_vertices.contains(&x) {
                        return bad(format!("path vertex {v} touches another path"));
                    }
                }
            }
        }
        for &u in &self.h_vertices {
            let into_paths = self.g.neighbors(u).filter(|(x, _)| pv.contains(x)).count();
            if into_paths == 0 {
                continue;
            }
            if into_paths > 1 {
                return bad(format!("H vertex {u} has {into_paths} path neighbours"));
            }
            if self.g.degree(u)?.black > 0 {
                return bad(format!("attachment vertex {u} has a black edge"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TidyStats {
    pub k: usize,
    pub h_vertices: usize,
    pub paths: usize,
    pub h_target: usize,
    pub p_target: usize,
}

/// A tidy graph together with the partial sequence that produced it.
#[derive(Clone, Debug)]
pub struct TidyPreprocessed {
    pub tidy: TidyHPGraph,
    /// Partial sequence from the input graph to `tidy.g`.
    pub prefix: ContractionSequence,
    pub stats: TidyStats,
}

impl TidyPreprocessed {
    /// Turns a sequence of `tidy.g` into a sequence of the input graph.
    pub fn lift(&self, c: &ContractionSequence) -> Result<ContractionSequence> {
        let map = c.initial().vertices().map(|v| (v, v)).collect();
        concatenate(&self.prefix, c, &map)
    }
}

#[derive(Clone, Debug)]
pub enum TidyOutcome {
    /// The graph has twin-width at most 2.
    Solved(SolveResult),
    Tidy(TidyPreprocessed),
}

/// Width-≤2 check standing in for the dedicated twin-width-2 algorithm.
///
/// When the twin-free graph fits the exact solver, the answer is optimal.
/// Otherwise the graph is not a cograph (so its twin-width is at least 1)
/// and any width-2 sequence found after the dangling-tree phase is within
/// one of optimal.
pub fn small_width_branch(g: &Trigraph, cfg: &FenConfig) -> Result<Option<SolveResult>> {
    if reduced_size(g) <= cfg.solver.cap {
        return optimal_sequence_capped(g, 2, &cfg.solver);
    }
    let mut k = Contractor::new(g.clone());
    spikes_in(&mut k)?;
    let alpha = k.current().clone();
    match decide_width_at_most_with(&alpha, 2, &cfg.solver) {
        Ok(Some(rest)) => {
            let map = alpha.vertices().map(|v| (v, v)).collect();
            let full = concatenate(&k.into_sequence(), &rest, &map)?;
            Ok(Some(SolveResult::from_sequence(full, false)?))
        }
        Ok(None) => Ok(None),
        Err(Error::CapExceeded { size, cap }) => {
            warn!("width-2 check skipped: {size} vertices after reduction exceed the cap {cap}");
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Maximal paths of core vertices with core degree 2, lowest endpoint
/// first. A core that is a single cycle yields the cycle minus its lowest
/// vertex.
fn core_paths(core: &Trigraph) -> Vec<Vec<VertexId>> {
    if core.vertices().all(|v| core.total_degree(v) == 2) {
        let Some(x) = core.vertices().next() else {
            return Vec::new();
        };
        let (a, b) = {
            let mut n = core.neighbors(x).map(|(y, _)| y);
            (n.next().expect("cycle"), n.next().expect("cycle"))
        };
        let mut order = vec![a];
        let (mut prev, mut cur) = (x, a);
        while cur != b {
            let next = core
                .neighbors(cur)
                .map(|(y, _)| y)
                .find(|&y| y != prev)
                .expect("cycle");
            order.push(next);
            prev = cur;
            cur = next;
        }
        return vec![order];
    }
    let mut paths: Vec<Vec<VertexId>> = dangling_structures(core)
        .paths
        .into_iter()
        .map(|p| p.vertices)
        .collect();
    for p in &mut paths {
        if p.len() > 1 && p[p.len() - 1] < p[0] {
            p.reverse();
        }
    }
    paths.sort_by_key(|p| p[0].min(p[p.len() - 1]));
    paths
}

/// Builds the tidy graph without the width-2 check.
pub fn tidy_construct(g: &Trigraph, cfg: &FenConfig) -> Result<TidyPreprocessed> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let k = feedback_edge_set(g).len();
    let mut c = Contractor::new(g.clone());
    let mut spikes = spikes_in(&mut c)?;
    let core_set = core_of(c.current(), &spikes);
    let core = c.current().induced_subtrigraph(&core_set)?;
    let mut paths = Vec::new();
    for a in core_paths(&core) {
        let l = a.len();
        if l < 8 {
            continue;
        }
        let mut a = a;
        for x in &mut a[1..l - 1] {
            if let Some(s) = spikes.remove(x) {
                *x = c.contract(*x, s)?;
            }
        }
        if let Some(s) = spikes.remove(&a[0]) {
            a[1] = c.contract(s, a[1])?;
        }
        if let Some(s) = spikes.remove(&a[l - 1]) {
            a[l - 2] = c.contract(s, a[l - 2])?;
        }
        let b = &a[1..l - 1];
        let mut chain = Vec::new();
        for pair in b.chunks(2) {
            match pair {
                [x, y] => chain.push(c.contract(*x, *y)?),
                [x] => {
                    let last = chain.pop().expect("at least three pairs");
                    chain.push(c.contract(last, *x)?);
                }
                _ => unreachable!(),
            }
        }
        paths.push(chain[1..chain.len() - 1].to_vec());
    }
    if c.width() > 2.max(g.max_red_degree()) {
        return Err(Error::BoundViolated(format!(
            "tidy preprocessing reached width {}",
            c.width()
        )));
    }
    let g1 = c.current().clone();
    let pv: BTreeSet<VertexId> = paths.iter().flatten().copied().collect();
    let h_vertices: BTreeSet<VertexId> = g1.vertices().filter(|v| !pv.contains(v)).collect();
    let stats = TidyStats {
        k,
        h_vertices: h_vertices.len(),
        paths: paths.len(),
        h_target: cfg.h_factor * k,
        p_target: cfg.p_factor * k,
    };
    if stats.h_vertices > stats.h_target {
        warn!(
            "|V(H)| = {} above the target {}",
            stats.h_vertices, stats.h_target
        );
    }
    if stats.paths > stats.p_target {
        warn!("|P| = {} above the target {}", stats.paths, stats.p_target);
    }
    let tidy = TidyHPGraph {
        g: g1,
        h_vertices,
        paths,
    };
    if tidy.paths.is_empty() {
        info!("no path long enough to become a dangling red path");
    } else {
        tidy.validate()?;
    }
    Ok(TidyPreprocessed {
        tidy,
        prefix: c.into_sequence(),
        stats,
    })
}

/// Runs the width-2 check (unless disabled in `cfg`) and otherwise builds a
/// tidy (H, P)-graph reachable from `g` by a partial sequence of width ≤ 2.
pub fn tidy_preprocess(g: &Trigraph, cfg: &FenConfig) -> Result<TidyOutcome> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if !cfg.force_kernel {
        if let Some(r) = small_width_branch(g, cfg)? {
            return Ok(TidyOutcome::Solved(r));
        }
    }
    Ok(TidyOutcome::Tidy(tidy_construct(g, cfg)?))
}

/// A random tidy (H, P)-graph: a connected core on `core` vertices, `2m`
/// port vertices each tied to the core by one red edge, and `m` red paths
/// of `8m + extra'` vertices (`extra' ≤ extra`) between pairs of ports.
pub fn synthetic_tidy(core: usize, m: usize, extra: usize, seed: u64) -> Result<TidyHPGraph> {
    if core == 0 || m == 0 {
        return Err(Error::InvalidParameters(
            "core and m must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(0..=2).min(core * (core - 1) / 2 - (core - 1));
    let base = generate::tree_plus_k(core, k, seed)?;
    let mut g = base.clone();
    let mut next = core;
    let mut fresh = |g: &mut Trigraph| {
        let v = VertexId(next);
        next += 1;
        g.add_vertex(v);
        v
    };
    let mut ports = Vec::new();
    for _ in 0..2 * m {
        let p = fresh(&mut g);
        let anchor = VertexId(rng.gen_range(0..core));
        g.add_edge(p, anchor, Color::Red)?;
        ports.push(p);
    }
    let mut paths = Vec::new();
    for i in 0..m {
        let len = 8 * m + rng.gen_range(0..=extra);
        let p: Vec<VertexId> = (0..len).map(|_| fresh(&mut g)).collect();
        for w in p.windows(2) {
            g.add_edge(w[0], w[1], Color::Red)?;
        }
        g.add_edge(ports[2 * i], p[0], Color::Red)?;
        g.add_edge(p[len - 1], ports[2 * i + 1], Color::Red)?;
        paths.push(p);
    }
    let h_vertices = (0..core + 2 * m).map(VertexId).collect();
    let t = TidyHPGraph {
        g,
        h_vertices,
        paths,
    };
    t.validate()?;
    Ok(t)
}

/// Distance from `H` of every path vertex, for paths attached at both ends.
pub(crate) fn path_distances(t: &TidyHPGraph) -> BTreeMap<VertexId, usize> {
    let mut d = BTreeMap::new();
    for p in &t.paths {
        let l = p.len();
        for (i, &v) in p.iter().enumerate() {
            d.insert(v, (i + 1).min(l - i));
        }
    }
    d
}
