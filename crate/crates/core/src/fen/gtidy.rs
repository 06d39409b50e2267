//! Contracting a tidy (H, P)-graph whose paths are long, given a sequence
//! for `H`: first mirror the `H`-sequence while folding path ends into
//! trees, then zip the remaining paths into the single tree that is left.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use log::debug;

use super::tidy::{path_distances, TidyHPGraph};
use crate::contraction::{ContractionSequence, Contractor};
use crate::error::{Error, Result};
use crate::exact::tree_sequence;
use crate::graph::{Trigraph, VertexId};

/// A trigraph reached from a tidy graph by contractions that only merge
/// `H`-vertices with each other or path-end vertices of equal level.
#[derive(Clone, Debug)]
pub struct GTidyState {
    contractor: Contractor,
    h: BTreeSet<VertexId>,
    /// Distance from `H` of each original vertex in `F`.
    f: BTreeMap<VertexId, usize>,
    m: usize,
    /// Live vertices of `H'`.
    h_live: BTreeSet<VertexId>,
    /// Live vertices of `F'` with their levels.
    f_live: BTreeMap<VertexId, usize>,
}

impl GTidyState {
    /// Starts from the tidy graph itself. Every path needs at least `8m`
    /// vertices.
    pub fn new(t: &TidyHPGraph) -> Result<Self> {
        let m = t.m();
        if m == 0 {
            return Err(Error::Precondition("no paths".into()));
        }
        if let Some(p) = t.paths.iter().find(|p| p.len() < 8 * m) {
            return Err(Error::Precondition(format!(
                "path of {} vertices is shorter than 8m = {}",
                p.len(),
                8 * m
            )));
        }
        let f: BTreeMap<VertexId, usize> = path_distances(t)
            .into_iter()
            .filter(|&(_, d)| d <= 2 * m)
            .collect();
        Ok(GTidyState {
            contractor: Contractor::new(t.g.clone()),
            h: t.h_vertices.clone(),
            h_live: t.h_vertices.clone(),
            f_live: f.clone(),
            f,
            m,
        })
    }

    pub fn current(&self) -> &Trigraph {
        self.contractor.current()
    }

    /// Number of paths of the tidy graph.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn h_live(&self) -> &BTreeSet<VertexId> {
        &self.h_live
    }

    pub fn level(&self, v: VertexId) -> Option<usize> {
        self.f_live.get(&v).copied()
    }

    pub fn sequence(&self) -> ContractionSequence {
        self.contractor.sequence()
    }

    pub fn width(&self) -> usize {
        self.contractor.width()
    }

    fn contract(&mut self, u: VertexId, v: VertexId) -> Result<VertexId> {
        let w = self.contractor.contract(u, v)?;
        if self.h_live.remove(&u) & self.h_live.remove(&v) {
            self.h_live.insert(w);
        }
        match (self.f_live.remove(&u), self.f_live.remove(&v)) {
            (Some(a), Some(b)) if a == b => {
                self.f_live.insert(w, a);
            }
            _ => {}
        }
        Ok(w)
    }

    fn outside_neighbors(&self, u: VertexId) -> Vec<VertexId> {
        self.current()
            .neighbors(u)
            .map(|(x, _)| x)
            .filter(|x| !self.h_live.contains(x))
            .collect()
    }

    fn children(&self, x: VertexId) -> Vec<VertexId> {
        let l = self.f_live[&x];
        self.current()
            .neighbors(x)
            .map(|(y, _)| y)
            .filter(|y| self.f_live.get(y) == Some(&(l + 1)))
            .collect()
    }

    /// Splits degree-3 vertices off the tree rooted at `r` until the root
    /// has degree at most 2.
    fn flatten(&mut self, r: VertexId) -> Result<()> {
        while self.current().total_degree(r) == 3 {
            let mut best = (0, r);
            let mut queue = VecDeque::from([r]);
            while let Some(x) = queue.pop_front() {
                let l = self.f_live[&x];
                if l > best.0 || (l == best.0 && x < best.1) {
                    best = (l, x);
                }
                for c in self.children(x) {
                    if self.current().total_degree(c) == 3 {
                        queue.push_back(c);
                    }
                }
            }
            let w = best.1;
            let kids = self.children(w);
            let [x, y] = kids[..] else {
                return Err(Error::Invariant(format!(
                    "degree-3 vertex {w} has {} children",
                    kids.len()
                )));
            };
            self.contract(x, y)?;
        }
        Ok(())
    }

    /// Checks the four structural conditions from the bags alone.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Invariant(format!("G-tidy: {msg}")));
        let g = self.current();
        let mut h_prime = BTreeSet::new();
        let mut f_prime = BTreeMap::new();
        for (&v, bag) in self.contractor.bags() {
            if bag.iter().all(|x| self.h.contains(x)) {
                h_prime.insert(v);
            } else if bag.iter().all(|x| self.f.contains_key(x)) {
                let levels: BTreeSet<usize> = bag.iter().map(|x| self.f[x]).collect();
                if levels.len() != 1 {
                    return bad(format!("{v} merges levels {levels:?}"));
                }
                f_prime.insert(v, *levels.iter().next().unwrap());
            } else if bag.len() != 1 {
                return bad(format!("{v} merges vertices outside H and F"));
            }
        }
        for &u in &h_prime {
            let outs = g.neighbors(u).filter(|(x, _)| !h_prime.contains(x)).count();
            if outs > 1 {
                return bad(format!("{u} has {outs} neighbours outside H'"));
            }
        }
        let f_set: BTreeSet<VertexId> = f_prime.keys().copied().collect();
        let forest = g.induced_subtrigraph(&f_set)?;
        if forest.edge_count() + forest.connected_components().len() != forest.vertex_count() {
            return bad("F' is not a forest".into());
        }
        for &v in &f_set {
            if g.total_degree(v) > 3 {
                return bad(format!("{v} has degree {}", g.total_degree(v)));
            }
        }
        for comp in forest.connected_components() {
            let roots: Vec<VertexId> = comp.iter().copied().filter(|v| f_prime[v] == 1).collect();
            let [r] = roots[..] else {
                return bad(format!("tree with {} roots", roots.len()));
            };
            let t_prime: BTreeSet<VertexId> = comp
                .iter()
                .copied()
                .filter(|&v| g.total_degree(v) == 3)
                .collect();
            if t_prime.is_empty() {
                continue;
            }
            if !t_prime.contains(&r) {
                return bad(format!(
                    "degree-3 vertices of the tree at {r} miss the root"
                ));
            }
            if !forest.induced_subtrigraph(&t_prime)?.is_connected() {
                return bad(format!(
                    "degree-3 vertices of the tree at {r} are disconnected"
                ));
            }
            let limit = self.contractor.bag(r).unwrap().len() - 1;
            if t_prime.iter().any(|v| f_prime[v] > limit) {
                return bad(format!("degree-3 vertex deeper than {limit} below {r}"));
            }
        }
        if h_prime != self.h_live || f_prime != self.f_live {
            return bad("bookkeeping disagrees with the bags".into());
        }
        Ok(())
    }
}

/// Output of the `H`-mirroring phase.
#[derive(Clone, Debug)]
pub struct GivenChResult {
    pub state: GTidyState,
    pub h_width: usize,
    pub validations: usize,
}

/// Mirrors `c_h` (a sequence of `t.h()`) on the whole tidy graph, keeping
/// every intermediate `H`-step G-tidy. Ends with `H'` a single vertex.
pub fn contract_given_ch(t: &TidyHPGraph, c_h: &ContractionSequence) -> Result<GivenChResult> {
    if c_h.initial() != &t.h() {
        return Err(Error::Precondition("sequence is not on H".into()));
    }
    if !c_h.is_complete() {
        return Err(Error::Precondition("sequence of H is not complete".into()));
    }
    let h_width = c_h.width()?;
    let mut s = GTidyState::new(t)?;
    s.validate()?;
    let mut validations = 1;
    let mut ids: BTreeMap<VertexId, VertexId> = t.h_vertices.iter().map(|&v| (v, v)).collect();
    for step in c_h.steps() {
        let (u, v) = (ids[&step.u], ids[&step.v]);
        let (ou, ov) = (s.outside_neighbors(u), s.outside_neighbors(v));
        if !ou.is_empty() && !ov.is_empty() {
            let (ru, rv) = (ou[0], ov[0]);
            s.flatten(ru)?;
            s.flatten(rv)?;
            s.contract(ru, rv)?;
        }
        let w = s.contract(u, v)?;
        ids.insert(step.w, w);
        s.validate()?;
        validations += 1;
    }
    let bound = (h_width + 1).max(4);
    if s.width() > bound {
        return Err(Error::BoundViolated(format!(
            "H-phase width {} above {bound}",
            s.width()
        )));
    }
    debug!(
        "H-phase: {} steps, width {}",
        s.contractor.step_count(),
        s.width()
    );
    Ok(GivenChResult {
        state: s,
        h_width,
        validations,
    })
}

fn t_path(
    g: &Trigraph,
    t: &BTreeSet<VertexId>,
    from: VertexId,
    to: VertexId,
) -> Result<Vec<VertexId>> {
    let mut prev = BTreeMap::from([(from, from)]);
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for (y, _) in g.neighbors(x) {
            if t.contains(&y) && !prev.contains_key(&y) {
                prev.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    if !prev.contains_key(&to) {
        return Err(Error::Invariant(format!(
            "no tree path from {from} to {to}"
        )));
    }
    let mut path = vec![to];
    while *path.last().unwrap() != from {
        path.push(prev[path.last().unwrap()]);
    }
    path.reverse();
    Ok(path)
}

/// Finishes a G-tidy state with a single `H`-vertex: the returned sequence
/// is the whole contraction sequence of the tidy graph. The part after the
/// state has width at most 4.
pub fn contract_gtidy_tail(state: GTidyState) -> Result<ContractionSequence> {
    state.validate()?;
    let mut s = state;
    let start = s.contractor.step_count();
    let [u] = s.h_live.iter().copied().collect::<Vec<_>>()[..] else {
        return Err(Error::Precondition(format!(
            "H' has {} vertices",
            s.h_live.len()
        )));
    };
    let outs = s.outside_neighbors(u);
    let [r] = outs[..] else {
        return Err(Error::Precondition(format!(
            "H' vertex has {} outside neighbours",
            outs.len()
        )));
    };
    let mut tree: BTreeSet<VertexId> = s
        .f_live
        .keys()
        .copied()
        .filter(|&v| v != r && s.current().total_degree(v) == 3)
        .collect();
    let r = s.contract(u, r)?;
    tree.insert(r);
    loop {
        let g = s.current();
        let rest: BTreeSet<VertexId> = g.vertices().filter(|v| !tree.contains(v)).collect();
        if rest.is_empty() {
            break;
        }
        let sub = g.induced_subtrigraph(&rest)?;
        let comp = sub
            .connected_components()
            .into_iter()
            .min_by_key(|c| {
                c.iter()
                    .copied()
                    .filter(|&v| sub.total_degree(v) < 2)
                    .min()
                    .unwrap_or(VertexId(usize::MAX))
            })
            .unwrap();
        let ends: Vec<VertexId> = comp
            .iter()
            .copied()
            .filter(|&v| sub.total_degree(v) < 2)
            .collect();
        let (a, b) = match ends[..] {
            [a] => (a, a),
            [a, b] => (a, b),
            _ => {
                return Err(Error::Invariant(
                    "component outside the tree is not a path".into(),
                ))
            }
        };
        let mut path = vec![a];
        let mut prev = a;
        while *path.last().unwrap() != b {
            let x = *path.last().unwrap();
            let next = sub
                .neighbors(x)
                .map(|(y, _)| y)
                .find(|&y| y != prev)
                .unwrap();
            prev = x;
            path.push(next);
        }
        let attach: Vec<VertexId> = g
            .neighbors(a)
            .map(|(y, _)| y)
            .filter(|y| tree.contains(y))
            .collect();
        let (v, v2) = if a == b {
            match attach[..] {
                [x, y] => (x, y),
                [x] => (x, x),
                _ => {
                    return Err(Error::Invariant(format!(
                        "{a} has {} tree neighbours",
                        attach.len()
                    )))
                }
            }
        } else {
            let at_b: Vec<VertexId> = g
                .neighbors(b)
                .map(|(y, _)| y)
                .filter(|y| tree.contains(y))
                .collect();
            match (&attach[..], &at_b[..]) {
                ([x], [y]) => (*x, *y),
                _ => {
                    return Err(Error::Invariant(
                        "path end without a unique tree neighbour".into(),
                    ))
                }
            }
        };
        let q = t_path(g, &tree, v, v2)?;
        if path.len() < q.len() {
            return Err(Error::Invariant(format!(
                "path of {} vertices is shorter than its tree path of {}",
                path.len(),
                q.len()
            )));
        }
        while path.len() > q.len() {
            let y = path.pop().unwrap();
            let x = path.pop().unwrap();
            path.push(s.contract(x, y)?);
        }
        for (&pi, &qi) in path.iter().zip(&q) {
            let w = s.contract(pi, qi)?;
            tree.remove(&qi);
            tree.insert(w);
        }
    }
    let root = *tree.iter().next().unwrap();
    let rest = tree_sequence(s.current(), root)?;
    let mut ids = s.current().vertices().map(|v| (v, v)).collect();
    s.contractor.apply_mapped(&rest, &mut ids)?;
    let tail = s.contractor.width_since(start);
    if tail > 4 {
        return Err(Error::BoundViolated(format!(
            "path phase width {tail} above 4"
        )));
    }
    Ok(s.contractor.into_sequence())
}

/// Contraction sequence of a tidy graph with paths of at least `8m`
/// vertices, of width at most `max(w(c_h) + 1, 4)`.
pub fn mirrored_sequence(
    t: &TidyHPGraph,
    c_h: &ContractionSequence,
) -> Result<ContractionSequence> {
    let phase = contract_given_ch(t, c_h)?;
    let bound = (phase.h_width + 1).max(4);
    let seq = contract_gtidy_tail(phase.state)?;
    let w = seq.width()?;
    if w > bound || !seq.is_complete() {
        return Err(Error::BoundViolated(format!(
            "sequence of width {w} above {bound}"
        )));
    }
    Ok(seq)
}
