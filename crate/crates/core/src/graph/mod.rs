//! Trigraphs: simple undirected graphs whose edges are coloured black or red.
//!
//! A plain graph is a trigraph without red edges. Vertices carry stable
//! [`VertexId`]s; contraction products receive fresh ids so that a vertex id
//! is never reused inside one contraction sequence.

pub(crate) mod io;
mod structure;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use io::{format_graph, format_trigraph, parse_graph};
pub use structure::{
    dangling_structures, feedback_edge_set, is_forest, DanglingPath, DanglingStructures,
    DanglingTree,
};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        VertexId(v)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    Red,
}

/// Incident edge counts of one vertex, by colour.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
pub struct DegreeReport {
    pub black: usize,
    pub red: usize,
    pub total: usize,
}

/// Unordered vertex pair stored as `(min, max)`.
pub type Edge = (VertexId, VertexId);

pub fn normalize(u: VertexId, v: VertexId) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Adjacency-map trigraph. Equality is structural: same vertex ids, same
/// coloured edges.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Trigraph {
    adj: BTreeMap<VertexId, BTreeMap<VertexId, Color>>,
    black_edges: usize,
    red_edges: usize,
}

impl Trigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Edgeless trigraph on `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for v in 0..n {
            g.adj.insert(VertexId(v), BTreeMap::new());
        }
        g
    }

    /// Plain graph on `0..n` with the given (black) edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v), Color::Black)?;
        }
        Ok(g)
    }

    /// Returns false if the vertex was already present.
    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeMap::new());
        true
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, color: Color) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        for x in [u, v] {
            if !self.adj.contains_key(&x) {
                return Err(Error::UnknownVertex(x));
            }
        }
        if self.adj[&u].contains_key(&v) {
            let (a, b) = normalize(u, v);
            return Err(Error::DuplicateEdge(a, b));
        }
        self.insert_edge_unchecked(u, v, color);
        Ok(())
    }

    fn insert_edge_unchecked(&mut self, u: VertexId, v: VertexId, color: Color) {
        self.adj.get_mut(&u).expect("live vertex").insert(v, color);
        self.adj.get_mut(&v).expect("live vertex").insert(u, color);
        match color {
            Color::Black => self.black_edges += 1,
            Color::Red => self.red_edges += 1,
        }
    }

    /// Sets the colour of an existing or new edge; `None` removes it.
    pub fn set_edge(&mut self, u: VertexId, v: VertexId, color: Option<Color>) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        for x in [u, v] {
            if !self.adj.contains_key(&x) {
                return Err(Error::UnknownVertex(x));
            }
        }
        if let Some(old) = self.adj.get_mut(&u).expect("checked").remove(&v) {
            self.adj.get_mut(&v).expect("checked").remove(&u);
            match old {
                Color::Black => self.black_edges -= 1,
                Color::Red => self.red_edges -= 1,
            }
        }
        if let Some(c) = color {
            self.insert_edge_unchecked(u, v, c);
        }
        Ok(())
    }

    pub fn remove_vertex(&mut self, v: VertexId) -> Result<()> {
        let nbrs = self.adj.remove(&v).ok_or(Error::UnknownVertex(v))?;
        for (x, c) in nbrs {
            self.adj.get_mut(&x).expect("symmetric").remove(&v);
            match c {
                Color::Black => self.black_edges -= 1,
                Color::Red => self.red_edges -= 1,
            }
        }
        Ok(())
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn black_edge_count(&self) -> usize {
        self.black_edges
    }

    pub fn red_edge_count(&self) -> usize {
        self.red_edges
    }

    pub fn edge_count(&self) -> usize {
        self.black_edges + self.red_edges
    }

    /// Vertices in increasing id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().copied().collect()
    }

    /// Neighbours of `v` in increasing id order; empty for unknown vertices.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, Color)> + '_ {
        self.adj
            .get(&v)
            .into_iter()
            .flat_map(|m| m.iter().map(|(&x, &c)| (x, c)))
    }

    pub fn edge(&self, u: VertexId, v: VertexId) -> Option<Color> {
        self.adj.get(&u).and_then(|m| m.get(&v)).copied()
    }

    pub fn degree(&self, v: VertexId) -> Result<DegreeReport> {
        let m = self.adj.get(&v).ok_or(Error::UnknownVertex(v))?;
        let red = m.values().filter(|&&c| c == Color::Red).count();
        Ok(DegreeReport {
            black: m.len() - red,
            red,
            total: m.len(),
        })
    }

    /// Total degree; 0 for unknown vertices.
    pub fn total_degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, |m| m.len())
    }

    /// Red degree; 0 for unknown vertices.
    pub fn red_degree(&self, v: VertexId) -> usize {
        self.adj
            .get(&v)
            .map_or(0, |m| m.values().filter(|&&c| c == Color::Red).count())
    }

    pub fn max_red_degree(&self) -> usize {
        self.adj
            .values()
            .map(|m| m.values().filter(|&&c| c == Color::Red).count())
            .max()
            .unwrap_or(0)
    }

    /// All edges as `(min, max, colour)`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId, Color)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (&u, m) in &self.adj {
            for (&v, &c) in m.range(u..) {
                if v != u {
                    out.push((u, v, c));
                }
            }
        }
        out
    }

    /// One past the largest vertex id; equals `n` for inputs on `0..n`.
    pub fn id_bound(&self) -> usize {
        self.adj.keys().next_back().map_or(0, |v| v.0 + 1)
    }

    /// Same trigraph with every edge black.
    pub fn all_black(&self) -> Trigraph {
        let mut g = self.clone();
        for m in g.adj.values_mut() {
            for c in m.values_mut() {
                *c = Color::Black;
            }
        }
        g.black_edges += g.red_edges;
        g.red_edges = 0;
        g
    }

    pub fn induced_subtrigraph(&self, s: &BTreeSet<VertexId>) -> Result<Trigraph> {
        let mut g = Trigraph::new();
        for &v in s {
            if !self.contains(v) {
                return Err(Error::UnknownVertex(v));
            }
            g.adj.insert(v, BTreeMap::new());
        }
        for &v in s {
            for (x, c) in self.neighbors(v) {
                if x > v && s.contains(&x) {
                    g.insert_edge_unchecked(v, x, c);
                }
            }
        }
        Ok(g)
    }

    /// Connected components (edge colours ignored), each sorted, listed by
    /// their smallest vertex.
    pub fn connected_components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for s in self.vertices() {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([s]);
            seen.insert(s);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for (x, _) in self.neighbors(v) {
                    if seen.insert(x) {
                        queue.push_back(x);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Copy relabelled onto `0..n` in id order, plus the old id of each new id.
    pub fn relabel_dense(&self) -> (Trigraph, Vec<VertexId>) {
        let old: Vec<VertexId> = self.vertices().collect();
        let index: BTreeMap<VertexId, usize> =
            old.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = Trigraph::with_vertices(old.len());
        for (u, v, c) in self.edges() {
            g.insert_edge_unchecked(VertexId(index[&u]), VertexId(index[&v]), c);
        }
        (g, old)
    }

    /// Applies a vertex renaming; `map` must be injective on the vertex set.
    pub fn relabel(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<Trigraph> {
        let mut g = Trigraph::new();
        for v in self.vertices() {
            let nv = *map.get(&v).ok_or(Error::UnknownVertex(v))?;
            if !g.add_vertex(nv) {
                return Err(Error::IdInUse(nv));
            }
        }
        for (u, v, c) in self.edges() {
            g.insert_edge_unchecked(map[&u], map[&v], c);
        }
        Ok(g)
    }

    /// Contracts `u` and `v` into the fresh vertex `w`.
    ///
    /// `w` is black-adjacent to `x` iff both `xu` and `xv` are black edges,
    /// red-adjacent to `x` iff `x` sees at least one of them otherwise.
    pub fn contract_in_place(&mut self, u: VertexId, v: VertexId, w: VertexId) -> Result<()> {
        if u == v {
            return Err(Error::SameVertex(u));
        }
        for x in [u, v] {
            if !self.contains(x) {
                return Err(Error::UnknownVertex(x));
            }
        }
        if self.contains(w) {
            return Err(Error::IdInUse(w));
        }
        let nu = self.adj[&u].clone();
        let nv = self.adj[&v].clone();
        let mut merged: BTreeMap<VertexId, Color> = BTreeMap::new();
        for (&x, &cu) in &nu {
            if x == v {
                continue;
            }
            let c = match (cu, nv.get(&x)) {
                (Color::Black, Some(Color::Black)) => Color::Black,
                _ => Color::Red,
            };
            merged.insert(x, c);
        }
        for &x in nv.keys() {
            if x != u && !merged.contains_key(&x) {
                merged.insert(x, Color::Red);
            }
        }
        self.remove_vertex(u)?;
        self.remove_vertex(v)?;
        self.adj.insert(w, BTreeMap::new());
        for (x, c) in merged {
            self.insert_edge_unchecked(w, x, c);
        }
        Ok(())
    }

    pub fn contract(&self, u: VertexId, v: VertexId, w: VertexId) -> Result<Trigraph> {
        let mut g = self.clone();
        g.contract_in_place(u, v, w)?;
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{figure1, A, B, C, D, E, F};

    fn vs(ids: &[usize]) -> BTreeSet<VertexId> {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    #[test]
    fn degree_examples() {
        let g = figure1();
        let d = g.degree(C).unwrap();
        assert_eq!(d.total, 4);
        let nbrs: Vec<_> = g.neighbors(C).map(|(x, _)| x).collect();
        assert_eq!(nbrs, vec![A, B, E, F]);

        let iso = Trigraph::with_vertices(1);
        assert_eq!(iso.degree(VertexId(0)).unwrap(), DegreeReport::default());

        let c5 = crate::generate::cycle(5).unwrap();
        for v in c5.vertices() {
            let d = c5.degree(v).unwrap();
            assert_eq!((d.black, d.red, d.total), (2, 0, 2));
        }
        assert!(matches!(
            c5.degree(VertexId(9)),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn induced_examples() {
        let g = figure1();
        let tri = g
            .induced_subtrigraph(&[A, B, C].into_iter().collect())
            .unwrap();
        assert_eq!(tri.edge_count(), 3);
        assert_eq!(tri.edge(A, B), Some(Color::Black));
        assert_eq!(tri.edge(B, C), Some(Color::Black));
        assert_eq!(tri.edge(A, C), Some(Color::Black));
        assert!(g.induced_subtrigraph(&BTreeSet::new()).unwrap().is_empty());
        assert_eq!(g.induced_subtrigraph(&g.vertex_set()).unwrap(), g);
        assert!(g.induced_subtrigraph(&vs(&[0, 42])).is_err());
    }

    #[test]
    fn components_examples() {
        let mut g = Trigraph::with_vertices(5);
        for (u, v) in [(0, 1), (1, 2), (0, 2), (3, 4)] {
            g.add_edge(VertexId(u), VertexId(v), Color::Black).unwrap();
        }
        let sizes: Vec<_> = g.connected_components().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![3, 2]);
        assert_eq!(Trigraph::with_vertices(4).connected_components().len(), 4);
        let f = figure1();
        assert_eq!(f.connected_components(), vec![f.vertex_set()]);
    }

    #[test]
    fn contraction_figure1_first_step() {
        let g = figure1();
        let w = VertexId(6);
        let h = g.contract(E, F, w).unwrap();
        assert_eq!(h.edge(w, D), Some(Color::Red));
        assert_eq!(h.edge(w, C), Some(Color::Black));
        assert_eq!(h.vertex_count(), 5);
        assert_eq!(h.red_edge_count(), 1);
        let _ = (A, B);
    }

    #[test]
    fn contracting_twins_creates_no_red() {
        // K_4: every pair is a pair of true twins.
        let k4 = crate::generate::complete(4);
        let h = k4.contract(VertexId(0), VertexId(1), VertexId(4)).unwrap();
        assert_eq!(h.red_edge_count(), 0);
        // K_{2,3}: the two centres are false twins.
        let g = Trigraph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let h = g.contract(VertexId(0), VertexId(1), VertexId(5)).unwrap();
        assert_eq!(h.red_edge_count(), 0);
        assert_eq!(h.black_edge_count(), 3);
    }

    #[test]
    fn contract_k2_and_errors() {
        let k2 = Trigraph::from_edges(2, &[(0, 1)]).unwrap();
        let h = k2.contract(VertexId(0), VertexId(1), VertexId(2)).unwrap();
        assert_eq!(h.vertex_count(), 1);
        assert_eq!(h.edge_count(), 0);
        assert_eq!(
            k2.contract(VertexId(0), VertexId(0), VertexId(2)),
            Err(Error::SameVertex(VertexId(0)))
        );
        assert_eq!(
            k2.contract(VertexId(0), VertexId(5), VertexId(2)),
            Err(Error::UnknownVertex(VertexId(5)))
        );
        assert_eq!(
            k2.contract(VertexId(0), VertexId(1), VertexId(1)),
            Err(Error::IdInUse(VertexId(1)))
        );
    }

    #[test]
    fn red_edges_propagate() {
        let mut g = Trigraph::with_vertices(3);
        g.add_edge(VertexId(0), VertexId(2), Color::Red).unwrap();
        g.add_edge(VertexId(1), VertexId(2), Color::Black).unwrap();
        let h = g.contract(VertexId(0), VertexId(1), VertexId(3)).unwrap();
        assert_eq!(h.edge(VertexId(3), VertexId(2)), Some(Color::Red));
    }

    #[test]
    fn edge_bookkeeping() {
        let mut g = Trigraph::with_vertices(3);
        g.add_edge(VertexId(0), VertexId(1), Color::Black).unwrap();
        assert!(matches!(
            g.add_edge(VertexId(1), VertexId(0), Color::Red),
            Err(Error::DuplicateEdge(..))
        ));
        assert!(matches!(
            g.add_edge(VertexId(1), VertexId(1), Color::Red),
            Err(Error::SelfLoop(_))
        ));
        g.set_edge(VertexId(0), VertexId(1), Some(Color::Red))
            .unwrap();
        assert_eq!((g.black_edge_count(), g.red_edge_count()), (0, 1));
        g.set_edge(VertexId(0), VertexId(1), None).unwrap();
        assert_eq!(g.edge_count(), 0);
        g.add_edge(VertexId(2), VertexId(1), Color::Red).unwrap();
        assert_eq!(g.all_black().red_edge_count(), 0);
        assert_eq!(g.all_black().black_edge_count(), 1);
        assert_eq!(g.id_bound(), 3);
    }
}
