//! Spanning-forest primitives: feedback edge sets, dangling trees and paths.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{normalize, Edge, Trigraph, VertexId};

/// Complement of a BFS spanning forest. Its size is the feedback edge number
/// `|E| + |R| - n + #components`.
pub fn feedback_edge_set(g: &Trigraph) -> BTreeSet<Edge> {
    let mut tree = BTreeSet::new();
    let mut seen = BTreeSet::new();
    for s in g.vertices() {
        if !seen.insert(s) {
            continue;
        }
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for (x, _) in g.neighbors(v) {
                if seen.insert(x) {
                    tree.insert(normalize(v, x));
                    queue.push_back(x);
                }
            }
        }
    }
    g.edges()
        .into_iter()
        .map(|(u, v, _)| (u, v))
        .filter(|e| !tree.contains(e))
        .collect()
}

pub fn is_forest(g: &Trigraph) -> bool {
    g.edge_count() + g.connected_components().len() == g.vertex_count()
}

/// A maximal subtree cut off by the single edge `attachment - root`. A
/// component that is itself a tree is reported with no attachment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DanglingTree {
    pub root: VertexId,
    pub attachment: Option<VertexId>,
    pub vertices: BTreeSet<VertexId>,
}

/// A maximal path of degree-2 vertices outside every dangling tree.
/// `attachments.0` is the outside neighbour of `vertices[0]`, `attachments.1`
/// that of the last vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DanglingPath {
    pub vertices: Vec<VertexId>,
    pub attachments: (VertexId, VertexId),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DanglingStructures {
    pub trees: Vec<DanglingTree>,
    pub paths: Vec<DanglingPath>,
}

/// Vertices that survive repeated removal of degree-≤1 vertices.
pub(crate) fn two_core(g: &Trigraph) -> BTreeSet<VertexId> {
    let mut deg: BTreeMap<VertexId, usize> = g.vertices().map(|v| (v, g.total_degree(v))).collect();
    let mut removed = BTreeSet::new();
    let mut queue: VecDeque<VertexId> = deg
        .iter()
        .filter(|(_, &d)| d <= 1)
        .map(|(&v, _)| v)
        .collect();
    while let Some(v) = queue.pop_front() {
        if !removed.insert(v) {
            continue;
        }
        for (x, _) in g.neighbors(v) {
            if removed.contains(&x) {
                continue;
            }
            let d = deg.get_mut(&x).expect("vertex");
            *d -= 1;
            if *d == 1 {
                queue.push_back(x);
            }
        }
    }
    g.vertices().filter(|v| !removed.contains(v)).collect()
}

pub fn dangling_structures(g: &Trigraph) -> DanglingStructures {
    let core = two_core(g);
    let mut out = DanglingStructures::default();

    for comp in g.connected_components() {
        if comp.iter().all(|v| !core.contains(v)) {
            let root = *comp.iter().next().expect("non-empty component");
            out.trees.push(DanglingTree {
                root,
                attachment: None,
                vertices: comp,
            });
        }
    }
    for &x in &core {
        for (r, _) in g.neighbors(x) {
            if core.contains(&r) {
                continue;
            }
            let mut vertices = BTreeSet::from([r]);
            let mut queue = VecDeque::from([r]);
            while let Some(v) = queue.pop_front() {
                for (y, _) in g.neighbors(v) {
                    if !core.contains(&y) && vertices.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
            out.trees.push(DanglingTree {
                root: r,
                attachment: Some(x),
                vertices,
            });
        }
    }

    let deg2: BTreeSet<VertexId> = core
        .iter()
        .copied()
        .filter(|&v| g.total_degree(v) == 2)
        .collect();
    let mut seen = BTreeSet::new();
    for &s in &deg2 {
        if seen.contains(&s) {
            continue;
        }
        // Collect the degree-2 component containing s.
        let mut comp = BTreeSet::from([s]);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for (y, _) in g.neighbors(v) {
                if deg2.contains(&y) && comp.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.extend(comp.iter().copied());
        let ends: Vec<VertexId> = comp
            .iter()
            .copied()
            .filter(|&v| g.neighbors(v).any(|(y, _)| !comp.contains(&y)))
            .collect();
        if ends.is_empty() {
            // A whole cycle of degree-2 vertices is not a path.
            continue;
        }
        let start = ends[0];
        let mut order = vec![start];
        let mut prev = None;
        let mut cur = start;
        loop {
            let next = g
                .neighbors(cur)
                .map(|(y, _)| y)
                .find(|y| comp.contains(y) && Some(*y) != prev);
            match next {
                Some(y) if !order.contains(&y) => {
                    order.push(y);
                    prev = Some(cur);
                    cur = y;
                }
                _ => break,
            }
        }
        let outside = |v: VertexId, skip: Option<VertexId>| -> VertexId {
            g.neighbors(v)
                .map(|(y, _)| y)
                .find(|y| !comp.contains(y) && Some(*y) != skip)
                .expect("path end has an outside neighbour")
        };
        let first = outside(order[0], None);
        let last_v = *order.last().expect("non-empty");
        let last = if order.len() == 1 {
            outside(last_v, Some(first))
        } else {
            outside(last_v, None)
        };
        out.paths.push(DanglingPath {
            vertices: order,
            attachments: (first, last),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::figure1;
    use crate::generate;

    #[test]
    fn fes_examples() {
        let t = generate::tree(12, 7).unwrap();
        assert!(feedback_edge_set(&t).is_empty());
        let c5 = generate::cycle(5).unwrap();
        assert_eq!(feedback_edge_set(&c5).len(), 1);
        let f = figure1();
        let fes = feedback_edge_set(&f);
        assert_eq!(fes.len(), 3);
        let mut rest = f.clone();
        for &(u, v) in &fes {
            rest.set_edge(u, v, None).unwrap();
        }
        assert!(is_forest(&rest));
    }

    #[test]
    fn pendant_path_on_triangle() {
        // Triangle 0-1-2 with the path 3-4-5-6-7 hanging off vertex 0.
        let g = Trigraph::from_edges(
            8,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (0, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
            ],
        )
        .unwrap();
        let d = dangling_structures(&g);
        assert_eq!(d.trees.len(), 1);
        assert_eq!(d.trees[0].root, VertexId(3));
        assert_eq!(d.trees[0].attachment, Some(VertexId(0)));
        assert_eq!(d.trees[0].vertices.len(), 5);
        // The rest of the triangle is a degree-2 path hanging on vertex 0.
        assert_eq!(d.paths.len(), 1);
        assert_eq!(d.paths[0].vertices, vec![VertexId(1), VertexId(2)]);
        assert_eq!(d.paths[0].attachments, (VertexId(0), VertexId(0)));
    }

    #[test]
    fn cycle_has_no_dangling_structures() {
        let d = dangling_structures(&generate::cycle(5).unwrap());
        assert!(d.trees.is_empty() && d.paths.is_empty());
    }

    #[test]
    fn subdivided_edge_in_k4() {
        // K_4 on 0..4 plus the path 0-4-5-6-7-1 of four degree-2 vertices.
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        edges.extend([(0, 4), (4, 5), (5, 6), (6, 7), (7, 1)]);
        let g = Trigraph::from_edges(8, &edges).unwrap();
        let d = dangling_structures(&g);
        assert!(d.trees.is_empty());
        assert_eq!(d.paths.len(), 1);
        let p = &d.paths[0];
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.vertices.len() - 1, 3);
        assert_eq!(p.vertices[0], VertexId(4));
        assert_eq!(p.attachments, (VertexId(0), VertexId(1)));
    }

    #[test]
    fn whole_tree_component() {
        let t = generate::tree(6, 1).unwrap();
        let d = dangling_structures(&t);
        assert_eq!(d.trees.len(), 1);
        assert_eq!(d.trees[0].attachment, None);
        assert_eq!(d.trees[0].vertices.len(), 6);
    }
}
