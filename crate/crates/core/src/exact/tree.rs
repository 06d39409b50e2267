//! Width-2 contraction of rooted trees.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::contraction::{ContractionSequence, Contractor};
use crate::error::{Error, Result};
use crate::graph::{is_forest, Trigraph, VertexId};

/// Contracts `t` to one vertex bottom-up. Sibling leaves are merged as soon
/// as they appear; otherwise the deepest leaf (lowest id among equals) is
/// merged into its parent. The root takes part only in the last step.
pub fn tree_sequence(t: &Trigraph, root: VertexId) -> Result<ContractionSequence> {
    if !t.contains(root) {
        return Err(Error::NotATree(format!("root {root} is not a vertex")));
    }
    if !t.is_connected() || !is_forest(t) {
        return Err(Error::NotATree(
            "input is not a connected acyclic graph".into(),
        ));
    }
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut depth: BTreeMap<VertexId, usize> = BTreeMap::from([(root, 0)]);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for (x, _) in t.neighbors(v) {
            if !depth.contains_key(&x) {
                depth.insert(x, depth[&v] + 1);
                parent.insert(x, v);
                queue.push_back(x);
            }
        }
    }
    let mut children: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for (&c, &p) in &parent {
        children.entry(p).or_default().insert(c);
    }

    let mut k = Contractor::new(t.clone());
    let is_leaf = |children: &BTreeMap<VertexId, BTreeSet<VertexId>>, v: VertexId| {
        v != root && children.get(&v).is_none_or(|c| c.is_empty())
    };
    while k.current().vertex_count() > 1 {
        let sibling_leaves = children.iter().find_map(|(&p, cs)| {
            let mut leaves = cs.iter().copied().filter(|&c| is_leaf(&children, c));
            match (leaves.next(), leaves.next()) {
                (Some(a), Some(b)) => Some((p, a, b)),
                _ => None,
            }
        });
        if let Some((p, a, b)) = sibling_leaves {
            let w = k.contract(a, b)?;
            let cs = children.get_mut(&p).expect("parent");
            cs.remove(&a);
            cs.remove(&b);
            cs.insert(w);
            parent.insert(w, p);
            depth.insert(w, depth[&a]);
            continue;
        }
        let leaf = k
            .current()
            .vertices()
            .filter(|&v| is_leaf(&children, v))
            .max_by_key(|&v| (depth[&v], std::cmp::Reverse(v)))
            .expect("a tree with two vertices has a leaf");
        let p = parent[&leaf];
        let w = k.contract(leaf, p)?;
        children.remove(&p);
        if p == root {
            break;
        }
        let g = parent[&p];
        let cs = children.get_mut(&g).expect("grandparent");
        cs.remove(&p);
        cs.insert(w);
        parent.insert(w, g);
        depth.insert(w, depth[&p]);
    }
    let bound = 2.max(t.max_red_degree());
    if k.width() > bound {
        return Err(Error::BoundViolated(format!(
            "tree sequence width {} exceeds {bound}",
            k.width()
        )));
    }
    Ok(k.into_sequence())
}
