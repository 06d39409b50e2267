//! Ancestor/descendant bookkeeping over a contraction log.

use std::collections::{HashMap, HashSet};

use crate::graph::{Trigraph, VertexId};

/// Parent pointers from each contracted vertex to its product. A vertex is
/// an ancestor of every vertex on its parent chain.
#[derive(Clone, Debug, Default)]
pub struct Ancestry {
    parent: HashMap<VertexId, VertexId>,
    known: HashSet<VertexId>,
}

impl Ancestry {
    pub fn new(initial: &Trigraph) -> Self {
        Ancestry {
            parent: HashMap::new(),
            known: initial.vertices().collect(),
        }
    }

    pub(crate) fn merge(&mut self, u: VertexId, v: VertexId, w: VertexId) {
        self.parent.insert(u, w);
        self.parent.insert(v, w);
        self.known.insert(w);
    }

    /// Live descendant of `x`, which may be any vertex ever seen.
    pub fn descendant(&self, x: VertexId) -> Option<VertexId> {
        if !self.known.contains(&x) {
            return None;
        }
        let mut cur = x;
        while let Some(&p) = self.parent.get(&cur) {
            cur = p;
        }
        Some(cur)
    }

    /// True if `a` equals `b` or `a` was contracted (transitively) into `b`.
    pub fn is_ancestor(&self, a: VertexId, b: VertexId) -> bool {
        let mut cur = a;
        loop {
            if cur == b {
                return true;
            }
            match self.parent.get(&cur) {
                Some(&p) => cur = p,
                None => return false,
            }
        }
    }
}
