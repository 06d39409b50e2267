//! Vertex-integrity decompositions, twin-block classes, and the reduced
//! graph that keeps a bounded number of blocks per class.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Trigraph, VertexId};

/// A separator `s` such that every component of `G - s` together with `s`
/// has at most `p` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViDecomposition {
    pub p: usize,
    pub s: BTreeSet<VertexId>,
    /// Components of `G - s`, ordered by least vertex.
    pub components: Vec<BTreeSet<VertexId>>,
}

impl ViDecomposition {
    /// Builds the decomposition for a given separator.
    pub fn from_separator(g: &Trigraph, s: BTreeSet<VertexId>) -> Result<Self> {
        if let Some(v) = s.iter().find(|v| !g.contains(**v)) {
            return Err(Error::UnknownVertex(*v));
        }
        let rest: BTreeSet<VertexId> = g.vertices().filter(|v| !s.contains(v)).collect();
        let mut components = g.induced_subtrigraph(&rest)?.connected_components();
        components.sort_by_key(|c| *c.iter().next().unwrap());
        let p = s.len() + components.iter().map(|c| c.len()).max().unwrap_or(0);
        Ok(ViDecomposition { p, s, components })
    }

    /// Index of the component containing `v`, if `v` is outside `s`.
    pub fn component_of(&self, v: VertexId) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&v))
    }
}

fn separator_within(g: &Trigraph, p: usize, s: &mut BTreeSet<VertexId>) -> bool {
    if s.len() > p {
        return false;
    }
    let budget = p - s.len();
    let rest: BTreeSet<VertexId> = g.vertices().filter(|v| !s.contains(v)).collect();
    let sub = g.induced_subtrigraph(&rest).expect("subset");
    let Some(big) = sub
        .connected_components()
        .into_iter()
        .find(|c| c.len() > budget)
    else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    // Any connected set of budget + 1 vertices of the component must lose a
    // vertex to the separator.
    let start = *big.iter().next().unwrap();
    let mut seen = vec![start];
    let mut i = 0;
    while seen.len() <= budget {
        let x = seen[i];
        i += 1;
        for (y, _) in sub.neighbors(x) {
            if seen.len() <= budget && !seen.contains(&y) {
                seen.push(y);
            }
        }
    }
    for v in seen {
        s.insert(v);
        if separator_within(g, p, s) {
            return true;
        }
        s.remove(&v);
    }
    false
}

/// Minimum vertex integrity `p ≤ cap` with a witnessing separator, found by
/// bounded branching.
pub fn vertex_integrity(g: &Trigraph, cap: usize) -> Result<ViDecomposition> {
    for p in 0..=cap.min(g.vertex_count()) {
        let mut s = BTreeSet::new();
        if separator_within(g, p, &mut s) {
            let mut d = ViDecomposition::from_separator(g, s)?;
            d.p = p;
            return Ok(d);
        }
    }
    Err(Error::CapExceeded {
        size: g.vertex_count(),
        cap,
    })
}

/// Components of `G - S` that are isomorphic through a map preserving
/// adjacency to `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwinBlockClass {
    /// Component index of the representative (also the first member).
    pub representative: usize,
    pub members: Vec<usize>,
    /// Canonical isomorphism from the representative to each member.
    pub isomorphisms: Vec<BTreeMap<VertexId, VertexId>>,
}

impl TwinBlockClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn position(&self, comp: usize) -> Option<usize> {
        self.members.iter().position(|&c| c == comp)
    }

    /// The canonical isomorphism from member `a` to member `b`.
    pub fn iso_between(&self, a: usize, b: usize) -> Option<BTreeMap<VertexId, VertexId>> {
        let (ia, ib) = (self.position(a)?, self.position(b)?);
        Some(
            self.isomorphisms[ia]
                .iter()
                .map(|(r, x)| (*x, self.isomorphisms[ib][r]))
                .collect(),
        )
    }
}

type Fingerprint = (usize, Vec<VertexId>);

fn fingerprint(
    g: &Trigraph,
    comp: &BTreeSet<VertexId>,
    s: &BTreeSet<VertexId>,
    v: VertexId,
) -> Fingerprint {
    let inside = g.neighbors(v).filter(|(x, _)| comp.contains(x)).count();
    let mut outside: Vec<VertexId> = g
        .neighbors(v)
        .map(|(x, _)| x)
        .filter(|x| s.contains(x))
        .collect();
    outside.sort();
    (inside, outside)
}

/// Lexicographically first isomorphism from `a` to `b` (as the sequence of
/// images of `a`'s vertices in increasing order) that preserves adjacency
/// to `s`.
pub fn canonical_isomorphism(
    g: &Trigraph,
    s: &BTreeSet<VertexId>,
    a: &BTreeSet<VertexId>,
    b: &BTreeSet<VertexId>,
) -> Option<BTreeMap<VertexId, VertexId>> {
    if a.len() != b.len() {
        return None;
    }
    let av: Vec<VertexId> = a.iter().copied().collect();
    let bv: Vec<VertexId> = b.iter().copied().collect();
    let fa: Vec<Fingerprint> = av.iter().map(|&v| fingerprint(g, a, s, v)).collect();
    let fb: Vec<Fingerprint> = bv.iter().map(|&v| fingerprint(g, b, s, v)).collect();
    let mut ma = fa.clone();
    let mut mb = fb.clone();
    ma.sort();
    mb.sort();
    if ma != mb {
        return None;
    }
    fn extend(
        g: &Trigraph,
        av: &[VertexId],
        bv: &[VertexId],
        fa: &[Fingerprint],
        fb: &[Fingerprint],
        img: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let k = img.len();
        if k == av.len() {
            return true;
        }
        for j in 0..bv.len() {
            if used[j] || fa[k] != fb[j] {
                continue;
            }
            let ok = (0..k)
                .all(|l| g.edge(av[k], av[l]).is_some() == g.edge(bv[j], bv[img[l]]).is_some());
            if !ok {
                continue;
            }
            used[j] = true;
            img.push(j);
            if extend(g, av, bv, fa, fb, img, used) {
                return true;
            }
            img.pop();
            used[j] = false;
        }
        false
    }
    let mut img = Vec::new();
    let mut used = vec![false; bv.len()];
    extend(g, &av, &bv, &fa, &fb, &mut img, &mut used)
        .then(|| av.iter().zip(&img).map(|(&x, &j)| (x, bv[j])).collect())
}

/// Partitions the components of `d` into twin-block classes, ordered by
/// representative.
pub fn twin_block_partition(g: &Trigraph, d: &ViDecomposition) -> Vec<TwinBlockClass> {
    let mut classes: Vec<TwinBlockClass> = Vec::new();
    let mut buckets: BTreeMap<Vec<Fingerprint>, Vec<usize>> = BTreeMap::new();
    for (i, c) in d.components.iter().enumerate() {
        let mut key: Vec<Fingerprint> = c.iter().map(|&v| fingerprint(g, c, &d.s, v)).collect();
        key.sort();
        let bucket = buckets.entry(key).or_default();
        let found = bucket.iter().find_map(|&ci| {
            let cls = &classes[ci];
            canonical_isomorphism(g, &d.s, &d.components[cls.representative], c)
                .map(|iso| (ci, iso))
        });
        match found {
            Some((ci, iso)) => {
                classes[ci].members.push(i);
                classes[ci].isomorphisms.push(iso);
            }
            None => {
                bucket.push(classes.len());
                classes.push(TwinBlockClass {
                    representative: i,
                    members: vec![i],
                    isomorphisms: vec![c.iter().map(|&v| (v, v)).collect()],
                });
            }
        }
    }
    classes
}

/// Neighbourhood classes of `S` relative to a component `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HEquivalenceClasses {
    /// Vertices of `S` with a neighbour in `h`.
    pub s_h: BTreeSet<VertexId>,
    /// Partition of `S` by neighbourhood in `h`.
    pub classes: Vec<BTreeSet<VertexId>>,
    class_of: BTreeMap<VertexId, usize>,
}

impl HEquivalenceClasses {
    pub fn class_of(&self, v: VertexId) -> Option<usize> {
        self.class_of.get(&v).copied()
    }
}

pub fn h_equivalence(
    g: &Trigraph,
    s: &BTreeSet<VertexId>,
    h: &BTreeSet<VertexId>,
) -> HEquivalenceClasses {
    let mut by_key: BTreeMap<Vec<VertexId>, BTreeSet<VertexId>> = BTreeMap::new();
    for &v in s {
        let key: Vec<VertexId> = g
            .neighbors(v)
            .map(|(x, _)| x)
            .filter(|x| h.contains(x))
            .collect();
        by_key.entry(key).or_default().insert(v);
    }
    let s_h = by_key
        .iter()
        .filter(|(k, _)| !k.is_empty())
        .flat_map(|(_, c)| c.iter().copied())
        .collect();
    let mut classes: Vec<BTreeSet<VertexId>> = by_key.into_values().collect();
    classes.sort_by_key(|c| *c.iter().next().unwrap());
    let class_of = classes
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&v| (v, i)))
        .collect();
    HEquivalenceClasses {
        s_h,
        classes,
        class_of,
    }
}

/// How many twin-blocks a class keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Threshold {
    /// `f(p) = 2^(7p³)`.
    Guaranteed,
    Fixed(usize),
}

impl Threshold {
    pub fn value(self, p: usize) -> BigUint {
        match self {
            Threshold::Guaranteed => BigUint::from(1u8) << (7 * p * p * p),
            Threshold::Fixed(t) => BigUint::from(t),
        }
    }
}

/// `p + p²·f·2^(2p²)`.
pub fn reduced_size_bound(p: usize, f: &BigUint) -> BigUint {
    BigUint::from(p) + BigUint::from(p * p) * f * (BigUint::from(1u8) << (2 * p * p))
}

#[derive(Clone, Debug)]
pub struct ReducedGraph {
    pub g_prime: Trigraph,
    /// Removed components with their class index.
    pub removed: Vec<(usize, usize)>,
    pub threshold: BigUint,
}

/// Keeps the first `threshold` members of every class with at least that
/// many. A threshold below 2 removes nothing, since a removed block needs
/// two kept copies to be lifted back.
pub fn reduced_graph(
    g: &Trigraph,
    d: &ViDecomposition,
    classes: &[TwinBlockClass],
    threshold: Threshold,
) -> Result<ReducedGraph> {
    let f = threshold.value(d.p);
    let mut removed = Vec::new();
    if f >= BigUint::from(2u8) {
        for (ci, cls) in classes.iter().enumerate() {
            if BigUint::from(cls.len()) >= f {
                let keep: usize = f.clone().try_into().expect("below the class size");
                removed.extend(cls.members[keep..].iter().map(|&m| (m, ci)));
            }
        }
    }
    removed.sort();
    let gone: BTreeSet<VertexId> = removed
        .iter()
        .flat_map(|&(m, _)| d.components[m].iter().copied())
        .collect();
    let keep: BTreeSet<VertexId> = g.vertices().filter(|v| !gone.contains(v)).collect();
    let g_prime = g.induced_subtrigraph(&keep)?;
    let bound = reduced_size_bound(d.p, &f);
    if BigUint::from(g_prime.vertex_count()) > bound {
        return Err(Error::BoundViolated(format!(
            "reduced graph has {} vertices, bound {bound}",
            g_prime.vertex_count()
        )));
    }
    Ok(ReducedGraph {
        g_prime,
        removed,
        threshold: f,
    })
}
