//! Contraction steps and sequences, bags, widths, and the sequence
//! transformers built on them (restriction, extension, concatenation).
//!
//! The i-th contraction (1-based) of a sequence on `G₁` creates the vertex
//! `b + i - 1`, where `b` is one past the largest id of `G₁` (so `b = n` for
//! graphs on `0..n`).

mod ancestry;
mod io;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Color, Trigraph, VertexId};

pub use ancestry::Ancestry;
pub use io::{format_sequence, parse_sequence, ParsedSequence};

/// Bag of every live vertex: the original vertices merged into it.
pub type BagMap = BTreeMap<VertexId, BTreeSet<VertexId>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ContractionStep {
    pub u: VertexId,
    pub v: VertexId,
    pub w: VertexId,
}

/// Maximum red degree of every trigraph of a (partial) sequence. The
/// profile of a sequence with `s` steps has `s + 1` entries; `profile[0]`
/// belongs to the initial trigraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WidthProfile {
    pub per_trigraph: Vec<usize>,
    pub width: usize,
}

impl WidthProfile {
    fn from_vec(per_trigraph: Vec<usize>) -> Self {
        let width = per_trigraph.iter().copied().max().unwrap_or(0);
        WidthProfile {
            per_trigraph,
            width,
        }
    }
}

/// Width `a` strictly before trigraph `i` (1-based) and `b` from `i` on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProgressiveWidth {
    pub a: usize,
    pub i: usize,
    pub b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionSequence {
    initial: Trigraph,
    steps: Vec<ContractionStep>,
}

impl ContractionSequence {
    pub fn empty(initial: Trigraph) -> Self {
        ContractionSequence {
            initial,
            steps: Vec::new(),
        }
    }

    /// Builds a sequence from vertex pairs, assigning product ids.
    pub fn from_pairs(
        initial: Trigraph,
        pairs: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut live = initial.vertex_set();
        let base = initial.id_bound();
        let mut steps = Vec::new();
        for (i, (u, v)) in pairs.into_iter().enumerate() {
            check_live(&live, u, v, i)?;
            let w = VertexId(base + i);
            live.remove(&u);
            live.remove(&v);
            live.insert(w);
            steps.push(ContractionStep { u, v, w });
        }
        Ok(ContractionSequence { initial, steps })
    }

    /// Validates liveness and product ids of explicit steps.
    pub fn from_steps(initial: Trigraph, steps: Vec<ContractionStep>) -> Result<Self> {
        let base = initial.id_bound();
        let mut live = initial.vertex_set();
        for (i, s) in steps.iter().enumerate() {
            check_live(&live, s.u, s.v, i)?;
            let expected = VertexId(base + i);
            if s.w != expected {
                return Err(Error::FreshIdMismatch {
                    step: i + 1,
                    expected,
                    found: s.w,
                });
            }
            live.remove(&s.u);
            live.remove(&s.v);
            live.insert(s.w);
        }
        Ok(ContractionSequence { initial, steps })
    }

    pub fn initial(&self) -> &Trigraph {
        &self.initial
    }

    pub fn steps(&self) -> &[ContractionStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// True if the sequence ends in a single vertex.
    pub fn is_complete(&self) -> bool {
        self.steps.len() + 1 >= self.initial.vertex_count()
    }

    pub fn fresh_base(&self) -> usize {
        self.initial.id_bound()
    }

    /// The first `k` steps.
    pub fn prefix(&self, k: usize) -> ContractionSequence {
        ContractionSequence {
            initial: self.initial.clone(),
            steps: self.steps[..k.min(self.steps.len())].to_vec(),
        }
    }

    pub fn width_profile(&self) -> Result<WidthProfile> {
        let mut c = Contractor::new(self.initial.clone());
        for s in &self.steps {
            c.contract(s.u, s.v)?;
        }
        Ok(c.profile())
    }

    pub fn width(&self) -> Result<usize> {
        Ok(self.width_profile()?.width)
    }

    /// The trigraph after all steps.
    pub fn final_trigraph(&self) -> Result<Trigraph> {
        let mut c = Contractor::new(self.initial.clone());
        for s in &self.steps {
            c.contract(s.u, s.v)?;
        }
        Ok(c.current().clone())
    }
}

fn check_live(live: &BTreeSet<VertexId>, u: VertexId, v: VertexId, i: usize) -> Result<()> {
    if u == v {
        return Err(Error::SameVertex(u));
    }
    for x in [u, v] {
        if !live.contains(&x) {
            return Err(Error::DeadVertex(x, i + 1));
        }
    }
    Ok(())
}

/// Single-owner builder that applies contractions to a working trigraph and
/// records steps, bags, and the width profile.
#[derive(Clone, Debug)]
pub struct Contractor {
    initial: Trigraph,
    current: Trigraph,
    bags: BagMap,
    ancestry: Ancestry,
    steps: Vec<ContractionStep>,
    base: usize,
    profile: Vec<usize>,
}

impl Contractor {
    pub fn new(initial: Trigraph) -> Self {
        let bags = initial
            .vertices()
            .map(|v| (v, BTreeSet::from([v])))
            .collect();
        let ancestry = Ancestry::new(&initial);
        let base = initial.id_bound();
        let profile = vec![initial.max_red_degree()];
        Contractor {
            current: initial.clone(),
            initial,
            bags,
            ancestry,
            steps: Vec::new(),
            base,
            profile,
        }
    }

    /// Contracts two live vertices and returns the product id.
    pub fn contract(&mut self, u: VertexId, v: VertexId) -> Result<VertexId> {
        let i = self.steps.len();
        if u == v {
            return Err(Error::SameVertex(u));
        }
        for x in [u, v] {
            if !self.current.contains(x) {
                return Err(Error::DeadVertex(x, i + 1));
            }
        }
        let w = VertexId(self.base + i);
        self.current.contract_in_place(u, v, w)?;
        let mut bu = self.bags.remove(&u).expect("live bag");
        let mut bv = self.bags.remove(&v).expect("live bag");
        if bu.len() < bv.len() {
            std::mem::swap(&mut bu, &mut bv);
        }
        bu.extend(bv);
        self.bags.insert(w, bu);
        self.ancestry.merge(u, v, w);
        self.steps.push(ContractionStep { u, v, w });
        self.profile.push(self.current.max_red_degree());
        Ok(w)
    }

    /// Applies `seq` with its initial vertices renamed through `map`
    /// (sequence id → live id here). Products are added to `map`.
    pub fn apply_mapped(
        &mut self,
        seq: &ContractionSequence,
        map: &mut BTreeMap<VertexId, VertexId>,
    ) -> Result<()> {
        for s in seq.steps() {
            let u = *map.get(&s.u).ok_or(Error::UnknownVertex(s.u))?;
            let v = *map.get(&s.v).ok_or(Error::UnknownVertex(s.v))?;
            let w = self.contract(u, v)?;
            map.insert(s.w, w);
        }
        Ok(())
    }

    pub fn initial(&self) -> &Trigraph {
        &self.initial
    }

    pub fn current(&self) -> &Trigraph {
        &self.current
    }

    pub fn bags(&self) -> &BagMap {
        &self.bags
    }

    pub fn bag(&self, v: VertexId) -> Option<&BTreeSet<VertexId>> {
        self.bags.get(&v)
    }

    /// The live vertex whose bag contains the original vertex `x`.
    pub fn descendant(&self, x: VertexId) -> Option<VertexId> {
        self.ancestry.descendant(x)
    }

    pub fn steps(&self) -> &[ContractionStep] {
        &self.steps
    }

    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    pub fn width(&self) -> usize {
        self.profile.iter().copied().max().unwrap_or(0)
    }

    /// Width of the trigraphs created after the first `from_step` steps.
    pub fn width_since(&self, from_step: usize) -> usize {
        self.profile[from_step.min(self.profile.len() - 1)..]
            .iter()
            .copied()
            .max()
            .unwrap_or(0)
    }

    pub fn profile(&self) -> WidthProfile {
        WidthProfile::from_vec(self.profile.clone())
    }

    pub fn sequence(&self) -> ContractionSequence {
        ContractionSequence {
            initial: self.initial.clone(),
            steps: self.steps.clone(),
        }
    }

    pub fn into_sequence(self) -> ContractionSequence {
        ContractionSequence {
            initial: self.initial,
            steps: self.steps,
        }
    }
}

/// Every trigraph, bag map, and the width profile of a sequence.
#[derive(Clone, Debug)]
pub struct Replay {
    pub trigraphs: Vec<Trigraph>,
    pub bags: Vec<BagMap>,
    pub profile: WidthProfile,
}

pub fn replay(c: &ContractionSequence) -> Result<Replay> {
    let mut k = Contractor::new(c.initial.clone());
    let mut trigraphs = vec![k.current().clone()];
    let mut bags = vec![k.bags().clone()];
    for s in &c.steps {
        k.contract(s.u, s.v)?;
        trigraphs.push(k.current().clone());
        bags.push(k.bags().clone());
    }
    Ok(Replay {
        trigraphs,
        bags,
        profile: k.profile(),
    })
}

/// Quotient trigraph of `initial` by the bags: black iff every cross pair is
/// a black edge, absent iff no cross pair is adjacent, red otherwise.
pub fn trigraph_from_bags(initial: &Trigraph, bags: &BagMap) -> Result<Trigraph> {
    let mut seen = BTreeSet::new();
    for (v, bag) in bags {
        if bag.is_empty() {
            return Err(Error::NotPartition(format!("bag of {v} is empty")));
        }
        for &x in bag {
            if !initial.contains(x) {
                return Err(Error::NotPartition(format!("{x} is not a vertex")));
            }
            if !seen.insert(x) {
                return Err(Error::NotPartition(format!("{x} lies in two bags")));
            }
        }
    }
    if seen.len() != initial.vertex_count() {
        return Err(Error::NotPartition("some vertex is in no bag".into()));
    }
    let mut g = Trigraph::new();
    for &v in bags.keys() {
        g.add_vertex(v);
    }
    let live: Vec<(&VertexId, &BTreeSet<VertexId>)> = bags.iter().collect();
    for (i, (&u, bu)) in live.iter().enumerate() {
        for (&w, bw) in &live[i + 1..] {
            let mut all_black = true;
            let mut any = false;
            for &x in bu.iter() {
                for &y in bw.iter() {
                    match initial.edge(x, y) {
                        Some(Color::Black) => any = true,
                        Some(Color::Red) => {
                            any = true;
                            all_black = false;
                        }
                        None => all_black = false,
                    }
                }
            }
            if any {
                let c = if all_black { Color::Black } else { Color::Red };
                g.add_edge(u, w, c)?;
            }
        }
    }
    Ok(g)
}

fn check_induced(sub: &Trigraph, sup: &Trigraph) -> Result<()> {
    let vs = sub.vertex_set();
    match sup.induced_subtrigraph(&vs) {
        Ok(ind) if &ind == sub => Ok(()),
        _ => Err(Error::NotInduced),
    }
}

/// Projects `c` onto the induced subtrigraph `h`: one step per contraction
/// of `c` that merges two bags which both meet `V(h)`.
pub fn restriction(c: &ContractionSequence, h: &Trigraph) -> Result<ContractionSequence> {
    check_induced(h, &c.initial)?;
    let mut part: BTreeMap<VertexId, Option<VertexId>> = c
        .initial
        .vertices()
        .map(|v| (v, h.contains(v).then_some(v)))
        .collect();
    let base = h.id_bound();
    let mut pairs = Vec::new();
    for s in &c.steps {
        let pu = part.remove(&s.u).ok_or(Error::DeadVertex(s.u, 0))?;
        let pv = part.remove(&s.v).ok_or(Error::DeadVertex(s.v, 0))?;
        let merged = match (pu, pv) {
            (Some(a), Some(b)) => {
                pairs.push((a, b));
                Some(VertexId(base + pairs.len() - 1))
            }
            (a, b) => a.or(b),
        };
        part.insert(s.w, merged);
    }
    ContractionSequence::from_pairs(h.clone(), pairs)
}

/// A sequence on a subtrigraph replayed inside a supertrigraph.
#[derive(Clone, Debug)]
pub struct Extension {
    pub sequence: ContractionSequence,
    /// Subsequence id → id in the extended sequence.
    pub vertex_map: BTreeMap<VertexId, VertexId>,
}

impl Extension {
    /// `G_i ↑ G`: the i-th trigraph (1-based) of the extended sequence.
    pub fn lifted(&self, i: usize) -> Result<Trigraph> {
        let len = self.sequence.len() + 1;
        if i == 0 || i > len {
            return Err(Error::IndexOutOfRange { index: i, len });
        }
        self.sequence.prefix(i - 1).final_trigraph()
    }
}

/// Replays `c0` (a sequence on an induced subtrigraph `H` of `g`) inside `g`
/// without touching vertices outside `H`.
pub fn extension(c0: &ContractionSequence, g: &Trigraph) -> Result<Extension> {
    check_induced(&c0.initial, g)?;
    let mut map: BTreeMap<VertexId, VertexId> = c0.initial.vertices().map(|v| (v, v)).collect();
    let mut k = Contractor::new(g.clone());
    k.apply_mapped(c0, &mut map)?;
    Ok(Extension {
        sequence: k.into_sequence(),
        vertex_map: map,
    })
}

/// True iff trigraphs `1..i` have red degree ≤ `a` and trigraphs `i..` have
/// red degree ≤ `b`.
pub fn progressive_width_check(c: &ContractionSequence, pw: ProgressiveWidth) -> Result<bool> {
    let profile = c.width_profile()?.per_trigraph;
    let len = profile.len();
    if pw.i == 0 || pw.i > len {
        return Err(Error::IndexOutOfRange { index: pw.i, len });
    }
    let (pre, post) = profile.split_at(pw.i - 1);
    Ok(pre.iter().all(|&r| r <= pw.a) && post.iter().all(|&r| r <= pw.b))
}

/// Appends `c2` to `c1`. `map` sends each vertex of `c1`'s final trigraph to
/// the vertex of `c2.initial()` it corresponds to and must be an isomorphism.
pub fn concatenate(
    c1: &ContractionSequence,
    c2: &ContractionSequence,
    map: &BTreeMap<VertexId, VertexId>,
) -> Result<ContractionSequence> {
    let mut k = Contractor::new(c1.initial.clone());
    for s in &c1.steps {
        k.contract(s.u, s.v)?;
    }
    let last = k.current();
    if map.len() != last.vertex_count() {
        return Err(Error::NotIsomorphic(format!(
            "map has {} entries, trigraph has {} vertices",
            map.len(),
            last.vertex_count()
        )));
    }
    let mapped = last
        .relabel(map)
        .map_err(|e| Error::NotIsomorphic(e.to_string()))?;
    if &mapped != c2.initial() {
        return Err(Error::NotIsomorphic(
            "trigraphs differ under the map".into(),
        ));
    }
    let mut inv: BTreeMap<VertexId, VertexId> = map.iter().map(|(&a, &b)| (b, a)).collect();
    k.apply_mapped(c2, &mut inv)?;
    Ok(k.into_sequence())
}

/// Renames the initial vertices of `c` through `map` (which must cover
/// them injectively); product ids are renumbered for the new initial.
pub fn translate(
    c: &ContractionSequence,
    map: &BTreeMap<VertexId, VertexId>,
) -> Result<ContractionSequence> {
    let initial = c.initial.relabel(map)?;
    let mut ids = map.clone();
    let mut k = Contractor::new(initial);
    k.apply_mapped(c, &mut ids)?;
    Ok(k.into_sequence())
}
