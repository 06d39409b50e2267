//! Width-bounded search over bag partitions of a small dense trigraph.
//!
//! A state is the sorted list of part bitmasks. The red graph of a state is
//! determined by the partition alone, so failed states can be memoised
//! without recording how they were reached.

use dashmap::DashSet;
use rayon::prelude::*;

use crate::graph::{Color, Trigraph, VertexId};

pub(crate) const MAX_SEARCH_VERTICES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Part {
    mask: u64,
    /// Vertices black-adjacent to every member.
    and_blk: u64,
    /// Vertices adjacent (any colour) to some member.
    or_any: u64,
    /// Vertices red-adjacent to some member.
    or_red: u64,
}

impl Part {
    fn merge(&self, o: &Part) -> Part {
        Part {
            mask: self.mask | o.mask,
            and_blk: self.and_blk & o.and_blk,
            or_any: self.or_any | o.or_any,
            or_red: self.or_red | o.or_red,
        }
    }

    fn red_to(&self, o: &Part) -> bool {
        let b = o.mask;
        if self.or_any & b == 0 {
            return false;
        }
        !(self.and_blk & b == b && self.or_red & b == 0)
    }

    /// 0 for no edge, 1 for black, 2 for red.
    fn relation(&self, o: &Part) -> u8 {
        if self.or_any & o.mask == 0 {
            0
        } else if self.red_to(o) {
            2
        } else {
            1
        }
    }
}

/// Dense input with the per-vertex rows the summaries are built from.
pub(crate) struct Instance {
    n: usize,
    singletons: Vec<Part>,
}

impl Instance {
    /// `g` must be on `0..n` with `n ≤ 64`.
    pub(crate) fn new(g: &Trigraph) -> Instance {
        let n = g.vertex_count();
        assert!(n <= MAX_SEARCH_VERTICES && g.id_bound() == n);
        let singletons = (0..n)
            .map(|v| {
                let mut p = Part {
                    mask: 1 << v,
                    and_blk: 0,
                    or_any: 0,
                    or_red: 0,
                };
                for (x, c) in g.neighbors(VertexId(v)) {
                    p.or_any |= 1 << x.0;
                    match c {
                        Color::Black => p.and_blk |= 1 << x.0,
                        Color::Red => p.or_red |= 1 << x.0,
                    }
                }
                p
            })
            .collect();
        Instance { n, singletons }
    }

    pub(crate) fn len(&self) -> usize {
        self.n
    }
}

#[derive(Clone, Debug)]
struct State {
    parts: Vec<Part>,
    red: Vec<usize>,
}

impl State {
    fn key(&self) -> Vec<u64> {
        self.parts.iter().map(|p| p.mask).collect()
    }

    fn max_red(&self) -> usize {
        self.red.iter().copied().max().unwrap_or(0)
    }

    fn initial(inst: &Instance) -> State {
        let parts = inst.singletons.clone();
        let red = parts
            .iter()
            .map(|p| {
                parts
                    .iter()
                    .filter(|q| q.mask != p.mask && p.red_to(q))
                    .count()
            })
            .collect();
        State { parts, red }
    }

    /// State after merging parts `i < j`, plus its total red degree.
    fn merged(&self, i: usize, j: usize) -> (State, usize) {
        let (a, b) = (&self.parts[i], &self.parts[j]);
        let c = a.merge(b);
        let mut parts = Vec::with_capacity(self.parts.len() - 1);
        let mut red = Vec::with_capacity(self.parts.len() - 1);
        let mut c_red = 0;
        let mut c_at = None;
        for (k, x) in self.parts.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            if c_at.is_none() && c.mask < x.mask {
                c_at = Some(parts.len());
            }
            let was = usize::from(x.red_to(a)) + usize::from(x.red_to(b));
            let now = usize::from(x.red_to(&c));
            c_red += now;
            parts.push(*x);
            red.push(self.red[k] - was + now);
        }
        let at = c_at.unwrap_or(parts.len());
        parts.insert(at, c);
        red.insert(at, c_red);
        let total = red.iter().sum();
        (State { parts, red }, total)
    }

    /// Lowest pair of parts with identical coloured rows towards every
    /// other part; merging them never increases a red degree.
    fn twin_pair(&self) -> Option<(usize, usize)> {
        let k = self.parts.len();
        for i in 0..k {
            for j in i + 1..k {
                let (a, b) = (&self.parts[i], &self.parts[j]);
                let twins = (0..k)
                    .filter(|&x| x != i && x != j)
                    .all(|x| a.relation(&self.parts[x]) == b.relation(&self.parts[x]));
                if twins {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Moves that keep every red degree within `cap`, best first.
    fn moves(&self, cap: usize) -> Vec<(usize, usize, State)> {
        let k = self.parts.len();
        let mut out = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let (s, total) = self.merged(i, j);
                if s.max_red() <= cap {
                    let lo = self.parts[i].mask.trailing_zeros();
                    let hi = self.parts[j].mask.trailing_zeros();
                    out.push(((total, lo.min(hi), lo.max(hi)), i, j, s));
                }
            }
        }
        out.sort_by_key(|m| m.0);
        out.into_iter().map(|(_, i, j, s)| (i, j, s)).collect()
    }
}

/// Merged part masks, in order.
pub(crate) type Plan = Vec<(u64, u64)>;

struct Search<'a> {
    cap: usize,
    failed: &'a DashSet<Vec<u64>>,
}

impl Search<'_> {
    fn run(&self, s: &State, parallel: bool) -> Option<Plan> {
        if s.parts.len() <= 1 {
            return Some(Vec::new());
        }
        let key = s.key();
        if self.failed.contains(&key) {
            return None;
        }
        if let Some((i, j)) = s.twin_pair() {
            let (next, _) = s.merged(i, j);
            let found = self.run(&next, parallel).map(|mut plan| {
                plan.insert(0, (s.parts[i].mask, s.parts[j].mask));
                plan
            });
            if found.is_none() {
                self.failed.insert(key);
            }
            return found;
        }
        let moves = s.moves(self.cap);
        let step = |(i, j, next): &(usize, usize, State)| {
            self.run(next, false).map(|mut plan| {
                plan.insert(0, (s.parts[*i].mask, s.parts[*j].mask));
                plan
            })
        };
        let found = if parallel {
            moves.par_iter().find_map_first(step)
        } else {
            moves.iter().find_map(step)
        };
        if found.is_none() {
            self.failed.insert(key);
        }
        found
    }
}

/// A plan of width at most `cap`, if one exists.
pub(crate) fn decide(inst: &Instance, cap: usize, parallel: bool) -> Option<Plan> {
    let s = State::initial(inst);
    if s.max_red() > cap {
        return None;
    }
    let failed = DashSet::new();
    Search {
        cap,
        failed: &failed,
    }
    .run(&s, parallel)
}

/// Max red degree of the initial trigraph, a lower bound on any plan.
pub(crate) fn initial_red(inst: &Instance) -> usize {
    State::initial(inst).max_red()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn cycle_five_needs_two() {
        let inst = Instance::new(&generate::cycle(5).unwrap());
        assert!(decide(&inst, 1, false).is_none());
        let plan = decide(&inst, 2, false).unwrap();
        assert_eq!(plan.len(), 4);
    }

    #[test]
    fn merge_updates_red_degrees() {
        let g = generate::path(4);
        let s = State::initial(&Instance::new(&g));
        let (t, total) = s.merged(0, 3);
        // Endpoints merged: the product is red to both inner vertices.
        assert_eq!(total, 4);
        assert_eq!(t.max_red(), 2);
        let twins = crate::generate::complete(5);
        assert!(State::initial(&Instance::new(&twins)).twin_pair().is_some());
    }
}
