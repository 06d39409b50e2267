//! Deterministic instance generators.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::IteratorRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixtures;
use crate::graph::{Color, Trigraph, VertexId};

/// Largest field order accepted by [`paley`].
pub const MAX_PALEY_ORDER: usize = 2000;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

pub fn complete(n: usize) -> Trigraph {
    let mut g = Trigraph::with_vertices(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(VertexId(u), VertexId(v), Color::Black)
                .expect("fresh edge");
        }
    }
    g
}

pub fn path(n: usize) -> Trigraph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Trigraph::from_edges(n, &edges).expect("fresh edges")
}

pub fn cycle(n: usize) -> Result<Trigraph> {
    if n < 3 {
        return Err(invalid("a cycle needs at least 3 vertices"));
    }
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((n - 1, 0));
    Trigraph::from_edges(n, &edges)
}

/// Random recursive tree: vertex `i` attaches to a uniform earlier vertex.
pub fn tree(n: usize, seed: u64) -> Result<Trigraph> {
    if n == 0 {
        return Err(invalid("a tree needs at least one vertex"));
    }
    let mut r = rng(seed);
    let edges: Vec<_> = (1..n).map(|i| (r.gen_range(0..i), i)).collect();
    Trigraph::from_edges(n, &edges)
}

/// Random tree plus `k` distinct random non-tree edges; the result is
/// connected with feedback edge number exactly `k`.
pub fn tree_plus_k(n: usize, k: usize, seed: u64) -> Result<Trigraph> {
    let mut g = tree(n, seed)?;
    let free = n * n.saturating_sub(1) / 2 - (n - 1);
    if k > free {
        return Err(invalid(format!(
            "only {free} non-tree edges exist on {n} vertices"
        )));
    }
    let mut r = rng(seed.wrapping_add(1));
    let mut added = 0;
    // Rejection sampling is fine while non-edges are plentiful.
    let mut attempts = 0;
    while added < k && attempts < 64 * (k + 1) {
        attempts += 1;
        let u = VertexId(r.gen_range(0..n));
        let v = VertexId(r.gen_range(0..n));
        if u != v && g.edge(u, v).is_none() {
            g.add_edge(u, v, Color::Black)?;
            added += 1;
        }
    }
    if added < k {
        let missing: Vec<(VertexId, VertexId)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (VertexId(u), VertexId(v))))
            .filter(|&(u, v)| g.edge(u, v).is_none())
            .choose_multiple(&mut r, k - added);
        for (u, v) in missing {
            g.add_edge(u, v, Color::Black)?;
        }
    }
    Ok(g)
}

/// Erdős–Rényi graph; used by tests and sweeps.
pub fn gnp(n: usize, p: f64, seed: u64) -> Trigraph {
    let mut r = rng(seed);
    let mut g = Trigraph::with_vertices(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p.clamp(0.0, 1.0)) {
                g.add_edge(VertexId(u), VertexId(v), Color::Black)
                    .expect("fresh edge");
            }
        }
    }
    g
}

/// `core` on the first ids followed by `copies` disjoint copies of `comp`.
/// Each pair `(c, s)` of `attach` joins vertex `c` of every copy to core
/// vertex `s`.
pub fn replicated_components(
    core: &Trigraph,
    comp: &Trigraph,
    copies: usize,
    attach: &[(usize, usize)],
) -> Result<Trigraph> {
    let (core, _) = core.relabel_dense();
    let (comp, _) = comp.relabel_dense();
    let s = core.vertex_count();
    let t = comp.vertex_count();
    for &(c, x) in attach {
        if c >= t || x >= s {
            return Err(invalid(format!("attachment ({c}, {x}) out of range")));
        }
    }
    let mut g = Trigraph::with_vertices(s + copies * t);
    for (u, v, c) in core.edges() {
        g.add_edge(u, v, c)?;
    }
    for i in 0..copies {
        let off = s + i * t;
        for (u, v, c) in comp.edges() {
            g.add_edge(VertexId(off + u.0), VertexId(off + v.0), c)?;
        }
        for &(c, x) in attach {
            g.add_edge(VertexId(off + c), VertexId(x), Color::Black)?;
        }
    }
    Ok(g)
}

/// `q = p^e` for a prime `p`, if `q` is a prime power.
fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Arithmetic in `GF(p)[x] / f` with elements encoded base `p`.
struct Field {
    p: usize,
    e: usize,
    /// Low coefficients of the monic modulus of degree `e`.
    modulus: Vec<usize>,
}

impl Field {
    fn digits(&self, mut a: usize) -> Vec<usize> {
        let mut d = vec![0; self.e];
        for x in d.iter_mut() {
            *x = a % self.p;
            a /= self.p;
        }
        d
    }

    fn encode(&self, d: &[usize]) -> usize {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn sub(&self, a: usize, b: usize) -> usize {
        let (da, db) = (self.digits(a), self.digits(b));
        let d: Vec<usize> = da
            .iter()
            .zip(&db)
            .map(|(x, y)| (x + self.p - y) % self.p)
            .collect();
        self.encode(&d)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (p, e) = (self.p, self.e);
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0; 2 * e];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // x^e = -modulus(x); reduce from the top.
        for k in (e..2 * e).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, m) in self.modulus.iter().enumerate() {
                prod[k - e + i] = (prod[k - e + i] + (p - c) * m) % p;
            }
        }
        self.encode(&prod[..e])
    }

    /// Brute-force search for a modulus without zero divisors.
    fn new(p: usize, e: usize) -> Field {
        let q = p.pow(e as u32);
        for code in 0..q {
            let mut f = Field {
                p,
                e,
                modulus: vec![0; e],
            };
            f.modulus = f.digits(code);
            if e == 1 || (1..q).all(|a| (1..q).all(|b| f.mul(a, b) != 0)) {
                return f;
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }
}

/// Paley graph on `GF(q)`: `a ~ b` iff `a - b` is a non-zero square. Needs a
/// prime power `q ≡ 1 (mod 4)`.
pub fn paley(q: usize) -> Result<Trigraph> {
    let (p, e) = prime_power(q).ok_or_else(|| invalid(format!("{q} is not a prime power")))?;
    if q % 4 != 1 {
        return Err(invalid(format!("{q} is not 1 mod 4")));
    }
    if q > MAX_PALEY_ORDER {
        return Err(invalid(format!("order {q} exceeds {MAX_PALEY_ORDER}")));
    }
    let f = Field::new(p, e as usize);
    let squares: BTreeSet<usize> = (1..q).map(|a| f.mul(a, a)).collect();
    let mut g = Trigraph::with_vertices(q);
    for a in 0..q {
        for b in a + 1..q {
            if squares.contains(&f.sub(b, a)) {
                g.add_edge(VertexId(a), VertexId(b), Color::Black)?;
            }
        }
    }
    Ok(g)
}

/// A named, seeded instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum InstanceSpec {
    Paley {
        q: usize,
    },
    Tree {
        n: usize,
        seed: u64,
    },
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    TreePlusK {
        n: usize,
        k: usize,
        seed: u64,
    },
    /// Clique core of size `core`, `copies` paths on `component` vertices,
    /// the first vertex of each path joined to the whole core.
    ReplicatedComponents {
        core: usize,
        component: usize,
        copies: usize,
    },
    Figure1,
}

impl InstanceSpec {
    pub fn generate(&self) -> Result<Trigraph> {
        match *self {
            InstanceSpec::Paley { q } => paley(q),
            InstanceSpec::Tree { n, seed } => tree(n, seed),
            InstanceSpec::Cycle { n } => cycle(n),
            InstanceSpec::Complete { n } => Ok(complete(n)),
            InstanceSpec::TreePlusK { n, k, seed } => tree_plus_k(n, k, seed),
            InstanceSpec::ReplicatedComponents {
                core,
                component,
                copies,
            } => {
                if core == 0 || component == 0 {
                    return Err(invalid("core and component need at least one vertex"));
                }
                let attach: Vec<_> = (0..core).map(|s| (0, s)).collect();
                replicated_components(&complete(core), &path(component), copies, &attach)
            }
            InstanceSpec::Figure1 => Ok(fixtures::figure1()),
        }
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceSpec::Paley { q } => write!(f, "paley({q})"),
            InstanceSpec::Tree { n, seed } => write!(f, "tree({n}, seed={seed})"),
            InstanceSpec::Cycle { n } => write!(f, "cycle({n})"),
            InstanceSpec::Complete { n } => write!(f, "complete({n})"),
            InstanceSpec::TreePlusK { n, k, seed } => {
                write!(f, "tree_plus_k({n}, {k}, seed={seed})")
            }
            InstanceSpec::ReplicatedComponents {
                core,
                component,
                copies,
            } => {
                write!(f, "replicated_components({core}, {component}, {copies})")
            }
            InstanceSpec::Figure1 => write!(f, "figure1"),
        }
    }
}
