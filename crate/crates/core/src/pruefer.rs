//! Prüfer codes for forests with specified roots.
//!
//! `F(n, t)` is the set of forests on `{1..n}` with exactly `t` trees in which
//! the roots `1..t` lie in distinct trees. Repeatedly deleting the leaf with
//! the largest label and recording its neighbour gives a bijection onto
//! `S(n, t) = [n]^(n−t−1) × [t]`, and a vertex `v` appears in the code
//! `d(v)` times if it is a root, `d(v) − 1` times otherwise.

use std::collections::BinaryHeap;

use num_bigint::BigUint;
use rand::distr::{Distribution, Uniform};
use rand::Rng;

use crate::bins::throw_with;
use crate::error::{Error, ForestViolation, Result};
use crate::graph::{Degrees, Edge, LabeledGraph, Vertex};
use crate::seed::rng_from_seed;

/// A forest in `F(n, t)`; roots are the vertices `1..=t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedForest {
    t: usize,
    graph: LabeledGraph,
}

impl RootedForest {
    /// Checks every `F(n, t)` invariant and reports the first one violated.
    pub fn new(n: usize, t: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let invalid = |v| Err(Error::InvalidForest(v));
        if t == 0 || t > n {
            return invalid(ForestViolation::RootCount { n, t });
        }
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .map(|(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect();
        for &(u, v) in &edges {
            if u == 0 || v > n {
                return invalid(ForestViolation::VertexOutOfRange(if u == 0 {
                    u
                } else {
                    v
                }));
            }
            if u == v {
                return invalid(ForestViolation::SelfLoop(u));
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return invalid(ForestViolation::DuplicateEdge(w[0].0, w[0].1));
        }
        if edges.len() != n - t {
            return invalid(ForestViolation::EdgeCount {
                expected: n - t,
                found: edges.len(),
            });
        }
        // union-find: each set remembers its smallest label
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v) in &edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return invalid(ForestViolation::Cycle(u, v));
            }
            // keep the smaller representative so roots are found by label
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            if hi <= t {
                return invalid(ForestViolation::RootsConnected(lo, hi));
            }
            parent[hi] = lo;
        }
        Ok(RootedForest {
            t,
            graph: LabeledGraph::from_sorted_unchecked(n, edges),
        })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn edges(&self) -> &[Edge] {
        self.graph.edges()
    }

    pub fn as_graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn into_graph(self) -> LabeledGraph {
        self.graph
    }

    /// Largest degree among the roots `1..=t`.
    pub fn max_root_degree(&self) -> usize {
        self.graph.degree_sequence()[..self.t]
            .iter()
            .copied()
            .max()
            .unwrap_or(0)
    }
}

impl Degrees for RootedForest {
    fn degree_sequence(&self) -> Vec<usize> {
        self.graph.degree_sequence()
    }
}

/// An element of `S(n, t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrueferSequence {
    n: usize,
    t: usize,
    entries: Vec<Vertex>,
}

impl PrueferSequence {
    /// Length must be `n − t`, entries in `1..=n`, and the last entry a root.
    pub fn new(n: usize, t: usize, entries: Vec<Vertex>) -> Result<Self> {
        if t == 0 || t > n {
            return Err(Error::InvalidSequence(format!(
                "root count t={t} must satisfy 1 <= t <= n={n}"
            )));
        }
        if entries.len() != n - t {
            return Err(Error::InvalidSequence(format!(
                "length {} but n - t = {}",
                entries.len(),
                n - t
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::InvalidSequence(format!(
                "entry {bad} outside 1..={n}"
            )));
        }
        if let Some(&last) = entries.last() {
            if last > t {
                return Err(Error::InvalidSequence(format!(
                    "last entry {last} is not a root (t = {t})"
                )));
            }
        }
        Ok(PrueferSequence { n, t, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn entries(&self) -> &[Vertex] {
        &self.entries
    }
}

/// Number of occurrences of `v` in `s`.
pub fn occurrences(v: Vertex, s: &PrueferSequence) -> usize {
    s.entries.iter().filter(|&&e| e == v).count()
}

/// Degree of `v` in `decode(s)`: its occurrence count, plus one for non-roots.
pub fn degree_from_sequence(v: Vertex, s: &PrueferSequence) -> usize {
    occurrences(v, s) + usize::from(v > s.t)
}

/// Prüfer code of a rooted forest.
pub fn encode(forest: &RootedForest) -> PrueferSequence {
    let n = forest.n();
    let mut degree = vec![0usize; n + 1];
    // xor of the current neighbours; a leaf's xor is its only neighbour
    let mut neighbour_xor = vec![0usize; n + 1];
    for &(u, v) in forest.edges() {
        degree[u] += 1;
        degree[v] += 1;
        neighbour_xor[u] ^= v;
        neighbour_xor[v] ^= u;
    }
    let mut leaves: BinaryHeap<Vertex> = (1..=n).filter(|&v| degree[v] == 1).collect();
    let mut entries = Vec::with_capacity(n - forest.t());
    while entries.len() < n - forest.t() {
        let y = leaves.pop().expect("a forest with edges has a leaf");
        if degree[y] != 1 {
            continue;
        }
        debug_assert!(y > forest.t(), "roots are never the largest leaf");
        let x = neighbour_xor[y];
        entries.push(x);
        degree[y] = 0;
        degree[x] -= 1;
        neighbour_xor[x] ^= y;
        if degree[x] == 1 {
            leaves.push(x);
        }
    }
    PrueferSequence {
        n,
        t: forest.t(),
        entries,
    }
}

/// Inverse of [`encode`].
pub fn decode(s: &PrueferSequence) -> RootedForest {
    let (n, t) = (s.n, s.t);
    // non-roots start at one: d(v) = occurrences + 1
    let mut remaining: Vec<usize> = (0..=n).map(|v| usize::from(v > t)).collect();
    for &e in &s.entries {
        remaining[e] += 1;
    }
    let mut ones: BinaryHeap<Vertex> = (1..=n).filter(|&v| remaining[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - t);
    for &x in &s.entries {
        let y = loop {
            let y = ones
                .pop()
                .expect("the construction always has a vertex of multiplicity 1");
            if remaining[y] == 1 {
                break y;
            }
        };
        debug_assert_ne!(x, y);
        edges.push(if x < y { (x, y) } else { (y, x) });
        remaining[y] -= 1;
        remaining[x] -= 1;
        if remaining[x] == 1 {
            ones.push(x);
        }
    }
    edges.sort_unstable();
    RootedForest {
        t,
        graph: LabeledGraph::from_sorted_unchecked(n, edges),
    }
}

/// Uniform element of `S(n, t)` drawn with the caller's generator.
pub fn sample_sequence_with<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    t: usize,
) -> Result<PrueferSequence> {
    if t == 0 || t > n {
        return Err(Error::InvalidArgument(format!(
            "root count t={t} must satisfy 1 <= t <= n={n}"
        )));
    }
    if n == t {
        return Ok(PrueferSequence {
            n,
            t,
            entries: Vec::new(),
        });
    }
    let mut entries = throw_with(rng, n, n - t - 1)?.into_entries();
    entries.push(Uniform::new_inclusive(1, t).expect("t >= 1").sample(rng));
    Ok(PrueferSequence { n, t, entries })
}

/// Uniform forest in `F(n, t)` with the caller's generator.
pub fn sample_forest_with<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    t: usize,
) -> Result<RootedForest> {
    Ok(decode(&sample_sequence_with(rng, n, t)?))
}

/// Uniform forest in `F(n, t)`: `n − t − 1` balls into `n` bins, a uniform
/// root as the last entry, then [`decode`].
pub fn sample_forest(n: usize, t: usize, seed: u64) -> Result<RootedForest> {
    sample_forest_with(&mut rng_from_seed(seed), n, t)
}

/// `|F(n, t)| = t·n^(n−t−1)`, and 1 when `n = t`.
pub fn forest_count(n: usize, t: usize) -> Result<BigUint> {
    if t == 0 || t > n {
        return Err(Error::InvalidArgument(format!(
            "root count t={t} must satisfy 1 <= t <= n={n}"
        )));
    }
    if n == t {
        return Ok(BigUint::from(1u32));
    }
    let exp = u32::try_from(n - t - 1)
        .map_err(|_| Error::InvalidArgument(format!("exponent {} too large", n - t - 1)))?;
    Ok(BigUint::from(t) * BigUint::from(n).pow(exp))
}
