//! Labelled graphs, multigraphs and the complex-part / core decomposition.
//!
//! Vertices are labelled `1..=n`. A [`Subgraph`] is a slice of a larger graph
//! that keeps the original labels, so the pieces returned by [`split`] can be
//! compared against the input edge for edge.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Vertex = usize;
/// An unordered pair stored as `(smaller, larger)`.
pub type Edge = (Vertex, Vertex);

fn normalize((u, v): Edge) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Degree queries shared by every graph flavour.
pub trait Degrees {
    /// Degrees in vertex order; loops count twice.
    fn degree_sequence(&self) -> Vec<usize>;

    /// Largest entry of [`Degrees::degree_sequence`], 0 for edgeless graphs.
    fn max_degree(&self) -> usize {
        self.degree_sequence().into_iter().max().unwrap_or(0)
    }
}

/// A simple undirected graph on `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl LabeledGraph {
    /// Validates and canonicalises an edge list. Either endpoint order is
    /// accepted; loops, duplicates and out-of-range labels are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().map(normalize).collect();
        for &(u, v) in &edges {
            if u == 0 || v > n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{u}, {v}}} outside 1..={n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge {{{}, {}}}",
                w[0].0, w[0].1
            )));
        }
        Ok(LabeledGraph { n, edges })
    }

    /// Caller guarantees the edges are normalised, sorted, distinct and in range.
    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(u, v)| 1 <= u && u < v && v <= n));
        LabeledGraph { n, edges }
    }

    pub fn empty(n: usize) -> Self {
        LabeledGraph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted lexicographically, each as `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&normalize((u, v))).is_ok()
    }

    /// The whole graph as a slice.
    pub fn as_subgraph(&self) -> Subgraph {
        Subgraph {
            vertices: (1..=self.n).collect(),
            edges: self.edges.clone(),
        }
    }

    /// Applies `perm` (indexed by old label - 1, values are new labels).
    pub fn permuted(&self, perm: &[Vertex]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "permutation of length {} for {} vertices",
                perm.len(),
                self.n
            )));
        }
        LabeledGraph::new(
            self.n,
            self.edges.iter().map(|&(u, v)| (perm[u - 1], perm[v - 1])),
        )
    }
}

impl Degrees for LabeledGraph {
    fn degree_sequence(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u - 1] += 1;
            deg[v - 1] += 1;
        }
        deg
    }
}

/// An undirected multigraph on `{1..n}`; loops and parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let edges: Vec<Edge> = edges.into_iter().map(normalize).collect();
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u == 0 || v > n) {
            return Err(Error::InvalidGraph(format!(
                "edge {{{u}, {v}}} outside 1..={n}"
            )));
        }
        Ok(MultiGraph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in insertion order, endpoints normalised.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    pub fn is_simple(&self) -> bool {
        self.clone().into_simple().is_some()
    }

    /// The same graph as a [`LabeledGraph`], or `None` if it has a loop or a
    /// repeated edge.
    pub fn into_simple(self) -> Option<LabeledGraph> {
        if self.edges.iter().any(|(u, v)| u == v) {
            return None;
        }
        let mut edges = self.edges;
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(LabeledGraph::from_sorted_unchecked(self.n, edges))
    }
}

impl Degrees for MultiGraph {
    fn degree_sequence(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u - 1] += 1;
            deg[v - 1] += 1;
        }
        deg
    }
}

/// A subgraph that keeps the labels of the graph it was cut from.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Subgraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl Subgraph {
    /// Vertices sorted ascending, edges sorted and normalised; every edge
    /// endpoint must be one of the vertices.
    pub(crate) fn from_parts(mut vertices: Vec<Vertex>, mut edges: Vec<Edge>) -> Self {
        vertices.sort_unstable();
        edges.sort_unstable();
        debug_assert!(edges.iter().all(
            |&(u, v)| vertices.binary_search(&u).is_ok() && vertices.binary_search(&v).is_ok()
        ));
        Subgraph { vertices, edges }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// The slice embedded in a graph on `{1..n}` (other labels isolated).
    pub fn to_graph(&self, n: usize) -> Result<LabeledGraph> {
        LabeledGraph::new(n, self.edges.iter().copied())
    }

    /// Order-preserving relabelling onto `{1..vertex_count}`.
    pub fn relabeled(&self) -> LabeledGraph {
        let index = |v: Vertex| {
            self.vertices
                .binary_search(&v)
                .expect("edge endpoint in slice")
                + 1
        };
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (index(u), index(v)))
            .collect();
        LabeledGraph::from_sorted_unchecked(self.vertices.len(), edges)
    }
}

impl Degrees for Subgraph {
    /// Degrees in the order of [`Subgraph::vertices`].
    fn degree_sequence(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(u, v) in &self.edges {
            deg[self.vertices.binary_search(&u).expect("endpoint in slice")] += 1;
            deg[self.vertices.binary_search(&v).expect("endpoint in slice")] += 1;
        }
        deg
    }
}

/// Compressed adjacency lists, indexed by `label - 1`.
struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
}

impl Adjacency {
    fn new(n: usize, edges: &[Edge]) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in edges {
            offsets[u] += 1;
            offsets[v] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0; offsets[n]];
        for &(u, v) in edges {
            targets[fill[u - 1]] = v;
            fill[u - 1] += 1;
            targets[fill[v - 1]] = u;
            fill[v - 1] += 1;
        }
        Adjacency { offsets, targets }
    }

    fn neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[v - 1]..self.offsets[v]]
    }
}

/// A connected component: its vertices (ascending) and induced edge count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<Vertex>,
    pub edge_count: usize,
}

impl Component {
    /// `edges - vertices`; -1 for trees, 0 for unicyclic components.
    pub fn excess(&self) -> i64 {
        self.edge_count as i64 - self.vertices.len() as i64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Tree,
    Unicyclic,
    Complex,
}

struct Labelling {
    /// component index per vertex (`label - 1`)
    component_of: Vec<usize>,
    components: Vec<Component>,
}

fn label_components(n: usize, edges: &[Edge]) -> Labelling {
    let adj = Adjacency::new(n, edges);
    let mut component_of = vec![usize::MAX; n];
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    for start in 1..=n {
        if component_of[start - 1] != usize::MAX {
            continue;
        }
        let id = components.len();
        component_of[start - 1] = id;
        queue.push_back(start);
        let mut vertices = Vec::new();
        while let Some(v) = queue.pop_front() {
            vertices.push(v);
            for &w in adj.neighbours(v) {
                if component_of[w - 1] == usize::MAX {
                    component_of[w - 1] = id;
                    queue.push_back(w);
                }
            }
        }
        vertices.sort_unstable();
        components.push(Component {
            vertices,
            edge_count: 0,
        });
    }
    for &(u, _) in edges {
        components[component_of[u - 1]].edge_count += 1;
    }
    Labelling {
        component_of,
        components,
    }
}

/// Connected components, ordered by their smallest vertex.
pub fn components(g: &LabeledGraph) -> Vec<Component> {
    label_components(g.n, &g.edges).components
}

/// Classifies a connected component by its excess `edges - vertices`.
pub fn classify_component(vertex_count: usize, edge_count: usize) -> Result<ComponentKind> {
    if vertex_count == 0 || edge_count + 1 < vertex_count {
        return Err(Error::Disconnected {
            vertices: vertex_count,
            edges: edge_count,
        });
    }
    Ok(match edge_count as i64 - vertex_count as i64 {
        -1 => ComponentKind::Tree,
        0 => ComponentKind::Unicyclic,
        _ => ComponentKind::Complex,
    })
}

fn is_complex(c: &Component) -> bool {
    c.excess() >= 1
}

fn collect_slice(g: &LabeledGraph, keep: impl Fn(Vertex) -> bool) -> Subgraph {
    let vertices = (1..=g.n).filter(|&v| keep(v)).collect();
    let edges = g
        .edges
        .iter()
        .copied()
        .filter(|&(u, v)| keep(u) && keep(v))
        .collect();
    Subgraph { vertices, edges }
}

fn complex_mask(g: &LabeledGraph, labelling: &Labelling) -> Vec<bool> {
    let complex: Vec<bool> = labelling.components.iter().map(is_complex).collect();
    (1..=g.n)
        .map(|v| complex[labelling.component_of[v - 1]])
        .collect()
}

/// Union of all components with at least two cycles.
pub fn complex_part(g: &LabeledGraph) -> Subgraph {
    let labelling = label_components(g.n, &g.edges);
    let mask = complex_mask(g, &labelling);
    collect_slice(g, |v| mask[v - 1])
}

/// Peels vertices of degree <= 1 from the masked part of `g`; returns the mask
/// of surviving vertices.
fn peel(g: &LabeledGraph, mut alive: Vec<bool>) -> Vec<bool> {
    let inside: Vec<Edge> = g
        .edges
        .iter()
        .copied()
        .filter(|&(u, v)| alive[u - 1] && alive[v - 1])
        .collect();
    let adj = Adjacency::new(g.n, &inside);
    let mut deg: Vec<usize> = (1..=g.n).map(|v| adj.neighbours(v).len()).collect();
    let mut work: Vec<Vertex> = (1..=g.n)
        .filter(|&v| alive[v - 1] && deg[v - 1] <= 1)
        .collect();
    while let Some(v) = work.pop() {
        if !alive[v - 1] {
            continue;
        }
        alive[v - 1] = false;
        for &w in adj.neighbours(v) {
            if alive[w - 1] {
                deg[w - 1] -= 1;
                if deg[w - 1] == 1 {
                    work.push(w);
                }
            }
        }
    }
    alive
}

/// Maximal subgraph of the complex part with minimum degree at least two.
pub fn core_of(g: &LabeledGraph) -> Subgraph {
    let labelling = label_components(g.n, &g.edges);
    let alive = peel(g, complex_mask(g, &labelling));
    collect_slice(g, |v| alive[v - 1])
}

/// The three-way split `H = B_L ⊎ B_S ⊎ B_N` together with the core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Complex component holding the largest core component.
    pub large_complex: Subgraph,
    /// The remaining complex components.
    pub small_complex: Subgraph,
    /// Trees and unicyclic components, including isolated vertices.
    pub non_complex: Subgraph,
    pub core: Subgraph,
    pub core_largest_component: Vec<Vertex>,
}

/// Splits `g` into large complex, small complex and non-complex parts.
///
/// The largest core component is the one with most vertices; ties go to the
/// component containing the smallest label.
pub fn split(g: &LabeledGraph) -> Decomposition {
    let labelling = label_components(g.n, &g.edges);
    let mask = complex_mask(g, &labelling);
    let alive = peel(g, mask.clone());
    let core = collect_slice(g, |v| alive[v - 1]);

    let core_labelling = label_components(g.n, core.edges());
    // components come out ordered by smallest label, so a strict `>` keeps
    // the smallest-label component among equally large ones
    let mut best: Option<&Component> = None;
    for c in &core_labelling.components {
        if !alive[c.vertices[0] - 1] {
            continue;
        }
        if best.is_none_or(|b| c.vertices.len() > b.vertices.len()) {
            best = Some(c);
        }
    }
    let core_largest_component = best.map(|c| c.vertices.clone()).unwrap_or_default();
    let large_id = core_largest_component
        .first()
        .map(|&v| labelling.component_of[v - 1]);

    let in_large = |v: Vertex| Some(labelling.component_of[v - 1]) == large_id;
    Decomposition {
        large_complex: collect_slice(g, in_large),
        small_complex: collect_slice(g, |v| mask[v - 1] && !in_large(v)),
        non_complex: collect_slice(g, |v| !mask[v - 1]),
        core,
        core_largest_component,
    }
}
