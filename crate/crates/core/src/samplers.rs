//! Samplers for `G(n, m)`, complex-free graphs, complex parts and the
//! three-part pipeline that assembles a graph from a prescribed core.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bins::throw_with;
use crate::error::{Error, Result};
use crate::graph::{components, Component, Degrees, Edge, LabeledGraph, MultiGraph, Subgraph};
use crate::pruefer::{sample_forest_with, RootedForest};
use crate::seed::{rng_from_seed, trial_seed};

pub const DEFAULT_GNM_CAP: u64 = 10_000;
pub const DEFAULT_CS_CAP: u64 = 100_000;
/// Largest class `exact_census_gnm` will enumerate.
pub const CENSUS_LIMIT: u64 = 10_000;

/// Attempt limits for the rejection samplers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerCaps {
    /// Multigraph draws per `G(n, m)` sample.
    pub gnm: u64,
    /// `G(n, m)` draws per complex-free sample.
    pub cs: u64,
}

impl Default for SamplerCaps {
    fn default() -> Self {
        SamplerCaps {
            gnm: DEFAULT_GNM_CAP,
            cs: DEFAULT_CS_CAP,
        }
    }
}

/// Multigraph with edges `{R_{2i−1}, R_{2i}}` from `2m` balls in `n` bins.
/// The degree of `v` is the load of bin `v`.
pub fn sample_multigraph_with<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
) -> Result<MultiGraph> {
    let balls = throw_with(rng, n, 2 * m)?.into_entries();
    MultiGraph::new(n, balls.chunks_exact(2).map(|p| (p[0], p[1])))
}

pub fn sample_multigraph(n: usize, m: usize, seed: u64) -> Result<MultiGraph> {
    sample_multigraph_with(&mut rng_from_seed(seed), n, m)
}

/// A `G(n, m)` sample and the number of non-simple multigraphs discarded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GnmDraw {
    pub graph: LabeledGraph,
    pub rejections: u64,
}

fn max_edges(n: usize) -> u128 {
    n as u128 * n.saturating_sub(1) as u128 / 2
}

/// Uniform simple graph on `{1..n}` with `m` edges: draw pairing multigraphs
/// until one is simple.
pub fn sample_gnm_with<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    cap: u64,
) -> Result<GnmDraw> {
    if m as u128 > max_edges(n) {
        return Err(Error::InvalidArgument(format!(
            "{m} edges do not fit in a simple graph on {n} vertices"
        )));
    }
    if m == 0 {
        return Ok(GnmDraw {
            graph: LabeledGraph::empty(n),
            rejections: 0,
        });
    }
    for rejections in 0..cap {
        if let Some(graph) = sample_multigraph_with(rng, n, m)?.into_simple() {
            return Ok(GnmDraw { graph, rejections });
        }
    }
    Err(Error::RejectionCapExceeded {
        sampler: "G(n,m)",
        attempts: cap,
    })
}

pub fn sample_gnm(n: usize, m: usize, seed: u64) -> Result<GnmDraw> {
    sample_gnm_with(&mut rng_from_seed(seed), n, m, DEFAULT_GNM_CAP)
}

/// A complex-free sample with its rejection statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsDraw {
    pub graph: LabeledGraph,
    /// `G(n, m)` draws made, the accepted one included.
    pub attempts: u64,
    /// Non-simple multigraphs discarded along the way.
    pub multigraph_rejections: u64,
}

impl CsDraw {
    pub fn acceptance_fraction(&self) -> f64 {
        1.0 / self.attempts as f64
    }
}

/// True when every component is a tree or unicyclic.
pub fn is_complex_free(g: &LabeledGraph) -> bool {
    components(g).iter().all(|c| c.excess() <= 0)
}

/// Uniform graph on `{1..n}` with `m` edges and no complex component, by
/// rejection from `G(n, m)`.
pub fn sample_cs_with<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    caps: SamplerCaps,
) -> Result<CsDraw> {
    if m > n {
        return Err(Error::InvalidArgument(format!(
            "a complex-free graph on {n} vertices has at most {n} edges, asked for {m}"
        )));
    }
    let mut multigraph_rejections = 0;
    for attempt in 1..=caps.cs {
        let draw = sample_gnm_with(rng, n, m, caps.gnm)?;
        multigraph_rejections += draw.rejections;
        if is_complex_free(&draw.graph) {
            return Ok(CsDraw {
                graph: draw.graph,
                attempts: attempt,
                multigraph_rejections,
            });
        }
    }
    Err(Error::RejectionCapExceeded {
        sampler: "CS(n,m)",
        attempts: caps.cs,
    })
}

pub fn sample_cs(n: usize, m: usize, seed: u64) -> Result<CsDraw> {
    sample_cs_with(&mut rng_from_seed(seed), n, m, SamplerCaps::default())
}

/// A graph on `{1..c}` in which every vertex has degree at least two.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoreGraph(LabeledGraph);

impl CoreGraph {
    pub fn new(graph: LabeledGraph) -> Result<Self> {
        if let Some(v) = graph.degree_sequence().iter().position(|&d| d < 2) {
            return Err(Error::InvalidGraph(format!(
                "core vertex {} has degree below two",
                v + 1
            )));
        }
        Ok(CoreGraph(graph))
    }

    pub fn empty() -> Self {
        CoreGraph(LabeledGraph::empty(0))
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.0
    }

    pub fn vertex_count(&self) -> usize {
        self.0.n()
    }

    pub fn edge_count(&self) -> usize {
        self.0.edge_count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.n() == 0
    }

    /// The largest component (ties to the smallest label) and the rest,
    /// each relabelled order-preservingly onto `{1..}`.
    pub fn split_largest(&self) -> (CoreGraph, CoreGraph) {
        let comps = components(&self.0);
        let Some(largest) = comps.iter().reduce(|best, c| {
            if c.vertices.len() > best.vertices.len() {
                c
            } else {
                best
            }
        }) else {
            return (CoreGraph::empty(), CoreGraph::empty());
        };
        let in_largest = |v: usize| largest.vertices.binary_search(&v).is_ok();
        let part = |keep: &dyn Fn(usize) -> bool| {
            let vertices = (1..=self.0.n()).filter(|&v| keep(v)).collect();
            let edges = self
                .0
                .edges()
                .iter()
                .copied()
                .filter(|&(u, _)| keep(u))
                .collect();
            CoreGraph(Subgraph::from_parts(vertices, edges).relabeled())
        };
        (part(&in_largest), part(&|v| !in_largest(v)))
    }

    fn check_complex_components(&self) -> Result<()> {
        match components(&self.0).iter().find(|c| c.excess() < 1) {
            Some(Component { vertices, .. }) => Err(Error::InvalidGraph(format!(
                "core component containing vertex {} has fewer than two cycles",
                vertices[0]
            ))),
            None => Ok(()),
        }
    }
}

/// A complex graph with prescribed core and the forest used to build it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexDraw {
    pub graph: LabeledGraph,
    pub forest: RootedForest,
}

/// Uniform complex graph on `{1..q}` with core `core`: a uniform forest in
/// `F(q, v(C))` is drawn and core vertex `r` is replaced by the tree rooted
/// at `r`. Degrees satisfy `d(v) = d_C(v) + d_F(v)` on the core and `d_F(v)`
/// elsewhere.
pub fn sample_complex_with<R: Rng + ?Sized>(
    rng: &mut R,
    core: &CoreGraph,
    q: usize,
) -> Result<ComplexDraw> {
    if core.is_empty() {
        return Err(Error::InvalidArgument("the core must be nonempty".into()));
    }
    if q < core.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "q = {q} is smaller than the core order {}",
            core.vertex_count()
        )));
    }
    core.check_complex_components()?;
    let forest = sample_forest_with(rng, q, core.vertex_count())?;
    let graph = LabeledGraph::new(
        q,
        forest.edges().iter().chain(core.graph().edges()).copied(),
    )?;
    Ok(ComplexDraw { graph, forest })
}

pub fn sample_complex(core: &CoreGraph, q: usize, seed: u64) -> Result<ComplexDraw> {
    sample_complex_with(&mut rng_from_seed(seed), core, q)
}

/// Core plus target orders for the pipeline sampler.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineSpec {
    core: CoreGraph,
    largest: CoreGraph,
    rest: CoreGraph,
    l: usize,
    r: usize,
    n: usize,
    m: usize,
}

impl PipelineSpec {
    /// `l` and `r` are the orders of the large and small complex parts; the
    /// non-complex part gets `u = n − l − r` vertices and
    /// `w = m − e(C) + v(C) − l − r` edges.
    pub fn new(core: CoreGraph, l: usize, r: usize, n: usize, m: usize) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        let (largest, rest) = core.split_largest();
        if l < largest.vertex_count() || (l > 0 && largest.is_empty()) {
            return bad(format!(
                "l = {l} incompatible with a largest core component of order {}",
                largest.vertex_count()
            ));
        }
        if r < rest.vertex_count() || (r > 0 && rest.is_empty()) {
            return bad(format!(
                "r = {r} incompatible with a remaining core of order {}",
                rest.vertex_count()
            ));
        }
        if l + r > n {
            return bad(format!("l + r = {} exceeds n = {n}", l + r));
        }
        let w = m as i64 - core.edge_count() as i64 + core.vertex_count() as i64 - (l + r) as i64;
        let u = n - l - r;
        if w < 0 || w as usize > u {
            return bad(format!(
                "non-complex part would need {w} edges on {u} vertices"
            ));
        }
        core.check_complex_components()?;
        Ok(PipelineSpec {
            core,
            largest,
            rest,
            l,
            r,
            n,
            m,
        })
    }

    pub fn core(&self) -> &CoreGraph {
        &self.core
    }
    pub fn l(&self) -> usize {
        self.l
    }
    pub fn r(&self) -> usize {
        self.r
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn m(&self) -> usize {
        self.m
    }
    /// Order of the non-complex part.
    pub fn u(&self) -> usize {
        self.n - self.l - self.r
    }
    /// Size of the non-complex part.
    pub fn w(&self) -> usize {
        self.m + self.core.vertex_count() - self.core.edge_count() - self.l - self.r
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineOptions {
    /// Apply a uniform relabelling after assembling the blocks.
    pub shuffle_labels: bool,
    pub caps: SamplerCaps,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineDraw {
    pub graph: LabeledGraph,
    /// `G(n, m)` draws spent on the non-complex part.
    pub cs_attempts: u64,
}

/// Draws the large complex part on `{1..l}`, the small complex part on
/// `{l+1..l+r}` and the complex-free part on `{l+r+1..n}`, independently.
pub fn sample_pipeline_with<R: Rng + ?Sized>(
    rng: &mut R,
    spec: &PipelineSpec,
    options: PipelineOptions,
) -> Result<PipelineDraw> {
    let mut edges: Vec<Edge> = Vec::with_capacity(spec.m);
    let mut place = |g: &LabeledGraph, offset: usize| {
        edges.extend(g.edges().iter().map(|&(u, v)| (u + offset, v + offset)));
    };
    if spec.l > 0 {
        place(&sample_complex_with(rng, &spec.largest, spec.l)?.graph, 0);
    }
    if spec.r > 0 {
        place(&sample_complex_with(rng, &spec.rest, spec.r)?.graph, spec.l);
    }
    let mut cs_attempts = 0;
    if spec.u() > 0 {
        let cs = sample_cs_with(rng, spec.u(), spec.w(), options.caps)?;
        cs_attempts = cs.attempts;
        place(&cs.graph, spec.l + spec.r);
    }
    let mut graph = LabeledGraph::new(spec.n, edges)?;
    if options.shuffle_labels {
        let mut perm: Vec<usize> = (1..=spec.n).collect();
        perm.shuffle(rng);
        graph = graph.permuted(&perm)?;
    }
    Ok(PipelineDraw { graph, cs_attempts })
}

pub fn sample_pipeline(
    spec: &PipelineSpec,
    seed: u64,
    options: PipelineOptions,
) -> Result<PipelineDraw> {
    sample_pipeline_with(&mut rng_from_seed(seed), spec, options)
}

/// Every simple graph on `{1..n}` with `m` edges, in lexicographic order of
/// edge lists.
#[derive(Debug, Clone)]
pub struct GnmEnumeration {
    n: usize,
    m: usize,
    graphs: Vec<Vec<Edge>>,
    index: HashMap<Vec<Edge>, usize>,
}

fn binomial_u128(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

impl GnmEnumeration {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        let slots = max_edges(n);
        let count = binomial_u128(slots, m as u128).filter(|&c| c > 0 && c <= CENSUS_LIMIT as u128);
        let Some(count) = count else {
            return Err(Error::InvalidArgument(format!(
                "G({n},{m}) is empty or has more than {CENSUS_LIMIT} graphs"
            )));
        };
        let all: Vec<Edge> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        let mut graphs = Vec::with_capacity(count as usize);
        let mut pick: Vec<usize> = (0..m).collect();
        loop {
            graphs.push(pick.iter().map(|&i| all[i]).collect::<Vec<_>>());
            // next m-combination of 0..all.len()
            let Some(pos) = (0..m).rev().find(|&i| pick[i] < all.len() - m + i) else {
                break;
            };
            pick[pos] += 1;
            for j in pos + 1..m {
                pick[j] = pick[j - 1] + 1;
            }
        }
        debug_assert_eq!(graphs.len() as u128, count);
        let index = graphs
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect();
        Ok(GnmEnumeration {
            n,
            m,
            graphs,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn graphs(&self) -> &[Vec<Edge>] {
        &self.graphs
    }

    pub fn index_of(&self, g: &LabeledGraph) -> Option<usize> {
        if g.n() != self.n || g.edge_count() != self.m {
            return None;
        }
        self.index.get(g.edges()).copied()
    }
}

/// Empirical `G(n, m)` law against the uniform law on the enumerated class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusReport {
    pub n: usize,
    pub m: usize,
    pub graph_count: usize,
    pub trials: u64,
    pub counts: Vec<u64>,
    pub tv_distance: f64,
    pub chi_square: f64,
    /// Set when fewer than five samples per graph were drawn.
    pub insufficient_samples: bool,
}

/// Total-variation distance and Pearson statistic of `counts` against the
/// uniform law. With no samples the distance is `1 − 1/len` by convention.
pub fn uniform_fit(counts: &[u64]) -> (f64, f64) {
    let cells = counts.len() as f64;
    let trials: u64 = counts.iter().sum();
    if trials == 0 {
        return (1.0 - 1.0 / cells, 0.0);
    }
    let total = trials as f64;
    let expected = total / cells;
    let tv = counts
        .iter()
        .map(|&c| (c as f64 / total - 1.0 / cells).abs())
        .sum::<f64>()
        / 2.0;
    let chi = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    (tv, chi)
}

/// Runs `trials` independent `G(n, m)` draws (trial `i` seeded with
/// `trial_seed(seed, i)`) and compares them with the enumerated class.
pub fn exact_census_gnm(n: usize, m: usize, trials: u64, seed: u64) -> Result<CensusReport> {
    let class = GnmEnumeration::new(n, m)?;
    let indices: Vec<usize> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let draw = sample_gnm(n, m, trial_seed(seed, i))?;
            Ok(class
                .index_of(&draw.graph)
                .expect("sampled graph is in the class"))
        })
        .collect::<Result<_>>()?;
    let mut counts = vec![0u64; class.len()];
    for i in indices {
        counts[i] += 1;
    }
    let (tv_distance, chi_square) = uniform_fit(&counts);
    Ok(CensusReport {
        n,
        m,
        graph_count: class.len(),
        trials,
        counts,
        tv_distance,
        chi_square,
        insufficient_samples: trials < 5 * class.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::core_of;

    fn k4() -> CoreGraph {
        CoreGraph::new(
            LabeledGraph::new(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn multigraph_degrees_are_loads() {
        let seed = 8;
        let mg = sample_multigraph(50, 40, seed).unwrap();
        let loc = crate::bins::throw(50, 80, seed).unwrap();
        assert_eq!(mg.degree_sequence(), crate::bins::loads(&loc).loads());
        assert_eq!(mg.edge_count(), 40);
    }

    #[test]
    fn two_vertex_multigraph_loops_half_the_time() {
        let mut rng = rng_from_seed(1);
        let loops = (0..20_000)
            .filter(|_| sample_multigraph_with(&mut rng, 2, 1).unwrap().loop_count() == 1)
            .count();
        assert!((loops as f64 / 20_000.0 - 0.5).abs() < 0.02);
    }

    #[test]
    fn triangle_is_forced() {
        for seed in 0..20 {
            let g = sample_gnm(3, 3, seed).unwrap().graph;
            assert_eq!(g.edges(), &[(1, 2), (1, 3), (2, 3)]);
        }
        assert!(sample_gnm(3, 4, 0).is_err());
    }

    #[test]
    fn gnm_cap_is_reported() {
        // K5 from pairings is rare enough to exhaust a tiny cap
        let err = sample_gnm_with(&mut rng_from_seed(0), 5, 10, 1).unwrap_err();
        assert!(matches!(err, Error::RejectionCapExceeded { .. }));
    }

    #[test]
    fn cs_empty_graph() {
        let d = sample_cs(4, 0, 3).unwrap();
        assert_eq!(d.graph.edge_count(), 0);
        assert_eq!(d.attempts, 1);
        assert_eq!(d.multigraph_rejections, 0);
        assert!(sample_cs(4, 5, 3).is_err());
    }

    #[test]
    fn cs_output_is_complex_free() {
        for seed in 0..30 {
            let d = sample_cs(200, 100, seed).unwrap();
            assert!(crate::graph::complex_part(&d.graph).is_empty());
            assert_eq!(d.graph.edge_count(), 100);
        }
    }

    #[test]
    fn complex_with_q_equal_core() {
        let d = sample_complex(&k4(), 4, 5).unwrap();
        assert_eq!(&d.graph, k4().graph());
    }

    #[test]
    fn complex_recovers_core_and_degrees() {
        for seed in 0..50 {
            let d = sample_complex(&k4(), 10, seed).unwrap();
            let core = core_of(&d.graph);
            assert_eq!(core.vertices(), &[1, 2, 3, 4]);
            assert_eq!(core.edges(), k4().graph().edges());
            let (dq, df, dc) = (
                d.graph.degree_sequence(),
                d.forest.degree_sequence(),
                k4().graph().degree_sequence(),
            );
            for v in 0..10 {
                let expect = df[v] + if v < 4 { dc[v] } else { 0 };
                assert_eq!(dq[v], expect);
            }
        }
    }

    #[test]
    fn complex_rejections() {
        assert!(sample_complex(&k4(), 3, 0).is_err());
        assert!(sample_complex(&CoreGraph::empty(), 3, 0).is_err());
        let cycle =
            CoreGraph::new(LabeledGraph::new(3, [(1, 2), (2, 3), (1, 3)]).unwrap()).unwrap();
        assert!(sample_complex(&cycle, 10, 0).is_err());
        assert!(CoreGraph::new(LabeledGraph::new(3, [(1, 2), (2, 3)]).unwrap()).is_err());
    }

    #[test]
    fn split_largest_relabels() {
        // theta graph on {2,4,5,6,7}, K4 on {1,3,8,9}
        let edges = [
            (2, 5),
            (5, 4),
            (2, 6),
            (6, 4),
            (2, 7),
            (7, 4),
            (1, 3),
            (1, 8),
            (1, 9),
            (3, 8),
            (3, 9),
            (8, 9),
        ];
        let core = CoreGraph::new(LabeledGraph::new(9, edges).unwrap()).unwrap();
        let (largest, rest) = core.split_largest();
        assert_eq!(largest.vertex_count(), 5);
        assert_eq!(rest.graph(), k4().graph());
    }

    #[test]
    fn degenerate_pipeline_is_cs() {
        let spec = PipelineSpec::new(CoreGraph::empty(), 0, 0, 60, 25).unwrap();
        let a = sample_pipeline(&spec, 4, PipelineOptions::default()).unwrap();
        let b = sample_cs(60, 25, 4).unwrap();
        assert_eq!(a.graph, b.graph);
    }

    #[test]
    fn pipeline_spec_validation() {
        assert!(PipelineSpec::new(CoreGraph::empty(), 1, 0, 10, 3).is_err());
        assert!(PipelineSpec::new(k4(), 3, 0, 10, 3).is_err());
        assert!(PipelineSpec::new(k4(), 4, 2, 10, 3).is_err());
        assert!(PipelineSpec::new(k4(), 8, 0, 7, 3).is_err());
        // w = m - 6 + 4 - 5 must be in [0, u]
        assert!(PipelineSpec::new(k4(), 5, 0, 10, 6).is_err());
        assert!(PipelineSpec::new(k4(), 5, 0, 10, 13).is_err());
        let spec = PipelineSpec::new(k4(), 5, 0, 10, 9).unwrap();
        assert_eq!((spec.u(), spec.w()), (5, 2));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(GnmEnumeration::new(3, 2).unwrap().len(), 3);
        assert_eq!(GnmEnumeration::new(4, 3).unwrap().len(), 20);
        assert_eq!(GnmEnumeration::new(4, 0).unwrap().len(), 1);
        assert!(GnmEnumeration::new(8, 10).is_err());
        assert!(GnmEnumeration::new(3, 4).is_err());
    }

    #[test]
    fn census_without_trials_is_flagged() {
        let r = exact_census_gnm(3, 2, 0, 1).unwrap();
        assert!(r.insufficient_samples);
        assert!((r.tv_distance - (1.0 - 1.0 / 3.0)).abs() < 1e-15);
    }
}
