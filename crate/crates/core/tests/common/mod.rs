#![allow(dead_code)]

use std::collections::BTreeSet;

pub type EdgeSet = BTreeSet<(usize, usize)>;

/// Every forest on `{1..n}` with `t` trees whose roots `1..t` lie in
/// different trees, found by checking all `(n − t)`-subsets of the edges
/// of `K_n`.
pub fn brute_force_forests(n: usize, t: usize) -> Vec<EdgeSet> {
    let all: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    let size = n - t;
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (0..size).collect();
    if size > all.len() {
        return out;
    }
    loop {
        let edges: Vec<(usize, usize)> = pick.iter().map(|&i| all[i]).collect();
        if spans_rooted_forest(n, t, &edges) {
            out.push(edges.into_iter().collect());
        }
        let Some(pos) = (0..size).rev().find(|&i| pick[i] < all.len() - size + i) else {
            break;
        };
        pick[pos] += 1;
        for j in pos + 1..size {
            pick[j] = pick[j - 1] + 1;
        }
    }
    out
}

fn spans_rooted_forest(n: usize, t: usize, edges: &[(usize, usize)]) -> bool {
    // plain labels, no ranks: n is tiny
    let mut comp: Vec<usize> = (0..=n).collect();
    for &(u, v) in edges {
        let (a, b) = (comp[u], comp[v]);
        if a == b {
            return false;
        }
        for c in comp.iter_mut() {
            if *c == b {
                *c = a;
            }
        }
    }
    let roots: BTreeSet<usize> = (1..=t).map(|r| comp[r]).collect();
    roots.len() == t
}

/// All sequences of length `n − t` over `{1..n}` whose last entry is at most
/// `t`; the empty sequence when `n = t`.
pub fn all_sequences(n: usize, t: usize) -> Vec<Vec<usize>> {
    let len = n - t;
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur = vec![1usize; len];
    loop {
        if cur[len - 1] <= t {
            out.push(cur.clone());
        }
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n {
                cur[i] += 1;
                break;
            }
            cur[i] = 1;
        }
    }
}

use degree_lab::samplers::{CoreGraph, PipelineSpec};
use degree_lab::LabeledGraph;

pub fn k4() -> CoreGraph {
    CoreGraph::new(LabeledGraph::new(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap())
        .unwrap()
}

/// Cubic graph on `c` vertices (c even, c >= 6): a `c`-cycle plus the `c/2`
/// long diagonals.
pub fn mobius_ladder(c: usize) -> LabeledGraph {
    let cycle = (1..=c).map(|i| (i, i % c + 1));
    let diagonals = (1..=c / 2).map(|i| (i, i + c / 2));
    LabeledGraph::new(c, cycle.chain(diagonals)).unwrap()
}

/// A cubic ladder on `1..c` followed by a K4 on `c+1..c+4`.
pub fn ladder_and_k4(c: usize) -> CoreGraph {
    let ladder = mobius_ladder(c);
    let k4 = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)].map(|(a, b)| (a + c, b + c));
    CoreGraph::new(LabeledGraph::new(c + 4, ladder.edges().iter().copied().chain(k4)).unwrap())
        .unwrap()
}

/// `m = n/2 + 4000` at `n = 10^5`: past the critical window, below `n/20`.
pub fn regime_two_spec() -> PipelineSpec {
    let n = 100_000;
    let s = 4_000;
    PipelineSpec::new(ladder_and_k4(40), 2 * s, 50, n, n / 2 + s).unwrap()
}

/// `m = 3n/4` at `n = 10^5`.
pub fn regime_three_spec() -> PipelineSpec {
    let n = 100_000;
    PipelineSpec::new(ladder_and_k4(200), 60_000, 30, n, 3 * n / 4).unwrap()
}
