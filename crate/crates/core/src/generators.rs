//! Deterministic instance generators.
//!
//! Randomized generators draw from `ChaCha8Rng::seed_from_u64(seed)`, whose
//! output stream is fixed by the ChaCha specification, so a seed yields the
//! same graph on every platform.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{Graph, VertexId};

/// The cycle on `n ≥ 2` vertices.
pub fn gen_cycle(n: usize) -> Graph {
    assert!(n >= 2, "cycles need two vertices");
    Graph::from_valid(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

/// The path with `len` edges.
pub fn gen_chain(len: usize) -> Graph {
    Graph::from_valid(len + 1, (0..len).map(|i| (i, i + 1)).collect())
}

#[derive(Default)]
struct Builder {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
}

impl Builder {
    fn vertex(&mut self) -> VertexId {
        self.n += 1;
        self.n - 1
    }

    /// Chain of `len` edges from `s` to `t`; returns its vertices.
    fn chain(&mut self, s: VertexId, t: VertexId, len: usize) -> Vec<VertexId> {
        let mut vs = vec![s];
        for _ in 1..len {
            let w = self.vertex();
            vs.push(w);
        }
        vs.push(t);
        for w in vs.windows(2) {
            self.edges.push((w[0], w[1]));
        }
        vs
    }

    fn finish(self) -> Graph {
        Graph::from_valid(self.n, self.edges)
    }
}

/// A member of the lower-bound family with its labelled innermost chains.
#[derive(Debug, Clone, Serialize)]
pub struct LowerBound {
    #[serde(skip)]
    pub graph: Graph,
    /// Vertices of every copy of the innermost chain, pole to pole.
    pub g0_components: Vec<Vec<VertexId>>,
}

impl LowerBound {
    pub fn sidecar_json(&self) -> String {
        serde_json::to_string(self).expect("sidecar serializes")
    }
}

/// The graph whose rectilinear representations force an innermost chain
/// to spiral by `n_param + 2`: two nested three-way bundles of depth
/// `n_param / 2 + 1` closed into a cycle with two 2-edge chains.
pub fn gen_lowerbound(n_param: usize) -> LowerBound {
    assert!(
        n_param >= 2 && n_param.is_multiple_of(2),
        "parameter must be even and at least 2"
    );
    let depth = n_param / 2 + 1;
    let mut b = Builder::default();
    let mut g0 = Vec::new();

    fn nested(
        b: &mut Builder,
        g0: &mut Vec<Vec<VertexId>>,
        k: usize,
        s: VertexId,
        t: VertexId,
        n_param: usize,
    ) {
        for _ in 0..3 {
            if k == 1 {
                g0.push(b.chain(s, t, n_param + 3));
            } else {
                let a = b.vertex();
                let c = b.vertex();
                b.edges.push((s, a));
                nested(b, g0, k - 1, a, c, n_param);
                b.edges.push((c, t));
            }
        }
    }

    let x = b.vertex();
    let y = b.vertex();
    let z = b.vertex();
    let w = b.vertex();
    b.chain(x, y, 2);
    nested(&mut b, &mut g0, depth, y, z, n_param);
    b.chain(z, w, 2);
    nested(&mut b, &mut g0, depth, w, x, n_param);
    LowerBound {
        graph: b.finish(),
        g0_components: g0,
    }
}

/// Two-terminal series-parallel expression.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SpExpr {
    Chain(usize),
    Series(Vec<SpExpr>),
    Parallel(Vec<SpExpr>),
}

impl SpExpr {
    pub fn edge_count(&self) -> usize {
        match self {
            SpExpr::Chain(l) => *l,
            SpExpr::Series(c) | SpExpr::Parallel(c) => c.iter().map(SpExpr::edge_count).sum(),
        }
    }

    fn build(&self, b: &mut Builder, s: VertexId, t: VertexId) {
        match self {
            SpExpr::Chain(l) => {
                b.chain(s, t, *l);
            }
            SpExpr::Series(parts) => {
                let mut cur = s;
                for (i, p) in parts.iter().enumerate() {
                    let next = if i + 1 == parts.len() { t } else { b.vertex() };
                    p.build(b, cur, next);
                    cur = next;
                }
            }
            SpExpr::Parallel(parts) => {
                for p in parts {
                    p.build(b, s, t);
                }
            }
        }
    }

    /// The graph of this network with its poles joined by a chain of
    /// `closing` edges.
    pub fn close(&self, closing: usize) -> Graph {
        let mut b = Builder::default();
        let s = b.vertex();
        let t = b.vertex();
        self.build(&mut b, s, t);
        b.chain(t, s, closing);
        b.finish()
    }
}

/// All two-terminal networks with exactly `e` edges, built from single
/// edges. Series parts are never series, parallel parts never parallel,
/// and parallel parts are sorted, so each network appears once up to
/// reordering of parallel parts.
fn networks(max_e: usize) -> Vec<Vec<SpExpr>> {
    let mut all: Vec<Vec<SpExpr>> = vec![Vec::new(); max_e + 1];
    let mut non_series: Vec<Vec<SpExpr>> = vec![Vec::new(); max_e + 1];
    let mut non_parallel: Vec<Vec<SpExpr>> = vec![Vec::new(); max_e + 1];
    for e in 1..=max_e {
        let mut ser = Vec::new();
        let mut par = Vec::new();
        if e == 1 {
            let leaf = SpExpr::Chain(1);
            non_series[1].push(leaf.clone());
            non_parallel[1].push(leaf.clone());
            all[1].push(leaf);
            continue;
        }
        // sequences of ≥ 2 non-series parts summing to e
        fn seqs(e: usize, parts: &[Vec<SpExpr>], prefix: &mut Vec<SpExpr>, out: &mut Vec<SpExpr>) {
            if e == 0 {
                if prefix.len() >= 2 {
                    out.push(SpExpr::Series(prefix.clone()));
                }
                return;
            }
            for k in 1..=e {
                for p in &parts[k] {
                    prefix.push(p.clone());
                    seqs(e - k, parts, prefix, out);
                    prefix.pop();
                }
            }
        }
        seqs(e, &non_series, &mut Vec::new(), &mut ser);
        // multisets of ≥ 2 non-parallel parts summing to e, non-increasing
        fn msets(e: usize, parts: &[Vec<SpExpr>], prefix: &mut Vec<SpExpr>, out: &mut Vec<SpExpr>) {
            if e == 0 {
                if prefix.len() >= 2 {
                    out.push(SpExpr::Parallel(prefix.clone()));
                }
                return;
            }
            for k in 1..=e {
                for p in &parts[k] {
                    if prefix.last().is_some_and(|last| p > last) {
                        continue;
                    }
                    prefix.push(p.clone());
                    msets(e - k, parts, prefix, out);
                    prefix.pop();
                }
            }
        }
        msets(e, &non_parallel, &mut Vec::new(), &mut par);
        non_series[e].extend(par.iter().cloned());
        non_parallel[e].extend(ser.iter().cloned());
        all[e].extend(ser);
        all[e].extend(par);
    }
    all
}

/// Every biconnected series-parallel multigraph with at most `max_edges`
/// edges, each built as a network closed by a chain. Identical edge lists
/// are dropped; isomorphic copies may remain.
pub fn sp_sweep(max_edges: usize) -> Vec<Graph> {
    let nets = networks(max_edges.saturating_sub(1));
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (e, list) in nets.iter().enumerate() {
        for net in list {
            for closing in 1..=max_edges - e {
                let g = net.close(closing);
                let mut key: Vec<(usize, usize)> = g
                    .edges()
                    .iter()
                    .map(|&(a, b)| (a.min(b), a.max(b)))
                    .collect();
                key.sort_unstable();
                if seen.insert((g.vertex_count(), key)) {
                    out.push(g);
                }
            }
        }
    }
    out
}

/// A random independent-parallel series-parallel graph with maximum
/// degree four and between `n_target` and `2 n_target` vertices.
pub fn gen_random_ipsp(n_target: usize, seed: u64) -> Graph {
    assert!(n_target >= 4, "target size must be at least 4");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut leaves = (n_target / 3).max(2);
    loop {
        let g = random_instance(&mut rng, leaves);
        let n = g.vertex_count();
        if n < n_target {
            leaves += ((n_target - n) / 3).max(1);
        } else if n > 2 * n_target {
            leaves = (leaves * 3 / 4).max(2);
        } else {
            return g;
        }
    }
}

/// Grows components whose poles have degree one and are poles of no
/// parallel bundle: single chains, series of such components, and bundles
/// of two or three components wrapped by an edge on each side. The pool
/// is closed by bundling its last two to four components.
fn random_instance(rng: &mut ChaCha8Rng, leaves: usize) -> Graph {
    let mut pool: Vec<SpExpr> = (0..leaves)
        .map(|_| SpExpr::Chain(rng.random_range(1..=3)))
        .collect();
    let closing = rng.random_range(2..=4usize);
    while pool.len() > closing {
        let k = if rng.random_bool(0.5) { 2 } else { 3 }
            .min(pool.len() - 1)
            .max(2);
        // move k random members to the end
        let len = pool.len();
        for i in 0..k {
            let j = rng.random_range(0..len - i);
            pool.swap(j, len - 1 - i);
        }
        let parts: Vec<SpExpr> = pool.drain(pool.len() - k..).collect();
        let next = if rng.random_bool(0.5) {
            SpExpr::Series(parts)
        } else {
            SpExpr::Series(vec![
                SpExpr::Chain(1),
                SpExpr::Parallel(parts),
                SpExpr::Chain(1),
            ])
        };
        pool.push(next);
    }
    let top = if pool.len() == 1 {
        // a single component closes through a chain
        let mut b = Builder::default();
        let s = b.vertex();
        let t = b.vertex();
        pool[0].build(&mut b, s, t);
        b.chain(t, s, rng.random_range(1..=3));
        b.finish()
    } else {
        SpExpr::Parallel(pool).close_parallel()
    };
    relabel(top, rng)
}

impl SpExpr {
    /// The graph of a top-level bundle with no closing chain.
    fn close_parallel(&self) -> Graph {
        let mut b = Builder::default();
        let s = b.vertex();
        let t = b.vertex();
        self.build(&mut b, s, t);
        b.finish()
    }
}

fn relabel(g: Graph, rng: &mut ChaCha8Rng) -> Graph {
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    perm.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(a, b)| {
            if rng.random_bool(0.5) {
                (perm[a], perm[b])
            } else {
                (perm[b], perm[a])
            }
        })
        .collect();
    edges.shuffle(rng);
    Graph::from_valid(g.vertex_count(), edges)
}

/// `count` random instances with at most `max_edges` edges, few of them
/// simple cycles.
pub fn small_random_corpus(count: usize, max_edges: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let leaves = rng.random_range(2..=5);
        let g = random_instance(&mut rng, leaves);
        // keep roughly one simple cycle in ten
        if g.edge_count() <= max_edges && (!g.is_simple_cycle() || out.len() % 10 == 0) {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles() {
        assert_eq!(gen_cycle(3).edge_count(), 3);
        assert!(gen_cycle(100).is_simple_cycle());
        assert_eq!(gen_chain(3).edges(), &[(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn lowerbound_counts() {
        let lb = gen_lowerbound(2);
        assert_eq!(lb.graph.vertex_count(), 90);
        assert_eq!(lb.g0_components.len(), 2 * 9);
        assert!(lb.g0_components.iter().all(|c| c.len() == 6));
        let n4 = gen_lowerbound(4).graph.vertex_count();
        let n6 = gen_lowerbound(6).graph.vertex_count();
        assert_eq!(n4, 378);
        assert!(90 < n4 && n4 < n6);
        for n in [2, 4, 6] {
            let c = gen_lowerbound(n).graph.classify();
            assert!(
                c.is_degree4
                    && c.is_biconnected
                    && c.is_sp
                    && c.is_independent_parallel
                    && !c.is_simple_cycle
            );
        }
    }

    #[test]
    fn lowerbound_sidecar() {
        let v: serde_json::Value = serde_json::from_str(&gen_lowerbound(2).sidecar_json()).unwrap();
        assert_eq!(v["g0_components"].as_array().unwrap().len(), 18);
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(
            gen_random_ipsp(20, 7).edges(),
            gen_random_ipsp(20, 7).edges()
        );
        assert_ne!(
            gen_random_ipsp(20, 7).edges(),
            gen_random_ipsp(20, 8).edges()
        );
    }

    #[test]
    fn random_outputs_in_scope() {
        for seed in 0..200 {
            let n_target = 4 + (seed as usize % 60);
            let g = gen_random_ipsp(n_target, seed);
            assert!(
                (n_target..=2 * n_target).contains(&g.vertex_count()),
                "seed {seed}"
            );
            let c = g.classify();
            assert!(
                c.is_sp && c.is_independent_parallel && c.is_degree4 && c.is_biconnected,
                "seed {seed}"
            );
        }
    }

    #[test]
    fn sweep_is_sp() {
        let all = sp_sweep(6);
        assert!(all.len() > 20);
        for g in &all {
            assert!(g.edge_count() <= 6);
            let c = g.classify();
            assert!(c.is_sp && c.is_biconnected);
        }
        // triangle, square, digon and the theta graph all appear
        assert!(all
            .iter()
            .any(|g| g.is_simple_cycle() && g.vertex_count() == 3));
        assert!(all
            .iter()
            .any(|g| g.vertex_count() == 2 && g.edge_count() == 2));
        assert!(all
            .iter()
            .any(|g| g.vertex_count() == 5 && g.edge_count() == 6 && g.max_degree() == 3));
    }
}
