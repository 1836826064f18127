//! Rectilinear planarity test over all Q*-node roots.
//!
//! Sets are memoized per directed tree edge: `memo[h]` is the set of the
//! node owning half-edge `h` when its parent is the node `h` points to.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::Rejection;
use crate::graph::Graph;
use crate::spirality::{
    p2_set, p3_set, qstar_set, root_feasible, s_node_set, s_summary, s_summary_replace,
    SNodeSummary, SpiralitySet,
};
use crate::spq::{NodeId, NodeKind, RootedView, SpqTree};

#[derive(Debug, Clone, Default)]
pub struct TestOptions {
    /// Evaluate every root instead of stopping at the first feasible one.
    pub all_roots: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestReport {
    pub rectilinear_planar: bool,
    pub witness_root: Option<NodeId>,
    pub roots_tried: usize,
    /// Root-child set per tried root, filled in all-roots mode.
    pub per_root_sets: Option<Vec<(NodeId, SpiralitySet)>>,
    pub elapsed: Duration,
    /// Why the verdict is negative, when it is.
    pub reason: Option<String>,
    /// Directed sets computed across all roots.
    pub computations: usize,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    rectilinear_planar: bool,
    witness_root: Option<NodeId>,
    roots_tried: usize,
    reason: Option<&'a str>,
    elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_root_sets: Option<Vec<(NodeId, SpiralitySet)>>,
}

impl TestReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ReportJson {
            rectilinear_planar: self.rectilinear_planar,
            witness_root: self.witness_root,
            roots_tried: self.roots_tried,
            reason: self.reason.as_deref(),
            elapsed_ms: self.elapsed.as_secs_f64() * 1e3,
            per_root_sets: self.per_root_sets.clone(),
        })
        .expect("report serializes")
    }
}

/// Directed spirality sets shared by all roots of one tree.
#[derive(Debug, Clone)]
pub struct DirectedSetTable<'t> {
    tree: &'t SpqTree,
    memo: Vec<Option<SpiralitySet>>,
    /// S-node summary for the first parent half-edge it was evaluated with.
    s_first: Vec<Option<(usize, SNodeSummary)>>,
    computations: usize,
}

impl<'t> DirectedSetTable<'t> {
    pub fn new(tree: &'t SpqTree) -> Self {
        DirectedSetTable {
            tree,
            memo: vec![None; tree.half_edge_count()],
            s_first: vec![None; tree.node_count()],
            computations: 0,
        }
    }

    pub fn computations(&self) -> usize {
        self.computations
    }

    /// Memoized set for half-edge `h`, if computed.
    pub fn get(&self, h: usize) -> Option<SpiralitySet> {
        self.memo[h]
    }

    /// Set of the root child when rooted at the Q*-node `rho`.
    pub fn root_child_set(&mut self, rho: NodeId) -> SpiralitySet {
        let h = self.tree.twin(self.tree.half_edges(rho).start);
        self.eval(h)
    }

    /// Half-edges whose sets `h` depends on.
    fn deps(&self, h: usize) -> Vec<usize> {
        let t = self.tree;
        let x = t.owner(h);
        match t.kind(x) {
            NodeKind::QStar => Vec::new(),
            NodeKind::S => match self.s_first[x] {
                Some((hp, _)) if hp != h => vec![t.twin(hp)],
                _ => t
                    .half_edges(x)
                    .filter(|&k| k != h)
                    .map(|k| t.twin(k))
                    .collect(),
            },
            NodeKind::P => t
                .half_edges(x)
                .filter(|&k| k != h)
                .map(|k| t.twin(k))
                .collect(),
        }
    }

    fn compute(&mut self, h: usize) -> SpiralitySet {
        let t = self.tree;
        let x = t.owner(h);
        let child = |k: usize| self.memo[t.twin(k)].expect("dependency evaluated");
        match t.kind(x) {
            NodeKind::QStar => qstar_set(t.chain_len(x)),
            NodeKind::P => {
                let sets: Vec<SpiralitySet> =
                    t.half_edges(x).filter(|&k| k != h).map(child).collect();
                match sets[..] {
                    [a, b] => p2_set(a, b),
                    [a, b, c] => p3_set(a, b, c),
                    _ => unreachable!("P-nodes have two or three children under degree four"),
                }
            }
            NodeKind::S => {
                let sum = match self.s_first[x] {
                    Some((hp, first)) if hp != h => s_summary_replace(first, child(h), child(hp)),
                    Some((_, first)) => first,
                    None => {
                        let sum = s_summary(t.half_edges(x).filter(|&k| k != h).map(child));
                        self.s_first[x] = Some((h, sum));
                        sum
                    }
                };
                s_node_set(&sum)
            }
        }
    }

    /// Evaluates `h` and everything it needs with an explicit stack.
    pub fn eval(&mut self, h0: usize) -> SpiralitySet {
        if let Some(s) = self.memo[h0] {
            return s;
        }
        let mut stack = vec![(h0, false)];
        while let Some((h, ready)) = stack.pop() {
            if self.memo[h].is_some() {
                continue;
            }
            if ready {
                let s = self.compute(h);
                self.memo[h] = Some(s);
                self.computations += 1;
                continue;
            }
            stack.push((h, true));
            for d in self.deps(h) {
                if self.memo[d].is_none() {
                    stack.push((d, false));
                }
            }
        }
        self.memo[h0].unwrap()
    }
}

/// Verdict for a simple cycle on `n` vertices.
fn cycle_report(n: usize, start: Instant) -> TestReport {
    let ok = n >= 4;
    TestReport {
        rectilinear_planar: ok,
        witness_root: None,
        roots_tried: 0,
        per_root_sets: None,
        elapsed: start.elapsed(),
        reason: (!ok).then(|| "simple cycle with fewer than four vertices".to_string()),
        computations: 0,
    }
}

pub fn test(g: &Graph) -> Result<TestReport, Rejection> {
    test_with(g, &TestOptions::default())
}

pub fn test_with(g: &Graph, opts: &TestOptions) -> Result<TestReport, Rejection> {
    let start = Instant::now();
    match g.check_scope()? {
        None => Ok(cycle_report(g.vertex_count(), start)),
        Some(tree) => Ok(test_tree(&tree, opts, start)),
    }
}

/// Runs the test on an already decomposed graph.
pub fn test_tree(tree: &SpqTree, opts: &TestOptions, start: Instant) -> TestReport {
    let mut table = DirectedSetTable::new(tree);
    let mut witness = None;
    let mut tried = 0;
    let mut per_root = opts.all_roots.then(Vec::new);
    for &rho in tree.qstar_nodes() {
        tried += 1;
        let set = table.root_child_set(rho);
        if let Some(v) = per_root.as_mut() {
            v.push((rho, set));
        }
        if witness.is_none() && root_feasible(set, tree.chain_len(rho)) {
            witness = Some(rho);
            if !opts.all_roots {
                break;
            }
        }
    }
    assert!(
        table.computations() <= tree.half_edge_count(),
        "each directed tree edge is computed at most once"
    );
    TestReport {
        rectilinear_planar: witness.is_some(),
        witness_root: witness,
        roots_tried: tried,
        per_root_sets: per_root,
        elapsed: start.elapsed(),
        reason: witness
            .is_none()
            .then(|| "no root admits a closing spirality".to_string()),
        computations: table.computations(),
    }
}

/// Sets of every node of one rooted view, computed from scratch. The
/// entry of the root itself is its own chain set.
pub fn rooted_sets(tree: &SpqTree, view: &RootedView) -> Vec<SpiralitySet> {
    let mut sets = vec![SpiralitySet::Empty; tree.node_count()];
    for &x in &view.order {
        let kids = &view.children[x];
        sets[x] = match tree.kind(x) {
            NodeKind::QStar => qstar_set(tree.chain_len(x)),
            NodeKind::S => s_node_set(&s_summary(kids.iter().map(|&c| sets[c]))),
            NodeKind::P => match kids[..] {
                [a, b] => p2_set(sets[a], sets[b]),
                [a, b, c] => p3_set(sets[a], sets[b], sets[c]),
                _ => unreachable!("P-nodes have two or three children under degree four"),
            },
        };
    }
    sets
}

/// Per-node sets for the view rooted at the Q*-node `root`.
pub fn component_sets(g: &Graph, root: NodeId) -> Result<Vec<SpiralitySet>, Rejection> {
    let tree = g.check_scope()?.ok_or(Rejection::NotSeriesParallel)?;
    assert_eq!(tree.kind(root), NodeKind::QStar, "roots are Q*-nodes");
    Ok(rooted_sets(&tree, &RootedView::new(&tree, root)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::new(n, e.to_vec()).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        g(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    #[test]
    fn cycles() {
        assert!(!test(&cycle(3)).unwrap().rectilinear_planar);
        assert!(test(&cycle(4)).unwrap().rectilinear_planar);
        assert!(!test(&g(2, &[(0, 1), (0, 1)])).unwrap().rectilinear_planar);
    }

    #[test]
    fn rejections() {
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(test(&k4).unwrap_err(), Rejection::NotSeriesParallel);
        let path = g(3, &[(0, 1), (1, 2)]);
        assert_eq!(test(&path).unwrap_err(), Rejection::NotBiconnected);
    }

    #[test]
    fn theta_sets() {
        let th = g(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]);
        let tree = th.check_scope().unwrap().unwrap();
        let rho = tree.qstar_nodes()[0];
        let sets = component_sets(&th, rho).unwrap();
        let view = RootedView::new(&tree, rho);
        let p = view.root_child();
        for &c in &view.children[p] {
            assert_eq!(sets[c], SpiralitySet::upto(1));
        }
        assert_eq!(
            sets[p],
            p2_set(SpiralitySet::upto(1), SpiralitySet::upto(1))
        );
        // chains of two edges turn at most once, too little to close the outer face
        assert!(!test(&th).unwrap().rectilinear_planar);
        let long = g(
            8,
            &[
                (0, 2),
                (2, 3),
                (3, 1),
                (0, 4),
                (4, 5),
                (5, 1),
                (0, 6),
                (6, 7),
                (7, 1),
            ],
        );
        assert!(test(&long).unwrap().rectilinear_planar);
    }

    #[test]
    fn json_shape() {
        let r = test(&cycle(5)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["rectilinear_planar"], true);
        assert!(v["witness_root"].is_null());
        assert!(v["reason"].is_null());
        assert!(v["elapsed_ms"].is_number());
        assert!(v.get("per_root_sets").is_none());
    }

    #[test]
    fn all_roots_fills_memo() {
        let th = g(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]);
        let tree = th.check_scope().unwrap().unwrap();
        let mut table = DirectedSetTable::new(&tree);
        for &rho in tree.qstar_nodes() {
            table.root_child_set(rho);
        }
        for h in 0..tree.half_edge_count() {
            assert!(table.get(h).is_some());
        }
        assert_eq!(table.computations(), tree.half_edge_count());
    }
}
