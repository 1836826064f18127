//! Drawing witnesses for rectilinear planar graphs: spirality targets,
//! a bend-free orthogonal representation realizing them, and a grid
//! drawing.

mod compact;
mod ortho;
mod svg;

use std::time::Instant;

use serde::Serialize;

pub use compact::{compact, Drawing};
pub use ortho::{measure_spirality, verify_ortho, Faces, OrthoRep, EAST, NORTH, SOUTH, WEST};
pub use svg::to_svg;

use crate::error::{DrawError, InternalInfeasible};
use crate::graph::{Graph, VertexId};
use crate::spirality::{
    root_pairs, s_node_set, s_summary_push, P2Config, SNodeSummary, SpiralitySet,
};
use crate::spq::{NodeId, NodeKind, RootedView, SpqTree};
use crate::tester::{rooted_sets, test_tree, TestOptions};

/// How a P-node arranges its children.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PChoice {
    /// Children from left to right.
    Three([NodeId; 3]),
    /// Alphas are `(α_u^l, α_u^r, α_v^l, α_v^r)`, 1 for a 90 degree outside
    /// angle and 0 for a flat one.
    Two {
        left: NodeId,
        right: NodeId,
        alpha: (i64, i64, i64, i64),
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpiralityAssignment {
    pub root: NodeId,
    /// Target spirality of every node; the root's own entry is unused.
    pub target: Vec<i64>,
    /// Right turns on the root chain.
    pub root_k: i64,
    pub p_choice: Vec<Option<PChoice>>,
}

fn infeasible(msg: String) -> InternalInfeasible {
    InternalInfeasible(msg)
}

/// Splits `t` over the children of an S-node, keeping every suffix able to
/// absorb what remains.
fn split_series(kids: &[NodeId], sets: &[SpiralitySet], t: i64) -> Option<Vec<i64>> {
    let m = kids.len();
    let mut suffix = vec![SNodeSummary::default(); m + 1];
    for i in (0..m).rev() {
        suffix[i] = s_summary_push(suffix[i + 1], sets[kids[i]]);
    }
    let mut out = Vec::with_capacity(m);
    let mut rem = t;
    for i in 0..m {
        let rest = s_node_set(&suffix[i + 1]);
        let mut cands: Vec<i64> = sets[kids[i]]
            .values()
            .into_iter()
            .flat_map(|v| [v as i64, -(v as i64)])
            .collect();
        cands.sort_by_key(|&v| ((rem - v).abs(), v));
        let v = cands.into_iter().find(|&v| rest.contains(rem - v))?;
        out.push(v);
        rem -= v;
    }
    (rem == 0).then_some(out)
}

const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Top-down targets for the view rooted at `view.root`, given the sets of
/// every node in that view.
pub fn assign_spiralities(
    tree: &SpqTree,
    view: &RootedView,
    sets: &[SpiralitySet],
) -> Result<SpiralityAssignment, InternalInfeasible> {
    let n = tree.node_count();
    let rho = view.root;
    let c = view.root_child();
    let (sigma, k) = root_pairs(sets[c], tree.chain_len(rho))
        .next()
        .ok_or_else(|| infeasible(format!("root {rho} admits no closing pair")))?;
    let mut target = vec![0i64; n];
    let mut p_choice = vec![None; n];
    target[c] = sigma;
    for &x in view.order.iter().rev() {
        if x == rho {
            continue;
        }
        let t = target[x];
        if !sets[x].contains(t) {
            return Err(infeasible(format!(
                "node {x}: target {t} outside {}",
                sets[x]
            )));
        }
        let kids = &view.children[x];
        match tree.kind(x) {
            NodeKind::QStar => {}
            NodeKind::S => {
                let split = split_series(kids, sets, t)
                    .ok_or_else(|| infeasible(format!("S-node {x} cannot split {t}")))?;
                for (&y, v) in kids.iter().zip(split) {
                    target[y] = v;
                }
            }
            NodeKind::P if kids.len() == 3 => {
                let p = PERMS
                    .iter()
                    .find(|p| {
                        sets[kids[p[0]]].contains(t + 2)
                            && sets[kids[p[1]]].contains(t)
                            && sets[kids[p[2]]].contains(t - 2)
                    })
                    .ok_or_else(|| infeasible(format!("P-node {x} cannot realize {t}")))?;
                let order = [kids[p[0]], kids[p[1]], kids[p[2]]];
                target[order[0]] = t + 2;
                target[order[1]] = t;
                target[order[2]] = t - 2;
                p_choice[x] = Some(PChoice::Three(order));
            }
            NodeKind::P => {
                let (a, b) = (kids[0], kids[1]);
                let (cfg, left, right) = P2Config::all()
                    .map(|cfg| if cfg.swap { (cfg, b, a) } else { (cfg, a, b) })
                    .find(|&(cfg, left, right)| {
                        let (sl, sr) = cfg.child_values(t);
                        sets[left].contains(sl) && sets[right].contains(sr)
                    })
                    .ok_or_else(|| infeasible(format!("P-node {x} cannot realize {t}")))?;
                let (sl, sr) = cfg.child_values(t);
                target[left] = sl;
                target[right] = sr;
                p_choice[x] = Some(PChoice::Two {
                    left,
                    right,
                    alpha: cfg.alpha,
                });
            }
        }
    }
    Ok(SpiralityAssignment {
        root: rho,
        target,
        root_k: k,
        p_choice,
    })
}

fn heading(h: i64) -> u8 {
    h.rem_euclid(4) as u8
}

/// Realizes an assignment. Headings follow the direction of travel from the
/// u-pole to the v-pole of each component; the first root chain edge points
/// east.
pub fn build_ortho_rep(
    g: &Graph,
    tree: &SpqTree,
    view: &RootedView,
    assign: &SpiralityAssignment,
) -> Result<OrthoRep, InternalInfeasible> {
    let mut dirs = vec![u8::MAX; g.edge_count()];
    let mut set = |e: usize, from: VertexId, h: i64| {
        dirs[e] = if g.edge(e).0 == from {
            heading(h)
        } else {
            heading(h + 2)
        };
    };
    let rho = view.root;
    let c = view.root_child();
    let sigma = assign.target[c];
    let k = assign.root_k;
    if sigma + k != 4 {
        return Err(infeasible(format!(
            "root pair ({sigma}, {k}) does not close"
        )));
    }

    // The chain is walked from its v-end back to its u-end.
    let (rv, re) = view.oriented_chain(tree, rho);
    if k > re.len() as i64 - 1 || k < 0 {
        return Err(infeasible(format!(
            "root chain of length {} cannot turn {k} times",
            re.len()
        )));
    }
    let mut h = 2 - sigma;
    for (j, i) in (0..re.len()).rev().enumerate() {
        if j > 0 && j as i64 <= k {
            h -= 1;
        }
        set(re[i], rv[i + 1], h);
    }

    let mut stack = vec![(c, 2i64)];
    while let Some((x, h)) = stack.pop() {
        match tree.kind(x) {
            NodeKind::QStar => {
                let (vs, es) = view.oriented_chain(tree, x);
                let s = assign.target[x];
                if s.unsigned_abs() as usize >= es.len().max(1) && s != 0 {
                    return Err(infeasible(format!(
                        "chain {x} of length {} cannot turn {s}",
                        es.len()
                    )));
                }
                let mut h = h;
                for j in 0..es.len() {
                    if j > 0 && j as i64 <= s.abs() {
                        h -= s.signum();
                    }
                    set(es[j], vs[j], h);
                }
            }
            NodeKind::S => {
                let mut h = h;
                for &y in &view.children[x] {
                    stack.push((y, h));
                    h -= assign.target[y];
                }
            }
            NodeKind::P => match assign.p_choice[x] {
                Some(PChoice::Three([l, m, r])) => {
                    stack.extend([(l, h + 1), (m, h), (r, h - 1)]);
                }
                Some(PChoice::Two { left, right, alpha }) => {
                    stack.extend([(left, h + alpha.0), (right, h - alpha.1)]);
                }
                None => return Err(infeasible(format!("P-node {x} has no configuration"))),
            },
        }
    }
    let outer = 2 * re[0] + usize::from(g.edge(re[0]).0 != rv[0]);
    OrthoRep::from_directions(g.vertex_count(), g.edges().to_vec(), &dirs, outer)
}

/// A simple cycle drawn as a rectangle turning at its first four vertices.
pub fn cycle_ortho_rep(g: &Graph) -> Result<OrthoRep, InternalInfeasible> {
    let n = g.vertex_count();
    if n < 4 || !g.is_simple_cycle() {
        return Err(infeasible(
            "only simple cycles on at least four vertices".into(),
        ));
    }
    let mut dirs = vec![u8::MAX; g.edge_count()];
    let mut w = 0;
    let mut prev_edge = usize::MAX;
    let mut first = usize::MAX;
    for j in 0..n {
        let e = *g.incident(w).iter().find(|&&e| e != prev_edge).unwrap();
        let h = -(j.min(3) as i64);
        dirs[e] = if g.edge(e).0 == w {
            heading(h)
        } else {
            heading(h + 2)
        };
        if j == 0 {
            first = e;
        }
        prev_edge = e;
        w = g.opposite(e, w);
    }
    // walking 0 -> 1 -> ... turns right, so the outside lies right of the
    // reverse walk
    let outer = 2 * first + usize::from(g.edge(first).0 == 0);
    OrthoRep::from_directions(n, g.edges().to_vec(), &dirs, outer)
}

/// Nodes whose measured spirality differs from their target.
pub fn fidelity_violations(
    rep: &OrthoRep,
    tree: &SpqTree,
    view: &RootedView,
    assign: &SpiralityAssignment,
) -> Vec<NodeId> {
    (0..tree.node_count())
        .filter(|&x| x != view.root && measure_spirality(rep, tree, view, x) != assign.target[x])
        .collect()
}

/// Everything produced for an accepted graph.
#[derive(Debug, Clone)]
pub struct Witness {
    pub tree: Option<SpqTree>,
    pub view: Option<RootedView>,
    pub sets: Vec<SpiralitySet>,
    pub assignment: Option<SpiralityAssignment>,
    pub rep: OrthoRep,
    pub drawing: Drawing,
}

impl Witness {
    /// Re-checks the representation, the targets and the geometry.
    pub fn check(&self) -> Result<(), String> {
        if !verify_ortho(&self.rep) {
            return Err("representation fails the angle checks".into());
        }
        if let (Some(tree), Some(view), Some(a)) = (&self.tree, &self.view, &self.assignment) {
            let bad = fidelity_violations(&self.rep, tree, view, a);
            if !bad.is_empty() {
                return Err(format!(
                    "measured spirality differs from target at nodes {bad:?}"
                ));
            }
            for x in 0..tree.node_count() {
                if x != view.root && !self.sets[x].contains(a.target[x]) {
                    return Err(format!("target of node {x} outside its set"));
                }
            }
        }
        self.drawing.check(&self.rep)
    }
}

/// Tests `g` and, when it is rectilinear planar, builds and checks a
/// drawing.
pub fn draw(g: &Graph) -> Result<Witness, DrawError> {
    let tree = match g.check_scope()? {
        None => {
            if g.vertex_count() < 4 {
                return Err(DrawError::NotRectilinear);
            }
            let rep = cycle_ortho_rep(g)?;
            return finish(None, None, Vec::new(), None, rep);
        }
        Some(t) => t,
    };
    let report = test_tree(&tree, &TestOptions::default(), Instant::now());
    let rho = report.witness_root.ok_or(DrawError::NotRectilinear)?;
    let view = RootedView::new(&tree, rho);
    let sets = rooted_sets(&tree, &view);
    let assign = assign_spiralities(&tree, &view, &sets)?;
    let rep = build_ortho_rep(g, &tree, &view, &assign)?;
    finish(Some(tree), Some(view), sets, Some(assign), rep)
}

fn finish(
    tree: Option<SpqTree>,
    view: Option<RootedView>,
    sets: Vec<SpiralitySet>,
    assignment: Option<SpiralityAssignment>,
    rep: OrthoRep,
) -> Result<Witness, DrawError> {
    if !verify_ortho(&rep) {
        return Err(infeasible("built representation fails verification".into()).into());
    }
    let drawing = compact(&rep)?;
    Ok(Witness {
        tree,
        view,
        sets,
        assignment,
        rep,
        drawing,
    })
}
