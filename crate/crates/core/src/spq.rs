//! SPQ*-trees of biconnected series-parallel multigraphs.
//!
//! Leaves are Q*-nodes, one per maximal chain of edges whose interior
//! vertices have degree two. The tree is built by series-parallel
//! reduction on the graph whose edges are those chains; S- and P-groups
//! are flattened afterwards so that no two S-nodes and no two P-nodes are
//! adjacent.

use std::fmt::Write as _;

use crate::error::DecompositionError;
use crate::graph::{EdgeId, Graph, VertexId};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    S,
    P,
    QStar,
}

/// A maximal chain: `vertices[i]`–`vertices[i + 1]` is `edges[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<VertexId>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }
}

#[derive(Debug, Clone)]
pub struct SpqNode {
    pub kind: NodeKind,
    /// Tree neighbours. For S-nodes, neighbour `i` spans skeleton vertices
    /// `cycle[i]` and `cycle[(i + 1) % k]`.
    pub neighbors: Vec<NodeId>,
    /// Q*-nodes only.
    pub chain: Option<Chain>,
    /// S-nodes only: skeleton cycle vertices.
    pub cycle: Vec<VertexId>,
    /// P-nodes: the two poles. Q*-nodes: the chain end-vertices.
    pub poles: Option<(VertexId, VertexId)>,
}

/// Unrooted SPQ*-tree plus half-edge bookkeeping for directed traversal.
#[derive(Debug, Clone)]
pub struct SpqTree {
    nodes: Vec<SpqNode>,
    qstars: Vec<NodeId>,
    /// Half-edge offsets: half-edges of node x are `offset[x]..offset[x+1]`,
    /// half-edge `offset[x] + i` points from x to `neighbors[i]`.
    offset: Vec<usize>,
    twin: Vec<usize>,
}

#[derive(Debug, Clone)]
enum Comp {
    Chain(usize),
    Series {
        left: usize,
        right: usize,
        a: VertexId,
        b: VertexId,
    },
    Parallel(Vec<usize>),
}

struct CompEdge {
    comp: usize,
    a: VertexId,
    b: VertexId,
    alive: bool,
}

struct Reducer {
    comps: Vec<Comp>,
    cedges: Vec<CompEdge>,
    // component edges at v sit in inc[start[v]..start[v] + inc_len[v]]; a
    // vertex never has more of them than its degree in the graph
    start: Vec<usize>,
    inc: Vec<usize>,
    inc_len: Vec<usize>,
    deg: Vec<usize>,
    queue: Vec<VertexId>,
}

impl Reducer {
    fn incident(&self, v: VertexId) -> &[usize] {
        &self.inc[self.start[v]..self.start[v] + self.inc_len[v]]
    }

    /// Drops dead component edges at `a`.
    fn prune(&mut self, a: VertexId) {
        let s = self.start[a];
        let mut k = 0;
        for i in s..s + self.inc_len[a] {
            let ce = self.inc[i];
            if self.cedges[ce].alive {
                self.inc[s + k] = ce;
                k += 1;
            }
        }
        self.inc_len[a] = k;
    }

    /// Live component edge joining `a` and `b`.
    fn find_pair(&mut self, a: VertexId, b: VertexId) -> Option<usize> {
        self.prune(a);
        self.incident(a)
            .iter()
            .copied()
            .find(|&ce| other(&self.cedges[ce], a) == b)
    }

    /// Adds a component edge, merging it into an existing parallel one.
    fn add(&mut self, comp: usize, a: VertexId, b: VertexId) {
        if let Some(ce) = self.find_pair(a, b) {
            let existing = self.cedges[ce].comp;
            match &mut self.comps[existing] {
                Comp::Parallel(children) => children.push(comp),
                _ => {
                    self.comps.push(Comp::Parallel(vec![existing, comp]));
                    self.cedges[ce].comp = self.comps.len() - 1;
                }
            }
            for x in [a, b] {
                if self.deg[x] == 2 {
                    self.queue.push(x);
                }
            }
        } else {
            let id = self.cedges.len();
            self.cedges.push(CompEdge {
                comp,
                a,
                b,
                alive: true,
            });
            for x in [a, b] {
                self.prune(x);
                self.inc[self.start[x] + self.inc_len[x]] = id;
                self.inc_len[x] += 1;
            }
            self.deg[a] += 1;
            self.deg[b] += 1;
        }
    }
}

impl SpqTree {
    /// Builds the SPQ*-tree of a biconnected series-parallel graph that is
    /// not a simple cycle.
    pub fn build(g: &Graph) -> Result<Self, DecompositionError> {
        if g.is_simple_cycle() {
            return Err(DecompositionError::SimpleCycle);
        }
        if !g.is_biconnected() {
            return Err(DecompositionError::NotBiconnected);
        }
        Self::build_unchecked(g)
    }

    /// `build` for a graph already known to be biconnected and not a cycle.
    pub(crate) fn build_unchecked(g: &Graph) -> Result<Self, DecompositionError> {
        let chains = collect_chains(g)?;

        let mut r = Reducer {
            comps: Vec::with_capacity(3 * chains.len()),
            cedges: Vec::with_capacity(2 * chains.len()),
            start: (0..g.vertex_count())
                .scan(0, |acc, v| {
                    let s = *acc;
                    *acc += g.degree(v);
                    Some(s)
                })
                .collect(),
            inc: vec![0; 2 * g.edge_count()],
            inc_len: vec![0; g.vertex_count()],
            deg: vec![0; g.vertex_count()],
            queue: Vec::new(),
        };
        let mut alive_vertices = (0..g.vertex_count()).filter(|&v| g.degree(v) > 2).count();

        for (i, ch) in chains.iter().enumerate() {
            let (a, b) = ch.endpoints();
            r.comps.push(Comp::Chain(i));
            r.add(r.comps.len() - 1, a, b);
        }
        r.queue = (0..g.vertex_count()).filter(|&v| r.deg[v] == 2).collect();

        while let Some(w) = r.queue.pop() {
            if r.deg[w] != 2 {
                continue;
            }
            let mut live = r
                .incident(w)
                .iter()
                .copied()
                .filter(|&ce| r.cedges[ce].alive);
            let (e1, e2) = (live.next().unwrap(), live.next().unwrap());
            let a = other(&r.cedges[e1], w);
            let b = other(&r.cedges[e2], w);
            for ce in [e1, e2] {
                r.cedges[ce].alive = false;
            }
            r.deg[w] = 0;
            r.deg[a] -= 1;
            r.deg[b] -= 1;
            alive_vertices -= 1;
            r.comps.push(Comp::Series {
                left: r.cedges[e1].comp,
                right: r.cedges[e2].comp,
                a,
                b,
            });
            r.add(r.comps.len() - 1, a, b);
        }

        let live: Vec<usize> = (0..r.cedges.len())
            .filter(|&ce| r.cedges[ce].alive)
            .collect();
        if alive_vertices != 2 || live.len() != 1 {
            return Err(DecompositionError::NotSeriesParallel);
        }
        let root_edge = &r.cedges[live[0]];
        let ends = endpoints_table(&r.comps, &chains);
        let (root, ra, rb) = (root_edge.comp, root_edge.a, root_edge.b);
        Ok(Self::assemble(&r.comps, chains, &ends, root, ra, rb))
    }

    fn assemble(
        comps: &[Comp],
        chains: Vec<Chain>,
        ends: &[(VertexId, VertexId)],
        root: usize,
        ra: VertexId,
        rb: VertexId,
    ) -> Self {
        let mut nodes: Vec<SpqNode> = Vec::with_capacity(comps.len());
        let mut qstars = Vec::new();
        let mut chains: Vec<Option<Chain>> = chains.into_iter().map(Some).collect();

        fn new_node(nodes: &mut Vec<SpqNode>, kind: NodeKind) -> NodeId {
            nodes.push(SpqNode {
                kind,
                neighbors: Vec::new(),
                chain: None,
                cycle: Vec::new(),
                poles: None,
            });
            nodes.len() - 1
        }

        // Work list: (comp, parent tree node, endpoints oriented from..to).
        let mut work: Vec<(usize, Option<NodeId>, VertexId, VertexId)> = Vec::new();

        let Comp::Parallel(root_children) = &comps[root] else {
            unreachable!("last reduction is always a parallel merge")
        };
        if root_children.len() == 2 {
            // Two parallel non-P pieces close into one cycle skeleton.
            let s = new_node(&mut nodes, NodeKind::S);
            let mut seq = expand_series(comps, ends, root_children[0], ra, rb);
            seq.extend(expand_series(comps, ends, root_children[1], rb, ra));
            let mut cycle = Vec::with_capacity(seq.len());
            for &(c, from, to) in &seq {
                cycle.push(from);
                work.push((c, Some(s), from, to));
            }
            nodes[s].cycle = cycle;
        } else {
            let p = new_node(&mut nodes, NodeKind::P);
            nodes[p].poles = Some((ra, rb));
            for &c in root_children {
                work.push((c, Some(p), ra, rb));
            }
        }

        let mut pending_parent: Vec<(NodeId, NodeId)> = Vec::new();
        while let Some(item) = work.pop() {
            let (c, parent, from, to) = item;
            let id = match &comps[c] {
                Comp::Chain(i) => {
                    let q = new_node(&mut nodes, NodeKind::QStar);
                    let ch = chains[*i].take().expect("each chain is placed once");
                    nodes[q].poles = Some(ch.endpoints());
                    nodes[q].chain = Some(ch);
                    qstars.push(q);
                    q
                }
                Comp::Parallel(children) => {
                    let p = new_node(&mut nodes, NodeKind::P);
                    nodes[p].poles = Some((from, to));
                    for &ch in children {
                        work.push((ch, Some(p), from, to));
                    }
                    p
                }
                Comp::Series { .. } => {
                    let s = new_node(&mut nodes, NodeKind::S);
                    let seq = expand_series(comps, ends, c, from, to);
                    let mut cycle = Vec::with_capacity(seq.len() + 1);
                    for &(ch, f, t) in &seq {
                        cycle.push(f);
                        work.push((ch, Some(s), f, t));
                    }
                    cycle.push(to);
                    nodes[s].cycle = cycle;
                    s
                }
            };
            if let Some(p) = parent {
                pending_parent.push((id, p));
            }
        }

        // Siblings pop off the stack in reverse push order.
        let mut children_of: Vec<Vec<NodeId>> = vec![Vec::new(); nodes.len()];
        let mut parent_of: Vec<Option<NodeId>> = vec![None; nodes.len()];
        for &(child, parent) in &pending_parent {
            children_of[parent].push(child);
            parent_of[child] = Some(parent);
        }
        for (x, mut nb) in children_of.into_iter().enumerate() {
            nb.reverse();
            if let Some(p) = parent_of[x] {
                nb.push(p);
            }
            nodes[x].neighbors = nb;
        }

        let mut tree = SpqTree {
            nodes,
            qstars,
            offset: Vec::new(),
            twin: Vec::new(),
        };
        tree.qstars.sort_unstable();
        tree.index_half_edges(&parent_of);
        tree
    }

    /// Half-edge offsets and twins; the parent is the last neighbour.
    fn index_half_edges(&mut self, parent_of: &[Option<NodeId>]) {
        let mut offset = Vec::with_capacity(self.nodes.len() + 1);
        let mut acc = 0;
        for n in &self.nodes {
            offset.push(acc);
            acc += n.neighbors.len();
        }
        offset.push(acc);
        let mut twin = vec![usize::MAX; acc];
        for (p, n) in self.nodes.iter().enumerate() {
            for (i, &c) in n.neighbors.iter().enumerate() {
                if parent_of[c] == Some(p) {
                    let down = offset[p] + i;
                    let up = offset[c + 1] - 1;
                    twin[down] = up;
                    twin[up] = down;
                }
            }
        }
        debug_assert!(twin.iter().all(|&t| t != usize::MAX));
        self.offset = offset;
        self.twin = twin;
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, x: NodeId) -> &SpqNode {
        &self.nodes[x]
    }

    pub fn nodes(&self) -> &[SpqNode] {
        &self.nodes
    }

    /// Q*-node ids in increasing order.
    pub fn qstar_nodes(&self) -> &[NodeId] {
        &self.qstars
    }

    pub fn kind(&self, x: NodeId) -> NodeKind {
        self.nodes[x].kind
    }

    pub fn tree_edge_count(&self) -> usize {
        self.twin.len() / 2
    }

    pub fn half_edge_count(&self) -> usize {
        self.twin.len()
    }

    /// Half-edges leaving `x`.
    pub fn half_edges(&self, x: NodeId) -> std::ops::Range<usize> {
        self.offset[x]..self.offset[x + 1]
    }

    /// Owner of half-edge `h` and the neighbour it points to.
    pub fn half_edge(&self, h: usize) -> (NodeId, NodeId) {
        let x = self.owner(h);
        (x, self.nodes[x].neighbors[h - self.offset[x]])
    }

    pub fn owner(&self, h: usize) -> NodeId {
        self.offset.partition_point(|&o| o <= h) - 1
    }

    pub fn twin(&self, h: usize) -> usize {
        self.twin[h]
    }

    /// Half-edge from `x` to its neighbour `y`.
    pub fn half_edge_to(&self, x: NodeId, y: NodeId) -> usize {
        let i = self.nodes[x]
            .neighbors
            .iter()
            .position(|&z| z == y)
            .expect("nodes are adjacent");
        self.offset[x] + i
    }

    /// Chain length of a Q*-node.
    pub fn chain_len(&self, q: NodeId) -> usize {
        self.nodes[q].chain.as_ref().map_or(0, Chain::len)
    }

    /// Poles of `x` when its parent is the neighbour reached through
    /// half-edge `h` (which must leave `x`), as an unordered pair.
    pub fn poles_toward(&self, h: usize) -> (VertexId, VertexId) {
        let (x, _) = self.half_edge(h);
        let n = &self.nodes[x];
        match n.kind {
            NodeKind::S => {
                let i = h - self.offset[x];
                let k = n.cycle.len();
                (n.cycle[i], n.cycle[(i + 1) % k])
            }
            _ => n.poles.expect("P and Q* nodes carry poles"),
        }
    }

    /// Every vertex is a pole of at most one P-node.
    pub fn is_independent_parallel(&self, n: usize) -> bool {
        let mut count = vec![0u8; n];
        for node in &self.nodes {
            if node.kind == NodeKind::P {
                let (a, b) = node.poles.unwrap();
                for v in [a, b] {
                    count[v] += 1;
                    if count[v] > 1 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// All graph edges of the chains on the `x` side of half-edge `h`
    /// (`h` leaves `x`): the pertinent graph of `x` when its parent is the
    /// other end of `h`.
    pub fn pertinent_edges(&self, h: usize) -> Vec<EdgeId> {
        let (x, parent) = self.half_edge(h);
        let mut out = Vec::new();
        let mut stack = vec![(x, parent)];
        while let Some((y, from)) = stack.pop() {
            if let Some(ch) = &self.nodes[y].chain {
                out.extend_from_slice(&ch.edges);
            }
            for &z in &self.nodes[y].neighbors {
                if z != from {
                    stack.push((z, y));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Indented text dump of the tree rooted at `root` (diagnostic only).
    pub fn dump(&self, root: NodeId) -> String {
        let mut out = String::new();
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some((x, from, depth)) = stack.pop() {
            let n = &self.nodes[x];
            let _ = write!(
                out,
                "{:width$}{}#{}",
                "",
                kind_str(n.kind),
                x,
                width = depth * 2
            );
            match n.kind {
                NodeKind::QStar => {
                    let _ = write!(out, " chain={:?}", n.chain.as_ref().unwrap().vertices);
                }
                NodeKind::P => {
                    let _ = write!(out, " poles={:?}", n.poles.unwrap());
                }
                NodeKind::S => {
                    let _ = write!(out, " cycle={:?}", n.cycle);
                }
            }
            out.push('\n');
            for &y in n.neighbors.iter().rev() {
                if y != from {
                    stack.push((y, x, depth + 1));
                }
            }
        }
        out
    }

    /// DOT-like adjacency listing (diagnostic only).
    pub fn dump_dot(&self) -> String {
        let mut out = String::from("graph spq {\n");
        for (x, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{x} [label=\"{}{x}\"];", kind_str(n.kind));
            for &y in &n.neighbors {
                if x < y {
                    let _ = writeln!(out, "  n{x} -- n{y};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn kind_str(k: NodeKind) -> &'static str {
    match k {
        NodeKind::S => "S",
        NodeKind::P => "P",
        NodeKind::QStar => "Q",
    }
}

fn other(ce: &CompEdge, w: VertexId) -> VertexId {
    if ce.a == w {
        ce.b
    } else {
        ce.a
    }
}

/// Unordered endpoints of every comp.
fn endpoints_table(comps: &[Comp], chains: &[Chain]) -> Vec<(VertexId, VertexId)> {
    let mut ends = Vec::with_capacity(comps.len());
    for c in comps {
        let e = match c {
            Comp::Chain(i) => chains[*i].endpoints(),
            Comp::Series { a, b, .. } => (*a, *b),
            // the first child always predates its P-node
            Comp::Parallel(children) => ends[children[0]],
        };
        ends.push(e);
    }
    ends
}

/// Flattens nested series comps into (non-series comp, from, to) runs
/// ordered from `from` to `to`.
fn expand_series(
    comps: &[Comp],
    ends: &[(VertexId, VertexId)],
    c: usize,
    from: VertexId,
    to: VertexId,
) -> Vec<(usize, VertexId, VertexId)> {
    let mut out = Vec::new();
    let mut stack = vec![(c, from, to)];
    while let Some((c, f, t)) = stack.pop() {
        match &comps[c] {
            Comp::Series { left, right, a, b } => {
                let (la, lb) = ends[*left];
                // shared vertex of left and right
                let w = if la == *a { lb } else { la };
                debug_assert!((f == *a && t == *b) || (f == *b && t == *a));
                if f == *a {
                    stack.push((*right, w, t));
                    stack.push((*left, f, w));
                } else {
                    stack.push((*left, w, t));
                    stack.push((*right, f, w));
                }
            }
            _ => out.push((c, f, t)),
        }
    }
    out
}

/// Maximal chains between vertices of degree at least three.
fn collect_chains(g: &Graph) -> Result<Vec<Chain>, DecompositionError> {
    let mut used = vec![false; g.edge_count()];
    let mut chains = Vec::new();
    for s in 0..g.vertex_count() {
        if g.degree(s) <= 2 {
            continue;
        }
        for &e0 in g.incident(s) {
            if used[e0] {
                continue;
            }
            let mut edges = vec![e0];
            let mut vertices = vec![s];
            used[e0] = true;
            let mut cur = g.opposite(e0, s);
            let mut last = e0;
            vertices.push(cur);
            while g.degree(cur) == 2 {
                let inc = g.incident(cur);
                let next = if inc[0] == last { inc[1] } else { inc[0] };
                used[next] = true;
                edges.push(next);
                cur = g.opposite(next, cur);
                last = next;
                vertices.push(cur);
            }
            if cur == s {
                // a cycle hanging off one vertex
                return Err(DecompositionError::NotBiconnected);
            }
            chains.push(Chain { edges, vertices });
        }
    }
    Ok(chains)
}

/// The tree rooted at a Q*-node, with root-dependent poles.
#[derive(Debug, Clone)]
pub struct RootedView {
    pub root: NodeId,
    pub parent: Vec<Option<NodeId>>,
    /// Ordered poles (u, v): u precedes v in the orientation that starts at
    /// the first vertex of the root chain.
    pub poles: Vec<(VertexId, VertexId)>,
    /// Children in skeleton order: for S-nodes from u to v, for P-nodes in
    /// neighbour order.
    pub children: Vec<Vec<NodeId>>,
    /// Post-order (children before parents), root last.
    pub order: Vec<NodeId>,
}

impl RootedView {
    /// Roots `tree` at the Q*-node `rho`.
    pub fn new(tree: &SpqTree, rho: NodeId) -> Self {
        assert_eq!(tree.kind(rho), NodeKind::QStar, "roots are Q*-nodes");
        let n = tree.node_count();
        let mut parent = vec![None; n];
        let mut poles = vec![(usize::MAX, usize::MAX); n];
        let mut children = vec![Vec::new(); n];
        let mut pre = Vec::with_capacity(n);

        let root_chain = tree.node(rho).chain.as_ref().unwrap();
        poles[rho] = root_chain.endpoints();
        let mut stack = vec![rho];
        while let Some(x) = stack.pop() {
            pre.push(x);
            let node = tree.node(x);
            let (u, v) = poles[x];
            let kids: Vec<(NodeId, VertexId, VertexId)> = if x == rho {
                vec![(node.neighbors[0], u, v)]
            } else {
                match node.kind {
                    NodeKind::QStar => Vec::new(),
                    NodeKind::P => node
                        .neighbors
                        .iter()
                        .filter(|&&y| Some(y) != parent[x])
                        .map(|&y| (y, u, v))
                        .collect(),
                    NodeKind::S => {
                        let k = node.cycle.len();
                        let p = node
                            .neighbors
                            .iter()
                            .position(|&y| Some(y) == parent[x])
                            .unwrap();
                        let mut kids = Vec::with_capacity(k - 1);
                        if node.cycle[(p + 1) % k] == u {
                            for j in 1..k {
                                let i = (p + j) % k;
                                kids.push((
                                    node.neighbors[i],
                                    node.cycle[i],
                                    node.cycle[(i + 1) % k],
                                ));
                            }
                        } else {
                            debug_assert_eq!(node.cycle[p], u);
                            for j in 1..k {
                                let i = (p + k - j) % k;
                                kids.push((
                                    node.neighbors[i],
                                    node.cycle[(i + 1) % k],
                                    node.cycle[i],
                                ));
                            }
                        }
                        kids
                    }
                }
            };
            for &(y, a, b) in &kids {
                parent[y] = Some(x);
                poles[y] = (a, b);
            }
            children[x] = kids.iter().map(|k| k.0).collect();
            for &(y, _, _) in kids.iter().rev() {
                stack.push(y);
            }
        }
        // Reverse pre-order of a DFS visits every child before its parent.
        let order = pre.into_iter().rev().collect();
        RootedView {
            root: rho,
            parent,
            poles,
            children,
            order,
        }
    }

    /// The unique child of the root.
    pub fn root_child(&self) -> NodeId {
        self.children[self.root][0]
    }

    /// Chain vertices of a Q*-node listed from its u-pole to its v-pole.
    pub fn oriented_chain(&self, tree: &SpqTree, q: NodeId) -> (Vec<VertexId>, Vec<EdgeId>) {
        let ch = tree.node(q).chain.as_ref().unwrap();
        if ch.vertices[0] == self.poles[q].0 {
            (ch.vertices.clone(), ch.edges.clone())
        } else {
            let mut v = ch.vertices.clone();
            let mut e = ch.edges.clone();
            v.reverse();
            e.reverse();
            (v, e)
        }
    }
}
