//! Undirected multigraphs on dense vertex ids, their text/JSON formats and
//! the structural classification the tester dispatches on.

use serde::{Deserialize, Serialize};

use crate::error::{ParseError, Rejection};
use crate::spq::SpqTree;

pub type VertexId = usize;
pub type EdgeId = usize;

/// An undirected multigraph. Self-loops are rejected, parallel edges kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    // incident edges of v are adj[adj_start[v]..adj_start[v + 1]]
    adj_start: Vec<usize>,
    adj: Vec<EdgeId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphClass {
    pub is_degree4: bool,
    pub is_biconnected: bool,
    pub is_simple_cycle: bool,
    pub is_sp: bool,
    pub is_independent_parallel: bool,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Builds a graph, validating vertex ranges and rejecting self-loops.
    pub fn new(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self, ParseError> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            let line = i + 2;
            for x in [u, v] {
                if x >= n {
                    return Err(ParseError::OutOfRange { line, index: x, n });
                }
            }
            if u == v {
                return Err(ParseError::SelfLoop { line, vertex: u });
            }
        }
        Ok(Self::from_valid(n, edges))
    }

    pub(crate) fn from_valid(n: usize, edges: Vec<(VertexId, VertexId)>) -> Self {
        let mut adj_start = vec![0usize; n + 1];
        for &(u, v) in &edges {
            adj_start[u + 1] += 1;
            adj_start[v + 1] += 1;
        }
        for v in 0..n {
            adj_start[v + 1] += adj_start[v];
        }
        let mut fill = adj_start.clone();
        let mut adj = vec![0; 2 * edges.len()];
        for (e, &(u, v)) in edges.iter().enumerate() {
            adj[fill[u]] = e;
            fill[u] += 1;
            adj[fill[v]] = e;
            fill[v] += 1;
        }
        Graph {
            n,
            edges,
            adj_start,
            adj,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// Incident edge ids of `v`, in insertion order.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adj[self.adj_start[v]..self.adj_start[v + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj_start[v + 1] - self.adj_start[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Parses either accepted format; JSON is recognised by a leading `{`.
    pub fn parse(text: &[u8]) -> Result<Self, ParseError> {
        let s = std::str::from_utf8(text).map_err(|e| ParseError::Header {
            line: 1,
            detail: format!("not UTF-8: {e}"),
        })?;
        if s.trim_start().starts_with('{') {
            Self::parse_json(s)
        } else {
            Self::parse_text(s)
        }
    }

    /// `n m` header followed by `m` lines of `u v`.
    pub fn parse_text(s: &str) -> Result<Self, ParseError> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(ParseError::Header {
            line: 1,
            detail: "empty input".into(),
        })?;
        let nums = parse_pair(header).ok_or_else(|| ParseError::Header {
            line: hline,
            detail: format!("expected \"n m\", got {header:?}"),
        })?;
        let (n, m) = nums;
        let mut edges = Vec::with_capacity(m);
        let mut last = hline;
        for (line, l) in lines {
            last = line;
            let (u, v) = parse_pair(l).ok_or_else(|| ParseError::Edge {
                line,
                detail: format!("expected \"u v\", got {l:?}"),
            })?;
            for x in [u, v] {
                if x >= n {
                    return Err(ParseError::OutOfRange { line, index: x, n });
                }
            }
            if u == v {
                return Err(ParseError::SelfLoop { line, vertex: u });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(ParseError::EdgeCount {
                line: last,
                expected: m,
                found: edges.len(),
            });
        }
        Ok(Self::from_valid(n, edges))
    }

    /// `{"n": int, "edges": [[u, v], ...]}`.
    pub fn parse_json(s: &str) -> Result<Self, ParseError> {
        let raw: JsonGraph =
            serde_json::from_str(s).map_err(|e| ParseError::Json(e.to_string()))?;
        Self::new(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v)).collect())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let raw = JsonGraph {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        };
        serde_json::to_string(&raw).expect("graph serializes")
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &e in self.incident(v) {
                let w = self.opposite(e, v);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Connected, every vertex of degree two.
    pub fn is_simple_cycle(&self) -> bool {
        self.n >= 2 && (0..self.n).all(|v| self.degree(v) == 2) && self.is_connected()
    }

    /// Connected, minimum degree two and free of cut vertices. Parallel
    /// edges count as distinct, so a digon is biconnected.
    pub fn is_biconnected(&self) -> bool {
        if self.n < 2 || (0..self.n).any(|v| self.degree(v) < 2) {
            return false;
        }
        // Iterative low-point DFS keyed by edge id so multi-edges act as back edges.
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0usize; self.n];
        let mut time = 0;
        // (vertex, parent edge, next adjacency index)
        let mut stack: Vec<(VertexId, EdgeId, usize)> = vec![(0, usize::MAX, 0)];
        disc[0] = time;
        low[0] = time;
        time += 1;
        let mut root_children = 0;
        while let Some(&mut (v, pe, ref mut idx)) = stack.last_mut() {
            let inc = self.incident(v);
            if *idx < inc.len() {
                let e = inc[*idx];
                *idx += 1;
                if e == pe {
                    continue;
                }
                let w = self.opposite(e, v);
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == 0 {
                        root_children += 1;
                    }
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if p != 0 && low[v] >= disc[p] {
                        return false;
                    }
                }
            }
        }
        time == self.n && root_children == 1
    }

    /// Checks the tester's preconditions in a fixed order and returns the
    /// decomposition when the graph is not a simple cycle.
    pub fn check_scope(&self) -> Result<Option<SpqTree>, Rejection> {
        if self.max_degree() > 4 {
            return Err(Rejection::DegreeExceeded);
        }
        if !self.is_biconnected() {
            return Err(Rejection::NotBiconnected);
        }
        if self.is_simple_cycle() {
            return Ok(None);
        }
        let tree = SpqTree::build_unchecked(self).map_err(|_| Rejection::NotSeriesParallel)?;
        if !tree.is_independent_parallel(self.n) {
            return Err(Rejection::NotIndependentParallel);
        }
        Ok(Some(tree))
    }

    pub fn classify(&self) -> GraphClass {
        let is_degree4 = self.max_degree() <= 4;
        let is_biconnected = self.is_biconnected();
        let is_simple_cycle = self.is_simple_cycle();
        let (is_sp, is_independent_parallel) = if !is_biconnected {
            (false, false)
        } else if is_simple_cycle {
            (true, true)
        } else {
            match SpqTree::build(self) {
                Ok(t) => (true, t.is_independent_parallel(self.n)),
                Err(_) => (false, false),
            }
        };
        GraphClass {
            is_degree4,
            is_biconnected,
            is_simple_cycle,
            is_sp,
            is_independent_parallel,
        }
    }
}

fn parse_pair(l: &str) -> Option<(usize, usize)> {
    let mut it = l.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}
