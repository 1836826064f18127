//! Exhaustive ground truth for small instances.
//!
//! Enumerates every rotation system, keeps the planar ones (Euler's
//! formula), and searches vertex angles in units of 90° so that every
//! vertex sums to 360° and every face has corner sum +4, or −4 for the
//! external face. Nothing here uses the spirality algebra.

use serde::Serialize;

use crate::error::OracleError;
use crate::graph::{EdgeId, Graph, VertexId};

pub const DEFAULT_CAP: usize = 14;

/// A combinatorial embedding: darts around each vertex in counter-clockwise
/// order, plus the external face. Dart `2e` runs from the first endpoint of
/// edge `e` to the second, dart `2e + 1` the other way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingChoice {
    pub rotation: Vec<Vec<usize>>,
    pub outer_face: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub feasible: bool,
    pub embeddings_tried: usize,
    /// Embedding and corner angles (units of 90°, `angles[v][i]` sits
    /// counter-clockwise after dart `rotation[v][i]`) of one solution.
    pub witness: Option<(EmbeddingChoice, Vec<Vec<u8>>)>,
}

#[derive(Serialize)]
struct ResultJson {
    feasible: bool,
    embeddings_tried: usize,
}

impl OracleResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ResultJson {
            feasible: self.feasible,
            embeddings_tried: self.embeddings_tried,
        })
        .expect("result serializes")
    }
}

fn tail(g: &Graph, d: usize) -> VertexId {
    let (a, b) = g.edge(d / 2);
    if d.is_multiple_of(2) {
        a
    } else {
        b
    }
}

/// Faces of a rotation system.
struct Embedding {
    rot: Vec<Vec<usize>>,
    faces: Vec<Vec<usize>>,
    face_of_dart: Vec<usize>,
}

impl Embedding {
    fn new(g: &Graph, rot: Vec<Vec<usize>>) -> Self {
        let nd = 2 * g.edge_count();
        let mut pos = vec![0; nd];
        for r in &rot {
            for (i, &d) in r.iter().enumerate() {
                pos[d] = i;
            }
        }
        let mut face_of_dart = vec![usize::MAX; nd];
        let mut faces = Vec::new();
        for d0 in 0..nd {
            if face_of_dart[d0] != usize::MAX {
                continue;
            }
            let f = faces.len();
            let mut face = Vec::new();
            let mut d = d0;
            while face_of_dart[d] == usize::MAX {
                face_of_dart[d] = f;
                face.push(d);
                let r = d ^ 1;
                let y = tail(g, r);
                d = rot[y][(pos[r] + 1) % rot[y].len()];
            }
            faces.push(face);
        }
        Embedding {
            rot,
            faces,
            face_of_dart,
        }
    }

    /// Face holding the corner after dart `rot[w][i]`.
    fn corner_face(&self, w: VertexId, i: usize) -> usize {
        self.face_of_dart[self.rot[w][i] ^ 1]
    }

    fn is_planar(&self, g: &Graph) -> bool {
        g.vertex_count() + self.faces.len() == g.edge_count() + 2
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Calls `f` on every planar embedding; stops when `f` returns true.
fn for_each_planar_embedding(g: &Graph, mut f: impl FnMut(&Embedding) -> bool) {
    let choices: Vec<Vec<Vec<usize>>> = (0..g.vertex_count())
        .map(|v| {
            let darts: Vec<usize> = g
                .incident(v)
                .iter()
                .map(|&e| if g.edge(e).0 == v { 2 * e } else { 2 * e + 1 })
                .collect();
            if darts.is_empty() {
                return vec![Vec::new()];
            }
            permutations(&darts[1..])
                .into_iter()
                .map(|mut p| {
                    p.insert(0, darts[0]);
                    p
                })
                .collect()
        })
        .collect();
    let mut idx = vec![0usize; g.vertex_count()];
    loop {
        let rot: Vec<Vec<usize>> = idx
            .iter()
            .enumerate()
            .map(|(v, &i)| choices[v][i].clone())
            .collect();
        let emb = Embedding::new(g, rot);
        if emb.is_planar(g) && f(&emb) {
            return;
        }
        let mut v = 0;
        loop {
            if v == idx.len() {
                return;
            }
            idx[v] += 1;
            if idx[v] < choices[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

fn angle_options(deg: usize) -> &'static [&'static [u8]] {
    match deg {
        1 => &[&[4]],
        2 => &[&[1, 3], &[2, 2], &[3, 1]],
        3 => &[&[1, 1, 2], &[1, 2, 1], &[2, 1, 1]],
        4 => &[&[1, 1, 1, 1]],
        _ => &[],
    }
}

fn angle_bounds(deg: usize) -> (i64, i64) {
    match deg {
        1 => (4, 4),
        2 => (1, 3),
        3 => (1, 2),
        _ => (1, 1),
    }
}

/// Linear constraint: the angles of `corners` sum to `need`.
struct Constraint {
    corners: Vec<(VertexId, usize)>,
    need: i64,
}

/// Backtracking angle search over a fixed embedding.
struct Solver<'a> {
    g: &'a Graph,
    cons: Vec<Constraint>,
    /// Constraints containing corner (v, i).
    member: Vec<Vec<Vec<usize>>>,
    sum: Vec<i64>,
    rem_min: Vec<i64>,
    rem_max: Vec<i64>,
    order: Vec<VertexId>,
    choice: Vec<usize>,
}

impl<'a> Solver<'a> {
    fn new(g: &'a Graph, cons: Vec<Constraint>) -> Self {
        let n = g.vertex_count();
        let mut member: Vec<Vec<Vec<usize>>> =
            (0..n).map(|v| vec![Vec::new(); g.degree(v)]).collect();
        let mut rem_min = vec![0; cons.len()];
        let mut rem_max = vec![0; cons.len()];
        for (c, con) in cons.iter().enumerate() {
            for &(v, i) in &con.corners {
                member[v][i].push(c);
                let (lo, hi) = angle_bounds(g.degree(v));
                rem_min[c] += lo;
                rem_max[c] += hi;
            }
        }
        // vertices with choices first, most constrained first
        let mut order: Vec<VertexId> = (0..n).collect();
        order.sort_by_key(|&v| {
            (
                angle_options(g.degree(v)).len() == 1,
                std::cmp::Reverse(g.degree(v)),
            )
        });
        Solver {
            g,
            sum: vec![0; cons.len()],
            rem_min,
            rem_max,
            member,
            cons,
            order,
            choice: vec![0; n],
        }
    }

    fn ok(&self, c: usize) -> bool {
        let need = self.cons[c].need;
        self.sum[c] + self.rem_min[c] <= need && need <= self.sum[c] + self.rem_max[c]
    }

    fn apply(&mut self, v: VertexId, opt: &[u8], sign: i64) {
        let (lo, hi) = angle_bounds(self.g.degree(v));
        for (i, &a) in opt.iter().enumerate() {
            for k in 0..self.member[v][i].len() {
                let c = self.member[v][i][k];
                self.sum[c] += sign * a as i64;
                self.rem_min[c] -= sign * lo;
                self.rem_max[c] -= sign * hi;
            }
        }
    }

    fn solve(&mut self) -> bool {
        if (0..self.cons.len()).any(|c| !self.ok(c)) {
            return false;
        }
        self.search(0)
    }

    fn search(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let v = self.order[k];
        let opts = angle_options(self.g.degree(v));
        for (oi, opt) in opts.iter().enumerate() {
            self.apply(v, opt, 1);
            let good = (0..opt.len()).all(|i| self.member[v][i].iter().all(|&c| self.ok(c)));
            if good {
                self.choice[v] = oi;
                if self.search(k + 1) {
                    return true;
                }
            }
            self.apply(v, opt, -1);
        }
        false
    }

    fn angles(&self) -> Vec<Vec<u8>> {
        (0..self.g.vertex_count())
            .map(|v| {
                angle_options(self.g.degree(v))
                    .get(self.choice[v])
                    .map_or(Vec::new(), |o| o.to_vec())
            })
            .collect()
    }
}

fn face_constraints(emb: &Embedding, outer: usize) -> Vec<Constraint> {
    let mut cons: Vec<Constraint> = emb
        .faces
        .iter()
        .enumerate()
        .map(|(f, darts)| Constraint {
            corners: Vec::with_capacity(darts.len()),
            need: 2 * darts.len() as i64 - if f == outer { -4 } else { 4 },
        })
        .collect();
    for (w, r) in emb.rot.iter().enumerate() {
        for i in 0..r.len() {
            cons[emb.corner_face(w, i)].corners.push((w, i));
        }
    }
    cons
}

fn precheck(g: &Graph, cap: usize) -> Result<(), OracleError> {
    if g.edge_count() > cap {
        return Err(OracleError::CapExceeded {
            edges: g.edge_count(),
            cap,
        });
    }
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    Ok(())
}

pub fn oracle_test(g: &Graph) -> Result<OracleResult, OracleError> {
    oracle_test_capped(g, DEFAULT_CAP)
}

pub fn oracle_test_capped(g: &Graph, cap: usize) -> Result<OracleResult, OracleError> {
    precheck(g, cap)?;
    let mut result = OracleResult {
        feasible: false,
        embeddings_tried: 0,
        witness: None,
    };
    if g.max_degree() > 4 {
        return Ok(result);
    }
    for_each_planar_embedding(g, |emb| {
        for outer in 0..emb.faces.len() {
            result.embeddings_tried += 1;
            let mut solver = Solver::new(g, face_constraints(emb, outer));
            if solver.solve() {
                result.feasible = true;
                result.witness = Some((
                    EmbeddingChoice {
                        rotation: emb.rot.clone(),
                        outer_face: outer,
                    },
                    solver.angles(),
                ));
                return true;
            }
        }
        false
    });
    Ok(result)
}

/// Copy of the subgraph on `edges` with vertices renumbered; poles map to
/// `(u', v')` in the copy.
pub fn component_graph(
    g: &Graph,
    edges: &[EdgeId],
    u: VertexId,
    v: VertexId,
) -> (Graph, VertexId, VertexId) {
    let mut id = vec![usize::MAX; g.vertex_count()];
    let mut n = 0;
    let mut map = |x: VertexId, id: &mut Vec<usize>| {
        if id[x] == usize::MAX {
            id[x] = n;
            n += 1;
        }
        id[x]
    };
    let (cu, cv) = (map(u, &mut id), map(v, &mut id));
    let es: Vec<(usize, usize)> = edges
        .iter()
        .map(|&e| {
            let (a, b) = g.edge(e);
            (map(a, &mut id), map(b, &mut id))
        })
        .collect();
    (Graph::from_valid(n, es), cu, cv)
}

/// Spiralities of all bend-free representations of a component with poles
/// `u` and `v`, both alias ends on the external face. A pole of degree
/// above one gets a stub edge to a new alias vertex. Returns the sorted
/// symmetric set of values.
pub fn oracle_spirality_set(
    component: &Graph,
    u: VertexId,
    v: VertexId,
) -> Result<Vec<i64>, OracleError> {
    oracle_spirality_set_capped(component, u, v, DEFAULT_CAP)
}

pub fn oracle_spirality_set_capped(
    component: &Graph,
    u: VertexId,
    v: VertexId,
    cap: usize,
) -> Result<Vec<i64>, OracleError> {
    precheck(component, cap)?;
    let mut n = component.vertex_count();
    let mut edges = component.edges().to_vec();
    let mut alias = |w: VertexId, edges: &mut Vec<(usize, usize)>| {
        if component.degree(w) > 1 {
            edges.push((w, n));
            n += 1;
            n - 1
        } else {
            w
        }
    };
    let ua = alias(u, &mut edges);
    let va = alias(v, &mut edges);
    let aug = Graph::from_valid(n, edges);
    if aug.max_degree() > 4 {
        return Ok(Vec::new());
    }

    // spine: ua, u, shortest path inside the component, v, va
    let path = bfs_path(component, u, v).ok_or(OracleError::Disconnected)?;
    let mut spine = Vec::new();
    if ua != u {
        spine.push(ua);
    }
    spine.extend(&path);
    if va != v {
        spine.push(va);
    }
    let bound = spine.len().saturating_sub(2) as i64;

    let mut found = vec![false; bound as usize + 1];
    for_each_planar_embedding(&aug, |emb| {
        let outer = emb.corner_face(ua, 0);
        if emb.corner_face(va, 0) != outer {
            return false;
        }
        if !Solver::new(&aug, face_constraints(emb, outer)).solve() {
            return false;
        }
        let turn_corners = spine_corners(&aug, emb, &spine);
        for sigma in 0..=bound {
            if found[sigma as usize] {
                continue;
            }
            let mut cons = face_constraints(emb, outer);
            let corners: Vec<(VertexId, usize)> = turn_corners.iter().flatten().copied().collect();
            cons.push(Constraint {
                corners,
                need: 2 * turn_corners.len() as i64 - sigma,
            });
            if Solver::new(&aug, cons).solve() {
                found[sigma as usize] = true;
            }
        }
        found.iter().all(|&b| b)
    });
    let mut out: Vec<i64> = Vec::new();
    for (s, &ok) in found.iter().enumerate() {
        if ok {
            out.push(s as i64);
            if s > 0 {
                out.push(-(s as i64));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// For each interior spine vertex, the corners on the right of the walk.
fn spine_corners(g: &Graph, emb: &Embedding, spine: &[VertexId]) -> Vec<Vec<(VertexId, usize)>> {
    let mut out = Vec::new();
    for k in 1..spine.len() - 1 {
        let (p, w, c) = (spine[k - 1], spine[k], spine[k + 1]);
        let to = |x: VertexId| {
            emb.rot[w]
                .iter()
                .position(|&d| tail(g, d ^ 1) == x)
                .expect("spine follows edges")
        };
        let (ip, ic) = (to(p), to(c));
        let deg = emb.rot[w].len();
        let mut corners = Vec::new();
        let mut i = ip;
        while i != ic {
            corners.push((w, i));
            i = (i + 1) % deg;
        }
        out.push(corners);
    }
    out
}

fn bfs_path(g: &Graph, s: VertexId, t: VertexId) -> Option<Vec<VertexId>> {
    let mut prev = vec![usize::MAX; g.vertex_count()];
    prev[s] = s;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        if x == t {
            break;
        }
        for &e in g.incident(x) {
            let y = g.opposite(e, x);
            if prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    if prev[t] == usize::MAX {
        return None;
    }
    let mut path = vec![t];
    while *path.last().unwrap() != s {
        path.push(prev[*path.last().unwrap()]);
    }
    path.reverse();
    Some(path)
}

/// Independent check of a bend-free representation given as an embedding
/// with corner angles.
pub fn check_representation(g: &Graph, choice: &EmbeddingChoice, angles: &[Vec<u8>]) -> bool {
    let emb = Embedding::new(g, choice.rotation.clone());
    if !emb.is_planar(g) || choice.outer_face >= emb.faces.len() {
        return false;
    }
    for v in 0..g.vertex_count() {
        if angles[v].len() != g.degree(v) || angles[v].iter().map(|&a| a as u32).sum::<u32>() != 4 {
            return false;
        }
    }
    let mut sums = vec![0i64; emb.faces.len()];
    for (w, r) in emb.rot.iter().enumerate() {
        for i in 0..r.len() {
            sums[emb.corner_face(w, i)] += 2 - angles[w][i] as i64;
        }
    }
    sums.iter()
        .enumerate()
        .all(|(f, &s)| s == if f == choice.outer_face { -4 } else { 4 })
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
    fn cycles_and_digon() {
        assert!(!oracle_test(&cycle(3)).unwrap().feasible);
        assert!(oracle_test(&cycle(4)).unwrap().feasible);
        assert!(oracle_test(&cycle(7)).unwrap().feasible);
        assert!(!oracle_test(&g(2, &[(0, 1), (0, 1)])).unwrap().feasible);
    }

    #[test]
    fn witness_checks() {
        let r = oracle_test(&cycle(6)).unwrap();
        let (emb, angles) = r.witness.unwrap();
        assert!(check_representation(&cycle(6), &emb, &angles));
        let mut bad = angles.clone();
        bad[0] = if angles[0] == [2, 2] {
            vec![1, 3]
        } else {
            vec![2, 2]
        };
        assert!(!check_representation(&cycle(6), &emb, &bad));
    }

    #[test]
    fn cap_and_connectivity() {
        assert!(matches!(
            oracle_test(&cycle(20)),
            Err(OracleError::CapExceeded { edges: 20, cap: 14 })
        ));
        assert_eq!(
            oracle_test(&g(4, &[(0, 1), (2, 3)])).unwrap_err(),
            OracleError::Disconnected
        );
    }

    #[test]
    fn k4_planar_but_not_rectilinear() {
        // every face of K4 is a triangle
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let r = oracle_test(&k4).unwrap();
        assert!(!r.feasible);
        assert!(r.embeddings_tried > 0);
    }

    #[test]
    fn k33_has_no_planar_embedding() {
        let k33 = g(
            6,
            &[
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
        );
        let r = oracle_test(&k33).unwrap();
        assert_eq!(r.embeddings_tried, 0);
    }

    #[test]
    fn chain_sets() {
        let chain = g(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(
            oracle_spirality_set(&chain, 0, 3).unwrap(),
            vec![-2, -1, 0, 1, 2]
        );
        let edge = g(2, &[(0, 1)]);
        assert_eq!(oracle_spirality_set(&edge, 0, 1).unwrap(), vec![0]);
    }

    #[test]
    fn digon_component_is_empty() {
        let d = g(2, &[(0, 1), (0, 1)]);
        assert_eq!(oracle_spirality_set(&d, 0, 1).unwrap(), Vec::<i64>::new());
    }

    #[test]
    fn theta_component() {
        // three chains of two edges between 0 and 1
        let th = g(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]);
        // the three chains must spiral as σ+2, σ, σ−2 with each in [−1, 1]
        assert_eq!(oracle_spirality_set(&th, 0, 1).unwrap(), Vec::<i64>::new());
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
        assert_eq!(oracle_spirality_set(&long, 0, 1).unwrap(), vec![0]);
    }
}
