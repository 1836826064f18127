//! Bend-free orthogonal representations.
//!
//! Dart `2e` runs along edge `e` from its first endpoint to its second and
//! dart `2e + 1` runs back. Directions are quarter turns counter-clockwise
//! from east: 0 east, 1 north, 2 west, 3 south.

use serde::Serialize;

use crate::error::InternalInfeasible;
use crate::graph::{EdgeId, VertexId};
use crate::oracle::EmbeddingChoice;
use crate::spq::{RootedView, SpqTree};

pub const EAST: u8 = 0;
pub const NORTH: u8 = 1;
pub const WEST: u8 = 2;
pub const SOUTH: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthoRep {
    pub edges: Vec<(VertexId, VertexId)>,
    /// Darts leaving each vertex in counter-clockwise order.
    pub rotation: Vec<Vec<usize>>,
    /// `angles[v][i]` is the angle in degrees from `rotation[v][i]` to its
    /// counter-clockwise successor.
    pub angles: Vec<Vec<u16>>,
    /// A dart with the external face on its right.
    pub outer_dart: usize,
}

/// Faces of a rotation system, each a cycle of darts with the face on its
/// right.
#[derive(Debug, Clone)]
pub struct Faces {
    pub faces: Vec<Vec<usize>>,
    pub face_of_dart: Vec<usize>,
}

impl OrthoRep {
    /// Builds the representation whose dart `2e` points in `dirs[e]`.
    pub fn from_directions(
        n: usize,
        edges: Vec<(VertexId, VertexId)>,
        dirs: &[u8],
        outer_dart: usize,
    ) -> Result<Self, InternalInfeasible> {
        let mut slots = vec![[usize::MAX; 4]; n];
        for (e, &(a, b)) in edges.iter().enumerate() {
            let d = dirs[e];
            if d > 3 {
                return Err(InternalInfeasible(format!("edge {e} has no direction")));
            }
            for (w, dart, dir) in [(a, 2 * e, d), (b, 2 * e + 1, (d + 2) % 4)] {
                if slots[w][dir as usize] != usize::MAX {
                    return Err(InternalInfeasible(format!(
                        "two edges leave vertex {w} in direction {dir}"
                    )));
                }
                slots[w][dir as usize] = dart;
            }
        }
        let mut rotation = Vec::with_capacity(n);
        let mut angles = Vec::with_capacity(n);
        for s in &slots {
            let used: Vec<usize> = (0..4).filter(|&d| s[d] != usize::MAX).collect();
            rotation.push(used.iter().map(|&d| s[d]).collect());
            angles.push(
                (0..used.len())
                    .map(|i| {
                        let next = used[(i + 1) % used.len()];
                        let q = (next + 4 - used[i]) % 4;
                        if q == 0 {
                            360
                        } else {
                            90 * q as u16
                        }
                    })
                    .collect(),
            );
        }
        Ok(OrthoRep {
            edges,
            rotation,
            angles,
            outer_dart,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn tail(&self, d: usize) -> VertexId {
        let (a, b) = self.edges[d / 2];
        if d.is_multiple_of(2) {
            a
        } else {
            b
        }
    }

    pub fn head(&self, d: usize) -> VertexId {
        self.tail(d ^ 1)
    }

    /// The dart leaving `w` along `e`.
    pub fn dart_from(&self, w: VertexId, e: EdgeId) -> usize {
        if self.edges[e].0 == w {
            2 * e
        } else {
            2 * e + 1
        }
    }

    fn position(&self, d: usize) -> usize {
        let w = self.tail(d);
        self.rotation[w]
            .iter()
            .position(|&x| x == d)
            .expect("dart in rotation")
    }

    pub fn faces(&self) -> Faces {
        let nd = 2 * self.edges.len();
        let mut pos = vec![usize::MAX; nd];
        for r in &self.rotation {
            for (i, &d) in r.iter().enumerate() {
                pos[d] = i;
            }
        }
        let mut face_of_dart = vec![usize::MAX; nd];
        let mut faces = Vec::new();
        for d0 in 0..nd {
            if face_of_dart[d0] != usize::MAX || pos[d0] == usize::MAX {
                continue;
            }
            let f = faces.len();
            let mut face = Vec::new();
            let mut d = d0;
            while face_of_dart[d] == usize::MAX {
                face_of_dart[d] = f;
                face.push(d);
                let r = d ^ 1;
                let rot = &self.rotation[self.tail(r)];
                if pos[r] == usize::MAX {
                    break;
                }
                d = rot[(pos[r] + 1) % rot.len()];
            }
            faces.push(face);
        }
        Faces {
            faces,
            face_of_dart,
        }
    }

    /// Direction of every dart, propagated from `outer_dart` pointing east.
    pub fn directions(&self) -> Option<Vec<u8>> {
        let nd = 2 * self.edges.len();
        let mut dir = vec![u8::MAX; nd];
        if nd == 0 {
            return Some(dir);
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![(self.outer_dart, EAST)];
        while let Some((d, h)) = stack.pop() {
            if dir[d] != u8::MAX {
                if dir[d] != h {
                    return None;
                }
                continue;
            }
            dir[d] = h;
            let w = self.tail(d);
            stack.push((d ^ 1, (h + 2) % 4));
            if seen[w] {
                continue;
            }
            seen[w] = true;
            let r = &self.rotation[w];
            let i = self.position(d);
            let mut acc = h as u32;
            for j in 1..r.len() {
                acc += self.angles[w][(i + j - 1) % r.len()] as u32 / 90;
                stack.push((r[(i + j) % r.len()], (acc % 4) as u8));
            }
        }
        Some(dir)
    }

    /// The same representation in the oracle's encoding, angles in units of
    /// 90 degrees.
    pub fn to_embedding(&self) -> (EmbeddingChoice, Vec<Vec<u8>>) {
        let faces = self.faces();
        (
            EmbeddingChoice {
                rotation: self.rotation.clone(),
                outer_face: faces.face_of_dart[self.outer_dart],
            },
            self.angles
                .iter()
                .map(|a| a.iter().map(|&x| (x / 90) as u8).collect())
                .collect(),
        )
    }
}

fn connected(rep: &OrthoRep) -> bool {
    let n = rep.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(w) = stack.pop() {
        for &d in &rep.rotation[w] {
            let x = rep.head(d);
            if !seen[x] {
                seen[x] = true;
                count += 1;
                stack.push(x);
            }
        }
    }
    count == n
}

/// Angle sums around vertices and faces, and a planar rotation system.
pub fn verify_ortho(rep: &OrthoRep) -> bool {
    let n = rep.vertex_count();
    let nd = 2 * rep.edges.len();
    if rep.angles.len() != n
        || rep.outer_dart >= nd
        || rep.edges.iter().any(|&(a, b)| a >= n || b >= n)
    {
        return false;
    }
    let mut seen = vec![false; nd];
    for (w, r) in rep.rotation.iter().enumerate() {
        if rep.angles[w].len() != r.len() {
            return false;
        }
        for &d in r {
            if d >= nd || seen[d] || rep.tail(d) != w {
                return false;
            }
            seen[d] = true;
        }
        let a = &rep.angles[w];
        if a.iter().any(|x| ![90, 180, 270, 360].contains(x)) {
            return false;
        }
        if !r.is_empty() && a.iter().map(|&x| x as u32).sum::<u32>() != 360 {
            return false;
        }
    }
    if seen.iter().any(|s| !s) || !connected(rep) {
        return false;
    }
    let faces = rep.faces();
    if n + faces.faces.len() != rep.edges.len() + 2 {
        return false;
    }
    let mut sums = vec![0i64; faces.faces.len()];
    for (w, r) in rep.rotation.iter().enumerate() {
        for (i, &d) in r.iter().enumerate() {
            sums[faces.face_of_dart[d ^ 1]] += 2 - rep.angles[w][i] as i64 / 90;
        }
    }
    let outer = faces.face_of_dart[rep.outer_dart];
    sums.iter()
        .enumerate()
        .all(|(f, &s)| s == if f == outer { -4 } else { 4 })
}

/// Signed turn at `w` when arriving along `e_in` and leaving along `e_out`:
/// +1 right, 0 straight, -1 left.
fn turn(rep: &OrthoRep, w: VertexId, e_in: EdgeId, e_out: EdgeId) -> i64 {
    let r = &rep.rotation[w];
    let i = rep.position(rep.dart_from(w, e_in));
    let j = rep.position(rep.dart_from(w, e_out));
    let mut right = 0i64;
    let mut k = i;
    while k != j {
        right += rep.angles[w][k] as i64 / 90;
        k = (k + 1) % r.len();
    }
    2 - right
}

/// Path of edges from `u` to `v` using only edges marked `inside`.
fn spine(rep: &OrthoRep, inside: &[bool], u: VertexId, v: VertexId, reversed: bool) -> Vec<EdgeId> {
    let n = rep.vertex_count();
    let mut via = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[u] = true;
    let mut queue = std::collections::VecDeque::from([u]);
    while let Some(w) = queue.pop_front() {
        if w == v {
            break;
        }
        let darts: Vec<usize> = if reversed {
            rep.rotation[w].iter().rev().copied().collect()
        } else {
            rep.rotation[w].clone()
        };
        for d in darts {
            let x = rep.head(d);
            if inside[d / 2] && !seen[x] {
                seen[x] = true;
                via[x] = d / 2;
                queue.push_back(x);
            }
        }
    }
    assert!(seen[v], "poles are connected inside the component");
    let mut path = Vec::new();
    let mut w = v;
    while w != u {
        let e = via[w];
        path.push(e);
        let (a, b) = rep.edges[e];
        w = if a == w { b } else { a };
    }
    path.reverse();
    path
}

/// The edge at `w` leaving the component, when `w` has more than one edge
/// inside it.
fn alias_edge(rep: &OrthoRep, inside: &[bool], w: VertexId) -> Option<EdgeId> {
    let edges: Vec<EdgeId> = rep.rotation[w].iter().map(|d| d / 2).collect();
    let inner = edges.iter().filter(|&&e| inside[e]).count();
    if inner <= 1 {
        return None;
    }
    let outer: Vec<EdgeId> = edges.into_iter().filter(|&e| !inside[e]).collect();
    assert_eq!(
        outer.len(),
        1,
        "a pole with several inner edges has one outer edge"
    );
    Some(outer[0])
}

fn spine_turns(rep: &OrthoRep, inside: &[bool], u: VertexId, v: VertexId, reversed: bool) -> i64 {
    let path = spine(rep, inside, u, v, reversed);
    let mut seq = Vec::with_capacity(path.len() + 2);
    seq.extend(alias_edge(rep, inside, u));
    seq.extend(path.iter().copied());
    seq.extend(alias_edge(rep, inside, v));
    let mut w = match alias_edge(rep, inside, u) {
        Some(e) => rep.edges[e].0 + rep.edges[e].1 - u,
        None => u,
    };
    let mut total = 0;
    for pair in seq.windows(2) {
        let (a, b) = rep.edges[pair[0]];
        w = if a == w { b } else { a };
        total += turn(rep, w, pair[0], pair[1]);
    }
    total
}

/// Right turns minus left turns along a spine of the component of `node`,
/// between the aliases of its poles.
pub fn measure_spirality(rep: &OrthoRep, tree: &SpqTree, view: &RootedView, node: usize) -> i64 {
    let p = view.parent[node].expect("the root has no component spirality");
    let mut inside = vec![false; rep.edges.len()];
    for e in tree.pertinent_edges(tree.half_edge_to(node, p)) {
        inside[e] = true;
    }
    let (u, v) = view.poles[node];
    let a = spine_turns(rep, &inside, u, v, false);
    let b = spine_turns(rep, &inside, u, v, true);
    assert_eq!(a, b, "spirality does not depend on the spine");
    a
}
