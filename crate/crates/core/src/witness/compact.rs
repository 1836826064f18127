//! Integer grid drawings from bend-free representations.
//!
//! Every face is cut into rectangles by dummy edges, after which x
//! coordinates follow from longest paths over east-pointing edges between
//! vertical runs, and y coordinates likewise.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::ortho::{OrthoRep, EAST, NORTH};
use crate::error::InternalInfeasible;
use crate::graph::VertexId;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Drawing {
    pub coords: Vec<(i64, i64)>,
    pub edges: Vec<(VertexId, VertexId)>,
}

/// Neighbour of every vertex in each of the four directions.
struct Grid {
    slot: Vec<[usize; 4]>,
}

impl Grid {
    fn add_vertex(&mut self) -> usize {
        self.slot.push([NONE; 4]);
        self.slot.len() - 1
    }

    fn link(&mut self, a: usize, dir: u8, b: usize) {
        self.slot[a][dir as usize] = b;
        self.slot[b][((dir + 2) % 4) as usize] = a;
    }

    /// Direction taken after arriving at `v` heading `h`, keeping the face
    /// on the right, with the turn made: +1 right, 0 straight, -1 left,
    /// -2 back.
    fn next(&self, v: usize, h: u8) -> (u8, i8) {
        for (turn, d) in [(1, h + 3), (0, h), (-1, h + 1), (-2, h + 2)] {
            if self.slot[v][(d % 4) as usize] != NONE {
                return (d % 4, turn);
            }
        }
        unreachable!("vertex reached along an edge has that edge")
    }

    /// Darts `(tail, dir)` of the face right of `start`, each with the turn at
    /// its head.
    fn trace(&self, start: (usize, u8)) -> Vec<(usize, u8, i8)> {
        let mut out = Vec::new();
        let (mut v, mut d) = start;
        loop {
            let w = self.slot[v][d as usize];
            let (nd, t) = self.next(w, d);
            out.push((v, d, t));
            (v, d) = (w, nd);
            if (v, d) == start {
                return out;
            }
        }
    }
}

/// Splits the face right of `start` once, if it is not a rectangle yet.
/// Returns the darts of the two faces created.
fn split_face(
    grid: &mut Grid,
    start: (usize, u8),
) -> Result<Option<[(usize, u8); 2]>, InternalInfeasible> {
    let face = grid.trace(start);
    let m = face.len();
    if face.iter().map(|f| f.2 as i64).sum::<i64>() < 0 || face.iter().all(|f| f.2 >= 0) {
        return Ok(None);
    }
    if face.iter().any(|f| f.2 < -1) {
        return Err(InternalInfeasible("face with a degree-one vertex".into()));
    }
    let nz: Vec<usize> = (0..m).filter(|&i| face[i].2 != 0).collect();
    let c = nz.len();
    let p = (0..c)
        .find(|&p| {
            face[nz[p]].2 == -1 && face[nz[(p + 1) % c]].2 == 1 && face[nz[(p + 2) % c]].2 == 1
        })
        .ok_or_else(|| InternalInfeasible("face has no reflex corner to cut from".into()))?;
    let j = nz[p];
    let k = nz[(p + 2) % c];
    let r = face[(j + 1) % m].0;
    let h = face[j].1;
    let (q, down) = (face[(k + 1) % m].0, face[(k + 1) % m].1);
    debug_assert_eq!(down, (h + 3) % 4);
    let q1 = grid.slot[q][down as usize];
    let z = grid.add_vertex();
    grid.link(q, down, z);
    grid.link(z, down, q1);
    grid.link(r, h, z);
    Ok(Some([(r, h), (z, (h + 2) % 4)]))
}

/// Encloses the drawing in a rectangle attached at a reflex corner of the
/// outer face, which turns that face into an inner one.
fn enclose(grid: &mut Grid, outer: (usize, u8)) -> Result<(), InternalInfeasible> {
    let face = grid.trace(outer);
    let &(v, h, _) = face
        .iter()
        .find(|f| f.2 < 0)
        .ok_or_else(|| InternalInfeasible("outer face has no reflex corner".into()))?;
    let w = grid.slot[v][h as usize];
    let z = grid.add_vertex();
    let a = grid.add_vertex();
    let b = grid.add_vertex();
    let c = grid.add_vertex();
    let d = grid.add_vertex();
    grid.link(w, h, z);
    grid.link(z, (h + 1) % 4, a);
    grid.link(a, (h + 2) % 4, c);
    grid.link(c, (h + 3) % 4, d);
    grid.link(d, h, b);
    grid.link(b, (h + 1) % 4, z);
    Ok(())
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Longest-path coordinate along the axis of `less`, with vertices joined
/// by `same` edges sharing it.
fn layer(grid: &Grid, same: u8, less: u8) -> Result<Vec<i64>, InternalInfeasible> {
    let n = grid.slot.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for v in 0..n {
        let w = grid.slot[v][same as usize];
        if w != NONE {
            let (a, b) = (find(&mut parent, v), find(&mut parent, w));
            parent[a] = b;
        }
    }
    let class: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let mut succ = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for v in 0..n {
        let w = grid.slot[v][less as usize];
        if w != NONE {
            succ[class[v]].push(class[w]);
            indeg[class[w]] += 1;
        }
    }
    let mut pos = vec![0i64; n];
    let mut queue: Vec<usize> = (0..n).filter(|&c| class[c] == c && indeg[c] == 0).collect();
    let roots = (0..n).filter(|&c| class[c] == c).count();
    let mut done = 0;
    while let Some(c) = queue.pop() {
        done += 1;
        for &s in &succ[c] {
            pos[s] = pos[s].max(pos[c] + 1);
            indeg[s] -= 1;
            if indeg[s] == 0 {
                queue.push(s);
            }
        }
    }
    if done != roots {
        return Err(InternalInfeasible("cyclic placement constraints".into()));
    }
    Ok((0..n).map(|v| pos[class[v]]).collect())
}

/// Replaces values by their rank among the distinct values present.
fn ranks(values: &[i64]) -> Vec<i64> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    values
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() as i64)
        .collect()
}

pub fn compact(rep: &OrthoRep) -> Result<Drawing, InternalInfeasible> {
    let n = rep.vertex_count();
    let dirs = rep
        .directions()
        .ok_or_else(|| InternalInfeasible("inconsistent directions".into()))?;
    let mut grid = Grid {
        slot: vec![[NONE; 4]; n],
    };
    for (e, &(a, b)) in rep.edges.iter().enumerate() {
        grid.link(a, dirs[2 * e], b);
    }
    if !rep.edges.is_empty() {
        let outer = (rep.tail(rep.outer_dart), dirs[rep.outer_dart]);
        enclose(&mut grid, outer)?;
        let mut seen = HashSet::new();
        let mut work = Vec::new();
        for v in 0..grid.slot.len() {
            for d in 0..4u8 {
                if grid.slot[v][d as usize] != NONE && !seen.contains(&(v, d)) {
                    for (a, b, _) in grid.trace((v, d)) {
                        seen.insert((a, b));
                    }
                    work.push((v, d));
                }
            }
        }
        while let Some(start) = work.pop() {
            if let Some(new) = split_face(&mut grid, start)? {
                work.extend(new);
            }
        }
    }
    let xs = layer(&grid, NORTH, EAST)?;
    let ys = layer(&grid, EAST, NORTH)?;
    let xs = ranks(&xs[..n]);
    let ys = ranks(&ys[..n]);
    Ok(Drawing {
        coords: xs.into_iter().zip(ys).collect(),
        edges: rep.edges.clone(),
    })
}

/// Axis-aligned box of one segment.
#[derive(Clone, Copy)]
struct Seg {
    x0: i64,
    x1: i64,
    y0: i64,
    y1: i64,
    e: usize,
}

impl Drawing {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("drawing serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Edges that are not a single horizontal or vertical segment of
    /// positive length.
    pub fn bends(&self) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| {
                let (p, q) = (self.coords[a], self.coords[b]);
                (p.0 != q.0) == (p.1 != q.1)
            })
            .count()
    }

    /// Pairs of axis-aligned segments meeting anywhere but at a shared end
    /// vertex, plus pairs of vertices placed on the same point.
    pub fn crossings(&self) -> usize {
        let mut segs: Vec<Seg> = self
            .edges
            .iter()
            .enumerate()
            .map(|(e, &(a, b))| {
                let (p, q) = (self.coords[a], self.coords[b]);
                Seg {
                    x0: p.0.min(q.0),
                    x1: p.0.max(q.0),
                    y0: p.1.min(q.1),
                    y1: p.1.max(q.1),
                    e,
                }
            })
            .collect();
        segs.sort_by_key(|s| (s.x0, s.e));
        let mut count = 0;
        for i in 0..segs.len() {
            let s = segs[i];
            for t in &segs[i + 1..] {
                if t.x0 > s.x1 {
                    break;
                }
                let (lx, hx) = (s.x0.max(t.x0), s.x1.min(t.x1));
                let (ly, hy) = (s.y0.max(t.y0), s.y1.min(t.y1));
                if lx > hx || ly > hy {
                    continue;
                }
                let (a, b) = self.edges[s.e];
                let (c, d) = self.edges[t.e];
                let shared = [a, b]
                    .into_iter()
                    .any(|w| (w == c || w == d) && self.coords[w] == (lx, ly));
                if !(lx == hx && ly == hy && shared) {
                    count += 1;
                }
            }
        }
        let distinct: HashSet<(i64, i64)> = self.coords.iter().copied().collect();
        count + self.coords.len() - distinct.len()
    }

    /// Zero bends, zero crossings, and edge directions matching `rep`.
    pub fn check(&self, rep: &OrthoRep) -> Result<(), String> {
        if self.edges != rep.edges || self.coords.len() != rep.vertex_count() {
            return Err("drawing and representation describe different graphs".into());
        }
        let bends = self.bends();
        if bends > 0 {
            return Err(format!("{bends} edges are not axis-aligned segments"));
        }
        let crossings = self.crossings();
        if crossings > 0 {
            return Err(format!("{crossings} crossings"));
        }
        let dirs = rep.directions().ok_or("inconsistent directions")?;
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            let (p, q) = (self.coords[a], self.coords[b]);
            let d = match ((q.0 - p.0).signum(), (q.1 - p.1).signum()) {
                (1, 0) => 0,
                (0, 1) => 1,
                (-1, 0) => 2,
                _ => 3,
            };
            if d != dirs[2 * e] {
                return Err(format!("edge {e} points the wrong way"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::ortho::{SOUTH, WEST};
    use super::*;

    #[test]
    fn unit_square() {
        let rep = OrthoRep::from_directions(
            4,
            vec![(0, 1), (1, 2), (2, 3), (3, 0)],
            &[EAST, NORTH, WEST, SOUTH],
            0,
        )
        .unwrap();
        let d = compact(&rep).unwrap();
        assert_eq!(d.coords, vec![(0, 0), (1, 0), (1, 1), (0, 1)]);
        d.check(&rep).unwrap();
    }

    #[test]
    fn crossing_detection() {
        let plus = Drawing {
            coords: vec![(0, 1), (2, 1), (1, 0), (1, 2)],
            edges: vec![(0, 1), (2, 3)],
        };
        assert_eq!(plus.crossings(), 1);
        let touch = Drawing {
            coords: vec![(0, 0), (2, 0), (1, 0), (1, 2)],
            edges: vec![(0, 1), (2, 3)],
        };
        assert_eq!(touch.crossings(), 1);
        let corner = Drawing {
            coords: vec![(0, 0), (1, 0), (1, 1)],
            edges: vec![(0, 1), (1, 2)],
        };
        assert_eq!(corner.crossings(), 0);
        let diagonal = Drawing {
            coords: vec![(0, 0), (1, 1)],
            edges: vec![(0, 1)],
        };
        assert_eq!(diagonal.bends(), 1);
    }

    #[test]
    fn json_shape() {
        let d = Drawing {
            coords: vec![(0, 0), (1, 0)],
            edges: vec![(0, 1)],
        };
        assert_eq!(d.to_json(), r#"{"coords":[[0,0],[1,0]],"edges":[[0,1]]}"#);
        assert_eq!(Drawing::from_json(&d.to_json()).unwrap(), d);
    }
}
