use rectiplanar::generators::{gen_lowerbound, gen_random_ipsp, small_random_corpus};
use rectiplanar::oracle::check_representation;
use rectiplanar::witness::{draw, measure_spirality, to_svg};
use rectiplanar::{DrawError, Graph, NodeKind};

fn drawn_and_checked(g: &Graph) -> bool {
    match draw(g) {
        Ok(w) => {
            w.check().unwrap_or_else(|e| panic!("{}: {e}", g.to_text()));
            true
        }
        Err(DrawError::NotRectilinear) => false,
        Err(e) => panic!("{}: {e}", g.to_text()),
    }
}

#[test]
fn random_small_witnesses_pass_the_oracle() {
    let mut accepted = 0;
    for g in small_random_corpus(150, 12, 5) {
        if !drawn_and_checked(&g) {
            continue;
        }
        accepted += 1;
        let w = draw(&g).unwrap();
        let (emb, angles) = w.rep.to_embedding();
        assert!(check_representation(&g, &emb, &angles), "{}", g.to_text());
    }
    assert!(accepted > 10);
}

#[test]
fn larger_random_graphs() {
    let mut accepted = 0;
    for seed in 0..40 {
        let g = gen_random_ipsp(20 + seed as usize, seed);
        accepted += drawn_and_checked(&g) as usize;
    }
    assert!(accepted > 3);
}

/// Replaces every edge by a path of `k` edges.
fn subdivide(g: &Graph, k: usize) -> Graph {
    let mut n = g.vertex_count();
    let mut edges = Vec::new();
    for &(a, b) in g.edges() {
        let mut p = a;
        for _ in 1..k {
            edges.push((p, n));
            p = n;
            n += 1;
        }
        edges.push((p, b));
    }
    Graph::new(n, edges).unwrap()
}

#[test]
fn subdivided_random_graphs() {
    // long chains leave room to turn, so these are nearly always accepted
    let accepted = (0..10)
        .filter(|&seed| drawn_and_checked(&subdivide(&gen_random_ipsp(300, seed), 3)))
        .count();
    assert_eq!(accepted, 10);
}

/// Largest |spirality| over the innermost chains of the lower-bound graph.
fn g0_max_spirality(n_param: usize) -> i64 {
    let lb = gen_lowerbound(n_param);
    let w = draw(&lb.graph).unwrap();
    w.check().unwrap();
    let tree = w.tree.as_ref().unwrap();
    let view = w.view.as_ref().unwrap();
    let mut best = 0;
    for chain in &lb.g0_components {
        let q = (0..tree.node_count())
            .find(|&x| {
                tree.kind(x) == NodeKind::QStar && {
                    let vs = &tree.node(x).chain.as_ref().unwrap().vertices;
                    vs == chain || vs.iter().rev().eq(chain.iter())
                }
            })
            .expect("each innermost chain is a Q*-node");
        if q != view.root {
            best = best.max(measure_spirality(&w.rep, tree, view, q).abs());
        }
    }
    best
}

#[test]
fn lower_bound_chains_spiral() {
    assert!(g0_max_spirality(2) >= 4);
    assert!(g0_max_spirality(4) >= 6);
}

#[test]
fn svg_of_lower_bound() {
    let w = draw(&gen_lowerbound(2).graph).unwrap();
    let svg = String::from_utf8(to_svg(&w.drawing)).unwrap();
    assert_eq!(svg.matches("<polyline").count(), w.drawing.edges.len());
}
