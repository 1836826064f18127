//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when
//! any criterion fails.

use std::time::{Duration, Instant};

use rectiplanar::generators::{
    gen_cycle, gen_lowerbound, gen_random_ipsp, small_random_corpus, sp_sweep,
};
use rectiplanar::oracle::{
    check_representation, component_graph, oracle_spirality_set, oracle_test,
};
use rectiplanar::spirality::{
    p2_admits, p2_set, p3_admits, p3_set, qstar_set, root_feasible, s_node_set, s_summary,
};
use rectiplanar::tester::DirectedSetTable;
use rectiplanar::witness::{draw, measure_spirality, Witness};
use rectiplanar::{
    component_sets, test, test_with, Graph, NodeKind, RootedView, SpiralitySet, TestOptions,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn in_scope(g: &Graph) -> bool {
    let c = g.classify();
    c.is_degree4 && c.is_biconnected && c.is_sp && c.is_independent_parallel
}

fn set(s: &str) -> SpiralitySet {
    s.parse().unwrap()
}

/// The small corpus shared by criteria 1, 2 and 5.
fn corpus() -> Vec<Graph> {
    let mut graphs = small_random_corpus(600, 12, 20_240_917);
    graphs.extend(sp_sweep(8));
    graphs.retain(in_scope);
    graphs
}

fn oracle_agreement(graphs: &[Graph]) -> Outcome {
    let start = Instant::now();
    let mut bad = 0;
    let mut positive = 0;
    for g in graphs {
        let t = test(g).unwrap().rectilinear_planar;
        let o = oracle_test(g).unwrap().feasible;
        positive += t as usize;
        if t != o {
            bad += 1;
            eprintln!(
                "  disagreement (tester {t}, oracle {o}): {}",
                g.to_text().replace('\n', " | ")
            );
        }
    }
    outcome(
        bad == 0,
        format!(
            "{} instances, {positive} positive, {bad} disagreements, {:.1}s",
            graphs.len(),
            start.elapsed().as_secs_f64()
        ),
    )
}

fn shapes_and_component_sets(graphs: &[Graph]) -> Outcome {
    let mut sets = 0;
    let mut bad = 0;
    for g in graphs.iter().filter(|g| !g.is_simple_cycle()) {
        let tree = g.check_scope().unwrap().unwrap();
        let mut table = DirectedSetTable::new(&tree);
        for &rho in tree.qstar_nodes() {
            table.root_child_set(rho);
        }
        for h in 0..tree.half_edge_count() {
            let s = table.get(h).unwrap();
            sets += 1;
            let canonical = match s {
                SpiralitySet::Empty => true,
                SpiralitySet::Interval { lo, hi, jump } => SpiralitySet::new(lo, hi, jump).is_ok(),
            };
            let (u, v) = tree.poles_toward(h);
            let (c, cu, cv) = component_graph(g, &tree.pertinent_edges(h), u, v);
            let o = oracle_spirality_set(&c, cu, cv).unwrap();
            let nonneg: Vec<u32> = o.iter().filter(|&&x| x >= 0).map(|&x| x as u32).collect();
            if !canonical || SpiralitySet::from_values(&nonneg) != Some(s) {
                bad += 1;
                eprintln!(
                    "  set {s} vs oracle {nonneg:?}: {}",
                    g.to_text().replace('\n', " | ")
                );
            }
        }
    }
    outcome(
        bad == 0,
        format!("{sets} directed component sets, {bad} violations"),
    )
}

fn cycle_rule() -> Outcome {
    let mut wrong = Vec::new();
    for n in 3..=12 {
        if test(&gen_cycle(n)).unwrap().rectilinear_planar != (n >= 4) {
            wrong.push(n);
        }
    }
    outcome(
        wrong.is_empty(),
        format!("C_3 false, C_4..C_12 true; wrong for {wrong:?}"),
    )
}

/// Largest |spirality| over the labelled innermost chains.
fn g0_spiral(n_param: usize) -> Result<(i64, Witness), String> {
    let lb = gen_lowerbound(n_param);
    if !test(&lb.graph)
        .map_err(|e| e.to_string())?
        .rectilinear_planar
    {
        return Err("tester rejects".into());
    }
    let w = draw(&lb.graph).map_err(|e| e.to_string())?;
    w.check()?;
    let tree = w.tree.as_ref().unwrap();
    let view = w.view.as_ref().unwrap();
    let mut best = 0;
    for chain in &lb.g0_components {
        let q = (0..tree.node_count()).find(|&x| {
            tree.kind(x) == NodeKind::QStar && {
                let vs = &tree.node(x).chain.as_ref().unwrap().vertices;
                vs == chain || vs.iter().rev().eq(chain.iter())
            }
        });
        match q {
            Some(q) if q != view.root => {
                best = best.max(measure_spirality(&w.rep, tree, view, q).abs())
            }
            Some(_) => {}
            None => return Err("innermost chain is not a Q*-node".into()),
        }
    }
    Ok((best, w))
}

fn lower_bound() -> (Outcome, Vec<Witness>) {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut pass = true;
    let mut witnesses = Vec::new();
    for n in [2, 4] {
        match g0_spiral(n) {
            Ok((best, w)) => {
                pass &= best >= n as i64 + 2;
                parts.push(format!("N={n}: max |spirality| {best} (need {})", n + 2));
                witnesses.push(w);
            }
            Err(e) => {
                pass = false;
                parts.push(format!("N={n}: {e}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    pass &= secs < 10.0;
    (
        outcome(pass, format!("{}; {secs:.2}s", parts.join(", "))),
        witnesses,
    )
}

fn witness_soundness(graphs: &[Graph], lower: &[Witness]) -> Outcome {
    let mut checked = 0;
    let mut bad = 0;
    for g in graphs {
        if !test(g).unwrap().rectilinear_planar {
            continue;
        }
        checked += 1;
        let ok = match draw(g) {
            Ok(w) => {
                let (emb, angles) = w.rep.to_embedding();
                match w.check() {
                    Ok(()) => check_representation(g, &emb, &angles),
                    Err(e) => {
                        eprintln!("  {e}");
                        false
                    }
                }
            }
            Err(e) => {
                eprintln!("  {e}");
                false
            }
        };
        if !ok {
            bad += 1;
            eprintln!("  witness failure: {}", g.to_text().replace('\n', " | "));
        }
    }
    for w in lower {
        checked += 1;
        if let Err(e) = w.check() {
            bad += 1;
            eprintln!("  lower bound witness: {e}");
        }
    }
    outcome(
        bad == 0,
        format!("{checked} accepted instances, {bad} violations"),
    )
}

fn rerooting() -> Outcome {
    let mut compared = 0;
    let mut bad = 0;
    let mut graphs = 0;
    let mut seed = 0;
    while graphs < 100 {
        let g = gen_random_ipsp(4 + (seed as usize % 22), seed);
        seed += 1;
        if g.vertex_count() > 50 {
            continue;
        }
        graphs += 1;
        let Some(tree) = g.check_scope().unwrap() else {
            continue;
        };
        let mut table = DirectedSetTable::new(&tree);
        for &rho in tree.qstar_nodes() {
            table.root_child_set(rho);
        }
        for &rho in tree.qstar_nodes() {
            let fresh = component_sets(&g, rho).unwrap();
            let view = RootedView::new(&tree, rho);
            for x in 0..tree.node_count() {
                if let Some(p) = view.parent[x] {
                    compared += 1;
                    if table.get(tree.half_edge_to(x, p)) != Some(fresh[x]) {
                        bad += 1;
                    }
                }
            }
        }
    }
    outcome(
        bad == 0,
        format!("{graphs} graphs, {compared} (root, node) pairs, {bad} mismatches"),
    )
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort();
    xs[xs.len() / 2]
}

fn scaling() -> Outcome {
    let sizes = [1usize << 14, 1 << 15, 1 << 16, 1 << 17];
    let graphs: Vec<Graph> = sizes.iter().map(|&n| gen_random_ipsp(n, 7)).collect();
    let mut counter_ok = true;
    for g in &graphs {
        let tree = g.check_scope().unwrap().unwrap();
        let all = test_with(g, &TestOptions { all_roots: true }).unwrap();
        counter_ok &= all.computations <= 2 * tree.tree_edge_count();
    }
    // round-robin over sizes so load spikes hit every size alike
    let mut runs: Vec<Vec<Duration>> = vec![Vec::new(); graphs.len()];
    for _ in 0..5 {
        for (g, r) in graphs.iter().zip(&mut runs) {
            let start = Instant::now();
            test(g).unwrap();
            r.push(start.elapsed());
        }
    }
    let times: Vec<Duration> = runs.into_iter().map(median).collect();
    let parts: Vec<String> = graphs
        .iter()
        .zip(&times)
        .map(|(g, t)| format!("n={} {:.1}ms", g.vertex_count(), t.as_secs_f64() * 1e3))
        .collect();
    let ratios: Vec<f64> = times
        .windows(2)
        .map(|w| w[1].as_secs_f64() / w[0].as_secs_f64())
        .collect();
    let pass = counter_ok && ratios.iter().all(|&r| r <= 3.0);
    outcome(
        pass,
        format!(
            "{}; ratios {}; counter within 2x tree edges: {counter_ok}",
            parts.join(", "),
            ratios
                .iter()
                .map(|r| format!("{r:.2}"))
                .collect::<Vec<_>>()
                .join(" ")
        ),
    )
}

/// Non-negative values of a sum of symmetric sets, by enumeration.
fn brute_series(children: &[SpiralitySet]) -> Vec<u32> {
    let mut sums = vec![0i64];
    for c in children {
        let vals: Vec<i64> = c
            .values()
            .iter()
            .flat_map(|&v| [v as i64, -(v as i64)])
            .collect();
        let mut next: Vec<i64> = sums
            .iter()
            .flat_map(|s| vals.iter().map(move |v| s + v))
            .collect();
        next.sort_unstable();
        next.dedup();
        sums = next;
    }
    sums.into_iter()
        .filter(|&s| s >= 0)
        .map(|s| s as u32)
        .collect()
}

fn brute_admitted(admits: impl Fn(i64) -> bool) -> Vec<u32> {
    (0..=24).filter(|&s| admits(s)).map(|s| s as u32).collect()
}

fn algebra_fixtures() -> Outcome {
    let mut failed = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failed.push(name.to_string());
        }
    };
    check("qstar 1", qstar_set(1) == set("[0]"));
    check("qstar 3", qstar_set(3) == set("[0,2]^1"));
    check("qstar 5", qstar_set(5) == set("[0,4]^1"));

    let series: [(&[&str], &str); 3] = [
        (&["[0]", "[1,2]^1"], "[1,2]^1"),
        (&["[1]", "[1]"], "[0,2]^2"),
        (&["[0,1]^1", "[0,2]^2"], "[0,3]^1"),
    ];
    for (kids, want) in series {
        let kids: Vec<SpiralitySet> = kids.iter().map(|s| set(s)).collect();
        let got = s_node_set(&s_summary(kids.iter().copied()));
        check(&format!("series {want}"), got == set(want));
        check(
            &format!("series {want} by enumeration"),
            SpiralitySet::from_values(&brute_series(&kids)) == Some(set(want)),
        );
    }

    let three: [([&str; 3], &str); 3] = [
        (["[0,5]^1", "[0,5]^1", "[0,5]^1"], "[0,3]^1"),
        (["[0,2]^2", "[0,2]^2", "[0,2]^2"], "[0]"),
        (["[0]", "[0]", "[0]"], "empty"),
    ];
    for (kids, want) in three {
        let [a, b, c] = kids.map(set);
        check(&format!("p3 {want}"), p3_set(a, b, c) == set(want));
        check(
            &format!("p3 {want} by scan"),
            SpiralitySet::from_values(&brute_admitted(|s| p3_admits(a, b, c, s)))
                == Some(set(want)),
        );
    }
    check(
        "p3 admits 3",
        p3_admits(set("[0,5]^1"), set("[0,5]^1"), set("[0,5]^1"), 3),
    );
    check(
        "p3 single edges",
        !p3_admits(set("[0]"), set("[0]"), set("[0]"), 0),
    );
    check(
        "p3 odd",
        !p3_admits(set("[0,2]^2"), set("[0,2]^2"), set("[0,2]^2"), 1),
    );

    let two: [([&str; 2], &str); 3] = [
        (["[0]", "[0]"], "empty"),
        (["[0,1]^1", "[0,3]^1"], "[0,3]^1"),
        (["[0,2]^2", "[0,2]^2"], "[0,2]^1"),
    ];
    for (kids, want) in two {
        let [a, b] = kids.map(set);
        check(&format!("p2 {want}"), p2_set(a, b) == set(want));
        check(
            &format!("p2 {want} by scan"),
            SpiralitySet::from_values(&brute_admitted(|s| p2_admits(a, b, s))) == Some(set(want)),
        );
    }
    check("p2 edges", !p2_admits(set("[0]"), set("[0]"), 0));
    check("p2 3", p2_admits(set("[0,1]^1"), set("[0,3]^1"), 3));
    check("p2 nesting", p2_admits(set("[0,2]^2"), set("[0,2]^2"), 0));

    check("root [0,2]^2 l=3", root_feasible(set("[0,2]^2"), 3));
    check("root [0] l=5", root_feasible(set("[0]"), 5));
    check("root [1,3]^2 l=1", !root_feasible(set("[1,3]^2"), 1));

    check("contains parity", !set("[0,4]^2").contains(3));
    check("contains symmetric", set("[0,4]^2").contains(-2));
    check("contains lo", !set("[1,2]^1").contains(0));

    outcome(failed.is_empty(), format!("failed fixtures: {failed:?}"))
}

fn main() {
    let graphs = corpus();
    let (c4, lower) = lower_bound();
    let results = [
        ("oracle agreement", oracle_agreement(&graphs)),
        (
            "set structures and component sets",
            shapes_and_component_sets(&graphs),
        ),
        ("cycle rule", cycle_rule()),
        ("lower-bound family", c4),
        ("witness soundness", witness_soundness(&graphs, &lower)),
        ("re-rooting consistency", rerooting()),
        ("linear scaling", scaling()),
        ("algebra fixtures", algebra_fixtures()),
    ];
    let mut all = true;
    for (i, (name, o)) in results.iter().enumerate() {
        all &= o.pass;
        println!(
            "criterion {}: {} {name}: {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
