"""Smoke test for the rectiplanar_py extension module."""

import json
import sys

import rectiplanar_py as rp


def main() -> int:
    square = rp.Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert rp.test(square).rectilinear_planar
    assert not rp.test(rp.gen_cycle(3))
    assert square.classify()["is_simple_cycle"]

    k4 = rp.Graph.parse("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    try:
        rp.test(k4)
    except ValueError as e:
        assert str(e) == "not series-parallel"
    else:
        raise AssertionError("K4 accepted")

    # set algebra
    assert rp.qstar_set(3).values() == [0, 1, 2]
    theta = rp.p3_set(rp.qstar_set(3), rp.qstar_set(3), rp.qstar_set(3))
    assert rp.p3_set(rp.qstar_set(2), rp.qstar_set(2), rp.qstar_set(2)).is_empty()
    assert 0 in theta and 1 not in theta
    assert rp.SpiralitySet.parse(str(theta)) == theta
    assert not rp.root_feasible(rp.SpiralitySet(0, 0, 1), 1)

    # drawing of the lower-bound graph
    g, chains = rp.gen_lowerbound(2)
    assert len(chains) == 18
    d = rp.draw(g)
    assert d is not None and d.bends() == 0 and d.crossings() == 0
    assert len(d.coords) == g.n
    assert d.to_svg().count("<polyline") == len(g.edges)
    assert json.loads(d.to_json())["edges"] == [list(e) for e in g.edges]

    # tester against the oracle on small random graphs
    agree = 0
    for seed in range(30):
        g = rp.gen_random_ipsp(5, seed)
        if len(g.edges) > 12:
            continue
        verdict = rp.test(g).rectilinear_planar
        assert json.loads(rp.oracle_test(g))["feasible"] == verdict, g.to_text()
        drawing = rp.draw(g)
        assert (drawing is not None) == verdict
        agree += 1
    assert agree > 0

    report = rp.test(rp.gen_random_ipsp(200, 1), all_roots=True)
    assert report.roots_tried == len(report.per_root_sets)
    assert rp.gen_random_ipsp(50, 9).edges == rp.gen_random_ipsp(50, 9).edges
    print(f"smoke test passed ({agree} oracle comparisons)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
