"""Finite approximation graphs and their concrete families."""

import itertools
import random

import pytest

from fixtures import (FINITE_FIXTURES, random_no_sink, simple_cycles, ug1,
                      ug2, ug5, ug7)
from ugkit import (Caps, FTooLarge, NotALoop, VertexSet, approx_family,
                   approximation_graph, core_vertex, e_set, lift_loop,
                   named_edge, v_set, verify_ck_assignment)


def _vs(g, names):
    return VertexSet.of(g.universe, [core_vertex(n) for n in names])


# ---------------------------------------------------------------------------
# the selected vertex and edge sets


def test_v_and_e_sets_on_ug2():
    g = ug2()
    e1, e2 = named_edge("e1"), named_edge("e2")
    assert v_set(g, (e1,), ()) == VertexSet.full(g.universe)
    es = e_set(g, (e1,), ())
    assert set(es.edges) == {e1, e2}
    assert v_set(g, (e2,), ()).vertices() == (core_vertex("ve1"),)
    assert set(e_set(g, (e2,), ()).edges) == {e1}
    assert v_set(g, (e1,), (e2,)).vertices() == (core_vertex("ve2"),)


def test_v_and_e_sets_on_ug1():
    g = ug1()
    e, f, gg = named_edge("e"), named_edge("f"), named_edge("g")
    assert v_set(g, (e, gg), ()) == _vs(g, "vw")
    assert set(e_set(g, (e, gg), ()).edges) == {e, f}
    assert v_set(g, (), ()) == VertexSet.full(g.universe)


def test_e_set_infinite_description():
    g = ug7()
    es = e_set(g, (), ())
    assert not es.finite
    # subset tests still work without enumeration
    assert not es.subset_of(())


# ---------------------------------------------------------------------------
# construction of the approximation graph


def test_ug2_single_edge_approximation():
    g = ug2()
    ag = approximation_graph(g, [named_edge("e1")])
    assert set(ag.graph.vertices) == {"e1", "X{e1}"}
    labels = {e[0] for e in ag.graph.edges}
    assert labels == {"(e1,e1)", "(e1,X{e1})"}


def test_ug2_full_approximation_has_no_subset_vertices():
    g = ug2()
    ag = approximation_graph(g, [named_edge("e1"), named_edge("e2")])
    assert set(ag.graph.vertices) == {"e1", "e2"}
    assert {e[0] for e in ag.graph.edges} == \
        {"(e1,e1)", "(e1,e2)", "(e2,e1)"}


def test_subset_vertices_are_sinks():
    rng = random.Random(61)
    for _ in range(40):
        g = random_no_sink(rng)
        edges = g.edge_ids()
        F = edges[: min(3, len(edges))]
        ag = approximation_graph(g, F)
        for x in ag.subset_vertices():
            assert ag.graph.out_edges(x) == ()


def test_f_cap():
    g = ug1()
    tiny = Caps(lattice_ranges=20, approx_subsets=1, closure_vertices=12,
                normalize_rounds=10000)
    with pytest.raises(FTooLarge):
        approximation_graph(g, g.edge_ids(), caps=tiny)


def test_monotone_in_f():
    # approximation vertices for F survive (as edge vertices) in F'
    rng = random.Random(62)
    for _ in range(25):
        g = random_no_sink(rng)
        edges = g.edge_ids()
        if len(edges) < 2:
            continue
        small = approximation_graph(g, edges[:1])
        big = approximation_graph(g, edges[:2])
        assert set(small.edge_vertices()) <= set(big.edge_vertices())
        small_ee = {e[0] for e in small.graph.edges
                    if e[1] in small.edge_vertices()
                    and e[2] in small.edge_vertices()}
        big_ee = {e[0] for e in big.graph.edges}
        assert small_ee <= big_ee


# ---------------------------------------------------------------------------
# the concrete family satisfies the axioms of the approximation graph


def test_family_axioms_on_fixtures():
    for make in FINITE_FIXTURES:
        g = make()
        edges = g.edge_ids()
        for k in range(1, min(3, len(edges)) + 1):
            for F in itertools.combinations(edges, k):
                ag, assignment = approx_family(g, F)
                report = verify_ck_assignment(ag.graph, assignment)
                assert report.ok, (g.name, F, report.failures())


def test_family_axioms_on_infinite_emitter():
    g = ug7()
    F = g.all_edges(cap=2)
    ag, assignment = approx_family(g, F)
    report = verify_ck_assignment(ag.graph, assignment)
    assert report.ok, report.failures()


# ---------------------------------------------------------------------------
# loops upstairs and downstairs


def test_lift_loop_on_ug5():
    g = ug5()
    ag = approximation_graph(g, [named_edge("e")])
    cyc = [e for e in ag.graph.edges if e[1] == e[2] == "e"]
    lift = lift_loop(g, ag, cyc)
    assert lift.loop == (named_edge("e"),)
    # neither the ultragraph loop nor the graph cycle has an exit
    assert lift.gf_exit is None or lift.gf_exit.startswith("(e,X")
    assert lift.agree


def test_lift_rejects_non_loops():
    g = ug2()
    ag = approximation_graph(g, [named_edge("e1"), named_edge("e2")])
    with pytest.raises(NotALoop):
        lift_loop(g, ag, [])
    with pytest.raises(NotALoop):
        lift_loop(g, ag, ["(e1,e2)"])   # a path, not a cycle
    with pytest.raises(NotALoop):
        lift_loop(g, ag, ["bogus"])


def test_all_cycles_lift_with_matching_exits():
    rng = random.Random(63)
    lifted = 0
    for _ in range(60):
        g = random_no_sink(rng)
        edges = g.edge_ids()
        F = edges[: min(4, len(edges))]
        ag = approximation_graph(g, F)
        for cyc in simple_cycles(ag.graph):
            lift = lift_loop(g, ag, cyc)
            lifted += 1
            assert lift.agree, (g.name, cyc)
    assert lifted > 50
