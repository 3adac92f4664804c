"""Acceptance gate: one test and one printed pass/fail line per criterion.

Every check is exact; there are no tolerances anywhere.  One criterion
is expected to fail (see test_criterion_09): an ultragraph whose only
emissions form a loop admits no exact finite-dimensional family at all,
so the extension pipeline cannot be demonstrated on that fixture.  The
failure is genuine and documented, not a defect in the pipeline, which
the loop-free variant of the same fixture exercises end to end.
"""

import itertools
import random
from fractions import Fraction

import pytest

from fixtures import (FINITE_FIXTURES, FIXTURES, random_loop_free,
                      random_matrix, random_no_sink, random_ultragraph,
                      simple_cycles, ug1, ug2, ug3, ug4, ug6, ug7)
from ugkit import (AlgebraElement, Trilean, VertexSet, alpha_path,
                   approx_family, approximation_graph, ck_check, condition_l,
                   condition_l_bruteforce, condition_l_graph, core_vertex,
                   desingularize, edge_matrix, el_check, equals,
                   extend_family, gauge_check, graph_from_matrix, in_lattice,
                   is_unital, lattice_closure_bruteforce, lattice_member,
                   lift_loop, named_edge, normalize, path_space_rep,
                   ray_vertex, restrict_family, singular_vertices, truncate,
                   ultragraph_from_matrix, validate, verify_ck_assignment)

import pathlib

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"


def _report(number, body):
    # written past pytest's capture so every run shows one line per criterion
    import sys

    try:
        body()
    except BaseException:
        print(f"criterion {number:02d}: FAIL", file=sys.__stdout__)
        raise
    print(f"criterion {number:02d}: PASS", file=sys.__stdout__)


# ---------------------------------------------------------------------------


def test_criterion_01_matrix_round_trip():
    def body():
        rng = random.Random(101)
        for _ in range(1000):
            m = random_matrix(rng, max_n=8)
            assert edge_matrix(ultragraph_from_matrix(m)).rows == m.rows

    _report(1, body)


def test_criterion_02_condition_l_oracle_equivalence():
    def body():
        rng = random.Random(102)
        for _ in range(1000):
            g = random_ultragraph(rng, max_vertices=6, max_edges=6)
            fast = condition_l(g)
            slow = condition_l_bruteforce(g, max_len=len(g.edge_ids()))
            assert fast.holds == slow.holds, g.name

    _report(2, body)


def test_criterion_03_condition_l_transfers_to_the_dual_graph():
    def body():
        rng = random.Random(103)
        for _ in range(500):
            g = random_no_sink(rng)
            dual = graph_from_matrix(edge_matrix(g))
            assert condition_l(g).holds == condition_l_graph(dual).holds, \
                g.name

    _report(3, body)


def test_criterion_04_summation_relations_hold():
    def body():
        rng = random.Random(104)
        graphs = [ug1(), ug2()]
        graphs += [random_no_sink(rng) for _ in range(200)]
        for g in graphs:
            edges = g.edge_ids()
            for k in range(4):
                for xs in itertools.combinations(edges, k):
                    rest = [e for e in edges if e not in xs]
                    for m in range(4 - k):
                        for ys in itertools.combinations(rest, m):
                            r = el_check(g, xs, ys, depth=1)
                            assert r.status == "holds", \
                                (g.name, xs, ys, r.detail)

    _report(4, body)


def test_criterion_05_approximation_families_satisfy_all_axioms():
    def body():
        for make in FIXTURES:
            g = make()
            pool = g.edge_ids() if g.edge_set_finite else g.all_edges(cap=4)
            for k in range(1, min(4, len(pool)) + 1):
                for F in itertools.combinations(pool, k):
                    ag, assignment = approx_family(g, F)
                    report = verify_ck_assignment(ag.graph, assignment)
                    assert report.ok, (g.name, F, report.failures())

    _report(5, body)


def test_criterion_06_products_of_complementary_projections_sum_to_one():
    def body():
        g = ug1()
        sets = [
            VertexSet.of(g.universe, [core_vertex(n) for n in names])
            for names in ("v", "vw", "wx", "vwx")
        ]
        for n in range(1, 5):
            chosen = sets[:n]
            total = AlgebraElement.zero(g)
            for picks in itertools.product((0, 1), repeat=n):
                term = AlgebraElement.one(g)
                for a, inside in zip(chosen, picks):
                    pa = AlgebraElement.proj(g, a)
                    term = term * (pa if inside
                                   else AlgebraElement.one(g) - pa)
                total = total + term
            assert equals(total, AlgebraElement.one(g)) is Trilean.EQUAL

    _report(6, body)


def test_criterion_07_lattice_membership_matches_brute_force():
    def body():
        for make in FINITE_FIXTURES:
            g = make()
            verts = g.universe.vertices()
            if len(verts) > 8:
                continue
            closure = lattice_closure_bruteforce(g)
            for r in range(len(verts) + 1):
                for combo in itertools.combinations(verts, r):
                    s = VertexSet.of(g.universe, combo)
                    assert in_lattice(g, s) == (s in closure), (g.name, str(s))
        g = ug6()
        # a cofinite set missing two points of the only range: outside
        assert lattice_member(
            g, VertexSet.ray_cofinite(g.universe, "t", [1, 2])) is None
        # the full vertex set: r(h) plus the finite rest {u, t1}
        w = lattice_member(g, VertexSet.full(g.universe))
        assert w is not None
        assert w.intersections == ((named_edge("h"),),)
        assert w.finite_part == VertexSet.of(
            g.universe, [core_vertex("u"), ray_vertex("t", 1)])
        # finite sets are always members
        assert in_lattice(g, VertexSet.of(
            g.universe, [ray_vertex("t", 4), ray_vertex("t", 9)]))

    _report(7, body)


def test_criterion_08_path_space_families_are_exact():
    def body():
        g = ug4()
        fam = path_space_rep(g)
        assert fam.dim == 4
        assert ck_check(fam).ok
        for k in range(1, 13):
            assert gauge_check(fam, k)
        rng = random.Random(108)
        done = 0
        while done < 200:
            g = random_loop_free(rng)
            if g.sinks().is_empty() or not g.edge_ids():
                continue
            fam = path_space_rep(g)
            r = ck_check(fam)
            assert r.ok, (g.name, r.defects)
            assert gauge_check(fam, 4)
            done += 1

    _report(8, body)


def test_criterion_09_desingularization_extends_exact_families():
    # Expected to FAIL on UG7: its only emissions form a loop at v0, so
    # no exact finite-dimensional family over UG7 exists (the ranges of
    # the S_j would have to be infinitely many mutually orthogonal
    # copies of P[v0] inside itself, forcing rank 0).  The path-space
    # basis over UG7 is empty and extension stops with TruncationEmpty
    # at level 1, which is the honest outcome; the sink variant UG7S
    # runs the identical pipeline to completion in test_desing.py.
    def body():
        for make in (ug3, ug4, ug7):
            g = make()
            dm = desingularize(g)
            sinks, emitters = singular_vertices(dm.result)
            assert sinks.is_empty() and emitters == ()
            for n in range(1, 9):
                t = truncate(dm.result, n)
                validate(t)
            for n in (1, 4, 8):
                base = path_space_rep(g) if g.edge_set_finite \
                    else path_space_rep(g, cap=n + 1)
                ext = extend_family(base, dm, n)
                assert ck_check(ext).ok
                for tm in dm.tails:
                    if not tm.is_emitter:
                        continue
                    for j in range(1, n + 1):
                        p = alpha_path(dm, tm.vertex, j)
                        lifted = ext.path_matrix(p)
                        orig = base.s(tm.g_edge(j))
                        assert all(lifted.data.get(key) == val
                                   for key, val in orig.data.items())
                back, _ = restrict_family(ext, dm)
                for e in back.represented:
                    got, want = back.s(e), base.s(e)
                    assert {k: v for k, v in got.data.items()
                            if k[0] < base.dim and k[1] < base.dim} == \
                        dict(want.data)

    _report(9, body)


def test_criterion_10_cycles_lift_with_matching_exits():
    def body():
        rng = random.Random(110)
        for _ in range(300):
            g = random_no_sink(rng)
            edges = g.edge_ids()
            for k in range(1, min(4, len(edges)) + 1):
                F = edges[:k]
                ag = approximation_graph(g, F)
                for cyc in simple_cycles(ag.graph):
                    lift = lift_loop(g, ag, cyc)
                    assert lift.agree, (g.name, cyc)

    _report(10, body)


def test_criterion_11_unitality():
    def body():
        for make in FINITE_FIXTURES:
            assert is_unital(make())
        from ugkit import Universe, build
        u = Universe(core=("u",), rays=("t",))
        finite_ranges = build(
            "FINRANGE", core_vertices=("u",), rays=("t",),
            edges=[("k", core_vertex("u"),
                    VertexSet.of(u, [ray_vertex("t", 1),
                                     ray_vertex("t", 2)]))])
        assert not is_unital(finite_ranges)
        g = ug6()
        w = lattice_member(g, VertexSet.full(g.universe))
        assert w is not None
        assert w.evaluate(g) == VertexSet.full(g.universe)
        assert w.intersections == ((named_edge("h"),),)

    _report(11, body)


def test_criterion_12_cli_round_trip(capsys):
    def body():
        from ugkit import format_document, parse_document
        from ugkit.cli import main
        docs = sorted(CORPUS.glob("*.ug"))
        assert len(docs) >= 10
        for path in docs:
            text = path.read_text()
            assert format_document(parse_document(text)) == text, path.name
        assert main(["edge-matrix", str(CORPUS / "UG2.ug")]) == 0
        out = capsys.readouterr().out.splitlines()
        assert "labels: e1 e2" in out
        assert out[-2:] == ["1 1", "1 0"]

    _report(12, body)
