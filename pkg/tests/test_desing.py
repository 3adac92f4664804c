"""Tails at singular vertices, truncation, and transported families."""

import random

import pytest

from fixtures import random_ultragraph, ug1, ug3, ug4, ug6, ug7, ug7s
from ugkit import (Family, NotASink, NotInLattice, NotInfiniteEmitter,
                   TruncationEmpty, Unbounded, Universe, VertexId, VertexSet,
                   add_tail_infinite_emitter, add_tail_sink, alpha_path,
                   build, ck_check, condition_l, core_vertex, desingularize,
                   extend_family, f0_compose, f0_decompose, family_edge,
                   path_range, path_space_rep, restrict_family,
                   singular_vertices, tail_edge, truncate, validate)


def _vs(g, names):
    return VertexSet.of(g.universe, [core_vertex(n) for n in names])


# ---------------------------------------------------------------------------
# adding tails


def test_sink_tail_shape():
    g, dm = add_tail_sink(ug3(), core_vertex("w"))
    tm = dm.tails[0]
    assert tm.vertex == core_vertex("w")
    assert not tm.is_emitter
    assert g.sinks().is_empty()
    # w emits e_1 into v_1, each v_i emits e_(i+1) into v_(i+1)
    e1 = tail_edge(tm.ray, "e", 1)
    assert g.source(e1) == core_vertex("w")
    assert g.range_of(e1).vertices() == (VertexId(tm.ray, 1),)
    e5 = tail_edge(tm.ray, "e", 5)
    assert g.source(e5) == VertexId(tm.ray, 4)
    assert g.emission_count(VertexId(tm.ray, 3)) == 1


def test_sink_tail_requires_a_sink():
    with pytest.raises(NotASink):
        add_tail_sink(ug1(), core_vertex("v"))


def test_emitter_tail_shape():
    g, dm = add_tail_infinite_emitter(ug7(), core_vertex("v0"))
    tm = dm.tails[0]
    assert tm.is_emitter and tm.fams == ("F",)
    assert g.sinks().is_empty()
    assert g.infinite_emitters() == ()
    # v0 emits exactly e_1 and f_1; v_i emits e_(i+1) and f_(i+1)
    assert g.emission_count(core_vertex("v0")) == 2
    assert g.emission_count(VertexId(tm.ray, 2)) == 2
    # each f_j carries the range of the j-th removed emission: {v0}
    for j in (1, 2, 7):
        rng = g.range_of(tail_edge(tm.ray, "f", j))
        assert rng.vertices() == (core_vertex("v0"),)


def test_emitter_tail_requires_an_emitter():
    with pytest.raises(NotInfiniteEmitter):
        add_tail_infinite_emitter(ug1(), core_vertex("v"))


def test_desingularize_removes_all_singularities():
    for make in (ug3, ug4, ug7, ug7s):
        dm = desingularize(make())
        sinks, emitters = singular_vertices(dm.result)
        assert sinks.is_empty() and emitters == ()
        validate(dm.result)


def test_desingularize_is_identity_without_singularities():
    g = ug1()
    dm = desingularize(g)
    assert dm.result is g and dm.tails == ()


def test_desingularize_refuses_infinitely_many_sinks():
    with pytest.raises(Unbounded):
        desingularize(ug6())


def test_condition_l_preserved():
    rng = random.Random(71)
    for _ in range(120):
        g = random_ultragraph(rng)
        dm = desingularize(g)
        assert condition_l(g).holds == condition_l(dm.result).holds, g.name


# ---------------------------------------------------------------------------
# enumeration of removed emissions


def test_mixed_enumeration_named_then_families():
    u = Universe(core=("v", "a", "b"))
    fam1 = Family("F", core_vertex("v"), (), (_reach(u, "a"),))
    fam2 = Family("G", core_vertex("v"), (), (_reach(u, "b"),))
    g = build("MIX", core_vertices=("v", "a", "b"),
              edges=[("k", core_vertex("v"), _reach(u, "a")),
                     ("ea", core_vertex("a"), _reach(u, "v")),
                     ("eb", core_vertex("b"), _reach(u, "v"))],
              families=[fam1, fam2])
    dm = desingularize(g)
    tm = dm.tail_at(core_vertex("v"))
    # named edges first, then the families round robin
    from ugkit import named_edge
    assert tm.g_edge(1) == named_edge("k")
    assert tm.g_edge(2) == family_edge("F", 1)
    assert tm.g_edge(3) == family_edge("G", 1)
    assert tm.g_edge(4) == family_edge("F", 2)
    # every f_j range matches the range of g_j
    for j in range(1, 21):
        fj = tail_edge(tm.ray, "f", j)
        want = g.range_of(tm.g_edge(j)).embed(dm.result.universe)
        assert dm.result.range_of(fj) == want


def _reach(u, name):
    return VertexSet.of(u, [core_vertex(name)])


def test_alpha_path_is_a_path_with_the_right_range():
    g = ug7()
    dm = desingularize(g)
    from ugkit import is_path
    for j in (1, 2, 5):
        p = alpha_path(dm, core_vertex("v0"), j)
        assert len(p) == j
        assert is_path(dm.result, p)
        tm = dm.tail_at(core_vertex("v0"))
        want = g.range_of(tm.g_edge(j)).embed(dm.result.universe)
        assert path_range(dm.result, p) == want


# ---------------------------------------------------------------------------
# truncation


def test_truncate_ug3():
    dm = desingularize(ug3())
    t = truncate(dm.result, 2)
    validate(t)
    assert t.universe.is_finite()
    assert len(t.universe.vertices()) == 3      # w, v1, v2
    assert len(t.edge_ids()) == 2               # e1, e2
    sinks, emitters = singular_vertices(t)
    assert emitters == ()
    assert len(sinks) == 1                      # v2 is the new sink
    assert t.name == "UG3_t2"


def test_truncate_ug7():
    dm = desingularize(ug7())
    t = truncate(dm.result, 1)
    assert len(t.universe.vertices()) == 2      # v0, v1
    labels = {str(e) for e in t.edge_ids()}
    tm = dm.tails[0]
    assert labels == {f"{tm.ray}.e1", f"{tm.ray}.f1"}


def test_truncation_agrees_below_the_cut():
    dm = desingularize(ug7())
    tm = dm.tails[0]
    t = truncate(dm.result, 4)
    for j in range(1, 5):
        fj = tail_edge(tm.ray, "f", j)
        assert t.range_of(fj).vertices() == \
            dm.result.range_of(fj).vertices()
        assert t.source(fj) == dm.result.source(fj)


# ---------------------------------------------------------------------------
# lattice decomposition A union F


def test_f0_roundtrip():
    dm = desingularize(ug7())
    tm = dm.tails[0]
    b = VertexSet.of(dm.result.universe,
                     [core_vertex("v0"), VertexId(tm.ray, 1),
                      VertexId(tm.ray, 3)])
    a, f = f0_decompose(dm, b)
    assert a.vertices() == (core_vertex("v0"),)
    assert set(f.vertices()) == {VertexId(tm.ray, 1), VertexId(tm.ray, 3)}
    assert f0_compose(dm, a, f) == b


def test_f0_rejects_infinite_tail_parts():
    dm = desingularize(ug7())
    tm = dm.tails[0]
    b = VertexSet.ray_cofinite(dm.result.universe, tm.ray)
    with pytest.raises(NotInLattice):
        f0_decompose(dm, b)


# ---------------------------------------------------------------------------
# extending and restricting exact families


def test_extend_over_sink_tails():
    g = ug3()
    dm = desingularize(g)
    base = path_space_rep(g)
    for n in (1, 4, 8):
        ext = extend_family(base, dm, n)
        assert ext.dim == base.dim * (n + 1)
        r = ck_check(ext)
        assert r.ok, r.defects


def test_extend_over_ug4():
    g = ug4()
    dm = desingularize(g)
    base = path_space_rep(g)
    for n in (1, 3):
        ext = extend_family(base, dm, n)
        r = ck_check(ext)
        assert r.ok, r.defects


def test_extend_over_an_infinite_emitter():
    g = ug7s()
    n = 4
    dm = desingularize(g)
    base = path_space_rep(g, cap=n + 1)
    ext = extend_family(base, dm, n)
    r = ck_check(ext)
    assert r.ok, r.defects
    # T along alpha^j equals the original matrix for g_j
    tm = dm.tail_at(core_vertex("v0"))
    for j in range(1, n + 1):
        p = alpha_path(dm, core_vertex("v0"), j)
        lifted = ext.path_matrix(p)
        orig = base.s(tm.g_edge(j))
        assert all(lifted.data.get(k) == v for k, v in orig.data.items())


def test_extend_exhausts_at_truncation_empty():
    g = ug7s()
    dm = desingularize(g)
    base = path_space_rep(g, cap=2)
    with pytest.raises(TruncationEmpty):
        extend_family(base, dm, 2)


def test_restrict_inverts_extend():
    for make, n in ((ug3, 3), (ug4, 2), (ug7s, 4)):
        g = make()
        dm = desingularize(g)
        base = path_space_rep(g, cap=n + 1) if not g.edge_set_finite \
            else path_space_rep(g)
        ext = extend_family(base, dm, n)
        back, notices = restrict_family(ext, dm)
        assert back.graph is g
        for e in back.represented:
            got, want = back.s(e), base.s(e)
            assert all(got.data.get(k) == v for k, v in want.data.items())
            assert all(want.data.get(k) == v for k, v in got.data.items())
        # every surviving named edge of the original is recovered
        removed = {e for tm in dm.tails for e in tm.named}
        for e in g.edge_ids():
            if e not in removed:
                assert e in back.represented
