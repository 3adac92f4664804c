"""Shared fixture ultragraphs and random generators."""

import random

from ugkit import (
    Family,
    Matrix01,
    Universe,
    VertexSet,
    build,
    core_vertex,
    ultragraph_from_matrix,
)


def _vs(universe, names):
    return VertexSet.of(universe, [core_vertex(n) for n in names])


def ug1():
    u = Universe(core=("v", "w", "x"))
    return build(
        "UG1",
        core_vertices=("v", "w", "x"),
        edges=[
            ("e", core_vertex("v"), _vs(u, "vwx")),
            ("f", core_vertex("w"), _vs(u, "x")),
            ("g", core_vertex("x"), _vs(u, "vw")),
        ],
    )


def ug2():
    return ultragraph_from_matrix(
        Matrix01.from_rows([[1, 1], [1, 0]], ("e1", "e2")), "UG2"
    )


def ug3():
    return build("UG3", core_vertices=("w",))


def ug4():
    u = Universe(core=("v", "w1", "w2"))
    return build(
        "UG4",
        core_vertices=("v", "w1", "w2"),
        edges=[("e", core_vertex("v"), _vs(u, ["w1", "w2"]))],
    )


def ug5():
    u = Universe(core=("v",))
    return build(
        "UG5",
        core_vertices=("v",),
        edges=[("e", core_vertex("v"), _vs(u, "v"))],
    )


def ug6():
    u = Universe(core=("u",), rays=("t",))
    rng = VertexSet.ray_cofinite(u, "t", [1])
    return build(
        "UG6", core_vertices=("u",), rays=("t",),
        edges=[("h", core_vertex("u"), rng)],
    )


def ug7():
    u = Universe(core=("v0",))
    fam = Family("F", core_vertex("v0"), (), (_vs(u, ["v0"]),))
    return build("UG7", core_vertices=("v0",), families=[fam])


def ug7s():
    """An infinite emitter whose emissions all point at a sink; unlike
    UG7 this admits finite-dimensional families."""
    u = Universe(core=("v0", "w"))
    fam = Family("F", core_vertex("v0"), (), (_vs(u, ["w"]),))
    return build("UG7S", core_vertices=("v0", "w"), families=[fam])


FIXTURES = (ug1, ug2, ug3, ug4, ug5, ug6, ug7)
FINITE_FIXTURES = (ug1, ug2, ug3, ug4, ug5)


# ---------------------------------------------------------------------------
# random generators


def random_matrix(rng: random.Random, max_n=8) -> Matrix01:
    n = rng.randint(1, max_n)
    rows = []
    for _ in range(n):
        row = [rng.randint(0, 1) for _ in range(n)]
        if not any(row):
            row[rng.randrange(n)] = 1
        rows.append(row)
    return Matrix01.from_rows(rows)


def random_ultragraph(rng: random.Random, max_vertices=6, max_edges=6,
                      no_sinks=False, loop_free=False):
    nv = rng.randint(1, max_vertices)
    names = tuple(f"v{i}" for i in range(1, nv + 1))
    u = Universe(core=names)
    ne = rng.randint(0 if not no_sinks else nv, max_edges)
    edges = []
    for k in range(ne):
        if no_sinks and k < nv:
            src = k          # first nv edges cover every vertex
        else:
            src = rng.randrange(nv)
        if loop_free:
            pool = list(range(src + 1, nv))
            if not pool:
                continue
        else:
            pool = list(range(nv))
        size = rng.randint(1, len(pool))
        rng_set = rng.sample(pool, size)
        edges.append(
            (f"e{k + 1}", core_vertex(names[src]),
             VertexSet.of(u, [core_vertex(names[i]) for i in rng_set]))
        )
    g = build(f"R{rng.randrange(10**6)}", core_vertices=names, edges=edges)
    if no_sinks and not g.sinks().is_empty():
        return random_ultragraph(rng, max_vertices, max_edges, no_sinks,
                                 loop_free)
    return g


def random_no_sink(rng: random.Random, max_edges=5):
    nv = rng.randint(1, min(4, max_edges))
    g = random_ultragraph(rng, max_vertices=nv, max_edges=max_edges,
                          no_sinks=True)
    return g


def random_loop_free(rng: random.Random, max_edges=6):
    return random_ultragraph(rng, max_vertices=6, max_edges=max_edges,
                             loop_free=True)


def simple_cycles(dg):
    """All simple cycles of a DirectedGraph as edge tuples, rotations
    deduplicated; an independent oracle for loop enumeration."""
    out = []

    def walk(path, visited):
        v = path[-1][2]
        if v == path[0][1]:
            out.append(path)
            return
        if v in visited:
            return
        for e in dg.out_edges(v):
            walk(path + (e,), visited | {v})

    for e in dg.edges:
        walk((e,), frozenset({e[1]}))
    seen = set()
    uniq = []
    for cyc in out:
        labels = tuple(x[0] for x in cyc)
        key = min(labels[i:] + labels[:i] for i in range(len(labels)))
        if key not in seen:
            seen.add(key)
            uniq.append(cyc)
    return uniq
