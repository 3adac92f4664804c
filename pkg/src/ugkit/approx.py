"""Finite approximation graphs.

From a finite edge set F an ultragraph induces a finite directed graph
G_F: one vertex per edge of F, plus one sink vertex per nonempty subset
X of F whose escaping emissions E(X, F minus X) are not contained in F.
The generators of G_F are realized inside the symbolic algebra of the
original ultragraph, and loops of G_F lift to loops of the ultragraph
with matching exit behavior.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .caps import DEFAULT as DEFAULT_CAPS
from .core import DirectedGraph, Ultragraph, VertexSet, _loop_exits
from .errors import FTooLarge, NotALoop
from .symalg import AlgebraElement, edges_from, el_vertex_set


def v_set(g: Ultragraph, xs, ys) -> VertexSet:
    """V(X, Y): vertices in every range of X and no range of Y."""
    return el_vertex_set(g, xs, ys)


@dataclass(frozen=True)
class EdgeSetDescription:
    """E(X, Y) = edges sourced in V(X, Y), queryable without
    enumeration even when infinite."""

    graph: Ultragraph
    vset: VertexSet

    @property
    def finite(self):
        return edges_from(self.graph, self.vset).finite

    @property
    def edges(self):
        info = edges_from(self.graph, self.vset)
        if not info.finite:
            raise ValueError("edge set is infinite")
        return info.edges

    def contains(self, e):
        return self.graph.has_edge(e) and self.vset.contains(self.graph.source(e))

    def subset_of(self, edge_collection):
        if not self.finite:
            return False
        return set(self.edges) <= set(edge_collection)


def e_set(g: Ultragraph, xs, ys) -> EdgeSetDescription:
    return EdgeSetDescription(g, v_set(g, xs, ys))


# ---------------------------------------------------------------------------
# the approximation graph


def edge_vertex_label(e):
    return str(e)


def subset_vertex_label(subset):
    return "X{" + ",".join(str(e) for e in subset) + "}"


@dataclass(frozen=True)
class ApproxGraph:
    graph: DirectedGraph
    F: tuple                     # edges of the ultragraph, fixed order
    subsets: tuple               # qualifying subsets, each ordered like F

    def edge_vertices(self):
        return tuple(edge_vertex_label(e) for e in self.F)

    def subset_vertices(self):
        return tuple(subset_vertex_label(x) for x in self.subsets)

    def resolve(self, label):
        """("edge", e) or ("subset", X) for a vertex label."""
        for e in self.F:
            if edge_vertex_label(e) == label:
                return ("edge", e)
        for x in self.subsets:
            if subset_vertex_label(x) == label:
                return ("subset", x)
        raise KeyError(label)


def approximation_graph(g: Ultragraph, F, caps=DEFAULT_CAPS) -> ApproxGraph:
    F = tuple(F)
    if len(F) > caps.approx_subsets:
        raise FTooLarge(f"|F| = {len(F)} exceeds cap {caps.approx_subsets}")
    subsets = []
    for r in range(1, len(F) + 1):
        for combo in itertools.combinations(F, r):
            rest = tuple(e for e in F if e not in combo)
            if not e_set(g, combo, rest).subset_of(F):
                subsets.append(combo)
    vertices = [edge_vertex_label(e) for e in F]
    vertices += [subset_vertex_label(x) for x in subsets]
    edges = []
    for e, f in itertools.product(F, F):
        if g.range_of(e).contains(g.source(f)):
            edges.append(
                (f"({e},{f})", edge_vertex_label(e), edge_vertex_label(f))
            )
    for x in subsets:
        for e in x:
            edges.append(
                (f"({e},{subset_vertex_label(x)})",
                 edge_vertex_label(e), subset_vertex_label(x))
            )
    return ApproxGraph(DirectedGraph(tuple(vertices), tuple(edges)), F,
                       tuple(subsets))


# ---------------------------------------------------------------------------
# the concrete family inside the symbolic algebra


def approx_family(g: Ultragraph, F, caps=DEFAULT_CAPS):
    """Generators of the approximation graph as elements over g,
    keyed for verify_ck_assignment: ("p", vertex label) and edge labels.
    """
    ag = approximation_graph(g, F, caps)
    E = AlgebraElement

    def srange(e):
        s = E.gen(g, e)
        return s * s.adjoint()

    off_f = E.one(g)
    for f in ag.F:
        off_f = off_f - srange(f)

    q = {}
    for e in ag.F:
        q[edge_vertex_label(e)] = srange(e)
    for x in ag.subsets:
        rest = tuple(e for e in ag.F if e not in x)
        q[subset_vertex_label(x)] = (
            E._proj_raw(g, v_set(g, x, rest)) * off_f
        )
    assignment = {("p", label): val for label, val in q.items()}
    for lbl, src, tgt in ag.graph.edges:
        kind_e = ag.resolve(src)
        assignment[lbl] = E.gen(g, kind_e[1]) * q[tgt]
    return ag, assignment


# ---------------------------------------------------------------------------
# loop lifting


@dataclass(frozen=True)
class LoopLift:
    loop: tuple                 # edges of the ultragraph, e_1 ... e_n
    gf_exit: str | None         # an exiting G_F edge label, if any
    g_exit: tuple | None        # exit witness in the ultragraph, if any

    @property
    def agree(self):
        return (self.gf_exit is None) == (self.g_exit is None)


def graph_loop_exit(dg: DirectedGraph, cycle_edges):
    """An edge leaving the cycle, or None when every cycle vertex has
    the next cycle edge as its only emission."""
    n = len(cycle_edges)
    for i in range(n):
        nxt = cycle_edges[(i + 1) % n]
        for out in dg.out_edges(cycle_edges[i][2]):
            if out[0] != nxt[0]:
                return out[0]
    return None


def lift_loop(g: Ultragraph, ag: ApproxGraph, cycle) -> LoopLift:
    """Lift a cycle of the approximation graph (a sequence of its edge
    labels, or (label, src, tgt) tuples) to a loop of the ultragraph and
    compare exit behavior on both sides."""
    resolved = []
    for item in cycle:
        lbl = item[0] if isinstance(item, tuple) else item
        hit = None
        for edge in ag.graph.edges:
            if edge[0] == lbl:
                hit = edge
                break
        if hit is None:
            raise NotALoop(f"unknown approximation-graph edge {lbl}")
        resolved.append(hit)
    if not resolved:
        raise NotALoop("empty cycle")
    n = len(resolved)
    for i in range(n):
        if resolved[i][2] != resolved[(i + 1) % n][1]:
            raise NotALoop("edge sequence does not close up")
    loop = []
    for lbl, src, tgt in resolved:
        kind, payload = ag.resolve(src)
        if kind != "edge":
            raise NotALoop("cycle passes through a subset vertex")
        loop.append(payload)
    gf_exit = graph_loop_exit(ag.graph, resolved)
    g_exit = _loop_exits(g, tuple(loop))
    return LoopLift(tuple(loop), gf_exit, g_exit)
