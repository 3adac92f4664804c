"""Desingularization: removing sinks and infinite emitters with tails.

A sink grows an infinite tail of single edges; an infinite emitter has
its emissions g_1, g_2, ... listed (named edges in declaration order,
then family indices ascending), replaced by a tail whose extra edges
f_j carry the original ranges r(g_j).  Each original edge g_j is
transported to the path alpha^j = e_1 ... e_(j-1) f_j.  Truncation cuts
a tail at level N, turning v_N into a sink, which keeps every
downstream check finite and exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .caps import DEFAULT as DEFAULT_CAPS
from .core import (
    INFINITE,
    CORE,
    Family,
    TailSpec,
    Ultragraph,
    Universe,
    VertexId,
    VertexSet,
    family_edge,
    tail_edge,
)
from .errors import (
    NotASink,
    NotInfiniteEmitter,
    NotInLattice,
    TruncationEmpty,
    Unbounded,
    UnknownEdge,
)
from .matrep import MatrixCKFamily, RatMat
from .setalg import lattice_member


# ---------------------------------------------------------------------------
# the construction record


@dataclass(frozen=True)
class TailMap:
    """One tail: where it was attached and how the removed emissions
    (if any) were enumerated."""

    vertex: VertexId
    ray: str
    named: tuple = ()      # removed named edges, declaration order
    fams: tuple = ()       # removed family ids, declaration order

    @property
    def is_emitter(self):
        return bool(self.named) or bool(self.fams)

    def g_count(self):
        return INFINITE if self.fams else len(self.named)

    def g_edge(self, j):
        """The j-th removed emission g_j in the fixed enumeration."""
        if j < 1:
            raise UnknownEdge(f"g_{j}")
        if j <= len(self.named):
            return self.named[j - 1]
        if not self.fams:
            raise UnknownEdge(f"g_{j}: enumeration has {len(self.named)} edges")
        k = j - len(self.named) - 1
        fam_id = self.fams[k % len(self.fams)]
        return family_edge(fam_id, k // len(self.fams) + 1)


@dataclass(frozen=True)
class DesingMap:
    original: Ultragraph
    result: Ultragraph
    tails: tuple = ()

    def tail_at(self, v: VertexId) -> TailMap:
        for tm in self.tails:
            if tm.vertex == v:
                return tm
        raise KeyError(f"no tail at {v}")


# ---------------------------------------------------------------------------
# helpers


def _fresh_ray_id(universe: Universe, base_vertex: VertexId):
    base = f"{base_vertex}_tail"
    taken = set(universe.regions()) | set(universe.core)
    name = base
    while name in taken:
        name += "x"
    return name


def _reuniverse(g: Ultragraph, universe: Universe) -> Ultragraph:
    """The same ultragraph with every vertex set carried into a larger
    universe."""
    edges = tuple((e, src, rng.embed(universe)) for e, src, rng in g.edges)
    fams = tuple(
        Family(
            f.fam_id,
            f.source,
            tuple(r.embed(universe) for r in f.prefix),
            tuple(r.embed(universe) for r in f.cycle),
        )
        for f in g.families
    )
    tails = tuple(
        TailSpec(
            t.ray,
            t.base,
            tuple(r.embed(universe) for r in t.f_prefix),
            tuple(r.embed(universe) for r in t.f_cycle),
        )
        for t in g.tails
    )
    return Ultragraph(g.name, universe, edges, fams, tails)


# ---------------------------------------------------------------------------
# adding tails


def add_tail_sink(g: Ultragraph, w: VertexId):
    """Attach the infinite single-edge tail at the sink ``w``."""
    if not g.sinks().contains(w):
        raise NotASink(f"{w} is not a sink")
    ray = _fresh_ray_id(g.universe, w)
    universe = replace(g.universe, rays=g.universe.rays + (ray,))
    out = _reuniverse(g, universe)
    spec = TailSpec(ray, w)
    out = replace(out, tails=out.tails + (spec,))
    tm = TailMap(w, ray)
    return out, DesingMap(g, out, (tm,))


def _merged_f_ranges(g: Ultragraph, named, fams):
    """The eventually periodic sequence r(g_1), r(g_2), ... for the
    named-then-families enumeration, as (prefix, cycle).  Families are
    interleaved round-robin, so the merged period is the number of
    families times the least common multiple of their cycle lengths."""
    head = [g.range_of(e) for e in named]
    if not fams:
        return tuple(head), ()
    specs = [g._family(fid) for fid in fams]
    max_prefix = max(len(f.prefix) for f in specs)
    period = len(specs) * math.lcm(*(len(f.cycle) for f in specs))

    def interleaved(k):
        fam = specs[k % len(specs)]
        return fam.range_of(k // len(specs) + 1)

    settle = len(specs) * max_prefix
    prefix = head + [interleaved(k) for k in range(settle)]
    cycle = [interleaved(k) for k in range(settle, settle + period)]
    return tuple(prefix), tuple(cycle)


def add_tail_infinite_emitter(g: Ultragraph, v0: VertexId):
    """Remove every emission of the infinite emitter ``v0`` and attach
    the tail whose f-edges carry the removed ranges."""
    fams = tuple(f.fam_id for f in g.families if f.source == v0)
    if not fams:
        raise NotInfiniteEmitter(f"{v0} hosts no edge family")
    named = tuple(e for e, src, _ in g.edges if src == v0)
    f_prefix, f_cycle = _merged_f_ranges(g, named, fams)
    ray = _fresh_ray_id(g.universe, v0)
    universe = replace(g.universe, rays=g.universe.rays + (ray,))
    kept_edges = tuple(x for x in g.edges if x[1] != v0)
    kept_fams = tuple(f for f in g.families if f.source != v0)
    stripped = replace(g, edges=kept_edges, families=kept_fams)
    out = _reuniverse(stripped, universe)
    spec = TailSpec(
        ray,
        v0,
        tuple(r.embed(universe) for r in f_prefix),
        tuple(r.embed(universe) for r in f_cycle),
    )
    out = replace(out, tails=out.tails + (spec,))
    tm = TailMap(v0, ray, named, fams)
    return out, DesingMap(g, out, (tm,))


def desingularize(g: Ultragraph) -> DesingMap:
    """A tail at every singular vertex; the result has none."""
    sinks = g.sinks()
    if not sinks.is_finite():
        raise Unbounded("infinitely many sinks; no finite presentation of "
                        "the desingularization exists here")
    cur = g
    tail_maps = []
    for w in sinks.vertices():
        cur, dm = add_tail_sink(cur, w)
        tail_maps.extend(dm.tails)
    for v0 in cur.infinite_emitters():
        cur, dm = add_tail_infinite_emitter(cur, v0)
        tail_maps.extend(dm.tails)
    return DesingMap(g, cur, tuple(tail_maps))


# ---------------------------------------------------------------------------
# transported paths


def alpha_path(dmap: DesingMap, v0: VertexId, j):
    """alpha^j = e_1 ... e_(j-1) f_j, the path replacing g_j at v0."""
    tm = dmap.tail_at(v0)
    if not tm.is_emitter:
        raise UnknownEdge(f"tail at {v0} carries no f-edges")
    tm.g_edge(j)    # validates the index
    path = tuple(tail_edge(tm.ray, "e", i) for i in range(1, j))
    return path + (tail_edge(tm.ray, "f", j),)


# ---------------------------------------------------------------------------
# truncation


def truncate(f_graph: Ultragraph, n) -> Ultragraph:
    """Cut every tail at level ``n``: keeps v_1..v_n, e_1..e_n (and
    f_1..f_n), turning each v_n into a sink.  A valid finite-tail
    ultragraph, though no longer a desingularization."""
    if n < 1:
        raise ValueError("truncation level must be at least 1")
    tail_rays = tuple(t.ray for t in f_graph.tails)
    for ray in f_graph.universe.rays:
        if ray not in tail_rays:
            raise Unbounded(f"ray {ray} is not a tail; cannot truncate")
    universe = Universe(
        core=f_graph.universe.core,
        rays=(),
        segments=f_graph.universe.segments + tuple((r, n) for r in tail_rays),
    )

    def cut(vs: VertexSet) -> VertexSet:
        parts = []
        for region, kind, idx in vs.parts:
            if region in tail_rays:
                if kind != "fin":
                    raise Unbounded(f"cofinite tail part in {vs}")
                idx = frozenset(i for i in idx if i <= n)
            parts.append((region, kind, idx))
        return VertexSet(universe, vs.core, tuple(parts))

    edges = [(e, src, cut(rng)) for e, src, rng in f_graph.edges]
    for t in f_graph.tails:
        for i in range(1, n + 1):
            src = t.base if i == 1 else VertexId(t.ray, i - 1)
            edges.append(
                (tail_edge(t.ray, "e", i), src,
                 VertexSet.of(universe, [VertexId(t.ray, i)]))
            )
            if t.has_f_edges:
                edges.append(
                    (tail_edge(t.ray, "f", i), src, cut(t.f_range(i)))
                )
    return Ultragraph(
        f"{f_graph.name}_t{n}", universe, tuple(edges), f_graph.families, ()
    )


# ---------------------------------------------------------------------------
# lattice decomposition of the desingularized graph


def f0_decompose(dmap: DesingMap, b: VertexSet, caps=DEFAULT_CAPS):
    """Split an admissible set of the desingularization into its
    original-lattice part A and its finite tail part F."""
    tail_rays = {tm.ray for tm in dmap.tails}
    a_core = b.core
    a_parts = []
    f_parts = []
    for region, kind, idx in b.parts:
        if region in tail_rays:
            if kind != "fin":
                raise NotInLattice(
                    "tail part is infinite; not of the form A union F"
                )
            f_parts.append((region, kind, idx))
        else:
            a_parts.append((region, kind, idx))
    a = VertexSet(dmap.original.universe, a_core, tuple(a_parts))
    if lattice_member(dmap.original, a, caps) is None:
        raise NotInLattice(f"{a} is not admissible in the original graph")
    f = VertexSet(b.universe, frozenset(), tuple(f_parts))
    return a, f


def f0_compose(dmap: DesingMap, a: VertexSet, f: VertexSet) -> VertexSet:
    return a.embed(dmap.result.universe) | f


# ---------------------------------------------------------------------------
# extending a matrix family across truncated tails


def _diag_support(m: RatMat, dim):
    """The index support of a diagonal 0/1 matrix (ValueError if not)."""
    support = set()
    for (i, j), val in m.data.items():
        if i != j or val != 1:
            raise ValueError("expected a diagonal 0/1 matrix")
        support.add(i)
    return support


def extend_family(fam: MatrixCKFamily, dmap: DesingMap, n) -> MatrixCKFamily:
    """Extend an exact family over the original graph to one over
    truncate(desingularization, n).

    Sink tails append n shifted copies of the sink's subspace.  Emitter
    tails carve the j-th level out of p[v0] minus the ranges of the
    first j removed emissions; TruncationEmpty signals that the
    enumeration was exhausted before level n.
    """
    target = truncate(dmap.result, n)
    basis = list(fam.basis)
    start = list(fam.start)
    S = {e: dict(m.data) for e, m in fam.S.items()}
    new_edges = {}

    for tm in dmap.tails:
        block_prev = [
            i for i, v in enumerate(fam.start) if v == tm.vertex
        ]
        if tm.is_emitter:
            levels = {0: block_prev}
            remaining = set(block_prev)
            for j in range(1, n + 1):
                gj = tm.g_edge(j)
                image = _diag_support(fam.s(gj) * fam.s(gj).adjoint(), fam.dim)
                remaining = remaining - image
                levels[j] = sorted(remaining)
            if not levels[n]:
                raise TruncationEmpty(
                    f"p[{tm.vertex}] is exhausted before level {n}"
                )
        else:
            levels = {j: block_prev for j in range(n + 1)}

        slot = {}    # (level j, original index) -> new basis index
        for b in block_prev:
            slot[(0, b)] = b
        for j in range(1, n + 1):
            for b in levels[j]:
                slot[(j, b)] = len(basis)
                basis.append(("tail", tm.ray, j, fam.basis[b]))
                start.append(VertexId(tm.ray, j))

        for j in range(1, n + 1):
            e_data = {}
            for b in levels[j]:
                e_data[(slot[(j - 1, b)], slot[(j, b)])] = Fraction(1)
            new_edges[tail_edge(tm.ray, "e", j)] = e_data
            if tm.is_emitter:
                gj = tm.g_edge(j)
                f_data = {}
                for (i, col), val in fam.s(gj).data.items():
                    f_data[(slot[(j - 1, i)], col)] = val
                new_edges[tail_edge(tm.ray, "f", j)] = f_data

    dim = len(basis)
    out_s = {}
    for e, data in S.items():
        out_s[e] = RatMat(dim, data)
    for e, data in new_edges.items():
        out_s[e] = RatMat(dim, data)
    # emissions of the removed infinite emitters no longer exist
    for tm in dmap.tails:
        for e in tm.named:
            out_s.pop(e, None)
        for fid in tm.fams:
            for e in list(out_s):
                if e.kind == "fam" and e.data[0] == fid:
                    del out_s[e]
    return MatrixCKFamily(target, tuple(basis), tuple(start), out_s)


def restrict_family(fam: MatrixCKFamily, dmap: DesingMap, caps=DEFAULT_CAPS):
    """Transport a family over a truncation back to a (partial) family
    over the original graph: S_e := T_e on surviving named edges and
    S_(g_j) := T_(alpha^j) on removed emissions.

    Returns (family, notices); notices name the axiom instances a
    truncated window cannot check (vertex sums at infinite emitters,
    and any g_j beyond the truncation level).
    """
    g = dmap.original
    trunc = fam.graph
    notices = []
    levels = {}
    for region, size in trunc.universe.segments:
        levels[region] = size
    S = {}
    removed = {e for tm in dmap.tails for e in tm.named}
    for e, _, _ in g.edges:
        if e in removed:
            continue
        if e in fam.S:
            S[e] = fam.S[e]
        else:
            notices.append(f"no matrix for surviving edge {e}")
    for tm in dmap.tails:
        if not tm.is_emitter:
            continue
        n = levels.get(tm.ray, 0)
        if n == 0:
            notices.append(f"tail {tm.ray} absent from the truncation")
        count = tm.g_count()
        stop = n if count == INFINITE else min(n, count)
        for j in range(1, stop + 1):
            S[tm.g_edge(j)] = fam.path_matrix(alpha_path(dmap, tm.vertex, j))
        if count == INFINITE or count > stop:
            notices.append(
                f"vertex sum at {tm.vertex} not checkable: emissions "
                f"beyond g_{stop} are outside the truncation"
            )
    out = MatrixCKFamily(g, fam.basis, fam.start, S)
    return out, tuple(notices)
