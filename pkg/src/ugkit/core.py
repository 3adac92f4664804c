"""Ultragraph data model and combinatorial operations.

An ultragraph assigns each edge a single source vertex and a nonempty
*set* of range vertices.  The vertex universe has three kinds of
regions: a finite named core, infinite rays (index 1, 2, ...), and
finite ray segments (index 1..n, produced by truncation).  Infinite
edge structure is representable in exactly two ways: an edge *family*
at a vertex (eventually periodic range sequence) and a desingularization
*tail* along a ray.  Both keep every decision procedure exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .errors import (
    HasLoop,
    InfiniteEdgeSet,
    Unbounded,
    UniverseMismatch,
    ValidationError,
    ZeroRow,
)

CORE = "core"

FIN = "fin"
COFIN = "cofin"

INFINITE = math.inf


# ---------------------------------------------------------------------------
# vertices and the universe


@dataclass(frozen=True, order=True)
class VertexId:
    region: str          # CORE or a ray/segment identifier
    key: str | int       # name in the core, index >= 1 elsewhere

    def __str__(self):
        if self.region == CORE:
            return str(self.key)
        return f"{self.region}{self.key}"


def core_vertex(name):
    return VertexId(CORE, name)


def ray_vertex(ray, index):
    return VertexId(ray, index)


@dataclass(frozen=True)
class Universe:
    core: tuple[str, ...] = ()
    rays: tuple[str, ...] = ()
    segments: tuple[tuple[str, int], ...] = ()   # (region id, length)

    def __post_init__(self):
        names = list(self.core) + list(self.rays) + [s for s, _ in self.segments]
        if len(set(names)) != len(names):
            raise ValidationError([f"duplicate region/vertex name among {names}"])

    @property
    def segment_sizes(self):
        return dict(self.segments)

    def regions(self):
        return (CORE,) + self.rays + tuple(s for s, _ in self.segments)

    def is_finite(self):
        return not self.rays

    def contains(self, v: VertexId):
        if v.region == CORE:
            return v.key in self.core
        if v.region in self.rays:
            return isinstance(v.key, int) and v.key >= 1
        size = self.segment_sizes.get(v.region)
        if size is not None:
            return isinstance(v.key, int) and 1 <= v.key <= size
        return False

    def vertices(self):
        """All vertices, finite universes only."""
        if self.rays:
            raise Unbounded("universe contains an infinite ray")
        out = [VertexId(CORE, n) for n in self.core]
        for seg, size in self.segments:
            out.extend(VertexId(seg, i) for i in range(1, size + 1))
        return tuple(out)


# ---------------------------------------------------------------------------
# exact region-wise finite/cofinite vertex sets


@dataclass(frozen=True)
class VertexSet:
    """A subset of the universe, finite or cofinite in each ray region.

    ``parts`` maps a non-core region to (FIN, indices) or (COFIN,
    excluded indices); missing regions are empty.  COFIN occurs only on
    rays.  The representation is canonical, so equality is structural.
    """

    universe: Universe
    core: frozenset = frozenset()
    parts: tuple = ()    # sorted tuple of (region, kind, frozenset[int])

    def __post_init__(self):
        object.__setattr__(self, "core", frozenset(self.core))
        cleaned = []
        for region, kind, idx in self.parts:
            idx = frozenset(idx)
            if kind == FIN and not idx:
                continue
            if kind == COFIN and region not in self.universe.rays:
                raise UniverseMismatch(f"cofinite part on non-ray region {region!r}")
            cleaned.append((region, kind, idx))
        object.__setattr__(self, "parts", tuple(sorted(cleaned, key=lambda p: p[0])))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def empty(universe):
        return VertexSet(universe)

    @staticmethod
    def of(universe, vertices):
        core = set()
        regional = {}
        for v in vertices:
            if not universe.contains(v):
                raise UniverseMismatch(f"vertex {v} not in universe")
            if v.region == CORE:
                core.add(v.key)
            else:
                regional.setdefault(v.region, set()).add(v.key)
        parts = tuple((r, FIN, frozenset(s)) for r, s in regional.items())
        return VertexSet(universe, frozenset(core), parts)

    @staticmethod
    def ray_cofinite(universe, ray, excluded=()):
        if ray not in universe.rays:
            raise UniverseMismatch(f"{ray!r} is not a ray")
        return VertexSet(universe, frozenset(), ((ray, COFIN, frozenset(excluded)),))

    @staticmethod
    def full(universe):
        core = frozenset(universe.core)
        parts = [(r, COFIN, frozenset()) for r in universe.rays]
        parts += [
            (s, FIN, frozenset(range(1, n + 1))) for s, n in universe.segments
        ]
        return VertexSet(universe, core, tuple(parts))

    # -- region access -----------------------------------------------------

    def _part(self, region):
        for r, kind, idx in self.parts:
            if r == region:
                return (kind, idx)
        return (FIN, frozenset())

    def _check(self, other):
        if self.universe != other.universe:
            raise UniverseMismatch("vertex sets over different universes")

    # -- boolean algebra ----------------------------------------------------

    def __and__(self, other):
        self._check(other)
        core = self.core & other.core
        parts = []
        for region in {r for r, _, _ in self.parts} | {r for r, _, _ in other.parts}:
            a_kind, a_idx = self._part(region)
            b_kind, b_idx = other._part(region)
            if a_kind == FIN and b_kind == FIN:
                entry = (FIN, a_idx & b_idx)
            elif a_kind == FIN:
                entry = (FIN, a_idx - b_idx)
            elif b_kind == FIN:
                entry = (FIN, b_idx - a_idx)
            else:
                entry = (COFIN, a_idx | b_idx)
            parts.append((region, entry[0], entry[1]))
        return VertexSet(self.universe, core, tuple(parts))

    def __or__(self, other):
        self._check(other)
        core = self.core | other.core
        parts = []
        for region in {r for r, _, _ in self.parts} | {r for r, _, _ in other.parts}:
            a_kind, a_idx = self._part(region)
            b_kind, b_idx = other._part(region)
            if a_kind == FIN and b_kind == FIN:
                entry = (FIN, a_idx | b_idx)
            elif a_kind == FIN:
                entry = (COFIN, b_idx - a_idx)
            elif b_kind == FIN:
                entry = (COFIN, a_idx - b_idx)
            else:
                entry = (COFIN, a_idx & b_idx)
            parts.append((region, entry[0], entry[1]))
        return VertexSet(self.universe, core, tuple(parts))

    def complement(self):
        """Complement within the universe."""
        core = frozenset(self.universe.core) - self.core
        parts = []
        got = {r for r, _, _ in self.parts}
        for region, kind, idx in self.parts:
            if region in self.universe.rays:
                parts.append((region, FIN if kind == COFIN else COFIN, idx))
            else:
                size = self.universe.segment_sizes[region]
                parts.append(
                    (region, FIN, frozenset(range(1, size + 1)) - idx)
                )
        for ray in self.universe.rays:
            if ray not in got:
                parts.append((ray, COFIN, frozenset()))
        for seg, size in self.universe.segments:
            if seg not in got:
                parts.append((seg, FIN, frozenset(range(1, size + 1))))
        return VertexSet(self.universe, core, tuple(parts))

    def __sub__(self, other):
        return self & other.complement()

    # -- predicates ----------------------------------------------------------

    def is_empty(self):
        return not self.core and not self.parts

    def is_finite(self):
        return all(kind == FIN for _, kind, _ in self.parts)

    def contains(self, v: VertexId):
        if v.region == CORE:
            return v.key in self.core
        kind, idx = self._part(v.region)
        return (v.key in idx) if kind == FIN else (v.key not in idx)

    def issubset(self, other):
        return (self & other) == self

    def __len__(self):
        if not self.is_finite():
            raise Unbounded("infinite vertex set")
        return len(self.core) + sum(len(idx) for _, _, idx in self.parts)

    def vertices(self):
        if not self.is_finite():
            raise Unbounded("infinite vertex set")
        out = [VertexId(CORE, n) for n in sorted(self.core)]
        for region, _, idx in self.parts:
            out.extend(VertexId(region, i) for i in sorted(idx))
        return tuple(out)

    def restrict(self, universe):
        """The same set over a sub-universe (regions absent there are dropped)."""
        core = self.core & frozenset(universe.core)
        keep = set(universe.rays) | {s for s, _ in universe.segments}
        parts = tuple(p for p in self.parts if p[0] in keep)
        return VertexSet(universe, core, parts)

    def embed(self, universe):
        """The same set over a super-universe."""
        return VertexSet(universe, self.core, self.parts)

    def __str__(self):
        def braces(names):
            return "{ " + " ".join(names) + " }" if names else "{ }"

        chunks = []
        finite_names = [*sorted(self.core)]
        for region, kind, idx in self.parts:
            if region in self.universe.rays and kind == COFIN:
                if idx:
                    excl = braces([f"{region}{i}" for i in sorted(idx)])
                    chunks.append(f"ray({region}) \\ {excl}")
                else:
                    chunks.append(f"ray({region})")
            else:
                finite_names.extend(f"{region}{i}" for i in sorted(idx))
        if finite_names or not chunks:
            chunks.insert(0, braces(finite_names))
        return " + ".join(chunks)


# ---------------------------------------------------------------------------
# edges


@dataclass(frozen=True, order=True)
class EdgeId:
    kind: str     # "named" | "fam" | "tail"
    data: tuple

    def __str__(self):
        if self.kind == "named":
            return self.data[0]
        if self.kind == "fam":
            return f"{self.data[0]}[{self.data[1]}]"
        ray, part, i = self.data
        return f"{ray}.{part}{i}"


def named_edge(name):
    return EdgeId("named", (name,))


def family_edge(fam_id, j):
    return EdgeId("fam", (fam_id, j))


def tail_edge(ray, part, i):
    assert part in ("e", "f")
    return EdgeId("tail", (ray, part, i))


@dataclass(frozen=True)
class Family:
    """Countably many edges g_1, g_2, ... from one source vertex.

    Ranges are the eventually periodic sequence prefix + cycle*."""

    fam_id: str
    source: VertexId
    prefix: tuple
    cycle: tuple

    def range_of(self, j):
        if j <= len(self.prefix):
            return self.prefix[j - 1]
        return self.cycle[(j - len(self.prefix) - 1) % len(self.cycle)]

    def distinct_ranges(self):
        return tuple(self.prefix) + tuple(self.cycle)


@dataclass(frozen=True)
class TailSpec:
    """An infinite tail along ``ray`` attached at ``base``.

    Edges e_i: v_{i-1} -> {v_i} always exist; when ``f_cycle`` is set the
    tail carries edges f_j: v_{j-1} -> f_range(j) as well (the
    infinite-emitter construction).
    """

    ray: str
    base: VertexId
    f_prefix: tuple = ()
    f_cycle: tuple = ()    # empty for sink tails

    @property
    def has_f_edges(self):
        return bool(self.f_cycle)

    def f_range(self, j):
        if j <= len(self.f_prefix):
            return self.f_prefix[j - 1]
        return self.f_cycle[(j - len(self.f_prefix) - 1) % len(self.f_cycle)]

    def distinct_f_ranges(self):
        return tuple(self.f_prefix) + tuple(self.f_cycle)


# ---------------------------------------------------------------------------
# the ultragraph itself


@dataclass(frozen=True)
class Ultragraph:
    name: str
    universe: Universe
    edges: tuple = ()       # (EdgeId, source VertexId, range VertexSet)
    families: tuple = ()
    tails: tuple = ()

    # -- structure ----------------------------------------------------------

    def edge_ids(self):
        return tuple(e for e, _, _ in self.edges)

    def _edge_entry(self, e):
        for eid, src, rng in self.edges:
            if eid == e:
                return (src, rng)
        return None

    def _family(self, fam_id):
        for fam in self.families:
            if fam.fam_id == fam_id:
                return fam
        return None

    def _tail(self, ray):
        for tail in self.tails:
            if tail.ray == ray:
                return tail
        return None

    def has_edge(self, e: EdgeId):
        if e.kind == "named" or self._edge_entry(e) is not None:
            return self._edge_entry(e) is not None
        if e.kind == "fam":
            fam = self._family(e.data[0])
            return fam is not None and e.data[1] >= 1
        ray, part, i = e.data
        tail = self._tail(ray)
        if tail is None or i < 1:
            return False
        return part == "e" or tail.has_f_edges

    def source(self, e: EdgeId):
        entry = self._edge_entry(e)
        if entry is not None:
            return entry[0]
        if e.kind == "fam":
            fam = self._family(e.data[0])
            if fam is not None:
                return fam.source
        elif e.kind == "tail":
            ray, part, i = e.data
            tail = self._tail(ray)
            if tail is not None:
                return tail.base if i == 1 else VertexId(ray, i - 1)
        raise KeyError(f"unknown edge {e}")

    def range_of(self, e: EdgeId):
        entry = self._edge_entry(e)
        if entry is not None:
            return entry[1]
        if e.kind == "fam":
            fam = self._family(e.data[0])
            if fam is not None:
                return fam.range_of(e.data[1])
        elif e.kind == "tail":
            ray, part, i = e.data
            tail = self._tail(ray)
            if tail is not None:
                if part == "e":
                    return VertexSet.of(self.universe, [VertexId(ray, i)])
                if tail.has_f_edges:
                    return tail.f_range(i)
        raise KeyError(f"unknown edge {e}")

    @property
    def edge_set_finite(self):
        return not self.families and not self.tails

    def all_edges(self, cap=None):
        """Every edge id, deterministically ordered; families and tails
        are cut at index ``cap`` (Unbounded if infinite and no cap)."""
        if not self.edge_set_finite and cap is None:
            raise Unbounded("infinite edge set; supply an index cap")
        out = list(self.edge_ids())
        for fam in self.families:
            out.extend(family_edge(fam.fam_id, j) for j in range(1, cap + 1))
        for tail in self.tails:
            for i in range(1, cap + 1):
                out.append(tail_edge(tail.ray, "e", i))
                if tail.has_f_edges:
                    out.append(tail_edge(tail.ray, "f", i))
        return tuple(out)

    # -- emission census -----------------------------------------------------

    def emission_count(self, v: VertexId):
        n = sum(1 for _, src, _ in self.edges if src == v)
        for fam in self.families:
            if fam.source == v:
                return INFINITE
        for tail in self.tails:
            if v == tail.base or (v.region == tail.ray):
                n += 2 if tail.has_f_edges else 1
        return n

    def emissions(self, v: VertexId):
        """Edges with source v, declaration order; requires a finite count."""
        if self.emission_count(v) == INFINITE:
            raise Unbounded(f"{v} is an infinite emitter")
        out = [e for e, src, _ in self.edges if src == v]
        for tail in self.tails:
            i = None
            if v == tail.base:
                i = 1
            elif v.region == tail.ray:
                i = v.key + 1
            if i is not None:
                out.append(tail_edge(tail.ray, "e", i))
                if tail.has_f_edges:
                    out.append(tail_edge(tail.ray, "f", i))
        return tuple(out)

    def is_regular(self, v: VertexId):
        n = self.emission_count(v)
        return 0 < n < INFINITE

    def sinks(self):
        """The sink set, exactly (may be infinite on bare rays)."""
        non_sources = VertexSet.full(self.universe)
        finite_sources = [src for _, src, _ in self.edges]
        finite_sources += [fam.source for fam in self.families]
        for tail in self.tails:
            finite_sources.append(tail.base)
            non_sources = non_sources - VertexSet.ray_cofinite(
                self.universe, tail.ray
            )
        return non_sources - VertexSet.of(self.universe, finite_sources)

    def infinite_emitters(self):
        seen = []
        for fam in self.families:
            if fam.source not in seen:
                seen.append(fam.source)
        return tuple(seen)

    def distinct_ranges(self):
        """All distinct range sets (tail e-ranges excluded; they are
        singletons and absorbable into any finite remainder)."""
        out = []
        for _, _, rng in self.edges:
            if rng not in out:
                out.append(rng)
        for fam in self.families:
            for rng in fam.distinct_ranges():
                if rng not in out:
                    out.append(rng)
        for tail in self.tails:
            for rng in tail.distinct_f_ranges():
                if rng not in out:
                    out.append(rng)
        return tuple(out)


# ---------------------------------------------------------------------------
# validation / construction


def build(name, core_vertices=(), rays=(), segments=(), edges=(), families=(),
          tails=()):
    """Validate and canonicalize an ultragraph description.

    ``edges``: iterable of (EdgeId | str, VertexId, VertexSet-or-vertex-iterable).
    ``families``: iterable of Family. ``tails``: iterable of TailSpec.
    Raises ValidationError carrying every detected issue.
    """
    issues = []
    try:
        universe = Universe(tuple(core_vertices), tuple(rays), tuple(segments))
    except ValidationError as err:
        raise err

    out_edges = []
    seen_ids = set()
    for eid, src, rng in edges:
        if isinstance(eid, str):
            eid = named_edge(eid)
        if eid in seen_ids:
            issues.append(f"DuplicateId: edge {eid}")
            continue
        seen_ids.add(eid)
        if not isinstance(rng, VertexSet):
            try:
                rng = VertexSet.of(universe, rng)
            except UniverseMismatch as err:
                issues.append(f"UnknownVertex: edge {eid}: {err}")
                continue
        elif rng.universe != universe:
            issues.append(f"UnknownVertex: edge {eid}: range over wrong universe")
            continue
        if rng.is_empty():
            issues.append(f"EmptyRange: edge {eid}")
            continue
        if not universe.contains(src):
            issues.append(f"UnknownVertex: edge {eid}: source {src}")
            continue
        out_edges.append((eid, src, rng))

    out_fams = []
    for fam in families:
        if fam.fam_id in {f.fam_id for f in out_fams} or named_edge(fam.fam_id) in seen_ids:
            issues.append(f"DuplicateId: family {fam.fam_id}")
            continue
        if not fam.cycle:
            issues.append(f"EmptyCycle: family {fam.fam_id}")
            continue
        if not universe.contains(fam.source):
            issues.append(f"UnknownVertex: family {fam.fam_id}: source {fam.source}")
            continue
        bad = False
        for rng in tuple(fam.prefix) + tuple(fam.cycle):
            if rng.universe != universe:
                issues.append(f"UnknownVertex: family {fam.fam_id}: range universe")
                bad = True
            elif rng.is_empty():
                issues.append(f"EmptyRange: family {fam.fam_id}")
                bad = True
        if not bad:
            out_fams.append(fam)

    out_tails = []
    for tail in tails:
        if tail.ray not in universe.rays:
            issues.append(f"UnknownVertex: tail ray {tail.ray}")
            continue
        if not universe.contains(tail.base):
            issues.append(f"UnknownVertex: tail base {tail.base}")
            continue
        if tail.has_f_edges:
            for rng in tail.distinct_f_ranges():
                if rng.is_empty():
                    issues.append(f"EmptyRange: tail {tail.ray}")
        out_tails.append(tail)

    if issues:
        raise ValidationError(issues)
    return Ultragraph(name, universe, tuple(out_edges), tuple(out_fams),
                      tuple(out_tails))


def validate(graph_or_parts):
    """Re-validate an existing Ultragraph value."""
    g = graph_or_parts
    return build(
        g.name, g.universe.core, g.universe.rays, g.universe.segments,
        g.edges, g.families, g.tails,
    )


# ---------------------------------------------------------------------------
# singular vertices


def singular_vertices(g: Ultragraph):
    """(sinks, infinite emitters).

    Sinks are returned as an exact VertexSet: a bare (tail-less) ray
    consists entirely of sinks, which no finite list could report.
    """
    return (g.sinks(), g.infinite_emitters())


# ---------------------------------------------------------------------------
# 0/1 matrices and plain directed graphs


@dataclass(frozen=True)
class Matrix01:
    labels: tuple
    rows: tuple

    def __post_init__(self):
        n = len(self.labels)
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise ValidationError(["matrix is not square over its labels"])
        if any(x not in (0, 1) for r in self.rows for x in r):
            raise ValidationError(["matrix entries must be 0 or 1"])

    @staticmethod
    def from_rows(rows, labels=None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if labels is None:
            labels = tuple(str(i + 1) for i in range(len(rows)))
        return Matrix01(tuple(labels), rows)

    def entry(self, i, j):
        return self.rows[i][j]


@dataclass(frozen=True)
class DirectedGraph:
    vertices: tuple          # labels
    edges: tuple             # (edge label, source label, target label)

    def __post_init__(self):
        seen = set()
        for lbl, s, t in self.edges:
            if lbl in seen:
                raise ValidationError([f"DuplicateId: graph edge {lbl}"])
            seen.add(lbl)
            if s not in self.vertices or t not in self.vertices:
                raise ValidationError([f"UnknownVertex: graph edge {lbl}"])

    def out_edges(self, v):
        return tuple(e for e in self.edges if e[1] == v)


def edge_matrix(g: Ultragraph) -> Matrix01:
    """A(e, f) = 1 iff s(f) lies in r(e); requires a finite edge set."""
    if not g.edge_set_finite:
        raise InfiniteEdgeSet("edge matrix requires finitely many edges")
    ids = g.edge_ids()
    rows = tuple(
        tuple(1 if g.range_of(e).contains(g.source(f)) else 0 for f in ids)
        for e in ids
    )
    return Matrix01(tuple(str(e) for e in ids), rows)


def ultragraph_from_matrix(a: Matrix01, name="from-matrix") -> Ultragraph:
    """The ultragraph with one vertex and one edge per index whose edge
    matrix is ``a``; every vertex emits exactly one edge."""
    n = len(a.labels)
    for i, row in enumerate(a.rows):
        if not any(row):
            raise ZeroRow(a.labels[i])
    vnames = tuple(f"v{lbl}" for lbl in a.labels)
    universe = Universe(core=vnames)
    edges = []
    for i, lbl in enumerate(a.labels):
        rng = VertexSet.of(
            universe,
            [core_vertex(vnames[j]) for j in range(n) if a.rows[i][j] == 1],
        )
        edges.append((named_edge(lbl), core_vertex(vnames[i]), rng))
    return Ultragraph(name, universe, tuple(edges))


def graph_from_matrix(a: Matrix01) -> DirectedGraph:
    """Gr(A): vertex set = index labels, A(i,j) parallel edges i -> j."""
    edges = []
    for i, li in enumerate(a.labels):
        for j, lj in enumerate(a.labels):
            if a.rows[i][j]:
                edges.append((f"{li}->{lj}", li, lj))
    return DirectedGraph(tuple(a.labels), tuple(edges))


def ultragraph_from_graph(h: DirectedGraph, name="from-graph") -> Ultragraph:
    """View a directed graph as an ultragraph with singleton ranges."""
    universe = Universe(core=tuple(h.vertices))
    edges = tuple(
        (named_edge(lbl), core_vertex(s), VertexSet.of(universe, [core_vertex(t)]))
        for lbl, s, t in h.edges
    )
    return Ultragraph(name, universe, edges)


# ---------------------------------------------------------------------------
# paths


def path_source(g: Ultragraph, path):
    return g.source(path[0])


def path_range(g: Ultragraph, path):
    return g.range_of(path[-1])


def is_path(g: Ultragraph, path):
    if not path:
        return False
    return all(
        g.range_of(path[i]).contains(g.source(path[i + 1]))
        for i in range(len(path) - 1)
    )


def enumerate_paths(g: Ultragraph, max_len, cap=None):
    """All composable edge sequences of length 1..max_len, ordered by
    (length, lexicographic declaration order)."""
    ids = g.all_edges(cap=cap)
    succ = {
        e: tuple(f for f in ids if g.range_of(e).contains(g.source(f)))
        for e in ids
    }
    out = []
    frontier = [(e,) for e in ids]
    for _ in range(max_len):
        out.extend(frontier)
        frontier = [p + (f,) for p in frontier for f in succ[p[-1]]]
        if not frontier:
            break
    return tuple(out)


# ---------------------------------------------------------------------------
# Condition (L)


@dataclass(frozen=True)
class ConditionL:
    holds: bool
    witness: tuple = ()      # a no-exit loop when holds is False

    def __bool__(self):
        return self.holds


def _loop_exits(g: Ultragraph, loop):
    """Witness an exit of ``loop`` (edge or sink kind), or None."""
    n = len(loop)
    for i in range(n):
        rng = g.range_of(loop[i])
        nxt = loop[(i + 1) % n]
        if not rng.is_finite():
            # infinitely many vertices: each is a sink or emits, and a
            # singleton next-edge cannot account for more than one of them
            return ("range-infinite", loop[i])
        for w in rng.vertices():
            cnt = g.emission_count(w)
            if cnt == 0:
                return ("sink", w)
            if cnt == INFINITE:
                return ("edge", ("infinite-emitter", w))
            for e in g.emissions(w):
                if e != nxt:
                    return ("edge", e)
    return None


def condition_l(g: Ultragraph) -> ConditionL:
    """Linear-time decision via the partial successor function on edges
    with singleton range whose range vertex emits exactly one edge."""
    succ = {}
    for e in g.edge_ids():
        rng = g.range_of(e)
        if not rng.is_finite() or len(rng) != 1:
            continue
        (w,) = rng.vertices()
        if g.emission_count(w) != 1:
            continue
        succ[e] = g.emissions(w)[0]
    # cycles of succ restricted to named edges (family edges never qualify:
    # their range vertex hosting-them would be an infinite emitter; tail
    # chains strictly increase their index and cannot close up)
    color = {}
    for start in succ:
        if color.get(start):
            continue
        trail = []
        e = start
        while e in succ and color.get(e) is None:
            color[e] = "open"
            trail.append(e)
            e = succ[e]
        if color.get(e) == "open":
            cycle = trail[trail.index(e):]
            return ConditionL(False, tuple(cycle))
        for t in trail:
            color[t] = "done"
    return ConditionL(True)


def condition_l_bruteforce(g: Ultragraph, max_len) -> ConditionL:
    """Oracle: enumerate loops up to max_len and look for both exit
    kinds directly.  A loop without an exit determines its own successor
    edges uniquely, so it never repeats an edge; the sweep therefore
    only needs edge-distinct paths.  Requires a finite edge set."""
    if not g.edge_set_finite:
        raise Unbounded("brute-force Condition (L) needs a finite edge set")
    ids = g.edge_ids()
    succ = {
        e: tuple(f for f in ids if g.range_of(e).contains(g.source(f)))
        for e in ids
    }

    def sweep(path, used):
        if path:
            if path_range(g, path).contains(path_source(g, path)):
                if _loop_exits(g, path) is None:
                    return path
            if len(path) == max_len:
                return None
            options = (f for f in succ[path[-1]] if f not in used)
        else:
            options = ids
        for f in options:
            got = sweep(path + (f,), used | {f})
            if got is not None:
                return got
        return None

    witness = sweep((), frozenset())
    if witness is not None:
        return ConditionL(False, witness)
    return ConditionL(True)


def condition_l_graph(h: DirectedGraph) -> ConditionL:
    """Graph Condition (L): fails iff some cycle sees out-degree exactly 1
    at every vertex it visits."""
    succ = {}
    for v in h.vertices:
        out = h.out_edges(v)
        if len(out) == 1:
            succ[v] = out[0]
    color = {}
    for start in succ:
        if color.get(start):
            continue
        trail = []
        v = start
        while v in succ and color.get(v) is None:
            color[v] = "open"
            trail.append(v)
            v = succ[v][2]
        if color.get(v) == "open":
            cycle_vs = trail[trail.index(v):]
            return ConditionL(False, tuple(succ[u][0] for u in cycle_vs))
        for t in trail:
            color[t] = "done"
    return ConditionL(True)


def find_loop(g: Ultragraph):
    """A loop witness in the edge-adjacency relation, or None.

    Used to refuse finite-dimensional representations: follows cycles of
    the relation s(f) in r(e) over the (finite) edge set."""
    if not g.edge_set_finite:
        raise Unbounded("loop search needs a finite edge set")
    ids = g.edge_ids()
    succ = {
        e: [f for f in ids if g.range_of(e).contains(g.source(f))] for e in ids
    }
    state = {}
    stack = []

    def dfs(e):
        state[e] = "open"
        stack.append(e)
        for f in succ[e]:
            if state.get(f) == "open":
                cyc = stack[stack.index(f):]
                return tuple(cyc)
            if f not in state:
                got = dfs(f)
                if got:
                    return got
        stack.pop()
        state[e] = "done"
        return None

    for e in ids:
        if e not in state:
            got = dfs(e)
            if got:
                return got
    return None
