"""The line-oriented ultragraph document format.

Grammar ('#' starts a comment, blank lines ignored):

    ultragraph NAME
    vertices: id id ...
    ray: id
    edge id: src -> SET
    family id at src: prefix [ SET ... ] cycle [ SET ... ]

    SET := { id ... } | ray(id) | ray(id) \\ { id ... } | SET + SET

A token inside a set names a declared vertex, or a ray vertex written
as the ray id followed by its index (t1, t2, ...); declared vertex
names win ties.  Printing emits a canonical document; parse after print
is the identity, and print after parse is the identity on canonical
input.
"""

from __future__ import annotations

import re

from .core import (
    Family,
    Ultragraph,
    Universe,
    VertexId,
    VertexSet,
    build,
    core_vertex,
    ray_vertex,
)
from .errors import ParseError

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_RAY_TOKEN = re.compile(r"([A-Za-z_][A-Za-z0-9_]*?)([1-9][0-9]*)$")


def _tokenize(text):
    out = []
    for spaced in ("{", "}", "[", "]", "(", ")", "\\", "+", "->", ":", ","):
        text = text.replace(spaced, f" {spaced} ")
    text = text.replace("-  >", "->")
    return text.split()


class _Cursor:
    def __init__(self, tokens, line):
        self.tokens = tokens
        self.pos = 0
        self.line = line

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(
                f"expected {expected or 'a token'}, found {tok!r}",
                self.line, self.pos,
            )
        self.pos += 1
        return tok

    def done(self):
        return self.pos >= len(self.tokens)


def _resolve_vertex(token, core, rays, line):
    if token in core:
        return core_vertex(token)
    m = _RAY_TOKEN.match(token)
    if m and m.group(1) in rays:
        return ray_vertex(m.group(1), int(m.group(2)))
    raise ParseError(f"unknown vertex {token!r}", line, 0)


def _parse_set(cur: _Cursor, universe: Universe, core, rays) -> VertexSet:
    acc = None
    while True:
        piece = _parse_set_primary(cur, universe, core, rays)
        acc = piece if acc is None else acc | piece
        if cur.peek() == "+":
            cur.take("+")
            continue
        return acc


def _parse_set_primary(cur, universe, core, rays):
    tok = cur.peek()
    if tok == "{":
        cur.take("{")
        members = []
        while cur.peek() != "}":
            members.append(
                _resolve_vertex(cur.take(), core, rays, cur.line)
            )
        cur.take("}")
        return VertexSet.of(universe, members)
    if tok == "ray":
        cur.take("ray")
        cur.take("(")
        ray = cur.take()
        cur.take(")")
        if ray not in rays:
            raise ParseError(f"unknown ray {ray!r}", cur.line, cur.pos)
        excluded = []
        if cur.peek() == "\\":
            cur.take("\\")
            cur.take("{")
            while cur.peek() != "}":
                v = _resolve_vertex(cur.take(), core, rays, cur.line)
                if v.region != ray:
                    raise ParseError(
                        f"{v} is not on ray {ray}", cur.line, cur.pos
                    )
                excluded.append(v.key)
            cur.take("}")
        return VertexSet.ray_cofinite(universe, ray, excluded)
    raise ParseError(f"expected a set, found {tok!r}", cur.line, cur.pos)


def _parse_set_list(cur, universe, core, rays):
    cur.take("[")
    out = []
    while cur.peek() != "]":
        out.append(_parse_set(cur, universe, core, rays))
    cur.take("]")
    return tuple(out)


def parse_document(text: str) -> Ultragraph:
    lines = []
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((n, body))
    if not lines:
        raise ParseError("empty document", 1, 0)

    name = None
    core = []
    rays = []
    edge_lines = []
    family_lines = []
    for n, body in lines:
        head = body.split()[0].rstrip(":")
        if head == "ultragraph":
            parts = body.split()
            if len(parts) != 2 or not _IDENT.match(parts[1]):
                raise ParseError("expected: ultragraph NAME", n, 0)
            if name is not None:
                raise ParseError("duplicate ultragraph line", n, 0)
            name = parts[1]
        elif head == "vertices":
            cur = _Cursor(_tokenize(body), n)
            cur.take("vertices")
            cur.take(":")
            while not cur.done():
                tok = cur.take()
                if not _IDENT.match(tok):
                    raise ParseError(f"bad vertex id {tok!r}", n, cur.pos)
                core.append(tok)
        elif head == "ray":
            cur = _Cursor(_tokenize(body), n)
            cur.take("ray")
            cur.take(":")
            tok = cur.take()
            if not cur.done() or not _IDENT.match(tok) or tok[-1].isdigit():
                raise ParseError(
                    "expected: ray: id (not ending in a digit)", n, cur.pos
                )
            rays.append(tok)
        elif head == "edge":
            edge_lines.append((n, body))
        elif head == "family":
            family_lines.append((n, body))
        else:
            raise ParseError(f"unrecognized line {body!r}", n, 0)
    if name is None:
        raise ParseError("missing ultragraph line", lines[0][0], 0)

    universe = Universe(core=tuple(core), rays=tuple(rays))
    edges = []
    for n, body in edge_lines:
        cur = _Cursor(_tokenize(body), n)
        cur.take("edge")
        eid = cur.take()
        cur.take(":")
        src = _resolve_vertex(cur.take(), core, rays, n)
        cur.take("->")
        rng = _parse_set(cur, universe, core, rays)
        if not cur.done():
            raise ParseError("trailing tokens on edge line", n, cur.pos)
        edges.append((eid, src, rng))
    families = []
    for n, body in family_lines:
        cur = _Cursor(_tokenize(body), n)
        cur.take("family")
        fid = cur.take()
        cur.take("at")
        src = _resolve_vertex(cur.take(), core, rays, n)
        cur.take(":")
        cur.take("prefix")
        prefix = _parse_set_list(cur, universe, core, rays)
        cur.take("cycle")
        cycle = _parse_set_list(cur, universe, core, rays)
        if not cur.done():
            raise ParseError("trailing tokens on family line", n, cur.pos)
        families.append(Family(fid, src, prefix, cycle))
    return build(
        name, tuple(core), tuple(rays), (), edges, families, ()
    )


# ---------------------------------------------------------------------------
# printing


def _sanitize(label: str) -> str:
    out = re.sub(r"[^A-Za-z0-9_]+", "_", label).strip("_")
    if not out or out[0].isdigit():
        out = "n_" + out
    return out


def printable(g: Ultragraph) -> Ultragraph:
    """A document-expressible copy: segment vertices become named core
    vertices and non-named edge ids become identifiers."""
    if not (g.universe.segments or
            any(e.kind != "named" for e in g.edge_ids()) or g.tails):
        return g
    rename = {}
    core = list(g.universe.core)
    for seg, size in g.universe.segments:
        for i in range(1, size + 1):
            fresh = _sanitize(f"{seg}{i}")
            while fresh in core:
                fresh += "_"
            core.append(fresh)
            rename[VertexId(seg, i)] = fresh
    universe = Universe(core=tuple(core), rays=g.universe.rays)

    def mv(v):
        return core_vertex(rename[v]) if v in rename else v

    def ms(vs):
        plain = []
        parts = []
        for region, kind, idx in vs.parts:
            if region in dict(g.universe.segments):
                plain.extend(rename[VertexId(region, i)] for i in idx)
            else:
                parts.append((region, kind, idx))
        return VertexSet(
            universe, vs.core | frozenset(plain), tuple(parts)
        )

    taken = set()
    edges = []
    for e, src, rng in g.edges:
        eid = _sanitize(str(e)) if e.kind != "named" else e.data[0]
        while eid in taken:
            eid += "_"
        taken.add(eid)
        edges.append((eid, mv(src), ms(rng)))
    families = tuple(
        Family(f.fam_id, mv(f.source),
               tuple(ms(r) for r in f.prefix), tuple(ms(r) for r in f.cycle))
        for f in g.families
    )
    return build(g.name, tuple(core), g.universe.rays, (), edges, families, ())


def format_document(g: Ultragraph) -> str:
    g = printable(g)
    out = [f"ultragraph {g.name}"]
    if g.universe.core:
        out.append("vertices: " + " ".join(g.universe.core))
    for ray in g.universe.rays:
        out.append(f"ray: {ray}")
    for e, src, rng in g.edges:
        out.append(f"edge {e}: {src} -> {rng}")
    for f in g.families:
        prefix = " ".join(str(r) for r in f.prefix)
        cycle = " ".join(str(r) for r in f.cycle)
        out.append(
            f"family {f.fam_id} at {f.source}: "
            f"prefix [ {prefix} ]".replace("[  ]", "[ ]")
            + f" cycle [ {cycle} ]"
        )
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# matrix and plain-graph files


def parse_matrix(text: str):
    from .core import Matrix01

    labels = None
    rows = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("labels:"):
            labels = tuple(body.split(":", 1)[1].split())
            continue
        if n is None:
            try:
                n = int(body)
            except ValueError:
                raise ParseError("expected the matrix size", lineno, 0)
            continue
        try:
            rows.append(tuple(int(x) for x in body.split()))
        except ValueError:
            raise ParseError("expected a 0/1 row", lineno, 0)
    if n is None or len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError(f"expected {n or '?'} rows of width {n or '?'}", 1, 0)
    if labels is not None and len(labels) != n:
        raise ParseError("label count does not match the size", 1, 0)
    if any(x not in (0, 1) for r in rows for x in r):
        raise ParseError("matrix entries must be 0 or 1", 1, 0)
    return Matrix01.from_rows(rows, labels)


def format_matrix(m) -> str:
    out = [str(len(m.labels)), "labels: " + " ".join(m.labels)]
    out.extend(" ".join(str(x) for x in row) for row in m.rows)
    return "\n".join(out) + "\n"


def parse_graph(text: str):
    from .core import DirectedGraph

    name = "from-graph"
    vertices = []
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        head = body.split()[0].rstrip(":")
        if head == "graph":
            name = body.split()[1]
        elif head == "vertices":
            vertices.extend(body.split(":", 1)[1].split())
        elif head == "edge":
            m = re.match(r"edge\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$", body)
            if not m:
                raise ParseError("expected: edge id: src -> tgt", lineno, 0)
            edges.append(m.groups())
        else:
            raise ParseError(f"unrecognized line {body!r}", lineno, 0)
    return name, DirectedGraph(tuple(vertices), tuple(edges))


# ---------------------------------------------------------------------------
# DOT export


def format_dot(g: Ultragraph) -> str:
    """One arrow per (edge, range vertex), all sharing the edge label;
    a cofinite ray range is a single arrow to the ray node."""
    out = [f'digraph "{g.name}" {{']
    if g.universe.core:
        for v in g.universe.core:
            out.append(f'  "{v}";')
    for ray in g.universe.rays:
        out.append(f'  "ray({ray})" [shape=box];')
    for seg, size in g.universe.segments:
        for i in range(1, size + 1):
            out.append(f'  "{seg}{i}";')

    def arrows(eid, src, rng):
        plain = [str(v) for v in rng.vertices()] if rng.is_finite() else None
        if plain is None:
            for region, kind, idx in rng.parts:
                if kind == "cofin":
                    tag = str(
                        VertexSet(rng.universe, frozenset(),
                                  ((region, kind, idx),))
                    ).replace("\\", "\\\\")
                    out.append(
                        f'  "{src}" -> "ray({region})" '
                        f'[label="{eid}" taillabel="{tag}"];'
                    )
            finite_bit = VertexSet(
                rng.universe, rng.core,
                tuple(p for p in rng.parts if p[1] == "fin"),
            )
            plain = [str(v) for v in finite_bit.vertices()]
        for tgt in plain:
            out.append(f'  "{src}" -> "{tgt}" [label="{eid}"];')

    for e, src, rng in g.edges:
        arrows(str(e), str(src), rng)
    for f in g.families:
        for k, rng in enumerate(f.distinct_ranges(), start=1):
            arrows(f"{f.fam_id}[*{k}]", str(f.source), rng)
    out.append("}")
    return "\n".join(out) + "\n"
