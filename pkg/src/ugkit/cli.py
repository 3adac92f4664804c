"""Command-line interface.

Exit codes: 0 success / property holds; 1 property fails (witness
printed); 2 usage or parse error; 3 capability limit (loops where a
finite family is impossible, infinite data without a cap, oversized
sweeps).
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import docio
from .caps import DEFAULT as DEFAULT_CAPS
from .core import (
    EdgeId,
    Ultragraph,
    VertexSet,
    condition_l,
    edge_matrix,
    family_edge,
    named_edge,
    ultragraph_from_graph,
    ultragraph_from_matrix,
)
from .errors import (
    FTooLarge,
    HasLoop,
    InfiniteEdgeSet,
    NotInLattice,
    ParseError,
    TooLarge,
    TooManyRanges,
    TruncationEmpty,
    Unbounded,
    UgkitError,
    ValidationError,
)

SCHEMA = "ugkit-report/1"

_CAPABILITY = (
    Unbounded, HasLoop, TooManyRanges, TooLarge, FTooLarge,
    InfiniteEdgeSet, TruncationEmpty,
)
_USAGE = (ParseError, ValidationError)

_EDGE_REF = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\[([1-9][0-9]*)\])?$")


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path) -> Ultragraph:
    return docio.parse_document(_read(path))


def _edge_ref(g: Ultragraph, token) -> EdgeId:
    m = _EDGE_REF.match(token.strip())
    if not m:
        raise ParseError(f"bad edge reference {token!r}", 0, 0)
    name, idx = m.groups()
    e = family_edge(name, int(idx)) if idx else named_edge(name)
    if not g.has_edge(e):
        raise ParseError(f"unknown edge {token!r}", 0, 0)
    return e


def _edge_list(g, spec):
    if not spec:
        return ()
    return tuple(_edge_ref(g, tok) for tok in spec.split(",") if tok.strip())


def _parse_set_arg(g: Ultragraph, text) -> VertexSet:
    cur = docio._Cursor(docio._tokenize(text), 0)
    out = docio._parse_set(cur, g.universe, g.universe.core, g.universe.rays)
    if not cur.done():
        raise ParseError(f"trailing tokens in set {text!r}", 0, cur.pos)
    return out


class _Report:
    def __init__(self, command, graph_name=None):
        self.lines = []
        self.data = {"schema": SCHEMA, "command": command, "ok": True}
        if graph_name:
            self.data["graph"] = graph_name
        self.code = 0

    def say(self, line):
        self.lines.append(line)

    def fail(self, code=1):
        self.data["ok"] = False
        self.code = code

    def emit(self, as_json):
        if as_json:
            print(json.dumps(self.data, indent=2, sort_keys=True))
        else:
            for line in self.lines:
                print(line)
        return self.code


# ---------------------------------------------------------------------------
# subcommands


def _cmd_info(args):
    g = _load(args.file)
    from .setalg import lattice_member

    rep = _Report("info", g.name)
    finite = g.universe.is_finite()
    nv = len(g.universe.vertices()) if finite else "infinite"
    ne = len(g.edge_ids()) if g.edge_set_finite else "infinite"
    rep.say(f"ultragraph {g.name}")
    rep.say(f"vertices: {nv}")
    rep.say(f"edges: {ne}")
    sinks, emitters = g.sinks(), g.infinite_emitters()
    rep.say(f"sinks: {sinks if not sinks.is_empty() else 'none'}")
    rep.say(
        "infinite emitters: "
        + (" ".join(str(v) for v in emitters) if emitters else "none")
    )
    witness = lattice_member(g, VertexSet.full(g.universe))
    if witness is None:
        rep.say("unital: no")
    else:
        chunks = [
            "^".join(str(e) for e in chunk) for chunk in witness.intersections
        ]
        rep.say(
            f"unital: yes (union of [{' '.join(chunks)}] and {witness.finite_part})"
        )
    cl = condition_l(g)
    if cl.holds:
        rep.say("condition (L): holds")
    else:
        rep.say(
            "condition (L): fails, loop " + " ".join(str(e) for e in cl.witness)
        )
    rep.data.update(
        vertices=nv, edges=ne, sinks=str(sinks),
        infinite_emitters=[str(v) for v in emitters],
        unital=witness is not None,
        condition_l=cl.holds,
        condition_l_witness=[str(e) for e in cl.witness],
    )
    return rep.emit(args.json)


def _cmd_edge_matrix(args):
    g = _load(args.file)
    m = edge_matrix(g)
    rep = _Report("edge-matrix", g.name)
    for line in docio.format_matrix(m).splitlines():
        rep.say(line)
    rep.data.update(labels=list(m.labels), rows=[list(r) for r in m.rows])
    return rep.emit(args.json)


def _cmd_from_matrix(args):
    m = docio.parse_matrix(_read(args.file))
    g = ultragraph_from_matrix(m, args.name)
    rep = _Report("from-matrix", g.name)
    doc = docio.format_document(g)
    for line in doc.splitlines():
        rep.say(line)
    rep.data["document"] = doc
    return rep.emit(args.json)


def _cmd_from_graph(args):
    name, dg = docio.parse_graph(_read(args.file))
    g = ultragraph_from_graph(dg, name)
    rep = _Report("from-graph", g.name)
    doc = docio.format_document(g)
    for line in doc.splitlines():
        rep.say(line)
    rep.data["document"] = doc
    return rep.emit(args.json)


def _cmd_condition_l(args):
    g = _load(args.file)
    cl = condition_l(g)
    rep = _Report("condition-l", g.name)
    rep.data["holds"] = cl.holds
    rep.data["witness"] = [str(e) for e in cl.witness]
    if cl.holds:
        rep.say("condition (L): holds")
    else:
        rep.say(
            "condition (L): fails, loop without exit: "
            + " ".join(str(e) for e in cl.witness)
        )
        rep.fail(1)
    return rep.emit(args.json)


def _cmd_member(args):
    from .setalg import lattice_member

    g = _load(args.file)
    s = _parse_set_arg(g, args.set)
    witness = lattice_member(g, s)
    rep = _Report("member", g.name)
    rep.data["set"] = str(s)
    rep.data["member"] = witness is not None
    if witness is None:
        rep.say(f"{s}: not in the lattice")
        rep.fail(1)
    else:
        chunks = [
            "^".join(str(e) for e in chunk) for chunk in witness.intersections
        ]
        rep.say(f"{s}: in the lattice")
        rep.say(f"  intersections: [{' '.join(chunks)}]")
        rep.say(f"  finite part: {witness.finite_part}")
        rep.data["witness"] = {
            "intersections": [[str(e) for e in c] for c in witness.intersections],
            "finite_part": str(witness.finite_part),
        }
    return rep.emit(args.json)


def _cmd_approx(args):
    from .approx import approx_family
    from .core import DirectedGraph
    from .symalg import verify_ck_assignment

    g = _load(args.file)
    F = _edge_list(g, args.F)
    ag, assignment = approx_family(g, F)
    rep = _Report("approx", g.name)
    sane = DirectedGraph(
        tuple(docio._sanitize(v) or "empty" for v in ag.graph.vertices),
        tuple(
            (docio._sanitize(lbl), docio._sanitize(s), docio._sanitize(t))
            for lbl, s, t in ag.graph.edges
        ),
    )
    doc = docio.format_document(ultragraph_from_graph(sane, f"{g.name}_GF"))
    for line in doc.splitlines():
        rep.say(line)
    report = verify_ck_assignment(ag.graph, assignment)
    rep.say(f"# family axioms: {len(report.checks)} instances")
    for c in report.failures():
        rep.say(f"# FAIL {c.axiom}: {c.instance} ({c.verdict.value})")
    rep.say("# all hold" if report.ok else "# some axioms failed")
    rep.data.update(
        document=doc,
        axiom_instances=len(report.checks),
        failures=[
            {"axiom": c.axiom, "instance": c.instance, "verdict": c.verdict.value}
            for c in report.failures()
        ],
    )
    if not report.ok:
        rep.fail(1)
    return rep.emit(args.json)


def _cmd_desingularize(args):
    from .desing import desingularize, truncate

    g = _load(args.file)
    dm = desingularize(g)
    t = truncate(dm.result, args.depth) if dm.tails else dm.result
    rep = _Report("desingularize", g.name)
    doc = docio.format_document(t)
    for line in doc.splitlines():
        rep.say(line)
    for tm in dm.tails:
        kind = "infinite emitter" if tm.is_emitter else "sink"
        rep.say(f"# tail {tm.ray} at {tm.vertex} ({kind})")
    rep.say("# truncated presentation; the full desingularization "
            "continues every tail indefinitely")
    rep.data.update(
        document=doc,
        depth=args.depth,
        tails=[
            {"ray": tm.ray, "vertex": str(tm.vertex),
             "kind": "emitter" if tm.is_emitter else "sink"}
            for tm in dm.tails
        ],
    )
    return rep.emit(args.json)


def _cmd_rep(args):
    from .matrep import ck_check, gauge_check, path_space_rep

    g = _load(args.file)
    fam = path_space_rep(g, cap=args.cap)
    rep = _Report("rep", g.name)
    rep.say(f"dimension: {fam.dim}")
    rep.say(f"edges represented: {len(fam.represented)}")
    rep.data.update(dimension=fam.dim, edges=len(fam.represented))
    if args.check:
        report = ck_check(fam)
        gauge = all(gauge_check(fam, k) for k in range(1, 13))
        for d in report.defects:
            rep.say(f"DEFECT: {d}")
        for n in report.notices:
            rep.say(f"note: {n}")
        rep.say(f"axioms: {'pass' if report.ok else 'fail'}")
        rep.say(f"gauge (k <= 12): {'pass' if gauge else 'fail'}")
        rep.data.update(
            axioms_ok=report.ok, gauge_ok=gauge,
            defects=list(report.defects), notices=list(report.notices),
        )
        if not (report.ok and gauge):
            rep.fail(1)
    return rep.emit(args.json)


def _cmd_el_check(args):
    from .symalg import el_check

    g = _load(args.file)
    xs = _edge_list(g, args.X)
    ys = _edge_list(g, args.Y)
    result = el_check(g, xs, ys)
    rep = _Report("el-check", g.name)
    rep.data.update(status=result.status, detail=result.detail)
    rep.say(f"relation at X={args.X or '{}'} Y={args.Y or '{}'}: {result.status}")
    if result.detail:
        rep.say(f"  {result.detail}")
    if result.residual is not None:
        rep.say(f"  residual: {result.residual}")
        rep.data["residual"] = str(result.residual)
    if result.status == "fails":
        rep.fail(1)
    elif result.status == "not-applicable":
        rep.fail(3)
    return rep.emit(args.json)


def _cmd_dot(args):
    g = _load(args.file)
    rep = _Report("dot", g.name)
    dot = docio.format_dot(g)
    for line in dot.splitlines():
        rep.say(line)
    rep.data["dot"] = dot
    return rep.emit(args.json)


def _cmd_print(args):
    g = _load(args.file)
    rep = _Report("print", g.name)
    doc = docio.format_document(g)
    for line in doc.splitlines():
        rep.say(line)
    rep.data["document"] = doc
    return rep.emit(args.json)


# ---------------------------------------------------------------------------
# wiring


def _parser():
    p = argparse.ArgumentParser(
        prog="ugkit",
        description="Exact combinatorics of ultragraphs and their "
        "Cuntz-Krieger relations.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.add_argument("file", help="ultragraph document (.ug) or - for stdin")
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        sp.set_defaults(fn=fn)
        return sp

    cmd("info", _cmd_info, help="census, unitality, condition (L)")
    cmd("edge-matrix", _cmd_edge_matrix, help="the 0/1 edge matrix")
    sp = cmd("from-matrix", _cmd_from_matrix,
             help="ultragraph of a 0/1 matrix (.mat file)")
    sp.add_argument("--name", default="from-matrix")
    cmd("from-graph", _cmd_from_graph, help="ultragraph of a directed graph file")
    cmd("condition-l", _cmd_condition_l, help="decide condition (L)")
    sp = cmd("member", _cmd_member, help="lattice membership of a vertex set")
    sp.add_argument("--set", required=True, help="set expression, e.g. '{ v w }'")
    sp = cmd("approx", _cmd_approx, help="finite approximation graph G_F")
    sp.add_argument("-F", default="", help="comma-separated edge list")
    sp = cmd("desingularize", _cmd_desingularize,
             help="desingularize and truncate the tails")
    sp.add_argument("--depth", type=int, default=3, metavar="N")
    sp = cmd("rep", _cmd_rep, help="path-space matrix family")
    sp.add_argument("--check", action="store_true", help="verify all axioms")
    sp.add_argument("--cap", type=int, default=None,
                    help="index cap for families and tails")
    sp = cmd("el-check", _cmd_el_check, help="summation relation at (X, Y)")
    sp.add_argument("-X", default="", help="comma-separated edges")
    sp.add_argument("-Y", default="", help="comma-separated edges")
    cmd("dot", _cmd_dot, help="DOT export, one arrow per range vertex")
    cmd("print", _cmd_print, help="canonical document form")
    return p


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args)
    except _USAGE as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _CAPABILITY as exc:
        print(f"capability: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except NotInLattice as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UgkitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
