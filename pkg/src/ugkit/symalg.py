"""Exact symbolic algebra on spanning terms.

Elements are rational linear combinations of terms s_alpha p_A s_beta*
(alpha, beta finite paths, A a vertex set), plus a formal unit.  The
generators satisfy the defining relations of a Cuntz-Krieger family:
products reduce by path-prefix comparison, and a normal form groups
terms by (alpha, beta) and atomizes the coefficient sets.  Equality is
decided as a trilean: symbolic reduction proves equality, a faithful
finite-dimensional evaluation (when available) refutes it, and the
remainder is reported as unknown.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .caps import DEFAULT as DEFAULT_CAPS
from .core import (
    INFINITE,
    DirectedGraph,
    Ultragraph,
    VertexId,
    VertexSet,
)
from .errors import (
    NoSinksViolated,
    NotInLattice,
    UniverseMismatch,
)
from .setalg import in_lattice


def _path_range(g: Ultragraph, path):
    if not path:
        return VertexSet.full(g.universe)
    return g.range_of(path[-1])


@dataclass(frozen=True)
class SpanningTerm:
    alpha: tuple
    aset: VertexSet
    beta: tuple

    def adjoint(self):
        return SpanningTerm(self.beta, self.aset, self.alpha)


def make_term(g: Ultragraph, alpha, aset, beta):
    """Canonical term, or None when it is zero: the middle set is cut
    down to r(alpha) and r(beta)."""
    cut = aset & _path_range(g, alpha) & _path_range(g, beta)
    if cut.is_empty():
        return None
    return SpanningTerm(tuple(alpha), cut, tuple(beta))


class AlgebraElement:
    """unit * 1 + sum of coeff * s_alpha p_A s_beta*."""

    __slots__ = ("graph", "unit", "terms")

    def __init__(self, graph, unit=Fraction(0), terms=None):
        self.graph = graph
        self.unit = Fraction(unit)
        self.terms = {}
        if terms:
            for t, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[t] = c

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(graph):
        return AlgebraElement(graph)

    @staticmethod
    def one(graph):
        return AlgebraElement(graph, unit=Fraction(1))

    @staticmethod
    def proj(graph, aset, caps=DEFAULT_CAPS):
        """p_A for an admissible set A."""
        if not in_lattice(graph, aset, caps):
            raise NotInLattice(f"{aset} is not an admissible set")
        return AlgebraElement._proj_raw(graph, aset)

    @staticmethod
    def _proj_raw(graph, aset):
        t = make_term(graph, (), aset, ())
        return AlgebraElement(graph, terms={t: Fraction(1)} if t else None)

    @staticmethod
    def vertex_proj(graph, v: VertexId):
        return AlgebraElement._proj_raw(
            graph, VertexSet.of(graph.universe, [v])
        )

    @staticmethod
    def gen(graph, e):
        """The partial isometry s_e."""
        t = make_term(graph, (e,), VertexSet.full(graph.universe), ())
        return AlgebraElement(graph, terms={t: Fraction(1)})

    @staticmethod
    def term(graph, alpha, aset, beta, coeff=Fraction(1)):
        t = make_term(graph, alpha, aset, beta)
        return AlgebraElement(graph, terms={t: Fraction(coeff)} if t else None)

    # -- ring structure -----------------------------------------------------

    def _check(self, other):
        if self.graph is not other.graph and self.graph != other.graph:
            raise UniverseMismatch("elements over different graphs")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgebraElement(self.graph, unit=other)
        self._check(other)
        terms = dict(self.terms)
        for t, c in other.terms.items():
            terms[t] = terms.get(t, Fraction(0)) + c
        return AlgebraElement(self.graph, self.unit + other.unit, terms)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(
            self.graph, -self.unit, {t: -c for t, c in self.terms.items()}
        )

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgebraElement(self.graph, unit=other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Fraction(c)
        return AlgebraElement(
            self.graph, self.unit * c, {t: k * c for t, k in self.terms.items()}
        )

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        acc = {}
        for t, c in other.terms.items():
            acc[t] = acc.get(t, Fraction(0)) + self.unit * c
        for t, c in self.terms.items():
            acc[t] = acc.get(t, Fraction(0)) + c * other.unit
        out = AlgebraElement(self.graph, self.unit * other.unit, acc)
        acc = {}
        for (t1, c1), (t2, c2) in itertools.product(
            self.terms.items(), other.terms.items()
        ):
            prod = _term_mul(self.graph, t1, t2)
            if prod is None:
                continue
            acc[prod] = acc.get(prod, Fraction(0)) + c1 * c2
        extra = AlgebraElement(self.graph, Fraction(0), acc)
        return out + extra

    def adjoint(self):
        return AlgebraElement(
            self.graph, self.unit, {t.adjoint(): c for t, c in self.terms.items()}
        )

    def is_zero(self):
        return not self.unit and not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.graph == other.graph
            and self.unit == other.unit
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.unit, frozenset(self.terms.items())))

    def substitute_unit(self, aset):
        """Replace the formal unit by p over ``aset`` (the full vertex
        set, when that set is admissible)."""
        if not self.unit:
            return self
        return AlgebraElement(self.graph, Fraction(0), self.terms) + (
            AlgebraElement._proj_raw(self.graph, aset).scale(self.unit)
        )

    def __str__(self):
        bits = []
        if self.unit:
            bits.append(f"{self.unit}*1")
        for t, c in sorted(
            self.terms.items(), key=lambda item: (item[0].alpha, item[0].beta)
        ):
            a = "".join(f"s[{e}]" for e in t.alpha)
            b = "".join(f"s[{e}]*" for e in reversed(t.beta))
            bits.append(f"{c}*{a}p[{t.aset}]{b}")
        return " + ".join(bits) if bits else "0"

    __repr__ = __str__


def _term_mul(g, t1: SpanningTerm, t2: SpanningTerm):
    """(s_a p_A s_b*)(s_c p_B s_d*) reduced to a single term or None."""
    b, c = t1.beta, t2.alpha
    if b == c:
        return make_term(g, t1.alpha, t1.aset & t2.aset, t2.beta)
    if len(c) > len(b) and c[: len(b)] == b:
        rest = c[len(b):]
        if not t1.aset.contains(g.source(rest[0])):
            return None
        return make_term(g, t1.alpha + rest, t2.aset, t2.beta)
    if len(b) > len(c) and b[: len(c)] == c:
        rest = b[len(c):]
        if not t2.aset.contains(g.source(rest[0])):
            return None
        return make_term(g, t1.alpha, t1.aset, t2.beta + rest)
    return None


# ---------------------------------------------------------------------------
# normal form


def _atomize(pieces):
    """Partition refinement: pieces is a list of (VertexSet, coeff);
    returns the atoms of the generated boolean ring with summed
    coefficients."""
    atoms = []    # (set, coeff) with pairwise-disjoint sets
    for aset, coeff in pieces:
        fresh = []
        rest = aset
        for part, pc in atoms:
            inter = part & aset
            if not inter.is_empty():
                fresh.append((inter, pc + coeff))
                outside = part - aset
                if not outside.is_empty():
                    fresh.append((outside, pc))
            else:
                fresh.append((part, pc))
            rest = rest - part
        if not rest.is_empty():
            fresh.append((rest, coeff))
        atoms = fresh
    return atoms


def _reassemble(g, element: AlgebraElement) -> AlgebraElement:
    """Group by (alpha, beta); per group, atomize the middle sets and
    emit one term per distinct nonzero coefficient (over the union of
    its atoms)."""
    groups = {}
    for t, c in element.terms.items():
        groups.setdefault((t.alpha, t.beta), []).append((t.aset, c))
    out = {}
    for (alpha, beta), pieces in groups.items():
        by_coeff = {}
        for aset, coeff in _atomize(pieces):
            if coeff:
                key = coeff
                by_coeff[key] = (
                    by_coeff[key] | aset if key in by_coeff else aset
                )
        for coeff, aset in by_coeff.items():
            t = make_term(g, alpha, aset, beta)
            if t is not None:
                out[t] = out.get(t, Fraction(0)) + coeff
    return AlgebraElement(g, element.unit, out)


def _collapse_once(g, element: AlgebraElement):
    """Rewrite sum over all e emitted by a regular v of
    c*s_(alpha e) p_r(e) s_(beta e)* into c*s_alpha p_v s_beta*.
    Returns a rewritten element or None if nothing fires."""
    index = {}
    for t, c in element.terms.items():
        index[(t.alpha, t.beta)] = index.get((t.alpha, t.beta), [])
        index[(t.alpha, t.beta)].append((t, c))
    seen = set()
    for t in element.terms:
        if not t.alpha or not t.beta or t.alpha[-1] != t.beta[-1]:
            continue
        e0 = t.alpha[-1]
        v = g.source(e0)
        base = (t.alpha[:-1], t.beta[:-1])
        if (base, v) in seen:
            continue
        seen.add((base, v))
        if not g.is_regular(v):
            continue
        matched = []
        coeffs = set()
        complete = True
        for e in g.emissions(v):
            want = make_term(g, base[0] + (e,), g.range_of(e), base[1] + (e,))
            hit = None
            for cand, c in index.get((want.alpha, want.beta), ()):
                if cand == want:
                    hit = (cand, c)
                    break
            if hit is None:
                complete = False
                break
            matched.append(hit)
            coeffs.add(hit[1])
        if not complete or len(coeffs) != 1:
            continue
        (coeff,) = coeffs
        terms = dict(element.terms)
        for cand, _ in matched:
            del terms[cand]
        vt = make_term(g, base[0], VertexSet.of(g.universe, [v]), base[1])
        if vt is not None:
            terms[vt] = terms.get(vt, Fraction(0)) + coeff
        return AlgebraElement(g, element.unit, terms)
    return None


def _expand_once(g, element: AlgebraElement):
    """Split every regular vertex out of every finite middle set:
    s_alpha p_A s_beta* becomes s_alpha p_(A minus regulars) s_beta* +
    sum over v regular in A, e from v of s_(alpha e) p_r(e) s_(beta e)*.
    Returns a rewritten element or None if nothing fires."""
    out = {}
    fired = False
    for t, c in element.terms.items():
        regs = []
        if t.aset.is_finite():
            regs = [v for v in t.aset.vertices() if g.is_regular(v)]
        if not regs:
            out[t] = out.get(t, Fraction(0)) + c
            continue
        fired = True
        keep = t.aset - VertexSet.of(g.universe, regs)
        kt = make_term(g, t.alpha, keep, t.beta)
        if kt is not None:
            out[kt] = out.get(kt, Fraction(0)) + c
        for v in regs:
            for e in g.emissions(v):
                nt = make_term(g, t.alpha + (e,), g.range_of(e), t.beta + (e,))
                if nt is not None:
                    out[nt] = out.get(nt, Fraction(0)) + c
    if not fired:
        return None
    return AlgebraElement(g, element.unit, out)


def normalize(element: AlgebraElement, depth=0, caps=DEFAULT_CAPS):
    """Reassemble and collapse to a fixpoint; with depth > 0, interleave
    up to ``depth`` rounds of vertex expansion."""
    g = element.graph
    cur = _reassemble(g, element)
    rounds = 0
    expansions = 0
    while rounds < caps.normalize_rounds:
        rounds += 1
        nxt = _collapse_once(g, cur)
        if nxt is not None:
            cur = _reassemble(g, nxt)
            continue
        if expansions < depth:
            nxt = _expand_once(g, cur)
            expansions += 1
            if nxt is not None:
                cur = _reassemble(g, nxt)
                continue
        return cur
    return cur


# ---------------------------------------------------------------------------
# trilean equality


class Trilean(enum.Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not-equal"
    UNKNOWN = "unknown"

    def __bool__(self):
        return self is Trilean.EQUAL


def equals(a: AlgebraElement, b: AlgebraElement, depth=2, caps=DEFAULT_CAPS):
    """Trilean equality of two elements over the same graph."""
    from .setalg import is_unital

    a._check(b)
    g = a.graph
    d = a - b
    if d.is_zero():
        return Trilean.EQUAL
    if d.unit and is_unital(g, caps):
        d = d.substitute_unit(VertexSet.full(g.universe))
    d = normalize(d, depth=depth, caps=caps)
    if d.is_zero():
        return Trilean.EQUAL
    if d.unit:
        # no finite combination of spanning terms can supply a unit here
        return Trilean.NOT_EQUAL
    if g.edge_set_finite and g.universe.is_finite():
        from .core import find_loop
        from .matrep import evaluate, path_space_rep

        if find_loop(g) is None:
            fam = path_space_rep(g)
            if not evaluate(fam, d).is_zero():
                return Trilean.NOT_EQUAL
    return Trilean.UNKNOWN


# ---------------------------------------------------------------------------
# Exel-Laca relations


@dataclass(frozen=True)
class EdgeSetInfo:
    """The set of edges whose source lies in a given vertex set."""

    finite: bool
    edges: tuple = ()        # populated only when finite

    def __len__(self):
        if not self.finite:
            raise ValueError("infinite edge set")
        return len(self.edges)


def edges_from(g: Ultragraph, vset: VertexSet) -> EdgeSetInfo:
    from .core import family_edge, tail_edge

    for fam in g.families:
        if vset.contains(fam.source):
            return EdgeSetInfo(False)
    out = [e for e, src, _ in g.edges if vset.contains(src)]
    for tail in g.tails:
        kind, idx = vset._part(tail.ray)
        if kind == "cofin":
            return EdgeSetInfo(False)
        starts = sorted(idx)
        if vset.contains(tail.base):
            starts = [0] + starts
        for i in starts:
            out.append(tail_edge(tail.ray, "e", i + 1))
            if tail.has_f_edges:
                out.append(tail_edge(tail.ray, "f", i + 1))
    return EdgeSetInfo(True, tuple(out))


def el_vertex_set(g: Ultragraph, xs, ys) -> VertexSet:
    """V(X, Y): sources selected by all ranges in X and no range in Y."""
    v = VertexSet.full(g.universe)
    for x in xs:
        v = v & g.range_of(x)
    for y in ys:
        v = v - g.range_of(y)
    return v


def support_AXY(g: Ultragraph, xs, ys) -> EdgeSetInfo:
    """Edges j with A(x, j) = 1 for all x in X and A(y, j) = 0 for all
    y in Y (A the edge matrix relation, taken without enumerating it)."""
    return edges_from(g, el_vertex_set(g, xs, ys))


@dataclass(frozen=True)
class ELReport:
    status: str               # "holds" | "fails" | "not-applicable"
    detail: str = ""
    residual: AlgebraElement | None = None

    def __bool__(self):
        return self.status == "holds"


def el_check(g: Ultragraph, xs, ys, depth=2, caps=DEFAULT_CAPS) -> ELReport:
    """Check the summation relation at (X, Y): the product of p over the
    X-ranges and (1 - p) over the Y-ranges equals the sum of s_j s_j*
    over the selected edges.  Requires no sinks; a relation with an
    infinite selected edge set is reported as not applicable.  A unit
    surviving the expansion over a nonunital graph asserts unitality,
    which fails."""
    if not g.sinks().is_empty():
        raise NoSinksViolated("the relation requires a sink-free ultragraph")
    xs, ys = tuple(xs), tuple(ys)
    support = support_AXY(g, xs, ys)
    if not support.finite:
        return ELReport("not-applicable", "infinitely many selected edges")
    lhs = AlgebraElement.one(g)
    for x in xs:
        lhs = lhs * AlgebraElement._proj_raw(g, g.range_of(x))
    for y in ys:
        lhs = lhs * (
            AlgebraElement.one(g) - AlgebraElement._proj_raw(g, g.range_of(y))
        )
    rhs = AlgebraElement.zero(g)
    for e in support.edges:
        se = AlgebraElement.gen(g, e)
        rhs = rhs + se * se.adjoint()
    verdict = equals(lhs, rhs, depth=depth, caps=caps)
    if verdict is Trilean.EQUAL:
        return ELReport("holds")
    residual = normalize(lhs - rhs, depth=depth, caps=caps)
    detail = (
        "relation asserts a unit over a nonunital graph"
        if residual.unit
        else "residual is nonzero"
        if verdict is Trilean.NOT_EQUAL
        else "residual could not be reduced to zero"
    )
    return ELReport("fails", detail, residual)


# ---------------------------------------------------------------------------
# verifying an abstract family assignment


@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    instance: str
    verdict: Trilean


@dataclass(frozen=True)
class FamilyReport:
    checks: tuple

    @property
    def ok(self):
        return all(c.verdict is Trilean.EQUAL for c in self.checks)

    def failures(self):
        return tuple(c for c in self.checks if c.verdict is not Trilean.EQUAL)


def _target_shape(target):
    """(vertices, edges as (label, source, range-vertices), regulars)."""
    if isinstance(target, DirectedGraph):
        edges = [(lbl, s, (t,)) for lbl, s, t in target.edges]
        regs = [
            v for v in target.vertices if 0 < len(target.out_edges(v)) < INFINITE
        ]
        return tuple(target.vertices), tuple(edges), tuple(regs)
    g = target
    verts = g.universe.vertices()
    edges = []
    for e in g.all_edges():
        edges.append((e, g.source(e), g.range_of(e).vertices()))
    regs = [v for v in verts if g.is_regular(v)]
    return tuple(verts), tuple(edges), tuple(regs)


def verify_ck_assignment(target, assignment, depth=2, caps=DEFAULT_CAPS):
    """Check that ``assignment`` (keys: edge labels for partial
    isometries, ("p", vertex) for projections) satisfies the defining
    family axioms of ``target`` inside the symbolic algebra the values
    live in.  The target must be finite."""
    vertices, edges, regulars = _target_shape(target)
    checks = []

    def P(v):
        return assignment[("p", v)]

    def note(axiom, instance, verdict):
        checks.append(AxiomCheck(axiom, instance, verdict))

    for v in vertices:
        note("projection", f"p[{v}]^2 = p[{v}]", equals(P(v) * P(v), P(v), depth, caps))
        note(
            "projection",
            f"p[{v}]* = p[{v}]",
            equals(P(v).adjoint(), P(v), depth, caps),
        )
    for v, w in itertools.combinations(vertices, 2):
        zero = AlgebraElement.zero(P(v).graph)
        note("projection", f"p[{v}]p[{w}] = 0", equals(P(v) * P(w), zero, depth, caps))
    for lbl, src, rng in edges:
        s = assignment[lbl]
        pr = None
        for w in rng:
            pr = P(w) if pr is None else pr + P(w)
        note(
            "isometry-range",
            f"s[{lbl}]*s[{lbl}] = p[range]",
            equals(s.adjoint() * s, pr, depth, caps),
        )
        note(
            "source-domination",
            f"p[{src}]s[{lbl}]s[{lbl}]* = s[{lbl}]s[{lbl}]*",
            equals(P(src) * s * s.adjoint(), s * s.adjoint(), depth, caps),
        )
    for (l1, _, _), (l2, _, _) in itertools.combinations(edges, 2):
        s1, s2 = assignment[l1], assignment[l2]
        zero = AlgebraElement.zero(s1.graph)
        note(
            "orthogonality",
            f"s[{l1}]*s[{l2}] = 0",
            equals(s1.adjoint() * s2, zero, depth, caps),
        )
    for v in regulars:
        total = None
        for lbl, src, _ in edges:
            if src == v:
                s = assignment[lbl]
                total = s * s.adjoint() if total is None else total + s * s.adjoint()
        note(
            "vertex-sum",
            f"p[{v}] = sum of s s* over source {v}",
            equals(P(v), total, depth, caps),
        )
    return FamilyReport(tuple(checks))
