"""Exact finite-dimensional representations.

A Cuntz-Krieger family is realized by sparse matrices over the
rationals.  For a finite loop-free ultragraph the path space (paths
ending at a sink) carries a family in which every generator is a
partial permutation, so all the derived projections are diagonal.  The
gauge action is checked exactly with root-of-unity monomials.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    Ultragraph,
    VertexId,
    VertexSet,
    enumerate_paths,
    find_loop,
)
from .errors import HasLoop, MissingGenerator, Unbounded


# ---------------------------------------------------------------------------
# sparse rational matrices


class RatMat:
    __slots__ = ("n", "data")

    def __init__(self, n, data=None):
        self.n = n
        self.data = {}
        if data:
            for key, val in data.items():
                val = Fraction(val)
                if val:
                    self.data[key] = val

    @staticmethod
    def zeros(n):
        return RatMat(n)

    @staticmethod
    def identity(n):
        return RatMat(n, {(i, i): Fraction(1) for i in range(n)})

    @staticmethod
    def diag(n, indices):
        return RatMat(n, {(i, i): Fraction(1) for i in indices})

    def _check(self, other):
        if self.n != other.n:
            raise ValueError("dimension mismatch")

    def __add__(self, other):
        self._check(other)
        data = dict(self.data)
        for key, val in other.data.items():
            data[key] = data.get(key, Fraction(0)) + val
        return RatMat(self.n, data)

    def __sub__(self, other):
        self._check(other)
        data = dict(self.data)
        for key, val in other.data.items():
            data[key] = data.get(key, Fraction(0)) - val
        return RatMat(self.n, data)

    def __neg__(self):
        return RatMat(self.n, {k: -v for k, v in self.data.items()})

    def scale(self, c):
        c = Fraction(c)
        return RatMat(self.n, {k: v * c for k, v in self.data.items()})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        by_row = {}
        for (i, j), val in other.data.items():
            by_row.setdefault(i, []).append((j, val))
        data = {}
        for (i, k), a in self.data.items():
            for j, b in by_row.get(k, ()):
                key = (i, j)
                data[key] = data.get(key, Fraction(0)) + a * b
        return RatMat(self.n, data)

    def adjoint(self):
        return RatMat(self.n, {(j, i): v for (i, j), v in self.data.items()})

    def is_zero(self):
        return not self.data

    def rank_support(self):
        """Indices i with a nonzero diagonal entry (for diagonal use)."""
        return frozenset(i for (i, j) in self.data if i == j)

    def __eq__(self, other):
        return (
            isinstance(other, RatMat) and self.n == other.n
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.data.items())))

    def __repr__(self):
        return f"RatMat({self.n}, {self.data})"


# ---------------------------------------------------------------------------
# matrix families


@dataclass
class MatrixCKFamily:
    """A concrete family: one matrix per represented edge and diagonal
    vertex projections read off the start vertex of each basis slot.

    ``basis`` entries are (path, sink) pairs; ``start`` gives each
    slot's vertex.  The family may be partial (infinite graphs cut at an
    index cap): ``represented`` lists the edges carrying matrices.
    """

    graph: Ultragraph
    basis: tuple
    start: tuple
    S: dict

    @property
    def dim(self):
        return len(self.basis)

    @property
    def represented(self):
        return tuple(self.S)

    def s(self, e):
        if e not in self.S:
            raise MissingGenerator(f"no matrix for edge {e}")
        return self.S[e]

    def P(self, vset: VertexSet) -> RatMat:
        return RatMat.diag(
            self.dim, (i for i, v in enumerate(self.start) if vset.contains(v))
        )

    def p_vertex(self, v: VertexId) -> RatMat:
        return RatMat.diag(
            self.dim, (i for i, w in enumerate(self.start) if w == v)
        )

    def path_matrix(self, path):
        out = RatMat.identity(self.dim)
        for e in path:
            out = out * self.s(e)
        return out


def path_space_rep(g: Ultragraph, cap=None) -> MatrixCKFamily:
    """The family on paths that end at a sink.

    Basis: (empty path, sink w) for every sink, then (alpha, w) for each
    path alpha with w a sink in its range, ordered by length and
    declaration order.  Requires a loop-free adjacency (HasLoop
    otherwise); families and tails need an index ``cap``.
    """
    loop = find_loop(g) if g.edge_set_finite else None
    if loop is not None:
        raise HasLoop(loop)
    sinks = g.sinks()
    if not sinks.is_finite():
        raise Unbounded("infinitely many sinks")
    sink_list = sinks.vertices()
    basis = [((), w) for w in sink_list]
    edge_count = len(g.all_edges(cap=cap))
    for path in enumerate_paths(g, max_len=edge_count, cap=cap):
        rng = g.range_of(path[-1]) & sinks
        for w in rng.vertices():
            basis.append((tuple(path), w))
    index = {b: i for i, b in enumerate(basis)}
    start = tuple(
        g.source(alpha[0]) if alpha else w for alpha, w in basis
    )
    n = len(basis)
    S = {}
    for e in g.all_edges(cap=cap):
        rng = g.range_of(e)
        data = {}
        for j, (alpha, w) in enumerate(basis):
            head = g.source(alpha[0]) if alpha else w
            if rng.contains(head):
                data[(index[((e,) + alpha, w)], j)] = Fraction(1)
        S[e] = RatMat(n, data)
    return MatrixCKFamily(g, tuple(basis), start, S)


# ---------------------------------------------------------------------------
# axiom checking


@dataclass(frozen=True)
class CKReport:
    ok: bool
    defects: tuple = ()
    notices: tuple = ()


def ck_check(fam: MatrixCKFamily, check_nonvanishing=True) -> CKReport:
    """Check every family axiom a partial matrix family can express.

    Vertex sums are checked only at regular vertices whose every
    emission carries a matrix; the rest are reported as notices.
    """
    g = fam.graph
    defects = []
    notices = []
    edges = fam.represented
    for e in edges:
        s = fam.s(e)
        if s.adjoint() * s != fam.P(g.range_of(e)):
            defects.append(f"s[{e}]*s[{e}] != p[range({e})]")
        ss = s * s.adjoint()
        if fam.p_vertex(g.source(e)) * ss != ss:
            defects.append(f"s[{e}]s[{e}]* not dominated by p[{g.source(e)}]")
    for e, f in itertools.combinations(edges, 2):
        if not (fam.s(e).adjoint() * fam.s(f)).is_zero():
            defects.append(f"s[{e}]*s[{f}] != 0")
    checked = set()
    for e in edges:
        v = g.source(e)
        if v in checked:
            continue
        checked.add(v)
        if not g.is_regular(v):
            continue
        emitted = g.emissions(v)
        if any(f not in fam.S for f in emitted):
            notices.append(f"vertex sum at {v} skipped: missing emissions")
            continue
        total = RatMat.zeros(fam.dim)
        for f in emitted:
            total = total + fam.s(f) * fam.s(f).adjoint()
        if total != fam.p_vertex(v):
            defects.append(f"p[{v}] != sum of s s* over its emissions")
    if check_nonvanishing:
        present = set(fam.start)
        if g.universe.is_finite():
            for v in g.universe.vertices():
                if v not in present:
                    defects.append(f"p[{v}] = 0")
    return CKReport(not defects, tuple(defects), tuple(notices))


# ---------------------------------------------------------------------------
# evaluation of symbolic elements


def evaluate(fam: MatrixCKFamily, element) -> RatMat:
    """The image of a symbolic element; the formal unit maps to the
    identity on the representation space."""
    out = RatMat.zeros(fam.dim)
    if element.unit:
        out = out + RatMat.identity(fam.dim).scale(element.unit)
    for t, c in element.terms.items():
        m = (
            fam.path_matrix(t.alpha)
            * fam.P(t.aset)
            * fam.path_matrix(t.beta).adjoint()
        )
        out = out + m.scale(c)
    return out


# ---------------------------------------------------------------------------
# gauge action with exact root-of-unity scalars


class CycScalar:
    """Sum of rational multiples of powers of a primitive k-th root of
    unity z, reduced by z^(k/2) = -1 when k is even (exponents then live
    in [0, k/2)); equality is structural on the reduced form."""

    __slots__ = ("k", "coeffs")

    def __init__(self, k, coeffs=None):
        self.k = k
        self.coeffs = {}
        if coeffs:
            for exp, c in coeffs.items():
                self._accumulate(exp, Fraction(c))
        self.coeffs = {e: c for e, c in self.coeffs.items() if c}

    def _accumulate(self, exp, c):
        exp %= self.k
        if self.k % 2 == 0 and exp >= self.k // 2:
            exp -= self.k // 2
            c = -c
        self.coeffs[exp] = self.coeffs.get(exp, Fraction(0)) + c

    @staticmethod
    def of(k, coeff, exp=0):
        return CycScalar(k, {exp: coeff})

    def __add__(self, other):
        coeffs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            coeffs[e] = coeffs.get(e, Fraction(0)) + c
        return CycScalar(self.k, coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycScalar(self.k, {e: c * other for e, c in self.coeffs.items()})
        coeffs = {}
        for (e1, c1), (e2, c2) in itertools.product(
            self.coeffs.items(), other.coeffs.items()
        ):
            coeffs[(e1 + e2)] = coeffs.get(e1 + e2, Fraction(0)) + c1 * c2
        return CycScalar(self.k, coeffs)

    __rmul__ = __mul__

    def conj(self):
        return CycScalar(self.k, {-e: c for e, c in self.coeffs.items()})

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, CycScalar)
            and self.k == other.k
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.k, frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"CycScalar({self.k}, {self.coeffs})"


class CycMat:
    """Sparse matrix over CycScalar."""

    __slots__ = ("n", "k", "data")

    def __init__(self, n, k, data=None):
        self.n = n
        self.k = k
        self.data = {}
        if data:
            for key, val in data.items():
                if not val.is_zero():
                    self.data[key] = val

    @staticmethod
    def from_rat(m: RatMat, k):
        return CycMat(
            m.n, k, {key: CycScalar.of(k, v) for key, v in m.data.items()}
        )

    def scale(self, s: CycScalar):
        return CycMat(self.n, self.k, {key: v * s for key, v in self.data.items()})

    def __mul__(self, other):
        by_row = {}
        for (i, j), val in other.data.items():
            by_row.setdefault(i, []).append((j, val))
        data = {}
        for (i, kk), a in self.data.items():
            for j, b in by_row.get(kk, ()):
                key = (i, j)
                cur = data.get(key)
                data[key] = a * b if cur is None else cur + a * b
        return CycMat(self.n, self.k, data)

    def adjoint(self):
        return CycMat(
            self.n, self.k, {(j, i): v.conj() for (i, j), v in self.data.items()}
        )

    def __eq__(self, other):
        return (
            isinstance(other, CycMat)
            and (self.n, self.k) == (other.n, other.k)
            and self.data == other.data
        )


def path_length_of_slot(fam: MatrixCKFamily, i):
    alpha, _ = fam.basis[i]
    return len(alpha)


def gauge_unitary(fam: MatrixCKFamily, k) -> CycMat:
    """Diagonal unitary acting by z^(path length) on each basis slot, z
    a primitive k-th root of unity."""
    data = {
        (i, i): CycScalar.of(k, 1, path_length_of_slot(fam, i))
        for i in range(fam.dim)
    }
    return CycMat(fam.dim, k, data)


def gauge_check(fam: MatrixCKFamily, k) -> bool:
    """U s[e] U* = z s[e] for every represented edge, and U P(v) U* =
    P(v) for every vertex projection, exactly."""
    u = gauge_unitary(fam, k)
    z = CycScalar.of(k, 1, 1)
    for e in fam.represented:
        m = CycMat.from_rat(fam.s(e), k)
        if u * m * u.adjoint() != m.scale(z):
            return False
    full = CycMat.from_rat(fam.P(VertexSet.full(fam.graph.universe)), k)
    return u * full * u.adjoint() == full
