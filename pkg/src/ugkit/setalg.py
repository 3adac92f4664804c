"""The lattice of admissible vertex sets.

The admissible sets are the smallest family containing the singletons
and the edge ranges that is closed under finite unions and
intersections.  Every member has a normal form: a finite union of
finite intersections of ranges, plus a finite set of vertices.
Membership is decided exactly, including over infinite rays.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .caps import DEFAULT as DEFAULT_CAPS
from .core import Ultragraph, VertexSet
from .errors import TooLarge, TooManyRanges, UniverseMismatch


def set_union(a: VertexSet, b: VertexSet) -> VertexSet:
    return a | b


def set_intersect(a: VertexSet, b: VertexSet) -> VertexSet:
    return a & b


def set_complement(a: VertexSet) -> VertexSet:
    return a.complement()


def set_difference(a: VertexSet, b: VertexSet) -> VertexSet:
    return a - b


@dataclass(frozen=True)
class LatticeWitness:
    """A normal form: union over k of the intersection of the ranges of
    the edges in ``intersections[k]``, together with ``finite_part``
    (disjoint from the union)."""

    intersections: tuple      # tuple of tuples of EdgeId
    finite_part: VertexSet

    def evaluate(self, g: Ultragraph) -> VertexSet:
        acc = self.finite_part
        for chunk in self.intersections:
            cur = g.range_of(chunk[0])
            for e in chunk[1:]:
                cur = cur & g.range_of(e)
            acc = acc | cur
        return acc


@functools.lru_cache(maxsize=512)
def _range_semilattice(g: Ultragraph, caps):
    """All distinct intersections of edge ranges, each with one witness
    edge tuple, capped for predictability."""
    base = []
    for e in _witness_edges(g):
        rng = g.range_of(e)
        found = False
        for val, _ in base:
            if val == rng:
                found = True
                break
        if not found:
            base.append((rng, (e,)))
    if len(base) > caps.lattice_ranges:
        raise TooManyRanges(
            f"{len(base)} distinct ranges exceeds cap {caps.lattice_ranges}"
        )
    closure = list(base)
    frontier = list(base)
    limit = 2 ** caps.lattice_ranges
    while frontier:
        fresh = []
        for val, wit in frontier:
            for bval, bwit in base:
                cand = val & bval
                if cand.is_empty():
                    continue
                if any(cand == v for v, _ in closure):
                    continue
                entry = (cand, tuple(sorted(set(wit + bwit))))
                closure.append(entry)
                fresh.append(entry)
                if len(closure) > limit:
                    raise TooManyRanges("intersection closure blew past its cap")
        frontier = fresh
    return closure


def _witness_edges(g: Ultragraph):
    """One representative edge per distinct range (tail e-edges are
    skipped; their singleton ranges are absorbable into the finite part)."""
    from .core import family_edge, tail_edge

    out = []
    seen = []

    def note(e, rng):
        if rng not in seen:
            seen.append(rng)
            out.append(e)

    for eid, _, rng in g.edges:
        note(eid, rng)
    for fam in g.families:
        for j in range(1, len(fam.prefix) + len(fam.cycle) + 1):
            note(family_edge(fam.fam_id, j), fam.range_of(j))
    for tail in g.tails:
        if tail.has_f_edges:
            for j in range(1, len(tail.f_prefix) + len(tail.f_cycle) + 1):
                note(tail_edge(tail.ray, "f", j), tail.f_range(j))
    return tuple(out)


def lattice_member(g: Ultragraph, s: VertexSet, caps=DEFAULT_CAPS):
    """A LatticeWitness for ``s`` if it is admissible, else None.

    ``s`` is admissible iff it is covered, up to a finite remainder, by
    the union of range-intersections it contains.
    """
    if s.universe != g.universe:
        raise UniverseMismatch("set lives over a different universe")
    if s.is_empty():
        return LatticeWitness((), VertexSet.empty(g.universe))
    closure = _range_semilattice(g, caps)
    inside = [(val, wit) for val, wit in closure if val.issubset(s)]
    covered = VertexSet.empty(g.universe)
    for val, _ in inside:
        covered = covered | val
    rest = s - covered
    if not rest.is_finite():
        return None
    # keep only inclusion-maximal terms
    kept = []
    for i, (val, wit) in enumerate(inside):
        if any(
            val.issubset(other) and (other != val or j < i)
            for j, (other, _) in enumerate(inside)
            if j != i
        ):
            continue
        kept.append((val, wit))
    return LatticeWitness(tuple(wit for _, wit in kept), rest)


def in_lattice(g: Ultragraph, s: VertexSet, caps=DEFAULT_CAPS) -> bool:
    return lattice_member(g, s, caps) is not None


@functools.lru_cache(maxsize=2048)
def is_unital(g: Ultragraph, caps=DEFAULT_CAPS) -> bool:
    """Whether the whole vertex set is itself admissible."""
    return in_lattice(g, VertexSet.full(g.universe), caps)


def normalize_witness(g: Ultragraph, w: LatticeWitness) -> LatticeWitness:
    """Drop redundant intersection terms and re-disjoint the finite part."""
    union = VertexSet.empty(g.universe)
    kept = []
    vals = []
    for chunk in w.intersections:
        cur = g.range_of(chunk[0])
        for e in chunk[1:]:
            cur = cur & g.range_of(e)
        vals.append((cur, chunk))
    for i, (val, chunk) in enumerate(vals):
        if any(
            val.issubset(other) and (other != val or j < i)
            for j, (other, _) in enumerate(vals)
            if j != i
        ):
            continue
        kept.append(chunk)
        union = union | val
    return LatticeWitness(tuple(kept), w.finite_part - union)


def lattice_closure_bruteforce(g: Ultragraph, caps=DEFAULT_CAPS):
    """Oracle: the full admissible family, as a frozenset of VertexSet.

    Only for small finite universes: starts from singletons and ranges
    and closes under union and intersection to a fixpoint.
    """
    if not g.universe.is_finite():
        raise TooLarge("brute-force closure needs a finite universe")
    verts = g.universe.vertices()
    if len(verts) > caps.closure_vertices:
        raise TooLarge(
            f"{len(verts)} vertices exceeds closure cap {caps.closure_vertices}"
        )
    family = {VertexSet.of(g.universe, [v]) for v in verts}
    family.update(g.distinct_ranges())
    family.add(VertexSet.empty(g.universe))    # p_empty = 0 convention
    while True:
        fresh = set()
        items = tuple(family)
        for a, b in itertools.combinations_with_replacement(items, 2):
            for c in (a | b, a & b):
                if c not in family:
                    fresh.add(c)
        if not fresh:
            return frozenset(family)
        family.update(fresh)
