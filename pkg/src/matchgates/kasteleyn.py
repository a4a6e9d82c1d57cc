"""Pfaffian (Kasteleyn) orientations of plane graphs and the sign function delta.

Inner face walks run counterclockwise, so a dart runs clockwise around an
inner face exactly when its reverse appears in the face walk.  Both the
constructor and the verifier count clockwise edges through
:func:`clockwise_count`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .numeric import GaussianRational
from .pfaffian import PfaffianMinors, SkewMatrix, overlap_sign
from .planegraph import Dart, Edge, EmbeddingError, PlaneGraph, edge_key, index_to_bits
from .signature import SignatureVector, check_mgi, iter_perfect_matchings

__all__ = [
    "OrientedPlaneGraph",
    "clockwise_count",
    "kasteleyn_orient",
    "verify_kasteleyn",
    "skew_of",
    "pfaffian_signature",
    "delta",
    "delta_table",
    "QuadrupleViolation",
    "quadruple_product_violation",
    "check_quadruple_product",
    "check_pfaffian_signature_identities",
]


class OrientedPlaneGraph:
    """A plane graph with each edge directed along one of its darts."""

    __slots__ = ("base", "direction")

    def __init__(self, base: PlaneGraph, direction: Mapping[Edge, Dart]):
        direction = {edge_key(*e): tuple(d) for e, d in direction.items()}
        for e in base.edges:
            d = direction.get(e)
            if d is None:
                raise EmbeddingError(f"edge {e} has no direction")
            if edge_key(*d) != e:
                raise EmbeddingError(f"direction {d} does not lie on edge {e}")
        if set(direction) != set(base.edges):
            raise EmbeddingError("directions given for non-edges")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "direction", direction)

    def __setattr__(self, name, value):
        raise AttributeError("OrientedPlaneGraph is immutable")

    @property
    def arity(self) -> int:
        return self.base.arity

    def arcs(self) -> list[tuple[int, int, GaussianRational]]:
        return [(u, v, self.base.edges[e]) for e, (u, v) in sorted(self.direction.items())]

    def is_forward(self, u: int, v: int) -> bool:
        return self.direction[edge_key(u, v)] == (u, v)

    def restricted(self, g: PlaneGraph) -> "OrientedPlaneGraph":
        """Induced orientation on a subgraph of the base graph."""
        return OrientedPlaneGraph(g, {e: self.direction[e] for e in g.edges})

    def __repr__(self):
        return f"OrientedPlaneGraph({self.base!r})"


def clockwise_count(walk, direction: Mapping[Edge, Dart]) -> int:
    """Edges of an (inner) face walk oriented clockwise around the face."""
    return sum(1 for u, v in walk if direction[edge_key(u, v)] == (v, u))


def verify_kasteleyn(h: OrientedPlaneGraph) -> bool:
    return all(
        clockwise_count(f.darts, h.direction) % 2 == 1 for f in h.base.faces() if not f.outer
    )


def kasteleyn_orient(g: PlaneGraph) -> OrientedPlaneGraph:
    """Pfaffian orientation of a connected plane graph.

    Tree edges of a BFS spanning tree point from low to high label (so every
    bridge does); the remaining edges form a spanning tree of the dual,
    rooted at the outer face, and are fixed leaf-first so each inner face
    gets an odd clockwise count.
    """
    if not g.is_connected():
        raise ValueError("kasteleyn_orient needs a connected graph; preprocess it first")
    direction: dict[Edge, Dart] = {}
    if g.nodes:
        root = g.nodes[0]
        seen = {root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in sorted(g.rotation[u]):
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
                    direction[edge_key(u, v)] = edge_key(u, v)

    walks = [f.darts for f in g.faces()]
    outer = g.face_index(g.outer[0]) if g.outer else None
    parent_edge: dict[int, Edge] = {}
    order = []
    if outer is not None:
        seen_f = {outer}
        queue = deque([outer])
        while queue:
            f = queue.popleft()
            order.append(f)
            for u, v in walks[f]:
                e = edge_key(u, v)
                if e in direction:
                    continue
                other = g.face_index((v, u))
                if other not in seen_f:
                    seen_f.add(other)
                    parent_edge[other] = e
                    queue.append(other)
    for f in reversed(order[1:]):
        e = parent_edge[f]
        dart = next(d for d in walks[f] if edge_key(*d) == e)
        direction[e] = dart
        if clockwise_count(walks[f], direction) % 2 == 0:
            direction[e] = (dart[1], dart[0])
    return OrientedPlaneGraph(g, direction)


def skew_of(h: OrientedPlaneGraph) -> SkewMatrix:
    return SkewMatrix(h.base.nodes, {(u, v): w for u, v, w in h.arcs()})


def pfaffian_signature(h: OrientedPlaneGraph) -> SignatureVector:
    g = h.base
    k = g.arity
    ev = PfaffianMinors(skew_of(h))
    nodes = set(g.nodes)
    values = []
    for idx in range(1 << k):
        gone = {x for x, b in zip(g.externals, index_to_bits(idx, k)) if b}
        values.append(ev.minor(nodes - gone))
    return SignatureVector(k, values)


def _matching_sign(h: OrientedPlaneGraph, matching) -> int:
    s = overlap_sign(matching)
    for u, v in matching:
        if h.direction[edge_key(u, v)][0] > h.direction[edge_key(u, v)][1]:
            s = -s
    return s


def delta(h: OrientedPlaneGraph, alpha, debug: bool = False) -> int | None:
    """Sign relating Pf and PerfMatch on G^alpha; None if G^alpha has no perfect matching.

    With ``debug`` the sign is recomputed from a second matching (when one
    exists) and a mismatch raises AssertionError.
    """
    sub = h.base.remove_externals(alpha)
    it = iter_perfect_matchings(sub)
    first = next(it, None)
    if first is None:
        return None
    s = _matching_sign(h, first)
    if debug:
        second = next(it, None)
        if second is not None and _matching_sign(h, second) != s:
            raise AssertionError(f"delta depends on the witness matching at {alpha!r}")
    return s


def delta_table(h: OrientedPlaneGraph) -> list[int | None]:
    k = h.arity
    return [delta(h, idx) if k else delta(h, ()) for idx in range(1 << k)]


@dataclass(frozen=True)
class QuadrupleViolation:
    b: int
    c: int
    first: tuple[int, int]
    second: tuple[int, int]
    products: tuple[int, int]


def quadruple_product_violation(h: OrientedPlaneGraph, i: int, j: int, deltas=None):
    """First pair of contexts whose products disagree, or None."""
    k = h.arity
    if not 1 <= i < j <= k:
        raise ValueError(f"need 1 <= i < j <= {k}, got i={i}, j={j}")
    table = delta_table(h) if deltas is None else deltas
    bi, bj = 1 << (k - i), 1 << (k - j)
    for b, c in ((0, 0), (0, 1)):
        seen = None
        for ctx in range(1 << k):
            if ctx & (bi | bj):
                continue
            a1 = ctx | (bi if b else 0) | (bj if c else 0)
            a2 = ctx | (0 if b else bi) | (0 if c else bj)
            d1, d2 = table[a1], table[a2]
            if d1 is None or d2 is None:
                continue
            if seen is None:
                seen = ((a1, a2), d1 * d2)
            elif seen[1] != d1 * d2:
                return QuadrupleViolation(b, c, seen[0], (a1, a2), (seen[1], d1 * d2))
    return None


def check_quadruple_product(h: OrientedPlaneGraph, i: int, j: int, deltas=None) -> bool:
    """True iff delta(ubvcw) delta(u~bv~cw) takes one value over all contexts."""
    return quadruple_product_violation(h, i, j, deltas) is None


def check_pfaffian_signature_identities(p: SignatureVector) -> bool:
    return check_mgi(p).ok
