"""General (possibly non-planar) matchgates, their characters, and planar equivalents.

A general matchgate is a labelled weighted graph with input nodes X,
omittable nodes T and output nodes Y, labelled so that X < T < Y.  Index
bits of characters follow the label order of the external nodes X u Y.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .numeric import ONE, ZERO, GaussianRational, as_gr
from .pfaffian import PfaffianMinors, SkewMatrix
from .planegraph import Edge, PlaneGraph, choose_outer, edge_key, index_to_bits
from .realize import planarize
from .signature import SignatureVector, iter_matchings
from .symmetric import parity_gadget

__all__ = [
    "GeneralMatchgate",
    "pfaffian_of_graph",
    "pfaffian_sum",
    "modifier",
    "character",
    "naked_character",
    "character_vector",
    "naked_character_vector",
    "character_to_signatures",
]


@dataclass(frozen=True)
class GeneralMatchgate:
    nodes: tuple[int, ...]
    edges: dict[Edge, GaussianRational]
    inputs: tuple[int, ...] = ()
    outputs: tuple[int, ...] = ()
    omittable: tuple[int, ...] = ()

    def __init__(self, nodes, edges, inputs=(), outputs=(), omittable=()):
        nodes = tuple(sorted(set(nodes)))
        node_set = set(nodes)
        clean: dict[Edge, GaussianRational] = {}
        for (u, v), w in dict(edges).items():
            if u == v or u not in node_set or v not in node_set:
                raise ValueError(f"bad edge {{{u},{v}}}")
            key = edge_key(u, v)
            if key in clean:
                raise ValueError(f"duplicate edge {{{u},{v}}}")
            w = as_gr(w)
            if w:
                clean[key] = w
        X, Y, T = (tuple(sorted(set(s))) for s in (inputs, outputs, omittable))
        for name, s in (("input", X), ("output", Y), ("omittable", T)):
            if not set(s) <= node_set:
                raise ValueError(f"{name} nodes must be nodes of the graph")
        if set(X) & set(Y) or set(X) & set(T) or set(Y) & set(T):
            raise ValueError("input, output and omittable sets must be disjoint")
        if X and T and max(X) > min(T):
            raise ValueError("every input node must precede every omittable node")
        if T and Y and max(T) > min(Y):
            raise ValueError("every omittable node must precede every output node")
        if X and Y and max(X) > min(Y):
            raise ValueError("every input node must precede every output node")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", clean)
        object.__setattr__(self, "inputs", X)
        object.__setattr__(self, "outputs", Y)
        object.__setattr__(self, "omittable", T)

    @property
    def externals(self) -> tuple[int, ...]:
        return self.inputs + self.outputs

    @property
    def arity(self) -> int:
        return len(self.inputs) + len(self.outputs)

    def removed(self, alpha) -> set[int]:
        bits = index_to_bits(alpha, self.arity) if isinstance(alpha, int) else tuple(int(b) for b in alpha)
        if len(bits) != self.arity:
            raise ValueError(f"pattern {alpha!r} does not have arity {self.arity}")
        return {x for x, b in zip(self.externals, bits) if b}

    def skew(self) -> SkewMatrix:
        return SkewMatrix(self.nodes, self.edges)


def pfaffian_of_graph(nodes: Iterable[int], edges: Mapping[Edge, object]) -> GaussianRational:
    """Pf of the matrix with M[i,j] = w({i,j}) for i < j."""
    return PfaffianMinors(SkewMatrix(nodes, {edge_key(*e): w for e, w in edges.items()})).full()


def _subsets(items):
    for r in range(len(items) + 1):
        yield from combinations(items, r)


def pfaffian_sum(g: GeneralMatchgate, removed: Iterable[int] = (), ev: PfaffianMinors | None = None):
    """Sum of Pf(G - Z - W) over all subsets W of the omittable nodes."""
    ev = ev or PfaffianMinors(g.skew())
    keep = set(g.nodes) - set(removed)
    total = ZERO
    for w in _subsets(g.omittable):
        total = total + ev.minor(keep - set(w))
    return total


def _straddles(matching, z: int) -> int:
    return sum(1 for x, y in matching if x < z < y)


def modifier(g: GeneralMatchgate, alpha, debug: bool = False) -> int:
    """Sign from overlaps between matching edges and external edges.

    External edges of removed inputs end below every label and those of
    removed outputs above every label, nested so they never overlap each
    other; an edge {x, y} of the matching then overlaps the external edge
    at z exactly when x < z < y.  Returns +1 when no witness matching exists.
    """
    z_set = g.removed(alpha)
    adjacency: dict[int, list[int]] = {v: [] for v in g.nodes}
    for u, v in g.edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    base = set(g.nodes) - z_set
    for w in _subsets(g.omittable):
        nodes = base - set(w)
        witness = next(iter_matchings(nodes, adjacency), None)
        if witness is None:
            continue
        p = sum(_straddles(witness, z) for z in z_set)
        if debug:
            # edges inside one side of z cancel in pairs, so only the number
            # of surviving nodes below z matters
            q = sum(sum(1 for v in nodes if v < z) for z in z_set)
            if (p - q) % 2:
                raise AssertionError(f"modifier depends on the witness for {alpha!r}")
        return -1 if p % 2 else 1
    return 1


def naked_character(g: GeneralMatchgate, alpha, ev: PfaffianMinors | None = None) -> GaussianRational:
    return pfaffian_sum(g, g.removed(alpha), ev)


def character(g: GeneralMatchgate, alpha, ev: PfaffianMinors | None = None) -> GaussianRational:
    value = naked_character(g, alpha, ev)
    return -value if modifier(g, alpha) < 0 else value


def naked_character_vector(g: GeneralMatchgate) -> SignatureVector:
    ev = PfaffianMinors(g.skew())
    return SignatureVector(g.arity, [naked_character(g, a, ev) for a in range(1 << g.arity)])


def character_vector(g: GeneralMatchgate) -> SignatureVector:
    ev = PfaffianMinors(g.skew())
    return SignatureVector(g.arity, [character(g, a, ev) for a in range(1 << g.arity)])


# -- planar equivalents -------------------------------------------------------


def _attach(base: PlaneGraph, ports: list[int], h: PlaneGraph, keep: list[int]) -> PlaneGraph:
    """Join the clockwise ports of ``base`` to the externals of ``h`` by weight-1 edges.

    Port m (clockwise) meets external t+1-m of ``h``, so the connecting
    edges do not cross; every junction uses an outer corner on both sides.
    """
    shift = max(base.nodes, default=0)
    h = h.relabeled({v: v + shift for v in h.nodes})
    base_corner = dict(zip(base.externals, base.external_corners()))
    h_corner = dict(zip(h.externals, h.external_corners()))
    rotation = {v: list(w) for v, w in base.rotation.items()}
    rotation.update({v: list(w) for v, w in h.rotation.items()})
    edges = dict(base.edges)
    edges.update(h.edges)
    t = len(ports)
    pairs = [(ports[m], h.externals[t - 1 - m]) for m in range(t)]
    for p, q in pairs:
        for a, b, corner in ((p, q, base_corner[p]), (q, p, h_corner[q])):
            if corner is None:
                rotation[a] = [b]
            else:
                rotation[a].insert(rotation[a].index(corner), b)
        edges[edge_key(p, q)] = ONE
    nodes = list(base.nodes) + list(h.nodes)
    candidates = [pairs[0]] + list(base.outer) + list(h.outer)
    outer = choose_outer(nodes, edges, candidates)
    return PlaneGraph(nodes, edges, rotation, outer, keep)


def character_to_signatures(g: GeneralMatchgate) -> tuple[PlaneGraph, PlaneGraph]:
    """Two planar matchgates whose signatures add up to the naked character of ``g``.

    Nodes go clockwise by label on an arc, chord crossings become crossover
    gadgets, and the omittable nodes are tied off by an even (first result)
    or odd (second result) parity gadget placed outside the arc.
    """
    pos = {v: i for i, v in enumerate(g.nodes, start=1)}
    chords = {edge_key(pos[u], pos[v]): w for (u, v), w in g.edges.items()}
    drawn = planarize(len(g.nodes), chords).graph
    ports = [pos[v] for v in g.omittable]
    keep = [pos[v] for v in g.externals]
    if not ports:
        g1 = drawn.with_externals(keep)
        extra = max(drawn.nodes, default=0) + 1
        g2 = PlaneGraph(list(drawn.nodes) + [extra], drawn.edges, drawn.rotation, drawn.outer, keep)
        return g1, g2
    staged = drawn.with_externals(sorted(keep + ports))
    t = len(ports)
    g1 = _attach(staged, ports, parity_gadget(t, "even"), keep)
    g2 = _attach(staged, ports, parity_gadget(t, "odd"), keep)
    return g1, g2
