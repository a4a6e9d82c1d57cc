"""Realizing vectors that satisfy the Matchgate Identities as planar matchgates.

The construction: normalize the vector so its all-ones entry is 1, read the
weights of a complete graph K_k off the entries of Hamming weight k-2, draw
K_k with its nodes on a convex curve, replace every crossing by a copy of
the crossover gadget, and undo the normalization with a scaling edge and
pendant edges.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Mapping

from .numeric import ONE, GaussianRational, as_gr
from .pfaffian import PfaffianMinors, SkewMatrix
from .planegraph import Edge, PlaneGraph, choose_outer, edge_key, index_to_bits
from .signature import MGIResult, SignatureVector, check_mgi, signature

__all__ = [
    "MGIViolation",
    "ConvexCompleteGraph",
    "Planarization",
    "crossover_gadget",
    "generate_mgi_vector",
    "normalize",
    "convex_complete_graph",
    "planarize",
    "planarize_convex",
    "verify_pfaffian_minor_formula",
    "realize",
    "node_bound",
]


class MGIViolation(ValueError):
    """The vector to realize fails the Matchgate Identities."""

    def __init__(self, result: MGIResult):
        super().__init__(result.describe())
        self.result = result


# Crossover gadget.  Externals 1..4 clockwise, internal g1 = 5, g2 = 6.
G1, G2 = 5, 6
_GADGET_EDGES = {
    (1, 2): 1,
    (2, G2): 1,
    (3, G2): 1,
    (3, 4): 1,
    (4, G1): 1,
    (1, G1): 1,
    (G1, G2): -1,
}
_GADGET_ROTATION = {
    1: [2, G1],
    2: [1, G2],
    G2: [2, G1, 3],
    3: [G2, 4],
    4: [3, G1],
    G1: [G2, 1, 4],
}
# where the passage continues away from the crossing, per gadget external
_OUT_SLOT = {1: 1, 2: 0, 3: 2, 4: 2}


def crossover_gadget() -> PlaneGraph:
    return PlaneGraph(range(1, 7), _GADGET_EDGES, _GADGET_ROTATION, (1, 2), [1, 2, 3, 4])


def generate_mgi_vector(m: SkewMatrix) -> SignatureVector:
    """Vector of principal Pfaffian minors: entry alpha keeps the labels at 0 bits."""
    labels = m.labels
    k = len(labels)
    ev = PfaffianMinors(m)
    values = []
    for idx in range(1 << k):
        bits = index_to_bits(idx, k)
        values.append(ev.minor([v for v, b in zip(labels, bits) if not b]))
    return SignatureVector(k, values)


def normalize(sig: SignatureVector) -> tuple[SignatureVector, int, GaussianRational]:
    """Return (sig', beta, s) with sig'[a] = sig[a ^ ~beta] / s and s = sig[beta]."""
    k = sig.arity
    beta = next((i for i, v in enumerate(sig.values) if v), None)
    if beta is None:
        raise ValueError("cannot normalize the all-zero vector")
    s = sig.values[beta]
    mask = (1 << k) - 1
    inv = s.inv()
    values = [sig.values[a ^ (beta ^ mask)] * inv for a in range(1 << k)]
    return SignatureVector(k, values), beta, s


def _pair_index(k: int, i: int, j: int) -> int:
    """Index whose only zero bits are at positions i and j."""
    return ((1 << k) - 1) ^ (1 << (k - i)) ^ (1 << (k - j))


@dataclass
class ConvexCompleteGraph:
    """K_k with nodes 1..k in clockwise order on a convex curve."""

    k: int
    weights: dict[Edge, GaussianRational]

    @property
    def crossings(self) -> list[tuple[int, int, int, int]]:
        return list(combinations(range(1, self.k + 1), 4))

    def skew(self) -> SkewMatrix:
        return SkewMatrix(range(1, self.k + 1), self.weights)


def convex_complete_graph(normalized: SignatureVector) -> ConvexCompleteGraph:
    k = normalized.arity
    weights = {
        (i, j): normalized.values[_pair_index(k, i, j)]
        for i, j in combinations(range(1, k + 1), 2)
    }
    return ConvexCompleteGraph(k, weights)


def verify_pfaffian_minor_formula(kg: ConvexCompleteGraph, normalized: SignatureVector) -> bool:
    return generate_mgi_vector(kg.skew()) == normalized


# -- planarization ----------------------------------------------------------


def _crossing_x(t, a, b, c, d) -> Fraction:
    """x-coordinate where chords (a,c) and (b,d) meet, nodes at (t, t^2)."""
    return (t[a] * t[c] - t[b] * t[d]) / (t[a] + t[c] - t[b] - t[d])


def _node_positions(n: int, chords, crossings):
    """Parabola parameters for nodes 1..n giving no two crossings at one point."""
    for attempt in range(1000):
        if attempt == 0:
            t = {m: Fraction(m * m + m, 2) for m in range(1, n + 1)}
        else:
            rng = random.Random(attempt)
            t = {m: Fraction(x) for m, x in zip(range(1, n + 1), sorted(rng.sample(range(1, 10**6), n)))}
        per_chord: dict[Edge, list[Fraction]] = {ch: [] for ch in chords}
        for a, b, c, d in crossings:
            x = _crossing_x(t, a, b, c, d)
            per_chord[(a, c)].append(x)
            per_chord[(b, d)].append(x)
        if all(len(set(xs)) == len(xs) for xs in per_chord.values()):
            return t
    raise RuntimeError("could not place nodes in general position")


@dataclass
class Planarization:
    """Planarized convex drawing: the graph plus its passage bookkeeping."""

    graph: PlaneGraph
    passages: dict[Edge, list[Edge]] = field(default_factory=dict)
    gadgets: list[tuple[tuple[int, int, int, int], tuple[int, ...]]] = field(default_factory=list)


def planarize(n: int, chords: Mapping[Edge, object]) -> Planarization:
    """Planar drawing of chords between nodes 1..n placed clockwise on a convex curve.

    Every crossing of chords {a,c} and {b,d} (a < b < c < d) becomes a copy
    of the crossover gadget whose externals 1, 2, 3, 4 face a, b, c, d.  The
    passage edge at the lower end of chord {i,j} carries the chord weight;
    all other passage edges have weight 1.  Zero-weight chords are drawn and
    then their weighted edge is deleted, so every crossing keeps its gadget.
    Externals of the result are 1..n in order.
    """
    chords = {edge_key(*e): as_gr(w) for e, w in chords.items()}
    crossings = [
        (a, b, c, d)
        for (a, c), (b, d) in combinations(sorted(chords), 2)
        for a, b, c, d in [(a, b, c, d) if a < b else (b, a, d, c)]
        if a < b < c < d
    ]
    crossings.sort()
    t = _node_positions(n, chords, crossings) if crossings else {}

    nodes = list(range(1, n + 1))
    rotation: dict[int, list[int]] = {}
    edges: dict[Edge, GaussianRational] = {}
    stops: dict[Edge, list[tuple[Fraction, int, int]]] = {ch: [] for ch in chords}
    gadgets = []
    base = n
    for a, b, c, d in crossings:
        ids = tuple(base + i for i in range(1, 7))
        base += 6
        gadgets.append(((a, b, c, d), ids))
        nodes.extend(ids)
        for (u, v), w in _GADGET_EDGES.items():
            edges[edge_key(ids[u - 1], ids[v - 1])] = as_gr(w)
        for v, nbrs in _GADGET_ROTATION.items():
            rotation[ids[v - 1]] = [ids[w - 1] for w in nbrs]
        x = _crossing_x(t, a, b, c, d)
        # (x, node facing the low end, node facing the high end)
        stops[(a, c)].append((x, ids[0], ids[2]))
        stops[(b, d)].append((x, ids[1], ids[3]))

    first_hop: dict[tuple[int, int], int] = {}
    passages: dict[Edge, list[Edge]] = {}
    real_weight: dict[Edge, GaussianRational] = {}
    for (i, j), w in chords.items():
        path = [i]
        for _, lo, hi in sorted(stops[(i, j)]):
            path += [lo, hi]
        path.append(j)
        first_hop[(i, j)] = path[1]
        first_hop[(j, i)] = path[-2]
        hops = []
        for s in range(0, len(path), 2):
            u, v = path[s], path[s + 1]
            e = edge_key(u, v)
            hops.append(e)
            real_weight[e] = w if s == 0 else ONE
            edges[e] = ONE
            # hook passage edges into the gadget rotations
            for inner, outer_nbr in ((u, v), (v, u)):
                if inner > n:
                    slot = _OUT_SLOT[(inner - n - 1) % 6 + 1]
                    rotation[inner].insert(slot, outer_nbr)
        passages[(i, j)] = hops

    outer_candidates = []
    for i in range(1, n + 1):
        # counterclockwise around i: i-1, i-2, ..., 1, n, ..., i+1
        ccw = [(i - s - 1) % n + 1 for s in range(1, n)]
        rotation[i] = [first_hop[(i, j)] for j in ccw if (i, j) in first_hop]
        if rotation[i]:
            outer_candidates.append((i, rotation[i][-1]))
    outer = choose_outer(nodes, edges, outer_candidates)
    g = PlaneGraph(nodes, edges, rotation, outer, list(range(1, n + 1)))
    if any(not w for w in real_weight.values()):
        g = g.without_zero_weights(real_weight)
    else:
        g = PlaneGraph(g.nodes, {e: real_weight.get(e, w) for e, w in g.edges.items()},
                       g.rotation, g.outer, g.externals)
    return Planarization(g, passages, gadgets)


def planarize_convex(kg: ConvexCompleteGraph) -> PlaneGraph:
    return planarize(kg.k, kg.weights).graph


def node_bound(k: int) -> int:
    return k + 6 * comb(k, 4) + k + 2


# -- assembling a realization ------------------------------------------------


def _add_pendants(g: PlaneGraph, positions: list[int], first_label: int) -> PlaneGraph:
    """Hang a weight-1 leaf off the listed externals; the leaf becomes the external."""
    rotation = {v: list(w) for v, w in g.rotation.items()}
    edges = dict(g.edges)
    nodes = list(g.nodes)
    externals = list(g.externals)
    corners = g.external_corners()
    label = first_label
    for p in positions:
        x = externals[p - 1]
        corner = corners[p - 1]
        if corner is None:
            rotation[x] = [label]
        else:
            rotation[x].insert(rotation[x].index(corner), label)
        rotation[label] = [x]
        edges[edge_key(x, label)] = ONE
        nodes.append(label)
        externals[p - 1] = label
        label += 1
    # an isolated external that got a leaf forms a new one-face component
    return PlaneGraph(nodes, edges, rotation, _outer_for(nodes, edges, g.outer, rotation), externals)


def _outer_for(nodes, edges, old_outer, rotation):
    candidates = list(old_outer)
    for v in nodes:
        for w in rotation.get(v, ()):
            candidates.append((v, w))
    return choose_outer(nodes, edges, candidates)


def _add_scaling_edge(g: PlaneGraph, weight, label: int) -> PlaneGraph:
    u, v = label, label + 1
    rotation = {x: list(w) for x, w in g.rotation.items()}
    rotation[u], rotation[v] = [v], [u]
    edges = dict(g.edges)
    edges[(u, v)] = as_gr(weight)
    return PlaneGraph(list(g.nodes) + [u, v], edges, rotation, list(g.outer) + [(u, v)], g.externals)


def _zero_realization(k: int) -> PlaneGraph:
    """k weight-1 pendants plus two isolated nodes: every entry is 0."""
    nodes = list(range(1, 2 * k + 3))
    edges = {(i, k + i): ONE for i in range(1, k + 1)}
    rotation = {i: [k + i] for i in range(1, k + 1)}
    rotation.update({k + i: [i] for i in range(1, k + 1)})
    return PlaneGraph(nodes, edges, rotation, None, list(range(1, k + 1)))


def realize(sig: SignatureVector, verify: bool | None = None) -> PlaneGraph:
    """Planar matchgate whose signature is exactly ``sig``.

    Raises MGIViolation when ``sig`` fails the Matchgate Identities.  The
    result is re-checked by recomputing its signature when k <= 6 (or when
    ``verify`` is True).
    """
    result = check_mgi(sig)
    if not result.ok:
        raise MGIViolation(result)
    k = sig.arity
    if not any(sig.values):
        g = _zero_realization(k)
    elif k == 0:
        g = PlaneGraph([1, 2], {(1, 2): sig.values[0]}, {1: [2], 2: [1]}, (1, 2))
    else:
        normalized, beta, s = normalize(sig)
        kg = convex_complete_graph(normalized)
        g = planarize_convex(kg)
        flips = [p for p in range(1, k + 1) if not (beta >> (k - p)) & 1]
        g = _add_pendants(g, flips, max(g.nodes) + 1)
        g = _add_scaling_edge(g, s, max(g.nodes) + 1)
    if verify or (verify is None and k <= 6):
        got = signature(g)
        if got != sig:
            raise AssertionError(f"realization check failed: wanted {sig!r}, built {got!r}")
    return g
