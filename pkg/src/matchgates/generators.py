"""Random plane graphs, matchgates, weights and skew matrices for testing."""

from __future__ import annotations

import random
from fractions import Fraction

from .character import GeneralMatchgate
from .numeric import GaussianRational
from .pfaffian import SkewMatrix
from .planegraph import PlaneGraph, edge_key, trace_faces

__all__ = [
    "random_weight",
    "random_plane_graph",
    "random_matchgate",
    "random_disconnected_matchgate",
    "random_skew",
    "random_general_matchgate",
]


def random_weight(rng: random.Random, complex_prob: float = 0.3, zero_prob: float = 0.0):
    """Small nonzero Gaussian rational (zero with probability ``zero_prob``)."""
    if rng.random() < zero_prob:
        return GaussianRational(0)
    while True:
        re = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        im = Fraction(rng.randint(-3, 3), rng.randint(1, 2)) if rng.random() < complex_prob else 0
        if re or im:
            return GaussianRational(re, im)


def _grow(rng: random.Random, n_nodes: int, chord_prob: float, start: int = 1):
    """Rotation system of a random connected plane graph plus an outer dart.

    A random plane tree on ``n_nodes`` nodes is grown first; then each of
    about ``6 * chord_prob * n_nodes`` attempts joins two corners of one face.
    """
    rot: dict[int, list[int]] = {start: []}
    outer = None
    for nxt in range(start + 1, start + n_nodes):
        # pendant at a random corner of a random node
        u = rng.choice(sorted(rot))
        rot[nxt] = [u]
        rot[u].insert(rng.randint(0, len(rot[u])), nxt)
        if outer is None:
            outer = (u, nxt)
    for _ in range(round(6 * chord_prob * n_nodes)):
        if outer is None:
            break
        walk = rng.choice(trace_faces(rot))
        if len(walk) < 3:
            continue
        i, j = sorted(rng.sample(range(len(walk)), 2))
        (pu, u), (pv, v) = walk[i - 1], walk[j - 1]
        if u != v and v not in rot[u]:
            rot[u].insert(rot[u].index(pu), v)
            rot[v].insert(rot[v].index(pv), u)
    return rot, outer


def random_plane_graph(
    rng: random.Random,
    n_nodes: int,
    chord_prob: float = 0.4,
    complex_prob: float = 0.3,
    start: int = 1,
) -> PlaneGraph:
    rot, outer = _grow(rng, n_nodes, chord_prob, start)
    edges = {
        edge_key(u, v): random_weight(rng, complex_prob) for u in rot for v in rot[u] if u < v
    }
    return PlaneGraph(rot, edges, rot, outer)


def random_matchgate(
    rng: random.Random,
    n_nodes: int,
    k: int,
    chord_prob: float = 0.4,
    complex_prob: float = 0.3,
    start: int = 1,
) -> PlaneGraph:
    """Connected random matchgate with k externals picked on the outer face.

    Pendants are grown on the outer face until it has at least k distinct
    nodes, then k of them are chosen and ordered by first appearance on the
    outer walk.
    """
    rot, outer = _grow(rng, max(n_nodes, 1), chord_prob, start)
    nxt = max(rot) + 1

    def outer_walk():
        if outer is None:
            return [(start, start)]
        return next(w for w in trace_faces(rot) if outer in w)

    while len({d[0] for d in outer_walk()}) < k:
        walk = outer_walk()
        pu, u = rng.choice(walk) if outer else (None, start)
        rot[nxt] = [u]
        if pu is None:
            rot[u] = [nxt]
        else:
            rot[u].insert(rot[u].index(pu), nxt)
        if outer is None:
            outer = (u, nxt)
        nxt += 1
    seq = []
    for d in outer_walk():
        if d[0] not in seq:
            seq.append(d[0])
    chosen = set(rng.sample(seq, k))
    externals = [v for v in seq if v in chosen]
    shift = rng.randrange(len(externals)) if externals else 0
    externals = externals[shift:] + externals[:shift]
    edges = {
        edge_key(u, v): random_weight(rng, complex_prob) for u in rot for v in rot[u] if u < v
    }
    return PlaneGraph(rot, edges, rot, outer, externals)


def random_disconnected_matchgate(
    rng: random.Random, sizes: list[tuple[int, int]], complex_prob: float = 0.3
) -> PlaneGraph:
    """Side-by-side union of random matchgates, given (nodes, externals) per part."""
    nodes, edges, rot, outer, externals = [], {}, {}, [], []
    start = 1
    for n, k in sizes:
        part = random_matchgate(rng, n, k, complex_prob=complex_prob, start=start)
        nodes += part.nodes
        edges.update(part.edges)
        rot.update({v: list(w) for v, w in part.rotation.items()})
        outer += list(part.outer)
        externals += list(part.externals)
        start = max(part.nodes) + 1
    return PlaneGraph(nodes, edges, rot, outer, externals)


def random_skew(rng: random.Random, n: int, density: float = 0.7, labels=None) -> SkewMatrix:
    labels = list(labels) if labels is not None else list(range(1, n + 1))
    entries = {}
    for a in range(len(labels)):
        for b in range(a + 1, len(labels)):
            if rng.random() < density:
                entries[(labels[a], labels[b])] = random_weight(rng)
    return SkewMatrix(labels, entries)


def random_general_matchgate(
    rng: random.Random, n_nodes: int, max_omittable: int = 3, density: float = 0.5
):
    """Random labelled graph with input, omittable and output sets, X < T < Y."""
    labels = sorted(rng.sample(range(1, 3 * n_nodes + 1), n_nodes))
    edges = {
        (u, v): random_weight(rng)
        for i, u in enumerate(labels)
        for v in labels[i + 1 :]
        if rng.random() < density
    }
    t = rng.randint(0, min(max_omittable, n_nodes))
    rest = n_nodes - t
    nx = rng.randint(0, min(rest, 3))
    ny = rng.randint(0, min(rest - nx, 3))
    chosen = sorted(rng.sample(labels, nx + t + ny))
    return GeneralMatchgate(
        labels, edges, chosen[:nx], chosen[nx + t :], chosen[nx : nx + t]
    )
