"""Symmetric signatures: recognition and direct triangle-cycle constructions.

A symmetric arity-k signature is written ``[z_0, ..., z_k]`` with z_i the
common value at Hamming weight i.  It is realizable exactly when alternate
entries vanish and the remaining ones form a geometric progression
(allowing a single nonzero extremal entry).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .numeric import ONE, ZERO, GaussianRational, as_gr
from .planegraph import PlaneGraph
from .realize import realize
from .signature import SignatureVector, signature

__all__ = [
    "SymmetricClass",
    "NotRealizable",
    "dense",
    "collapse",
    "check_symmetric_realizable",
    "triangle_cycle",
    "realize_symmetric",
    "parity_gadget",
]


class NotRealizable(ValueError):
    """The symmetric sequence is not a planar matchgate signature."""


@dataclass(frozen=True)
class SymmetricClass:
    kind: str  # "zero", "even", "odd" or "none"
    r: tuple[GaussianRational, GaussianRational] | None = None

    @property
    def realizable(self) -> bool:
        return self.kind != "none"


def dense(z: Sequence[object]) -> SignatureVector:
    """Full 2^k vector of a symmetric signature."""
    z = [as_gr(v) for v in z]
    k = len(z) - 1
    return SignatureVector(k, [z[bin(a).count("1")] for a in range(1 << k)])


def collapse(sig: SignatureVector) -> list[GaussianRational] | None:
    """Per-weight values of a symmetric vector, or None if it is not symmetric."""
    z: list[GaussianRational | None] = [None] * (sig.arity + 1)
    for a, v in enumerate(sig.values):
        w = bin(a).count("1")
        if z[w] is None:
            z[w] = v
        elif z[w] != v:
            return None
    return z


def check_symmetric_realizable(z: Sequence[object]) -> SymmetricClass:
    z = [as_gr(v) for v in z]
    if not any(z):
        return SymmetricClass("zero", (ONE, ONE))
    even_nz = any(z[0::2])
    odd_nz = any(z[1::2])
    if even_nz and odd_nz:
        return SymmetricClass("none")
    kind = "even" if even_nz else "odd"
    seq = z[0::2] if even_nz else z[1::2]
    candidates = [(ONE, ONE), (ZERO, ONE), (ONE, ZERO)]
    if len(seq) >= 2 and (seq[0] or seq[1]):
        candidates.insert(0, (seq[1], seq[0]))
    for r1, r2 in candidates:
        if all(r1 * seq[m - 1] == r2 * seq[m] for m in range(1, len(seq))):
            return SymmetricClass(kind, (r1, r2))
    return SymmetricClass("none")


def triangle_cycle(k: int, x, y) -> PlaneGraph:
    """Cycle of k triangles sharing base nodes, externals a_1..a_k.

    a_i = i, b_i = k + i, and triangle i is {a_i, b_i, b_(i+1)} with two
    x-weighted sides at a_i and a y-weighted base.  Zero weights drop the
    corresponding edges.
    """
    if k < 3:
        raise ValueError("a triangle cycle needs k >= 3")
    x, y = as_gr(x), as_gr(y)
    b = lambda i: k + (i - 1) % k + 1  # noqa: E731
    rotation: dict[int, list[int]] = {}
    edges = {}
    for i in range(1, k + 1):
        rotation[i] = [b(i), b(i + 1)]
        rotation[b(i)] = [b(i + 1), i, (i - 2) % k + 1, b(i - 1)]
        edges[(i, b(i))] = x
        edges[(i, b(i + 1))] = x
        lo, hi = sorted((b(i), b(i + 1)))
        edges[(lo, hi)] = y
    full = PlaneGraph(
        range(1, 2 * k + 1), {e: ONE for e in edges}, rotation, (b(1), 1), range(1, k + 1)
    )
    return full.without_zero_weights(edges)


def _with_scaling(g: PlaneGraph, weight) -> PlaneGraph:
    u = max(g.nodes, default=0) + 1
    rotation = {v: list(w) for v, w in g.rotation.items()}
    rotation[u], rotation[u + 1] = [u + 1], [u]
    edges = dict(g.edges)
    edges[(u, u + 1)] = as_gr(weight)
    return PlaneGraph(list(g.nodes) + [u, u + 1], edges, rotation, list(g.outer) + [(u, u + 1)], g.externals)


def _small(z: list[GaussianRational]) -> PlaneGraph | None:
    """Direct gadgets for arity at most 2."""
    k = len(z) - 1
    if k == 0:
        return PlaneGraph([1, 2], {(1, 2): z[0]}, {1: [2], 2: [1]}, (1, 2))
    if k == 1:
        a, b = z
        if a:
            return PlaneGraph([1, 2], {(1, 2): a}, {1: [2], 2: [1]}, (1, 2), [1])
        return _with_scaling(PlaneGraph([1], {}, {}, None, [1]), b)
    a, b, c = z
    if b:
        path = PlaneGraph([1, 2, 3], {(1, 3): ONE, (2, 3): ONE}, {1: [3], 2: [3], 3: [2, 1]}, (1, 3), [1, 2])
        return _with_scaling(path, b)
    if c and a:
        edge = PlaneGraph([1, 2], {(1, 2): a / c}, {1: [2], 2: [1]}, (1, 2), [1, 2])
        return _with_scaling(edge, c)
    if c:
        return _with_scaling(PlaneGraph([1, 2], {}, {}, None, [1, 2]), c)
    pendants = PlaneGraph(
        [1, 2, 3, 4], {(1, 3): ONE, (2, 4): ONE}, {1: [3], 3: [1], 2: [4], 4: [2]}, None, [1, 2]
    )
    return _with_scaling(pendants, a)


def _even(z: list[GaussianRational]) -> PlaneGraph | None:
    """Triangle-cycle realization of an even-form sequence (k >= 3), if direct."""
    k = len(z) - 1
    if z[0]:
        return _with_scaling(triangle_cycle(k, 1, z[2] / z[0]), z[0] / 2)
    if k % 2 == 0:
        # only z_k can be nonzero: the bare cycle of bases
        return _with_scaling(triangle_cycle(k, 0, 1), z[k] / 2)
    return None


def realize_symmetric(z: Sequence[object], verify: bool | None = None) -> PlaneGraph:
    """Planar matchgate with symmetric signature ``z``.

    Even forms use a triangle cycle with x = 1 and y the common ratio (or
    x = 0 when only the all-ones entry survives) plus a scaling edge; odd
    forms delete the last external of an even construction one arity up.
    Degenerate forms the triangle cycle cannot express use the general
    construction.  The result is checked against ``z`` when k <= 8.
    """
    z = [as_gr(v) for v in z]
    k = len(z) - 1
    cls = check_symmetric_realizable(z)
    if not cls.realizable:
        raise NotRealizable(f"not a symmetric matchgate signature: {[str(v) for v in z]}")
    g = None
    if cls.kind == "zero":
        g = realize(dense(z), verify=False)
    elif k <= 2:
        g = _small(z)
    elif cls.kind == "even":
        g = _even(z)
    else:
        odd = z[1::2]
        w = None
        if odd[0] and len(odd) >= 2 and odd[1]:
            w = [odd[0] * odd[0] / odd[1]] + z
        elif not any(odd[:-1]) and k % 2 == 1:
            w = [ZERO] + z
        if w is not None:
            even = _even(w)
            if even is not None:
                g = even.remove_externals([0] * k + [1])
    if g is None:
        g = realize(dense(z), verify=False)
    if verify or (verify is None and k <= 8):
        got = signature(g)
        if got != dense(z):
            raise AssertionError(f"symmetric realization check failed for {[str(v) for v in z]}")
    return g


def parity_gadget(t: int, parity: str = "even") -> PlaneGraph:
    """Arity-t gadget with value 1 on every index of the given parity, 0 elsewhere."""
    if t < 1:
        raise ValueError("parity gadgets need t >= 1")
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    start = 0 if parity == "even" else 1
    return realize_symmetric([1 if (i - start) % 2 == 0 else 0 for i in range(t + 1)])
