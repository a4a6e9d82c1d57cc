"""Perfect matchings, signatures and the Matchgate Identities.

The signature entry at index ``a`` is PerfMatch of the graph with the
external nodes at the 1 bits of ``a`` removed.  Index bits are read most
significant first, so bit string ``"1000"`` (index 8 when k = 4) removes
the first external node.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .numeric import ONE, ZERO, GaussianRational, as_gr
from .numeric import format as fmt
from .planegraph import PlaneGraph, as_bits, edge_key, index_to_bits

__all__ = [
    "SignatureVector",
    "MatchingCounter",
    "enumerate_perfect_matchings",
    "iter_perfect_matchings",
    "iter_matchings",
    "perfmatch",
    "signature",
    "check_parity",
    "check_mgi",
    "mgi_residual",
    "mgi_implies_parity_witness",
    "MGIResult",
    "flip",
    "bitstring",
]


def bitstring(index: int, k: int) -> str:
    return "".join(map(str, index_to_bits(index, k))) if k else ""


def flip(index: int, p: int, k: int) -> int:
    """Index with the bit of external position p (1-based) toggled."""
    return index ^ (1 << (k - p))


class SignatureVector:
    """Dense vector of 2^k Gaussian rationals indexed by removal patterns."""

    __slots__ = ("arity", "values")

    def __init__(self, arity: int, values: Sequence[object]):
        values = tuple(as_gr(v) for v in values)
        if arity < 0 or len(values) != 1 << arity:
            raise ValueError(f"a signature of arity {arity} needs {1 << max(arity, 0)} entries")
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("SignatureVector is immutable")

    @classmethod
    def from_entries(cls, arity: int, entries: Mapping[object, object]) -> "SignatureVector":
        """Build from a sparse mapping keyed by bit strings or indices."""
        values = [ZERO] * (1 << arity)
        for key, v in entries.items():
            values[_index(key, arity)] = as_gr(v)
        return cls(arity, values)

    def __getitem__(self, key) -> GaussianRational:
        return self.values[_index(key, self.arity)]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        if isinstance(other, SignatureVector):
            return self.arity == other.arity and self.values == other.values
        return NotImplemented

    __hash__ = None

    def support(self) -> list[int]:
        return [i for i, v in enumerate(self.values) if v]

    def nonzero(self) -> dict[str, GaussianRational]:
        return {bitstring(i, self.arity): v for i, v in enumerate(self.values) if v}

    def scaled(self, c) -> "SignatureVector":
        c = as_gr(c)
        return SignatureVector(self.arity, [c * v for v in self.values])

    def __repr__(self):
        body = ", ".join(f"{b}: {fmt(v)}" for b, v in self.nonzero().items())
        return f"SignatureVector({self.arity}, {{{body}}})"


def _index(key, k: int) -> int:
    if isinstance(key, int):
        if not 0 <= key < (1 << k):
            raise IndexError(f"index {key} out of range for arity {k}")
        return key
    idx = 0
    for b in as_bits(key, k):
        idx = (idx << 1) | b
    return idx


# -- matchings ---------------------------------------------------------------


def iter_matchings(nodes: Iterable[int], adjacency: Mapping[int, Iterable[int]]):
    """Yield perfect matchings of an abstract graph, lowest unmatched label first.

    Each matching is a tuple of edges ``(u, v)`` with u < v, listed in the
    order they were chosen (so by increasing smaller endpoint).  Sets of
    free nodes that admit no matching are remembered and skipped.
    """
    nodes = sorted(nodes)
    if len(nodes) & 1:
        return
    bit = {v: 1 << i for i, v in enumerate(nodes)}
    adj = {v: sorted(w for w in adjacency.get(v, ()) if w in bit) for v in nodes}
    dead: set[int] = set()
    chosen: list[tuple[int, int]] = []

    def walk(free: int):
        if not free:
            yield tuple(chosen)
            return
        if free in dead:
            return
        u = nodes[(free & -free).bit_length() - 1]
        found = False
        for v in adj[u]:
            if free & bit[v]:
                chosen.append(edge_key(u, v))
                for m in walk(free & ~bit[u] & ~bit[v]):
                    found = True
                    yield m
                chosen.pop()
        if not found:
            dead.add(free)

    yield from walk((1 << len(nodes)) - 1)


def iter_perfect_matchings(g: PlaneGraph):
    """Perfect matchings of a plane graph in deterministic order."""
    return iter_matchings(g.nodes, g.rotation)


def enumerate_perfect_matchings(g: PlaneGraph) -> list[tuple[tuple[int, int], ...]]:
    """Complete, duplicate-free list of the perfect matchings of ``g``."""
    return list(iter_perfect_matchings(g))


def _elimination_order(nodes: Sequence[int], adj: Mapping[int, Sequence[int]]) -> list[int]:
    """Greedy order keeping the set of touched-but-unprocessed nodes small."""
    remaining = set(nodes)
    order: list[int] = []
    frontier: set[int] = set()
    while remaining:
        pool = frontier or remaining
        # prefer the node whose removal adds the fewest new frontier nodes
        best = min(
            pool,
            key=lambda v: (
                sum(1 for w in adj[v] if w in remaining and w not in frontier) - (v in frontier),
                v,
            ),
        )
        order.append(best)
        remaining.discard(best)
        frontier.discard(best)
        frontier.update(w for w in adj[best] if w in remaining)
    return order


class MatchingCounter:
    """PerfMatch of node-deleted subgraphs of one graph, with a shared memo.

    States are the sets of nodes still unmatched; the node eliminated next
    is always the first remaining one in a fixed low-frontier order.
    """

    def __init__(self, g: PlaneGraph):
        self.graph = g
        order = _elimination_order(g.nodes, g.rotation)
        pos = {v: i for i, v in enumerate(order)}
        self._pos = pos
        self._adj = [
            [(1 << pos[w], g.weight(v, w)) for w in g.rotation[v]] for v in order
        ]
        self._full = (1 << len(order)) - 1
        self._memo: dict[int, GaussianRational] = {0: ONE}

    def _count(self, mask: int) -> GaussianRational:
        memo = self._memo
        stack = [mask]
        # iterative post-order to avoid deep recursion on large graphs
        while stack:
            m = stack[-1]
            if m in memo:
                stack.pop()
                continue
            low = m & -m
            i = low.bit_length() - 1
            rest = m ^ low
            pending = False
            total = ZERO
            for bit, w in self._adj[i]:
                if rest & bit:
                    sub = rest ^ bit
                    val = memo.get(sub)
                    if val is None:
                        stack.append(sub)
                        pending = True
                    elif not pending and val:
                        total = total + w * val
            if not pending:
                memo[m] = total
                stack.pop()
        return memo[mask]

    def without(self, removed: Iterable[int]) -> GaussianRational:
        mask = self._full
        for v in removed:
            mask &= ~(1 << self._pos[v])
        if bin(mask).count("1") & 1:
            return ZERO
        return self._count(mask)


def perfmatch(g: PlaneGraph) -> GaussianRational:
    if len(g.nodes) & 1:
        return ZERO
    return MatchingCounter(g).without(())


def signature(g: PlaneGraph) -> SignatureVector:
    k = g.arity
    counter = MatchingCounter(g)
    values = []
    for idx in range(1 << k):
        bits = index_to_bits(idx, k)
        values.append(counter.without(x for x, b in zip(g.externals, bits) if b))
    return SignatureVector(k, values)


# -- parity and the Matchgate Identities ---------------------------------


def check_parity(sig: SignatureVector) -> bool:
    odd = even = False
    for idx, v in enumerate(sig.values):
        if v:
            if bin(idx).count("1") & 1:
                odd = True
            else:
                even = True
    return not (odd and even)


@dataclass(frozen=True)
class MGIResult:
    ok: bool
    alpha: int | None = None
    beta: int | None = None
    residual: GaussianRational | None = None
    arity: int = 0

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "all matchgate identities hold"
        k = self.arity
        return (
            f"violation at alpha={bitstring(self.alpha, k)} beta={bitstring(self.beta, k)}: "
            f"residual {fmt(self.residual)}"
        )


def mgi_residual(sig: SignatureVector, alpha: int, beta: int) -> GaussianRational:
    """Left-hand side of the identity for the ordered pair (alpha, beta)."""
    k = sig.arity
    vals = sig.values
    diff = alpha ^ beta
    total = ZERO
    i = 0
    for p in range(1, k + 1):
        bit = 1 << (k - p)
        if diff & bit:
            i += 1
            a, b = vals[alpha ^ bit], vals[beta ^ bit]
            if a and b:
                total = total + a * b if i % 2 == 0 else total - a * b
    return total


def check_mgi(sig: SignatureVector) -> MGIResult:
    """Evaluate every ordered pair; report the first nonzero residual."""
    k = sig.arity
    n = 1 << k
    support = set(sig.support())
    bits = [1 << (k - p) for p in range(1, k + 1)]
    for alpha in range(n):
        # a term needs alpha^e_p in the support, so alpha is adjacent to it
        if not any(alpha ^ b in support for b in bits):
            continue
        for beta in range(n):
            r = mgi_residual(sig, alpha, beta)
            if r:
                return MGIResult(False, alpha, beta, r, k)
    return MGIResult(True, arity=k)


def mgi_implies_parity_witness(sig: SignatureVector) -> MGIResult | None:
    """If parity fails, the identity instance that exhibits it.

    Shifts the vector by an even-weight index alpha in its support, takes
    the odd-weight beta' of minimum weight in the shifted support, and
    instantiates the identity at (e_p1, beta' ^ e_p1) shifted back by alpha.
    The residual of that instance is -Gamma^alpha Gamma^(beta' ^ alpha).
    """
    if check_parity(sig):
        return None
    k = sig.arity
    vals = sig.values
    weight = lambda x: bin(x).count("1")  # noqa: E731
    alpha = next(i for i, v in enumerate(vals) if v and weight(i) % 2 == 0)
    shifted = [vals[g ^ alpha] for g in range(1 << k)]
    beta1 = min((g for g, v in enumerate(shifted) if v and weight(g) & 1), key=lambda g: (weight(g), g))
    p1 = next(p for p in range(1, k + 1) if beta1 & (1 << (k - p)))
    e = 1 << (k - p1)
    a, b = e ^ alpha, beta1 ^ e ^ alpha
    return MGIResult(False, a, b, mgi_residual(sig, a, b), k)
