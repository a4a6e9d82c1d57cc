"""Plane graphs given by a rotation system, with ordered external nodes.

A :class:`PlaneGraph` never stores coordinates.  Its embedding is the
counterclockwise cyclic order of neighbours around every node plus, for
every connected component that has edges, one designated *outer dart*
whose left face is that component's outer face.  Face walks keep the face
on their left, so an inner face is walked counterclockwise and the outer
face of a component is walked clockwise around the component.

Components are understood to sit side by side in a common outer region.
External nodes must lie on the outer walk of their component in the given
(clockwise) order, and the components must not interleave along that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .numeric import ONE, GaussianRational, as_gr

Dart = tuple[int, int]
Edge = tuple[int, int]

__all__ = [
    "EmbeddingError",
    "PlaneGraph",
    "FaceWalk",
    "edge_key",
    "as_bits",
    "bits_to_index",
    "index_to_bits",
    "trace_faces",
    "faces",
    "remove_externals",
    "preprocess",
    "is_connected",
    "components",
]


class EmbeddingError(ValueError):
    """Raised when a graph violates a PlaneGraph invariant.

    ``kind`` names the offending part ("node", "edge", "rotation", "outer"
    or "external") and ``item`` identifies it, so file readers can point at
    the line that introduced it.
    """

    def __init__(self, message: str, kind: str | None = None, item=None):
        super().__init__(message)
        self.kind = kind
        self.item = item


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


# -- removal patterns ---------------------------------------------------------


def as_bits(alpha, k: int) -> tuple[int, ...]:
    """Normalise a removal pattern to a tuple of k bits.

    Accepts a bit string (``"0110"``), a sequence of 0/1, or an integer
    index whose most significant bit is position 1.
    """
    if isinstance(alpha, str):
        if len(alpha) != k or any(c not in "01" for c in alpha):
            raise ValueError(f"pattern {alpha!r} is not a {k}-bit string")
        return tuple(int(c) for c in alpha)
    if isinstance(alpha, int):
        if not 0 <= alpha < (1 << k):
            raise ValueError(f"index {alpha} out of range for arity {k}")
        return index_to_bits(alpha, k)
    bits = tuple(int(b) for b in alpha)
    if len(bits) != k or any(b not in (0, 1) for b in bits):
        raise ValueError(f"pattern {alpha!r} is not a {k}-bit sequence")
    return bits


def bits_to_index(bits: Sequence[int]) -> int:
    idx = 0
    for b in bits:
        idx = (idx << 1) | b
    return idx


def index_to_bits(idx: int, k: int) -> tuple[int, ...]:
    return tuple((idx >> (k - 1 - p)) & 1 for p in range(k))


# -- raw rotation-system helpers ---------------------------------------------


def trace_faces(rotation: Mapping[int, Sequence[int]]) -> list[list[Dart]]:
    """Face walks of a rotation system, each keeping its face on the left.

    The successor of dart (u, v) is (v, w) where w precedes u in the
    counterclockwise order around v.
    """
    where = {v: {w: i for i, w in enumerate(nbrs)} for v, nbrs in rotation.items()}
    seen: set[Dart] = set()
    walks = []
    for v in sorted(rotation):
        for w in rotation[v]:
            dart = (v, w)
            if dart in seen:
                continue
            walk = []
            while dart not in seen:
                seen.add(dart)
                walk.append(dart)
                a, b = dart
                nbrs = rotation[b]
                dart = (b, nbrs[where[b][a] - 1])
            walks.append(walk)
    return walks


def _components(nodes: Iterable[int], edges: Iterable[Edge]) -> dict[int, int]:
    parent = {v: v for v in nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    return {v: find(v) for v in parent}


def _cyclic_match(seq: Sequence[int], targets: Sequence[int]) -> list[int] | None:
    """Positions in the cyclic sequence ``seq`` hitting ``targets`` in order."""
    n = len(seq)
    if not targets:
        return []
    for start in (i for i, v in enumerate(seq) if v == targets[0]):
        found = [start]
        pos = start
        for t in targets[1:]:
            step = 1
            while step < n and seq[(pos + step) % n] != t:
                step += 1
            if step >= n or (pos + step) - start >= n:
                break
            pos += step
            found.append(pos % n)
        else:
            return found
    return None


def _noncrossing(labels: Sequence[int]) -> bool:
    """True if no cyclic pattern c..d..c..d occurs for distinct labels c, d."""
    blocks = sorted(set(labels))
    for i, c in enumerate(blocks):
        for d in blocks[i + 1 :]:
            sub = [x for x in labels if x in (c, d)]
            runs = sum(1 for j in range(len(sub)) if sub[j] != sub[j - 1])
            if runs > 2:
                return False
    return True


@dataclass(frozen=True)
class FaceWalk:
    darts: tuple[Dart, ...]
    outer: bool

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(d[0] for d in self.darts)

    def __len__(self):
        return len(self.darts)


class PlaneGraph:
    """Weighted plane graph with an ordered tuple of external nodes.

    Parameters
    ----------
    nodes : iterable of positive ints
    edges : mapping ``(u, v) -> weight``; weights must be nonzero
    rotation : mapping ``node -> neighbours in counterclockwise order``;
        nodes without edges may be omitted
    outer : a dart ``(u, v)``, a sequence of darts (one per component with
        edges), or None when every such component has a single face
    externals : external node ids in clockwise order
    """

    __slots__ = (
        "nodes",
        "edges",
        "rotation",
        "outer",
        "externals",
        "_walks",
        "_face_of",
        "_outer_faces",
        "_comp",
    )

    def __init__(self, nodes, edges, rotation, outer=None, externals=()):
        nodes = tuple(sorted(set(nodes)))
        if any((not isinstance(v, int)) or v <= 0 for v in nodes):
            raise EmbeddingError("node ids must be positive integers", "node")
        node_set = set(nodes)
        weights: dict[Edge, GaussianRational] = {}
        for (u, v), w in dict(edges).items():
            if u == v:
                raise EmbeddingError(f"self-loop at node {u}", "edge", (u, v))
            if u not in node_set or v not in node_set:
                raise EmbeddingError(f"edge {{{u},{v}}} uses an unknown node", "edge", (u, v))
            key = edge_key(u, v)
            if key in weights:
                raise EmbeddingError(f"duplicate edge {{{u},{v}}}", "edge", (u, v))
            w = as_gr(w)
            if not w:
                raise EmbeddingError(f"edge {{{u},{v}}} has zero weight", "edge", (u, v))
            weights[key] = w
        rot = {v: tuple(rotation.get(v, ())) for v in nodes}
        extra = set(rotation) - node_set
        if extra:
            raise EmbeddingError(f"rotation given for unknown nodes {sorted(extra)}", "rotation", min(extra))
        for v, nbrs in rot.items():
            if len(set(nbrs)) != len(nbrs):
                raise EmbeddingError(f"rotation at {v} repeats a neighbour", "rotation", v)
            for w in nbrs:
                if edge_key(v, w) not in weights:
                    raise EmbeddingError(f"rotation at {v} lists non-edge to {w}", "rotation", v)
        for u, v in weights:
            for a, b in ((u, v), (v, u)):
                if b not in rot[a]:
                    raise EmbeddingError(f"rotation at {a} misses edge {{{u},{v}}}", "rotation", a)

        externals = tuple(externals)
        if len(set(externals)) != len(externals):
            raise EmbeddingError("external nodes must be distinct", "external")
        for x in externals:
            if x not in node_set:
                raise EmbeddingError(f"external node {x} is not a node", "external")

        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", weights)
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "externals", externals)
        object.__setattr__(self, "_comp", _components(nodes, weights))
        walks = trace_faces(rot)
        face_of = {d: i for i, walk in enumerate(walks) for d in walk}
        object.__setattr__(self, "_walks", walks)
        object.__setattr__(self, "_face_of", face_of)
        self._check_euler()
        object.__setattr__(self, "outer", self._resolve_outer(outer))
        object.__setattr__(
            self, "_outer_faces", frozenset(face_of[d] for d in self.outer)
        )
        self._check_externals()

    def __setattr__(self, name, value):
        raise AttributeError("PlaneGraph is immutable")

    # -- validation ---------------------------------------------------------

    def _check_euler(self):
        counts: dict[int, list[int]] = {}
        for v in self.nodes:
            counts.setdefault(self._comp[v], [0, 0, 0])[0] += 1
        for u, _ in self.edges:
            counts[self._comp[u]][1] += 1
        for walk in self._walks:
            counts[self._comp[walk[0][0]]][2] += 1
        for root, (nv, ne, nf) in counts.items():
            if ne and nv - ne + nf != 2:
                raise EmbeddingError(
                    f"rotation system of the component of node {root} is not planar "
                    f"(V-E+F = {nv - ne + nf})",
                    "rotation",
                    root,
                )

    def _resolve_outer(self, outer) -> tuple[Dart, ...]:
        if outer is None:
            darts = []
        elif len(outer) == 2 and all(isinstance(x, int) for x in outer):
            darts = [tuple(outer)]
        else:
            darts = [tuple(d) for d in outer]
        chosen: dict[int, Dart] = {}
        for d in darts:
            if d not in self._face_of:
                raise EmbeddingError(f"outer dart {d} is not a dart of the graph", "outer", d)
            comp = self._comp[d[0]]
            if comp in chosen:
                raise EmbeddingError(
                    f"two outer darts given for one component: {chosen[comp]}, {d}", "outer", d
                )
            chosen[comp] = d
        roots_with_edges = sorted({self._comp[u] for u, _ in self.edges})
        for root in roots_with_edges:
            if root in chosen:
                continue
            comp_faces = {i for i, w in enumerate(self._walks) if self._comp[w[0][0]] == root}
            if len(comp_faces) != 1:
                raise EmbeddingError(
                    f"component of node {root} has several faces but no outer dart", "outer"
                )
            chosen[root] = self._walks[comp_faces.pop()][0]
        return tuple(chosen[r] for r in roots_with_edges)

    def _check_externals(self):
        by_comp: dict[int, list[int]] = {}
        for x in self.externals:
            by_comp.setdefault(self._comp[x], []).append(x)
        for root, exts in by_comp.items():
            if not self.rotation[exts[0]] and len(exts) == 1:
                continue
            walk = self.outer_walk(exts[0])
            if walk is None:
                continue
            seq = [d[0] for d in walk]
            if _cyclic_match(seq, exts) is None:
                raise EmbeddingError(
                    f"external nodes {exts} do not lie in clockwise order on the outer face",
                    "external",
                )
        if not _noncrossing([self._comp[x] for x in self.externals]):
            raise EmbeddingError("external nodes of different components interleave", "external")

    # -- basic queries --------------------------------------------------------

    @property
    def arity(self) -> int:
        return len(self.externals)

    def weight(self, u: int, v: int) -> GaussianRational:
        return self.edges[edge_key(u, v)]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotation[v]

    def component_of(self, v: int) -> int:
        return self._comp[v]

    def faces(self) -> list[FaceWalk]:
        return [
            FaceWalk(tuple(w), i in self._outer_faces) for i, w in enumerate(self._walks)
        ]

    def face_index(self, dart: Dart) -> int:
        return self._face_of[dart]

    def is_outer_face(self, index: int) -> bool:
        return index in self._outer_faces

    def outer_walk(self, v: int) -> list[Dart] | None:
        """Outer face walk of the component containing ``v`` (None if isolated)."""
        comp = self._comp[v]
        for d in self.outer:
            if self._comp[d[0]] == comp:
                return list(self._walks[self._face_of[d]])
        return None

    def external_corners(self) -> list[int | None]:
        """For each external node, the neighbour it is entered from on its outer walk.

        A new edge inserted just before that neighbour in the node's
        counterclockwise order lands in the outer face at the position
        matching the external order.  None marks an isolated external.
        """
        corners: list[int | None] = [None] * len(self.externals)
        by_comp: dict[int, list[int]] = {}
        for i, x in enumerate(self.externals):
            by_comp.setdefault(self._comp[x], []).append(i)
        for idxs in by_comp.values():
            walk = self.outer_walk(self.externals[idxs[0]])
            if walk is None:
                continue
            seq = [d[0] for d in walk]
            positions = _cyclic_match(seq, [self.externals[i] for i in idxs])
            for i, p in zip(idxs, positions):
                corners[i] = walk[p - 1][0]
        return corners

    def components(self) -> list[tuple[int, ...]]:
        groups: dict[int, list[int]] = {}
        for v in self.nodes:
            groups.setdefault(self._comp[v], []).append(v)
        return [tuple(groups[r]) for r in sorted(groups)]

    def is_connected(self) -> bool:
        return len(set(self._comp.values())) == 1

    def __eq__(self, other):
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return (
            self.nodes == other.nodes
            and self.edges == other.edges
            and self.externals == other.externals
            and all(_same_cycle(self.rotation[v], other.rotation[v]) for v in self.nodes)
            and {self._face_of[d] for d in self.outer} == {self._face_of[d] for d in other.outer}
            if self.nodes == other.nodes and self.edges == other.edges
            else False
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"PlaneGraph(nodes={len(self.nodes)}, edges={len(self.edges)}, "
            f"externals={self.externals})"
        )

    # -- derived graphs -------------------------------------------------------

    def restricted(
        self,
        keep_nodes: Iterable[int],
        keep_edges: Iterable[Edge] | None = None,
        externals: Sequence[int] | None = None,
        weights: Mapping[Edge, GaussianRational] | None = None,
    ) -> "PlaneGraph":
        """Subgraph with the induced embedding.

        Each surviving component keeps an outer face that contains a dart of
        its former outer face; components cut loose inside an inner face take
        the face left behind by the deleted elements.
        """
        keep_nodes = set(keep_nodes)
        if keep_edges is None:
            keep_edges = {e for e in self.edges if e[0] in keep_nodes and e[1] in keep_nodes}
        else:
            keep_edges = {edge_key(*e) for e in keep_edges}
            keep_edges = {e for e in keep_edges if e[0] in keep_nodes and e[1] in keep_nodes}
        if externals is None:
            externals = [x for x in self.externals if x in keep_nodes]
        rotation = {
            v: [w for w in self.rotation[v] if edge_key(v, w) in keep_edges] for v in keep_nodes
        }
        removed = set(self.edges) - keep_edges
        candidates = []
        for d in self.outer:
            candidates.extend(self._walks[self._face_of[d]])
        for u, v in sorted(removed):
            for d in ((u, v), (v, u)):
                candidates.extend(self._walks[self._face_of[d]])
        candidates = [d for d in candidates if edge_key(*d) in keep_edges]
        new_weights = {e: (weights or self.edges).get(e, self.edges.get(e)) for e in keep_edges}
        outer = choose_outer(keep_nodes, keep_edges, candidates)
        return PlaneGraph(keep_nodes, new_weights, rotation, outer, externals)

    def remove_externals(self, alpha) -> "PlaneGraph":
        bits = as_bits(alpha, self.arity)
        gone = {x for x, b in zip(self.externals, bits) if b}
        return self.restricted(set(self.nodes) - gone)

    def without_zero_weights(self, weights: Mapping[Edge, object]) -> "PlaneGraph":
        """Reweight edges; edges whose new weight is zero are deleted."""
        new = {e: as_gr(weights.get(e, self.edges[e])) for e in self.edges}
        keep = {e for e, w in new.items() if w}
        return self.restricted(self.nodes, keep, self.externals, new)

    def relabeled(self, mapping: Mapping[int, int], externals=None) -> "PlaneGraph":
        m = lambda v: mapping.get(v, v)  # noqa: E731
        return PlaneGraph(
            [m(v) for v in self.nodes],
            {edge_key(m(u), m(v)): w for (u, v), w in self.edges.items()},
            {m(v): [m(w) for w in nbrs] for v, nbrs in self.rotation.items()},
            [(m(a), m(b)) for a, b in self.outer],
            [m(x) for x in (self.externals if externals is None else externals)],
        )

    def with_externals(self, externals: Sequence[int]) -> "PlaneGraph":
        return PlaneGraph(self.nodes, self.edges, self.rotation, self.outer, externals)


def _same_cycle(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    if a[0] not in b:
        return False
    s = list(b).index(a[0])
    return list(a) == list(b[s:]) + list(b[:s])


def choose_outer(nodes, edges, candidates: Sequence[Dart]) -> list[Dart]:
    """Pick one outer dart per component from an ordered candidate list."""
    comp = _components(nodes, edges)
    chosen: dict[int, Dart] = {}
    for d in candidates:
        chosen.setdefault(comp[d[0]], d)
    missing = {comp[u] for u, _ in edges} - set(chosen)
    if missing:
        raise EmbeddingError(f"no outer face known for components {sorted(missing)}")
    return list(chosen.values())


def insert_before(rotation: dict[int, list[int]], v: int, anchor: int | None, new: int):
    """Insert ``new`` just before ``anchor`` in the ccw order around ``v``."""
    nbrs = rotation.setdefault(v, [])
    if anchor is None:
        if nbrs:
            raise EmbeddingError(f"node {v} is not isolated; a corner is required")
        nbrs.append(new)
        return
    nbrs.insert(nbrs.index(anchor), new)


def insert_after(rotation: dict[int, list[int]], v: int, anchor: int, new: int):
    nbrs = rotation[v]
    nbrs.insert(nbrs.index(anchor) + 1, new)


# -- module-level operations --------------------------------------------------


def faces(g: PlaneGraph) -> list[FaceWalk]:
    return g.faces()


def remove_externals(g: PlaneGraph, alpha) -> PlaneGraph:
    return g.remove_externals(alpha)


def is_connected(g: PlaneGraph) -> bool:
    return g.is_connected()


def components(g: PlaneGraph) -> list[tuple[int, ...]]:
    return g.components()


def preprocess(g: PlaneGraph) -> PlaneGraph:
    """Attach a weight-1 pendant path to every external node and connect the graph.

    External i of the result is labelled i and its new neighbour 2k+1-i;
    original nodes keep their relative order from label 2k+1 on.
    Components are joined by a path u - w - v with an extra leaf w' on w,
    all weights 1, so that w is always matched to w' and the signature is
    unchanged.
    """
    k = g.arity
    relabel = {v: 2 * k + 1 + i for i, v in enumerate(g.nodes)}
    hat = lambda i: 2 * k + 1 - i  # noqa: E731  (i is 1-based)
    corners = g.external_corners()

    nodes = [relabel[v] for v in g.nodes]
    edges = {edge_key(relabel[u], relabel[v]): w for (u, v), w in g.edges.items()}
    rotation = {relabel[v]: [relabel[w] for w in nbrs] for v, nbrs in g.rotation.items()}
    for i, (x, corner) in enumerate(zip(g.externals, corners), start=1):
        o = relabel[x]
        insert_before(rotation, o, None if corner is None else relabel[corner], hat(i))
        rotation[hat(i)] = [i, o]
        rotation[i] = [hat(i)]
        nodes += [i, hat(i)]
        edges[edge_key(i, hat(i))] = ONE
        edges[edge_key(o, hat(i))] = ONE

    next_label = 2 * k + len(g.nodes) + 1
    comp = _components(nodes, edges)
    parent = {r: r for r in set(comp.values())}

    def root(v):
        r = comp[v]
        while parent[r] != r:
            r = parent[r]
        return r

    gadget_darts: list[Dart] = []

    def join(u, v, u_anchor, v_anchor, v_after=False):
        nonlocal next_label
        w, w2 = next_label, next_label + 1
        next_label += 2
        insert_before(rotation, u, u_anchor, w)
        if v_after:
            insert_after(rotation, v, v_anchor, w)
        else:
            insert_before(rotation, v, v_anchor, w)
        rotation[w] = [u, w2, v]
        rotation[w2] = [w]
        nodes.extend([w, w2])
        for e in ((u, w), (w, v), (w, w2)):
            edges[edge_key(*e)] = ONE
        gadget_darts.append((w, w2))
        ru, rv = root(u), root(v)
        parent[max(ru, rv)] = min(ru, rv)

    for m in range(1, k):
        if root(m) != root(m + 1):
            join(hat(m), hat(m + 1), m, m + 1, v_after=True)

    old_outer = [(relabel[a], relabel[b]) for a, b in g.outer]
    outer_by_root = {}
    for d in old_outer:
        outer_by_root.setdefault(comp[d[0]], d)

    # components without external nodes hang off the outer face
    anchored = {root(m) for m in range(1, k + 1)}
    pending = sorted(r for r in set(comp.values()) if root(r) not in anchored)
    if k:
        hub, hub_anchor = hat(k), k
    elif pending:
        first = pending.pop(0)
        d = outer_by_root.get(first)
        hub, hub_anchor = (d[1], d[0]) if d else (first, None)
    for r in pending:
        d = outer_by_root.get(r)
        v, v_anchor = (d[1], d[0]) if d else (r, None)
        if hub_anchor is None:
            # the hub was an isolated node: it now has the gadget as its only neighbour
            join(hub, v, None, v_anchor)
            hub_anchor = rotation[hub][0]
        else:
            join(hub, v, hub_anchor, v_anchor)

    candidates = ([(hat(1), 1)] if k else []) + old_outer + gadget_darts
    outer = choose_outer(nodes, edges, [d for d in candidates if edge_key(*d) in edges])
    return PlaneGraph(nodes, edges, rotation, outer, list(range(1, k + 1)))
