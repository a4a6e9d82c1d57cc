"""Line-oriented text formats for matchgates, matrices and signatures.

All formats are UTF-8, ignore blank lines and ``#`` comments, and start
with a header naming the format:

* ``matchgate v1`` (or ``mg v1``): ``node``, ``edge``, ``rotation``,
  ``outer`` and ``external`` lines;
* ``omg v1``: the same with ``arc <u> <v> <weight>`` lines giving directions;
* ``skew v1``: ``labels`` and ``entry <u> <v> <weight>`` lines with u < v;
* ``sig v1 arity <k>``: ``<bitstring> <weight>`` for each nonzero entry;
* ``gmg v1``: ``node``, ``edge``, ``inputs``, ``outputs``, ``omittable``.

Writers emit a canonical form, so equal objects give identical bytes.
"""

from __future__ import annotations

from pathlib import Path

from .numeric import LiteralError, parse
from .numeric import format as fmt
from .kasteleyn import OrientedPlaneGraph
from .pfaffian import SkewMatrix
from .planegraph import EmbeddingError, PlaneGraph, edge_key
from .signature import SignatureVector, bitstring

__all__ = [
    "FormatError",
    "loads",
    "dumps",
    "load",
    "dump",
    "read_matchgate",
    "write_matchgate",
    "read_oriented",
    "write_oriented",
    "read_skew",
    "write_skew",
    "read_signature",
    "write_signature",
    "read_general",
    "write_general",
]


class FormatError(ValueError):
    """Malformed or invalid input; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


def _records(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body


def _int(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise FormatError(lineno, f"expected an integer, got {token!r}") from None
    if value <= 0:
        raise FormatError(lineno, f"ids must be positive, got {value}")
    return value


def _weight(token: str, lineno: int):
    try:
        return parse(token)
    except LiteralError as exc:
        raise FormatError(lineno, f"bad weight {token!r} (column {exc.pos})") from None


def _header(records, allowed: tuple[str, ...]):
    try:
        lineno, body = next(records)
    except StopIteration:
        raise FormatError(1, "empty file") from None
    if not any(body == h or body.startswith(h + " ") for h in allowed):
        raise FormatError(lineno, f"expected header {allowed[0]!r}, got {body!r}")
    return lineno, body


# -- matchgates ---------------------------------------------------------------


def _read_plane(text: str, oriented: bool):
    records = _records(text)
    headers = ("omg v1",) if oriented else ("matchgate v1", "mg v1")
    head_line, _ = _header(records, headers)
    nodes: list[int] = []
    node_line: dict[int, int] = {}
    edges = {}
    edge_line = {}
    direction = {}
    rotation: dict[int, list[int]] = {}
    rot_line: dict[int, int] = {}
    outer = []
    outer_line: dict[tuple[int, int], int] = {}
    externals: list[int] = []
    ext_line = None
    edge_word = "arc" if oriented else "edge"
    for lineno, body in records:
        word, _, rest = body.partition(" ")
        if word == "node":
            parts = rest.split()
            if len(parts) != 1:
                raise FormatError(lineno, "node lines take one id")
            v = _int(parts[0], lineno)
            if v in node_line:
                raise FormatError(lineno, f"node {v} declared twice")
            if nodes and v < nodes[-1]:
                raise FormatError(lineno, "node lines must be in ascending order")
            nodes.append(v)
            node_line[v] = lineno
        elif word == edge_word:
            parts = rest.split()
            if len(parts) != 3:
                raise FormatError(lineno, f"{edge_word} lines take two ids and a weight")
            u, v = _int(parts[0], lineno), _int(parts[1], lineno)
            if not oriented and u >= v:
                raise FormatError(lineno, "edge endpoints must satisfy u < v")
            if u == v:
                raise FormatError(lineno, "self-loops are not allowed")
            key = edge_key(u, v)
            if key in edges:
                raise FormatError(lineno, f"duplicate edge {{{u},{v}}}")
            edges[key] = _weight(parts[2], lineno)
            edge_line[key] = lineno
            direction[key] = (u, v)
        elif word == "rotation":
            head, sep, tail = rest.partition(":")
            if not sep:
                raise FormatError(lineno, "rotation lines look like 'rotation <id>: <ids>'")
            v = _int(head.strip(), lineno)
            if v in rot_line:
                raise FormatError(lineno, f"second rotation for node {v}")
            rotation[v] = [_int(t, lineno) for t in tail.split()]
            rot_line[v] = lineno
        elif word == "outer":
            parts = rest.split()
            if len(parts) != 2:
                raise FormatError(lineno, "outer lines take two ids")
            d = (_int(parts[0], lineno), _int(parts[1], lineno))
            outer.append(d)
            outer_line[d] = lineno
        elif word == "external":
            if ext_line is not None:
                raise FormatError(lineno, "only one external line is allowed")
            externals = [_int(t, lineno) for t in rest.split()]
            ext_line = lineno
        else:
            raise FormatError(lineno, f"unknown record {word!r}")

    try:
        g = PlaneGraph(nodes, edges, rotation, outer or None, externals)
    except EmbeddingError as exc:
        raise FormatError(
            _blame(exc, head_line, node_line, edge_line, rot_line, outer_line, ext_line), str(exc)
        ) from None
    if oriented:
        return OrientedPlaneGraph(g, direction)
    return g


def _blame(exc, head_line, node_line, edge_line, rot_line, outer_line, ext_line) -> int:
    kind, item = exc.kind, exc.item
    if kind == "edge" and item is not None:
        return edge_line.get(edge_key(*item), head_line)
    if kind == "rotation":
        if item in rot_line:
            return rot_line[item]
        return node_line.get(item, min(rot_line.values(), default=head_line))
    if kind == "outer":
        return outer_line.get(item, min(outer_line.values(), default=head_line))
    if kind == "external" and ext_line is not None:
        return ext_line
    if kind == "node":
        return min(node_line.values(), default=head_line)
    return head_line


def read_matchgate(text: str) -> PlaneGraph:
    return _read_plane(text, oriented=False)


def read_oriented(text: str) -> OrientedPlaneGraph:
    return _read_plane(text, oriented=True)


def _write_plane(g: PlaneGraph, header: str, arcs=None) -> str:
    out = [header]
    out += [f"node {v}" for v in g.nodes]
    if arcs is None:
        out += [f"edge {u} {v} {fmt(w)}" for (u, v), w in sorted(g.edges.items())]
    else:
        out += [f"arc {u} {v} {fmt(w)}" for u, v, w in arcs]
    for v in g.nodes:
        out.append(f"rotation {v}: " + " ".join(map(str, g.rotation[v])) if g.rotation[v] else f"rotation {v}:")
    out += [f"outer {u} {v}" for u, v in g.outer]
    out.append("external" + "".join(f" {x}" for x in g.externals))
    return "\n".join(out) + "\n"


def write_matchgate(g: PlaneGraph) -> str:
    return _write_plane(g, "matchgate v1")


def write_oriented(h: OrientedPlaneGraph) -> str:
    return _write_plane(h.base, "omg v1", h.arcs())


# -- skew matrices ------------------------------------------------------------


def read_skew(text: str) -> SkewMatrix:
    records = _records(text)
    _header(records, ("skew v1",))
    labels = None
    entries = {}
    for lineno, body in records:
        word, _, rest = body.partition(" ")
        if word == "labels":
            if labels is not None:
                raise FormatError(lineno, "only one labels line is allowed")
            labels = [_int(t, lineno) for t in rest.split()]
            if len(set(labels)) != len(labels):
                raise FormatError(lineno, "labels must be distinct")
        elif word == "entry":
            if labels is None:
                raise FormatError(lineno, "entry before labels")
            parts = rest.split()
            if len(parts) != 3:
                raise FormatError(lineno, "entry lines take two labels and a weight")
            u, v = _int(parts[0], lineno), _int(parts[1], lineno)
            if not u < v:
                raise FormatError(lineno, "entries are given for u < v only")
            if u not in labels or v not in labels:
                raise FormatError(lineno, "entry uses an unknown label")
            if (u, v) in entries:
                raise FormatError(lineno, f"duplicate entry ({u},{v})")
            entries[(u, v)] = _weight(parts[2], lineno)
        else:
            raise FormatError(lineno, f"unknown record {word!r}")
    return SkewMatrix(labels or [], entries)


def write_skew(m: SkewMatrix) -> str:
    out = ["skew v1", "labels" + "".join(f" {v}" for v in m.labels)]
    out += [f"entry {u} {v} {fmt(w)}" for (u, v), w in sorted(m.upper_entries().items())]
    return "\n".join(out) + "\n"


# -- signatures ---------------------------------------------------------------


def read_signature(text: str) -> SignatureVector:
    records = _records(text)
    head_line, head = _header(records, ("sig v1",))
    parts = head.split()
    if len(parts) != 4 or parts[2] != "arity":
        raise FormatError(head_line, "header must be 'sig v1 arity <k>'")
    try:
        k = int(parts[3])
    except ValueError:
        raise FormatError(head_line, f"bad arity {parts[3]!r}") from None
    if k < 0:
        raise FormatError(head_line, "arity must be non-negative")
    entries = {}
    for lineno, body in records:
        parts = body.split()
        if len(parts) != 2:
            raise FormatError(lineno, "entry lines look like '<bitstring> <weight>'")
        bits = "" if parts[0] == '""' else parts[0]
        if len(bits) != k or any(c not in "01" for c in bits):
            raise FormatError(lineno, f"{parts[0]!r} is not a {k}-bit string")
        if bits in entries:
            raise FormatError(lineno, f"duplicate entry for {bits or chr(34) * 2}")
        entries[bits] = _weight(parts[1], lineno)
    return SignatureVector.from_entries(k, {(b if k else 0): w for b, w in entries.items()})


def write_signature(sig: SignatureVector) -> str:
    out = [f"sig v1 arity {sig.arity}"]
    for idx, v in enumerate(sig.values):
        if v:
            bits = bitstring(idx, sig.arity) or '""'
            out.append(f"{bits} {fmt(v)}")
    return "\n".join(out) + "\n"


# -- general matchgates ---------------------------------------------------------


def read_general(text: str):
    from .character import GeneralMatchgate

    records = _records(text)
    head_line, _ = _header(records, ("gmg v1",))
    nodes: list[int] = []
    edges = {}
    sets = {"inputs": [], "outputs": [], "omittable": []}
    set_line: dict[str, int] = {}
    for lineno, body in records:
        word, _, rest = body.partition(" ")
        if word == "node":
            parts = rest.split()
            if len(parts) != 1:
                raise FormatError(lineno, "node lines take one id")
            v = _int(parts[0], lineno)
            if v in nodes:
                raise FormatError(lineno, f"node {v} declared twice")
            nodes.append(v)
        elif word == "edge":
            parts = rest.split()
            if len(parts) != 3:
                raise FormatError(lineno, "edge lines take two ids and a weight")
            u, v = _int(parts[0], lineno), _int(parts[1], lineno)
            if u >= v:
                raise FormatError(lineno, "edge endpoints must satisfy u < v")
            if u not in nodes or v not in nodes:
                raise FormatError(lineno, "edge uses an undeclared node")
            if (u, v) in edges:
                raise FormatError(lineno, f"duplicate edge {{{u},{v}}}")
            edges[(u, v)] = _weight(parts[2], lineno)
        elif word in sets:
            if word in set_line:
                raise FormatError(lineno, f"only one {word} line is allowed")
            sets[word] = [_int(t, lineno) for t in rest.split()]
            set_line[word] = lineno
            for v in sets[word]:
                if v not in nodes:
                    raise FormatError(lineno, f"{v} is not a declared node")
        else:
            raise FormatError(lineno, f"unknown record {word!r}")
    try:
        return GeneralMatchgate(nodes, edges, sets["inputs"], sets["outputs"], sets["omittable"])
    except ValueError as exc:
        line = max(set_line.values(), default=head_line)
        raise FormatError(line, str(exc)) from None


def write_general(g) -> str:
    out = ["gmg v1"]
    out += [f"node {v}" for v in g.nodes]
    out += [f"edge {u} {v} {fmt(w)}" for (u, v), w in sorted(g.edges.items())]
    out.append("inputs" + "".join(f" {v}" for v in g.inputs))
    out.append("outputs" + "".join(f" {v}" for v in g.outputs))
    out.append("omittable" + "".join(f" {v}" for v in g.omittable))
    return "\n".join(out) + "\n"


# -- dispatch -----------------------------------------------------------------

_READERS = {
    "matchgate": read_matchgate,
    "mg": read_matchgate,
    "omg": read_oriented,
    "skew": read_skew,
    "sig": read_signature,
    "gmg": read_general,
}


def loads(text: str):
    """Parse any supported format, chosen by its header."""
    first = next(_records(text), None)
    if first is None:
        raise FormatError(1, "empty file")
    kind = first[1].split()[0]
    reader = _READERS.get(kind)
    if reader is None:
        raise FormatError(first[0], f"unknown format {kind!r}")
    return reader(text)


def dumps(obj) -> str:
    from .character import GeneralMatchgate

    if isinstance(obj, PlaneGraph):
        return write_matchgate(obj)
    if isinstance(obj, OrientedPlaneGraph):
        return write_oriented(obj)
    if isinstance(obj, SkewMatrix):
        return write_skew(obj)
    if isinstance(obj, SignatureVector):
        return write_signature(obj)
    if isinstance(obj, GeneralMatchgate):
        return write_general(obj)
    raise TypeError(f"no text format for {type(obj).__name__}")


def load(path):
    return loads(Path(path).read_text(encoding="utf-8"))


def dump(obj, path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")
