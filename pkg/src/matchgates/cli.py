"""Command-line front end: ``matchgates <subcommand> ...``.

Exit status is 0 on success, 1 when a checked property fails and 2 when
the input is malformed or violates a precondition.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import tempfile
from pathlib import Path

from . import formats
from .character import GeneralMatchgate, character_to_signatures, naked_character_vector
from .formats import FormatError
from .generators import random_skew
from .kasteleyn import (
    OrientedPlaneGraph,
    delta_table,
    kasteleyn_orient,
    quadruple_product_violation,
    verify_kasteleyn,
)
from .numeric import LiteralError, parse
from .numeric import format as fmt
from .pfaffian import SkewMatrix
from .planegraph import PlaneGraph
from .realize import MGIViolation, generate_mgi_vector, realize
from .signature import SignatureVector, bitstring, check_mgi, signature
from .symmetric import NotRealizable, realize_symmetric

OK, VIOLATION, MALFORMED = 0, 1, 2


class UsageError(Exception):
    """Bad input that is not tied to a line of a file."""


def _load(path: str, kinds: tuple[type, ...]):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        obj = formats.loads(text)
    except FormatError as exc:
        raise FormatError(exc.line, f"{path}: {exc.message}") from None
    if not isinstance(obj, kinds):
        names = " or ".join(k.__name__ for k in kinds)
        raise UsageError(f"{path}: expected {names}, got {type(obj).__name__}")
    return obj


def _write_atomic(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        _write_atomic(Path(out), text)


# -- subcommands ----------------------------------------------------------------


def cmd_sig(args) -> int:
    g = _load(args.input, (PlaneGraph,))
    _emit(formats.dumps(signature(g)), args.output)
    return OK


def cmd_check_mgi(args) -> int:
    sig = _load(args.input, (SignatureVector,))
    result = check_mgi(sig)
    if result.ok:
        print("PASS: " + result.describe())
        return OK
    print("FAIL: " + result.describe())
    return VIOLATION


def cmd_realize(args) -> int:
    sig = _load(args.input, (SignatureVector,))
    try:
        g = realize(sig)
    except MGIViolation as exc:
        print(f"not realizable: {exc.result.describe()}", file=sys.stderr)
        return VIOLATION
    _emit(formats.dumps(g), args.output)
    return OK


def cmd_orient(args) -> int:
    g = _load(args.input, (PlaneGraph,))
    if not g.is_connected():
        raise UsageError(f"{args.input}: Kasteleyn orientation needs a connected graph")
    _emit(formats.dumps(kasteleyn_orient(g)), args.output)
    return OK


def cmd_delta(args) -> int:
    h = _load(args.input, (OrientedPlaneGraph,))
    k = h.arity
    if not 1 <= args.i < args.j <= k:
        raise UsageError(f"need 1 <= i < j <= {k}, got i={args.i}, j={args.j}")
    kasteleyn = verify_kasteleyn(h)
    table = delta_table(h)
    print(f"orientation is {'' if kasteleyn else 'not '}Kasteleyn")
    print("alpha  delta")
    for idx, d in enumerate(table):
        print(f"{bitstring(idx, k):<{max(k, 5)}}  {'-' if d is None else f'{d:+d}'}")
    bi, bj = 1 << (k - args.i), 1 << (k - args.j)
    print(f"quadruple products for i={args.i}, j={args.j}:")
    for b, c in ((0, 0), (0, 1)):
        for ctx in range(1 << k):
            if ctx & (bi | bj):
                continue
            a1 = ctx | (bi if b else 0) | (bj if c else 0)
            a2 = ctx | (0 if b else bi) | (0 if c else bj)
            d1, d2 = table[a1], table[a2]
            prod = "-" if d1 is None or d2 is None else f"{d1 * d2:+d}"
            print(f"  {bitstring(a1, k)} {bitstring(a2, k)}  {prod}")
    bad = quadruple_product_violation(h, args.i, args.j, table)
    if bad is None:
        print("PASS")
        return OK
    print(
        f"FAIL: {bitstring(bad.first[0], k)}/{bitstring(bad.first[1], k)} gives {bad.products[0]:+d}, "
        f"{bitstring(bad.second[0], k)}/{bitstring(bad.second[1], k)} gives {bad.products[1]:+d}"
    )
    return VIOLATION


def cmd_sym(args) -> int:
    z = []
    for pos, token in enumerate(args.entries.split(","), start=1):
        try:
            z.append(parse(token.strip()))
        except LiteralError as exc:
            raise UsageError(f"entry {pos}: bad weight {token!r} (column {exc.pos})") from None
    try:
        g = realize_symmetric(z)
    except NotRealizable as exc:
        print(str(exc), file=sys.stderr)
        return VIOLATION
    _emit(formats.dumps(g), args.output)
    return OK


def cmd_char(args) -> int:
    g = _load(args.input, (GeneralMatchgate,))
    chi = naked_character_vector(g)
    g1, g2 = character_to_signatures(g)
    s1, s2 = signature(g1), signature(g2)
    print("alpha  naked-character")
    for idx, v in enumerate(chi.values):
        label = bitstring(idx, g.arity) or '""'
        print(f"{label:<{max(g.arity, 5)}}  {fmt(v)}")
    ok = all(a + b == c for a, b, c in zip(s1.values, s2.values, chi.values))
    if args.prefix:
        for suffix, obj in (("g1.mg", g1), ("g2.mg", g2), ("g1.sig", s1), ("g2.sig", s2)):
            _write_atomic(Path(f"{args.prefix}{suffix}"), formats.dumps(obj))
    print("PASS: signatures of G1 and G2 add up to the naked character" if ok else "FAIL")
    return OK if ok else VIOLATION


def cmd_gen(args) -> int:
    if args.arity < 0:
        raise UsageError("arity must be non-negative")
    rng = random.Random(args.seed)
    m: SkewMatrix = random_skew(rng, args.arity, density=args.density)
    _emit(formats.dumps(generate_mgi_vector(m)), args.output)
    return OK


# -- entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="matchgates", description="Planar matchgate signature tools.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, infile=True, out=True):
        sp = sub.add_parser(name, help=help)
        if infile:
            sp.add_argument("input", help="input file, or - for stdin")
        if out:
            sp.add_argument("-o", "--output", help="output file (default stdout)")
        sp.set_defaults(func=func)
        return sp

    add("sig", cmd_sig, "signature of a matchgate (mg -> sig)")
    add("check-mgi", cmd_check_mgi, "check the matchgate identities on a sig file", out=False)
    add("realize", cmd_realize, "planar matchgate with a given signature (sig -> mg)")
    add("orient", cmd_orient, "Kasteleyn orientation of a matchgate (mg -> omg)")
    sp = add("delta", cmd_delta, "sign table and quadruple products of an oriented matchgate", out=False)
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--j", type=int, required=True)
    sp = add("sym", cmd_sym, "realize a symmetric signature given as z0,z1,...,zk", infile=False)
    sp.add_argument("entries", help="comma-separated weights, e.g. 1,0,1,0,1")
    sp = add("char", cmd_char, "naked character of a general matchgate and its planar pair", out=False)
    sp.add_argument("--prefix", help="write <prefix>g1.mg, g2.mg, g1.sig and g2.sig")
    sp = add("gen", cmd_gen, "random realizable signature from a random skew matrix", infile=False)
    sp.add_argument("--arity", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--density", type=float, default=0.7, help="chance that an entry is nonzero")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc.message} (line {exc.line})", file=sys.stderr)
        return MALFORMED
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MALFORMED


if __name__ == "__main__":
    sys.exit(main())
