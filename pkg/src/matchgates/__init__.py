"""Planar matchgates: signatures, Pfaffians, the matchgate identities and realizations."""

from .numeric import GaussianRational, LiteralError, parse
from .planegraph import EmbeddingError, PlaneGraph, preprocess
from .pfaffian import SkewMatrix, pfaffian, pfaffian_minor
from .kasteleyn import OrientedPlaneGraph, check_quadruple_product, delta, kasteleyn_orient, verify_kasteleyn
from .signature import SignatureVector, check_mgi, check_parity, perfmatch, signature
from .realize import crossover_gadget, generate_mgi_vector, realize
from .symmetric import check_symmetric_realizable, realize_symmetric, triangle_cycle
from .character import GeneralMatchgate, character, character_to_signatures, naked_character
from .formats import FormatError, dumps, loads

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "LiteralError",
    "parse",
    "EmbeddingError",
    "PlaneGraph",
    "preprocess",
    "SkewMatrix",
    "pfaffian",
    "pfaffian_minor",
    "OrientedPlaneGraph",
    "check_quadruple_product",
    "delta",
    "kasteleyn_orient",
    "verify_kasteleyn",
    "SignatureVector",
    "check_mgi",
    "check_parity",
    "perfmatch",
    "signature",
    "crossover_gadget",
    "generate_mgi_vector",
    "realize",
    "check_symmetric_realizable",
    "realize_symmetric",
    "triangle_cycle",
    "GeneralMatchgate",
    "character",
    "character_to_signatures",
    "naked_character",
    "FormatError",
    "dumps",
    "loads",
]
