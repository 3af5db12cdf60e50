"""Exact computations on the SL(2,C) character variety of a free group."""

from .autos import abelianization, gama_phi1_det, hyperoctahedral_count, induced_map, jac_det
from .ideal import ideal_generators, magnus_poly
from .poly import Polynomial, PolyMap, format_poly, parse_poly
from .trace import trace_poly
from .words import Word, basic_words, parse_nielsen, parse_word

__all__ = [
    "Polynomial",
    "PolyMap",
    "Word",
    "abelianization",
    "basic_words",
    "format_poly",
    "gama_phi1_det",
    "hyperoctahedral_count",
    "ideal_generators",
    "induced_map",
    "jac_det",
    "magnus_poly",
    "parse_nielsen",
    "parse_poly",
    "parse_word",
    "trace_poly",
]
