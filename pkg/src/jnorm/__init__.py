"""Exact arithmetic in a planar normed space J whose unit circle encodes
multiplication of naturals, plus the translation of Robinson arithmetic into
its purely additive language."""

from .constants import Params, a_closed, closed_forms, validate_params
from .field import EPS, QQ, QQ_EPS, RatFunc, parse_scalar
from .geometry import JSpace, Vec2, VecD, get_space
from .predicates import mgi_holds, mgi_witness, mult_graph_holds, mult_graph_witness

__all__ = [
    "EPS",
    "JSpace",
    "Params",
    "QQ",
    "QQ_EPS",
    "RatFunc",
    "Vec2",
    "VecD",
    "a_closed",
    "closed_forms",
    "get_space",
    "mgi_holds",
    "mgi_witness",
    "mult_graph_holds",
    "mult_graph_witness",
    "parse_scalar",
    "validate_params",
]

__version__ = "0.1.0"
