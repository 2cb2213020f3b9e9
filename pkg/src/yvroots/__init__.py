"""Exact construction and real-root census of the Yablonskii-Vorob'ev polynomials."""

from .exactpoly import IntPoly, RationalFunction
from .painleve import PoleCensus, pole_census, rational_solution, residue_check, verify_p2
from .rootcensus import IsolatingInterval, RootCensus, SturmChain, build_sturm, census, count_in, isolate, refine
from .yvgen import YVCache, generate, verify_structure

__version__ = "0.1.0"

__all__ = [
    "IntPoly",
    "RationalFunction",
    "YVCache",
    "generate",
    "verify_structure",
    "SturmChain",
    "IsolatingInterval",
    "RootCensus",
    "build_sturm",
    "count_in",
    "isolate",
    "refine",
    "census",
    "rational_solution",
    "verify_p2",
    "pole_census",
    "residue_check",
    "PoleCensus",
]
