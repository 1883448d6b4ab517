"""Size-change termination checking for a first-order ML-like language.

The pipeline is: parse and desugar a program (:mod:`sct.frontend`), extract a
control-flow graph labelled by abstract call arguments (:mod:`sct.analysis`),
saturate it under collapsed composition and look for a decreasing parameter
in every coherent loop (:mod:`sct.engine`).
"""

from .analysis import CFG, CallArc, build_cfg
from .approx import Bounds, collapse, compatible, leq
from .cli import analyze, load_program, sweep
from .engine import TERMINATING, UNKNOWN, check, find_decreasing, saturate
from .errors import AnalysisError, ArityError, ParseError, SctError
from .subst import Substitution, ccomp, compose, parse_subst
from .terms import parse_term, render

__version__ = "0.1.0"

__all__ = [
    "Bounds", "CFG", "CallArc", "Substitution", "TERMINATING", "UNKNOWN",
    "AnalysisError", "ArityError", "ParseError", "SctError",
    "analyze", "build_cfg", "ccomp", "check", "collapse", "compatible",
    "compose", "find_decreasing", "leq", "load_program", "parse_subst",
    "parse_term", "render", "saturate", "sweep",
]
