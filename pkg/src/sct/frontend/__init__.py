"""Parsing, desugaring and validation of source programs."""

from .ast import Program
from .desugar import desugar
from .parser import parse, parse_file
from .validate import Diagnostic, validate

__all__ = ["Program", "parse", "parse_file", "desugar", "validate", "Diagnostic"]
