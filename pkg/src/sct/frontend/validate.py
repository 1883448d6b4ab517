"""Static sanity checks standing in for a type checker.

They catch the shape errors that are evident from the syntax alone: a
constructor expression being projected, a tuple expression being matched, a
literal tuple projected out of range, and functions that are referred to
without being fully applied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .ast import (Call, CtorE, Match, PCtor, Proj, Program, PVar, PWild,
                  TupleE, Var)


@dataclass(frozen=True)
class Diagnostic:
    message: str
    function: str
    pos: Optional[tuple] = None

    def __str__(self):
        where = "" if self.pos is None else "%d:%d: " % self.pos
        return "%sin %s: %s" % (where, self.function, self.message)


def _check(e, fn, arities, out):
    if isinstance(e, Var):
        return
    if isinstance(e, Call):
        arity = arities.get(e.fn)
        if arity is not None and len(e.args) != arity:
            out.append(Diagnostic("%s is not fully applied (expects %d argument(s), got %d)"
                                  % (e.fn, arity, len(e.args)), fn, e.pos))
        for a in e.args:
            _check(a, fn, arities, out)
    elif isinstance(e, CtorE):
        _check(e.arg, fn, arities, out)
    elif isinstance(e, TupleE):
        for a in e.items:
            _check(a, fn, arities, out)
    elif isinstance(e, Proj):
        inner = e.expr
        if isinstance(inner, CtorE):
            out.append(Diagnostic("projection .%d of constructor %s" % (e.index, inner.name),
                                  fn, e.pos))
        elif isinstance(inner, TupleE) and e.index > len(inner.items):
            out.append(Diagnostic("projection .%d of a %d-tuple" % (e.index, len(inner.items)),
                                  fn, e.pos))
        _check(inner, fn, arities, out)
    elif isinstance(e, Match):
        scrut = e.scrutinee
        if isinstance(scrut, TupleE) and any(isinstance(c.pattern, PCtor) for c in e.cases):
            out.append(Diagnostic("constructor pattern matched against a tuple", fn, e.pos))
        if isinstance(scrut, CtorE):
            for c in e.cases:
                p = c.pattern
                if not isinstance(p, PCtor) and not _is_wild(p):
                    out.append(Diagnostic("tuple pattern matched against constructor %s"
                                          % scrut.name, fn, e.pos))
                    break
        _check(scrut, fn, arities, out)
        for c in e.cases:
            _check(c.body, fn, arities, out)


def _is_wild(p):
    return isinstance(p, (PVar, PWild))


def validate(program: Program) -> list:
    """Diagnostics for a desugared program; empty when nothing is wrong."""
    arities = program.arities()
    out = []
    for g in program.groups:
        for d in g.defs:
            _check(d.body, d.name, arities, out)
    return out
