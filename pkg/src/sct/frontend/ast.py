"""Syntax trees for the object language.

Positions are ``(line, col)`` pairs and never take part in equality, so two
programs that differ only in layout compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union


def _pos():
    return field(default=None, compare=False, repr=False)


# expressions


@dataclass(frozen=True)
class Var:
    name: str
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class CtorE:
    name: str
    arg: "Expr"
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class TupleE:
    items: tuple
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Proj:
    index: int
    expr: "Expr"
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Case:
    pattern: "Pattern"
    body: "Expr"


@dataclass(frozen=True)
class Match:
    scrutinee: "Expr"
    cases: tuple
    pos: Optional[tuple] = _pos()


Expr = Union[Var, Call, CtorE, TupleE, Proj, Match]


# patterns


@dataclass(frozen=True)
class PCtor:
    name: str
    sub: "Pattern"


@dataclass(frozen=True)
class PTuple:
    items: tuple


@dataclass(frozen=True)
class PVar:
    name: str


@dataclass(frozen=True)
class PWild:
    pass


Pattern = Union[PCtor, PTuple, PVar, PWild]


# definitions


@dataclass(frozen=True)
class Definition:
    name: str
    params: tuple
    body: Expr
    pos: Optional[tuple] = _pos()


@dataclass(frozen=True)
class Group:
    """Definitions introduced together by one ``val`` / ``val rec``."""

    defs: tuple
    recursive: bool = True
    depth: Optional[int] = None  # from a pragma
    bound: Optional[int] = None
    pos: Optional[tuple] = _pos()

    @property
    def name(self):
        return "/".join(d.name for d in self.defs)

    def lookup(self, name):
        for d in self.defs:
            if d.name == name:
                return d
        return None


@dataclass(frozen=True)
class Program:
    groups: tuple
    externals: tuple = ()  # of (name, arity)

    def arities(self):
        out = dict(BUILTINS)
        out.update(self.externals)
        for g in self.groups:
            for d in g.defs:
                out[d.name] = len(d.params)
        return out

    def group_of(self, fn):
        for g in self.groups:
            if g.lookup(fn) is not None:
                return g
        return None


BUILTINS = (("raise", 1),)


# helpers


def pattern_vars(p: Pattern) -> list:
    if isinstance(p, PVar):
        return [p.name]
    if isinstance(p, PCtor):
        return pattern_vars(p.sub)
    if isinstance(p, PTuple):
        return [v for q in p.items for v in pattern_vars(q)]
    return []


def calls(e: Expr):
    """Every call node in ``e``, in evaluation-independent source order."""
    if isinstance(e, Call):
        yield e
        for a in e.args:
            yield from calls(a)
    elif isinstance(e, CtorE):
        yield from calls(e.arg)
    elif isinstance(e, TupleE):
        for a in e.items:
            yield from calls(a)
    elif isinstance(e, Proj):
        yield from calls(e.expr)
    elif isinstance(e, Match):
        yield from calls(e.scrutinee)
        for c in e.cases:
            yield from calls(c.body)


def is_pure(e: Expr) -> bool:
    """No calls and no matches: evaluating ``e`` twice is harmless."""
    if isinstance(e, Var):
        return True
    if isinstance(e, CtorE):
        return is_pure(e.arg)
    if isinstance(e, TupleE):
        return all(is_pure(a) for a in e.items)
    if isinstance(e, Proj):
        return is_pure(e.expr)
    return False


def free_vars(e: Expr) -> set:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Call):
        return set().union(*(free_vars(a) for a in e.args))
    if isinstance(e, CtorE):
        return free_vars(e.arg)
    if isinstance(e, TupleE):
        return set().union(*(free_vars(a) for a in e.items))
    if isinstance(e, Proj):
        return free_vars(e.expr)
    out = free_vars(e.scrutinee)
    for c in e.cases:
        out |= free_vars(c.body) - set(pattern_vars(c.pattern))
    return out


def show_pattern(p: Pattern) -> str:
    if isinstance(p, PVar):
        return p.name
    if isinstance(p, PWild):
        return "_"
    if isinstance(p, PTuple):
        return "(" + ", ".join(show_pattern(q) for q in p.items) + ")"
    if isinstance(p.sub, PTuple) and p.sub.items:
        return "%s[%s]" % (p.name, ", ".join(show_pattern(q) for q in p.sub.items))
    if p.sub == PTuple(()):
        return p.name + "[]"
    return "%s[%s]" % (p.name, show_pattern(p.sub))


def show_expr(e: Expr) -> str:
    """Source-like rendering, mostly for diagnostics and debugging."""
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Call):
        if not e.args:
            return e.fn
        return " ".join([e.fn] + [_atom(a) for a in e.args])
    if isinstance(e, CtorE):
        if isinstance(e.arg, TupleE):
            return "%s[%s]" % (e.name, ", ".join(show_expr(a) for a in e.arg.items))
        return "%s[%s]" % (e.name, show_expr(e.arg))
    if isinstance(e, TupleE):
        return "(" + ", ".join(show_expr(a) for a in e.items) + ")"
    if isinstance(e, Proj):
        return ".%d %s" % (e.index, _atom(e.expr))
    cases = " ".join("| %s -> %s" % (show_pattern(c.pattern), show_expr(c.body))
                     for c in e.cases)
    return "match %s with %s" % (show_expr(e.scrutinee), cases)


def _atom(e):
    s = show_expr(e)
    if isinstance(e, Match) or (isinstance(e, Call) and e.args):
        return "(" + s + ")"
    return s
