"""Reference big-step interpreter for desugared programs.

Values are exact terms (``Ctor`` and ``Tup`` from :mod:`sct.terms`).  The
interpreter records every call between functions of the same group together
with the caller's parameter values, which is what the safety check of call
labels needs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .frontend.ast import Call, CtorE, Match, PCtor, Proj, Program, PVar, TupleE, Var
from .terms import UNIT, Ctor, Tup


class Raised(Exception):
    """``raise v`` was evaluated, or no case matched."""

    def __init__(self, value):
        super().__init__(value)
        self.value = value


class OutOfFuel(Exception):
    pass


class StuckError(Exception):
    """Evaluation went wrong: a tuple was matched or a constructor projected."""


@dataclass(frozen=True)
class CallRecord:
    caller: str
    callee: str
    site: tuple
    env: dict  # caller parameter -> value
    args: tuple


def default_external(name, args):
    return args[0] if args else UNIT


class Interpreter:
    def __init__(self, program: Program, fuel: int = 200, externals=None):
        self.program = program
        self.defs = {d.name: d for g in program.groups for d in g.defs}
        self.group = {d.name: g.name for g in program.groups for d in g.defs}
        self.fuel = fuel
        self.externals = externals or default_external
        self.records = []

    def call(self, fn, args, caller=None, caller_env=None, site=None):
        if fn == "raise":
            raise Raised(args[0])
        d = self.defs.get(fn)
        if d is None:
            return self.externals(fn, args)
        if caller is not None and self.group[caller] == self.group[fn]:
            self.records.append(CallRecord(caller, fn, site, dict(caller_env), tuple(args)))
        self.fuel -= 1
        if self.fuel < 0:
            raise OutOfFuel(fn)
        params = dict(zip(d.params, args))
        return self.eval(d.body, dict(params), fn, params)

    def eval(self, e, env, fn, params):
        if isinstance(e, Var):
            return env[e.name]
        if isinstance(e, Call):
            args = [self.eval(a, env, fn, params) for a in e.args]
            return self.call(e.fn, args, fn, params, e.pos)
        if isinstance(e, CtorE):
            return Ctor(e.name, self.eval(e.arg, env, fn, params))
        if isinstance(e, TupleE):
            return Tup(tuple(self.eval(a, env, fn, params) for a in e.items))
        if isinstance(e, Proj):
            v = self.eval(e.expr, env, fn, params)
            if not isinstance(v, Tup) or e.index > len(v.items):
                raise StuckError("projection .%d of %r" % (e.index, v))
            return v.items[e.index - 1]
        if isinstance(e, Match):
            v = self.eval(e.scrutinee, env, fn, params)
            for c in e.cases:
                p = c.pattern
                bound = _match(p, v)
                if bound is not None:
                    inner = dict(env)
                    inner.update(bound)
                    return self.eval(c.body, inner, fn, params)
            raise Raised(Ctor("Match_failure", UNIT))
        raise TypeError("not an expression: %r" % (e,))


def _match(p, v):
    """Bindings when ``v`` matches ``p``, else None."""
    if isinstance(p, PVar):
        return {p.name: v}
    if isinstance(p, PCtor):
        if not isinstance(v, Ctor):
            raise StuckError("match on non-constructor %r" % (v,))
        if v.name != p.name:
            return None
        return _match(p.sub, v.arg)
    if hasattr(p, "items"):
        if not isinstance(v, Tup) or len(v.items) != len(p.items):
            raise StuckError("tuple pattern against %r" % (v,))
        out = {}
        for q, u in zip(p.items, v.items):
            b = _match(q, u)
            if b is None:
                return None
            out.update(b)
        return out
    return {}


def run(program: Program, fn: str, args, fuel: int = 200):
    """Evaluate ``fn args``; return (result or exception, call records)."""
    it = Interpreter(program, fuel)
    try:
        result = it.call(fn, list(args))
    except (Raised, OutOfFuel) as exc:
        result = exc
    return result, it.records
