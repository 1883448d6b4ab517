"""Control-flow graph extraction.

Every call to a function of the same definition group becomes an arc whose
label describes each argument in terms of the caller's parameters.  The
description is purely syntactic: pattern-matching variables are tracked as
destructor paths (``Cons[v] -> ...`` binds ``v`` to ``Cons- x`` when the
scrutinee is ``x``), projections, constructors and tuples are kept exactly,
and anything else becomes the unknown term ``<oo>x1 + ... + <oo>xn``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .frontend.ast import (Call, CtorE, Group, Match, PCtor, Proj, Program,
                           PVar, TupleE, Var, pattern_vars)
from .subst import Substitution, render_subst
from .terms import (INF, UNIT, ApproxSum, Zero, mk_ctor, mk_dtor, mk_proj,
                    mk_tuple, var)


@dataclass(frozen=True)
class CallArc:
    source: str
    target: str
    label: Substitution
    site: tuple = field(default=None, compare=False)

    def __str__(self):
        return "%s -> %s : %s" % (self.source, self.target, render_subst(self.label))


@dataclass
class CFG:
    name: str
    vertices: dict  # function name -> tuple of parameter names
    arcs: list

    def render(self):
        return "\n".join(str(a) for a in self.arcs)


def unknown(params) -> ApproxSum:
    """The argument about which nothing is known."""
    if not params:
        return ApproxSum(frozenset([(INF, UNIT)]))
    return ApproxSum(frozenset((INF, var(p)) for p in params))


def _exact(e, env):
    """Term for ``e`` built from known paths, or None."""
    if isinstance(e, Var):
        return env.get(e.name)
    if isinstance(e, Proj):
        t = _exact(e.expr, env)
        if t is None:
            return None
        t = mk_proj(e.index, t)
        return None if isinstance(t, Zero) else t
    if isinstance(e, CtorE):
        t = _exact(e.arg, env)
        return None if t is None else mk_ctor(e.name, t)
    if isinstance(e, TupleE):
        items = [_exact(a, env) for a in e.items]
        return None if any(t is None for t in items) else mk_tuple(items)
    return None


def abstract_arg(e, env, caller_params):
    t = _exact(e, env)
    return unknown(caller_params) if t is None else t


def initial_env(params) -> dict:
    return {p: var(p) for p in params}


def build_cfg(program: Program, group: Group) -> CFG:
    """One vertex per definition of ``group``, one arc per in-group call."""
    vertices = {d.name: d.params for d in group.defs}
    arcs = []
    seen = set()

    def visit(e, env, caller):
        params = vertices[caller]
        if isinstance(e, Call):
            if e.fn in vertices:
                images = tuple(abstract_arg(a, env, params) for a in e.args)
                arc = CallArc(caller, e.fn, Substitution(vertices[e.fn], images), e.pos)
                key = (arc, e.pos)
                if key not in seen:
                    seen.add(key)
                    arcs.append(arc)
            for a in e.args:
                visit(a, env, caller)
        elif isinstance(e, CtorE):
            visit(e.arg, env, caller)
        elif isinstance(e, TupleE):
            for a in e.items:
                visit(a, env, caller)
        elif isinstance(e, Proj):
            visit(e.expr, env, caller)
        elif isinstance(e, Match):
            visit(e.scrutinee, env, caller)
            scrut = _exact(e.scrutinee, env)
            for c in e.cases:
                inner = dict(env)
                p = c.pattern
                for n in pattern_vars(p):
                    inner[n] = None
                if isinstance(p, PVar):
                    inner[p.name] = scrut
                elif isinstance(p, PCtor) and isinstance(p.sub, PVar):
                    sub = None if scrut is None else mk_dtor(p.name, scrut)
                    inner[p.sub.name] = None if isinstance(sub, Zero) else sub
                visit(c.body, inner, caller)

    for d in group.defs:
        visit(d.body, initial_env(d.params), d.name)
    return CFG(group.name, vertices, arcs)
