"""Compile deep and tuple patterns down to one-level constructor matches.

After desugaring every ``match`` has cases ``C[y] -> e`` with pairwise
distinct constructors, ``y`` a variable or ``_``, optionally followed by a
final ``_ -> e``.  Sub-values reached through tuple patterns become
projections, so ``Cons[a, y] -> e`` turns into ``Cons[v] -> e`` with ``a``
replaced by ``.1 v`` and ``y`` by ``.2 v``.

A scrutinee that contains calls is evaluated once through the internal
wrapper ``match BIND[e] with BIND[v] -> ...``; ``BIND`` is a constructor name
that cannot be written in source programs.
"""

from __future__ import annotations

import itertools

from .ast import (Call, Case, CtorE, Definition, Group, Match, PCtor, Proj,
                  Program, PTuple, PVar, PWild, TupleE, Var, free_vars,
                  is_pure)

BIND = "%bind"
MATCH_FAILURE = CtorE("Match_failure", TupleE(()))


class _Fresh:
    def __init__(self, taken):
        self.taken = set(taken)
        self.counter = itertools.count(1)

    def __call__(self):
        while True:
            name = "v%%%d" % next(self.counter)
            if name not in self.taken:
                self.taken.add(name)
                return name


def _all_names(e, out):
    """Every identifier appearing in ``e``, bound or free."""
    if isinstance(e, Var):
        out.add(e.name)
    elif isinstance(e, Call):
        for a in e.args:
            _all_names(a, out)
    elif isinstance(e, CtorE):
        _all_names(e.arg, out)
    elif isinstance(e, TupleE):
        for a in e.items:
            _all_names(a, out)
    elif isinstance(e, Proj):
        _all_names(e.expr, out)
    elif isinstance(e, Match):
        _all_names(e.scrutinee, out)
        for c in e.cases:
            out.update(_pat_names(c.pattern))
            _all_names(c.body, out)
    return out


def _pat_names(p):
    if isinstance(p, PVar):
        return {p.name}
    if isinstance(p, PCtor):
        return _pat_names(p.sub)
    if isinstance(p, PTuple):
        return set().union(*(_pat_names(q) for q in p.items))
    return set()


def substitute(e, env, fresh):
    """Capture-avoiding replacement of free variables by expressions."""
    if not env:
        return e
    if isinstance(e, Var):
        return env.get(e.name, e)
    if isinstance(e, Call):
        return Call(e.fn, tuple(substitute(a, env, fresh) for a in e.args), pos=e.pos)
    if isinstance(e, CtorE):
        return CtorE(e.name, substitute(e.arg, env, fresh), pos=e.pos)
    if isinstance(e, TupleE):
        return TupleE(tuple(substitute(a, env, fresh) for a in e.items), pos=e.pos)
    if isinstance(e, Proj):
        return Proj(e.index, substitute(e.expr, env, fresh), pos=e.pos)
    scrut = substitute(e.scrutinee, env, fresh)
    incoming = set().union(*(free_vars(v) for v in env.values()))
    cases = []
    for c in e.cases:
        pat, body = c.pattern, c.body
        bound = _pat_names(pat)
        inner = {k: v for k, v in env.items() if k not in bound}
        clash = bound & incoming
        if clash and inner:
            rename = {x: fresh() for x in sorted(clash)}
            pat = _rename_pattern(pat, rename)
            body = substitute(body, {x: Var(y) for x, y in rename.items()}, fresh)
        cases.append(Case(pat, substitute(body, inner, fresh)))
    return Match(scrut, tuple(cases), pos=e.pos)


def _rename_pattern(p, rename):
    if isinstance(p, PVar):
        return PVar(rename.get(p.name, p.name))
    if isinstance(p, PCtor):
        return PCtor(p.name, _rename_pattern(p.sub, rename))
    if isinstance(p, PTuple):
        return PTuple(tuple(_rename_pattern(q, rename) for q in p.items))
    return p


def is_core_match(m: Match) -> bool:
    """Cases are ``C[y]`` with distinct C, possibly ending with ``_``."""
    seen = set()
    for k, c in enumerate(m.cases):
        p = c.pattern
        if isinstance(p, PWild):
            return k == len(m.cases) - 1
        if not isinstance(p, PCtor) or not isinstance(p.sub, (PVar, PWild)):
            return False
        if p.name in seen:
            return False
        seen.add(p.name)
    return True


def _irrefutable(p):
    return isinstance(p, (PVar, PWild))


def _proj_occ(occ, k):
    if isinstance(occ, TupleE):
        return occ.items[k - 1]
    return Proj(k, occ)


class _Desugarer:
    def __init__(self, fresh):
        self.fresh = fresh

    def expr(self, e):
        if isinstance(e, Var):
            return e
        if isinstance(e, Call):
            return Call(e.fn, tuple(self.expr(a) for a in e.args), pos=e.pos)
        if isinstance(e, CtorE):
            return CtorE(e.name, self.expr(e.arg), pos=e.pos)
        if isinstance(e, TupleE):
            return TupleE(tuple(self.expr(a) for a in e.items), pos=e.pos)
        if isinstance(e, Proj):
            return Proj(e.index, self.expr(e.expr), pos=e.pos)
        return self.match(e)

    def match(self, m):
        scrut = self.expr(m.scrutinee)
        if is_core_match(m):
            return Match(scrut, tuple(Case(c.pattern, self.expr(c.body)) for c in m.cases),
                         pos=m.pos)
        binds = []  # (fresh var, impure expression), evaluated outermost first
        if is_pure(scrut):
            occ = scrut
        elif isinstance(scrut, TupleE):
            items = []
            for item in scrut.items:
                if is_pure(item):
                    items.append(item)
                else:
                    v = self.fresh()
                    binds.append((v, item))
                    items.append(Var(v))
            occ = TupleE(tuple(items), pos=scrut.pos)
        else:
            v = self.fresh()
            binds.append((v, scrut))
            occ = Var(v)
        rows = [([c.pattern], {}, c.body) for c in m.cases]
        out = self.compile([occ], rows, m.pos)
        for v, e in reversed(binds):
            out = Match(CtorE(BIND, e), (Case(PCtor(BIND, PVar(v)), out),), pos=m.pos)
        return out

    def compile(self, occs, rows, pos):
        if not rows:
            return Call("raise", (MATCH_FAILURE,), pos=pos)
        pats, env, body = rows[0]
        col = next((k for k, p in enumerate(pats) if not _irrefutable(p)), None)
        if col is None:
            env = dict(env)
            for p, o in zip(pats, occs):
                if isinstance(p, PVar):
                    env[p.name] = o
            return substitute(self.expr(body), env, self.fresh)
        occ = occs[col]
        if any(isinstance(r[0][col], PTuple) for r in rows):
            n = next(len(r[0][col].items) for r in rows if isinstance(r[0][col], PTuple))
            new_occs = occs[:col] + [_proj_occ(occ, k) for k in range(1, n + 1)] + occs[col + 1:]
            new_rows = []
            for ps, env, body in rows:
                p = ps[col]
                if isinstance(p, PTuple):
                    if len(p.items) != n:
                        raise ValueError("tuple patterns of different lengths")
                    subs = list(p.items)
                elif isinstance(p, PCtor):
                    continue  # a constructor never matches a tuple
                else:
                    env = _bind(env, p, occ)
                    subs = [PWild()] * n
                new_rows.append((ps[:col] + subs + ps[col + 1:], env, body))
            return self.compile(new_occs, new_rows, pos)
        ctors = []
        for ps, _, _ in rows:
            p = ps[col]
            if isinstance(p, PCtor) and p.name not in ctors:
                ctors.append(p.name)
        cases = []
        for name in ctors:
            v = self.fresh()
            sub_rows = []
            for ps, env, body in rows:
                p = ps[col]
                if isinstance(p, PCtor):
                    if p.name != name:
                        continue
                    sub = p.sub
                else:
                    env = _bind(env, p, occ)
                    sub = PWild()
                sub_rows.append((ps[:col] + [sub] + ps[col + 1:], env, body))
            inner = self.compile(occs[:col] + [Var(v)] + occs[col + 1:], sub_rows, pos)
            cases.append(Case(PCtor(name, PVar(v)), inner))
        default = [(ps[:col] + ps[col + 1:], _bind(env, ps[col], occ), body)
                   for ps, env, body in rows if _irrefutable(ps[col])]
        if default:
            cases.append(Case(PWild(), self.compile(occs[:col] + occs[col + 1:], default, pos)))
        return Match(occ, tuple(cases), pos=pos)


def _bind(env, p, occ):
    if isinstance(p, PVar):
        env = dict(env)
        env[p.name] = occ
    return env


def desugar(program: Program) -> Program:
    taken = set()
    for g in program.groups:
        for d in g.defs:
            taken.update(d.params)
            _all_names(d.body, taken)
    fresh = _Fresh(taken)
    ds = _Desugarer(fresh)
    groups = []
    for g in program.groups:
        defs = tuple(Definition(d.name, d.params, ds.expr(d.body), pos=d.pos) for d in g.defs)
        groups.append(Group(defs, g.recursive, g.depth, g.bound, pos=g.pos))
    return Program(tuple(groups), program.externals)
