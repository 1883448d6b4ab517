"""Abstract terms describing call arguments, kept in normal form.

A term is built from constructors, tuples, destructor branches (a sequence of
constructor removals ``C-`` and projections ``pi`` ending on a parameter),
weighted approximations ``<w>`` and sums.  Every value of type :data:`Term`
handed out by this module is normal: no reduction applies to it.

Representation
--------------
``Ctor(name, arg)``
    constructor application.
``Tup(items)``
    n-tuple; ``UNIT`` is the empty tuple.
``Branch(steps, var)``
    destructor branch; ``steps`` lists destructors outermost first, each one
    either ``"C-"`` (remove constructor ``C``) or ``"p<i>"`` (projection).
``ApproxSum(items)``
    non-empty sum of approximations ``<w> base`` where ``base`` is a
    ``Branch`` or ``UNIT``.  A single approximation is a one-item sum.
``Sum(parts)``
    sum of at least two product-form terms that could not be merged into an
    ``ApproxSum``; only arises from general terms, never from call labels.
``Zero``
    the empty sum.  It records which kinds of impossible reduction produced
    it (``"ctor"`` for a constructor clash, ``"shape"`` for a projection of a
    constructor, a match on a tuple or an out-of-range projection).

Sums of approximations are pushed under constructors and tuples, so a call
label such as ``A(<1>x + <0>Y- y)`` stays a single product-form term.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Union

INF = math.inf

Weight = Union[int, float]

CTOR_CLASH = "ctor"
SHAPE_CLASH = "shape"


def weight_add(a: Weight, b: Weight) -> Weight:
    return a + b


def render_weight(w: Weight) -> str:
    return "oo" if w == INF else str(int(w))


def weight_key(w: Weight):
    return (1, 0) if w == INF else (0, w)


# destructor steps


def dtor_step(name: str) -> str:
    return name + "-"


def proj_step(index: int) -> str:
    return "p%d" % index


def is_proj(step: str) -> bool:
    return not step.endswith("-")


def proj_index(step: str) -> int:
    return int(step[1:])


def step_ctor(step: str) -> str:
    return step[:-1]


# term classes


@dataclass(frozen=True, slots=True)
class Ctor:
    name: str
    arg: "Term"

    def __str__(self):
        return render(self)


@dataclass(frozen=True, slots=True)
class Tup:
    items: tuple

    def __str__(self):
        return render(self)


@dataclass(frozen=True, slots=True)
class Branch:
    steps: tuple
    var: str

    def __len__(self):
        return len(self.steps)

    def __str__(self):
        return render(self)


@dataclass(frozen=True, slots=True)
class ApproxSum:
    items: frozenset  # of (weight, Branch | UNIT)

    def __str__(self):
        return render(self)

    def sorted_items(self):
        return sorted(self.items, key=_item_key)


@dataclass(frozen=True, slots=True)
class Sum:
    parts: frozenset

    def __str__(self):
        return render(self)


@dataclass(frozen=True, slots=True)
class Zero:
    kinds: frozenset = field(default=frozenset(), compare=False)

    def __str__(self):
        return "0"


Term = Union[Ctor, Tup, Branch, ApproxSum, Sum, Zero]

UNIT = Tup(())
ZERO = Zero()


def var(name: str) -> Branch:
    return Branch((), name)


def _item_key(item):
    w, base = item
    if isinstance(base, Branch):
        return (weight_key(w), base.steps, base.var)
    return (weight_key(w), (), "")


def base_len(base) -> int:
    return len(base.steps) if isinstance(base, Branch) else 0


def is_zero(t: Term) -> bool:
    return isinstance(t, Zero)


def approx(w: Weight, base) -> ApproxSum:
    return ApproxSum(frozenset([(w, base)]))


# smart constructors


def _zero_of(zeros: Iterable[Zero]) -> Zero:
    kinds = frozenset().union(*(z.kinds for z in zeros))
    return Zero(kinds) if kinds else ZERO


def mk_ctor(name: str, t: Term) -> Term:
    if isinstance(t, Zero):
        return t
    if isinstance(t, Sum):
        return mk_sum([mk_ctor(name, p) for p in t.parts])
    return Ctor(name, t)


def mk_tuple(items: Iterable[Term]) -> Term:
    items = tuple(items)
    zeros = [t for t in items if isinstance(t, Zero)]
    if zeros:
        return _zero_of(zeros)
    if any(isinstance(t, Sum) for t in items):
        choices = [t.parts if isinstance(t, Sum) else (t,) for t in items]
        return mk_sum([Tup(combo) for combo in itertools.product(*choices)])
    return Tup(items)


def mk_dtor(name: str, t: Term) -> Term:
    if isinstance(t, Zero):
        return t
    if isinstance(t, Sum):
        return mk_sum([mk_dtor(name, p) for p in t.parts])
    if isinstance(t, Ctor):
        return t.arg if t.name == name else Zero(frozenset([CTOR_CLASH]))
    if isinstance(t, Tup):
        return Zero(frozenset([SHAPE_CLASH]))
    if isinstance(t, Branch):
        return Branch((dtor_step(name),) + t.steps, t.var)
    return ApproxSum(frozenset((w - 1, b) for w, b in t.items))


def mk_proj(index: int, t: Term) -> Term:
    if index < 1:
        raise ValueError("projection index must be positive, got %d" % index)
    if isinstance(t, Zero):
        return t
    if isinstance(t, Sum):
        return mk_sum([mk_proj(index, p) for p in t.parts])
    if isinstance(t, Ctor):
        return Zero(frozenset([SHAPE_CLASH]))
    if isinstance(t, Tup):
        if index <= len(t.items):
            return t.items[index - 1]
        return Zero(frozenset([SHAPE_CLASH]))
    if isinstance(t, Branch):
        return Branch((proj_step(index),) + t.steps, t.var)
    return ApproxSum(frozenset((w - 1, b) for w, b in t.items))


def mk_approx(w: Weight, t: Term) -> Term:
    """Normal form of ``<w> t``: always an ApproxSum, or Zero."""
    if isinstance(t, Zero):
        return t
    if isinstance(t, Sum):
        return mk_sum([mk_approx(w, p) for p in t.parts])
    if isinstance(t, Ctor):
        return mk_approx(w + 1, t.arg)
    if isinstance(t, Tup):
        if not t.items:
            return approx(w, UNIT)
        return mk_sum([mk_approx(w + 1, u) for u in t.items])
    if isinstance(t, Branch):
        return approx(w, t)
    return ApproxSum(frozenset((w + v, b) for v, b in t.items))


def mk_sum(parts: Iterable[Term]) -> Term:
    flat = []
    zeros = []
    for p in parts:
        if isinstance(p, Zero):
            zeros.append(p)
        elif isinstance(p, Sum):
            flat.extend(p.parts)
        else:
            flat.append(p)
    if not flat:
        return _zero_of(zeros)
    items = set()
    others = set()
    for p in flat:
        if isinstance(p, ApproxSum):
            items.update(p.items)
        else:
            others.add(p)
    if items:
        others.add(ApproxSum(frozenset(items)))
    if len(others) == 1:
        return others.pop()
    return Sum(frozenset(others))


# raw terms

# A raw term is a nested tuple:
#   ("var", x) ("ctor", C, t) ("tuple", [t...]) ("dtor", C, t) ("proj", i, t)
#   ("approx", w, t) ("sum", [t...]) ("zero",)
# Term instances may appear as already-normal leaves.


def normalize(raw) -> Term:
    """Normal form of a raw term tree."""
    if not isinstance(raw, tuple):
        return raw
    tag = raw[0]
    if tag == "var":
        return var(raw[1])
    if tag == "ctor":
        return mk_ctor(raw[1], normalize(raw[2]))
    if tag == "tuple":
        return mk_tuple(normalize(t) for t in raw[1])
    if tag == "dtor":
        return mk_dtor(raw[1], normalize(raw[2]))
    if tag == "proj":
        return mk_proj(raw[1], normalize(raw[2]))
    if tag == "approx":
        return mk_approx(raw[1], normalize(raw[2]))
    if tag == "sum":
        return mk_sum(normalize(t) for t in raw[1])
    if tag == "zero":
        return ZERO
    raise ValueError("unknown raw term tag %r" % (tag,))


def summands(t: Term) -> frozenset:
    """The set of simple terms whose sum is ``t`` (full distribution)."""
    if isinstance(t, Zero):
        return frozenset()
    if isinstance(t, Sum):
        return frozenset().union(*(summands(p) for p in t.parts))
    if isinstance(t, Ctor):
        return frozenset(Ctor(t.name, s) for s in summands(t.arg))
    if isinstance(t, Tup):
        return frozenset(Tup(c) for c in itertools.product(*(summands(u) for u in t.items)))
    if isinstance(t, ApproxSum):
        return frozenset(ApproxSum(frozenset([i])) for i in t.items)
    return frozenset([t])


def parts(t: Term) -> tuple:
    """Top-level summands without distributing under constructors."""
    if isinstance(t, Zero):
        return ()
    if isinstance(t, Sum):
        return tuple(t.parts)
    return (t,)


def is_exact_value(t: Term) -> bool:
    if isinstance(t, Ctor):
        return is_exact_value(t.arg)
    if isinstance(t, Tup):
        return all(is_exact_value(u) for u in t.items)
    return False


def variables(t: Term) -> frozenset:
    if isinstance(t, Ctor):
        return variables(t.arg)
    if isinstance(t, Tup):
        return frozenset().union(*(variables(u) for u in t.items))
    if isinstance(t, Branch):
        return frozenset([t.var])
    if isinstance(t, ApproxSum):
        return frozenset(b.var for _, b in t.items if isinstance(b, Branch))
    if isinstance(t, Sum):
        return frozenset().union(*(variables(p) for p in t.parts))
    return frozenset()


def weights(t: Term) -> list:
    if isinstance(t, Ctor):
        return weights(t.arg)
    if isinstance(t, Tup):
        return [w for u in t.items for w in weights(u)]
    if isinstance(t, ApproxSum):
        return [w for w, _ in t.items]
    if isinstance(t, Sum):
        return [w for p in t.parts for w in weights(p)]
    return []


def branches(t: Term) -> list:
    """Every destructor branch occurring in ``t`` (bare or under ``<w>``)."""
    if isinstance(t, Ctor):
        return branches(t.arg)
    if isinstance(t, Tup):
        return [b for u in t.items for b in branches(u)]
    if isinstance(t, Branch):
        return [t]
    if isinstance(t, ApproxSum):
        return [b for _, b in t.items if isinstance(b, Branch)]
    if isinstance(t, Sum):
        return [b for p in t.parts for b in branches(p)]
    return []


# depths


def depth_value(v: Term) -> int:
    if isinstance(v, Ctor):
        return 1 + depth_value(v.arg)
    if isinstance(v, Tup):
        return max((1 + depth_value(u) for u in v.items), default=0)
    raise ValueError("not an exact value: %s" % render(v))


def depth_ctor(t: Term) -> int:
    if isinstance(t, Ctor):
        return 1 + depth_ctor(t.arg)
    if isinstance(t, Tup):
        return max((1 + depth_ctor(u) for u in t.items), default=0)
    if isinstance(t, Sum):
        return max(depth_ctor(p) for p in t.parts)
    return 0


def depth_dtor(t: Term) -> int:
    if isinstance(t, Ctor):
        return depth_dtor(t.arg)
    if isinstance(t, Tup):
        return max((depth_dtor(u) for u in t.items), default=0)
    if isinstance(t, Branch):
        return len(t.steps)
    if isinstance(t, ApproxSum):
        return max(base_len(b) for _, b in t.items)
    if isinstance(t, Sum):
        return max(depth_dtor(p) for p in t.parts)
    return 0


# rendering


def _render_base(base) -> str:
    if isinstance(base, Branch):
        return " ".join(base.steps + (base.var,))
    return "()"


def render(t: Term) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Branch):
        return _render_base(t)
    if isinstance(t, ApproxSum):
        return " + ".join("<%s>%s" % (render_weight(w), _render_base(b))
                          for w, b in t.sorted_items())
    if isinstance(t, Tup):
        return "(" + ", ".join(render(u) for u in t.items) + ")"
    if isinstance(t, Ctor):
        arg = t.arg
        if isinstance(arg, Tup):
            return t.name + render(arg)
        if isinstance(arg, ApproxSum) and len(arg.items) > 1:
            return "%s(%s)" % (t.name, render(arg))
        return "%s %s" % (t.name, render(arg))
    return " + ".join(sorted(render(p) for p in t.parts))


# reading terms back from their rendering

_TOKEN = re.compile(r"""\s*(?:
    (?P<weight><\s*(?:-?\d+|oo|inf|∞)\s*>)
  | (?P<dtor>[A-Z][\w']*-)
  | (?P<ctor>[A-Z][\w']*)
  | (?P<proj>(?:p|π)\d+)
  | (?P<zero>0)
  | (?P<var>[a-z_][\w']*)
  | (?P<sym>[(),+])
)""", re.VERBOSE)


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError("cannot read term at %r" % text[pos:])
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _TermReader:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ValueError("expected %r, got %r" % (value, tok[1]))
        self.i += 1
        return tok

    def sum(self):
        items = [self.prod()]
        while self.peek()[1] == "+":
            self.take("+")
            items.append(self.prod())
        return mk_sum(items)

    def group(self):
        self.take("(")
        if self.peek()[1] == ")":
            self.take(")")
            return UNIT, True
        items = [self.sum()]
        while self.peek()[1] == ",":
            self.take(",")
            items.append(self.sum())
        self.take(")")
        if len(items) == 1:
            return items[0], False
        return mk_tuple(items), True

    def prod(self):
        kind, text = self.peek()
        if kind == "zero":
            self.take()
            return ZERO
        if kind == "weight":
            self.take()
            w = text.strip("<> \t")
            w = INF if w in ("oo", "inf", "∞") else int(w)
            return mk_approx(w, self.prod())
        if kind == "ctor":
            self.take()
            if self.peek()[1] == "(":
                arg, _ = self.group()
                return mk_ctor(text, arg)
            return mk_ctor(text, self.prod())
        if kind == "dtor":
            self.take()
            return mk_dtor(text[:-1], self.prod())
        if kind == "proj":
            self.take()
            return mk_proj(int(text.lstrip("pπ")), self.prod())
        if kind == "var":
            self.take()
            return var(text)
        if text == "(":
            return self.group()[0]
        raise ValueError("unexpected token %r" % (text,))


def parse_term(text: str) -> Term:
    """Read a term written in the rendering syntax, e.g. ``A <-1> A- x``."""
    reader = _TermReader(text)
    t = reader.sum()
    if reader.i != len(reader.toks):
        raise ValueError("trailing input in term %r" % text)
    return t
