"""Approximation preorder, compatibility and collapsing into T_{D,B}."""

from __future__ import annotations

from dataclasses import dataclass

from .terms import (INF, UNIT, ApproxSum, Branch, Ctor, Sum, Tup, Zero,
                    depth_ctor, depth_dtor, mk_approx, mk_ctor, mk_sum,
                    mk_tuple, weights)


@dataclass(frozen=True)
class Bounds:
    D: int = 2
    B: int = 1

    def __post_init__(self):
        if not isinstance(self.D, int) or self.D < 0:
            raise ValueError("depth bound D must be an integer >= 0, got %r" % (self.D,))
        if not isinstance(self.B, int) or self.B < 1:
            raise ValueError("weight bound B must be an integer >= 1, got %r" % (self.B,))

    def __str__(self):
        return "D=%d B=%d" % (self.D, self.B)


DEFAULT_BOUNDS = Bounds(2, 1)


def is_suffix(short, long) -> bool:
    """``short`` is a suffix of ``long`` (both Branch) as destructor paths."""
    if short.var != long.var or len(short.steps) > len(long.steps):
        return False
    return long.steps[len(long.steps) - len(short.steps):] == short.steps


# order


def item_leq(a, b) -> bool:
    """``<w'> b' <= <w> d`` on single approximation items."""
    w1, base1 = a
    w2, base2 = b
    if isinstance(base1, Branch) and isinstance(base2, Branch):
        if not is_suffix(base2, base1):
            return False
        return w1 + len(base2.steps) <= w2 + len(base1.steps)
    if base1 == UNIT and base2 == UNIT:
        return w1 <= w2
    return False


def _approx_leq(u: ApproxSum, v: ApproxSum) -> bool:
    return all(any(item_leq(i, j) for j in v.items) for i in u.items)


def leq(u, v) -> bool:
    """Decide ``u <= v`` for normal terms of the implementation grammar."""
    if isinstance(u, Zero):
        return True
    if isinstance(v, Zero):
        return False
    if isinstance(u, Sum):
        return all(leq(p, v) for p in u.parts)
    if isinstance(v, Sum):
        if isinstance(u, ApproxSum):
            return all(any(leq(ApproxSum(frozenset([i])), p) for p in v.parts)
                       for i in u.items)
        return any(leq(u, p) for p in v.parts)
    if isinstance(v, ApproxSum):
        if isinstance(u, ApproxSum):
            return _approx_leq(u, v)
        lifted = mk_approx(0, u)
        return isinstance(lifted, ApproxSum) and _approx_leq(lifted, v)
    if isinstance(u, Ctor):
        return isinstance(v, Ctor) and u.name == v.name and leq(u.arg, v.arg)
    if isinstance(u, Tup):
        return (isinstance(v, Tup) and len(u.items) == len(v.items)
                and all(leq(a, b) for a, b in zip(u.items, v.items)))
    if isinstance(u, Branch):
        return u == v
    return False  # approximation below a constructor, tuple or branch


def equiv(u, v) -> bool:
    return leq(u, v) and leq(v, u)


# compatibility


def _item_compatible(a, b) -> bool:
    base1, base2 = a[1], b[1]
    if not isinstance(base1, Branch) or not isinstance(base2, Branch):
        return True  # <w>() only carries a depth bound
    return is_suffix(base1, base2) or is_suffix(base2, base1)


def compatible(u, v) -> bool:
    """Whether some non-zero term lies below both ``u`` and ``v``."""
    if isinstance(u, Zero) or isinstance(v, Zero):
        return False
    if isinstance(u, Sum) or isinstance(v, Sum):
        # general sums never arise from call labels; answer conservatively
        return True
    if isinstance(u, ApproxSum) and isinstance(v, ApproxSum):
        return any(_item_compatible(a, b) for a in u.items for b in v.items)
    if isinstance(u, ApproxSum):
        u, v = v, u
    if isinstance(v, ApproxSum):
        if isinstance(u, Ctor):
            return compatible(u.arg, v)
        if isinstance(u, Tup):
            return all(compatible(a, v) for a in u.items)
        return compatible(mk_approx(0, u), v)
    if isinstance(u, Ctor):
        return isinstance(v, Ctor) and u.name == v.name and compatible(u.arg, v.arg)
    if isinstance(u, Tup):
        return (isinstance(v, Tup) and len(u.items) == len(v.items)
                and all(compatible(a, b) for a, b in zip(u.items, v.items)))
    return u == v


# collapsing


def clamp_weight(w, B: int):
    if w < -B:
        return -B
    if w < B:
        return w
    return INF


def collapse_weight(t, B: int):
    if isinstance(t, Ctor):
        return mk_ctor(t.name, collapse_weight(t.arg, B))
    if isinstance(t, Tup):
        return mk_tuple(collapse_weight(u, B) for u in t.items)
    if isinstance(t, ApproxSum):
        return ApproxSum(frozenset((clamp_weight(w, B), b) for w, b in t.items))
    if isinstance(t, Sum):
        return mk_sum(collapse_weight(p, B) for p in t.parts)
    return t


def _truncate(base, D: int):
    """Keep the innermost D destructors of a branch, as an approximation."""
    n = len(base.steps)
    if n <= D:
        return base
    return mk_approx(D - n, Branch(base.steps[n - D:], base.var))


def collapse_depth(t, D: int):
    """Bound constructor depth and destructor depth by D.

    Constructors and tuples below depth D are absorbed into an approximation
    and destructor branches longer than D lose their outermost destructors,
    each lost destructor costing one unit of weight.
    """

    def trunc_approx(s):
        return mk_sum(mk_approx(w, _truncate(b, D)) if isinstance(b, Branch)
                      else ApproxSum(frozenset([(w, b)]))
                      for w, b in s.items)

    def coll(i, t):
        if isinstance(t, (Ctor, Tup)) and t != UNIT:
            if i == 0:
                lifted = mk_approx(0, t)
                return trunc_approx(lifted) if isinstance(lifted, ApproxSum) else lifted
            if isinstance(t, Ctor):
                return mk_ctor(t.name, coll(i - 1, t.arg))
            return mk_tuple(coll(i - 1, u) for u in t.items)
        if isinstance(t, Branch):
            return _truncate(t, D)
        if isinstance(t, ApproxSum):
            return trunc_approx(t)
        if isinstance(t, Sum):
            return mk_sum(coll(i, p) for p in t.parts)
        return t

    return coll(D, t)


def max_summands(t):
    """Drop every approximation summand that is below another one."""
    if isinstance(t, Ctor):
        return mk_ctor(t.name, max_summands(t.arg))
    if isinstance(t, Tup):
        return mk_tuple(max_summands(u) for u in t.items)
    if isinstance(t, ApproxSum):
        items = sorted(t.items, key=_stable_key)
        kept = [a for a in items
                if not any(b != a and item_leq(a, b) for b in items)]
        return ApproxSum(frozenset(kept))
    if isinstance(t, Sum):
        parts = sorted((max_summands(p) for p in t.parts), key=repr)
        kept = []
        for k, p in enumerate(parts):
            rest = kept + parts[k + 1:]
            if not any(leq(p, q) for q in rest):
                kept.append(p)
        return mk_sum(kept)
    return t


def _stable_key(item):
    w, b = item
    return ((1, 0) if w == INF else (0, w), repr(b))


def collapse(t, bounds: Bounds):
    """Map a term to the least term of T_{D,B} above it."""
    return max_summands(collapse_weight(collapse_depth(t, bounds.D), bounds.B))


def in_domain(t, bounds: Bounds) -> bool:
    """Membership in T_{D,B}: depths at most D and weights in Z_B."""
    if depth_ctor(t) > bounds.D or depth_dtor(t) > bounds.D:
        return False
    return all(w == INF or -bounds.B <= w < bounds.B for w in weights(t))
