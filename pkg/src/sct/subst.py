"""Substitutions labelling call arcs, and their (collapsed) composition."""

from __future__ import annotations

from dataclasses import dataclass

from .approx import Bounds, collapse, compatible, leq
from .errors import AnalysisError
from .terms import (CTOR_CLASH, SHAPE_CLASH, ApproxSum, Branch, Ctor, Sum, Tup,
                    Zero, is_proj, mk_approx, mk_ctor, mk_dtor, mk_proj,
                    mk_sum, mk_tuple, proj_index, render, step_ctor)


@dataclass(frozen=True)
class Substitution:
    """``[x1 := t1; ...]``: images of the callee parameters, written in terms
    of the caller parameters."""

    params: tuple
    images: tuple

    def __post_init__(self):
        if len(self.params) != len(self.images):
            raise ValueError("substitution needs one image per parameter")

    @classmethod
    def of(cls, mapping):
        return cls(tuple(mapping), tuple(mapping.values()))

    def image(self, x):
        return self.images[self.params.index(x)]

    def as_dict(self):
        return dict(zip(self.params, self.images))

    def __str__(self):
        return render_subst(self)


def render_subst(s: Substitution) -> str:
    return "[" + "; ".join("%s := %s" % (x, render(t))
                           for x, t in zip(s.params, s.images)) + "]"


def _destruct(steps, t):
    for step in reversed(steps):  # innermost destructor first
        if is_proj(step):
            t = mk_proj(proj_index(step), t)
        else:
            t = mk_dtor(step_ctor(step), t)
    return t


def apply(t, sigma: Substitution):
    """``t sigma``: replace each parameter by its image and normalize."""
    env = sigma.as_dict()

    def go(t):
        if isinstance(t, Branch):
            if t.var not in env:
                raise KeyError("unbound variable %s in %s" % (t.var, render_subst(sigma)))
            return _destruct(t.steps, env[t.var])
        if isinstance(t, Ctor):
            return mk_ctor(t.name, go(t.arg))
        if isinstance(t, Tup):
            return mk_tuple(go(u) for u in t.items)
        if isinstance(t, ApproxSum):
            return mk_sum(mk_approx(w, go(b)) for w, b in t.items)
        if isinstance(t, Sum):
            return mk_sum(go(p) for p in t.parts)
        return t

    return go(t)


def compose(tau: Substitution, sigma: Substitution) -> Substitution:
    """Exact composition: first ``sigma`` then ``tau`` along a call path.

    If ``sigma`` labels f -> g and ``tau`` labels g -> h, the result labels
    f -> h and maps each parameter of h to its image under tau, expressed
    over f's parameters through sigma.
    """
    return Substitution(tau.params, tuple(apply(u, sigma) for u in tau.images))


def ccomp(tau: Substitution, sigma: Substitution, bounds: Bounds):
    """Collapsed composition ``collapse(compose(tau, sigma))``.

    Returns None when the composed path is impossible (a constructor is
    removed from a different constructor).  Raises AnalysisError on an
    ill-typed reduction.
    """
    images = []
    for u in compose(tau, sigma).images:
        if isinstance(u, Zero):
            if SHAPE_CLASH in u.kinds:
                raise AnalysisError(
                    "ill-typed composition of %s after %s"
                    % (render_subst(tau), render_subst(sigma)))
            return None
        images.append(collapse(u, bounds))
    return Substitution(tau.params, tuple(images))


def subst_leq(s: Substitution, t: Substitution) -> bool:
    return s.params == t.params and all(leq(a, b) for a, b in zip(s.images, t.images))


def subst_compatible(s: Substitution, t: Substitution) -> bool:
    return s.params == t.params and all(compatible(a, b)
                                        for a, b in zip(s.images, t.images))


def parse_subst(text: str) -> Substitution:
    """Read ``[x := t; y := u]``."""
    from .terms import parse_term
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError("substitution must be bracketed: %r" % text)
    mapping = {}
    for chunk in body[1:-1].split(";"):
        if not chunk.strip():
            continue
        name, _, term = chunk.partition(":=")
        mapping[name.strip()] = parse_term(term)
    return Substitution.of(mapping)


__all__ = ["Substitution", "apply", "compose", "ccomp", "subst_leq",
           "subst_compatible", "render_subst", "parse_subst", "CTOR_CLASH"]
