"""Graph of paths, coherent loops and the termination verdict."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .analysis import CallArc, CFG
from .approx import Bounds, is_suffix
from .subst import Substitution, apply, ccomp, subst_compatible, subst_leq
from .terms import ApproxSum, Branch, branches, mk_approx, render

TERMINATING = "Terminating"
UNKNOWN = "Unknown"


@dataclass
class PathGraph:
    """Arcs summarising every non-empty call path of a CFG."""

    vertices: dict
    arcs: list

    def loops(self):
        return [a for a in self.arcs if a.source == a.target]

    def render(self):
        return "\n".join(str(a) for a in self.arcs)


def saturate(cfg: CFG, bounds: Bounds, subsume: bool = True) -> PathGraph:
    """Close the CFG under collapsed composition.

    A path ``f -> h -> ... -> g`` is summarised by extending an existing
    summary of ``h -> ... -> g`` with an original arc ``f -> h`` in front.
    Compositions that go through incompatible constructors are dropped.
    With ``subsume``, an arc approximated by another arc between the same
    vertices is not kept; arcs of the CFG itself are never evicted.
    """
    originals = list(cfg.arcs)
    incoming = {}
    for a in originals:
        incoming.setdefault(a.target, []).append(a)
    kept = []  # current arcs, in insertion order
    index = {}  # (source, target) -> list of labels currently kept
    alive = set()
    protected = {((a.source, a.target), a.label) for a in originals}

    def add(arc):
        key = (arc.source, arc.target)
        labels = index.setdefault(key, [])
        if arc.label in labels:
            return False
        if subsume:
            if any(subst_leq(arc.label, l) for l in labels):
                return False
            evicted = [l for l in labels
                       if (key, l) not in protected and subst_leq(l, arc.label)]
            for l in evicted:
                labels.remove(l)
                alive.discard((key, l))
        labels.append(arc.label)
        alive.add((key, arc.label))
        kept.append(arc)
        return True

    work = deque()
    for a in originals:
        if add(CallArc(a.source, a.target, a.label)):
            work.append(CallArc(a.source, a.target, a.label))
    while work:
        tau = work.popleft()
        if ((tau.source, tau.target), tau.label) not in alive:
            continue
        for sigma in incoming.get(tau.source, ()):
            label = ccomp(tau.label, sigma.label, bounds)
            if label is None:
                continue
            arc = CallArc(sigma.source, tau.target, label)
            if add(arc):
                work.append(arc)
    arcs = [a for a in kept if ((a.source, a.target), a.label) in alive]
    return PathGraph(dict(cfg.vertices), arcs)


def is_coherent(tau: Substitution, bounds: Bounds) -> bool:
    twice = ccomp(tau, tau, bounds)
    return twice is not None and subst_compatible(tau, twice)


@dataclass(frozen=True)
class Witness:
    """A decreasing parameter ``<0> path`` and its drop (a negative weight)."""

    path: Branch
    drop: int

    @property
    def param(self):
        return self.path.var

    def render(self):
        return "<0>%s" % render(self.path)

    def __str__(self):
        return "%s decreases by %d" % (self.render(), -self.drop)


def _candidates(tau: Substitution):
    """Destructor paths worth trying: the empty path on each parameter, and
    every suffix of a path occurring in an image, shortest first."""
    found = {(p, ()) for p in tau.params}
    for image in tau.images:
        for b in branches(image):
            for k in range(len(b.steps) + 1):
                found.add((b.var, b.steps[k:]))
    order = {p: i for i, p in enumerate(tau.params)}
    found = [c for c in found if c[0] in order]
    return sorted(found, key=lambda c: (order[c[0]], len(c[1]), c[1]))


def drop_along(tau: Substitution, path: Branch):
    """Largest ``w`` with ``<0>path[tau] <= <w>path``, or None if none exists."""
    image = apply(mk_approx(0, path), tau)
    if not isinstance(image, ApproxSum):
        return None
    best = None
    for w, base in image.items:
        if not isinstance(base, Branch) or not is_suffix(path, base):
            return None
        need = w + len(path.steps) - len(base.steps)
        best = need if best is None else max(best, need)
    return best


def find_decreasing(tau: Substitution):
    """Minimal decreasing parameter of a loop, or None."""
    for x, steps in _candidates(tau):
        path = Branch(steps, x)
        w = drop_along(tau, path)
        if w is not None and w < 0:
            return Witness(path, w)
    return None


@dataclass
class LoopReport:
    arc: CallArc
    coherent: bool
    witness: object = None  # Witness or None

    @property
    def ok(self):
        return not self.coherent or self.witness is not None


@dataclass
class GroupReport:
    name: str
    bounds: Bounds
    cfg: CFG
    graph: PathGraph
    loops: list = field(default_factory=list)

    @property
    def verdict(self):
        return TERMINATING if all(l.ok for l in self.loops) else UNKNOWN

    @property
    def coherent(self):
        return [l for l in self.loops if l.coherent]

    @property
    def failures(self):
        return [l for l in self.loops if not l.ok]


def check(cfg: CFG, bounds: Bounds, subsume: bool = True) -> GroupReport:
    graph = saturate(cfg, bounds, subsume)
    report = GroupReport(cfg.name, bounds, cfg, graph)
    for arc in graph.loops():
        if is_coherent(arc.label, bounds):
            report.loops.append(LoopReport(arc, True, find_decreasing(arc.label)))
        else:
            report.loops.append(LoopReport(arc, False))
    return report
