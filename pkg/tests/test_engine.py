from sct import corpus
from sct.analysis import CFG, CallArc, build_cfg
from sct.approx import Bounds, leq
from sct.engine import (TERMINATING, UNKNOWN, check, drop_along,
                        find_decreasing, is_coherent, saturate)
from sct.frontend import desugar
from sct.subst import apply, ccomp, parse_subst, subst_leq
from sct.terms import Branch, mk_approx, parse_term


def cfg_of(name, index=0):
    prog = desugar(corpus.load(name))
    return build_cfg(prog, prog.groups[index])


def test_f1g1_saturation_without_subsumption():
    g = saturate(cfg_of("f1g1"), Bounds(1, 1), subsume=False)
    labels = {(a.source, a.target, str(a.label)) for a in g.arcs}
    assert labels == {
        ("f1", "g1", "[x := A x]"),
        ("g1", "f1", "[x := A- A- x]"),
        ("f1", "f1", "[x := A- x]"),
        ("g1", "g1", "[x := A <-1>A- x]"),
        ("f1", "g1", "[x := A <-1>x]"),
        ("g1", "f1", "[x := <-1>A- x]"),
        ("f1", "f1", "[x := <-1>x]"),
    }


def test_subsumption_keeps_cfg_arcs():
    cfg = cfg_of("push_left")
    g = saturate(cfg, Bounds(2, 1))
    assert cfg.arcs[0].label in [a.label for a in g.arcs]


def test_saturation_is_a_fixpoint():
    for name in ("f1g1", "ack", "f2", "h123"):
        cfg = cfg_of(name)
        b = Bounds(1, 2)
        g = saturate(cfg, b)
        for tau in g.arcs:
            for sigma in cfg.arcs:
                if sigma.target != tau.source:
                    continue
                new = ccomp(tau.label, sigma.label, b)
                if new is None:
                    continue
                assert any(a.source == sigma.source and a.target == tau.target
                           and subst_leq(new, a.label) for a in g.arcs)


def test_no_arcs():
    empty = CFG("f", {"f": ("x",)}, [])
    assert saturate(empty, Bounds()).arcs == []
    assert check(empty, Bounds()).verdict == TERMINATING


def test_perms_has_24_loops():
    g = saturate(cfg_of("perms"), Bounds(0, 1))
    assert len(g.loops()) == 24


def test_coherence_examples():
    b = Bounds(2, 1)
    assert is_coherent(parse_subst("[x := <oo>x]"), b)
    # x and A x have no common non-zero lower bound, so this loop is not
    # coherent by itself; its iterates are (see test_growing_loop_is_unknown)
    assert not is_coherent(parse_subst("[x := A x]"), b)
    assert is_coherent(parse_subst("[x := A A <oo>x]"), b)
    # bare branches are only compatible with themselves; once the square is
    # folded into an approximation the suffix rule applies
    assert not is_coherent(parse_subst("[x := A- x]"), b)
    assert is_coherent(parse_subst("[x := A- x]"), Bounds(1, 1))
    assert is_coherent(parse_subst("[x := <-1>A- A- x]"), b)
    assert not is_coherent(parse_subst("[x := y; y := x]"), b)


def test_push_left_witness():
    tau = cfg_of("push_left").arcs[0].label
    w = find_decreasing(tau)
    assert w.path == Branch(("p2", "Node-"), "x")
    assert w.drop == -2
    assert w.render() == "<0>p2 Node- x"


def test_minimal_witness_prefers_shortest_path():
    tau = parse_subst("[x := A <-1>A- x]")
    w = find_decreasing(tau)
    # the empty path already decreases by one
    assert w.path == Branch((), "x") and w.drop == -1
    # A- decreases as well, and X- A- is never reported
    assert drop_along(tau, Branch(("A-",), "x")) == -1
    assert w.path != Branch(("X-", "A-"), "x")


def test_no_witness_for_unknown_loop():
    assert find_decreasing(parse_subst("[x := <oo>x]")) is None
    assert find_decreasing(parse_subst("[x := x]")) is None


def test_witnesses_revalidate():
    for name in ("map", "ack", "f1g1", "f2", "push_left", "comb_size"):
        report = check(cfg_of(name), Bounds())
        for loop in report.coherent:
            w = loop.witness
            image = apply(mk_approx(0, w.path), loop.arc.label)
            assert leq(image, mk_approx(w.drop, w.path))
            assert w.drop < 0


def test_verdicts():
    assert check(cfg_of("ack"), Bounds()).verdict == TERMINATING
    assert check(cfg_of("comb"), Bounds()).verdict == UNKNOWN
    assert check(cfg_of("h123"), Bounds(0, 2)).verdict == UNKNOWN
    assert check(cfg_of("h123"), Bounds(0, 3)).verdict == TERMINATING


def test_subsumption_does_not_change_verdicts():
    for name in corpus.NAMES:
        prog = desugar(corpus.load(name))
        for grp in prog.groups:
            cfg = build_cfg(prog, grp)
            for b in (Bounds(0, 1), Bounds(1, 2), Bounds(2, 1)):
                assert check(cfg, b, True).verdict == check(cfg, b, False).verdict


def test_bound_monotonicity_on_corpus():
    grid = [(D, B) for D in range(4) for B in range(1, 4)]
    for name in corpus.NAMES:
        prog = desugar(corpus.load(name))
        for grp in prog.groups:
            cfg = build_cfg(prog, grp)
            ok = {(D, B): check(cfg, Bounds(D, B)).verdict == TERMINATING for D, B in grid}
            for (D, B), good in ok.items():
                if good:
                    assert all(ok[(D2, B2)] for D2, B2 in grid if D2 >= D and B2 >= B), (name, D, B)


def test_unknown_arc_terms():
    arc = CallArc("f", "f", parse_subst("[x := <oo>x]"))
    assert check(CFG("f", {"f": ("x",)}, [arc]), Bounds()).verdict == UNKNOWN


def test_growing_loop_is_unknown():
    from sct.cli import load_program
    prog = load_program("val rec f x = f A[x]")
    report = check(build_cfg(prog, prog.groups[0]), Bounds())
    assert report.verdict == UNKNOWN
    assert [str(l.arc.label) for l in report.failures] == ["[x := A A <oo>x]"]
