import pytest

from sct.approx import Bounds, in_domain
from sct.errors import AnalysisError
from sct.subst import (Substitution, apply, ccomp, compose, parse_subst,
                       render_subst, subst_compatible, subst_leq)
from sct.terms import Zero, parse_term as p

PUSH = parse_subst("[x := Node(Node(p1 Node- x, p1 Node- p2 Node- x), p2 Node- p2 Node- x)]")
S1 = parse_subst("[x := A x]")      # f1 -> g1
S2 = parse_subst("[x := A- A- x]")  # g1 -> f1


def test_render_and_parse():
    s = parse_subst("[x1 := S- x1; x2 := <oo>x1 + <oo>x2]")
    assert render_subst(s) == "[x1 := S- x1; x2 := <oo>x1 + <oo>x2]"
    assert s.params == ("x1", "x2")
    with pytest.raises(ValueError):
        Substitution(("x",), ())


def test_apply_examples():
    assert apply(p("<0>p2 Node- x"), PUSH) == p("<0>p2 Node- p2 Node- x")
    assert apply(p("x"), parse_subst("[x := S Z()]")) == p("S Z()")
    z = apply(p("A- x"), parse_subst("[x := B y]"))
    assert isinstance(z, Zero) and "ctor" in z.kinds


def test_compose_f1g1():
    assert compose(S2, S1) == parse_subst("[x := A- x]")
    assert compose(S1, S2) == parse_subst("[x := A A- A- x]")
    ident = parse_subst("[x := x]")
    assert compose(S1, ident) == S1 and compose(ident, S1) == S1


def test_ccomp_f1g1():
    b = Bounds(1, 1)
    assert ccomp(S1, S2, b) == parse_subst("[x := A <-1>A- x]")
    assert ccomp(S2, S1, b) == parse_subst("[x := A- x]")


def test_non_associativity_weights():
    r, s, t = parse_subst("[r := <-1>x]"), parse_subst("[x := <1>y]"), parse_subst("[y := <1>z]")
    b = Bounds(2, 2)
    assert ccomp(ccomp(r, s, b), t, b) == parse_subst("[r := <1>z]")
    assert ccomp(r, ccomp(s, t, b), b) == parse_subst("[r := <oo>z]")


def test_non_associativity_depth():
    r, s, t = parse_subst("[r := C- x]"), parse_subst("[x := C y]"), parse_subst("[y := D z]")
    b = Bounds(1, 2)
    assert ccomp(ccomp(r, s, b), t, b) == parse_subst("[r := D z]")
    assert ccomp(r, ccomp(s, t, b), b) == parse_subst("[r := <1>z]")


def test_ccomp_square_folds_destructors():
    tau = S2
    assert ccomp(tau, tau, Bounds(2, 1)) == parse_subst("[x := <-1>A- A- x]")
    assert ccomp(tau, tau, Bounds(2, 2)) == parse_subst("[x := <-2>A- A- x]")


def test_ccomp_discards_impossible_paths():
    assert ccomp(parse_subst("[x := B- x]"), S1, Bounds(1, 1)) is None


def test_ccomp_shape_clash_is_an_error():
    with pytest.raises(AnalysisError):
        ccomp(parse_subst("[x := p1 x]"), S1, Bounds(1, 1))


def test_ccomp_lands_in_domain():
    b = Bounds(1, 1)
    out = ccomp(PUSH, PUSH, b)
    assert all(in_domain(t, b) for t in out.images)


def test_order_and_compatibility():
    assert subst_leq(S1, S1) and subst_compatible(S1, S1)
    assert not subst_compatible(S1, parse_subst("[x := B x]"))
    assert subst_leq(S1, parse_subst("[x := <1>x]"))
    tau = parse_subst("[x := A- x]")
    assert subst_compatible(tau, ccomp(tau, tau, Bounds(1, 1)))
