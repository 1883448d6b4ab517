import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from sct.approx import Bounds, collapse, in_domain, leq
from sct.terms import parse_term, summands, normalize

import properties as P
from oracles import oracle_summands

CASES = settings(max_examples=1000, deadline=None,
                 suppress_health_check=[HealthCheck.too_slow])


@pytest.mark.parametrize("name", sorted(P.PROPERTIES))
@CASES
@given(rng=st.randoms(use_true_random=False))
def test_property(name, rng):
    P.PROPERTIES[name](rng)


def test_clash_critical_pair():
    # <1>(B- (), x): distributing first discards the clash, reducing the
    # component first turns the whole tuple into zero
    raw = ("approx", 1, ("tuple", (("dtor", "B", ("tuple", ())), ("var", "x"))))
    outer, _ = oracle_summands(raw, "outermost")
    inner, clashed = oracle_summands(raw, "innermost")
    assert clashed
    assert outer == summands(parse_term("<2>x")) and inner == frozenset()
    assert summands(normalize(raw)) == inner


def test_weight_clamp_counterexample():
    # (<-3>x, y) <= <-2>x + <1>y, the latter is a fixed point of collapsing,
    # but collapsing the former raises -3 to -2 one level too deep
    b = Bounds(2, 2)
    t, u = parse_term("(<-3>x, y)"), parse_term("<-2>x + <1>y")
    assert leq(t, u) and in_domain(u, b) and collapse(u, b) == u
    c = collapse(t, b)
    assert c == parse_term("(<-2>x, y)") and not leq(c, u)
    # no term of the domain lies between t and both of its upper bounds c, u:
    # a tuple needs a first weight w >= -2 and w + 1 <= -2
    for w in range(-2, 2):
        z = parse_term("(<%d>x, y)" % w)
        assert leq(t, z) and in_domain(z, b) and not (leq(z, c) and leq(z, u))


def test_depth_then_weight_counterexample():
    t = parse_term("<3>B- B- x")
    small, big = collapse(t, Bounds(1, 3)), collapse(t, Bounds(3, 3))
    assert small == parse_term("<2>B- x") and big == parse_term("<oo>B- B- x")
    assert not leq(big, small)
    # a shorter branch would have been a finer choice at the larger bounds
    assert in_domain(small, Bounds(3, 3)) and leq(t, small)
