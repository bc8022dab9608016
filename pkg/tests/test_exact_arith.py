from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from thetagain.exact_arith import (
    IsolatingInterval,
    UniPoly,
    find_threshold,
    format_rational,
    isolate_roots,
    largest_satisfying_integer,
    parse_rational,
    poly_eval,
    refine_interval,
    squarefree_decomposition,
    sturm_count,
)

F = Fraction
z = UniPoly.x("z")
n = UniPoly.x("n")

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
polys = st.lists(rationals, min_size=0, max_size=6).map(lambda cs: UniPoly("z", cs))


def test_poly_eval_linear():
    assert poly_eval(1 - z, F(1, 4)) == F(3, 4)


def test_poly_eval_even40_inverse_gain():
    D = (1 - z) ** 5 - F(75, 16) * z ** 2 * (1 - z) ** 2
    assert poly_eval(D, F(1, 4)) == F(297, 4096)


def test_poly_eval_odd40_inverse_gain():
    D = UniPoly("z", [1, -5, F(1360, 256), F(-2560, 4096), F(20480, 65536)])
    assert poly_eval(D, F(1, 4)) == F(301, 4096)


@given(polys, polys, rationals)
def test_eval_is_ring_homomorphism(p, q, x):
    assert poly_eval(p + q, x) == poly_eval(p, x) + poly_eval(q, x)
    assert poly_eval(p * q, x) == poly_eval(p, x) * poly_eval(q, x)


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_rationals_reduced_and_roundtrip(p, q):
    x = F(p, q)
    assert x.denominator > 0 and gcd(abs(x.numerator), x.denominator) == 1
    assert parse_rational(format_rational(x)) == x


def test_rational_format():
    assert format_rational(F(4096, 297)) == "4096/297"
    assert format_rational(F(-6, 3)) == "-2"
    assert format_rational(F(0)) == "0"
    with pytest.raises(ValueError):
        parse_rational("x")
    with pytest.raises(ValueError):
        parse_rational("1/0")


def test_unipoly_normalizes_and_serializes():
    p = UniPoly("z", [1, 0, 0])
    assert p.degree == 0 and UniPoly("z").degree == -1
    q = UniPoly("n", ["1/2", -3, 2])
    assert UniPoly.from_json(q.to_json(), "n") == q
    with pytest.raises(ValueError):
        z + n


def test_sturm_endpoint_convention():
    p = z ** 2 - F(1, 16)
    assert sturm_count(p, 0, F(1, 4)) == 1                # root 1/4 counted at the closed end
    assert sturm_count(p, 0, F(1, 4) - F(1, 10**9)) == 0
    assert sturm_count(p, F(-1, 4), F(1, 4)) == 1         # -1/4 excluded at the open end
    assert sturm_count(p, -1, 1) == 2


def test_sturm_odd40_derivative_negative():
    d = F(5, 8) * (2 * z ** 3 - 3 * z ** 2 + 17 * z - 8)
    assert sturm_count(d, 0, F(1, 4)) == 0
    assert all(poly_eval(d, F(i, 1024)) < 0 for i in range(1, 257))


def test_sturm_planted_roots():
    p = UniPoly.from_roots([F(1, 8), F(3, 16), F(1, 8), 2, -1, F(7, 3)], lead=F(-3, 7))
    assert sturm_count(p, 0, F(1, 4)) == 2


def test_sturm_rejects_zero_and_empty():
    with pytest.raises(ValueError):
        sturm_count(UniPoly("z"), 0, 1)
    with pytest.raises(ValueError):
        sturm_count(z, 1, 1)


def test_isolate_simple():
    ivs = isolate_roots(z - F(1, 8), 0, F(1, 4))
    assert len(ivs) == 1 and ivs[0].lo < F(1, 8) <= ivs[0].hi


def test_isolate_two_roots_disjoint():
    p = (z - F(1, 8)) * (z - F(3, 16))
    ivs = isolate_roots(p, 0, F(1, 4))
    assert len(ivs) == 2
    assert ivs[0].hi <= ivs[1].lo
    assert ivs[0].lo < F(1, 8) <= ivs[0].hi and ivs[1].lo < F(3, 16) <= ivs[1].hi


def test_isolate_even40_derivative_is_empty():
    D = (1 - z) ** 5 - F(75, 16) * z ** 2 * (1 - z) ** 2
    d = D.derivative()
    assert isolate_roots(d, 0, F(1, 4)) == []
    # independent cross-check: sign on a dyadic grid of 2^8 points
    assert all(poly_eval(d, F(i, 1024)) < 0 for i in range(1, 257))


def test_multiplicity_hint_and_refinement():
    p = (z - F(1, 10)) ** 3 * (z - F(1, 5)) ** 2
    ivs = isolate_roots(p, 0, F(1, 4))
    assert [iv.multiplicity_hint for iv in ivs] == [3, 2]
    fine = refine_interval(p, ivs[0], F(1, 2 ** 30))
    assert fine.width < F(1, 2 ** 30) and fine.lo < F(1, 10) <= fine.hi
    dec = squarefree_decomposition(p)
    assert dec == [UniPoly.constant(1), z - F(1, 5), z - F(1, 10)]


def test_isolating_interval_invariants():
    with pytest.raises(ValueError):
        IsolatingInterval(F(1), F(1))
    iv = IsolatingInterval(F(0), F(1, 4), 2)
    assert IsolatingInterval.from_json(iv.to_json()) == iv


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=8), min_size=1, max_size=6),
       st.fractions(min_value=-3, max_value=0, max_denominator=4),
       st.fractions(min_value=F(1, 4), max_value=3, max_denominator=4))
def test_sturm_count_matches_isolation_and_planted_roots(roots, a, width):
    p = UniPoly.from_roots(roots)
    b = a + width
    expected = len({r for r in roots if a < r <= b})
    assert sturm_count(p, a, b) == expected == len(isolate_roots(p, a, b))


def test_largest_satisfying_integer_k3():
    p = 128 * n ** 2 - 174 * n
    N = largest_satisfying_integer(p, 2 ** 36, 25, 2 ** 25)
    assert N == 23171
    assert p(N) <= 2 ** 36 < p(N + 1)


def test_largest_satisfying_integer_identity():
    assert largest_satisfying_integer(n, 10, 0, 100) == 10


def test_largest_satisfying_integer_k4_printed():
    p = (64 ** 3 * 2 * n - 64 ** 2 * (2 * n ** 2 - 46 * n)
         + 64 * (F(4, 3) * n ** 3 - 92 * n ** 2 + F(4832, 3) * n))
    # independent evaluation at the printed threshold and one past it
    assert p(14940) <= 2 ** 48 < p(14941)
    assert largest_satisfying_integer(p, 2 ** 48, 33, 2 ** 20) == 14940


def test_largest_satisfying_integer_preconditions():
    with pytest.raises(ValueError):
        largest_satisfying_integer(n, 10, 11, 20)
    with pytest.raises(ValueError):
        largest_satisfying_integer(n, 10, 0, 5)
    assert find_threshold(n, 1000, 0, 2) == 1000
