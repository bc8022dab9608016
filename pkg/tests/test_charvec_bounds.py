from fractions import Fraction
from math import factorial

import pytest

from thetagain.charvec_bounds import (
    Infeasible,
    chi_count,
    conjecture_top_bounds,
    dimension_bound,
    lambda_sign,
    paper_constraint,
    rootless_symbolic_coeffs,
)
from thetagain.exact_arith import UniPoly, poly_eval
from thetagain.lattice_theta import general_from_counts

F = Fraction
n = UniPoly.x("n")


def test_low_order_symbolic_coefficients():
    b = rootless_symbolic_coeffs(4).b
    assert b[0] == -2 * n
    assert b[1] == 2 * n ** 2 - 46 * n
    assert b[2] == F(-4, 3) * n ** 3 + 92 * n ** 2 - F(4832, 3) * n
    assert rootless_symbolic_coeffs(3).b == b[:2]


def test_leading_coefficients():
    b = rootless_symbolic_coeffs(8).b
    for l, p in enumerate(b, start=1):
        assert p.degree == l
        assert p.lead == F((-2) ** l, factorial(l))
        assert p(0) == 0


def test_specialization_matches_triangular_solve():
    b = rootless_symbolic_coeffs(6).b
    for n0 in range(25, 49):
        a = general_from_counts(n0, [0] * (n0 // 8)).a
        for l in range(1, min(6, n0 // 8 + 1)):
            assert b[l - 1](n0) == a[l], (n0, l)


def test_top_bounds_k3():
    L, U = conjecture_top_bounds(3)
    assert U == -128 * n ** 2 + 11136 * n
    assert U - L == UniPoly.constant(64 ** 3, "n")


@pytest.mark.parametrize("k, N", [(3, 23171), (4, 14940), (5, 12884)])
def test_printed_thresholds(k, N):
    rep = dimension_bound(k, "paper")
    assert rep.threshold == N
    p, c = paper_constraint(k)
    assert poly_eval(p, N) <= c < poly_eval(p, N + 1)


@pytest.mark.parametrize("k, N", [(3, 23214), (4, 14940), (5, 12887), (6, 12335), (7, 12352), (8, 12640)])
def test_derived_thresholds(k, N):
    rep = dimension_bound(k, "derived")
    assert rep.threshold == N
    p = rep.constraint_poly
    assert poly_eval(p, N) <= rep.bound_constant < poly_eval(p, N + 1)


def test_derived_k3_near_printed():
    assert abs(dimension_bound(3).threshold - 23171) / 23171 < 0.005


def test_mode_and_range_errors():
    with pytest.raises(ValueError):
        dimension_bound(3, "bogus")
    with pytest.raises(ValueError):
        dimension_bound(6, "paper")
    with pytest.raises(ValueError):
        rootless_symbolic_coeffs(9)


def test_lambda_sign_and_chi_count():
    assert [lambda_sign(k) for k in range(1, 5)] == [-1, 1, -1, 1]
    assert chi_count(3, 24, -16 ** 3) == 1
    assert chi_count(4, 40, 16 ** 4) == 256
    assert chi_count(2, 16, 0) == 0
    with pytest.raises(Infeasible) as info:
        chi_count(3, 24, 16 ** 3)
    assert info.value.witness == -1


def test_json_shape():
    js = dimension_bound(4, "derived").to_json()
    assert js["threshold"] == 14940 and js["lambda_sign"] == "plus"
    sym = rootless_symbolic_coeffs(3).to_json()
    assert set(sym["b"]) == {"1", "2"}
