from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from thetagain.exact_arith import UniPoly
from thetagain.modular_forms import FormName, form_series
from thetagain.qseries import (
    POLY_N,
    RATIONAL,
    QSeries,
    RingMismatch,
    qs_exp,
    qs_inverse,
    qs_log,
    qs_mul,
    qs_pow_int,
    qs_pow_symbolic,
    substitute_n,
)

F = Fraction


def theta3(order=40):
    return form_series(FormName.theta3, order)


def test_mul_difference_of_squares():
    a = QSeries(RATIONAL, 20, {0: 1, 4: 1})
    b = QSeries(RATIONAL, 20, {0: 1, 4: -1})
    assert a * b == QSeries(RATIONAL, 20, {0: 1, 8: -1})


def test_order_is_min_of_operands():
    a = QSeries(RATIONAL, 10, {0: 1, 9: 5})
    b = QSeries(RATIONAL, 6, {0: 1})
    assert (a + b).order == 6 and (a * b).order == 6
    assert (a * b)[9] == 0


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        QSeries(RATIONAL, 4, {0: 1}) + QSeries(POLY_N, 4, {0: 1})


def _z2_counts(max_norm):
    r = max_norm + 1
    counts = [0] * (max_norm + 1)
    for x, y in product(range(-r, r + 1), repeat=2):
        if x * x + y * y <= max_norm:
            counts[x * x + y * y] += 1
    return counts


def test_theta3_squared_counts_z2_points():
    sq = qs_pow_int(theta3(24), 2)
    assert [sq.q_coeff(m) for m in range(6)] == _z2_counts(5) == [1, 4, 4, 0, 4, 8]


def test_pow_zero_and_e4_cubed():
    e4 = form_series(FormName.E4, 40)
    assert qs_pow_int(e4, 0) == QSeries.one(40)
    assert qs_pow_int(e4, 3).q_coeff(2) == 720


def test_negative_power_needs_unit():
    with pytest.raises(ZeroDivisionError):
        qs_pow_int(form_series(FormName.Delta8, 20), -1)


def test_inverse_geometric():
    inv = qs_inverse(QSeries(RATIONAL, 12, {0: 1, 1: -1}))
    assert inv == QSeries(RATIONAL, 12, [1] * 12)


def test_inverse_defining_property():
    t = theta3(40)
    assert t * qs_inverse(t) == QSeries.one(40)


def _newton_inverse(coeffs, T):
    """Newton iteration g <- g(2 - f g) on plain lists, doubling precision."""
    def mul(a, b):
        out = [F(0)] * T
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                if i + j < T:
                    out[i + j] += x * y
        return out
    g = [F(1)] + [F(0)] * (T - 1)
    prec = 1
    while prec < T:
        prec *= 2
        fg = mul(coeffs, g)
        two_minus = [2 - fg[0]] + [-c for c in fg[1:]]
        g = mul(g, two_minus)
    return g


def test_inverse_theta3_eighth_power_against_newton():
    T = 24
    t8 = qs_pow_int(theta3(T), 8)
    oracle = _newton_inverse([t8[e] for e in range(T)], T)
    inv = qs_inverse(t8)
    assert [inv[e] for e in range(T)] == oracle
    assert inv.q_coeff(1) == -16


def test_log_of_one_and_roundtrip():
    assert qs_log(QSeries.one(16)) == QSeries(RATIONAL, 16)
    t = theta3(40)
    assert qs_exp(qs_log(t)) == t


def test_log_theta3_against_composition():
    # log(1 + x) = sum (-1)^(k+1) x^k / k with x = theta3 - 1, on q-coefficients
    T = 6
    x = [0, 2, 0, 0, 2, 0]
    acc = [F(0)] * T
    power = [F(1)] + [F(0)] * (T - 1)
    for k in range(1, T):
        power = [sum(power[i] * x[j - i] for i in range(j + 1)) for j in range(T)]
        acc = [a + F((-1) ** (k + 1), k) * p for a, p in zip(acc, power)]
    lg = qs_log(theta3(4 * T))
    assert [lg.q_coeff(m) for m in range(T)] == acc
    assert [lg.q_coeff(m) for m in (1, 2, 3)] == [2, -2, F(8, 3)]


def test_log_exp_preconditions():
    with pytest.raises(ValueError):
        qs_log(QSeries(RATIONAL, 8, {0: 2}))
    with pytest.raises(ValueError):
        qs_exp(QSeries(RATIONAL, 8, {0: 1}))


def test_symbolic_power_low_coefficients():
    s = qs_pow_symbolic(theta3(40))
    n = UniPoly.x("n")
    assert s.q_coeff(0) == UniPoly.constant(1, "n")
    assert s.q_coeff(1) == 2 * n
    assert s.q_coeff(2) == 2 * n * (n - 1)
    for e, c in s.items():
        assert c.degree <= e // 4


def test_symbolic_power_specializes_to_integer_powers():
    t = theta3(40)
    s = qs_pow_symbolic(t)
    for n0 in range(1, 13):
        assert substitute_n(s, n0) == qs_pow_int(t, n0)


def test_symbolic_power_needs_constant_one():
    with pytest.raises(ValueError):
        qs_pow_symbolic(QSeries(RATIONAL, 8, {0: 2, 4: 1}))


def test_truncation_coherence():
    lo = qs_pow_int(form_series(FormName.E4, 24), 3) * form_series(FormName.Delta, 24)
    hi = qs_pow_int(form_series(FormName.E4, 48), 3) * form_series(FormName.Delta, 48)
    assert hi.truncate(24) == lo


def test_json_roundtrip_and_q_view():
    s = form_series(FormName.theta2, 20)
    assert QSeries.from_json(s.to_json()) == s
    assert s.q_view() is None
    e4 = form_series(FormName.E4, 20)
    assert e4.q_view()["terms"][:2] == [[0, "1"], [2, "240"]]
    sym = qs_pow_symbolic(theta3(12))
    assert QSeries.from_json(sym.to_json()) == sym


small_series = st.dictionaries(st.integers(0, 11), st.fractions(-5, 5, max_denominator=4),
                               max_size=6).map(lambda d: QSeries(RATIONAL, 12, d))


@settings(max_examples=50)
@given(small_series, small_series, small_series)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert qs_mul(a, QSeries.one(12)) == a
