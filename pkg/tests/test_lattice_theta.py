from fractions import Fraction

import pytest

from thetagain.lattice_theta import (
    CountMismatch,
    EvenLatticeTheta,
    GeneralLatticeTheta,
    OrderTooSmall,
    even_as_general,
    even_from_counts,
    expand_e4_basis,
    general_from_counts,
    kissing_data,
    theta_expansion,
    to_e4_basis,
    validate_lattice_series,
)
from thetagain.modular_forms import FormName, form_series

F = Fraction


@pytest.mark.parametrize("n, b1", [(24, -720), (32, -960), (40, -1200)])
def test_even_extremal_b1(n, b1):
    assert even_from_counts(n, [0]).b == (b1,)


def test_even_extra_counts_checked():
    assert even_from_counts(40, [0, 39600]).b == (-1200,)
    with pytest.raises(CountMismatch):
        even_from_counts(40, [0, 39601])


def test_general_e8():
    lat = general_from_counts(8, [0])
    assert lat.a == (1, -16)
    assert theta_expansion(lat, 40) == form_series(FormName.E4, 40)


def test_general_odd40():
    lat = general_from_counts(40, [0, 0, 0, 39600, 1048576])
    assert lat.a == (1, -80, 1360, -2560, 20480, 0)


def test_general_dim16_lin_oggier_term():
    for K in (0, 224, 480):
        assert general_from_counts(16, [0, K]).a[2] == 2 * 16 * (16 - 23) + K


def test_expansions():
    leech = theta_expansion(even_from_counts(24, [0]))
    assert [leech.q_coeff(i) for i in range(3)] == [1, 0, 0] and leech.q_coeff(4) == 196560
    even40 = theta_expansion(even_from_counts(40, [0]))
    assert even40.q_coeff(4) == 39600 and even40.q_coeff(2) == 0
    odd40 = theta_expansion(general_from_counts(40, [0, 0, 0, 39600, 1048576]))
    assert [odd40.q_coeff(i) for i in range(6)] == [1, 0, 0, 0, 39600, 1048576]


def test_kissing_data():
    assert kissing_data(even_from_counts(8)) == (2, 240)
    assert kissing_data(even_from_counts(24, [0])) == (4, 196560)
    assert kissing_data(even_from_counts(40, [0])) == (4, 39600)
    with pytest.raises(OrderTooSmall):
        kissing_data(even_from_counts(24, [0]), order=12)


def test_to_e4_basis():
    assert to_e4_basis(general_from_counts(8, [0])) == [0, 1]
    assert to_e4_basis(GeneralLatticeTheta(8, (1, 0))) == [1, 0]
    for n in (16, 24, 40, 47):
        lat = general_from_counts(n, [3] * (n // 8))
        mu = lat.mu
        assert to_e4_basis(lat)[mu] == (-1) ** mu * lat.a[mu] / F(16) ** mu
        order = 4 * (mu + 2)
        assert expand_e4_basis(n, to_e4_basis(lat), order) == theta_expansion(lat, order)


def test_validate():
    assert validate_lattice_series(even_from_counts(24, [0]))["passed"]
    bad = validate_lattice_series(EvenLatticeTheta(1, 0, (-10000,)))
    assert not bad["passed"]
    assert bad["problems"][0] == {"norm": 2, "issue": "negative count", "value": "-9280"}
    rep = validate_lattice_series(GeneralLatticeTheta(8, (2, -16)))
    assert not rep["passed"] and rep["problems"][0]["issue"] == "constant term is not 1"


def test_count_slope_is_one():
    for n in (24, 32, 40, 48, 56, 64):
        m = n // 24
        b = even_from_counts(n, [0] * (m - 1) + [10]).b
        b1 = even_from_counts(n, [0] * (m - 1) + [11]).b
        assert b1[-1] - b[-1] == 1 and b1[:-1] == b[:-1]


def test_even_general_basis_coherence():
    for n, counts in ((24, [48]), (48, [0, 52416000]), (48, [7, 11]), (72, [0, 0, 6218175600])):
        lat = even_from_counts(n, counts)
        order = 4 * (n // 8 + 1)
        assert theta_expansion(even_as_general(lat), order) == theta_expansion(lat, order)


def test_type_invariants():
    with pytest.raises(ValueError):
        EvenLatticeTheta(1, 3, (0,))
    with pytest.raises(ValueError):
        EvenLatticeTheta(2, 0, (0,))
    with pytest.raises(ValueError):
        GeneralLatticeTheta(16, (1,))
    with pytest.raises(ValueError):
        even_from_counts(12)
