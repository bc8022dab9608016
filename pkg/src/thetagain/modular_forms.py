"""Theta constants, E4, Delta and Delta8 as exact u-series.

The theta constants come from their Jacobi triple products; E4, Delta and
Delta8 are assembled from them:

    E4     = (theta2^8 + theta3^8 + theta4^8) / 2
    Delta  = theta2^8 theta3^8 theta4^8 / 256
    Delta8 = theta2^4 theta4^4 / 16
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .qseries import QSeries, qs_pow_int

__all__ = [
    "FormName",
    "form_series",
    "sigma3",
    "check_identities",
    "a_coeff",
    "a_coeff_order",
]


class FormName(str, Enum):
    theta2 = "theta2"
    theta3 = "theta3"
    theta4 = "theta4"
    E4 = "E4"
    Delta = "Delta"
    Delta8 = "Delta8"


def _product(factors, order: int) -> QSeries:
    """Multiply binomial factors ``1 + sign*u**e``, skipping those with ``e >= order``."""
    acc = QSeries.one(order)
    for e, sign in factors:
        if e < order:
            acc = acc * QSeries(acc.ring, order, {0: 1, e: sign})
    return acc


def _theta_product(name: str, order: int) -> QSeries:
    # q**k == u**(4k); the factor count is bounded by the order up front.
    nmax = order // 8 + 1
    factors = []
    for n in range(1, nmax + 1):
        factors.append((8 * n, -1))                       # 1 - q^{2n}
        if name == "theta2":
            factors += [(8 * n, 1), (8 * n, 1)]           # (1 + q^{2n})^2
        elif name == "theta3":
            factors += [(8 * n - 4, 1), (8 * n - 4, 1)]   # (1 + q^{2n-1})^2
        else:
            factors += [(8 * n - 4, -1), (8 * n - 4, -1)]  # (1 - q^{2n-1})^2
    if name == "theta2":
        # e^{pi i tau/4} (1 + q^0) = 2u
        inner = _product(factors, max(order - 1, 1))
        return QSeries(inner.ring, order, {e + 1: 2 * c for e, c in inner.items()})
    return _product(factors, order)


@lru_cache(maxsize=256)
def form_series(name: FormName | str, order: int) -> QSeries:
    """Exact expansion of a named form to ``order`` terms in ``u``."""
    name = FormName(name)
    if order < 1:
        raise ValueError("order must be >= 1")
    if name in (FormName.theta2, FormName.theta3, FormName.theta4):
        return _theta_product(name.value, order)
    t2 = form_series(FormName.theta2, order)
    t4 = form_series(FormName.theta4, order)
    if name is FormName.Delta8:
        return qs_pow_int(t2, 4) * qs_pow_int(t4, 4) * Fraction(1, 16)
    t3 = form_series(FormName.theta3, order)
    t2_8, t3_8, t4_8 = (qs_pow_int(t, 8) for t in (t2, t3, t4))
    if name is FormName.E4:
        return (t2_8 + t3_8 + t4_8) * Fraction(1, 2)
    return t2_8 * t3_8 * t4_8 * Fraction(1, 256)


def sigma3(n: int) -> int:
    """Sum of cubes of the positive divisors of ``n``, by trial division."""
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def _first_difference(a: QSeries, b: QSeries) -> int | None:
    T = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    for e in range(T):
        if ac.get(e, 0) != bc.get(e, 0):
            return e
    return None


def check_identities(order: int, forms: dict | None = None) -> dict:
    """Check the five defining identities coefficientwise to ``order``.

    ``forms`` may override any of the six named series (used for negative
    controls).  Failures are reported, never raised.
    """
    if order < 8:
        raise ValueError("identity checks need order >= 8")
    f = {n.value: form_series(n, order) for n in FormName}
    f.update(forms or {})
    t2, t3, t4 = f["theta2"], f["theta3"], f["theta4"]
    E4, Delta, Delta8 = f["E4"], f["Delta"], f["Delta8"]
    t2_4, t3_4, t4_4 = (qs_pow_int(t, 4) for t in (t2, t3, t4))
    t2_8, t3_8, t4_8 = (t * t for t in (t2_4, t3_4, t4_4))
    sigma_series = QSeries(E4.ring, order, {0: 1, **{
        8 * m: 240 * sigma3(m) for m in range(1, order // 8 + 1)}})
    pairs = [
        ("jacobi", "theta3^4 = theta2^4 + theta4^4", t3_4, t2_4 + t4_4),
        ("e4_from_thetas", "E4 = (theta2^8 + theta3^8 + theta4^8)/2", E4,
         (t2_8 + t3_8 + t4_8) * Fraction(1, 2)),
        ("delta_from_thetas", "Delta = theta2^8 theta3^8 theta4^8/256", Delta,
         t2_8 * t3_8 * t4_8 * Fraction(1, 256)),
        ("delta8_from_e4", "16 Delta8 = theta3^8 - E4", Delta8 * 16, t3_8 - E4),
        ("e4_sigma3", "E4 = 1 + 240 sum sigma3(m) q^(2m)", E4, sigma_series),
    ]
    results = []
    for key, text, lhs, rhs in pairs:
        bad = _first_difference(lhs, rhs)
        results.append({"identity": key, "statement": text, "passed": bad is None,
                        "first_failing_exponent": bad})
    return {"order": order, "grid": "u", "all_passed": all(r["passed"] for r in results),
            "identities": results}


def a_coeff_order(j: int, i: int) -> int:
    return 4 * (2 * j + 2 * i) + 1


def a_coeff(h: int, j: int, i: int) -> Fraction:
    """Coefficient of ``q**(2j+2i)`` in ``E4**h * Delta**j``."""
    if h < 0 or j < 0 or i < 1:
        raise ValueError("a_coeff needs h >= 0, j >= 0, i >= 1")
    return _e4_delta_power(h, j, a_coeff_order(j, i)).q_coeff(2 * j + 2 * i)


@lru_cache(maxsize=512)
def _e4_delta_power(h: int, j: int, order: int) -> QSeries:
    return (qs_pow_int(form_series(FormName.E4, order), h)
            * qs_pow_int(form_series(FormName.Delta, order), j))
