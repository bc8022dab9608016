"""Inverse secrecy polynomials and certified secrecy gains.

With ``z = theta2^4 theta4^4 / theta3^8`` the inverse of the secrecy function
is a polynomial ``D(z)``; ``y`` in ``(0, inf)`` maps onto ``z`` in
``(0, 1/4]`` with ``y = 1`` going to ``z = 1/4``.  The gain is
``1 / min D`` over that interval, and the conjectured value is
``1 / D(1/4)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact_arith import (
    IsolatingInterval,
    UniPoly,
    as_fraction,
    format_rational,
    isolate_roots,
    poly_eval,
    refine_interval,
)
from .lattice_theta import (
    EvenLatticeTheta,
    GeneralLatticeTheta,
    even_from_counts,
    general_from_counts,
)
from .modular_forms import a_coeff

__all__ = [
    "QUARTER",
    "EPSILON",
    "DEFAULT_BRACKET_WIDTH",
    "CrossCheckError",
    "NonRealizable",
    "SecrecyCertificate",
    "secrecy_inverse_poly",
    "certify_gain",
    "gain_at_one",
    "thm1_difference",
    "thm1_report",
    "thm2_compare",
    "thm2_report",
    "thm3_difference",
    "thm3_report",
    "lin_oggier_gain",
]

QUARTER = Fraction(1, 4)
EPSILON = Fraction(1, 1024)
DEFAULT_BRACKET_WIDTH = Fraction(1, 2 ** 40)


class CrossCheckError(ArithmeticError):
    """A closed-form statement disagrees with the direct computation."""


class NonRealizable(ValueError):
    """D(1/4) <= 0: the series cannot be the theta series of a lattice."""


def secrecy_inverse_poly(lat) -> UniPoly:
    """``D(z)`` for an even or general lattice; always ``D(0) = 1``."""
    z = UniPoly.x("z")
    one_minus = 1 - z
    if isinstance(lat, EvenLatticeTheta):
        m, k = lat.m, lat.k
        D = one_minus ** (3 * m + k)
        for j, bj in enumerate(lat.b, start=1):
            D = D + one_minus ** (3 * (m - j) + k) * z ** (2 * j) * (bj / Fraction(256) ** j)
        return D
    if isinstance(lat, GeneralLatticeTheta):
        return UniPoly("z", [ar / Fraction(16) ** r for r, ar in enumerate(lat.a)])
    raise TypeError(f"not a lattice theta: {type(lat).__name__}")


def gain_at_one(lat) -> Fraction:
    """``1 / D(1/4)``, the gain if the maximum sits at ``y = 1``."""
    v = poly_eval(secrecy_inverse_poly(lat), QUARTER)
    if v <= 0:
        raise NonRealizable(f"D(1/4) = {v} <= 0; secrecy function must be positive")
    return 1 / v


def _interval_eval(p: UniPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of ``p`` over ``[lo, hi]`` by interval Horner."""
    a = b = Fraction(0)
    for c in reversed(p.coeffs):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


@dataclass(frozen=True)
class SecrecyCertificate:
    D: UniPoly
    value_at_quarter: Fraction
    verdict: str
    interior_critical_intervals: tuple[IsolatingInterval, ...] = ()
    gain: Optional[Fraction] = None
    gain_bracket: tuple[Optional[Fraction], Optional[Fraction]] = (None, None)
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        fmt = lambda x: None if x is None else format_rational(x)  # noqa: E731
        return {
            "D": self.D.to_json(),
            "D_derivative": self.D.derivative().to_json(),
            "value_at_quarter": fmt(self.value_at_quarter),
            "verdict": self.verdict,
            "gain": fmt(self.gain),
            "gain_bracket": [fmt(x) for x in self.gain_bracket],
            "interior_critical_intervals": [iv.to_json() for iv in self.interior_critical_intervals],
            "notes": list(self.notes),
        }


def certify_gain(lat, bracket_width=DEFAULT_BRACKET_WIDTH) -> SecrecyCertificate:
    """Decide whether ``D`` attains its minimum on ``(0, 1/4]`` at ``1/4``.

    The test is on ``E(z) = D(z) - D(1/4)``: no root of ``E`` in the open
    interval plus ``E(EPSILON) > 0`` certifies the endpoint minimum.
    Otherwise critical points of ``D`` are isolated and ``1/min D`` is
    bracketed with exact endpoints.
    """
    D = lat if isinstance(lat, UniPoly) else secrecy_inverse_poly(lat)
    bracket_width = as_fraction(bracket_width)
    v = poly_eval(D, QUARTER)
    E = D - v
    dD = D.derivative()
    crit = tuple(iv for iv in (isolate_roots(dD, 0, QUARTER) if dD else [])
                 if iv.hi < QUARTER or poly_eval(dD, QUARTER) != 0)
    if E.is_zero():
        return SecrecyCertificate(D, v, "tie", crit, None, _bracket_point(v),
                                  ("D is constant",))
    interior = [iv for iv in isolate_roots(E, 0, QUARTER) if iv.hi < QUARTER]
    notes = []
    if not interior:
        if poly_eval(E, EPSILON) > 0:
            gain = 1 / v if v > 0 else None
            if v <= 0:
                notes.append("D(1/4) <= 0: not a realizable theta series")
            return SecrecyCertificate(D, v, "holds_at_quarter", crit, gain,
                                      _bracket_point(v), tuple(notes))
        verdict = "interior_minimum"
    elif any(iv.multiplicity_hint % 2 for iv in interior):
        verdict = "interior_minimum"
    else:
        # Only even-multiplicity contacts: E keeps one sign off its roots.
        x = EPSILON
        while poly_eval(E, x) == 0:
            x /= 2
        verdict = "tie" if poly_eval(E, x) > 0 else "interior_minimum"
        notes.append(f"D - D(1/4) touches zero at {len(interior)} interior point(s)")
    lo, hi = _min_bracket(D, v, crit, bracket_width)
    return SecrecyCertificate(D, v, verdict, crit, None, _gain_bracket(lo, hi), tuple(notes))


def _bracket_point(v: Fraction):
    return (1 / v, 1 / v) if v > 0 else (None, None)


def _min_bracket(D: UniPoly, v: Fraction, crit, width: Fraction) -> tuple[Fraction, Fraction]:
    """Exact rational bracket of ``inf D`` over ``(0, 1/4]``."""
    d0 = poly_eval(D, 0)  # infimum may be approached at the open end
    lower = min(v, d0)
    upper = min(v, d0)
    dD = D.derivative()
    for iv in crit:
        iv = refine_interval(dD, iv, width)
        enc_lo, _ = _interval_eval(D, iv.lo, iv.hi)
        lower = min(lower, enc_lo)
        upper = min(upper, poly_eval(D, iv.midpoint), poly_eval(D, iv.hi))
    return lower, upper


def _gain_bracket(lower: Fraction, upper: Fraction):
    if upper <= 0:
        return (None, None)
    return (1 / upper, 1 / lower if lower > 0 else None)


# -- comparison theorems ---------------------------------------------------

def _d_quarter(lat) -> Fraction:
    return poly_eval(secrecy_inverse_poly(lat), QUARTER)


def _even_counts(m: int, *top) -> list:
    return [0] * (m - len(top)) + list(top)


def thm1_report(m: int, k: int, kappa, kappa_prime) -> dict:
    """Closed form vs. direct ``D(1/4)`` difference for two counts of norm ``2m``."""
    if m < 1 or k not in (0, 1, 2):
        raise ValueError("need m >= 1 and k in {0, 1, 2}")
    kappa, kappa_prime = as_fraction(kappa), as_fraction(kappa_prime)
    n = 24 * m + 8 * k
    direct = (_d_quarter(even_from_counts(n, _even_counts(m, kappa)))
              - _d_quarter(even_from_counts(n, _even_counts(m, kappa_prime))))
    delta = kappa - kappa_prime
    statement = delta * Fraction(3 ** k, 4 ** (6 * m + k))
    proof_line = delta * Fraction(3 ** (2 * m), 4 ** (6 * m + k))
    return {
        "m": m, "k": k, "dim": n,
        "kappa": format_rational(kappa), "kappa_prime": format_rational(kappa_prime),
        "formula": "(kappa - kappa') * 3^k / 4^(6m+k)",
        "formula_value": format_rational(statement),
        "direct_value": format_rational(direct),
        "agrees": statement == direct,
        "alternative_3^(2m)_value": format_rational(proof_line),
        "alternative_3^(2m)_agrees": proof_line == direct,
    }


def thm1_difference(m: int, k: int, kappa, kappa_prime) -> Fraction:
    """``(kappa - kappa') 3^k / 4^(6m+k)``, verified against direct evaluation."""
    rep = thm1_report(m, k, kappa, kappa_prime)
    if not rep["agrees"]:
        raise CrossCheckError(f"closed form {rep['formula_value']} != direct {rep['direct_value']}")
    return Fraction(rep["direct_value"])


def thm2_multiplier(m: int, k: int) -> int:
    """Multiplier exactly as printed: ``240k - 24(m-1) - 12^3``."""
    return 240 * k - 24 * (m - 1) - 12 ** 3


def thm2_report(m: int, k: int, kap_lo, kap_hi, kap_lo_p, kap_hi_p) -> dict:
    """Printed inequality vs. direct ``D(1/4)`` comparison.

    ``kap_lo`` / ``kap_hi`` are the counts of norms ``2m-2`` and ``2m``.
    The multiplier that the direct computation implies is also reported:
    the norm-``2m`` coefficient of ``E4^(3+k) Delta^(m-1)`` minus 1728.
    """
    if m < 2:
        raise ValueError("m >= 2 required: the norm 2m-2 count must be a free count")
    if k not in (0, 1, 2):
        raise ValueError("k must be 0, 1 or 2")
    vals = [as_fraction(x) for x in (kap_lo, kap_hi, kap_lo_p, kap_hi_p)]
    kap_lo, kap_hi, kap_lo_p, kap_hi_p = vals
    n = 24 * m + 8 * k
    d = _d_quarter(even_from_counts(n, _even_counts(m, kap_lo, kap_hi)))
    d_p = _d_quarter(even_from_counts(n, _even_counts(m, kap_lo_p, kap_hi_p)))
    mult = thm2_multiplier(m, k)
    printed = (kap_hi - kap_hi_p) < (kap_lo - kap_lo_p) * mult
    implied = a_coeff(3 + k, m - 1, 1) - 12 ** 3
    notes = []
    if not kap_lo < kap_hi:
        notes.append("hypothesis kappa_(2m-2) < kappa_(2m) not met; it does not enter the inequality")
    return {
        "m": m, "k": k, "dim": n,
        "counts": [format_rational(x) for x in vals],
        "printed_multiplier": mult,
        "printed_predicate": printed,
        "direct_predicate": d < d_p,
        "direct_D_quarter": [format_rational(d), format_rational(d_p)],
        "implied_multiplier": format_rational(implied),
        "implied_predicate": (kap_hi - kap_hi_p) < (kap_lo - kap_lo_p) * implied,
        "agrees": printed == (d < d_p),
        "notes": notes,
    }


def thm2_compare(m: int, k: int, kap_lo, kap_hi, kap_lo_p, kap_hi_p) -> bool:
    """Printed inequality; raises :class:`CrossCheckError` if the direct
    comparison of ``D(1/4)`` says otherwise."""
    rep = thm2_report(m, k, kap_lo, kap_hi, kap_lo_p, kap_hi_p)
    if not rep["agrees"]:
        raise CrossCheckError(
            f"printed inequality gives {rep['printed_predicate']} but direct comparison gives "
            f"{rep['direct_predicate']} (multiplier {rep['printed_multiplier']}; direct "
            f"computation implies {rep['implied_multiplier']})")
    return rep["printed_predicate"]


def thm3_report(n: int, h, h_prime) -> dict:
    if n < 8:
        raise ValueError("need n >= 8")
    h, h_prime = as_fraction(h), as_fraction(h_prime)
    mu = n // 8
    direct = (_d_quarter(general_from_counts(n, [0] * (mu - 1) + [h]))
              - _d_quarter(general_from_counts(n, [0] * (mu - 1) + [h_prime])))
    formula = (h - h_prime) / Fraction(4) ** (3 * mu)
    printed = (h - h_prime) / Fraction(4) ** (5 * mu)
    return {
        "dim": n, "mu": mu,
        "h": format_rational(h), "h_prime": format_rational(h_prime),
        "direct_value": format_rational(direct),
        "formula": "(h - h') / 4^(3 mu)",
        "formula_value": format_rational(formula),
        "agrees": direct == formula,
        "printed_4^(5mu)_value": format_rational(printed),
        "printed_4^(5mu)_agrees": printed == direct,
    }


def thm3_difference(n: int, h, h_prime) -> Fraction:
    """Direct ``D(1/4)`` difference for counts of norm ``n // 8``; equals
    ``(h - h') / 4^(3 mu)``."""
    rep = thm3_report(n, h, h_prime)
    if not rep["agrees"]:
        raise CrossCheckError(f"{rep['formula_value']} != direct {rep['direct_value']}")
    return Fraction(rep["direct_value"])


def lin_oggier_gain(n: int, K) -> Fraction:
    """Closed form for dimensions 16..23, checked against the general basis."""
    if not 16 <= n <= 23:
        raise ValueError("closed form holds for 16 <= n <= 23")
    K = as_fraction(K)
    denom = 1 - Fraction(2 * n, 2 ** 6) + (2 * n * (n - 23) + K) / Fraction(2 ** 12)
    if denom <= 0:
        raise NonRealizable(f"denominator {denom} <= 0")
    closed = 1 / denom
    machine = gain_at_one(general_from_counts(n, [0, K]))
    if closed != machine:
        raise CrossCheckError(f"closed form {closed} != general machinery {machine}")
    return closed
