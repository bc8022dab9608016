"""Theta series of unimodular lattices on polynomial bases.

Even lattices of dimension ``n = 24m + 8k`` use the (E4, Delta) basis

    Theta = E4^(3m+k) + sum_{j=1..m} b_j E4^(3(m-j)+k) Delta^j,

and any unimodular lattice of dimension ``n`` (``mu = n // 8``) uses

    Theta = sum_{r=0..mu} a_r theta3^(n-8r) Delta8^r.

Coefficients are fixed by short-vector counts through a forward triangular
solve.  Nothing here decides whether a coefficient vector is realised by a
lattice; see :func:`validate_lattice_series`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence, Union

from .exact_arith import as_fraction, format_rational
from .modular_forms import FormName, form_series
from .qseries import QSeries, qs_pow_int

__all__ = [
    "EvenLatticeTheta",
    "GeneralLatticeTheta",
    "CountMismatch",
    "OrderTooSmall",
    "even_from_counts",
    "general_from_counts",
    "theta_expansion",
    "default_order",
    "kissing_data",
    "to_e4_basis",
    "expand_e4_basis",
    "validate_lattice_series",
    "even_as_general",
]


class CountMismatch(ValueError):
    """Extra counts beyond the free coefficients disagree with the expansion."""


class OrderTooSmall(ValueError):
    """Every non-constant coefficient up to the order is zero."""


@dataclass(frozen=True)
class EvenLatticeTheta:
    m: int
    k: int
    b: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.m < 0 or self.k not in (0, 1, 2):
            raise ValueError("even lattices need m >= 0 and k in {0, 1, 2}")
        object.__setattr__(self, "b", tuple(as_fraction(x) for x in self.b))
        if len(self.b) != self.m:
            raise ValueError(f"expected {self.m} coefficients b_1..b_m, got {len(self.b)}")

    @property
    def dim(self) -> int:
        return 24 * self.m + 8 * self.k

    @classmethod
    def for_dim(cls, n: int, b: Sequence = ()) -> "EvenLatticeTheta":
        m, k = split_even_dim(n)
        return cls(m, k, tuple(b))

    def to_json(self) -> dict:
        return {"basis": "E4^h Delta^j", "dim": self.dim, "m": self.m, "k": self.k,
                "b": [format_rational(x) for x in self.b]}


@dataclass(frozen=True)
class GeneralLatticeTheta:
    n: int
    a: tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be positive")
        object.__setattr__(self, "a", tuple(as_fraction(x) for x in self.a))
        if len(self.a) != self.mu + 1:
            raise ValueError(f"expected {self.mu + 1} coefficients a_0..a_mu, got {len(self.a)}")

    @property
    def mu(self) -> int:
        return self.n // 8

    @property
    def dim(self) -> int:
        return self.n

    def to_json(self) -> dict:
        return {"basis": "theta3^(n-8r) Delta8^r", "dim": self.n, "mu": self.mu,
                "a": [format_rational(x) for x in self.a]}


Lattice = Union[EvenLatticeTheta, GeneralLatticeTheta]


def split_even_dim(n: int) -> tuple[int, int]:
    if n < 0 or n % 8:
        raise ValueError(f"even unimodular lattices need 8 | n, got n={n}")
    return n // 24, (n % 24) // 8


def default_order(lat: Lattice) -> int:
    if isinstance(lat, EvenLatticeTheta):
        return 4 * (2 * lat.m + 4)
    return 4 * (lat.mu + 4)


@lru_cache(maxsize=1024)
def _even_basis(h: int, j: int, order: int) -> QSeries:
    return (qs_pow_int(form_series(FormName.E4, order), h)
            * qs_pow_int(form_series(FormName.Delta, order), j))


@lru_cache(maxsize=1024)
def _general_basis(r: int, s: int, order: int) -> QSeries:
    return (qs_pow_int(form_series(FormName.theta3, order), r)
            * qs_pow_int(form_series(FormName.Delta8, order), s))


def _pad(counts: Sequence, length: int) -> list[Fraction]:
    cs = [as_fraction(c) for c in counts]
    return cs + [Fraction(0)] * (length - len(cs))


def _check_extra(series: QSeries, counts: Sequence[Fraction], step: int, first: int) -> None:
    for idx in range(first, len(counts)):
        norm = step * (idx + 1)
        got = series.q_coeff(norm)
        if got != counts[idx]:
            raise CountMismatch(
                f"count for norm {norm} is forced to {got}, but {counts[idx]} was given")


def even_from_counts(n: int, counts: Sequence = ()) -> EvenLatticeTheta:
    """Solve for ``b_1..b_m`` given counts of norms ``2, 4, ..., 2m``.

    Short ``counts`` are zero-padded.  Counts beyond norm ``2m`` are not free;
    they are checked against the resulting expansion.
    """
    m, k = split_even_dim(n)
    cs = _pad(counts, m)
    order = 4 * (2 * max(m, len(cs)) + 1)
    partial = _even_basis(3 * m + k, 0, order)
    b = []
    for j in range(1, m + 1):
        bj = cs[j - 1] - partial.q_coeff(2 * j)
        b.append(bj)
        partial = partial + _even_basis(3 * (m - j) + k, j, order) * bj
    _check_extra(partial, cs, 2, m)
    return EvenLatticeTheta(m, k, tuple(b))


def general_from_counts(n: int, counts: Sequence = ()) -> GeneralLatticeTheta:
    """Solve for ``a_0..a_mu`` (``a_0 = 1``) given counts of norms ``1..mu``."""
    if n < 1:
        raise ValueError("dimension must be positive")
    mu = n // 8
    cs = _pad(counts, mu)
    order = 4 * (max(mu, len(cs)) + 1)
    partial = _general_basis(n, 0, order)
    a = [Fraction(1)]
    for r in range(1, mu + 1):
        ar = cs[r - 1] - partial.q_coeff(r)
        a.append(ar)
        partial = partial + _general_basis(n - 8 * r, r, order) * ar
    _check_extra(partial, cs, 1, mu)
    return GeneralLatticeTheta(n, tuple(a))


def theta_expansion(lat: Lattice, order: int | None = None) -> QSeries:
    order = default_order(lat) if order is None else order
    if isinstance(lat, EvenLatticeTheta):
        m, k = lat.m, lat.k
        out = _even_basis(3 * m + k, 0, order)
        for j, bj in enumerate(lat.b, start=1):
            out = out + _even_basis(3 * (m - j) + k, j, order) * bj
        return out
    out = QSeries(form_series(FormName.theta3, order).ring, order)
    for r, ar in enumerate(lat.a):
        if ar:
            out = out + _general_basis(lat.n - 8 * r, r, order) * ar
    return out


def kissing_data(lat: Lattice, order: int | None = None) -> tuple[int, Fraction]:
    """Smallest positive norm with a nonzero coefficient, and that coefficient."""
    series = theta_expansion(lat, order)
    for e, c in series.items():
        if e > 0:
            if e % 4:
                raise ValueError(f"off-grid exponent u^{e} in a theta series")
            return e // 4, c
    raise OrderTooSmall(f"no nonzero coefficient below u^{series.order}; increase order")


def even_as_general(lat: EvenLatticeTheta) -> GeneralLatticeTheta:
    """Re-derive the general-basis form from the even lattice's own counts."""
    mu = lat.dim // 8
    series = theta_expansion(lat, 4 * (mu + 1))
    return general_from_counts(lat.dim, [series.q_coeff(r) for r in range(1, mu + 1)])


def to_e4_basis(lat: GeneralLatticeTheta) -> list[Fraction]:
    """Coefficients ``lambda_l`` of ``theta3^(n-8l) E4^l``.

    Substitutes ``Delta8 = (theta3^8 - E4)/16`` and expands binomially.
    """
    lam = [Fraction(0)] * (lat.mu + 1)
    for r, ar in enumerate(lat.a):
        scale = ar / Fraction(16) ** r
        for l in range(r + 1):
            lam[l] += scale * comb(r, l) * (-1) ** l
    return lam


def expand_e4_basis(n: int, lam: Sequence, order: int) -> QSeries:
    t3 = form_series(FormName.theta3, order)
    e4 = form_series(FormName.E4, order)
    out = QSeries(t3.ring, order)
    for l, c in enumerate(lam):
        c = as_fraction(c)
        if c:
            out = out + qs_pow_int(t3, n - 8 * l) * qs_pow_int(e4, l) * c
    return out


def validate_lattice_series(lat: Lattice, order: int | None = None) -> dict:
    """Realisability screen: constant 1, non-negative integer coefficients,
    and for even lattices no odd norms.  Problems are data, not errors."""
    series = theta_expansion(lat, order)
    problems = []
    if series[0] != 1:
        problems.append({"norm": 0, "issue": "constant term is not 1",
                         "value": format_rational(series[0])})
    for e, c in series.items():
        if e == 0:
            continue
        norm = Fraction(e, 4)
        if e % 4:
            problems.append({"norm": format_rational(norm), "issue": "off-grid exponent",
                             "value": format_rational(c)})
            continue
        if c.denominator != 1:
            problems.append({"norm": e // 4, "issue": "non-integer count",
                             "value": format_rational(c)})
        if c < 0:
            problems.append({"norm": e // 4, "issue": "negative count",
                             "value": format_rational(c)})
        if isinstance(lat, EvenLatticeTheta) and (e // 4) % 2:
            problems.append({"norm": e // 4, "issue": "odd norm in an even lattice",
                             "value": format_rational(c)})
    return {"order": series.order, "passed": not problems, "problems": problems}
