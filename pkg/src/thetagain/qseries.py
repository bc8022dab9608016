"""Truncated power series in ``u`` where ``u**4 = q``.

Coefficients live in one of two rings: exact rationals, or polynomials in a
symbolic dimension ``n`` (used for ``theta3**n`` with ``n`` unknown).  A
series of order ``T`` knows its coefficients for ``u**0 .. u**(T-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .exact_arith import UniPoly, as_fraction, format_rational, parse_rational

__all__ = [
    "Ring",
    "RATIONAL",
    "POLY_N",
    "QSeries",
    "RingMismatch",
    "qs_add",
    "qs_sub",
    "qs_mul",
    "qs_scale",
    "qs_pow_int",
    "qs_inverse",
    "qs_log",
    "qs_exp",
    "qs_pow_symbolic",
    "substitute_n",
]


class RingMismatch(ValueError):
    pass


class Ring:
    """Coefficient ring: zero/one, unit test and inversion.

    Addition and multiplication are the elements' own operators; both
    :class:`~fractions.Fraction` and :class:`~thetagain.exact_arith.UniPoly`
    also accept multiplication by a rational scalar.
    """

    def __init__(self, tag: str):
        self.tag = tag

    def __repr__(self) -> str:
        return f"Ring({self.tag!r})"

    def zero(self):
        return Fraction(0) if self.tag == "rational" else UniPoly("n")

    def one(self):
        return Fraction(1) if self.tag == "rational" else UniPoly.constant(1, "n")

    def coerce(self, c):
        if self.tag == "rational":
            if isinstance(c, UniPoly):
                raise RingMismatch("polynomial coefficient in a rational series")
            return as_fraction(c)
        if isinstance(c, UniPoly):
            if c.variable != "n":
                raise RingMismatch(f"polynomial in {c.variable!r}, expected 'n'")
            return c
        return UniPoly.constant(as_fraction(c), "n")

    def is_zero(self, c) -> bool:
        return not c

    def is_unit(self, c) -> bool:
        if self.tag == "rational":
            return c != 0
        return c.degree == 0

    def invert(self, c):
        if not self.is_unit(c):
            raise ZeroDivisionError(f"{c} is not a unit in the {self.tag} ring")
        if self.tag == "rational":
            return 1 / c
        return UniPoly.constant(1 / c.coeffs[0], "n")

    def to_str(self, c) -> str:
        if self.tag == "rational":
            return format_rational(c)
        return str(c)

    def to_json(self, c):
        if self.tag == "rational":
            return format_rational(c)
        return c.to_json()

    def from_json(self, data):
        if self.tag == "rational":
            return parse_rational(str(data))
        return UniPoly.from_json(data, "n")


RATIONAL = Ring("rational")
POLY_N = Ring("poly_in_n")
_RINGS = {"rational": RATIONAL, "poly_in_n": POLY_N}


@dataclass(frozen=True, eq=False)
class QSeries:
    """Immutable truncated series; only nonzero coefficients are stored."""

    ring: Ring
    order: int
    _coeffs: tuple

    def __init__(self, ring: Ring | str, order: int, coeffs: Mapping[int, object] | Iterable = ()):
        if isinstance(ring, str):
            ring = _RINGS[ring]
        if order < 1:
            raise ValueError("series order must be positive")
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        stored = {}
        for e, c in items:
            if e < 0:
                raise ValueError("negative exponent")
            if e >= order:
                continue
            c = ring.coerce(c)
            if c:
                stored[e] = stored.get(e, ring.zero()) + c
                if not stored[e]:
                    del stored[e]
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_coeffs", tuple(sorted(stored.items())))

    @classmethod
    def one(cls, order: int, ring: Ring = RATIONAL) -> "QSeries":
        return cls(ring, order, {0: ring.one()})

    @classmethod
    def monomial(cls, exponent: int, coeff, order: int, ring: Ring = RATIONAL) -> "QSeries":
        return cls(ring, order, {exponent: coeff})

    def __getitem__(self, e: int):
        return self.coeffs.get(e, self.ring.zero())

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def items(self):
        return iter(self._coeffs)

    def q_coeff(self, m: int):
        """Coefficient of ``q**m`` (``u**(4m)``)."""
        return self[4 * m]

    def valuation(self) -> int | None:
        return self._coeffs[0][0] if self._coeffs else None

    def truncate(self, order: int) -> "QSeries":
        return QSeries(self.ring, min(order, self.order), self.coeffs)

    def on_q_grid(self) -> bool:
        return all(e % 4 == 0 for e, _ in self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.ring.tag == other.ring.tag and self.order == other.order
                and self._coeffs == other._coeffs)

    def __hash__(self) -> int:
        return hash((self.ring.tag, self.order, self._coeffs))

    def __repr__(self) -> str:
        head = ", ".join(f"u^{e}: {self.ring.to_str(c)}" for e, c in self._coeffs[:6])
        more = ", ..." if len(self._coeffs) > 6 else ""
        return f"QSeries({self.ring.tag}, order={self.order}, {{{head}{more}}})"

    def __add__(self, other):
        return qs_add(self, other)

    def __sub__(self, other):
        return qs_sub(self, other)

    def __neg__(self):
        return qs_scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return qs_mul(self, other)
        return qs_scale(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return qs_pow_int(self, e)

    # -- serialization -------------------------------------------------
    def to_json(self) -> dict:
        return {
            "grid": "u",
            "order": self.order,
            "ring": self.ring.tag,
            "terms": [[e, self.ring.to_json(c)] for e, c in self._coeffs],
        }

    def q_view(self) -> dict | None:
        """Terms re-indexed by powers of ``q``; ``None`` off the q-grid."""
        if not self.on_q_grid():
            return None
        return {
            "grid": "q",
            "order": -(-self.order // 4),
            "terms": [[e // 4, self.ring.to_json(c)] for e, c in self._coeffs],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "QSeries":
        if data.get("grid", "u") != "u":
            raise ValueError("only u-grid series can be parsed")
        ring = _RINGS[data.get("ring", "rational")]
        return cls(ring, int(data["order"]),
                   {int(e): ring.from_json(c) for e, c in data["terms"]})


def _same_ring(a: QSeries, b: QSeries) -> Ring:
    if a.ring.tag != b.ring.tag:
        raise RingMismatch(f"cannot combine {a.ring.tag} and {b.ring.tag} series")
    return a.ring


def qs_add(a: QSeries, b: QSeries) -> QSeries:
    ring = _same_ring(a, b)
    T = min(a.order, b.order)
    out = dict(a.truncate(T).items())
    for e, c in b.items():
        if e < T:
            out[e] = out[e] + c if e in out else c
    return QSeries(ring, T, out)


def qs_scale(a: QSeries, c) -> QSeries:
    c = a.ring.coerce(c) if isinstance(c, UniPoly) else as_fraction(c)
    return QSeries(a.ring, a.order, {e: v * c for e, v in a.items()})


def qs_sub(a: QSeries, b: QSeries) -> QSeries:
    return qs_add(a, qs_scale(b, -1))


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    """Truncated Cauchy product over the sparse supports."""
    ring = _same_ring(a, b)
    T = min(a.order, b.order)
    out: dict = {}
    bi = [(e, c) for e, c in b.items() if e < T]
    for e1, c1 in a.items():
        if e1 >= T:
            break
        for e2, c2 in bi:
            e = e1 + e2
            if e >= T:
                break
            p = c1 * c2
            out[e] = out[e] + p if e in out else p
    return QSeries(ring, T, out)


def qs_inverse(a: QSeries) -> QSeries:
    ring = a.ring
    c0 = a[0]
    if not ring.is_unit(c0):
        raise ZeroDivisionError("series constant term is not invertible")
    inv0 = ring.invert(c0)
    T = a.order
    terms = [(e, c) for e, c in a.items() if e > 0]
    b = [ring.zero()] * T
    b[0] = inv0
    for j in range(1, T):
        acc = ring.zero()
        for e, c in terms:
            if e > j:
                break
            if b[j - e]:
                acc = acc + c * b[j - e]
        b[j] = -(acc * inv0)
    return QSeries(ring, T, b)


def qs_pow_int(a: QSeries, e: int) -> QSeries:
    if e < 0:
        return qs_pow_int(qs_inverse(a), -e)
    result = QSeries.one(a.order, a.ring)
    base = a
    while e:
        if e & 1:
            result = qs_mul(result, base)
        e >>= 1
        if e:
            base = qs_mul(base, base)
    return result


def qs_log(a: QSeries) -> QSeries:
    """Formal logarithm; constant term must be exactly 1.

    Uses ``j*l_j = j*a_j - sum_{i<j} i*l_i*a_{j-i}``.
    """
    ring = a.ring
    if a[0] != ring.one():
        raise ValueError("qs_log needs constant term 1")
    T = a.order
    ac = a.coeffs
    terms = sorted((e, c) for e, c in ac.items() if e > 0)
    lg = [ring.zero()] * T
    for j in range(1, T):
        acc = ring.zero()
        for e, c in terms:
            if e >= j:
                break
            i = j - e
            if lg[i]:
                acc = acc + lg[i] * c * i
        lg[j] = ac.get(j, ring.zero()) - acc * Fraction(1, j)
    return QSeries(ring, T, lg)


def qs_exp(a: QSeries) -> QSeries:
    """Formal exponential; constant term must be 0.

    Uses ``j*b_j = sum_{i=1..j} i*a_i*b_{j-i}``.
    """
    ring = a.ring
    if a[0]:
        raise ValueError("qs_exp needs constant term 0")
    T = a.order
    terms = [(e, c) for e, c in a.items() if e > 0]
    b = [ring.zero()] * T
    b[0] = ring.one()
    for j in range(1, T):
        acc = ring.zero()
        for e, c in terms:
            if e > j:
                break
            if b[j - e]:
                acc = acc + c * b[j - e] * e
        b[j] = acc * Fraction(1, j)
    return QSeries(ring, T, b)


def qs_pow_symbolic(a: QSeries) -> QSeries:
    """``a**n`` with ``n`` symbolic, as ``exp(n * log a)`` over ``Q[n]``."""
    if a.ring.tag != "rational":
        raise RingMismatch("symbolic power needs a rational series")
    if a[0] != 1:
        raise ValueError("symbolic power needs constant term 1")
    lg = qs_log(a)
    n = UniPoly.x("n")
    lifted = QSeries(POLY_N, a.order, {e: n * c for e, c in lg.items()})
    return qs_exp(lifted)


def lift(a: QSeries) -> QSeries:
    """View a rational series as constant polynomials in ``n``."""
    if a.ring.tag == "poly_in_n":
        return a
    return QSeries(POLY_N, a.order, dict(a.items()))


def substitute_n(a: QSeries, n0) -> QSeries:
    """Evaluate every polynomial coefficient at ``n = n0``."""
    if a.ring.tag != "poly_in_n":
        raise RingMismatch("substitution needs a poly_in_n series")
    return QSeries(RATIONAL, a.order, {e: c(n0) for e, c in a.items()})
