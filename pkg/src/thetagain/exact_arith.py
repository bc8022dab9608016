"""Exact rationals, dense univariate polynomials and certified real roots.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator).  :class:`UniPoly` is a small immutable dense polynomial over
the rationals tagged with its variable name ("z" or "n").  Root counting uses
Sturm sequences on the square-free part, with the half-open convention
``(a, b]`` everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "Fraction",
    "UniPoly",
    "IsolatingInterval",
    "as_fraction",
    "format_rational",
    "parse_rational",
    "poly_eval",
    "poly_gcd",
    "squarefree_part",
    "sturm_sequence",
    "sign_variations",
    "sturm_count",
    "squarefree_decomposition",
    "isolate_roots",
    "refine_interval",
    "largest_satisfying_integer",
    "find_threshold",
]

VARIABLES = ("z", "n")


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def format_rational(x: Fraction) -> str:
    """Render as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(Fraction(x))


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not s:
        raise ValueError("empty rational literal")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational literal {s!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {s!r}")
    return Fraction(p, q)


@dataclass(frozen=True)
class UniPoly:
    """Dense polynomial ``sum(coeffs[i] * var**i)`` with exact coefficients."""

    variable: str
    coeffs: tuple[Fraction, ...]

    def __init__(self, variable: str = "z", coeffs: Iterable = ()):
        if variable not in VARIABLES:
            raise ValueError(f"unknown polynomial variable {variable!r}")
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "variable", variable)
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors --------------------------------------------------
    @classmethod
    def constant(cls, c, variable: str = "z") -> "UniPoly":
        return cls(variable, [c])

    @classmethod
    def x(cls, variable: str = "z") -> "UniPoly":
        return cls(variable, [0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable, variable: str = "z", lead=1) -> "UniPoly":
        p = cls.constant(lead, variable)
        for r in roots:
            p = p * cls(variable, [-as_fraction(r), 1])
        return p

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __call__(self, x) -> Fraction:
        return poly_eval(self, x)

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.variable != self.variable:
                raise ValueError(
                    f"variable mismatch: {self.variable!r} vs {other.variable!r}")
            return other
        if isinstance(other, (int, Rational)):
            return UniPoly(self.variable, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.variable, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.variable, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            c = as_fraction(other)
            return UniPoly(self.variable, [a * c for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return UniPoly(self.variable)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(self.variable, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            c = as_fraction(other)
            return UniPoly(self.variable, [a / c for a in self.coeffs])
        return NotImplemented

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise ValueError("negative polynomial power")
        result = UniPoly.constant(1, self.variable)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.variable == other.variable and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.coeffs == UniPoly(self.variable, [other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.variable, self.coeffs))

    def derivative(self) -> "UniPoly":
        return UniPoly(self.variable, [i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        inv_lead = 1 / other.lead
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] * inv_lead
            if c:
                quot[i - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * b
        return UniPoly(self.variable, quot), UniPoly(self.variable, rem[:dq])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def monic(self) -> "UniPoly":
        return self / self.lead if self.coeffs else self

    def primitive(self) -> "UniPoly":
        """Positive rescaling to coprime integer coefficients (sign preserved)."""
        if not self.coeffs:
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return UniPoly(self.variable, [Fraction(v, g) for v in ints])

    def compose_affine(self, scale, shift) -> "UniPoly":
        """``p(scale * x + shift)``."""
        lin = UniPoly(self.variable, [shift, scale])
        out = UniPoly(self.variable)
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    # -- display / serialization ---------------------------------------
    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str], variable: str = "z") -> "UniPoly":
        return cls(variable, [parse_rational(str(s)) for s in data])

    def __repr__(self) -> str:
        return f"UniPoly({self.variable!r}, {self.to_json()})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = format_rational(a)
            else:
                mon = self.variable if i == 1 else f"{self.variable}^{i}"
                body = mon if a == 1 else f"{format_rational(a)}*{mon}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def poly_eval(p: UniPoly, x) -> Fraction:
    """Exact Horner evaluation."""
    x = as_fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    return a.monic()


def squarefree_decomposition(p: UniPoly) -> list[UniPoly]:
    """Yun's algorithm: returns ``[f1, f2, ...]`` with ``p ~ prod f_i**i``.

    Each ``f_i`` is monic and square-free; the roots of ``f_i`` are exactly
    the roots of ``p`` of multiplicity ``i``.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no square-free decomposition")
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    out = []
    while b.degree > 0:
        a = poly_gcd(b, d)
        out.append(a)
        b = b // a
        c = d // a
        d = c - b.derivative()
    while out and out[-1].degree <= 0:
        out.pop()
    return out


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree <= 0:
        return UniPoly.constant(1, p.variable)
    return (p // poly_gcd(p, p.derivative())).primitive()


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    """Sturm chain ``p, p', -rem(p, p'), ...`` with positive rescaling."""
    if p.is_zero():
        raise ValueError("Sturm sequence of the zero polynomial")
    seq = [p.primitive()]
    nxt = p.derivative().primitive()
    while not nxt.is_zero():
        seq.append(nxt)
        nxt = (-(seq[-2] % seq[-1])).primitive()
    return seq


def sign_variations(seq: Sequence[UniPoly], x) -> int:
    signs = []
    for f in seq:
        v = poly_eval(f, x)
        if v:
            signs.append(v > 0)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _check_interval(p: UniPoly, a, b) -> tuple[Fraction, Fraction]:
    if p.is_zero():
        raise ValueError("root counting on the zero polynomial")
    a, b = as_fraction(a), as_fraction(b)
    if not a < b:
        raise ValueError(f"empty interval ({a}, {b}]")
    return a, b


def _count_sqfree(seq: Sequence[UniPoly], a: Fraction, b: Fraction) -> int:
    return sign_variations(seq, a) - sign_variations(seq, b)


def sturm_count(p: UniPoly, a, b) -> int:
    """Number of distinct real roots of ``p`` in ``(a, b]``."""
    a, b = _check_interval(p, a, b)
    if p.degree <= 0:
        return 0
    return _count_sqfree(sturm_sequence(squarefree_part(p)), a, b)


@dataclass(frozen=True)
class IsolatingInterval:
    """``(lo, hi]`` containing exactly one distinct root of the target."""

    lo: Fraction
    hi: Fraction
    multiplicity_hint: int = 1

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("isolating interval needs lo < hi")
        if self.multiplicity_hint < 1:
            raise ValueError("multiplicity must be positive")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def to_json(self) -> dict:
        return {"lo": format_rational(self.lo), "hi": format_rational(self.hi),
                "multiplicity_hint": self.multiplicity_hint}

    @classmethod
    def from_json(cls, data: dict) -> "IsolatingInterval":
        return cls(parse_rational(data["lo"]), parse_rational(data["hi"]),
                   int(data.get("multiplicity_hint", 1)))


def isolate_roots(p: UniPoly, a, b, max_width=None) -> list[IsolatingInterval]:
    """Disjoint intervals, one per distinct root of ``p`` in ``(a, b]``.

    Bisection driven by Sturm counts on the square-free part.  With
    ``max_width`` every interval is further refined below that width.
    """
    a, b = _check_interval(p, a, b)
    if p.degree <= 0:
        return []
    factors = squarefree_decomposition(p)
    sqf = squarefree_part(p)
    seq = sturm_sequence(sqf)
    found: list[tuple[Fraction, Fraction]] = []
    stack = [(a, b, _count_sqfree(seq, a, b))]
    while stack:
        lo, hi, c = stack.pop()
        if c == 0:
            continue
        if c == 1:
            found.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        left = _count_sqfree(seq, lo, mid)
        stack.append((mid, hi, c - left))
        stack.append((lo, mid, left))
    found.sort()
    out = []
    for lo, hi in found:
        mult = 1
        for i, f in enumerate(factors, start=1):
            if f.degree > 0 and sturm_count(f, lo, hi) == 1:
                mult = i
                break
        iv = IsolatingInterval(lo, hi, mult)
        if max_width is not None:
            iv = refine_interval(p, iv, max_width)
        out.append(iv)
    return out


def refine_interval(p: UniPoly, iv: IsolatingInterval, width) -> IsolatingInterval:
    """Bisect ``iv`` (isolating for ``p``) until narrower than ``width``."""
    width = as_fraction(width)
    if width <= 0:
        raise ValueError("target width must be positive")
    seq = sturm_sequence(squarefree_part(p))
    lo, hi = iv.lo, iv.hi
    while hi - lo >= width:
        mid = (lo + hi) / 2
        if _count_sqfree(seq, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return IsolatingInterval(lo, hi, iv.multiplicity_hint)


def largest_satisfying_integer(p: UniPoly, bound, lo: int, hi: int) -> int:
    """Largest integer ``N`` in ``[lo, hi]`` with ``p(N) <= bound``.

    Requires ``p(lo) <= bound < p(hi)`` and a single sign change of
    ``p - bound`` on ``[lo, hi]``.  The result is re-checked at ``N`` and
    ``N + 1``.
    """
    bound = as_fraction(bound)
    if lo > hi:
        raise ValueError(f"empty search window [{lo}, {hi}]")
    if poly_eval(p, lo) > bound:
        raise ValueError(f"precondition violated: p({lo}) > {bound}")
    if poly_eval(p, hi) <= bound:
        raise ValueError(f"precondition violated: p({hi}) <= {bound}")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if poly_eval(p, mid) <= bound:
            lo = mid
        else:
            hi = mid
    if not (poly_eval(p, lo) <= bound < poly_eval(p, lo + 1)):
        raise ArithmeticError(f"threshold {lo} failed two-sided verification")
    return lo


def find_threshold(p: UniPoly, bound, lo: int, hi: int) -> int:
    """:func:`largest_satisfying_integer` with ``hi`` doubled until ``p(hi) > bound``."""
    bound = as_fraction(bound)
    while poly_eval(p, hi) <= bound:
        if hi > 2 ** 256:
            raise ValueError("constraint never fails; no finite threshold")
        hi *= 2
    return largest_satisfying_integer(p, bound, lo, hi)
