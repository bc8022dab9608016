"""Dimension bounds for n-8k lattices without short vectors.

For a lattice with no vectors of norm ``1..k-1`` the coefficients
``b_1..b_{k-1}`` of ``theta3^(n-8l) Delta8^l`` are polynomials in the
dimension ``n``.  Positivity of the secrecy function and the conjectured
maximum at ``y = 1`` pin ``b_k`` to an interval of width ``64^k``; the count
of shortest characteristic vectors, ``lambda_k 2^(n-8k)`` with
``lambda_k = (-1)^k b_k / 16^k``, is at most ``2^n``.  Together these bound
``n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_arith import UniPoly, as_fraction, find_threshold, format_rational, poly_eval
from .modular_forms import FormName, form_series
from .qseries import lift, qs_inverse, qs_pow_int, qs_pow_symbolic

__all__ = [
    "SymbolicRootlessTheta",
    "DimensionBoundReport",
    "Infeasible",
    "rootless_symbolic_coeffs",
    "conjecture_top_bounds",
    "paper_constraint",
    "dimension_bound",
    "lambda_sign",
    "chi_count",
    "MAX_K",
]

MAX_K = 8
SEARCH_HI = 2 ** 25


class Infeasible(ValueError):
    """A negative implied vector count; ``witness`` holds the value."""

    def __init__(self, msg: str, witness: Fraction):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class SymbolicRootlessTheta:
    k: int
    b: tuple[UniPoly, ...]
    top_bounds: tuple[UniPoly, UniPoly]

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "b": {str(l): p.to_json() for l, p in enumerate(self.b, start=1)},
            "b_k_lower_exclusive": self.top_bounds[0].to_json(),
            "b_k_upper_inclusive": self.top_bounds[1].to_json(),
        }


@dataclass(frozen=True)
class DimensionBoundReport:
    k: int
    mode: str
    constraint_poly: UniPoly
    bound_constant: Fraction
    threshold: int
    lambda_sign: str

    def __post_init__(self):
        p, N, c = self.constraint_poly, self.threshold, self.bound_constant
        if not (poly_eval(p, N) <= c < poly_eval(p, N + 1)):
            raise ArithmeticError(f"threshold {N} fails two-sided verification")

    def to_json(self) -> dict:
        p, N = self.constraint_poly, self.threshold
        return {
            "k": self.k,
            "mode": self.mode,
            "inequality": f"{p} <= {format_rational(self.bound_constant)}",
            "constraint_poly": p.to_json(),
            "bound_constant": format_rational(self.bound_constant),
            "threshold": N,
            "lambda_sign": self.lambda_sign,
            "verification": {
                "at_threshold": format_rational(poly_eval(p, N)),
                "at_threshold_plus_1": format_rational(poly_eval(p, N + 1)),
            },
        }


@lru_cache(maxsize=16)
def _rootless_b(k: int) -> tuple[UniPoly, ...]:
    order = 4 * (k + 2)
    t3 = form_series(FormName.theta3, order)
    d8 = form_series(FormName.Delta8, order)
    t3_n = qs_pow_symbolic(t3)
    t3_inv8 = qs_inverse(qs_pow_int(t3, 8))
    b: list[UniPoly] = []
    partial = t3_n
    for l in range(1, k):
        # theta3^(n-8l) Delta8^l = q^l + ...: b_l cancels the q^l coefficient.
        bl = -partial.q_coeff(l)
        b.append(bl)
        basis = t3_n * lift(qs_pow_int(t3_inv8, l) * qs_pow_int(d8, l))
        partial = partial + basis * bl
    return tuple(b)


def conjecture_top_bounds(k: int, b=None) -> tuple[UniPoly, UniPoly]:
    """``(L, U)`` with ``L(n) < b_k(n) <= U(n)``.

    From ``0 < 1 + sum_{l<=k} b_l / 64^l <= 1`` after multiplying by ``64^k``.
    """
    if b is None:
        b = _rootless_b(k)
    upper = UniPoly("n")
    for l, bl in enumerate(b, start=1):
        upper = upper - bl * Fraction(64) ** (k - l)
    return upper - Fraction(64) ** k, upper


def rootless_symbolic_coeffs(k: int) -> SymbolicRootlessTheta:
    if not 2 <= k <= MAX_K:
        raise ValueError(f"k must be in 2..{MAX_K}")
    b = _rootless_b(k)
    return SymbolicRootlessTheta(k, b, conjecture_top_bounds(k, b))


def lambda_sign(k: int) -> int:
    """Sign relating ``lambda_k`` to ``b_k``: the E4^k term of
    ``((theta3^8 - E4)/16)^k`` carries ``(-1)^k``."""
    return -1 if k % 2 else 1


def paper_constraint(k: int) -> tuple[UniPoly, Fraction]:
    """The displayed inequality ``p(n) <= bound`` for k = 3, 4, 5, verbatim."""
    n = UniPoly.x("n")
    b1 = -2 * n
    b2 = 2 * n ** 2 - 46 * n
    b3 = Fraction(4, 3) * n ** 3 - 92 * n ** 2 + Fraction(4832, 3) * n  # = -b_3
    b4 = Fraction(2, 3) * n ** 4 - 84 * n ** 3 + Fraction(12430, 3) * n ** 2 - 66542 * n
    if k == 3:
        return 128 * n ** 2 - 174 * n, Fraction(2 ** 36)
    if k == 4:
        return 64 ** 3 * (-b1) - 64 ** 2 * b2 + 64 * b3, Fraction(2 ** 48)
    if k == 5:
        return (-(64 ** 4) * (-b1) + 64 ** 3 * b2 - 64 ** 2 * b3 + 64 * b4,
                Fraction(2 ** 60))
    raise ValueError("the printed inequalities cover k = 3, 4, 5 only")


def dimension_bound(k: int, mode: str = "derived") -> DimensionBoundReport:
    """Largest ``n`` allowed by the characteristic-vector count bound.

    ``paper_faithful`` uses the printed inequality; ``derived`` uses
    ``(-1)^k U(n) <= 2^(12k)`` with ``U`` from :func:`conjecture_top_bounds`
    (slack ``s = 0``).
    """
    if mode in ("paper", "paper_faithful"):
        mode = "paper_faithful"
        p, bound = paper_constraint(k)
    elif mode == "derived":
        if not 3 <= k <= MAX_K:
            raise ValueError(f"derived mode covers k = 3..{MAX_K}")
        _, upper = conjecture_top_bounds(k)
        p = upper * lambda_sign(k)
        bound = Fraction(2) ** (12 * k)
        if p.lead <= 0:
            raise ValueError("no contradiction reachable: lambda_k does not grow")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    lo = 8 * k + 1
    if poly_eval(p, lo) > bound:
        raise ValueError(f"constraint already fails at n = {lo}")
    N = find_threshold(p, bound, lo, SEARCH_HI)
    return DimensionBoundReport(k, mode, p, bound, N, "plus" if lambda_sign(k) > 0 else "minus")


def chi_count(k: int, n: int, b_k) -> Fraction:
    """Implied number of shortest characteristic vectors, ``lambda_k 2^(n-8k)``."""
    lam = lambda_sign(k) * as_fraction(b_k) / Fraction(16) ** k
    count = lam * Fraction(2) ** (n - 8 * k)
    if count < 0:
        raise Infeasible(f"lambda_{k} = {lam} < 0 gives a negative vector count", count)
    return count
