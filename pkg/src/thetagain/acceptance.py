"""Acceptance battery shared by ``thetagain selftest`` and the test suite.

Each criterion returns ``(passed, detail)``.  All comparisons are exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import modular_forms
from .charvec_bounds import dimension_bound, rootless_symbolic_coeffs
from .exact_arith import UniPoly, isolate_roots, poly_eval, sturm_count
from .lattice_theta import (
    even_as_general,
    even_from_counts,
    expand_e4_basis,
    general_from_counts,
    theta_expansion,
    to_e4_basis,
)
from .modular_forms import FormName
from .qseries import QSeries
from .secrecy import (
    certify_gain,
    gain_at_one,
    lin_oggier_gain,
    secrecy_inverse_poly,
    thm1_report,
    thm2_report,
    thm3_report,
)

SEED = 20240607


@dataclass(frozen=True)
class Criterion:
    number: int
    group: str
    title: str
    check: Callable[[], tuple[bool, str]]


def _delta_product_oracle(order: int) -> QSeries:
    """q^2 prod (1 - q^(2n))^24, expanded with plain integer lists."""
    N = order  # exponents in u
    coeffs = [0] * N
    coeffs[8] = 1 if N > 8 else 0
    for n in range(1, N // 8 + 1):
        step = 8 * n
        for _ in range(24):
            for e in range(N - 1, step - 1, -1):
                coeffs[e] -= coeffs[e - step]
    return QSeries("rational", N, dict(enumerate(coeffs)))


def c01_identities():
    rep = modular_forms.check_identities(64)
    bad = [r["identity"] for r in rep["identities"] if not r["passed"]]
    return rep["all_passed"], "all five identities hold at order 64" if not bad else f"failed: {bad}"


def c02_delta_leading():
    delta = modular_forms.form_series(FormName.Delta, 64)
    oracle = _delta_product_oracle(64)
    lead = [delta.q_coeff(2), delta.q_coeff(4), delta.q_coeff(6)]
    ok = lead == [1, -24, 252] and delta == oracle
    return ok, f"Delta q^2,q^4,q^6 = {[str(x) for x in lead]}; product oracle match={delta == oracle}"


def c03_even40():
    lat = even_from_counts(40, [0, 39600])
    z = UniPoly.x("z")
    expected = (1 - z) ** 5 - Fraction(75, 16) * z ** 2 * (1 - z) ** 2
    cert = certify_gain(lat)
    ok = (lat.b == (-1200,) and secrecy_inverse_poly(lat) == expected
          and cert.verdict == "holds_at_quarter" and cert.gain == Fraction(4096, 297))
    return ok, f"b1={lat.b[0]}, verdict={cert.verdict}, gain={cert.gain}"


def c04_odd40():
    lat = general_from_counts(40, [0, 0, 0, 39600, 1048576])
    a_ok = lat.a[:5] == (1, -80, 1360, -2560, 20480) and lat.a[5] == 0
    series = theta_expansion(lat, 24)
    s_ok = [series.q_coeff(i) for i in range(6)] == [1, 0, 0, 0, 39600, 1048576]
    D = secrecy_inverse_poly(lat)
    d_ok = D.derivative() == UniPoly("z", [-8, 17, -3, 2]) * Fraction(5, 8)
    sturm_ok = sturm_count(D.derivative(), 0, Fraction(1, 4)) == 0
    cert = certify_gain(lat)
    ok = a_ok and s_ok and d_ok and sturm_ok and cert.gain == Fraction(4096, 301)
    return ok, (f"a={[str(x) for x in lat.a]}, series ok={s_ok}, D' ok={d_ok}, "
                f"Sturm(D')=0 ok={sturm_ok}, gain={cert.gain}")


def c05_e8_leech():
    e8, leech = certify_gain(even_from_counts(8)), certify_gain(even_from_counts(24, [0]))
    ok = (e8.gain == Fraction(4, 3) and leech.gain == Fraction(256, 63)
          and e8.verdict == leech.verdict == "holds_at_quarter")
    return ok, f"E8 gain={e8.gain}, Leech gain={leech.gain}"


def c06_lin_oggier():
    checked = 0
    for n in range(16, 24):
        for K in (0, 64, 224, 480, 1000):
            closed = lin_oggier_gain(n, K)
            if closed != gain_at_one(general_from_counts(n, [0, K])):
                return False, f"mismatch at n={n}, K={K}"
            checked += 1
    return True, f"{checked} (n, K) pairs agree"


def c07_thm1():
    n_alt = 0
    for m in range(1, 5):
        for k in range(3):
            for kap, kap_p in ((0, 1), (48, 0), (1000, 500)):
                rep = thm1_report(m, k, kap, kap_p)
                if not rep["agrees"]:
                    return False, f"3^k form fails at m={m}, k={k}, ({kap},{kap_p})"
                n_alt += not rep["alternative_3^(2m)_agrees"]
    return True, f"3^k/4^(6m+k) matches all 36 cases; 3^(2m) variant wrong in {n_alt}"


def thm2_samples(count: int = 50, seed: int = SEED):
    rng = random.Random(seed)
    return [(rng.randint(0, 100), rng.randint(0, 200000), rng.randint(0, 100), rng.randint(0, 200000))
            for _ in range(count)]


def c08_thm2():
    total = bad = 0
    first = None
    for m in (2, 3):
        for k in range(3):
            for quad in thm2_samples():
                rep = thm2_report(m, k, *quad)
                total += 1
                if not rep["agrees"]:
                    bad += 1
                    if first is None:
                        first = (m, k, quad, rep["printed_multiplier"], rep["implied_multiplier"])
    if bad:
        m, k, quad, pm, im = first
        return False, (f"{bad}/{total} disagree; first m={m}, k={k}, counts={quad}: "
                       f"printed multiplier {pm}, direct computation implies {im}")
    return True, f"{total} comparisons agree"


def c09_thm3():
    for n in (8, 16, 24, 40):
        for dh in (1, 7):
            rep = thm3_report(n, dh, 0)
            if not rep["agrees"] or rep["printed_4^(5mu)_agrees"]:
                return False, f"n={n}, dh={dh}: {rep}"
    return True, "direct difference = dh/4^(3 mu) in all 8 cases; printed 4^(5 mu) differs"


PRINTED_B = {
    1: UniPoly("n", [0, -2]),
    2: UniPoly("n", [0, -46, 2]),
    3: UniPoly("n", [0, Fraction(-4832, 3), 92, Fraction(-4, 3)]),
    4: UniPoly("n", [0, -66542, Fraction(12430, 3), -84, Fraction(2, 3)]),
}


def c10_symbolic():
    b = rootless_symbolic_coeffs(5).b
    wrong = [l for l, p in PRINTED_B.items() if b[l - 1] != p]
    mismatches = []
    for n0 in range(25, 41):
        a = general_from_counts(n0, [0] * (n0 // 8)).a
        for l in range(1, min(5, n0 // 8 + 1)):
            if b[l - 1](n0) != a[l]:
                mismatches.append((n0, l))
    ok = not wrong and not mismatches
    detail = f"specialization n=25..40 {'ok' if not mismatches else mismatches[:3]}"
    if wrong:
        detail += "; printed b_l differ for l=" + ",".join(map(str, wrong))
        detail += "; computed b4 = " + str(b[3])
    return ok, detail


def c11_printed_thresholds():
    want = {3: 23171, 4: 14940, 5: 12884}
    got = {k: dimension_bound(k, "paper_faithful").threshold for k in want}
    return got == want, f"thresholds {got}"


def c12_derived_k3():
    printed = dimension_bound(3, "paper_faithful").threshold
    derived = dimension_bound(3, "derived").threshold
    rel = Fraction(abs(derived - printed), 23171)
    return rel < Fraction(5, 1000), f"printed {printed} | derived {derived} (rel diff {float(rel):.5f})"


def _random_poly(rng: random.Random) -> UniPoly:
    deg = rng.randint(1, 8)
    if rng.random() < 0.5:
        roots = [Fraction(rng.randint(-8, 8), rng.choice((1, 2, 4, 8, 16))) for _ in range(deg)]
        return UniPoly.from_roots(roots, lead=rng.choice((1, -3, Fraction(2, 5))))
    coeffs = [Fraction(rng.randint(-20, 20), rng.randint(1, 6)) for _ in range(deg)]
    return UniPoly("z", coeffs + [rng.choice((1, -1, 3))])


def c13_properties():
    rng = random.Random(SEED)
    for _ in range(100):
        n = rng.choice((8, 16, 24, 32, 40, 48))
        m = n // 24
        counts = [rng.randint(0, 5000) for _ in range(m)]
        lat = even_from_counts(n, counts)
        ser = theta_expansion(lat, 4 * (n // 8 + 1))
        if [ser.q_coeff(2 * j) for j in range(1, m + 1)] != counts:
            return False, f"even round trip failed n={n} counts={counts}"
        gen = even_as_general(lat)
        if theta_expansion(gen, ser.order) != ser:
            return False, f"E4/Delta vs theta3/Delta8 differ, n={n}"
        if expand_e4_basis(n, to_e4_basis(gen), ser.order) != ser:
            return False, f"theta3/E4 expansion differs, n={n}"
        if secrecy_inverse_poly(lat) != secrecy_inverse_poly(gen) or secrecy_inverse_poly(lat)(0) != 1:
            return False, f"D(z) mismatch, n={n}"
    for _ in range(100):
        n = rng.randint(1, 48)
        mu = n // 8
        counts = [rng.randint(0, 5000) for _ in range(mu)]
        lat = general_from_counts(n, counts)
        ser = theta_expansion(lat, 4 * (mu + 1))
        if [ser.q_coeff(r) for r in range(1, mu + 1)] != counts:
            return False, f"general round trip failed n={n}"
        if expand_e4_basis(n, to_e4_basis(lat), ser.order) != ser:
            return False, f"theta3/E4 expansion differs, n={n}"
        if secrecy_inverse_poly(lat)(0) != 1:
            return False, "D(0) != 1"
    for _ in range(200):
        p = _random_poly(rng)
        a = Fraction(rng.randint(-10, 0), 4)
        b = a + Fraction(rng.randint(1, 40), 4)
        if sturm_count(p, a, b) != len(isolate_roots(p, a, b)):
            return False, f"Sturm vs isolation mismatch for {p} on ({a},{b}]"
    return True, "200 lattices round-trip with coherent bases; 200 Sturm/isolation pairs agree"


CRITERIA = [
    Criterion(1, "forms", "identity suite at order 64", c01_identities),
    Criterion(2, "forms", "Delta leading coefficients", c02_delta_leading),
    Criterion(3, "secrecy", "40-dim even extremal lattice", c03_even40),
    Criterion(4, "secrecy", "40-dim odd lattice", c04_odd40),
    Criterion(5, "secrecy", "E8 and Leech gains", c05_e8_leech),
    Criterion(6, "secrecy", "Lin-Oggier closed form", c06_lin_oggier),
    Criterion(7, "secrecy", "Theorem 1 difference", c07_thm1),
    Criterion(8, "secrecy", "Theorem 2 predicate", c08_thm2),
    Criterion(9, "secrecy", "Theorem 3 difference", c09_thm3),
    Criterion(10, "bounds", "symbolic b_l(n)", c10_symbolic),
    Criterion(11, "bounds", "printed n-8k thresholds", c11_printed_thresholds),
    Criterion(12, "bounds", "derived k=3 threshold", c12_derived_k3),
    Criterion(13, "lattice", "property batteries", c13_properties),
]

GROUPS = sorted({c.group for c in CRITERIA})


def run_battery(only: str | None = None) -> list[dict]:
    rows = []
    for c in CRITERIA:
        if only and c.group != only:
            continue
        try:
            ok, detail = c.check()
        except Exception as exc:  # a crashing criterion is a failing one
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        rows.append({"criterion": c.number, "group": c.group, "title": c.title,
                     "passed": bool(ok), "detail": detail})
    return rows
