"""Command-line front end.

Every subcommand prints one JSON document (or a plain ``key: value``
rendering with ``--format text``).  Exit codes: 0 success / positive
verdict, 1 negative verdict or validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import acceptance, charvec_bounds, lattice_theta, modular_forms, secrecy
from .exact_arith import format_rational, parse_rational
from .modular_forms import FormName

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2

_RATIONAL_RE = re.compile(r"^-?\d+/\d+$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _counts(text: str) -> list[Fraction]:
    if text.strip() == "":
        return []
    try:
        return [parse_rational(t) for t in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"malformed count list {text!r}: {exc}") from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--approx", action="store_true",
                   help="add decimal renderings next to exact rationals")


def _add_lattice_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--even", action="store_true",
                   help="use the (E4, Delta) basis; counts are for norms 2, 4, ...")
    p.add_argument("--counts", type=_counts, default=[],
                   help="comma-separated counts in ascending norm")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thetagain", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    forms = sub.add_parser("forms").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = forms.add_parser("expand")
    p.add_argument("--name", choices=[f.value for f in FormName], required=True)
    p.add_argument("--order", type=int, default=64)
    _add_output_flags(p)
    p = forms.add_parser("check")
    p.add_argument("--order", type=int, default=64)
    _add_output_flags(p)

    lat = sub.add_parser("lattice").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = lat.add_parser("from-counts")
    _add_lattice_flags(p)
    p.add_argument("--order", type=int, default=None, help="expansion order in u")
    _add_output_flags(p)

    sec = sub.add_parser("secrecy").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = sec.add_parser("certify")
    _add_lattice_flags(p)
    p.add_argument("--width-exp", type=int, default=40,
                   help="gain bracket width target 2^-W (default 40)")
    _add_output_flags(p)
    p = sec.add_parser("gain-at-one")
    _add_lattice_flags(p)
    _add_output_flags(p)
    p = sec.add_parser("thm1")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True, choices=(0, 1, 2))
    p.add_argument("--kappa", type=_rational, required=True)
    p.add_argument("--kappa-prime", type=_rational, required=True)
    _add_output_flags(p)
    p = sec.add_parser("thm2")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True, choices=(0, 1, 2))
    p.add_argument("--counts", type=_counts, required=True,
                   help="kappa_(2m-2),kappa_(2m) of the first lattice")
    p.add_argument("--counts-prime", type=_counts, required=True)
    _add_output_flags(p)
    p = sec.add_parser("thm3")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--h", type=_rational, required=True)
    p.add_argument("--h-prime", type=_rational, required=True)
    _add_output_flags(p)
    p = sec.add_parser("lin-oggier")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--kissing", type=_rational, required=True)
    _add_output_flags(p)

    bounds = sub.add_parser("bounds").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = bounds.add_parser("n8k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("paper", "derived", "both"), default="both")
    _add_output_flags(p)
    p = bounds.add_parser("symbolic")
    p.add_argument("--k", type=int, required=True)
    _add_output_flags(p)

    p = sub.add_parser("selftest")
    p.add_argument("--only", choices=acceptance.GROUPS, default=None)
    _add_output_flags(p)
    return parser


# -- command bodies --------------------------------------------------------

def _build_lattice(args):
    if args.even:
        try:
            lattice_theta.split_even_dim(args.dim)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return lattice_theta.even_from_counts(args.dim, args.counts)
    if args.dim < 1:
        raise UsageError("--dim must be positive")
    return lattice_theta.general_from_counts(args.dim, args.counts)


def _lattice_params(args) -> dict:
    return {"dim": args.dim, "even": args.even,
            "counts": [format_rational(c) for c in args.counts]}


def cmd_forms_expand(args):
    if args.order < 1:
        raise UsageError("--order must be >= 1")
    s = modular_forms.form_series(args.name, args.order)
    return EXIT_OK, {"params": {"name": args.name, "order": args.order},
                     "series": s.to_json(), "q_view": s.q_view()}


def cmd_forms_check(args):
    if args.order < 8:
        raise UsageError("--order must be >= 8")
    rep = modular_forms.check_identities(args.order)
    return (EXIT_OK if rep["all_passed"] else EXIT_NEGATIVE), {"params": {"order": args.order}, **rep}


def cmd_lattice(args):
    lat = _build_lattice(args)
    order = args.order or lattice_theta.default_order(lat)
    series = lattice_theta.theta_expansion(lat, order)
    report = {"params": {**_lattice_params(args), "order": order},
              "coefficients": lat.to_json(), "expansion": series.q_view() or series.to_json()}
    try:
        norm, count = lattice_theta.kissing_data(lat, order)
        report["kissing"] = {"min_norm": norm, "count": format_rational(count)}
    except lattice_theta.OrderTooSmall as exc:
        report["kissing"] = {"error": str(exc)}
    gen = lat if isinstance(lat, lattice_theta.GeneralLatticeTheta) else lattice_theta.even_as_general(lat)
    report["e4_basis_lambda"] = [format_rational(x) for x in lattice_theta.to_e4_basis(gen)]
    report["validation"] = lattice_theta.validate_lattice_series(lat, order)
    return (EXIT_OK if report["validation"]["passed"] else EXIT_NEGATIVE), report


def cmd_certify(args):
    lat = _build_lattice(args)
    if args.width_exp < 1:
        raise UsageError("--width-exp must be positive")
    cert = secrecy.certify_gain(lat, Fraction(1, 2 ** args.width_exp))
    report = {"params": {**_lattice_params(args), "bracket_width": f"2^-{args.width_exp}",
                         "epsilon": format_rational(secrecy.EPSILON)},
              "coefficients": lat.to_json(), **cert.to_json()}
    return (EXIT_OK if cert.verdict == "holds_at_quarter" else EXIT_NEGATIVE), report


def cmd_gain_at_one(args):
    lat = _build_lattice(args)
    report = {"params": _lattice_params(args), "coefficients": lat.to_json()}
    try:
        report["gain_at_one"] = format_rational(secrecy.gain_at_one(lat))
    except secrecy.NonRealizable as exc:
        report["error"] = str(exc)
        return EXIT_NEGATIVE, report
    return EXIT_OK, report


def cmd_thm1(args):
    if args.m < 1:
        raise UsageError("--m must be >= 1")
    rep = secrecy.thm1_report(args.m, args.k, args.kappa, args.kappa_prime)
    if not rep["alternative_3^(2m)_agrees"]:
        rep["note"] = "the 3^(2m) factor variant disagrees with the direct computation"
    return (EXIT_OK if rep["agrees"] else EXIT_NEGATIVE), rep


def cmd_thm2(args):
    if args.m < 2:
        raise UsageError("--m must be >= 2 (the norm 2m-2 count must be free)")
    if len(args.counts) != 2 or len(args.counts_prime) != 2:
        raise UsageError("--counts and --counts-prime take two values each")
    rep = secrecy.thm2_report(args.m, args.k, *args.counts, *args.counts_prime)
    if not rep["agrees"]:
        rep["error"] = "printed inequality disagrees with the direct D(1/4) comparison"
    return (EXIT_OK if rep["agrees"] else EXIT_NEGATIVE), rep


def cmd_thm3(args):
    if args.dim < 8:
        raise UsageError("--dim must be >= 8")
    rep = secrecy.thm3_report(args.dim, args.h, args.h_prime)
    rep["note"] = "printed exponent 4^(5 mu) differs from the direct value 4^(3 mu)"
    return (EXIT_OK if rep["agrees"] else EXIT_NEGATIVE), rep


def cmd_lin_oggier(args):
    if not 16 <= args.dim <= 23:
        raise UsageError("--dim must be in 16..23")
    rep = {"params": {"dim": args.dim, "kissing": format_rational(args.kissing)}}
    try:
        rep["gain"] = format_rational(secrecy.lin_oggier_gain(args.dim, args.kissing))
    except (secrecy.NonRealizable, secrecy.CrossCheckError) as exc:
        rep["error"] = str(exc)
        return EXIT_NEGATIVE, rep
    return EXIT_OK, rep


def cmd_n8k(args):
    modes = ("paper", "derived") if args.mode == "both" else (args.mode,)
    rep = {"params": {"k": args.k, "mode": args.mode, "search_window": [8 * args.k + 1, charvec_bounds.SEARCH_HI]}}
    thresholds = {}
    for mode in modes:
        try:
            r = charvec_bounds.dimension_bound(args.k, mode)
        except ValueError as exc:
            if len(modes) == 1:
                raise UsageError(str(exc)) from None
            rep[mode] = {"error": str(exc)}
            continue
        rep[r.mode] = r.to_json()
        thresholds[r.mode] = r.threshold
    if len(thresholds) == 2:
        p, d = thresholds["paper_faithful"], thresholds["derived"]
        rep["comparison"] = {"paper_faithful": p, "derived": d, "difference": d - p,
                             "relative": format_rational(Fraction(d - p, p))}
    return EXIT_OK, rep


def cmd_symbolic(args):
    try:
        s = charvec_bounds.rootless_symbolic_coeffs(args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return EXIT_OK, {"params": {"k": args.k, "order": 4 * (args.k + 2)}, **s.to_json(),
                     "pretty": {str(l): str(p) for l, p in enumerate(s.b, start=1)}}


def cmd_selftest(args):
    rows = acceptance.run_battery(args.only)
    ok = all(r["passed"] for r in rows)
    return (EXIT_OK if ok else EXIT_NEGATIVE), {"params": {"only": args.only},
                                                "all_passed": ok, "criteria": rows}


COMMANDS = {
    ("forms", "expand"): cmd_forms_expand,
    ("forms", "check"): cmd_forms_check,
    ("lattice", "from-counts"): cmd_lattice,
    ("secrecy", "certify"): cmd_certify,
    ("secrecy", "gain-at-one"): cmd_gain_at_one,
    ("secrecy", "thm1"): cmd_thm1,
    ("secrecy", "thm2"): cmd_thm2,
    ("secrecy", "thm3"): cmd_thm3,
    ("secrecy", "lin-oggier"): cmd_lin_oggier,
    ("bounds", "n8k"): cmd_n8k,
    ("bounds", "symbolic"): cmd_symbolic,
    ("selftest", None): cmd_selftest,
}


def _with_approx(obj):
    if isinstance(obj, dict):
        out = {}
        for key, val in obj.items():
            out[key] = _with_approx(val)
            if isinstance(val, str) and _RATIONAL_RE.match(val):
                out[f"{key}_approx"] = f"{float(Fraction(val)):.15g}"
        return out
    if isinstance(obj, list):
        return [_with_approx(v) for v in obj]
    return obj


def _render_text(obj, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(obj, dict):
        for key, val in obj.items():
            lines += _render_text(val, f"{prefix}{key}.")
    elif isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        for i, val in enumerate(obj):
            lines += _render_text(val, f"{prefix}{i}.")
    else:
        val = ", ".join(map(str, obj)) if isinstance(obj, list) else obj
        lines.append(f"{prefix[:-1]}: {val}")
    return lines


def _dispatch(argv: list[str]):
    args = None
    try:
        args = build_parser().parse_args(argv)
        handler = COMMANDS[(args.command, getattr(args, "action", None))]
        code, report = handler(args)
    except UsageError as exc:
        return EXIT_USAGE, {"error": str(exc)}, args
    except lattice_theta.CountMismatch as exc:
        return EXIT_NEGATIVE, {"error": str(exc)}, args
    if args.approx:
        report = _with_approx(report)
    return code, report, args


def run(argv: list[str]) -> tuple[int, dict]:
    """Parse ``argv`` and dispatch; returns ``(exit_code, report)``."""
    code, report, _ = _dispatch(argv)
    return code, report


def format_report(report: dict, fmt: str = "json") -> str:
    if fmt == "text":
        return "\n".join(_render_text(report))
    return json.dumps(report, indent=2)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, report, args = _dispatch(argv)
    fmt = args.format if args is not None else "json"
    stream = sys.stderr if code == EXIT_USAGE else sys.stdout
    print(format_report(report, fmt), file=stream)
    if args is not None and args.command == "selftest":
        for row in report["criteria"]:
            print(f"[{'PASS' if row['passed'] else 'FAIL'}] {row['criterion']:>2} {row['title']}: "
                  f"{row['detail']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
