"""Command-line front end.

Exit codes: 0 certified/true, 1 mathematically refuted, 2 input error,
3 internal consistency failure (a bug).
Output is plain aligned text unless ``--json`` is given.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import euler, hilbert, symplectic
from .algebra import format_polynomial, format_rational, parse_rational
from .codec import (
    certificate_to_json,
    dumps,
    load_json,
    polynomial_to_json,
    ratfun_from_json,
    ratfun_to_json,
    rational_to_json,
    series_from_json,
    series_to_json,
)
from .errors import InputError, RefutationError, SymplecticSeriesError

EXIT_OK, EXIT_REFUTED, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def _emit(args, payload: dict, text: str) -> None:
    sys.stdout.write(dumps(payload) + "\n" if args.json else text.rstrip("\n") + "\n")


def _table(rows) -> str:
    rows = [[str(c) for c in r] for r in rows]
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows if i < len(r)) for i in range(max(map(len, rows)))]
    return "\n".join(
        "  ".join(c.rjust(widths[i]) for i, c in enumerate(r)).rstrip() for r in rows
    )


def _series_text(f) -> str:
    return ", ".join(format_rational(c) for c in f.coeffs)


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def cmd_check(args) -> int:
    f = series_from_json(load_json(args.series))
    report = symplectic.check_symplectic(f, args.max_m)
    payload = {
        "checked_up_to": report.checked_up_to,
        "violations": [{"m": m, "value": rational_to_json(v)} for m, v in report.violations],
        "symplectic": report.ok,
    }
    lines = [f"truncation     {f.truncation}", f"checked S_m    m <= {report.checked_up_to}"]
    if report.ok:
        lines.append("result         symplectic through the checked range")
    else:
        lines.append(f"result         {len(report.violations)} violation(s)")
        lines.append(_table([("m", "S_m")] + [(m, format_rational(v)) for m, v in report.violations]))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if report.ok else EXIT_REFUTED


# ---------------------------------------------------------------------------
# decompose
# ---------------------------------------------------------------------------

def _certificate_text(cert) -> str:
    lines = []
    if cert.point is not None:
        lines.append(f"point                 {format_rational(cert.point)}")
        lines.append(f"order                 {cert.order}")
        lines.append(f"minimal order         {cert.minimal_order}")
    lines.append(f"verified constraints  {cert.verified_constraints}")
    lines.append(f"rho coefficients      {_series_text(cert.rho)}")
    for name, ok in cert.verdicts.items():
        lines.append(f"verdict {name:<22}{'pass' if ok else 'fail'}")
    return "\n".join(lines)


def cmd_decompose(args) -> int:
    data = load_json(args.input)
    if isinstance(data, dict) and "num" in data:
        if args.order is None:
            raise InputError("--order is required for a rational function")
        psi = ratfun_from_json(data)
        cert = symplectic.certify_at(psi, args.point, args.order, args.constraints)
    else:
        cert = symplectic.decompose(series_from_json(data))
    _emit(args, certificate_to_json(cert), _certificate_text(cert))
    return EXIT_OK


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

def cmd_tables(args) -> int:
    if args.euler is not None:
        polys = euler.euler_polynomials(args.euler)
        payload = {"euler": [polynomial_to_json(p) for p in polys]}
        text = _table([(f"E_{n}(x)", format_polynomial(p, "x")) for n, p in enumerate(polys)])
    elif args.genocchi is not None:
        values = euler.genocchi(args.genocchi)
        payload = {"genocchi": [str(g) for g in values]}
        text = _table([("n", "G_n")] + list(enumerate(values)))
    elif args.bernoulli is not None:
        values = euler.bernoulli(args.bernoulli)
        payload = {"bernoulli": [rational_to_json(b) for b in values]}
        text = _table([("n", "B_n")] + [(n, format_rational(b)) for n, b in enumerate(values)])
    elif args.brackets is not None:
        table = euler.bracket_table(args.brackets)
        payload = {"brackets": [[str(b) for b in row] for row in table.rows]}
        text = _table([(f"n={n}",) + row for n, row in enumerate(table.rows, start=1)])
    else:
        nmax = args.identity
        table = euler.bracket_table(nmax)
        failures = [
            (n, k, l)
            for n in range(-nmax, nmax + 1)
            for k in range(nmax + 1)
            for l in range(nmax + 1)
            if euler.verify_cubic_identity(n, k, l, table)
        ]
        checked = (2 * nmax + 1) * (nmax + 1) ** 2
        payload = {"identity": {"nmax": nmax, "checked": checked, "failures": [list(t) for t in failures]}}
        text = f"cubic bracket identity on |n| <= {nmax}, 0 <= k, l <= {nmax}: {checked} triples, "
        text += "all zero" if not failures else f"{len(failures)} failures, first {failures[0]}"
        _emit(args, payload, text)
        return EXIT_OK if not failures else EXIT_REFUTED
    _emit(args, payload, text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# torus / molien / gorenstein
# ---------------------------------------------------------------------------

def _weights(args) -> hilbert.WeightMatrix:
    return hilbert.parse_weights(args.weights, args.moduli)


def report_to_json(report: hilbert.ConjectureReport) -> dict:
    gor = report.gorenstein
    return {
        "weights": report.weights.to_json(),
        "dims": list(report.data.dims),
        "quotient_dim": report.order,
        "invariant_series": series_to_json(report.data.invariant),
        "quotient_series": series_to_json(report.data.quotient),
        "hilbert_function": ratfun_to_json(report.function),
        "degree_bounds": list(report.reconstruction.degree_bounds),
        "validated_through": report.reconstruction.validated_through,
        "a_invariant": gor.a_invariant if gor else None,
        "gamma0": rational_to_json(gor.gamma0) if gor else None,
        "gamma1": rational_to_json(gor.gamma1) if gor else None,
        "certificate": certificate_to_json(report.certificate) if report.certificate else None,
        "rho_function": ratfun_to_json(report.rho_function) if report.rho_function else None,
        "verdicts": dict(report.verdicts),
        "certified": report.certified,
        "failure": report.failure,
    }


def _report_text(report: hilbert.ConjectureReport) -> str:
    gor = report.gorenstein
    lines = [
        f"weights               {report.weights.to_json()['weights']}",
        f"quotient dimension    {report.order}",
        f"quotient series       {_series_text(report.data.quotient.truncate(min(15, report.data.quotient.truncation)))}, ...",
        f"Hilbert series        {report.function}",
        f"a-invariant           {gor.a_invariant if gor else 'n/a'}",
    ]
    if report.rho_function is not None:
        lines.append(f"rho(y)                ({format_polynomial(report.rho_function.num, 'y')})"
                     f" / ({format_polynomial(report.rho_function.den, 'y')})")
    for name, ok in report.verdicts.items():
        lines.append(f"verdict {name:<24}{'pass' if ok else 'fail'}")
    lines.append(f"certified                       {'yes' if report.certified else 'no'}")
    if report.failure:
        lines.append(f"failure                         {report.failure}")
    return "\n".join(lines)


def cmd_torus(args) -> int:
    A = _weights(args)
    report = hilbert.certify_conjecture(A, args.truncation, args.budget, M=args.constraints)
    _emit(args, report_to_json(report), _report_text(report))
    return EXIT_OK if report.certified else EXIT_REFUTED


def cmd_molien(args) -> int:
    A = _weights(args)
    if not A.is_finite:
        raise InputError("molien needs a modulus for every row")
    counted = hilbert.molien_finite(A, args.truncation)
    averaged = hilbert.molien_average(A, args.truncation, max_order=hilbert.DEFAULT_MAX_GROUP_ORDER)
    agree = counted == averaged
    payload = {
        "group_order": A.group_order,
        "counted": series_to_json(counted),
        "molien_average": series_to_json(averaged),
        "agree": agree,
    }
    text = "\n".join([
        f"group order     {A.group_order}",
        f"counted         {_series_text(counted)}",
        f"Molien average  {_series_text(averaged)}",
        f"agree           {'yes' if agree else 'no'}",
    ])
    _emit(args, payload, text)
    return EXIT_OK if agree else EXIT_REFUTED


def cmd_gorenstein(args) -> int:
    psi = ratfun_from_json(load_json(args.input))
    report = hilbert.gorenstein_checks(psi, args.order)
    payload = {
        "a_invariant": report.a_invariant,
        "order": report.order,
        "gamma0": rational_to_json(report.gamma0),
        "gamma1": rational_to_json(report.gamma1),
        "a_from_laurent": report.a_from_laurent,
        "symplectic_predicted": report.symplectic_predicted,
    }
    text = "\n".join([
        f"a-invariant          {report.a_invariant}",
        f"order d              {report.order}",
        f"gamma_0, gamma_1     {format_rational(report.gamma0)}, {format_rational(report.gamma1)}",
        f"a from Laurent       {report.a_from_laurent}",
        f"a = -d (symplectic)  {'yes' if report.symplectic_predicted else 'no'}",
    ])
    _emit(args, payload, text)
    return EXIT_OK


# ---------------------------------------------------------------------------

def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sympseries",
        description="Exact checks for symplectic power series and Hilbert series.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="evaluate the S_m constraints of a series")
    p.add_argument("series", help="series JSON: file path, '-' for stdin, or inline text")
    p.add_argument("--max-m", type=_nonneg, default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decompose", parents=[common], help="extract rho with f = rho(x^2/(1-x))")
    p.add_argument("input", help="series or rational-function JSON")
    p.add_argument("--point", type=_rational_arg, default=Fraction(1))
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--constraints", type=_nonneg, default=20, help="constraints to verify (minimum)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("tables", parents=[common], help="Euler/Genocchi/Bernoulli/bracket tables")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--euler", type=_nonneg)
    g.add_argument("--genocchi", type=_nonneg)
    g.add_argument("--bernoulli", type=_nonneg)
    g.add_argument("--brackets", type=_nonneg)
    g.add_argument("--identity", type=_nonneg, metavar="NMAX")
    p.set_defaults(func=cmd_tables)

    for name, func, helptext in (
        ("torus", cmd_torus, "certify the quotient Hilbert series of a weight matrix"),
        ("molien", cmd_molien, "finite abelian invariants: counting vs Molien average"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--weights", required=True, help='rows ";"-separated, entries ","-separated')
        p.add_argument("--moduli", default=None, help="one order per row, 0 for a circle factor")
        p.add_argument("--truncation", type=_nonneg, default=40 if name == "torus" else 20)
        if name == "torus":
            p.add_argument("--constraints", type=_nonneg, default=30)
            p.add_argument("--budget", type=_nonneg, default=None,
                           help="reconstruction total-degree budget (env SYMP_BUDGET)")
        p.set_defaults(func=func)

    p = sub.add_parser("gorenstein", parents=[common], help="a-invariant from the functional equation")
    p.add_argument("input", help="rational-function JSON")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_gorenstein)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RefutationError as exc:
        sys.stderr.write(f"refuted: {exc}\n")
        if args.json:
            payload = {"error": type(exc).__name__, "message": str(exc)}
            m = getattr(exc, "m", None)
            if m is not None:
                payload["m"] = m
                payload["value"] = rational_to_json(exc.value)
            sys.stdout.write(dumps(payload) + "\n")
        return EXIT_REFUTED
    except (InputError, ZeroDivisionError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except SymplecticSeriesError as exc:
        sys.stderr.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
