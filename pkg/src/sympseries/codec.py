"""JSON encodings.

Rationals are strings ``"p/q"`` (``"p"`` when q = 1).  A series is
``{"coeffs": [...], "truncation": N}``, a polynomial an ascending array,
a rational function ``{"num": [...], "den": [...]}``.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

from .algebra import Polynomial, RationalFunction, TruncatedSeries, as_fraction, format_rational
from .errors import InputError
from .symplectic import SymplecticCertificate


def rational_to_json(value) -> str:
    return format_rational(Fraction(value))


def rational_from_json(value) -> Fraction:
    if isinstance(value, float):
        raise InputError(f"floats are not exact rationals: {value!r}")
    return as_fraction(value)


def polynomial_to_json(p: Polynomial) -> list[str]:
    return [rational_to_json(c) for c in p.coeffs]


def polynomial_from_json(data) -> Polynomial:
    if not isinstance(data, list):
        raise InputError("a polynomial is an array of coefficients")
    return Polynomial(rational_from_json(c) for c in data)


def series_to_json(f: TruncatedSeries) -> dict:
    return {"coeffs": [rational_to_json(c) for c in f.coeffs], "truncation": f.truncation}


def series_from_json(data) -> TruncatedSeries:
    if not isinstance(data, dict) or "coeffs" not in data:
        raise InputError('a series is {"coeffs": [...], "truncation": N}')
    coeffs = [rational_from_json(c) for c in data["coeffs"]]
    trunc = data.get("truncation")
    if trunc is not None and (not isinstance(trunc, int) or isinstance(trunc, bool)):
        raise InputError("truncation must be an integer")
    return TruncatedSeries(coeffs, trunc)


def ratfun_to_json(f: RationalFunction) -> dict:
    return {"num": polynomial_to_json(f.num), "den": polynomial_to_json(f.den)}


def ratfun_from_json(data) -> RationalFunction:
    if not isinstance(data, dict) or "num" not in data:
        raise InputError('a rational function is {"num": [...], "den": [...]}')
    num = polynomial_from_json(data["num"])
    den = polynomial_from_json(data.get("den", ["1"]))
    if den.is_zero():
        raise InputError("zero denominator")
    return RationalFunction(num, den)


def certificate_to_json(cert: SymplecticCertificate) -> dict:
    out = {
        "rho": series_to_json(cert.rho),
        "point": None if cert.point is None else rational_to_json(cert.point),
        "order": cert.order,
        "verified_constraints": cert.verified_constraints,
        "minimal_order": cert.minimal_order,
    }
    if cert.verdicts:
        out["verdicts"] = dict(cert.verdicts)
    return out


def load_json(source: str, stdin=None):
    """Parse JSON from inline text, ``-`` (stdin) or a file path."""
    text = source
    if source == "-":
        text = (stdin or sys.stdin).read()
    elif not source.lstrip().startswith(("{", "[")):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def dumps(obj, level: int = 0) -> str:
    """Deterministic JSON; arrays of scalars stay on one line."""
    pad = "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * level + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(json.dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * level + "]"
    return json.dumps(obj)
