"""Text formats: series strings, module tables and JSON output."""

from __future__ import annotations

import json
import re

from .errors import InvalidInput
from .modules import ElementaryModule
from .series import IwasawaSeries, SeriesPrecision, cyclotomic_gamma

_TERM = re.compile(r"""
    \s*(?P<sign>[+-])?\s*
    (?:
        (?:(?P<coef>\d+)\s*\*?\s*)?(?P<var>T)(?:\s*(?:\^|\*\*)\s*(?P<exp>\d+))?
      | (?P<const>\d+)
    )\s*""", re.VERBOSE)


def parse_polynomial(text: str) -> list[int]:
    """Integer coefficients of a polynomial in T, e.g. ``"3 + 3*T + T^2"`` or ``"[3, 3, 1]"``."""
    text = text.strip()
    if text.startswith("["):
        try:
            values = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"bad coefficient list {text!r}: {exc}") from None
        if not isinstance(values, list) or not all(isinstance(v, (int, str)) for v in values):
            raise InvalidInput(f"bad coefficient list {text!r}")
        return [int(v) for v in values]
    if not text:
        raise InvalidInput("empty series")
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise InvalidInput(f"cannot parse series {text!r} at position {pos}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("var"):
            c = int(m.group("coef")) if m.group("coef") else 1
            e = int(m.group("exp")) if m.group("exp") else 1
        else:
            c, e = int(m.group("const")), 0
        coeffs[e] = coeffs.get(e, 0) + sign * c
        pos = m.end()
        first = False
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return out


def parse_series(text, prec: SeriesPrecision) -> IwasawaSeries:
    coeffs = parse_polynomial(text) if isinstance(text, str) else [int(c) for c in text]
    return IwasawaSeries.from_coeffs(coeffs, prec.p, prec.coeff_precision, prec.degree_cap)


def module_from_dict(data: dict, prec: SeriesPrecision) -> ElementaryModule:
    """``p_part = [..]`` and ``poly_part = [{kind = "cyclotomic", i = 1, beta = 1}, ...]``."""
    poly = []
    for entry in data.get("poly_part", []):
        kind = entry.get("kind")
        beta = int(entry.get("beta", 1))
        if kind == "cyclotomic":
            f = cyclotomic_gamma(prec.p, int(entry["i"]), prec)
        elif kind == "coeffs":
            f = parse_series(entry["coeffs"], prec)
        else:
            raise InvalidInput(f"unknown factor kind {kind!r}")
        poly.append((f, beta))
    return ElementaryModule(prec, tuple(int(a) for a in data.get("p_part", [])), tuple(poly))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
