"""JSON wire formats and the CSV sampling contract.

Rationals travel as decimal-integer strings "p/q" (bare "p" for integers).
A coefficient is {"num": [{"s": exp, "re": "p/q", "im": "p/q"}, ...],
"den": [...]} with terms sorted by exponent; a polynomial is
{"vars": [...], "terms": [{"deg": [...], "coef": ...}, ...]} sorted by
degree tuple, so emitted documents are deterministic and round-trip to
values equal under cross-multiplication.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .coeffs import CoefExpr, GaussianRational, LaurentPoly, QCalcError
from .polys import MPoly
from .qcore import TruncSeries
from .qwave import SYMBOLIC_SPEED, WaveSolution

__all__ = [
    "SerializationError",
    "rational_to_str",
    "rational_from_str",
    "coef_to_json",
    "coef_from_json",
    "mpoly_to_json",
    "mpoly_from_json",
    "series_to_json",
    "series_from_json",
    "wave_to_json",
    "wave_from_json",
    "verdict_to_json",
    "write_sample_csv",
]


class SerializationError(QCalcError, ValueError):
    """Malformed wire data."""


def rational_to_str(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_from_str(text: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise SerializationError(f"bad rational {text!r}: {exc}") from None


def _laurent_to_list(p: LaurentPoly) -> list:
    return [
        {
            "s": e,
            "re": rational_to_str(c.re),
            "im": rational_to_str(c.im),
        }
        for e, c in sorted(p.coeffs.items())
    ]


def _laurent_from_list(items) -> LaurentPoly:
    if not isinstance(items, list):
        raise SerializationError("Laurent polynomial must be a list of terms")
    coeffs = {}
    for item in items:
        try:
            e = int(item["s"])
        except (KeyError, TypeError, ValueError):
            raise SerializationError(f"bad Laurent term {item!r}") from None
        re = rational_from_str(item.get("re", "0"))
        im = rational_from_str(item.get("im", "0"))
        coeffs[e] = GaussianRational(re, im)
    return LaurentPoly(coeffs)


def coef_to_json(c: CoefExpr) -> dict:
    return {"num": _laurent_to_list(c.num), "den": _laurent_to_list(c.den)}


def coef_from_json(doc) -> CoefExpr:
    if not isinstance(doc, dict) or "num" not in doc or "den" not in doc:
        raise SerializationError(f"bad coefficient document: {doc!r}")
    den = _laurent_from_list(doc["den"])
    if den.is_zero():
        raise SerializationError("coefficient has zero denominator")
    return CoefExpr(_laurent_from_list(doc["num"]), den)


def mpoly_to_json(p: MPoly) -> dict:
    return {
        "vars": list(p.vars),
        "terms": [
            {"deg": list(e), "coef": coef_to_json(c)}
            for e, c in sorted(p.terms.items())
        ],
    }


def mpoly_from_json(doc) -> MPoly:
    if not isinstance(doc, dict) or "vars" not in doc or "terms" not in doc:
        raise SerializationError(f"bad polynomial document: {doc!r}")
    variables = tuple(str(v) for v in doc["vars"])
    terms = {}
    for item in doc["terms"]:
        try:
            deg = tuple(int(d) for d in item["deg"])
            coef = coef_from_json(item["coef"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SerializationError(f"bad polynomial term {item!r}: {exc}") from None
        terms[deg] = coef
    try:
        return MPoly(variables, terms)
    except (QCalcError, ValueError) as exc:
        raise SerializationError(str(exc)) from None


def series_to_json(s: TruncSeries) -> dict:
    return {
        "var": s.var,
        "order": s.order,
        "coeffs": [coef_to_json(c) for c in s.coeffs],
    }


def series_from_json(doc) -> TruncSeries:
    try:
        return TruncSeries(
            str(doc["var"]),
            int(doc["order"]),
            [coef_from_json(c) for c in doc["coeffs"]],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"bad series document: {exc}") from None


def _speed_to_json(c) -> str:
    if isinstance(c, str):
        return c
    c = CoefExpr.of(c)
    try:
        mono = c.lower().as_monomial()
    except ValueError:
        mono = None
    if mono is not None and mono[0] == 0 and mono[1].is_real():
        return rational_to_str(mono[1].re)
    # q-dependent speeds embed their full coefficient document
    return json.dumps(coef_to_json(c), sort_keys=True)


def _speed_from_json(text) -> object:
    if text == SYMBOLIC_SPEED:
        return SYMBOLIC_SPEED
    text = str(text)
    if text.lstrip().startswith("{"):
        return coef_from_json(json.loads(text))
    return CoefExpr.of(rational_from_str(text))


def wave_to_json(w: WaveSolution) -> dict:
    doc = mpoly_to_json(w.body)
    doc["c"] = _speed_to_json(w.c)
    doc["order"] = w.order
    doc["provenance"] = w.provenance
    return doc


def wave_from_json(doc) -> WaveSolution:
    if not isinstance(doc, dict) or "c" not in doc:
        raise SerializationError("wave document needs a c field")
    body = mpoly_from_json(doc)
    order = doc.get("order")
    if order is not None:
        order = int(order)
    return WaveSolution(
        body,
        _speed_from_json(doc["c"]),
        order,
        str(doc.get("provenance", "unknown")),
    )


def verdict_to_json(v) -> dict:
    doc = {
        "id": v.identity,
        "range": v.range,
        "status": v.status,
        "ms": round(v.elapsed_ms, 3),
    }
    if v.detail:
        doc["detail"] = v.detail
    if v.residual is not None and v.status == "failed":
        if isinstance(v.residual, MPoly):
            doc["residual"] = mpoly_to_json(v.residual)
        elif isinstance(v.residual, TruncSeries):
            doc["residual"] = series_to_json(v.residual)
        elif isinstance(v.residual, CoefExpr):
            doc["residual"] = coef_to_json(v.residual)
    return doc


def write_sample_csv(rows, stream) -> None:
    """Emit the sampling contract: header x,t,u,valid and 17 significant
    digits, rows already ordered x-major."""
    stream.write("x,t,u,valid\n")
    for x, t, u, valid in rows:
        stream.write(f"{x:.17g},{t:.17g},{u:.17g},{int(valid)}\n")
