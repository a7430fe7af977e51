"""Command-line frontend: verify identities, build polynomials, solve the
q-wave IVP, and sample solutions to CSV.

Exit codes: 0 success / all identities verified, 1 an identity check found a
counterexample (or --check rejected a solution), 2 usage or input error.
Symbolic q everywhere; a floating-point q is accepted only by `sample`.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction

from .coeffs import GR_I, QCalcError
from .hermite import hermite_classical, q_hermite, q_hermite_dual
from .identities import IDENTITY_CHECKS
from .polys import MPoly, q_binomial_power
from .qcore import UnsupportedOrderError, q_int, q_trig_series
from .qwave import (
    SYMBOLIC_SPEED,
    InitialData,
    dalembert_solve,
    poly_from_coefficients,
    q_binomial_substitute,
    sample_grid,
)
from .serialize import (
    SerializationError,
    mpoly_to_json,
    rational_from_str,
    verdict_to_json,
    wave_from_json,
    wave_to_json,
    write_sample_csv,
)

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2

_DEFAULT_RANGES = {
    "hermite-binomial": 12,
    "xi": 12,
    "q-hermite-binomial": 10,
    "double-q-analytic": 12,
    "q-laplacian": 8,
    "traveling-hermite": 10,
}

_NAMED_WAVES = ("cos_q", "sin_q", "q-gaussian")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcalc",
        description="Exact q-calculus toolkit: identity verification, "
        "q-Hermite polynomials and the q-wave d'Alembert solver.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--output", metavar="PATH", help="write result here instead of stdout"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="verify one identity or all of them")
    p.add_argument("--identity", required=True,
                   choices=sorted(IDENTITY_CHECKS) + ["all"])
    p.add_argument("--n-max", type=int, default=None, help="degree bound for polynomial identities")
    p.add_argument("--order", type=int, default=20, help="truncation order for series identities")
    p.add_argument("--seed", type=int, default=None,
                   help="seed for the randomised q spot checks of exp-product")

    p = sub.add_parser("solve", parents=[common], help="solve the q-wave IVP in d'Alembert form")
    p.add_argument("--f", help="comma-separated rational coefficients of f, low degree first")
    p.add_argument("--f-named", choices=_NAMED_WAVES, help="named initial displacement")
    p.add_argument("--g", help="comma-separated rational coefficients of g, low degree first")
    p.add_argument("--g-named", choices=_NAMED_WAVES + ("neg-2q-cx",),
                   help="named initial q-velocity")
    p.add_argument("--c", required=True, help="wave speed as a rational p/q")
    p.add_argument("--order", type=int, default=20, help="truncation order for named series data")
    p.add_argument("--check", action="store_true",
                   help="re-apply the wave operator and refuse to emit on a nonzero residual")

    p = sub.add_parser("sample", parents=[common], help="evaluate a wave solution on a float grid (CSV)")
    p.add_argument("--in", dest="infile", default="-", help="wave solution JSON (default stdin)")
    p.add_argument("--q", type=float, required=True, help="numeric q > 0")
    p.add_argument("--c", type=float, default=1.0,
                   help="numeric speed, used when the body carries a symbolic c")
    p.add_argument("--x", required=True, metavar="START:STOP:STEP", help="x grid")
    p.add_argument("--t", required=True, metavar="START:STOP:STEP", help="t grid")

    p = sub.add_parser("hermite", parents=[common], help="emit a Hermite polynomial as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=("q", "classical", "inverse-q"), default="q")

    p = sub.add_parser("expand", parents=[common], help="emit a q-binomial power expansion as JSON")
    p.add_argument("--binomial", required=True, choices=("z+iw", "z-iw", "x+ct", "x-ct"))
    p.add_argument("--n", type=int, required=True)

    return parser


def _parse_coeff_list(text: str):
    return [rational_from_str(part) for part in text.split(",")]


def _parse_grid(text: str):
    parts = text.strip().split(":")
    if len(parts) != 3:
        raise SerializationError(f"grid {text!r} is not START:STOP:STEP")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise SerializationError(f"grid {text!r} has non-numeric parts") from None
    if step <= 0:
        raise SerializationError("grid step must be positive")
    out = []
    k = 0
    while True:
        v = start + k * step
        if v > stop + step * 1e-9:
            break
        out.append(v)
        k += 1
    return out


def _initial_part(coeffs_text, named, which, c, order):
    if (coeffs_text is None) == (named is None):
        raise SerializationError(
            f"exactly one of --{which} / --{which}-named is required"
        )
    if coeffs_text is not None:
        return poly_from_coefficients(_parse_coeff_list(coeffs_text)), None
    if named == "neg-2q-cx":
        return MPoly(("x",), {(1,): q_int(2)}).scale(-c), None
    if named == "q-gaussian":
        source = MPoly(
            ("x",),
            {
                (2 * n,): Fraction((-1) ** n, math.factorial(n))
                for n in range(order + 1)
            },
        )
        return source, 2 * order + 1
    series = q_trig_series(named[:3], order)
    return MPoly(("x",), {(d,): v for d, v in enumerate(series.coeffs)}), order


def _cmd_verify(args, out) -> int:
    ids = sorted(IDENTITY_CHECKS) if args.identity == "all" else [args.identity]
    q_samples = [Fraction(1, 2), Fraction(3, 4), Fraction(2)]
    if args.seed is not None:
        rng = random.Random(args.seed)
        q_samples = []
        while len(q_samples) < 3:
            q = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            if q != 1 and q not in q_samples:
                q_samples.append(q)
    verdicts = []
    for ident in ids:
        fn, kind = IDENTITY_CHECKS[ident]
        if kind == "order":
            bound = args.order
        else:
            bound = args.n_max if args.n_max is not None else _DEFAULT_RANGES[ident]
        if ident == "exp-product":
            verdicts.append(fn(bound, q_samples))
        else:
            verdicts.append(fn(bound))
    docs = [verdict_to_json(v) for v in verdicts]
    payload = docs if args.identity == "all" else docs[0]
    out.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK if all(v.ok for v in verdicts) else EXIT_VIOLATED


def _cmd_solve(args, out) -> int:
    c = rational_from_str(args.c)
    if c == 0:
        raise SerializationError("wave speed must be nonzero")
    f, f_order = _initial_part(args.f, args.f_named, "f", c, args.order)
    g, g_order = _initial_part(args.g, args.g_named, "g", c, args.order)
    orders = [o for o in (f_order, g_order) if o is not None]
    data = InitialData(f, g, min(orders) if orders else None)
    solution = dalembert_solve(data, c)
    if args.check and not solution.residual_is_zero():
        print("nonzero wave residual; refusing to emit", file=sys.stderr)
        return EXIT_VIOLATED
    out.write(json.dumps(wave_to_json(solution), indent=2) + "\n")
    return EXIT_OK


def _cmd_sample(args, out) -> int:
    if args.q <= 0:
        raise SerializationError("numeric q must be positive")
    if args.infile == "-":
        doc = json.load(sys.stdin)
    else:
        with open(args.infile, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    wave = wave_from_json(doc)
    rows = sample_grid(wave, args.q, args.c, _parse_grid(args.x), _parse_grid(args.t))
    write_sample_csv(rows, out)
    return EXIT_OK


def _cmd_hermite(args, out) -> int:
    if args.n < 0:
        raise SerializationError("degree must be >= 0")
    if args.kind == "classical":
        poly = hermite_classical(args.n)
    elif args.kind == "inverse-q":
        poly = q_hermite_dual(args.n, var="w")
    else:
        poly = q_hermite(args.n)
    out.write(json.dumps(mpoly_to_json(poly), indent=2) + "\n")
    return EXIT_OK


def _cmd_expand(args, out) -> int:
    if args.n < 0:
        raise SerializationError("power must be >= 0")
    if args.binomial in ("z+iw", "z-iw"):
        coef = GR_I if args.binomial == "z+iw" else -GR_I
        poly = q_binomial_power("z", coef, "w", args.n)
    else:
        sign = "+" if args.binomial == "x+ct" else "-"
        poly = q_binomial_substitute(
            MPoly.monomial(("x",), (args.n,), 1), sign, SYMBOLIC_SPEED
        )
    out.write(json.dumps(mpoly_to_json(poly), indent=2) + "\n")
    return EXIT_OK


_COMMANDS = {
    "verify": _cmd_verify,
    "solve": _cmd_solve,
    "sample": _cmd_sample,
    "hermite": _cmd_hermite,
    "expand": _cmd_expand,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8") as out:
                return _COMMANDS[args.command](args, out)
        return _COMMANDS[args.command](args, sys.stdout)
    except (SerializationError, UnsupportedOrderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QCalcError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console_entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_entry()
