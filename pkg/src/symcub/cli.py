"""Command-line front end: generate rules, integrate, solve roots, verify."""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import Sequence

import numpy as np

from . import partitions as pt
from .bernstein_szego import BernsteinSzego, BSParams, bs_roots, root_bracket
from .errors import OracleImpreciseError
from .orthopoly import Hermite, Jacobi, Laguerre, OrthoFamily
from .schur import CubatureRule, build_rule, integrate_rational_bs, integrate_symmetric
from .verify import OracleConfig, run_exactness_suite, run_orthogonality_suite

_CHEBYSHEV_EPS = {
    "chebyshev1": (0, 0),
    "chebyshev2": (1, 1),
    "chebyshev3": (0, 1),
    "chebyshev4": (1, 0),
}

_POLE_TOL = 1e-12


def _parse_complex(text: str) -> complex:
    """Accepts `re+imi` literals (and plain floats); `j` works as well."""
    cleaned = text.strip().replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse complex literal {text!r}") from exc


def _family_from_args(args: argparse.Namespace) -> OrthoFamily:
    name = args.family
    if name == "hermite":
        return Hermite()
    if name == "laguerre":
        return Laguerre(args.alpha)
    if name == "jacobi":
        return Jacobi(args.alpha, args.beta)
    if name in _CHEBYSHEV_EPS:
        ep, em = _CHEBYSHEV_EPS[name]
        return BernsteinSzego(BSParams(eps_plus=ep, eps_minus=em))
    if name == "bs":
        poles = list(args.poles or [])
        if args.auto_conjugate:
            for a in list(poles):
                if abs(a.imag) > _POLE_TOL and not any(
                    abs(b - a.conjugate()) <= _POLE_TOL for b in poles
                ):
                    poles.append(a.conjugate())
        params = BSParams(
            eps_plus=args.eps[0],
            eps_minus=args.eps[1],
            poles=tuple(poles),
            allow_zero_poles=args.allow_zero_poles,
        )
        return BernsteinSzego(params)
    raise ValueError(f"unknown family {name!r}")


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--family",
        required=True,
        choices=["hermite", "laguerre", "jacobi", "bs"] + sorted(_CHEBYSHEV_EPS),
    )
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--eps", type=int, nargs=2, default=(0, 0), metavar=("E+", "E-"))
    p.add_argument("--poles", type=_parse_complex, nargs="*", default=[])
    p.add_argument("--auto-conjugate", action="store_true")
    p.add_argument("--allow-zero-poles", action="store_true")


def _dump_json(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1)


def cmd_rule_gen(args: argparse.Namespace) -> int:
    family = _family_from_args(args)
    t0 = time.perf_counter()
    rule = build_rule(family, args.m, args.n)
    elapsed = time.perf_counter() - t0
    text = _dump_json(rule.to_jsonable()) + "\n"
    with open(args.output, "w") as fh:
        fh.write(text)
    if args.json:
        print(_dump_json({"nodes": len(rule.labels), "seconds": round(elapsed, 6),
                          "output": args.output}))
    else:
        print(f"wrote {len(rule.labels)} nodes to {args.output} in {elapsed:.3f} s")
    return 0


def _load_rule(path: str) -> CubatureRule:
    with open(path) as fh:
        rule = CubatureRule.from_jsonable(json.load(fh))
    rule.validate()
    return rule


def _poles_match(spec_poles: list[complex], rule_poles: Sequence[complex]) -> bool:
    rem = list(rule_poles)
    for a in spec_poles:
        hit = next((j for j, b in enumerate(rem) if abs(a - b) <= _POLE_TOL), None)
        if hit is None:
            return False
        rem.pop(hit)
    return not rem


def cmd_integrate(args: argparse.Namespace) -> int:
    rule = _load_rule(args.rule)
    with open(args.integrand) as fh:
        spec = json.load(fh)
    terms = [(pt.as_partition(lam), float(c)) for lam, c in spec["monomial_terms"]]
    for lam, _ in terms:
        if len(lam) != rule.n:
            print(
                f"error: integrand has {len(lam)} variables but rule has {rule.n}",
                file=sys.stderr,
            )
            return 1
    spec_poles = [complex(re, im) for re, im in spec.get("denominator_poles") or []]

    def f(xs):
        return sum(c * pt.monomial_eval(lam, xs) for lam, c in terms)

    if isinstance(rule.family, BernsteinSzego):
        if not _poles_match(spec_poles, rule.family.params.poles):
            print("error: integrand poles do not match the rule's poles", file=sys.stderr)
            return 1
        value = integrate_rational_bs(rule, f)
    else:
        if spec_poles:
            print("error: rule family has no poles for a rational integrand",
                  file=sys.stderr)
            return 1
        value = integrate_symmetric(rule, f)
    if args.json:
        print(_dump_json({"value": value}))
    else:
        print(f"{value:.17g}")
    return 0


def cmd_roots(args: argparse.Namespace) -> int:
    family = _family_from_args(args)
    if not isinstance(family, BernsteinSzego):
        print("error: roots command applies to Bernstein-Szego/Chebyshev families",
              file=sys.stderr)
        return 1
    if args.degree < 1:
        print("error: degree must be >= 1", file=sys.stderr)
        return 1
    params = family.params
    rootset = bs_roots(params, args.degree)
    rows = []
    for lhat, xi in enumerate(rootset.xi):
        lo, hi = root_bracket(params, args.degree, lhat)
        rows.append({"lhat": lhat, "xi": float(xi), "lower": lo, "upper": hi})
    if args.json:
        print(_dump_json({"degree": args.degree, "roots": rows}))
    else:
        print(f"{'lhat':>4}  {'root xi':>22}  {'bracket lower':>22}  {'bracket upper':>22}")
        for r in rows:
            print(
                f"{r['lhat']:>4}  {r['xi']:>22.17g}  {r['lower']:>22.17g}"
                f"  {r['upper']:>22.17g}"
            )
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    rule = _load_rule(args.rule)
    cfg = OracleConfig(points_per_axis=args.points_per_axis, seed=args.seed)
    try:
        report = run_orthogonality_suite(rule).merged_with(
            run_exactness_suite(rule, cfg)
        )
    except OracleImpreciseError as exc:
        print(f"oracle imprecise: {exc}", file=sys.stderr)
        return 2
    text = report.to_json() + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        print(
            f"{status} {check.name}: max_abs_error={check.max_abs_error:.3e}"
            f" tolerance={check.tolerance:.3e}",
            file=sys.stderr,
        )
    return 0 if report.overall_pass else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symcub",
        description="Exact cubature rules for symmetric polynomial and rational "
        "integrands over random-matrix densities.",
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=1,
                        help="reserved; computations currently run single-threaded")
    parser.add_argument("--json", action="store_true",
                        help="machine-readable stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p_rule = sub.add_parser("rule", help="rule file operations")
    rule_sub = p_rule.add_subparsers(dest="rule_command", required=True)
    p_gen = rule_sub.add_parser("gen", help="generate a cubature rule file")
    _add_family_args(p_gen)
    p_gen.add_argument("--m", type=int, required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("-o", "--output", required=True)
    p_gen.set_defaults(func=cmd_rule_gen)

    p_int = sub.add_parser("integrate", help="integrate a monomial-spec file")
    p_int.add_argument("rule")
    p_int.add_argument("integrand")
    p_int.set_defaults(func=cmd_integrate)

    p_roots = sub.add_parser("roots", help="solve and print Bernstein-Szego roots")
    _add_family_args(p_roots)
    p_roots.add_argument("--degree", type=int, required=True)
    p_roots.set_defaults(func=cmd_roots)

    p_ver = sub.add_parser("verify", help="run verification suites on a rule file")
    p_ver.add_argument("rule")
    p_ver.add_argument("--points-per-axis", type=int, default=120)
    p_ver.add_argument("-o", "--output", default=None)
    p_ver.set_defaults(func=cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OracleImpreciseError as exc:
        print(f"oracle imprecise: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
