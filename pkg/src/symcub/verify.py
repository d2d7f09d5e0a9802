"""Independent reference integration and verification suites.

The oracles never reuse the package's own quadrature machinery: references
are tensor-product Gauss-Legendre sums over (truncated) boxes, adaptive
univariate integration, or importance-weighted Monte Carlo.  Infinite
supports are truncated at boxes whose tail mass is budgeted below 1e-12 of
the total weight mass.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.special import erfc, gammaincc

from . import partitions as pt
from .bernstein_szego import BernsteinSzego
from .errors import OracleImpreciseError
from .orthopoly import Hermite, Jacobi, Laguerre, OrthoFamily
from .schur import (
    CubatureRule,
    SchurEvaluator,
    full_discrete_weights,
    integrate_rational_bs,
    integrate_symmetric,
)

__all__ = [
    "OracleConfig",
    "VerificationReport",
    "oracle_integrate",
    "monte_carlo_integrate",
    "run_orthogonality_suite",
    "run_exactness_suite",
]

_TAIL_BUDGET = 1e-12
_MIN_POINTS = 50

HERMITE_BOX = 12.0


def laguerre_box(alpha: float) -> float:
    return 60.0 + 10.0 * alpha


@dataclass(frozen=True)
class OracleConfig:
    points_per_axis: int = 200
    reference_kind: str = "tensor_gauss_legendre"
    mc_samples: int = 200_000
    seed: int = 0

    def to_jsonable(self) -> dict:
        return {
            "points_per_axis": self.points_per_axis,
            "reference_kind": self.reference_kind,
            "mc_samples": self.mc_samples,
            "seed": self.seed,
        }


def _axis(family: OrthoFamily, points: int) -> tuple[np.ndarray, np.ndarray]:
    """1D reference nodes x_i and weights u_i with sum u_i g(x_i) ~ int g w dx.

    Bounded supports are mapped to the angular variable so that half-integer
    Jacobi exponents become smooth; infinite supports are truncated with a
    checked tail budget.
    """
    if isinstance(family, Hermite):
        tail = 0.5 * erfc(HERMITE_BOX)  # relative: total mass is 1
        if tail > _TAIL_BUDGET:
            raise OracleImpreciseError(f"Hermite tail mass {tail} over budget")
        t, u = np.polynomial.legendre.leggauss(points)
        x = HERMITE_BOX * t
        w = HERMITE_BOX * u * np.exp(-x * x) / math.sqrt(math.pi)
        return x, w
    if isinstance(family, Laguerre):
        box = laguerre_box(family.alpha)
        tail = gammaincc(family.alpha + 1.0, box)
        if tail > _TAIL_BUDGET:
            raise OracleImpreciseError(f"Laguerre tail mass {tail} over budget")
        t, u = np.polynomial.legendre.leggauss(points)
        x = 0.5 * box * (t + 1.0)
        w = 0.5 * box * u * x**family.alpha * np.exp(-x)
        return x, w
    if isinstance(family, Jacobi):
        t, u = np.polynomial.legendre.leggauss(points)
        theta = 0.5 * math.pi * (t + 1.0)
        al, be = family.alpha, family.beta
        x = np.cos(theta)
        w = (
            0.5
            * math.pi
            * u
            * 2.0 ** (al + be + 1.0)
            * np.sin(0.5 * theta) ** (2.0 * al + 1.0)
            * np.cos(0.5 * theta) ** (2.0 * be + 1.0)
        )
        return x, w
    if isinstance(family, BernsteinSzego):
        # Plain Legendre points in xi; densities are applied by the caller.
        t, u = np.polynomial.legendre.leggauss(points)
        xi = 0.5 * math.pi * (t + 1.0)
        return xi, 0.5 * math.pi * u
    raise ValueError(f"no oracle axis for family {family.kind}")


def _grid(points: np.ndarray, n: int) -> list[np.ndarray]:
    grids = np.meshgrid(*([points] * n), indexing="ij")
    return [g.ravel() for g in grids]


def _squared_vandermonde(cols: Sequence[np.ndarray]) -> np.ndarray:
    n = len(cols)
    v = np.ones_like(cols[0])
    for j in range(n):
        for k in range(j + 1, n):
            v = v * (cols[j] - cols[k]) ** 2
    return v


def oracle_integrate(
    family: OrthoFamily,
    n: int,
    f: Callable,
    cfg: OracleConfig,
    rational_poles: Sequence[complex] | None = None,
) -> float:
    """(1/n!) reference integral of f against the ensemble density.

    ``f`` is called with a list of n coordinate arrays (cosine coordinates
    for Bernstein-Szego).  For Bernstein-Szego families the 1/(2 pi)^n
    prefactor is included and ``rational_poles`` adds the pole denominator
    of the rational integrand.
    """
    if cfg.points_per_axis < _MIN_POINTS:
        raise OracleImpreciseError(
            f"points_per_axis={cfg.points_per_axis} below minimum {_MIN_POINTS}"
        )
    if cfg.reference_kind == "monte_carlo":
        est, _ = monte_carlo_integrate(family, n, f, cfg, rational_poles)
        return est
    if cfg.reference_kind == "adaptive_univariate":
        if n != 1:
            raise ValueError("adaptive_univariate reference requires n=1")
        return _adaptive_1d(family, f, rational_poles)
    if cfg.reference_kind != "tensor_gauss_legendre":
        raise ValueError(f"unknown reference kind {cfg.reference_kind!r}")

    x1, u1 = _axis(family, cfg.points_per_axis)
    cols = _grid(x1, n)
    wcols = _grid(u1, n)
    weight = np.ones_like(cols[0])
    for wc in wcols:
        weight = weight * wc

    if isinstance(family, BernsteinSzego):
        params = family.params
        cosc = [np.cos(c) for c in cols]
        dens = np.ones_like(cols[0])
        for c in cosc:
            dens = dens * (
                2.0 ** (params.eps_plus + params.eps_minus)
                * (1.0 + params.eps_plus * c)
                * (1.0 - params.eps_minus * c)
            )
        dens = dens * _squared_vandermonde(cosc)
        vals = np.asarray(f(cosc), dtype=float)
        if rational_poles:
            denom = np.ones_like(cols[0], dtype=complex)
            for a in rational_poles:
                for c in cosc:
                    denom = denom * (1.0 + 2.0 * a * c + a * a)
            vals = vals / denom.real
        total = float(np.sum(vals * dens * weight))
        return total / (2.0 * math.pi) ** n / math.factorial(n)

    if rational_poles:
        raise ValueError("rational poles only apply to Bernstein-Szego families")
    dens = _squared_vandermonde(cols)
    vals = np.asarray(f(cols), dtype=float)
    return float(np.sum(vals * dens * weight)) / math.factorial(n)


def _adaptive_1d(
    family: OrthoFamily, f: Callable, rational_poles: Sequence[complex] | None
) -> float:
    if isinstance(family, BernsteinSzego):
        params = family.params

        def integrand(xi: float) -> float:
            c = math.cos(xi)
            val = float(f([np.array([c])]))
            if rational_poles:
                denom = complex(1.0)
                for a in rational_poles:
                    denom *= 1.0 + 2.0 * a * c + a * a
                val /= denom.real
            rho = (
                2.0 ** (params.eps_plus + params.eps_minus)
                * (1.0 + params.eps_plus * c)
                * (1.0 - params.eps_minus * c)
            )
            return val * rho / (2.0 * math.pi)

        val, err = quad(integrand, 0.0, math.pi, limit=500)
    else:
        a, b = family.support
        if isinstance(family, Hermite):
            a, b = -HERMITE_BOX, HERMITE_BOX
        elif isinstance(family, Laguerre):
            a, b = 0.0, laguerre_box(family.alpha)

        def integrand(x: float) -> float:
            return float(f([np.array([x])])) * family.weight(x)

        val, err = quad(integrand, a, b, limit=500)
    if err > 1e-10 * max(1.0, abs(val)):
        raise OracleImpreciseError(f"adaptive reference unreliable: {val} +/- {err}")
    return val


def monte_carlo_integrate(
    family: OrthoFamily,
    n: int,
    f: Callable,
    cfg: OracleConfig,
    rational_poles: Sequence[complex] | None = None,
) -> tuple[float, float]:
    """Uniform-box importance-weighted sampler; returns (estimate, std_error)."""
    rng = np.random.default_rng(cfg.seed)
    if isinstance(family, (BernsteinSzego, Jacobi)):
        lo, hi = 0.0, math.pi
        angular = True
    elif isinstance(family, Hermite):
        lo, hi = -HERMITE_BOX, HERMITE_BOX
        angular = False
    elif isinstance(family, Laguerre):
        lo, hi = 0.0, laguerre_box(family.alpha)
        angular = False
    else:
        raise ValueError(f"no sampler for family {family.kind}")

    pts = rng.uniform(lo, hi, size=(cfg.mc_samples, n))
    cols = [pts[:, j] for j in range(n)]
    volume = (hi - lo) ** n

    if isinstance(family, BernsteinSzego):
        params = family.params
        cosc = [np.cos(c) for c in cols]
        dens = np.ones(cfg.mc_samples)
        for c in cosc:
            dens *= (
                2.0 ** (params.eps_plus + params.eps_minus)
                * (1.0 + params.eps_plus * c)
                * (1.0 - params.eps_minus * c)
            )
        dens *= _squared_vandermonde(cosc)
        vals = np.asarray(f(cosc), dtype=float)
        if rational_poles:
            denom = np.ones(cfg.mc_samples, dtype=complex)
            for a in rational_poles:
                for c in cosc:
                    denom = denom * (1.0 + 2.0 * a * c + a * a)
            vals = vals / denom.real
        samples = vals * dens * volume / (2.0 * math.pi) ** n
    else:
        if angular:  # Jacobi sampled in the angular variable
            al, be = family.alpha, family.beta
            xcols = [np.cos(c) for c in cols]
            w1 = np.ones(cfg.mc_samples)
            for c in cols:
                w1 *= (
                    2.0 ** (al + be + 1.0)
                    * np.sin(0.5 * c) ** (2.0 * al + 1.0)
                    * np.cos(0.5 * c) ** (2.0 * be + 1.0)
                )
        else:
            xcols = cols
            w1 = np.ones(cfg.mc_samples)
            for c in cols:
                w1 *= np.array([family.weight(v) for v in c])
        dens = w1 * _squared_vandermonde(xcols)
        vals = np.asarray(f(xcols), dtype=float)
        samples = vals * dens * volume

    samples = samples / math.factorial(n)
    est = float(np.mean(samples))
    stderr = float(np.std(samples, ddof=1) / math.sqrt(cfg.mc_samples))
    return est, stderr


# -- verification suites -------------------------------------------------


@dataclass
class Check:
    name: str
    max_abs_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_abs_error <= self.tolerance

    def to_jsonable(self) -> dict:
        return {
            "name": self.name,
            "max_abs_error": self.max_abs_error,
            "tolerance": self.tolerance,
            "pass": bool(self.passed),
        }


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)
    environment: dict = field(default_factory=dict)

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, max_abs_error: float, tolerance: float) -> None:
        self.checks.append(Check(name, float(max_abs_error), float(tolerance)))

    def to_json(self) -> str:
        payload = {
            "checks": [c.to_jsonable() for c in self.checks],
            "environment": self.environment,
            "overall_pass": bool(self.overall_pass),
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ": "), indent=1)

    def merged_with(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(
            checks=self.checks + other.checks,
            environment={**self.environment, **other.environment},
        )


def _gram_labels(rule: CubatureRule) -> list[tuple[int, ...]]:
    """Alcove labels for which every required degree has an explicit formula."""
    if isinstance(rule.family, BernsteinSzego):
        floor = rule.family.min_degree
        return [lam for lam in rule.labels if lam[-1] >= floor]
    return list(rule.labels)


def run_orthogonality_suite(rule: CubatureRule) -> VerificationReport:
    """Discrete Gram matrix (and its dual) against the identity."""
    report = VerificationReport(
        environment={"suite": "orthogonality", "family": rule.family.descriptor(),
                     "m": rule.m, "n": rule.n}
    )
    labels = _gram_labels(rule)
    restricted = len(labels) != len(rule.labels)
    ev = SchurEvaluator(rule.family, rule.n)
    weights = full_discrete_weights(rule)
    pmat = np.empty((len(labels), len(rule.nodes)))
    for i, lam in enumerate(labels):
        for j, node in enumerate(rule.nodes):
            pmat[i, j] = ev(lam, node)
    gram = (pmat * weights) @ pmat.T
    gram_err = np.max(np.abs(gram - np.eye(len(labels))))
    report.add("gram_identity", gram_err, 1e-10)

    if not restricted:
        # Dual orthogonality, normalized so the target is again the identity.
        dual = pmat.T @ pmat
        scale = np.sqrt(weights)
        dual_err = np.max(np.abs(dual * np.outer(scale, scale) - np.eye(len(weights))))
        report.add("dual_gram_identity", dual_err, 1e-9)
    return report


def relative_error(value: float, reference: float, scale: float) -> float:
    return abs(value - reference) / max(abs(reference), abs(scale))


def run_exactness_suite(rule: CubatureRule, cfg: OracleConfig) -> VerificationReport:
    """Cubature vs oracle over all monomials of exactness degree, plus a probe.

    The degree-(2m+2) probe demonstrates non-exactness: its error is
    recorded but intentionally not gated (it guards against a vacuous
    oracle, not against the rule).
    """
    report = VerificationReport(
        environment={"suite": "exactness", "family": rule.family.descriptor(),
                     "m": rule.m, "n": rule.n, "oracle": cfg.to_jsonable()}
    )
    is_bs = isinstance(rule.family, BernsteinSzego)
    poles = rule.family.params.poles if is_bs else None

    def rule_value(lam):
        f = lambda xs: pt.monomial_eval(lam, xs)
        if is_bs:
            return integrate_rational_bs(rule, f)
        return integrate_symmetric(rule, f)

    def oracle_value(lam):
        f = lambda xs: pt.monomial_eval(lam, xs)
        return oracle_integrate(rule.family, rule.n, f, cfg, rational_poles=poles)

    ones = lambda xs: np.ones_like(xs[0])
    mass_rule = (
        integrate_rational_bs(rule, ones) if is_bs else integrate_symmetric(rule, ones)
    )
    mass_oracle = oracle_integrate(rule.family, rule.n, ones, cfg, rational_poles=poles)
    cfg2 = OracleConfig(
        points_per_axis=2 * cfg.points_per_axis,
        reference_kind=cfg.reference_kind,
        mc_samples=cfg.mc_samples,
        seed=cfg.seed,
    )
    mass_oracle2 = oracle_integrate(rule.family, rule.n, ones, cfg2, rational_poles=poles)
    report.add(
        "oracle_self_consistency",
        abs(mass_oracle - mass_oracle2) / max(1.0, abs(mass_oracle)),
        1e-10,
    )

    worst = 0.0
    for lam in pt.enumerate_alcove(2 * rule.m + 1, rule.n):
        err = relative_error(rule_value(lam), oracle_value(lam), mass_oracle)
        worst = max(worst, err)
    report.add("monomial_exactness", worst, 1e-8)

    probe = (2 * rule.m + 2,) + (0,) * (rule.n - 1)
    probe_err = relative_error(rule_value(probe), oracle_value(probe), mass_oracle)
    report.add("degree_overflow_probe_error_recorded", probe_err, math.inf)
    return report
