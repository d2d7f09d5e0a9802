"""Generalized Schur polynomials and multivariate cubature rules.

The n-variable rule is assembled from one univariate Gauss rule of degree
m+n: nodes are tuples of distinct univariate roots indexed by partitions in
the alcove, and weights are squared-Vandermonde products of the univariate
Christoffel weights.  For the Bernstein-Szego family the rule instead
stores the reciprocal product of the h-densities per node; the circular
Jacobi density is applied at integration time.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import partitions as pt
from .bernstein_szego import BernsteinSzego, _c_raw, h_func
from .errors import IllConditionedInputError
from .orthopoly import OrthoFamily, family_from_descriptor

__all__ = [
    "SchurEvaluator",
    "CubatureRule",
    "build_rule",
    "ensemble_density",
    "integrate_symmetric",
    "integrate_rational_bs",
    "full_discrete_weights",
    "vandermonde",
]

_MIN_GAP = 1e-8
_MAX_N = 12


def vandermonde(x: Sequence[float]) -> float:
    """prod_{j<k} (x_j - x_k)."""
    n = len(x)
    v = 1.0
    for j in range(n):
        for k in range(j + 1, n):
            v *= x[j] - x[k]
    return v


class SchurEvaluator:
    """Evaluates P_lam as a ratio of a p-value determinant to the Vandermonde.

    Coordinates are given in the family's working variable (x, or xi for
    Bernstein-Szego, where the Vandermonde runs over cos(xi)).
    """

    def __init__(self, family: OrthoFamily, n: int) -> None:
        if n < 1 or n > _MAX_N:
            raise ValueError(f"n must be in [1, {_MAX_N}], got {n}")
        self.family = family
        self.n = n

    def __call__(self, lam: Sequence[int], t: Sequence[float]) -> float:
        lam = pt.as_partition(lam)
        n = self.n
        if len(lam) != n or len(t) != n:
            raise ValueError(f"expected {n} parts and coordinates")
        x = np.asarray([self.family.point_to_x(tk) for tk in t], dtype=float)
        gap = min(
            abs(x[j] - x[k]) for j in range(n) for k in range(j + 1, n)
        ) if n > 1 else math.inf
        if gap < _MIN_GAP:
            raise IllConditionedInputError(
                f"coordinate gap {gap} below {_MIN_GAP}; Vandermonde division unstable"
            )
        mat = np.empty((n, n))
        for j in range(n):
            deg = lam[j] + n - 1 - j
            for k in range(n):
                mat[j, k] = self.family.eval_orthonormal(deg, t[k])
        if n == 1:
            return float(mat[0, 0])
        return float(np.linalg.det(mat) / vandermonde(x))


@dataclass
class CubatureRule:
    """Node matrix over the alcove with per-node weights.

    ``weight_convention`` is "full" when weights carry the complete discrete
    mass (classical families) and "inverse_H" when they store the
    reciprocal h-density product (Bernstein-Szego; the circular Jacobi
    factor is applied by the integrator).
    """

    family: OrthoFamily
    m: int
    n: int
    labels: list[tuple[int, ...]]
    nodes: np.ndarray
    weights: np.ndarray
    weight_convention: str = "full"
    variable: str = "x"
    metadata: dict = field(default_factory=dict)

    def validate(self) -> None:
        count = pt.alcove_size(self.m, self.n)
        if not (len(self.labels) == len(self.nodes) == len(self.weights) == count):
            raise ValueError(f"rule must have exactly {count} nodes")
        if self.nodes.shape != (count, self.n):
            raise ValueError("node matrix has wrong shape")
        if not np.all(self.weights > 0):
            raise ValueError("weights must be strictly positive")
        if self.n > 1 and not np.all(np.diff(self.nodes, axis=1) < 0):
            raise ValueError("node coordinates must be strictly decreasing")

    def to_jsonable(self) -> dict:
        return {
            "family": self.family.descriptor(),
            "m": self.m,
            "n": self.n,
            "labels": [list(lam) for lam in self.labels],
            "nodes": [[float(v) for v in row] for row in self.nodes],
            "weights": [float(w) for w in self.weights],
            "weight_convention": self.weight_convention,
            "variable": self.variable,
        }

    @classmethod
    def from_jsonable(cls, data: dict) -> "CubatureRule":
        return cls(
            family=family_from_descriptor(data["family"]),
            m=data["m"],
            n=data["n"],
            labels=[tuple(lam) for lam in data["labels"]],
            nodes=np.array(data["nodes"], dtype=float),
            weights=np.array(data["weights"], dtype=float),
            weight_convention=data["weight_convention"],
            variable=data["variable"],
        )


def build_rule(family: OrthoFamily, m: int, n: int) -> CubatureRule:
    """Assemble the Gaussian cubature rule over the (m, n) alcove."""
    if n < 1 or n > _MAX_N:
        raise ValueError(f"n must be in [1, {_MAX_N}], got {n}")
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    is_bs = isinstance(family, BernsteinSzego)
    if is_bs:
        p = family.params
        if p.d > 2 * (m + n) + p.eps_plus + p.eps_minus:
            raise ValueError(
                f"pole count d={p.d} exceeds 2(m+n)+eps bound "
                f"{2 * (m + n) + p.eps_plus + p.eps_minus}"
            )

    rule1d = family.gauss_rule(m + n)
    labels = pt.enumerate_alcove(m, n)
    nodes = np.empty((len(labels), n))
    weights = np.empty(len(labels))
    for i, lam in enumerate(labels):
        idx = [lam[j] + n - 1 - j for j in range(n)]
        node = rule1d.nodes[idx]
        nodes[i] = node
        if is_bs:
            weights[i] = 1.0 / math.prod(
                h_func(family.params, m + n, t) for t in node
            )
        else:
            weights[i] = vandermonde(node) ** 2 * math.prod(rule1d.weights[idx])

    rule = CubatureRule(
        family=family,
        m=m,
        n=n,
        labels=labels,
        nodes=nodes,
        weights=weights,
        weight_convention="inverse_H" if is_bs else "full",
        variable=family.variable,
        metadata={"univariate_degree": m + n},
    )
    rule.validate()
    return rule


def ensemble_density(family: OrthoFamily, t: Sequence[float]) -> float:
    """Multivariate density at one point.

    Classical families: squared Vandermonde times the product of univariate
    weights.  Bernstein-Szego: the circular Jacobi density in xi (the
    rational pole factors belong to the integrand, not the density).
    """
    if isinstance(family, BernsteinSzego):
        return _circular_jacobi_density(family.params, t)
    v = vandermonde(t)
    return v * v * math.prod(family.weight(tk) for tk in t)


def _circular_jacobi_density(params, xi: Sequence[float]) -> float:
    cosx = [math.cos(t) for t in xi]
    dens = 1.0
    for c in cosx:
        dens *= (
            2.0 ** (params.eps_plus + params.eps_minus)
            * (1.0 + params.eps_plus * c)
            * (1.0 - params.eps_minus * c)
        )
    for j in range(len(cosx)):
        for k in range(j + 1, len(cosx)):
            dens *= (cosx[j] - cosx[k]) ** 2
    return dens


def integrate_symmetric(rule: CubatureRule, f: Callable) -> float:
    """Weighted node sum; exact for symmetric polynomials in P^(2m+1, n)."""
    if rule.weight_convention != "full":
        raise ValueError(
            "rule stores inverse_H weights; use integrate_rational_bs"
        )
    return float(sum(w * f(node) for node, w in zip(rule.nodes, rule.weights)))


def integrate_rational_bs(rule: CubatureRule, f: Callable) -> float:
    """Rational cubature against the circular Jacobi distribution.

    ``f`` receives the cosine coordinates; it is divided by the pole
    factors prod_{r,j} (1 + 2 a_r cos(xi_j) + a_r^2) to form the rational
    integrand, matching (1/(2 pi)^n n!) times the integral over (0, pi)^n.
    """
    if not isinstance(rule.family, BernsteinSzego):
        raise ValueError("rule family is not Bernstein-Szego")
    if rule.weight_convention != "inverse_H":
        raise ValueError("expected inverse_H weight convention")
    params = rule.family.params
    total = 0.0
    for node, w in zip(rule.nodes, rule.weights):
        cosx = np.cos(node)
        denom = complex(1.0)
        for a in params.poles:
            for c in cosx:
                denom *= 1.0 + 2.0 * a * c + a * a
        r_val = f(cosx) / denom.real
        total += r_val * _circular_jacobi_density(params, node) * w
    return float(total)


def full_discrete_weights(rule: CubatureRule) -> np.ndarray:
    """Discrete orthogonality weights W_lamhat, whatever the storage convention."""
    if rule.weight_convention == "full":
        return rule.weights
    params = rule.family.params
    out = np.empty(len(rule.weights))
    for i, (node, w) in enumerate(zip(rule.nodes, rule.weights)):
        cmod2 = math.prod(abs(_c_raw(params, t)) ** 2 for t in node)
        v = vandermonde(np.cos(node))
        out[i] = v * v * w / cmod2
    return out
