"""Univariate orthonormal families and their Gauss quadrature rules.

Each family exposes orthonormal evaluation, roots, and Christoffel weights
behind one interface, so the multivariate cubature builder never needs to
know which weight function it is working with.

The classical families (Hermite, Laguerre, Jacobi) are evaluated through
the orthonormal three-term recurrence; the recurrence coefficients are the
standard closed forms, hardcoded per family.  Node computation is Newton's
method bracketed by interlacing: the roots of degree l are located between
consecutive roots of degree l-1, computed recursively from degree 1.
"""
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import NumericFailureError
from .rootfind import newton_bracketed

__all__ = [
    "OrthoFamily",
    "Hermite",
    "Laguerre",
    "Jacobi",
    "QuadratureRule1D",
    "family_from_descriptor",
]

_ROOT_XTOL = 1e-14
_MASS_RTOL = 1e-8


class OrthoFamily(ABC):
    """Common interface of the univariate orthonormal families.

    ``variable`` is "x" for families evaluated directly on their support and
    "xi" for the trigonometric Bernstein-Szego family (working variable
    xi in (0, pi), with x = cos(xi)).
    """

    kind: str
    variable: str = "x"
    support: tuple[float, float]

    #: smallest degree with an explicit orthonormal formula
    min_degree: int = 0

    @abstractmethod
    def eval_orthonormal(self, l: int, t: float) -> float:
        """Value of the orthonormal polynomial p_l at t."""

    @abstractmethod
    def weight(self, t: float) -> float:
        """Orthogonality weight function at t."""

    @abstractmethod
    def total_mass(self) -> float:
        """Integral of the weight function over the support."""

    @abstractmethod
    def gauss_rule(self, degree: int) -> "QuadratureRule1D":
        """Gauss rule with ``degree`` nodes (roots of p_degree)."""

    def point_to_x(self, t):
        """Map a working-variable point to the polynomial variable x."""
        return t

    def eval_sequence(self, lmax: int, t: float) -> np.ndarray:
        """Values [p_0(t), ..., p_lmax(t)]."""
        return np.array(
            [self.eval_orthonormal(l, t) for l in range(lmax + 1)], dtype=float
        )

    @abstractmethod
    def descriptor(self) -> dict:
        """JSON-serializable construction parameters."""

    def _check_support(self, t: float) -> None:
        a, b = self.support
        if not (a <= t <= b):
            raise ValueError(f"point {t} outside support ({a}, {b}) of {self.kind}")


class _RecurrenceFamily(OrthoFamily):
    """Classical family evaluated via the orthonormal three-term recurrence.

    Subclasses supply the monic recurrence coefficients a_l, b_l (with b_0
    equal to the total mass of the weight); the orthonormal recurrence is
    then  c_{l+1} p_{l+1} = (x - a_l) p_l - c_l p_{l-1}  with c_l = sqrt(b_l).
    """

    def __init__(self) -> None:
        self._root_cache: dict[int, np.ndarray] = {}

    @abstractmethod
    def recurrence_ab(self, l: int) -> tuple[float, float]:
        """Monic coefficients (a_l, b_l); b_0 is the weight's total mass."""

    @abstractmethod
    def christoffel_weight(self, degree: int, x: float) -> float:
        """Closed-form Christoffel weight at a root x of p_degree."""

    def total_mass(self) -> float:
        return self.recurrence_ab(0)[1]

    def eval_orthonormal(self, l: int, t: float) -> float:
        if l < 0:
            raise ValueError(f"degree must be nonnegative, got {l}")
        self._check_support(t)
        return self._eval_raw(l, t)

    def _eval_raw(self, l: int, x: float) -> float:
        p_prev, p = 0.0, 1.0 / math.sqrt(self.recurrence_ab(0)[1])
        for k in range(l):
            a_k, _ = self.recurrence_ab(k)
            c_k = math.sqrt(self.recurrence_ab(k)[1]) if k > 0 else 0.0
            c_k1 = math.sqrt(self.recurrence_ab(k + 1)[1])
            p_prev, p = p, ((x - a_k) * p - c_k * p_prev) / c_k1
        return p

    def eval_with_derivative(self, l: int, x: float) -> tuple[float, float]:
        p_prev, p = 0.0, 1.0 / math.sqrt(self.recurrence_ab(0)[1])
        d_prev, d = 0.0, 0.0
        for k in range(l):
            a_k, _ = self.recurrence_ab(k)
            c_k = math.sqrt(self.recurrence_ab(k)[1]) if k > 0 else 0.0
            c_k1 = math.sqrt(self.recurrence_ab(k + 1)[1])
            p_new = ((x - a_k) * p - c_k * p_prev) / c_k1
            d_new = (p + (x - a_k) * d - c_k * d_prev) / c_k1
            p_prev, p = p, p_new
            d_prev, d = d, d_new
        return p, d

    def eval_sequence(self, lmax: int, t: float) -> np.ndarray:
        self._check_support(t)
        out = np.empty(lmax + 1)
        p_prev, p = 0.0, 1.0 / math.sqrt(self.recurrence_ab(0)[1])
        out[0] = p
        for k in range(lmax):
            a_k, _ = self.recurrence_ab(k)
            c_k = math.sqrt(self.recurrence_ab(k)[1]) if k > 0 else 0.0
            c_k1 = math.sqrt(self.recurrence_ab(k + 1)[1])
            p_prev, p = p, ((t - a_k) * p - c_k * p_prev) / c_k1
            out[k + 1] = p
        return out

    # -- roots ---------------------------------------------------------

    def roots(self, degree: int) -> np.ndarray:
        """Sorted roots of p_degree, computed recursively by interlacing."""
        if degree < 1:
            raise ValueError(f"degree must be >= 1, got {degree}")
        if degree not in self._root_cache:
            self._root_cache[degree] = self._compute_roots(degree)
        return self._root_cache[degree]

    def _compute_roots(self, degree: int) -> np.ndarray:
        if degree == 1:
            return np.array([self.recurrence_ab(0)[0]])
        prev = self.roots(degree - 1)
        lo_end = self._outer_bracket(degree, prev, side=-1)
        hi_end = self._outer_bracket(degree, prev, side=+1)
        edges = np.concatenate(([lo_end], prev, [hi_end]))
        roots = np.empty(degree)
        for i in range(degree):
            try:
                roots[i] = newton_bracketed(
                    lambda x: self.eval_with_derivative(degree, x),
                    edges[i],
                    edges[i + 1],
                    xtol=_ROOT_XTOL,
                    max_iter=100,
                    label=f"{self.kind} degree {degree} root {i}",
                )
            except NumericFailureError as exc:
                raise NumericFailureError(
                    f"root {i} of {self.kind} p_{degree} did not converge"
                ) from exc
        return roots

    def _outer_bracket(self, degree: int, prev: np.ndarray, side: int) -> float:
        a, b = self.support
        endpoint = b if side > 0 else a
        if math.isfinite(endpoint):
            return endpoint
        # March outward until the polynomial takes its asymptotic sign.
        # Just outside the extreme root of p_{degree-1} there is exactly one
        # root of p_degree left to pass.
        anchor = prev[-1] if side > 0 else prev[0]
        span = max(1.0, prev[-1] - prev[0])
        target_sign = 1.0 if side > 0 else (-1.0) ** degree
        step = span
        for _ in range(200):
            x = anchor + side * step
            if self._eval_raw(degree, x) * target_sign > 0.0:
                return x
            step *= 2.0
        raise NumericFailureError(
            f"could not bracket extreme root of {self.kind} p_{degree}"
        )

    def gauss_rule(self, degree: int) -> "QuadratureRule1D":
        if degree < 1:
            raise ValueError(f"degree must be >= 1, got {degree}")
        nodes = self.roots(degree)
        weights = np.array([self.christoffel_weight(degree, x) for x in nodes])
        rule = QuadratureRule1D(self, degree, nodes, weights, self.variable)
        rule.validate()
        return rule


class Hermite(_RecurrenceFamily):
    """Orthonormal Hermite family; weight exp(-x^2)/sqrt(pi) on the line."""

    kind = "hermite"
    support = (-math.inf, math.inf)

    def recurrence_ab(self, l: int) -> tuple[float, float]:
        return (0.0, 1.0 if l == 0 else 0.5 * l)

    def weight(self, t: float) -> float:
        return math.exp(-t * t) / math.sqrt(math.pi)

    def christoffel_weight(self, degree: int, x: float) -> float:
        return 1.0 / (degree * self._eval_raw(degree - 1, x) ** 2)

    def descriptor(self) -> dict:
        return {"kind": self.kind}

    def __repr__(self) -> str:
        return "Hermite()"


class Laguerre(_RecurrenceFamily):
    """Orthonormal Laguerre family; weight x^alpha exp(-x) on (0, inf)."""

    kind = "laguerre"
    support = (0.0, math.inf)

    # Validated parameter box; recurrence evaluation is scale-stabilized
    # within it, no log-domain fallback is provided.
    MAX_ALPHA = 50.0
    MAX_DEGREE = 64

    def __init__(self, alpha: float) -> None:
        super().__init__()
        if not (-1.0 < alpha <= self.MAX_ALPHA):
            raise ValueError(f"alpha must be in (-1, {self.MAX_ALPHA}], got {alpha}")
        self.alpha = float(alpha)

    def recurrence_ab(self, l: int) -> tuple[float, float]:
        a = 2.0 * l + 1.0 + self.alpha
        b = math.exp(math.lgamma(1.0 + self.alpha)) if l == 0 else l * (l + self.alpha)
        return (a, b)

    def weight(self, t: float) -> float:
        if t <= 0.0:
            raise ValueError(f"point {t} outside support (0, inf)")
        return t**self.alpha * math.exp(-t)

    def christoffel_weight(self, degree: int, x: float) -> float:
        shifted = Laguerre(self.alpha + 1.0)
        return 1.0 / (degree * x * shifted._eval_raw(degree - 1, x) ** 2)

    def gauss_rule(self, degree: int) -> "QuadratureRule1D":
        if degree > self.MAX_DEGREE:
            raise ValueError(f"degree {degree} exceeds supported {self.MAX_DEGREE}")
        return super().gauss_rule(degree)

    def descriptor(self) -> dict:
        return {"kind": self.kind, "alpha": self.alpha}

    def __repr__(self) -> str:
        return f"Laguerre(alpha={self.alpha})"


class Jacobi(_RecurrenceFamily):
    """Orthonormal Jacobi family; weight (1-x)^alpha (1+x)^beta on (-1, 1)."""

    kind = "jacobi"
    support = (-1.0, 1.0)

    def __init__(self, alpha: float, beta: float) -> None:
        super().__init__()
        if alpha <= -1.0 or beta <= -1.0:
            raise ValueError(f"alpha and beta must exceed -1, got {alpha}, {beta}")
        self.alpha = float(alpha)
        self.beta = float(beta)

    def recurrence_ab(self, l: int) -> tuple[float, float]:
        al, be = self.alpha, self.beta
        s = al + be
        if l == 0:
            a = (be - al) / (s + 2.0)
            b = math.exp(
                (s + 1.0) * math.log(2.0)
                + math.lgamma(al + 1.0)
                + math.lgamma(be + 1.0)
                - math.lgamma(s + 2.0)
            )
            return (a, b)
        a = (be * be - al * al) / ((2.0 * l + s) * (2.0 * l + s + 2.0))
        if l == 1:
            b = 4.0 * (al + 1.0) * (be + 1.0) / ((s + 2.0) ** 2 * (s + 3.0))
        else:
            b = (
                4.0
                * l
                * (l + al)
                * (l + be)
                * (l + s)
                / ((2.0 * l + s) ** 2 * (2.0 * l + s + 1.0) * (2.0 * l + s - 1.0))
            )
        return (a, b)

    def weight(self, t: float) -> float:
        if not (-1.0 < t < 1.0):
            raise ValueError(f"point {t} outside support (-1, 1)")
        return (1.0 - t) ** self.alpha * (1.0 + t) ** self.beta

    def christoffel_weight(self, degree: int, x: float) -> float:
        al, be = self.alpha, self.beta
        m = degree - 1
        shifted = Jacobi(al + 1.0, be + 1.0)
        num = 2.0 * m + 3.0 + al + be
        den = (
            (m + 1.0)
            * (m + 2.0 + al + be)
            * (1.0 - x * x)
            * shifted._eval_raw(m, x) ** 2
        )
        return num / den

    def descriptor(self) -> dict:
        return {"kind": self.kind, "alpha": self.alpha, "beta": self.beta}

    def __repr__(self) -> str:
        return f"Jacobi(alpha={self.alpha}, beta={self.beta})"


@dataclass
class QuadratureRule1D:
    """Nodes and Christoffel weights of a univariate Gauss rule."""

    family: OrthoFamily
    degree: int
    nodes: np.ndarray
    weights: np.ndarray
    variable: str = "x"
    metadata: dict = field(default_factory=dict)

    def validate(self) -> None:
        if len(self.nodes) != self.degree or len(self.weights) != self.degree:
            raise ValueError("node/weight count does not match degree")
        if not np.all(np.isfinite(self.nodes)):
            raise ValueError("nodes must be finite")
        if not np.all(np.diff(self.nodes) > 0):
            raise ValueError("nodes must be strictly increasing")
        a, b = (0.0, math.pi) if self.variable == "xi" else self.family.support
        if not np.all((self.nodes > a) & (self.nodes < b)):
            raise ValueError("nodes must be strictly interior to the support")
        if not np.all(self.weights > 0):
            raise ValueError("weights must be strictly positive")
        mass = self.family.total_mass()
        if abs(self.weights.sum() - mass) > _MASS_RTOL * max(1.0, abs(mass)):
            raise ValueError(
                f"weight sum {self.weights.sum()} does not match mass {mass}"
            )

    def apply(self, f: Callable[[float], float]) -> float:
        return float(sum(w * f(x) for x, w in zip(self.nodes, self.weights)))

    def to_jsonable(self) -> dict:
        return {
            "family": self.family.descriptor(),
            "degree": self.degree,
            "variable": self.variable,
            "nodes": [float(x) for x in self.nodes],
            "weights": [float(w) for w in self.weights],
        }


def quadrature_apply(rule: QuadratureRule1D, f: Callable[[float], float]) -> float:
    return rule.apply(f)


def family_from_descriptor(desc: dict) -> OrthoFamily:
    """Reconstruct a family from its JSON descriptor."""
    kind = desc["kind"]
    if kind == "hermite":
        return Hermite()
    if kind == "laguerre":
        return Laguerre(desc["alpha"])
    if kind == "jacobi":
        return Jacobi(desc["alpha"], desc["beta"])
    if kind == "bernstein_szego":
        from .bernstein_szego import BernsteinSzego, BSParams

        return BernsteinSzego(BSParams.from_jsonable(desc))
    raise ValueError(f"unknown family kind {kind!r}")
