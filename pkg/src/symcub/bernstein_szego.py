"""Bernstein-Szego orthonormal family on (0, pi) in cos(xi).

The weight is a Chebyshev-type weight divided by a positive trigonometric
polynomial whose zeros are parameterized by poles a_r inside the unit disc.
Above the threshold degree the polynomials have an explicit two-term
exponential formula; their roots solve an elementary transcendental
equation with proven per-root brackets, and the Christoffel weights have a
closed form in terms of the same data.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import NumericFailureError, UnsupportedDegreeError
from .orthopoly import OrthoFamily, QuadratureRule1D
from .rootfind import newton_bracketed

__all__ = [
    "BSParams",
    "BSRootSet",
    "BernsteinSzego",
    "c_func",
    "bs_weight",
    "v_a",
    "v_a_prime",
    "bs_eval",
    "bs_roots",
    "h_func",
    "bs_christoffel",
    "chebyshev_roots",
    "leading_coeff",
    "root_bracket",
    "bethe_residual",
]

_CONJ_TOL = 1e-12
_IMAG_TOL = 1e-12
_ROOT_FTOL = 1e-12


@dataclass(frozen=True)
class BSParams:
    """Parameter set: endpoint exponents eps_+/eps_- and poles a_r.

    Poles must satisfy 0 < |a_r| < 1 and non-real poles must occur in
    conjugate pairs.  ``allow_zero_poles`` admits a_r = 0 (a unit factor,
    analytically harmless) so that Chebyshev degenerations can be tested
    without special-casing.
    """

    eps_plus: int
    eps_minus: int
    poles: tuple[complex, ...] = ()
    allow_zero_poles: bool = False

    def __post_init__(self) -> None:
        if self.eps_plus not in (0, 1) or self.eps_minus not in (0, 1):
            raise ValueError(
                f"eps parameters must be 0 or 1, got ({self.eps_plus}, {self.eps_minus})"
            )
        object.__setattr__(self, "poles", tuple(complex(a) for a in self.poles))
        for a in self.poles:
            if abs(a) >= 1.0:
                raise ValueError(f"pole {a} must lie strictly inside the unit disc")
            if a == 0 and not self.allow_zero_poles:
                raise ValueError("zero poles require allow_zero_poles=True")
        self._group_poles()  # validates conjugate pairing

    @property
    def d(self) -> int:
        return len(self.poles)

    @property
    def d_eps(self) -> float:
        return 0.5 * (self.d - self.eps_plus - self.eps_minus)

    @property
    def min_degree(self) -> int:
        """Smallest integer degree with an explicit formula."""
        return max(0, math.ceil(self.d_eps))

    @property
    def kappa_plus(self) -> float:
        return 0.5 * sum((1.0 - abs(a)) / (1.0 + abs(a)) for a in self.poles)

    @property
    def kappa_minus(self) -> float:
        return 0.5 * sum((1.0 + abs(a)) / (1.0 - abs(a)) for a in self.poles)

    def _group_poles(self) -> list[tuple[str, complex]]:
        """Split poles into real ones and one representative per conjugate pair."""
        groups: list[tuple[str, complex]] = []
        rem = list(self.poles)
        while rem:
            a = rem.pop(0)
            if abs(a.imag) <= _CONJ_TOL:
                groups.append(("real", complex(a.real)))
                continue
            partner = None
            for j, b in enumerate(rem):
                if abs(b - a.conjugate()) <= _CONJ_TOL:
                    partner = j
                    break
            if partner is None:
                raise ValueError(f"pole {a} has no conjugate partner")
            rem.pop(partner)
            groups.append(("pair", a))
        return groups

    @property
    def pole_groups(self) -> list[tuple[str, complex]]:
        return self._group_poles()

    def pole_product(self) -> float:
        prod = complex(1.0)
        for a in self.poles:
            prod *= a
        if abs(prod.imag) > _CONJ_TOL * (1.0 + abs(prod)):
            raise NumericFailureError(f"pole product {prod} is not real")
        return prod.real

    def to_jsonable(self) -> dict:
        return {
            "kind": "bernstein_szego",
            "eps_plus": self.eps_plus,
            "eps_minus": self.eps_minus,
            "poles": [[a.real, a.imag] for a in self.poles],
            "allow_zero_poles": self.allow_zero_poles,
        }

    @classmethod
    def from_jsonable(cls, data: dict) -> "BSParams":
        return cls(
            eps_plus=data["eps_plus"],
            eps_minus=data["eps_minus"],
            poles=tuple(complex(re, im) for re, im in data.get("poles", [])),
            allow_zero_poles=data.get("allow_zero_poles", False),
        )


@dataclass
class BSRootSet:
    """Roots of the degree-(m+1) polynomial, increasing in (0, pi)."""

    params: BSParams
    degree: int
    xi: np.ndarray


# -- the c-function and weight ------------------------------------------


def c_func(params: BSParams, xi: float) -> complex:
    """The factorized boundary function c(xi)."""
    _check_interior(params, xi)
    return _c_raw(params, xi)


def _c_raw(params: BSParams, xi: float) -> complex:
    z = cmath.exp(-1j * xi)
    val = complex(1.0)
    if params.eps_plus:
        val /= 1.0 + z
    if params.eps_minus:
        val /= 1.0 - z
    for a in params.poles:
        val *= 1.0 + a * z
    return val


def bs_weight(params: BSParams, xi: float) -> float:
    """Weight function 1/(2*pi*|c(xi)|^2) on (0, pi)."""
    c = c_func(params, xi)
    return 1.0 / (2.0 * math.pi * (c * c.conjugate()).real)


def _check_interior(params: BSParams, xi: float) -> None:
    if params.eps_plus + params.eps_minus > 0 and not (0.0 < xi < math.pi):
        raise ValueError(
            f"xi={xi} must be strictly inside (0, pi) for singular endpoint factors"
        )


# -- the v-functions -----------------------------------------------------


def _v_real(a: float, xi: float) -> float:
    """Arctan closed form for real |a|<1, continued across odd multiples of pi."""
    k = math.floor((xi + math.pi) / (2.0 * math.pi))
    base = xi - 2.0 * math.pi * k  # in [-pi, pi)
    if abs(abs(base) - math.pi) < 1e-15:
        return math.copysign(math.pi, base) + 2.0 * math.pi * k
    r = (1.0 - a) / (1.0 + a)
    return 2.0 * math.atan(r * math.tan(0.5 * base)) + 2.0 * math.pi * k


def v_a(a: complex, xi: float) -> float:
    """The phase integral v_a(xi).

    For real a this is the elementary arctan form.  For complex a the
    (complex) principal-branch value is replaced by the conjugate-pair
    average (v_a + v_abar)/2, which is what every downstream formula
    consumes: summing v_a over a conjugate-closed pole set then gives the
    correct real total.  The average is evaluated through the real form at
    |a| with the argument of a shifted into xi, which is branch-free.
    """
    a = complex(a)
    if abs(a) >= 1.0:
        raise ValueError(f"|a| must be < 1, got {a}")
    if abs(a.imag) <= _CONJ_TOL:
        return _v_real(a.real, xi)
    mod, arg = abs(a), cmath.phase(a)
    return 0.5 * (_v_real(mod, xi + arg) + _v_real(mod, xi - arg))


def v_a_prime(a: complex, xi: float) -> float:
    """Derivative of v_a; for complex a, the conjugate-pair average."""
    a = complex(a)
    if abs(a) >= 1.0:
        raise ValueError(f"|a| must be < 1, got {a}")
    val = (1.0 - a * a) / (1.0 + 2.0 * a * math.cos(xi) + a * a)
    return val.real


def _v_total(params: BSParams, xi: float) -> float:
    return sum(v_a(a, xi) for a in params.poles)


def _v_total_prime(params: BSParams, xi: float) -> float:
    return sum(v_a_prime(a, xi) for a in params.poles)


# -- explicit polynomials ------------------------------------------------


def delta_l(params: BSParams, l: int) -> float:
    """Normalization factor: differs from 1 only at the threshold degree."""
    if 2 * l == params.d - params.eps_plus - params.eps_minus:
        sign = -1.0 if params.eps_minus else 1.0
        return 1.0 / (1.0 + sign * params.pole_product())
    return 1.0


def leading_coeff(params: BSParams, l: int) -> float:
    """Leading coefficient of p_l as a polynomial in cos(xi)."""
    _check_degree(params, l)
    return 2.0**l / math.sqrt(delta_l(params, l))


def _check_degree(params: BSParams, l: int) -> None:
    if l < params.min_degree:
        raise UnsupportedDegreeError(
            f"degree {l} below explicit-formula threshold {params.min_degree} "
            f"(d_eps={params.d_eps})"
        )


def bs_eval(params: BSParams, l: int, xi: float) -> float:
    """Orthonormal polynomial p_l at x = cos(xi), via the explicit formula."""
    _check_degree(params, l)
    _check_interior(params, xi)
    phase = cmath.exp(1j * l * xi)
    val = _c_raw(params, xi) * phase + _c_raw(params, -xi) / phase
    val *= math.sqrt(delta_l(params, l))
    if abs(val.imag) > _IMAG_TOL * (1.0 + abs(val)):
        raise NumericFailureError(
            f"non-real value {val} for p_{l} at xi={xi}; conjugate symmetry broken"
        )
    return val.real


# -- roots ---------------------------------------------------------------


def root_bracket(params: BSParams, degree: int, lhat: int) -> tuple[float, float]:
    """Proven enclosure [lo, hi] for the (lhat+1)th root of p_degree."""
    num = math.pi * (lhat + 0.5 + 0.5 * params.eps_minus)
    base = degree - params.d_eps
    return (num / (base + params.kappa_minus), num / (base + params.kappa_plus))


def chebyshev_roots(params: BSParams, degree: int) -> np.ndarray:
    """Pole-free (d=0) closed-form roots; the Newton initial estimates."""
    lhat = np.arange(degree)
    return (
        math.pi
        * (lhat + 0.5 + 0.5 * params.eps_minus)
        / (degree + 0.5 * params.eps_plus + 0.5 * params.eps_minus)
    )


def _transcendental(params: BSParams, degree: int, lhat: int, xi: float):
    lhs = 2.0 * (degree - params.d_eps) * xi + _v_total(params, xi)
    rhs = math.pi * (2 * lhat + 1 + params.eps_minus)
    dlhs = 2.0 * (degree - params.d_eps) + _v_total_prime(params, xi)
    return lhs - rhs, dlhs


def bs_roots(params: BSParams, degree: int) -> BSRootSet:
    """All roots of p_degree, each solved inside its proven bracket."""
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    if degree < params.d_eps:
        raise UnsupportedDegreeError(
            f"degree {degree} below d_eps={params.d_eps}"
        )
    estimates = chebyshev_roots(params, degree)
    xi = np.empty(degree)
    for lhat in range(degree):
        lo, hi = root_bracket(params, degree, lhat)
        try:
            xi[lhat] = newton_bracketed(
                lambda t: _transcendental(params, degree, lhat, t),
                lo,
                hi,
                x0=float(estimates[lhat]),
                ftol=_ROOT_FTOL,
                max_iter=200,
                max_clamps=3,
                label=f"bs root lhat={lhat}",
            )
        except NumericFailureError as exc:
            raise NumericFailureError(
                f"Bernstein-Szego root lhat={lhat} of degree {degree} failed"
            ) from exc
    if not np.all(np.diff(xi) > 0):
        raise NumericFailureError("computed roots are not strictly increasing")
    return BSRootSet(params, degree, xi)


def bethe_residual(params: BSParams, degree: int, xi: float) -> float:
    """Modulus error of the exponentiated root equation; independent certificate."""
    lhs = cmath.exp(2j * (degree - params.d_eps) * xi)
    rhs = complex(-1.0 if params.eps_minus == 0 else 1.0)
    z = cmath.exp(1j * xi)
    for a in params.poles:
        rhs *= (1.0 + a * z) / (z + a)
    return abs(lhs - rhs)


# -- Christoffel weights -------------------------------------------------


def h_func(params: BSParams, degree: int, xi: float) -> float:
    """Reciprocal-weight density h^(degree)(xi); strictly positive."""
    if degree < params.d_eps:
        raise UnsupportedDegreeError(f"degree {degree} below d_eps={params.d_eps}")
    return 2.0 * (degree - params.d_eps) + _v_total_prime(params, xi)


def bs_christoffel(params: BSParams, degree: int) -> QuadratureRule1D:
    """Gauss rule in the xi-variable with closed-form Christoffel weights."""
    rootset = bs_roots(params, degree)
    weights = np.empty(degree)
    for i, xi in enumerate(rootset.xi):
        c = _c_raw(params, xi)
        weights[i] = 1.0 / ((c * c.conjugate()).real * h_func(params, degree, xi))
    rule = QuadratureRule1D(
        BernsteinSzego(params), degree, rootset.xi, weights, variable="xi"
    )
    rule.validate()
    return rule


class BernsteinSzego(OrthoFamily):
    """OrthoFamily adapter; the working variable is xi in (0, pi)."""

    kind = "bernstein_szego"
    variable = "xi"
    support = (0.0, math.pi)

    def __init__(self, params: BSParams) -> None:
        self.params = params
        self._mass: float | None = None

    @property
    def min_degree(self) -> int:
        return self.params.min_degree

    def eval_orthonormal(self, l: int, t: float) -> float:
        return bs_eval(self.params, l, t)

    def point_to_x(self, t):
        return np.cos(t)

    def weight(self, t: float) -> float:
        return bs_weight(self.params, t)

    def total_mass(self) -> float:
        if self._mass is None:
            val, err = quad(
                lambda t: bs_weight(self.params, t), 0.0, math.pi, limit=200
            )
            if err > 1e-10 * max(1.0, abs(val)):
                raise NumericFailureError(f"weight mass unreliable: {val} +/- {err}")
            self._mass = val
        return self._mass

    def gauss_rule(self, degree: int) -> QuadratureRule1D:
        return bs_christoffel(self.params, degree)

    def descriptor(self) -> dict:
        return self.params.to_jsonable()

    def __repr__(self) -> str:
        p = self.params
        return (
            f"BernsteinSzego(eps=({p.eps_plus},{p.eps_minus}), poles={list(p.poles)})"
        )
