"""Bracketed Newton iteration with bisection fallback."""
from __future__ import annotations

from typing import Callable

from .errors import NumericFailureError

__all__ = ["newton_bracketed"]


def newton_bracketed(
    f_df: Callable[[float], tuple[float, float]],
    lo: float,
    hi: float,
    x0: float | None = None,
    xtol: float = 1e-14,
    ftol: float | None = None,
    max_iter: int = 100,
    max_clamps: int = 3,
    label: str = "",
) -> float:
    """Find the root of f inside [lo, hi].

    ``f_df(x)`` returns (f(x), f'(x)).  The caller guarantees a sign change
    on the bracket.  Newton steps that leave the bracket are clamped back in;
    after ``max_clamps`` consecutive clamps the iteration switches to plain
    bisection on the current bracket.  Convergence requires
    |dx| <= xtol * max(1, |x|), and additionally |f| <= ftol when given.
    """
    if hi < lo:
        raise ValueError(f"empty bracket [{lo}, {hi}]")
    if hi - lo <= xtol * max(1.0, abs(hi)):
        return 0.5 * (lo + hi)

    flo, _ = f_df(lo)
    fhi, _ = f_df(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise NumericFailureError(
            f"no sign change on bracket [{lo}, {hi}]" + (f" ({label})" if label else "")
        )

    x = x0 if x0 is not None else 0.5 * (lo + hi)
    x = min(max(x, lo), hi)
    clamps = 0
    bisect_only = False

    for _ in range(max_iter):
        f, df = f_df(x)
        if f == 0.0 or (ftol is not None and abs(f) <= ftol):
            return x
        # Shrink the bracket around the sign change.
        if f * flo < 0.0:
            hi, fhi = x, f
        else:
            lo, flo = x, f
        if hi - lo <= xtol * max(1.0, abs(hi)):
            return x

        if not bisect_only and df != 0.0:
            step = f / df
            xn = x - step
            if xn <= lo or xn >= hi:
                xn = 0.5 * (lo + hi)
                clamps += 1
                if clamps >= max_clamps:
                    bisect_only = True
            else:
                clamps = 0
        else:
            xn = 0.5 * (lo + hi)

        if abs(xn - x) <= xtol * max(1.0, abs(xn)) and ftol is None:
            return xn
        x = xn

    if ftol is not None:
        f, _ = f_df(x)
        if abs(f) <= ftol:
            return x
    raise NumericFailureError(
        f"root search did not converge on [{lo}, {hi}]" + (f" ({label})" if label else "")
    )
