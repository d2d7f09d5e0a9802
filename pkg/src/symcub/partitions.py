"""Partitions, dominance order, and symmetric monomials.

A partition is represented as a tuple of weakly decreasing nonnegative
integers of fixed length n.  Partitions label the symmetric monomial basis,
the generalized Schur polynomials, and the cubature nodes.
"""
from __future__ import annotations

from itertools import permutations
from math import comb
from typing import Iterable, Sequence

__all__ = [
    "as_partition",
    "enumerate_alcove",
    "alcove_size",
    "dominance_leq",
    "orbit",
    "monomial_eval",
    "elementary_symmetric",
]

# Parts and prefix sums stay exact in machine integers well past this cap.
_MAX_M_PLUS_N = 64


def as_partition(parts: Iterable[int]) -> tuple[int, ...]:
    """Validate and normalize a partition to a tuple of ints."""
    lam = tuple(int(p) for p in parts)
    if len(lam) == 0:
        raise ValueError("partition must have at least one part")
    if any(p < 0 for p in lam):
        raise ValueError(f"partition parts must be nonnegative: {lam}")
    if any(lam[j] < lam[j + 1] for j in range(len(lam) - 1)):
        raise ValueError(f"partition parts must be weakly decreasing: {lam}")
    return lam


def enumerate_alcove(m: int, n: int) -> list[tuple[int, ...]]:
    """All partitions with at most n parts, each part at most m.

    Returned in descending lexicographic order, so the list is canonical:
    rule files built from it are byte-identical across runs.  The length is
    always binomial(m+n, n).
    """
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if m + n > _MAX_M_PLUS_N:
        raise ValueError(f"m+n={m + n} exceeds supported range {_MAX_M_PLUS_N}")

    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], cap: int, remaining: int) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(cap, -1, -1):
            rec(prefix + (part,), part, remaining - 1)

    rec((), m, n)
    assert len(out) == comb(m + n, n)
    return out


def alcove_size(m: int, n: int) -> int:
    return comb(m + n, n)


def dominance_leq(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """Inhomogeneous dominance order: every prefix sum of lam-mu is >= 0."""
    if len(mu) != len(lam):
        raise ValueError(f"length mismatch: {len(mu)} vs {len(lam)}")
    acc = 0
    for a, b in zip(lam, mu):
        acc += a - b
        if acc < 0:
            return False
    return True


def orbit(lam: Sequence[int]) -> list[tuple[int, ...]]:
    """Distinct rearrangements of lam (the permutation-group orbit)."""
    return sorted(set(permutations(lam)), reverse=True)


def monomial_eval(lam: Sequence[int], x: Sequence):
    """Symmetric monomial M_lam(x): sum of x^mu over the orbit of lam.

    Each distinct rearrangement of lam contributes exactly once.  The
    coordinates may be scalars or numpy arrays (broadcasts elementwise).
    """
    if len(x) != len(lam):
        raise ValueError(f"length mismatch: {len(x)} vs {len(lam)}")
    total = None
    for mu in orbit(lam):
        term = None
        for xi, e in zip(x, mu):
            factor = xi**e
            term = factor if term is None else term * factor
        total = term if total is None else total + term
    return total


def elementary_symmetric(x: Sequence) -> list:
    """Elementary symmetric polynomials (E_1, ..., E_n) of the coordinates.

    Computed by incrementally multiplying out prod_j (t + x_j).
    """
    n = len(x)
    if n < 1:
        raise ValueError("need at least one coordinate")
    # e[k] holds E_k of the coordinates consumed so far; e[0] = 1.
    e = [1] + [0] * n
    for j, xj in enumerate(x, start=1):
        for k in range(j, 0, -1):
            e[k] = e[k] + xj * e[k - 1]
    return e[1:]
