"""Euclidean distance spectrum of GU frames and fixed-point-free groups.

For a unit-norm generator the squared distances from the generator to
the orbit are d(i) = 2 (1 - Re a_i), with a_i the first Gram row; every
other row of pairwise distances is a permutation of d. A cyclic group
of diagonal unitaries diag(exp(2 pi i u_k / n)) with every u_k coprime
to n has no non-identity element with eigenvalue 1, so d(i) > 0 for
i != 0 no matter which generator is used.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .abelian import GroupSpec
from .errors import ValidationError
from .gu import GUFrame, UnitaryRep, synthesize

__all__ = [
    "distance_profile",
    "is_fixed_point_free",
    "FixedPointCheck",
    "cyclic_fpf_rep",
    "totient",
    "min_distance_search",
    "MinDistanceResult",
]

_SEARCH_GUARD = 10 ** 6


def distance_profile(g: GUFrame) -> np.ndarray:
    """Squared distances d(i) = |phi - phi_i|^2 for a unit-norm generator.

    A non-unit generator is normalized first, with a warning.
    """
    norm = float(np.linalg.norm(g.generator))
    if norm == 0:
        raise ValidationError("zero generator has no distance profile")
    if abs(norm - 1.0) > g.tol:
        warnings.warn(
            f"generator norm {norm:.6g} != 1; normalizing for the distance profile",
            stacklevel=2,
        )
    phi = synthesize(g).phi / norm
    a = phi[:, 0].conj() @ phi
    d = 2.0 * (1.0 - a.real)
    d[d < 0] = 0.0
    return d


@dataclass(frozen=True)
class FixedPointCheck:
    """Decision plus the first offending element, if any."""

    is_fixed_point_free: bool
    witness: int | None
    min_singular_value: float

    def __bool__(self) -> bool:
        return self.is_fixed_point_free


def is_fixed_point_free(rep: UnitaryRep, tol: float = 1e-9) -> FixedPointCheck:
    """True when no non-identity matrix has an eigenvalue equal to 1.

    Tested through the smallest singular value of I - U_i, which is
    numerically stable where a determinant is not.
    """
    eye = np.eye(rep.dim)
    worst = np.inf
    for i in range(1, rep.order):
        smin = float(np.linalg.svd(eye - rep.matrices[i], compute_uv=False)[-1])
        if smin <= tol:
            return FixedPointCheck(False, i, smin)
        worst = min(worst, smin)
    return FixedPointCheck(True, None, worst if rep.order > 1 else np.inf)


def cyclic_fpf_rep(n: int, u) -> UnitaryRep:
    """Cyclic rep generated by diag(exp(2 pi i u_k / n)), u_k coprime to n."""
    n = int(n)
    if n < 1:
        raise ValidationError(f"group order must be >= 1, got {n}")
    u = [int(x) for x in u]
    if not u:
        raise ValidationError("need at least one exponent")
    for k, uk in enumerate(u):
        if math.gcd(uk, n) != 1:
            raise ValidationError(
                f"exponent u[{k}] = {uk} is not coprime to {n}"
            )
    angles = 2.0 * np.pi * np.asarray(u, dtype=float) / n
    mats = [np.diag(np.exp(1j * j * angles)) for j in range(n)]
    return UnitaryRep(GroupSpec((n,)), mats)


def totient(n: int) -> int:
    """Count of 1 <= k < n coprime to n, with totient(1) = 1."""
    n = int(n)
    if n < 1:
        raise ValidationError(f"totient is defined for n >= 1, got {n}")
    if n == 1:
        return 1
    return sum(1 for k in range(1, n) if math.gcd(k, n) == 1)


@dataclass(frozen=True)
class MinDistanceResult:
    u: tuple[int, ...]
    d_min: float


def min_distance_search(n: int, m: int, candidates=None) -> MinDistanceResult:
    """Exponents maximizing the worst-case distance of a cyclic rep.

    Evaluates d over the generator (1, ..., 1)/sqrt(m) for every exponent
    tuple with entries coprime to n (or over ``candidates``) and returns
    the maximizer of min_{i != 0} d(i). Ties break to the first tuple in
    lexicographic (respectively supplied) order. Without candidates the
    search space totient(n)^m must stay at or below 10^6.
    """
    n = int(n)
    m = int(m)
    if n < 2:
        raise ValidationError(f"search needs group order >= 2, got {n}")
    if m < 1:
        raise ValidationError(f"need at least one exponent, got m={m}")
    if candidates is None:
        coprime = [k for k in range(1, n) if math.gcd(k, n) == 1]
        if len(coprime) ** m > _SEARCH_GUARD:
            raise ValidationError(
                f"search space totient({n})^{m} = {len(coprime) ** m} exceeds "
                f"{_SEARCH_GUARD}; supply an explicit candidate list"
            )
        cand = np.array(list(itertools.product(coprime, repeat=m)), dtype=int)
    else:
        cand = np.atleast_2d(np.asarray(list(candidates), dtype=int))
        if cand.shape[1] != m:
            raise ValidationError(
                f"candidates must be tuples of length {m}, got shape {cand.shape}"
            )
        for row in cand:
            for k, uk in enumerate(row):
                if math.gcd(int(uk), n) != 1:
                    raise ValidationError(
                        f"candidate exponent u[{k}] = {uk} is not coprime to {n}"
                    )
    worst = np.full(cand.shape[0], np.inf)
    for j in range(1, n):
        a = np.exp(2j * np.pi * j / n * cand).mean(axis=1)
        worst = np.minimum(worst, 2.0 * (1.0 - a.real))
    # ties within roundoff resolve to the first candidate in order
    best = int(np.flatnonzero(worst >= np.max(worst) - 1e-12)[0])
    return MinDistanceResult(tuple(int(x) for x in cand[best]), float(worst[best]))
