"""Spectra of GU frames after removing elements.

Removing any single element of a GU frame leaves a vector set whose
frame-operator eigenvalues do not depend on which element was removed;
the same holds for removing a group translate of a fixed index set.
For a tight unit-generator frame the pruned spectrum is known exactly:
one eigenvalue n/m - 1 and m - 1 eigenvalues n/m.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import abelian
from .errors import ValidationError
from .frames import frame_operator
from .gu import GUFrame, synthesize

__all__ = [
    "prune_one_spectrum",
    "prune_invariance_check",
    "pruned_tight_spectrum",
    "prune_coset_spectrum",
    "PruneInvarianceReport",
    "CosetPruneResult",
]


def _descending_eigenvalues(s: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(0.5 * (s + s.conj().T))[::-1].copy()


def prune_one_spectrum(g: GUFrame, j: int) -> np.ndarray:
    """Eigenvalues (descending) of S minus the rank-one term of column j."""
    if not 0 <= j < g.n:
        raise ValidationError(f"element index {j} out of range for n={g.n}")
    phi = synthesize(g).phi
    s = frame_operator(synthesize(g))
    col = phi[:, j]
    return _descending_eigenvalues(s - np.outer(col, col.conj()))


@dataclass(frozen=True)
class PruneInvarianceReport:
    """Common pruned spectrum, worst spread across removal choices, bounds."""

    spectrum: np.ndarray
    deviation: float
    frame_bound_ratio: float | None
    is_frame: bool


def prune_invariance_check(g: GUFrame) -> PruneInvarianceReport:
    """Sweep all single removals and measure how far the spectra spread.

    The reported spectrum is that of S - phi phi* with phi the generator
    (removal of the identity element); the deviation is the largest
    componentwise spread over all n removals.
    """
    phi = synthesize(g).phi
    s = frame_operator(synthesize(g))
    spectra = np.empty((g.n, g.m))
    for j in range(g.n):
        col = phi[:, j]
        spectra[j] = _descending_eigenvalues(s - np.outer(col, col.conj()))
    deviation = float(np.max(spectra.max(axis=0) - spectra.min(axis=0)))
    common = spectra[0]
    top = float(common[0])
    bottom = float(common[-1])
    is_frame = top > 0 and bottom > g.rank_tol * top
    ratio = top / bottom if is_frame else None
    return PruneInvarianceReport(common, deviation, ratio, is_frame)


def pruned_tight_spectrum(n: int, m: int) -> np.ndarray:
    """Closed-form pruned spectrum of a tight unit-generator GU frame.

    Descending: n/m with multiplicity m - 1, then n/m - 1. The pruned
    frame-bound ratio is therefore 1 / (1 - m/n).
    """
    n = int(n)
    m = int(m)
    if m < 1 or n < m:
        raise ValidationError(f"need n >= m >= 1, got n={n}, m={m}")
    return np.array([n / m] * (m - 1) + [n / m - 1.0])


@dataclass(frozen=True)
class CosetPruneResult:
    """Spectrum after removing a group translate of an index set."""

    eigenvalues: np.ndarray
    is_frame: bool


def prune_coset_spectrum(g: GUFrame, indices, k: int) -> CosetPruneResult:
    """Eigenvalues of S after removing the translate by element k.

    The removed set is {index of q_k + q_j : j in indices}; the spectrum
    is independent of k. A removal that destroys the spanning property
    is flagged rather than raised, since the eigenvalues remain well
    defined.
    """
    if not 0 <= k < g.n:
        raise ValidationError(f"translate index {k} out of range for n={g.n}")
    idx = sorted({int(j) for j in indices})
    if any(not 0 <= j < g.n for j in idx):
        raise ValidationError(f"removal indices {idx} out of range for n={g.n}")
    table = abelian.addition_table(g.rep.spec)
    removed = sorted({int(table[k, j]) for j in idx})
    phi = synthesize(g).phi
    s = frame_operator(synthesize(g))
    sub = phi[:, removed]
    lam = _descending_eigenvalues(s - sub @ sub.conj().T)
    top = float(lam[0]) if lam.size else 0.0
    is_frame = top > 0 and float(lam[-1]) > g.rank_tol * top
    return CosetPruneResult(lam, is_frame)
