"""Dense linear-algebra kernels shared by the frame machinery.

Everything operates on plain complex ndarrays. Production code computes
inverse and inverse-square-root operators spectrally through
:func:`psd_fun`; the two series expansions (:func:`neumann_inverse`,
:func:`series_invsqrt`) are kept as independent cross-validation oracles
and are not used on any production path.

Rank decisions treat an eigenvalue or singular value as zero when it is
below ``rank_tol`` times the largest one (default 1e-10).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ValidationError

DEFAULT_TOL = 1e-9
DEFAULT_RANK_TOL = 1e-10

__all__ = [
    "DEFAULT_TOL",
    "DEFAULT_RANK_TOL",
    "HermEig",
    "SVDResult",
    "require_hermitian",
    "herm_eig",
    "psd_fun",
    "svd",
    "neumann_inverse",
    "series_invsqrt",
]


def _as_square(a, what: str) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"{what} must be a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError(f"{what} contains non-finite entries")
    return a


def require_hermitian(a, tol: float = DEFAULT_TOL, what: str = "matrix") -> np.ndarray:
    """Return ``a`` as a complex array after checking Hermitian symmetry."""
    a = _as_square(a, what)
    dev = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if dev > tol:
        raise ValidationError(f"{what} is not Hermitian (max deviation {dev:.3e})")
    return a


@dataclass(frozen=True)
class HermEig:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def herm_eig(a, tol: float = DEFAULT_TOL) -> HermEig:
    a = require_hermitian(a, tol)
    w, v = np.linalg.eigh(a)
    return HermEig(w[::-1].copy(), v[:, ::-1].copy())


def psd_fun(
    a,
    f: Callable[[float], float],
    rank_tol: float = DEFAULT_RANK_TOL,
    tol: float = DEFAULT_TOL,
) -> np.ndarray:
    """Apply a scalar function to a Hermitian PSD matrix on its range.

    Eigenvalues at or below ``rank_tol`` times the largest are treated as
    zero and mapped to zero, so ``f = 1/x`` yields the pseudoinverse and
    ``f = x**-0.5`` the pseudo inverse square root.
    """
    eig = herm_eig(a, tol)
    lam = eig.eigenvalues
    lmax = float(lam[0]) if lam.size else 0.0
    if lam.size and float(lam[-1]) < -max(tol, rank_tol * abs(lmax)):
        raise ValidationError(
            f"matrix is not positive semidefinite (min eigenvalue {lam[-1]:.3e})"
        )
    mapped = np.zeros_like(lam)
    if lmax > 0:
        keep = lam > rank_tol * lmax
        mapped[keep] = [f(float(x)) for x in lam[keep]]
    v = eig.eigenvectors
    out = (v * mapped) @ v.conj().T
    return 0.5 * (out + out.conj().T)


@dataclass(frozen=True)
class SVDResult:
    """Full SVD ``a = u @ diag(singular_values) @ v.conj().T`` (padded).

    ``u`` is m x m, ``v`` is n x n, singular values are non-negative and
    descending. The phase of each column of ``v`` is fixed so that its
    first nonzero entry is real non-negative, which makes repeated
    factorizations of the same matrix reproducible.
    """

    u: np.ndarray
    singular_values: np.ndarray
    v: np.ndarray

    def rank(self, rank_tol: float = DEFAULT_RANK_TOL) -> int:
        s = self.singular_values
        if s.size == 0 or s[0] <= 0:
            return 0
        return int(np.count_nonzero(s > rank_tol * s[0]))

    def reconstruct(self) -> np.ndarray:
        m = self.u.shape[0]
        n = self.v.shape[0]
        sig = np.zeros((m, n), dtype=complex)
        k = self.singular_values.size
        sig[np.arange(k), np.arange(k)] = self.singular_values
        return self.u @ sig @ self.v.conj().T


def _fix_column_phase(col: np.ndarray, floor: float = 1e-12) -> complex:
    idx = np.flatnonzero(np.abs(col) > floor)
    if idx.size == 0:
        return 1.0 + 0.0j
    z = col[idx[0]]
    return z / abs(z)


def svd(a) -> SVDResult:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValidationError(f"svd expects a matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("svd input contains non-finite entries")
    u, s, vh = np.linalg.svd(a, full_matrices=True)
    v = vh.conj().T.copy()
    u = u.copy()
    k = s.size
    for j in range(v.shape[1]):
        phase = _fix_column_phase(v[:, j])
        v[:, j] *= np.conj(phase)
        if j < k:
            u[:, j] *= np.conj(phase)
    for j in range(k, u.shape[1]):
        u[:, j] *= np.conj(_fix_column_phase(u[:, j]))
    return SVDResult(u, s, v)


def _series_setup(s, lower: float, upper: float, terms: int, tol: float):
    s = require_hermitian(s, tol)
    if lower <= 0:
        raise ValidationError(f"lower spectral bound must be positive, got {lower}")
    if upper < lower:
        raise ValidationError(f"bounds out of order: [{lower}, {upper}]")
    if terms < 0:
        raise ValidationError(f"terms must be >= 0, got {terms}")
    eye = np.eye(s.shape[0], dtype=complex)
    t = eye - (2.0 / (lower + upper)) * s
    return t, eye


def neumann_inverse(s, lower: float, upper: float, terms: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Partial Neumann sum for the inverse of a positive definite matrix.

    Returns (2/(lower+upper)) * sum_{l=0..terms} (I - 2 S/(lower+upper))^l.
    When the spectrum of S lies in [lower, upper] the tail after ``terms``
    is bounded in operator norm by rho**(terms+1)/lower with
    rho = (upper-lower)/(upper+lower).
    """
    t, eye = _series_setup(s, lower, upper, terms, tol)
    acc = eye.copy()
    for _ in range(terms):
        acc = eye + t @ acc
    return (2.0 / (lower + upper)) * acc


def series_invsqrt(s, lower: float, upper: float, terms: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Partial binomial series for the inverse square root.

    Returns sqrt(2/(lower+upper)) * sum_{l=0..terms} c_l (I - 2S/(lower+upper))^l
    with c_l = (2l)! / (2^{2l} (l!)^2), the Taylor coefficients of
    (1-x)^{-1/2}. Converges to the positive definite inverse square root
    when the spectrum of S lies in [lower, upper].
    """
    t, eye = _series_setup(s, lower, upper, terms, tol)
    coeff = np.empty(terms + 1)
    coeff[0] = 1.0
    for l in range(terms):
        coeff[l + 1] = coeff[l] * (2 * l + 1) / (2 * l + 2)
    acc = coeff[terms] * eye
    for l in range(terms - 1, -1, -1):
        acc = coeff[l] * eye + t @ acc
    return np.sqrt(2.0 / (lower + upper)) * acc
