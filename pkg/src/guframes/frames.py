"""Frame machinery for arbitrary spanning column sets.

A frame is an m x n complex matrix whose n >= m columns span C^m. The
frame operator S = Phi @ Phi* is Hermitian positive definite; its extreme
eigenvalues are the (tightest) frame bounds. Dual and canonical tight
frames are computed spectrally via :func:`guframes.matops.psd_fun`.
"""

from __future__ import annotations

import numpy as np

from . import matops
from .errors import ValidationError

__all__ = [
    "Frame",
    "frame_operator",
    "frame_bounds",
    "dual_frame",
    "canonical_tight",
    "expand",
    "reconstruct",
    "r_phi_mu",
]


class Frame:
    """An m x n complex matrix of frame vectors (columns) plus tolerances.

    Construction validates the spanning condition: the matrix must have
    at least as many columns as rows and full row rank (singular values
    above ``rank_tol`` times the largest).
    """

    __slots__ = ("phi", "tol", "rank_tol")

    def __init__(self, phi, tol: float = matops.DEFAULT_TOL,
                 rank_tol: float = matops.DEFAULT_RANK_TOL):
        phi = np.array(phi, dtype=complex)
        if phi.ndim != 2:
            raise ValidationError(f"frame matrix must be 2-D, got shape {phi.shape}")
        if not np.all(np.isfinite(phi)):
            raise ValidationError("frame matrix contains non-finite entries")
        m, n = phi.shape
        if m < 1:
            raise ValidationError("frame dimension must be at least 1")
        if n < m:
            raise ValidationError(
                f"{n} vectors cannot span a {m}-dimensional space"
            )
        sv = np.linalg.svd(phi, compute_uv=False)
        rank = int(np.count_nonzero(sv > rank_tol * sv[0])) if sv[0] > 0 else 0
        if rank < m:
            raise ValidationError(
                f"columns span only {rank} of {m} dimensions; not a frame"
            )
        phi.setflags(write=False)
        self.phi = phi
        self.tol = float(tol)
        self.rank_tol = float(rank_tol)

    @property
    def m(self) -> int:
        return self.phi.shape[0]

    @property
    def n(self) -> int:
        return self.phi.shape[1]

    def column(self, i: int) -> np.ndarray:
        if not 0 <= i < self.n:
            raise ValidationError(f"column index {i} out of range for n={self.n}")
        return self.phi[:, i]

    def gram(self) -> np.ndarray:
        """The n x n Gram matrix of pairwise inner products <phi_i, phi_j>."""
        return self.phi.conj().T @ self.phi

    def __repr__(self) -> str:
        return f"Frame(m={self.m}, n={self.n})"


def frame_operator(fr: Frame) -> np.ndarray:
    """S = Phi @ Phi*, Hermitian positive definite m x m."""
    s = fr.phi @ fr.phi.conj().T
    return 0.5 * (s + s.conj().T)


def frame_bounds(fr: Frame) -> tuple[float, float]:
    """Tightest frame bounds: extreme eigenvalues of the frame operator."""
    lam = matops.herm_eig(frame_operator(fr), tol=max(fr.tol, 1e-8)).eigenvalues
    return float(lam[-1]), float(lam[0])


def _s_inverse(fr: Frame) -> np.ndarray:
    return matops.psd_fun(frame_operator(fr), lambda x: 1.0 / x, rank_tol=fr.rank_tol)


def dual_frame(fr: Frame) -> Frame:
    """The frame of columns S^{-1} phi_i; satisfies Phi @ dual* = I."""
    return Frame(_s_inverse(fr) @ fr.phi, tol=fr.tol, rank_tol=fr.rank_tol)


def canonical_tight(fr: Frame) -> Frame:
    """The frame of columns S^{-1/2} phi_i, the nearest normalized tight frame."""
    s_isqrt = matops.psd_fun(frame_operator(fr), lambda x: x ** -0.5, rank_tol=fr.rank_tol)
    return Frame(s_isqrt @ fr.phi, tol=fr.tol, rank_tol=fr.rank_tol)


def expand(fr: Frame, x) -> np.ndarray:
    """Minimal l2-norm expansion coefficients a with Phi @ a = x.

    a_i = <dual_i, x>, i.e. a = Phi* S^{-1} x.
    """
    x = np.asarray(x, dtype=complex)
    if x.shape != (fr.m,):
        raise ValidationError(f"expected a length-{fr.m} vector, got shape {x.shape}")
    return fr.phi.conj().T @ (_s_inverse(fr) @ x)


def reconstruct(fr: Frame, coefficients) -> np.ndarray:
    coefficients = np.asarray(coefficients, dtype=complex)
    if coefficients.shape != (fr.n,):
        raise ValidationError(
            f"expected {fr.n} coefficients, got shape {coefficients.shape}"
        )
    return fr.phi @ coefficients


def r_phi_mu(fr: Frame, tight: Frame) -> float:
    """Sum of squared moduli of columnwise inner products <phi_i, mu_i>.

    ``tight`` must be a normalized tight frame (M @ M* = I within its
    tolerance) of the same shape as ``fr``.
    """
    if (fr.m, fr.n) != (tight.m, tight.n):
        raise ValidationError(
            f"shape mismatch: {fr.m}x{fr.n} vs {tight.m}x{tight.n}"
        )
    gram = tight.phi @ tight.phi.conj().T
    dev = float(np.max(np.abs(gram - np.eye(tight.m))))
    if dev > max(tight.tol, 1e-8):
        raise ValidationError(
            f"second frame is not normalized tight (|MM* - I| = {dev:.3e})"
        )
    inner = np.einsum("ij,ij->j", fr.phi.conj(), tight.phi)
    return float(np.sum(np.abs(inner) ** 2))
