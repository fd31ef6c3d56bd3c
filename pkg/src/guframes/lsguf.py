"""Least-squares construction of GU frames from arbitrary frames.

Given a frame F and a target inner-product sequence {a_j} over a group,
the goal is the GU frame closest to F in the least-squares sense

    E = sum_i |phi_i - f_i|^2 = Tr((Phi - F)*(Phi - F))

subject to Phi*Phi = beta^2 R, where R[q', q] = a(q - q') is the
group-structured target Gram. Writing R = F_t A F_t* with A the diagonal
of eigenvalue weights alpha_j = sqrt(n) a_hat_j (F_t the FT matrix), the
fixed-scale optimum is

    Phi_hat = beta0 * U V* Sigma F_t*,

with U, V the unitary factors of the SVD of F @ F_t @ Sigma* (the polar
direction of that matrix) and Sigma the rank-m selection of sqrt(alpha)
placed at its FT index. When F R F* is invertible this equals
beta0 * (F R F*)^{-1/2} F R. Optimizing the scale as well gives

    beta_hat = Re Tr(F* Phi_tilde) / Tr(R),

the vertex of the error, which equals Tr((F R F*)^{1/2}) / Tr(R) in the
invertible case.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import abelian, matops
from .abelian import GroupSpec
from .errors import NumericalError, ValidationError
from .frames import Frame

__all__ = [
    "TargetGram",
    "build_target_gram",
    "sc_lsguf",
    "sc_lsguf_closed_form",
    "c_lsguf",
    "naive_gu_projection",
    "ls_error",
]


@dataclass(frozen=True)
class TargetGram:
    """Group-structured target Gram: sequence, matrix, FT weights, support."""

    a: np.ndarray
    matrix: np.ndarray
    alpha: np.ndarray
    spec: GroupSpec
    index_set: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.index_set)

    @property
    def n(self) -> int:
        return self.spec.order

    def sigma(self) -> np.ndarray:
        """rank x n selection matrix with sqrt(alpha_h) at FT index h."""
        sig = np.zeros((self.rank, self.n), dtype=complex)
        for row, h in enumerate(self.index_set):
            sig[row, h] = np.sqrt(self.alpha[h])
        return sig


def build_target_gram(
    a,
    spec: GroupSpec,
    tol: float = matops.DEFAULT_TOL,
    rank_tol: float = matops.DEFAULT_RANK_TOL,
) -> TargetGram:
    """Assemble and validate the target Gram R[q', q] = a(q - q').

    The permutations filling the rows are the group translations, so R is
    FT-diagonalized by construction; Hermitian symmetry and non-negative
    FT weights are what need checking.
    """
    a = np.asarray(a, dtype=complex)
    n = spec.order
    if a.shape != (n,):
        raise ValidationError(
            f"target sequence must have length {n} for {spec}, got shape {a.shape}"
        )
    if not np.all(np.isfinite(a)):
        raise ValidationError("target sequence contains non-finite entries")
    # diff[q', q] = index of q - q', so row q' of R is the translate of a by q'
    table = abelian.addition_table(spec)
    neg = abelian.negation_table(spec)
    diff = table[neg, :]
    r = a[diff]
    herm_dev = float(np.max(np.abs(r - r.conj().T)))
    if herm_dev > tol:
        raise ValidationError(
            f"induced matrix is not Hermitian (max deviation {herm_dev:.3e}); "
            "the sequence must satisfy a(-q) = conj(a(q))"
        )
    r = 0.5 * (r + r.conj().T)
    alpha_c = np.sqrt(n) * (abelian.ft_matrix(spec) @ a)
    alpha = alpha_c.real.copy()
    scale = max(float(np.max(np.abs(alpha))), 1.0)
    low = int(np.argmin(alpha))
    if alpha[low] < -tol * scale:
        raise ValidationError(
            f"target is not positive semidefinite: eigenvalue {alpha[low]:.6e} "
            f"at FT index {low}"
        )
    alpha[alpha < 0] = 0.0
    amax = float(np.max(alpha))
    if amax <= 0:
        raise ValidationError("target Gram is zero")
    support = tuple(int(h) for h in np.flatnonzero(alpha > rank_tol * amax))
    return TargetGram(a=a, matrix=r, alpha=alpha, spec=spec, index_set=support)


def _require_compatible(fr: Frame, target: TargetGram) -> None:
    if fr.n != target.n:
        raise ValidationError(
            f"frame has {fr.n} columns but target group has order {target.n}"
        )
    if target.rank != fr.m:
        raise ValidationError(
            f"target rank {target.rank} does not match frame dimension {fr.m}"
        )


def sc_lsguf(fr: Frame, target: TargetGram, beta0: float) -> Frame:
    """Closest frame to ``fr`` with Gram exactly beta0^2 R (SVD form)."""
    if beta0 <= 0:
        raise ValidationError(f"scale must be positive, got {beta0}")
    _require_compatible(fr, target)
    sig = target.sigma()
    f_t = abelian.ft_matrix(target.spec)
    m_mat = fr.phi @ f_t @ sig.conj().T
    dec = matops.svd(m_mat)
    polar = dec.u @ dec.v.conj().T
    return Frame(beta0 * polar @ sig @ f_t.conj().T, tol=fr.tol, rank_tol=fr.rank_tol)


def sc_lsguf_closed_form(fr: Frame, target: TargetGram, beta0: float) -> Frame:
    """Closed form beta0 (F R F*)^{-1/2} F R; needs F R F* invertible."""
    if beta0 <= 0:
        raise ValidationError(f"scale must be positive, got {beta0}")
    _require_compatible(fr, target)
    frf = fr.phi @ target.matrix @ fr.phi.conj().T
    lam = matops.herm_eig(frf, tol=max(fr.tol, 1e-8)).eigenvalues
    if lam[0] <= 0 or lam[-1] <= fr.rank_tol * lam[0]:
        raise ValidationError(
            "F R F* is singular; the closed form does not apply"
        )
    inv_sqrt = matops.psd_fun(frf, lambda x: x ** -0.5, rank_tol=fr.rank_tol)
    return Frame(beta0 * inv_sqrt @ fr.phi @ target.matrix, tol=fr.tol,
                 rank_tol=fr.rank_tol)


def c_lsguf(fr: Frame, target: TargetGram) -> tuple[Frame, float]:
    """Optimal frame and scale under Gram = beta^2 R with beta free.

    Returns (frame, beta_hat) with beta_hat = Re Tr(F* Phi_tilde)/Tr(R),
    which makes the quadratic error in beta stationary at its minimum.
    """
    _require_compatible(fr, target)
    unit = sc_lsguf(fr, target, 1.0)
    trace_r = float(np.trace(target.matrix).real)
    beta = float(np.trace(fr.phi.conj().T @ unit.phi).real) / trace_r
    if beta <= 0:
        raise NumericalError(
            f"optimal scale {beta:.3e} is not positive; input is degenerately "
            "anti-aligned with the target"
        )
    return Frame(beta * unit.phi, tol=fr.tol, rank_tol=fr.rank_tol), beta


def naive_gu_projection(fr: Frame, spec: GroupSpec, sigma=None) -> Frame:
    """GU-ify a frame by replacing its right singular basis with the FT.

    From the SVD F = Q Lambda V*, returns Q Lambda Sigma F_t*. The default
    Sigma = I keeps the singular values, hence the frame bounds, of the
    input.
    """
    if fr.n != spec.order:
        raise ValidationError(
            f"frame has {fr.n} columns but the group has order {spec.order}"
        )
    if sigma is None:
        weights = np.ones(fr.m)
    else:
        weights = np.asarray(sigma, dtype=float)
        if weights.ndim != 1 or weights.size < fr.m:
            raise ValidationError(
                f"need at least {fr.m} diagonal weights, got shape {weights.shape}"
            )
        if np.any(weights <= 0):
            raise ValidationError("diagonal weights must be positive")
        weights = weights[: fr.m]
    dec = matops.svd(fr.phi)
    core = np.zeros((fr.m, fr.n), dtype=complex)
    core[np.arange(fr.m), np.arange(fr.m)] = dec.singular_values * weights
    f_t = abelian.ft_matrix(spec)
    return Frame(dec.u @ core @ f_t.conj().T, tol=fr.tol, rank_tol=fr.rank_tol)


def ls_error(fr: Frame, other: Frame) -> float:
    """Sum of squared column distances Tr((Phi - F)*(Phi - F))."""
    if (fr.m, fr.n) != (other.m, other.n):
        raise ValidationError(
            f"shape mismatch: {fr.m}x{fr.n} vs {other.m}x{other.n}"
        )
    diff = other.phi - fr.phi
    return float(np.sum(np.abs(diff) ** 2))
