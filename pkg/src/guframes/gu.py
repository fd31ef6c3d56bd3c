"""Geometrically uniform (GU) frames over finite abelian groups.

A GU frame is the orbit {U(q) @ phi, q in Q} of a single generating
vector under an abelian group of unitary matrices, indexed by the
canonical enumeration of Q. Its Gram matrix has the translation
structure G[q', q] = s(q - q') with s(q) = <phi(0), phi(q)>, and is
diagonalized by the FT matrix over Q.

:func:`spectral_report` implements the FT fast path: from the
inner-product sequence alone it produces the singular values
sigma(h) = n^{1/4} sqrt(s_hat(h)), the frame bounds
A = sqrt(n) min_{h in I} s_hat(h), B = sqrt(n) max_{h in I} s_hat(h)
over the support I = {h : s_hat(h) > 0}, and the generating vectors of
the dual frame and the canonical tight frame:

    u(h)     = phi_hat(h) / sigma(h)            for h in I,
    dual     = (1/sqrt(n)) sum_{h in I} u(h) / sigma(h),
    canonical= (1/sqrt(n)) sum_{h in I} u(h),

where phi_hat(h) are the columns of Phi @ F. The support test uses the
eigenvalue-scale cutoff s_hat(h) > rank_tol * max(s_hat), so FT roundoff
on exact zeros never enters I.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import abelian, matops
from .abelian import GroupElement, GroupSpec
from .errors import NumericalError, ValidationError
from .frames import Frame

__all__ = [
    "UnitaryRep",
    "GUFrame",
    "SpectralReport",
    "PermutedGramResult",
    "FTDiagonalization",
    "synthesize",
    "is_permuted_gram",
    "ft_diagonalizes",
    "spectral_report",
    "gu_spectral",
    "gu_dual",
    "gu_canonical",
    "gram_to_gu",
]

_FULL_CHECK_MAX_ORDER = 512
_SAMPLED_PAIRS = 64


class UnitaryRep:
    """An ordered family of unitary matrices indexed by a finite abelian group.

    Validates, within ``tol``: unitarity of every matrix, identity at the
    group identity, and the homomorphism U(q) @ U(q') = U(q + q'). The
    full n^2 product table is checked for group orders up to 512; above
    that, per-factor generator cycles and a fixed random sample of pairs
    are checked instead.
    """

    __slots__ = ("spec", "matrices", "tol")

    def __init__(self, spec: GroupSpec, matrices, tol: float = matops.DEFAULT_TOL):
        mats = np.array(matrices, dtype=complex)
        n = spec.order
        if mats.ndim != 3 or mats.shape[0] != n or mats.shape[1] != mats.shape[2]:
            raise ValidationError(
                f"expected {n} square matrices for {spec}, got shape {mats.shape}"
            )
        if not np.all(np.isfinite(mats)):
            raise ValidationError("representation matrices contain non-finite entries")
        self.spec = spec
        self.tol = float(tol)
        m = mats.shape[1]
        eye = np.eye(m)

        dev = float(np.max(np.abs(mats[0] - eye)))
        if dev > tol:
            raise ValidationError(
                f"matrix at the identity element deviates from I by {dev:.3e}"
            )
        prod = np.einsum("qab,qcb->qac", mats, mats.conj())
        dev = float(np.max(np.abs(prod - eye)))
        if dev > tol:
            raise ValidationError(f"matrices are not unitary (max |UU* - I| = {dev:.3e})")

        self._check_homomorphism(mats)
        mats.setflags(write=False)
        self.matrices = mats

    def _check_homomorphism(self, mats: np.ndarray) -> None:
        n = self.spec.order
        if n <= _FULL_CHECK_MAX_ORDER:
            table = abelian.addition_table(self.spec)
            for i in range(n):
                dev = float(np.max(np.abs(mats[i] @ mats - mats[table[i]])))
                if dev > self.tol:
                    raise ValidationError(
                        f"homomorphism fails at element {i} (deviation {dev:.3e})"
                    )
            return
        # Large group: check generator cycles plus a deterministic sample.
        weights = abelian._radix_weights(self.spec)
        eye = np.eye(mats.shape[1])
        for t, (factor, w) in enumerate(zip(self.spec.factors, weights)):
            if factor == 1:
                continue
            power = eye
            for _ in range(factor):
                power = mats[w] @ power
            dev = float(np.max(np.abs(power - eye)))
            if dev > self.tol * factor:
                raise ValidationError(
                    f"generator of factor {t} does not close its cycle "
                    f"(deviation {dev:.3e})"
                )
        rng = np.random.default_rng(0)
        res = abelian.residue_table(self.spec)
        factors = np.asarray(self.spec.factors)
        wvec = np.asarray(weights)
        for i, j in rng.integers(0, n, size=(_SAMPLED_PAIRS, 2)):
            k = int(((res[i] + res[j]) % factors) @ wvec)
            dev = float(np.max(np.abs(mats[i] @ mats[j] - mats[k])))
            if dev > self.tol:
                raise ValidationError(
                    f"homomorphism fails at sampled pair ({i}, {j}) "
                    f"(deviation {dev:.3e})"
                )

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]

    @property
    def order(self) -> int:
        return self.spec.order

    def matrix(self, q: GroupElement) -> np.ndarray:
        if q.spec != self.spec:
            raise ValidationError(f"element of {q.spec} used with rep over {self.spec}")
        return self.matrices[q.index]

    def __getitem__(self, i: int) -> np.ndarray:
        return self.matrices[i]

    def __repr__(self) -> str:
        return f"UnitaryRep(spec={self.spec}, dim={self.dim})"


class GUFrame:
    """A unitary representation together with one generating vector."""

    __slots__ = ("rep", "generator", "tol", "rank_tol", "_phi")

    def __init__(self, rep: UnitaryRep, generator, tol: float | None = None,
                 rank_tol: float = matops.DEFAULT_RANK_TOL):
        gen = np.array(generator, dtype=complex)
        if gen.shape != (rep.dim,):
            raise ValidationError(
                f"generator shape {gen.shape} does not match dimension {rep.dim}"
            )
        if not np.all(np.isfinite(gen)):
            raise ValidationError("generator contains non-finite entries")
        gen.setflags(write=False)
        self.rep = rep
        self.generator = gen
        self.tol = rep.tol if tol is None else float(tol)
        self.rank_tol = float(rank_tol)
        phi = (rep.matrices @ gen).T
        # Frame construction enforces the spanning condition.
        self._phi = Frame(phi, tol=self.tol, rank_tol=self.rank_tol)

    @property
    def m(self) -> int:
        return self.rep.dim

    @property
    def n(self) -> int:
        return self.rep.order

    def __repr__(self) -> str:
        return f"GUFrame(spec={self.rep.spec}, m={self.m})"


def synthesize(g: GUFrame) -> Frame:
    """The frame whose column q is U(q) @ generator, in enumeration order."""
    return g._phi


@dataclass(frozen=True)
class PermutedGramResult:
    """Outcome of the row/column permutation test on a Gram matrix."""

    is_permuted: bool
    row_permutations: tuple[tuple[int, ...], ...] | None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.is_permuted


def _match_multiset(ref: np.ndarray, row: np.ndarray, tol: float) -> list[int] | None:
    """Greedy matching of ``row`` entries onto distinct entries of ``ref``."""
    used = np.zeros(ref.size, dtype=bool)
    perm: list[int] = []
    for value in row:
        dist = np.abs(ref - value)
        dist[used] = np.inf
        j = int(np.argmin(dist))
        if dist[j] > tol:
            return None
        used[j] = True
        perm.append(j)
    return perm


def is_permuted_gram(gram, tol: float = matops.DEFAULT_TOL) -> PermutedGramResult:
    """Decide whether every row and column of ``gram`` permutes row 0.

    Together with symmetry of the matrix this certifies that the
    underlying vectors are geometrically uniform.
    """
    gram = _as_square_matrix(gram, "Gram matrix")
    ref = gram[0]
    perms = []
    for i in range(gram.shape[0]):
        perm = _match_multiset(ref, gram[i], tol)
        if perm is None:
            return PermutedGramResult(False, None, f"row {i} is not a permutation of row 0")
        perms.append(tuple(perm))
    for j in range(gram.shape[1]):
        if _match_multiset(ref, gram[:, j], tol) is None:
            return PermutedGramResult(
                False, None, f"column {j} is not a permutation of row 0"
            )
    return PermutedGramResult(True, tuple(perms))


@dataclass(frozen=True)
class FTDiagonalization:
    """Outcome of testing F @ G @ F* for diagonality."""

    is_diagonal: bool
    diagonal: np.ndarray
    max_off_diagonal: float

    def __bool__(self) -> bool:
        return self.is_diagonal


def _as_square_matrix(a, what: str) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"{what} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError(f"{what} contains non-finite entries")
    return a


def ft_diagonalizes(gram, spec: GroupSpec, tol: float = matops.DEFAULT_TOL) -> FTDiagonalization:
    """Test whether the FT over ``spec`` diagonalizes a Hermitian Gram matrix."""
    gram = matops.require_hermitian(gram, tol=tol, what="Gram matrix")
    if gram.shape[0] != spec.order:
        raise ValidationError(
            f"Gram matrix of size {gram.shape[0]} does not match group order {spec.order}"
        )
    f = abelian.ft_matrix(spec)
    d = f @ gram @ f.conj().T
    diag = np.diag(d).copy()
    off = d - np.diag(diag)
    max_off = float(np.max(np.abs(off))) if off.size else 0.0
    return FTDiagonalization(max_off <= tol, diag, max_off)


@dataclass(frozen=True)
class SpectralReport:
    """FT-domain summary of a GU frame.

    ``s`` is the raw inner-product sequence, ``s_hat`` its (real,
    non-negative) FT, ``sigma`` the singular values n^{1/4} sqrt(s_hat)
    in FT order, ``index_set`` the support of the spectrum, and the
    generators are those of the dual and canonical tight frames.
    """

    spec: GroupSpec
    s: np.ndarray
    s_hat: np.ndarray
    sigma: np.ndarray
    index_set: tuple[int, ...]
    lower_bound: float
    upper_bound: float
    dual_generator: np.ndarray
    canonical_generator: np.ndarray


def spectral_report(
    phi,
    spec: GroupSpec,
    *,
    tol: float = matops.DEFAULT_TOL,
    rank_tol: float = matops.DEFAULT_RANK_TOL,
    verify: bool = True,
) -> SpectralReport:
    """FT fast path from frame columns ordered by the group enumeration.

    ``phi`` may be a Frame or an m x n array whose column q is phi(q).
    With ``verify=True`` the Gram matrix is first checked to be
    FT-diagonalized by ``spec`` (the GU certificate for this ordering).
    Raises NumericalError when the spectrum s_hat has an imaginary or
    negative part beyond tolerance, which signals that the columns are
    not a GU orbit in the given order.
    """
    if isinstance(phi, Frame):
        phi = phi.phi
    phi = np.asarray(phi, dtype=complex)
    n = spec.order
    if phi.ndim != 2 or phi.shape[1] != n:
        raise ValidationError(
            f"expected an m x {n} column matrix for {spec}, got shape {phi.shape}"
        )
    m = phi.shape[0]
    f = abelian.ft_matrix(spec)

    if verify:
        check = ft_diagonalizes(phi.conj().T @ phi, spec, tol=max(tol, 1e-8))
        if not check:
            raise ValidationError(
                "Gram matrix is not diagonalized by the FT over "
                f"{spec} (max off-diagonal {check.max_off_diagonal:.3e}); "
                "the columns are not geometrically uniform in this ordering"
            )

    s = phi[:, 0].conj() @ phi
    # Hermitian symmetrization of the Gram, expressed on the sequence.
    s_sym = 0.5 * (s + np.conj(s[abelian.negation_table(spec)]))
    s_hat_c = f @ s_sym
    scale = max(float(np.max(np.abs(s_hat_c))), 1.0) if s_hat_c.size else 1.0
    thr = tol * scale
    imag_dev = float(np.max(np.abs(s_hat_c.imag)))
    if imag_dev > thr:
        raise NumericalError(
            f"inner-product spectrum is not real (imag {imag_dev:.3e}); "
            "generator and representation are inconsistent"
        )
    s_hat = s_hat_c.real.copy()
    neg_dev = float(-min(np.min(s_hat), 0.0))
    if neg_dev > thr:
        raise NumericalError(
            f"inner-product spectrum has a negative weight (-{neg_dev:.3e}); "
            "generator and representation are inconsistent"
        )
    s_hat[s_hat < 0] = 0.0

    sigma = n ** 0.25 * np.sqrt(s_hat)
    smax = float(np.max(s_hat))
    if smax <= 0:
        raise NumericalError("inner-product spectrum vanishes; zero generator")
    support = np.flatnonzero(s_hat > rank_tol * smax)
    if support.size != m:
        raise NumericalError(
            f"spectral support has size {support.size} but the space has "
            f"dimension {m}"
        )

    phi_hat = phi @ f
    u = phi_hat[:, support] / sigma[support]
    sqrt_n = np.sqrt(n)
    dual_gen = (u / sigma[support]).sum(axis=1) / sqrt_n
    canon_gen = u.sum(axis=1) / sqrt_n
    lower = float(sqrt_n * np.min(s_hat[support]))
    upper = float(sqrt_n * np.max(s_hat[support]))
    return SpectralReport(
        spec=spec,
        s=s,
        s_hat=s_hat,
        sigma=sigma,
        index_set=tuple(int(i) for i in support),
        lower_bound=lower,
        upper_bound=upper,
        dual_generator=dual_gen,
        canonical_generator=canon_gen,
    )


def gu_spectral(g: GUFrame) -> SpectralReport:
    """Spectral report of a GU frame (no re-verification needed)."""
    return spectral_report(
        synthesize(g), g.rep.spec, tol=g.tol, rank_tol=g.rank_tol, verify=False
    )


def gu_dual(g: GUFrame) -> GUFrame:
    """Dual frame as a GU frame: same group, generator S^{-1} phi."""
    return GUFrame(g.rep, gu_spectral(g).dual_generator, tol=g.tol, rank_tol=g.rank_tol)


def gu_canonical(g: GUFrame) -> GUFrame:
    """Canonical tight frame as a GU frame: same group, generator S^{-1/2} phi."""
    return GUFrame(
        g.rep, gu_spectral(g).canonical_generator, tol=g.tol, rank_tol=g.rank_tol
    )


def gram_to_gu(
    gram,
    spec: GroupSpec,
    tol: float = matops.DEFAULT_TOL,
    rank_tol: float = matops.DEFAULT_RANK_TOL,
) -> GUFrame:
    """Construct a GU frame realizing a given FT-diagonalized Gram matrix.

    The representation is fixed to diagonal character matrices in the FT
    basis (the free unitary of the SVD form is taken to be the identity),
    so the output has dimension equal to the rank of the Gram matrix and
    reproduces it exactly up to roundoff.
    """
    gram = matops.require_hermitian(gram, tol=tol, what="Gram matrix")
    n = spec.order
    if gram.shape[0] != n:
        raise ValidationError(
            f"Gram matrix of size {gram.shape[0]} does not match group order {n}"
        )
    f = abelian.ft_matrix(spec)
    d_full = f.conj().T @ gram @ f
    diag = np.diag(d_full)
    off = d_full - np.diag(diag)
    max_off = float(np.max(np.abs(off))) if off.size else 0.0
    if max_off > tol:
        raise ValidationError(
            f"Gram matrix is not diagonalized by the FT over {spec} "
            f"(max off-diagonal {max_off:.3e})"
        )
    d = diag.real.copy()
    scale = max(float(np.max(np.abs(d))), 1.0)
    if float(-min(np.min(d), 0.0)) > tol * scale:
        h = int(np.argmin(d))
        raise ValidationError(
            f"Gram matrix is not positive semidefinite: FT eigenvalue "
            f"{d[h]:.6e} at index {h}"
        )
    d[d < 0] = 0.0
    dmax = float(np.max(d))
    if dmax <= 0:
        raise ValidationError("Gram matrix is zero")
    support = np.flatnonzero(d > rank_tol * dmax)

    kernel = np.sqrt(n) * f  # kernel(h, q) table
    chars = np.conj(kernel[support, :])  # rows: conj characters on the support
    mats = np.zeros((n, support.size, support.size), dtype=complex)
    idx = np.arange(support.size)
    for q in range(n):
        mats[q, idx, idx] = chars[:, q]
    rep = UnitaryRep(spec, mats, tol=tol)
    gen = np.sqrt(d[support]) / np.sqrt(n)
    return GUFrame(rep, gen, tol=tol, rank_tol=rank_tol)
