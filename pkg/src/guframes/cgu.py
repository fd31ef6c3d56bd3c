"""Compound GU frames: one abelian group acting on several generators.

A compound frame collects the orbits {U_i @ phi_k} of r generating
vectors under one group of l unitaries. Columns are ordered with the
group index outer and the generator index inner, and every oracle
comparison in the package uses that ordering. The frame operator
commutes with the group, so duals and canonical tight frames are again
compound with generators S^{-1} phi_k and S^{-1/2} phi_k.

When the generators are themselves an orbit {V_k @ seed} of a second
group that commutes with the first up to phase factors, a single seed
generates the dual and canonical frames; with all phases zero the two
groups combine into one and the frame is plainly GU.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matops
from .abelian import GroupSpec
from .errors import NumericalError, ValidationError
from .frames import Frame, frame_operator
from .gu import GUFrame, UnitaryRep

__all__ = [
    "CGUFrame",
    "GUGenerators",
    "BoundsEnvelope",
    "CommutationPhases",
    "cgu_synthesize",
    "cgu_dual_generators",
    "cgu_canonical_generators",
    "bounds_envelope",
    "commutation_phases",
    "combined_gu",
    "cgu_fast_generators",
]


class CGUFrame:
    """A unitary representation plus r generating vectors."""

    __slots__ = ("rep", "generators", "tol", "rank_tol", "_phi")

    def __init__(self, rep: UnitaryRep, generators, tol: float | None = None,
                 rank_tol: float = matops.DEFAULT_RANK_TOL):
        gens = np.array(generators, dtype=complex)
        if gens.ndim != 2 or gens.shape[1] != rep.dim or gens.shape[0] < 1:
            raise ValidationError(
                f"expected generators of shape (r, {rep.dim}), got {gens.shape}"
            )
        if not np.all(np.isfinite(gens)):
            raise ValidationError("generators contain non-finite entries")
        gens.setflags(write=False)
        self.rep = rep
        self.generators = gens
        self.tol = rep.tol if tol is None else float(tol)
        self.rank_tol = float(rank_tol)
        # Columns (i, k) -> U_i @ phi_k with i outer, k inner.
        cols = np.einsum("iab,kb->ika", rep.matrices, gens)
        phi = cols.reshape(self.l * self.r, rep.dim).T
        self._phi = Frame(phi, tol=self.tol, rank_tol=self.rank_tol)

    @property
    def m(self) -> int:
        return self.rep.dim

    @property
    def l(self) -> int:
        return self.rep.order

    @property
    def r(self) -> int:
        return self.generators.shape[0]

    def __repr__(self) -> str:
        return f"CGUFrame(spec={self.rep.spec}, r={self.r}, m={self.m})"


@dataclass(frozen=True)
class GUGenerators:
    """A second group and seed whose orbit supplies the generators."""

    gen_rep: UnitaryRep
    seed: np.ndarray

    def __post_init__(self):
        seed = np.asarray(self.seed, dtype=complex)
        if seed.shape != (self.gen_rep.dim,):
            raise ValidationError(
                f"seed shape {seed.shape} does not match dimension {self.gen_rep.dim}"
            )
        object.__setattr__(self, "seed", seed)

    def vectors(self) -> np.ndarray:
        return self.gen_rep.matrices @ self.seed


def cgu_synthesize(c: CGUFrame) -> Frame:
    """Frame of the l*r columns U_i @ phi_k (group index outer)."""
    return c._phi


def cgu_dual_generators(c: CGUFrame) -> np.ndarray:
    """Rows are the dual generators S^{-1} phi_k."""
    s_inv = matops.psd_fun(
        frame_operator(cgu_synthesize(c)), lambda x: 1.0 / x, rank_tol=c.rank_tol
    )
    return c.generators @ s_inv.T


def cgu_canonical_generators(c: CGUFrame) -> np.ndarray:
    """Rows are the canonical tight generators S^{-1/2} phi_k."""
    s_isqrt = matops.psd_fun(
        frame_operator(cgu_synthesize(c)), lambda x: x ** -0.5, rank_tol=c.rank_tol
    )
    return c.generators @ s_isqrt.T


@dataclass(frozen=True)
class BoundsEnvelope:
    """Frame bounds together with the trace average (l/m) sum_k |phi_k|^2."""

    lower: float
    value: float
    upper: float


def bounds_envelope(c: CGUFrame, tol: float | None = None) -> BoundsEnvelope:
    """Check A <= (l/m) sum_k |phi_k|^2 <= B and return all three numbers.

    A violation beyond tolerance means the frame operator trace identity
    broke down, which indicates a bug, so it raises NumericalError.
    """
    tol = c.tol if tol is None else float(tol)
    lam = matops.herm_eig(frame_operator(cgu_synthesize(c)), tol=max(tol, 1e-8)).eigenvalues
    lower, upper = float(lam[-1]), float(lam[0])
    value = float(c.l / c.m * np.sum(np.abs(c.generators) ** 2))
    slack = max(tol, tol * upper)
    if not (lower - slack <= value <= upper + slack):
        raise NumericalError(
            f"trace average {value:.6e} escapes the frame bounds "
            f"[{lower:.6e}, {upper:.6e}]"
        )
    return BoundsEnvelope(lower, value, upper)


@dataclass(frozen=True)
class CommutationPhases:
    """Phase table theta with U_p V_t = V_t U_p exp(i theta(p, t)), or failure."""

    phases: np.ndarray | None
    failed_pair: tuple[int, int] | None
    deviation: float

    def __bool__(self) -> bool:
        return self.phases is not None


def commutation_phases(
    q_rep: UnitaryRep, g_rep: UnitaryRep, tol: float = matops.DEFAULT_TOL
) -> CommutationPhases:
    """Extract the phase of each commutator U_p V_t U_p* V_t*, if scalar.

    The phase is read off the (0, 0) entry and the whole commutator is
    then compared against exp(i theta) I. The first pair whose
    commutator is not a scalar multiple of the identity is reported as a
    failure.
    """
    if q_rep.dim != g_rep.dim:
        raise ValidationError(
            f"dimension mismatch: {q_rep.dim} vs {g_rep.dim}"
        )
    eye = np.eye(q_rep.dim)
    phases = np.zeros((q_rep.order, g_rep.order))
    worst = 0.0
    for p in range(q_rep.order):
        u = q_rep.matrices[p]
        for t in range(g_rep.order):
            v = g_rep.matrices[t]
            comm = u @ v @ u.conj().T @ v.conj().T
            z = comm[0, 0]
            if abs(z) < 0.5:
                return CommutationPhases(None, (p, t), float(abs(z)))
            z /= abs(z)
            dev = float(np.max(np.abs(comm - z * eye)))
            if dev > tol:
                return CommutationPhases(None, (p, t), dev)
            worst = max(worst, dev)
            phases[p, t] = float(np.angle(z))
    return CommutationPhases(phases, None, worst)


def combined_gu(
    q_rep: UnitaryRep, g_rep: UnitaryRep, seed, tol: float | None = None
) -> GUFrame:
    """Merge two exactly commuting groups into one GU frame.

    The product representation is indexed by the direct product of the
    two group specs (second group fastest), matching the compound column
    ordering. Raises if any commutator phase is nonzero; compound
    operations handle that case.
    """
    tol = q_rep.tol if tol is None else float(tol)
    result = commutation_phases(q_rep, g_rep, tol=tol)
    if not result:
        p, t = result.failed_pair
        raise ValidationError(
            f"commutator of pair ({p}, {t}) is not a scalar multiple of I"
        )
    phase_dev = float(np.max(np.abs(np.exp(1j * result.phases) - 1.0)))
    if phase_dev > tol:
        raise ValidationError(
            f"groups commute only up to nonzero phases (max |e^(i theta) - 1| = "
            f"{phase_dev:.3e}); use the compound-frame operations"
        )
    spec = GroupSpec(q_rep.spec.factors + g_rep.spec.factors)
    mats = np.einsum("iab,kbc->ikac", q_rep.matrices, g_rep.matrices)
    mats = mats.reshape(q_rep.order * g_rep.order, q_rep.dim, q_rep.dim)
    rep = UnitaryRep(spec, mats, tol=tol)
    return GUFrame(rep, seed, tol=tol)


def cgu_fast_generators(
    q_rep: UnitaryRep, gu_gens: GUGenerators, tol: float | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Single-seed dual and canonical generators for GU-generated frames.

    Requires the two groups to commute up to phases; then the dual frame
    columns are U_i V_k @ dual_seed and the canonical tight frame columns
    are U_i V_k @ canonical_seed.
    """
    tol = q_rep.tol if tol is None else float(tol)
    result = commutation_phases(q_rep, gu_gens.gen_rep, tol=tol)
    if not result:
        p, t = result.failed_pair
        raise ValidationError(
            f"commutator of pair ({p}, {t}) is not a scalar multiple of I; "
            "single-seed generators are unavailable"
        )
    compound = CGUFrame(q_rep, gu_gens.vectors(), tol=tol)
    s = frame_operator(cgu_synthesize(compound))
    dual_seed = matops.psd_fun(s, lambda x: 1.0 / x, rank_tol=compound.rank_tol) @ gu_gens.seed
    canon_seed = matops.psd_fun(s, lambda x: x ** -0.5, rank_tol=compound.rank_tol) @ gu_gens.seed
    return dual_seed, canon_seed
