"""Shared builders for the test suite.

The Klein-group frame below is the running worked example: four unit
vectors at +-30 degrees from the x axis in R^2, generated from the first
one by sign flips of the coordinates. Its Gram matrix, spectrum, frame
bounds, dual and canonical tight frames are all known in closed form and
are frozen as golden values in the tests.
"""

from __future__ import annotations

import numpy as np

from guframes import CGUFrame, Frame, GroupSpec, GUFrame, UnitaryRep, ft_matrix

KLEIN_SPEC = GroupSpec((2, 2))

SQRT3 = np.sqrt(3.0)

KLEIN_GRAM = np.array(
    [
        [1.0, 0.5, -1.0, -0.5],
        [0.5, 1.0, -0.5, -1.0],
        [-1.0, -0.5, 1.0, 0.5],
        [-0.5, -1.0, 0.5, 1.0],
    ]
)


def klein_rep(tol: float = 1e-9) -> UnitaryRep:
    mats = [np.eye(2), np.diag([1.0, -1.0]), -np.eye(2), np.diag([-1.0, 1.0])]
    return UnitaryRep(KLEIN_SPEC, mats, tol=tol)


def klein_generator() -> np.ndarray:
    return np.array([SQRT3 / 2, -0.5], dtype=complex)


def klein_gu(tol: float = 1e-9) -> GUFrame:
    return GUFrame(klein_rep(tol), klein_generator(), tol=tol)


def klein_frame(tol: float = 1e-9) -> Frame:
    phi = 0.5 * np.array(
        [[SQRT3, SQRT3, -SQRT3, -SQRT3], [-1.0, 1.0, 1.0, -1.0]], dtype=complex
    )
    return Frame(phi, tol=tol)


def random_unitary(rng: np.random.Generator, m: int) -> np.ndarray:
    z = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def character_table(spec: GroupSpec) -> np.ndarray:
    """(n, n) table of kernel values; row h, column q."""
    return np.sqrt(spec.order) * ft_matrix(spec)


def random_character_rep(
    rng: np.random.Generator, spec: GroupSpec, m: int, conjugate: bool = True
) -> UnitaryRep:
    """A dimension-m rep built from m distinct characters of the group.

    With ``conjugate=True`` the diagonal rep is conjugated by a random
    unitary, which is the generic shape of an abelian unitary rep.
    """
    n = spec.order
    if m > n:
        raise ValueError(f"need m <= n to pick distinct characters, got {m} > {n}")
    picks = rng.choice(n, size=m, replace=False)
    chars = character_table(spec)[picks, :]  # (m, n)
    mats = np.zeros((n, m, m), dtype=complex)
    idx = np.arange(m)
    mats[:, idx, idx] = chars.T
    if conjugate:
        w = random_unitary(rng, m)
        mats = np.einsum("ab,qbc,dc->qad", w, mats, w.conj())
    return UnitaryRep(spec, mats)


def well_conditioned_vector(rng: np.random.Generator, m: int) -> np.ndarray:
    """Random vector with component magnitudes in [0.5, 1.5]."""
    mag = rng.uniform(0.5, 1.5, size=m)
    phase = np.exp(2j * np.pi * rng.uniform(size=m))
    return mag * phase


def random_gu_frame(
    rng: np.random.Generator, spec: GroupSpec, m: int, tol: float = 1e-9
) -> GUFrame:
    rep = random_character_rep(rng, spec, m)
    return GUFrame(rep, well_conditioned_vector(rng, m), tol=tol)


def random_cgu_frame(
    rng: np.random.Generator, spec: GroupSpec, m: int, r: int, tol: float = 1e-9
) -> CGUFrame:
    rep = random_character_rep(rng, spec, m)
    gens = np.stack([well_conditioned_vector(rng, m) for _ in range(r)])
    return CGUFrame(rep, gens, tol=tol)


def shift_rep(l: int) -> UnitaryRep:
    """Cyclic down-shift rep of Z_l on C^l (T e_j = e_{j-1})."""
    t = np.roll(np.eye(l), -1, axis=0)
    mats = [np.linalg.matrix_power(t, p) for p in range(l)]
    return UnitaryRep(GroupSpec((l,)), mats)


def modulation_rep(l: int, r: int) -> UnitaryRep:
    """Rep of Z_r on C^l by diag(omega^(j t l/r)); requires r | l."""
    if l % r:
        raise ValueError(f"{r} must divide {l}")
    base = np.exp(2j * np.pi * np.arange(l) * (l // r) / l)
    mats = [np.diag(base ** t) for t in range(r)]
    return UnitaryRep(GroupSpec((r,)), mats)


SMALL_SPECS = [
    GroupSpec((2,)),
    GroupSpec((3,)),
    GroupSpec((4,)),
    GroupSpec((2, 2)),
    GroupSpec((6,)),
    GroupSpec((2, 3)),
    GroupSpec((8,)),
    GroupSpec((2, 2, 2)),
    GroupSpec((3, 4)),
    GroupSpec((16,)),
]
