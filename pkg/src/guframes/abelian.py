"""Finite abelian groups Z_{n1} x ... x Z_{np} and their Fourier transform.

Group elements are residue tuples enumerated in mixed-radix lexicographic
order with the *last* factor varying fastest; index 0 is the identity.
Every Gram matrix, synthesized frame and FT matrix in this package is
indexed by that enumeration, so the ordering is fixed here once.

The FT uses the symmetric 1/sqrt(n) normalization, which makes the
transform matrix unitary. Application is by dense matrix product; group
orders are expected to stay in the hundreds-to-thousands range.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import ValidationError

__all__ = [
    "GroupSpec",
    "GroupElement",
    "identity",
    "elements",
    "element_at",
    "ft_kernel",
    "ft_matrix",
    "ft_apply",
    "ift_apply",
]


@dataclass(frozen=True)
class GroupSpec:
    """Direct product of cyclic groups, given by the tuple of factor orders."""

    factors: tuple[int, ...]

    def __post_init__(self):
        try:
            factors = tuple(int(f) for f in self.factors)
        except (TypeError, ValueError) as exc:
            raise ValidationError(
                f"group factors must be a sequence of integers, got {self.factors!r}"
            ) from exc
        if not factors:
            raise ValidationError("a group needs at least one cyclic factor")
        if any(f < 1 for f in factors):
            raise ValidationError(f"cyclic factor orders must be >= 1, got {factors}")
        object.__setattr__(self, "factors", factors)

    @functools.cached_property
    def order(self) -> int:
        return prod(self.factors)

    def __repr__(self) -> str:
        return f"GroupSpec({list(self.factors)})"


@dataclass(frozen=True)
class GroupElement:
    """A residue tuple (q_1, ..., q_p) of its GroupSpec."""

    spec: GroupSpec
    residues: tuple[int, ...]

    def __post_init__(self):
        residues = tuple(int(r) for r in self.residues)
        factors = self.spec.factors
        if len(residues) != len(factors):
            raise ValidationError(
                f"element has {len(residues)} residues but the group has "
                f"{len(factors)} factors"
            )
        if any(not 0 <= r < f for r, f in zip(residues, factors)):
            raise ValidationError(f"residues {residues} out of range for {self.spec}")
        object.__setattr__(self, "residues", residues)

    def _require_same_spec(self, other: "GroupElement") -> None:
        if not isinstance(other, GroupElement):
            raise ValidationError(f"expected a GroupElement, got {type(other).__name__}")
        if other.spec != self.spec:
            raise ValidationError(f"group mismatch: {self.spec} vs {other.spec}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._require_same_spec(other)
        residues = tuple(
            (a + b) % f
            for a, b, f in zip(self.residues, other.residues, self.spec.factors)
        )
        return GroupElement(self.spec, residues)

    def __neg__(self) -> "GroupElement":
        residues = tuple((-a) % f for a, f in zip(self.residues, self.spec.factors))
        return GroupElement(self.spec, residues)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    @property
    def index(self) -> int:
        """Position of this element in the canonical enumeration."""
        weights = _radix_weights(self.spec)
        return sum(r * w for r, w in zip(self.residues, weights))

    def __repr__(self) -> str:
        return f"GroupElement{self.residues}"


def identity(spec: GroupSpec) -> GroupElement:
    return GroupElement(spec, (0,) * len(spec.factors))


def elements(spec: GroupSpec) -> list[GroupElement]:
    """All group elements in mixed-radix order, identity first."""
    return [GroupElement(spec, tuple(row)) for row in residue_table(spec)]


def element_at(spec: GroupSpec, index: int) -> GroupElement:
    if not 0 <= index < spec.order:
        raise ValidationError(f"element index {index} out of range for {spec}")
    return GroupElement(spec, tuple(residue_table(spec)[index]))


@functools.lru_cache(maxsize=None)
def _radix_weights(spec: GroupSpec) -> tuple[int, ...]:
    return tuple(prod(spec.factors[t + 1 :]) for t in range(len(spec.factors)))


@functools.lru_cache(maxsize=64)
def residue_table(spec: GroupSpec) -> np.ndarray:
    """(n, p) integer array of residues, row i = element i."""
    grids = np.meshgrid(*[np.arange(f) for f in spec.factors], indexing="ij")
    table = np.stack([g.reshape(-1) for g in grids], axis=1)
    table.setflags(write=False)
    return table


@functools.lru_cache(maxsize=64)
def negation_table(spec: GroupSpec) -> np.ndarray:
    """(n,) integer array mapping element index i to the index of -q_i."""
    res = residue_table(spec)
    factors = np.asarray(spec.factors)
    weights = np.asarray(_radix_weights(spec))
    table = ((-res) % factors) @ weights
    table.setflags(write=False)
    return table


@functools.lru_cache(maxsize=32)
def addition_table(spec: GroupSpec) -> np.ndarray:
    """(n, n) integer array with entry (i, j) = index of q_i + q_j."""
    res = residue_table(spec)
    factors = np.asarray(spec.factors)
    weights = np.asarray(_radix_weights(spec))
    table = ((res[:, None, :] + res[None, :, :]) % factors) @ weights
    table.setflags(write=False)
    return table


def ft_kernel(h: GroupElement, q: GroupElement) -> complex:
    """The character value prod_t exp(-2*pi*i*h_t*q_t/n_t); unit modulus."""
    h._require_same_spec(q)
    phase = sum(ht * qt / f for ht, qt, f in zip(h.residues, q.residues, h.spec.factors))
    return complex(np.exp(-2j * np.pi * phase))


@functools.lru_cache(maxsize=32)
def ft_matrix(spec: GroupSpec) -> np.ndarray:
    """Unitary n x n FT matrix; entry (h, q) = kernel(h, q)/sqrt(n).

    For a single cyclic factor this is the usual normalized DFT matrix.
    The matrix is symmetric (the kernel is symmetric in h and q).
    """
    res = residue_table(spec).astype(float)
    phases = res @ (res / np.asarray(spec.factors, dtype=float)).T
    mat = np.exp(-2j * np.pi * phases) / np.sqrt(spec.order)
    mat.setflags(write=False)
    return mat


def _as_length_n_vector(spec: GroupSpec, v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.shape != (spec.order,):
        raise ValidationError(
            f"expected a length-{spec.order} vector for {spec}, got shape {v.shape}"
        )
    return v


def ft_apply(spec: GroupSpec, v) -> np.ndarray:
    """Forward transform F @ v over the group enumeration."""
    return ft_matrix(spec) @ _as_length_n_vector(spec, v)


def ift_apply(spec: GroupSpec, v) -> np.ndarray:
    """Inverse transform F* @ v; exact inverse of ft_apply up to roundoff."""
    return ft_matrix(spec).conj().T @ _as_length_n_vector(spec, v)
