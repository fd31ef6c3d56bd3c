"""JSON formats for frames, groups and reports.

Complex numbers are serialized as ``[re, im]`` pairs and matrices as
lists of columns, mirroring the column convention of frame matrices.
Floats go through the standard ``json`` round-trip representation, so an
emitted document re-parses to bit-identical values. Parsers reject
unknown keys.

Formats:

* group spec:   ``[2, 2]``
* frame:        ``{"m": 2, "n": 4, "columns": [[[re, im], ...], ...]}``
* GU frame:     ``{"spec": [...], "matrices": [...], "generator": [...]}``
* compound:     GU frame keys plus ``"generators"`` and optionally
                ``"gen_spec"``/``"gen_matrices"`` (and ``"generator"``
                as the seed when the generators are themselves an orbit)
* Gram matrix:  ``{"gram": [[...], ...]}``
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .abelian import GroupSpec
from .cgu import CGUFrame
from .errors import ValidationError
from .frames import Frame
from .gu import GUFrame, SpectralReport, UnitaryRep

__all__ = [
    "dumps",
    "spec_to_json",
    "spec_from_json",
    "vector_to_json",
    "vector_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "frame_to_json",
    "frame_from_json",
    "gu_frame_to_json",
    "gu_frame_from_json",
    "cgu_frame_to_json",
    "cgu_bundle_from_json",
    "gram_from_json",
    "spectral_report_to_json",
]


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _require_keys(obj: Any, required: tuple[str, ...], optional: tuple[str, ...],
                  what: str) -> dict:
    if not isinstance(obj, dict):
        raise ValidationError(f"{what} must be a JSON object, got {type(obj).__name__}")
    unknown = set(obj) - set(required) - set(optional)
    if unknown:
        raise ValidationError(f"{what} has unknown fields {sorted(unknown)}")
    missing = set(required) - set(obj)
    if missing:
        raise ValidationError(f"{what} is missing fields {sorted(missing)}")
    return obj


def spec_to_json(spec: GroupSpec) -> list[int]:
    return list(spec.factors)


def spec_from_json(obj: Any) -> GroupSpec:
    if not isinstance(obj, (list, tuple)):
        raise ValidationError(f"group spec must be a JSON array, got {obj!r}")
    return GroupSpec(tuple(obj))


def _complex_from_json(entry: Any, what: str, allow_real: bool) -> complex:
    if isinstance(entry, (int, float)) and not isinstance(entry, bool):
        if allow_real:
            return complex(entry)
        raise ValidationError(f"{what}: expected an [re, im] pair, got a bare number")
    if (
        isinstance(entry, (list, tuple))
        and len(entry) == 2
        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
    ):
        return complex(entry[0], entry[1])
    raise ValidationError(f"{what}: expected an [re, im] pair, got {entry!r}")


def vector_to_json(v) -> list[list[float]]:
    v = np.asarray(v, dtype=complex)
    return [[float(z.real), float(z.imag)] for z in v]


def vector_from_json(obj: Any, what: str = "vector", allow_real: bool = False) -> np.ndarray:
    if not isinstance(obj, (list, tuple)):
        raise ValidationError(f"{what} must be a JSON array")
    return np.array([_complex_from_json(e, what, allow_real) for e in obj], dtype=complex)


def matrix_to_json(a) -> list[list[list[float]]]:
    """Column-major: a list of columns, each a list of [re, im] pairs."""
    a = np.asarray(a, dtype=complex)
    return [vector_to_json(a[:, j]) for j in range(a.shape[1])]


def matrix_from_json(obj: Any, what: str = "matrix") -> np.ndarray:
    if not isinstance(obj, (list, tuple)) or not obj:
        raise ValidationError(f"{what} must be a non-empty JSON array of columns")
    cols = [vector_from_json(c, f"{what} column {j}") for j, c in enumerate(obj)]
    rows = cols[0].size
    if any(c.size != rows for c in cols):
        raise ValidationError(f"{what} has ragged columns")
    return np.stack(cols, axis=1)


def frame_to_json(fr: Frame) -> dict:
    return {"m": fr.m, "n": fr.n, "columns": matrix_to_json(fr.phi)}


def frame_from_json(obj: Any, tol: float) -> Frame:
    obj = _require_keys(obj, ("m", "n", "columns"), (), "frame")
    phi = matrix_from_json(obj["columns"], "frame columns")
    if phi.shape != (obj["m"], obj["n"]):
        raise ValidationError(
            f"frame declares shape {obj['m']}x{obj['n']} but columns give "
            f"{phi.shape[0]}x{phi.shape[1]}"
        )
    return Frame(phi, tol=tol)


def gu_frame_to_json(g: GUFrame) -> dict:
    return {
        "spec": spec_to_json(g.rep.spec),
        "matrices": [matrix_to_json(u) for u in g.rep.matrices],
        "generator": vector_to_json(g.generator),
    }


def _rep_from_json(spec_obj: Any, mats_obj: Any, tol: float, what: str) -> UnitaryRep:
    spec = spec_from_json(spec_obj)
    if not isinstance(mats_obj, (list, tuple)):
        raise ValidationError(f"{what} matrices must be a JSON array")
    mats = [matrix_from_json(mm, f"{what} matrix {i}") for i, mm in enumerate(mats_obj)]
    return UnitaryRep(spec, mats, tol=tol)


def gu_frame_from_json(obj: Any, tol: float) -> GUFrame:
    obj = _require_keys(obj, ("spec", "matrices", "generator"), (), "GU frame")
    rep = _rep_from_json(obj["spec"], obj["matrices"], tol, "representation")
    return GUFrame(rep, vector_from_json(obj["generator"], "generator"), tol=tol)


def cgu_frame_to_json(c: CGUFrame) -> dict:
    return {
        "spec": spec_to_json(c.rep.spec),
        "matrices": [matrix_to_json(u) for u in c.rep.matrices],
        "generators": [vector_to_json(v) for v in c.generators],
    }


def cgu_bundle_from_json(obj: Any, tol: float):
    """Parse a compound-frame document.

    Returns (rep, generators, gen_rep, seed); ``generators`` is derived
    as the orbit of the seed when only the generator group is given.
    """
    obj = _require_keys(
        obj,
        ("spec", "matrices"),
        ("generators", "gen_spec", "gen_matrices", "generator"),
        "compound frame",
    )
    rep = _rep_from_json(obj["spec"], obj["matrices"], tol, "representation")
    gen_rep = None
    if ("gen_spec" in obj) != ("gen_matrices" in obj):
        raise ValidationError(
            "gen_spec and gen_matrices must be provided together"
        )
    if "gen_spec" in obj:
        gen_rep = _rep_from_json(obj["gen_spec"], obj["gen_matrices"], tol,
                                 "generator representation")
    seed = None
    if "generator" in obj:
        seed = vector_from_json(obj["generator"], "generator")
    generators = None
    if "generators" in obj:
        if not isinstance(obj["generators"], (list, tuple)) or not obj["generators"]:
            raise ValidationError("generators must be a non-empty JSON array")
        generators = np.stack(
            [vector_from_json(v, f"generator {k}") for k, v in enumerate(obj["generators"])]
        )
    elif gen_rep is not None and seed is not None:
        generators = gen_rep.matrices @ seed
    return rep, generators, gen_rep, seed


def gram_from_json(obj: Any) -> np.ndarray:
    obj = _require_keys(obj, ("gram",), (), "Gram document")
    gram = matrix_from_json(obj["gram"], "gram")
    if gram.shape[0] != gram.shape[1]:
        raise ValidationError(f"Gram matrix must be square, got {gram.shape}")
    return gram


def spectral_report_to_json(report: SpectralReport) -> dict:
    return {
        "spec": spec_to_json(report.spec),
        "s": vector_to_json(report.s),
        "s_hat": [float(x) for x in report.s_hat],
        "sigma": [float(x) for x in report.sigma],
        "index_set": list(report.index_set),
        "bounds": {"lower": report.lower_bound, "upper": report.upper_bound},
        "dual_generator": vector_to_json(report.dual_generator),
        "canonical_generator": vector_to_json(report.canonical_generator),
    }
