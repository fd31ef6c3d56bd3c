"""Command-line front end.

One job per invocation, deterministic output. Exit codes: 0 on success,
1 on validation errors (bad arguments, malformed or inconsistent JSON),
2 on numerical failures. Errors are emitted as a JSON object
``{"error": {"type": ..., "message": ...}}`` on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import cgu as cgu_ops
from . import distance as distance_ops
from . import matops, pruning, serialize
from .errors import NumericalError, ValidationError
from .frames import canonical_tight, dual_frame, frame_bounds
from .gu import (
    GUFrame,
    ft_diagonalizes,
    gu_canonical,
    gu_dual,
    gu_spectral,
    is_permuted_gram,
    spectral_report,
    synthesize,
)
from .lsguf import build_target_gram, c_lsguf, ls_error, naive_gu_projection, sc_lsguf
from .serialize import spec_from_json


@dataclass(frozen=True)
class JobConfig:
    """A validated, dispatchable job."""

    subcommand: str
    input_path: str | None
    output_path: str
    tolerance: float
    options: dict[str, Any] = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    # Route argparse usage errors through the validation exit path.
    def error(self, message):
        raise ValidationError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="guframes", description=__doc__)
    parser.add_argument("--tolerance", type=float, default=matops.DEFAULT_TOL,
                        help="entrywise comparison tolerance (default 1e-9)")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, help_text, needs_input=True):
        p = sub.add_parser(name, help=help_text)
        if needs_input:
            p.add_argument("input", nargs="?", default="-",
                           help="input JSON path, or - for stdin")
        p.add_argument("--output", default="-", help="output path, or - for stdout")
        return p

    add("analyze", "spectral report of a GU frame (or frame columns with --spec)") \
        .add_argument("--spec", help="group spec JSON, e.g. [2,2], for frame input")
    add("dual", "dual frame of a frame or GU frame")
    add("canonical", "canonical tight frame of a frame or GU frame")
    add("synthesize", "columns of a GU or compound frame")

    p = add("prune", "pruned-frame spectra of a GU frame")
    p.add_argument("--coset", help="JSON list of removal indices for coset pruning")
    p.add_argument("--shift", type=int, default=0,
                   help="group element translating the removal set (default 0)")

    p = add("construct", "least-squares GU frame construction")
    p.add_argument("--mode", choices=("sc", "c", "naive"), required=True)
    p.add_argument("--spec", required=True, help="group spec JSON, e.g. [2,2]")
    p.add_argument("--target-a", help="target inner-product sequence (JSON)")
    p.add_argument("--beta0", type=float, help="fixed scale for --mode sc")
    p.add_argument("--sigma", help="positive diagonal weights for --mode naive (JSON)")

    p = add("distance", "distance profile of a GU frame", needs_input=True)
    p.add_argument("--search", nargs=2, type=int, metavar=("N", "M"),
                   help="instead search exponents over Z_N with M diagonal entries")

    p = add("check-gu", "test a Gram matrix for geometric uniformity")
    p.add_argument("--spec", help="group spec JSON to test FT diagonalization")

    p = add("cgu", "compound-frame operations")
    p.add_argument("--action", required=True,
                   choices=("synthesize", "dual", "canonical", "envelope",
                            "phases", "combine", "fast-generators"))
    return parser


def _load_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc}") from exc


def _parse_inline_json(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON for {what}: {exc}") from exc


def _frame_or_gu(obj: Any, tol: float):
    if isinstance(obj, dict) and "matrices" in obj:
        return serialize.gu_frame_from_json(obj, tol)
    return serialize.frame_from_json(obj, tol)


def _run_analyze(cfg: JobConfig) -> dict:
    obj = _load_json(cfg.input_path)
    if isinstance(obj, dict) and "matrices" in obj:
        report = gu_spectral(serialize.gu_frame_from_json(obj, cfg.tolerance))
    else:
        spec_text = cfg.options.get("spec")
        if spec_text is None:
            raise ValidationError("frame input requires --spec")
        spec = spec_from_json(_parse_inline_json(spec_text, "--spec"))
        fr = serialize.frame_from_json(obj, cfg.tolerance)
        report = spectral_report(fr, spec, tol=cfg.tolerance)
    return serialize.spectral_report_to_json(report)


def _run_dual(cfg: JobConfig, canonical: bool) -> dict:
    parsed = _frame_or_gu(_load_json(cfg.input_path), cfg.tolerance)
    if isinstance(parsed, GUFrame):
        out = gu_canonical(parsed) if canonical else gu_dual(parsed)
        return serialize.gu_frame_to_json(out)
    out = canonical_tight(parsed) if canonical else dual_frame(parsed)
    return serialize.frame_to_json(out)


def _run_synthesize(cfg: JobConfig) -> dict:
    obj = _load_json(cfg.input_path)
    if isinstance(obj, dict) and ("generators" in obj or "gen_spec" in obj):
        compound = _compound_from(obj, cfg.tolerance)
        return serialize.frame_to_json(cgu_ops.cgu_synthesize(compound))
    g = serialize.gu_frame_from_json(obj, cfg.tolerance)
    return serialize.frame_to_json(synthesize(g))


def _run_prune(cfg: JobConfig) -> dict:
    g = serialize.gu_frame_from_json(_load_json(cfg.input_path), cfg.tolerance)
    coset = cfg.options.get("coset")
    if coset is not None:
        indices = _parse_inline_json(coset, "--coset")
        if not isinstance(indices, list):
            raise ValidationError("--coset must be a JSON list of indices")
        result = pruning.prune_coset_spectrum(g, indices, cfg.options.get("shift", 0))
        return {
            "spectrum": [float(x) for x in result.eigenvalues],
            "is_frame": result.is_frame,
        }
    report = pruning.prune_invariance_check(g)
    return {
        "spectrum": [float(x) for x in report.spectrum],
        "deviation": report.deviation,
        "frame_bound_ratio": report.frame_bound_ratio,
        "is_frame": report.is_frame,
    }


def _run_construct(cfg: JobConfig) -> dict:
    fr = serialize.frame_from_json(_load_json(cfg.input_path), cfg.tolerance)
    spec = spec_from_json(_parse_inline_json(cfg.options["spec"], "--spec"))
    mode = cfg.options["mode"]
    beta: float | None = None
    if mode in ("sc", "c"):
        target_text = cfg.options.get("target_a")
        if target_text is None:
            raise ValidationError(f"--mode {mode} requires --target-a")
        a = serialize.vector_from_json(
            _parse_inline_json(target_text, "--target-a"), "target sequence",
            allow_real=True,
        )
        target = build_target_gram(a, spec, tol=cfg.tolerance)
        if mode == "sc":
            beta0 = cfg.options.get("beta0")
            if beta0 is None:
                raise ValidationError("--mode sc requires --beta0")
            out = sc_lsguf(fr, target, beta0)
            beta = float(beta0)
        else:
            out, beta = c_lsguf(fr, target)
    else:
        sigma = cfg.options.get("sigma")
        weights = None
        if sigma is not None:
            weights = _parse_inline_json(sigma, "--sigma")
            if not isinstance(weights, list):
                raise ValidationError("--sigma must be a JSON list of positive numbers")
        out = naive_gu_projection(fr, spec, weights)
    lower, upper = frame_bounds(out)
    return {
        "frame": serialize.frame_to_json(out),
        "report": {
            "least_squares_error": ls_error(fr, out),
            "beta": beta,
            "bounds": {"lower": lower, "upper": upper},
        },
    }


def _run_distance(cfg: JobConfig) -> dict:
    search = cfg.options.get("search")
    if search is not None:
        n, m = search
        result = distance_ops.min_distance_search(n, m)
        return {"u": list(result.u), "d_min": result.d_min}
    g = serialize.gu_frame_from_json(_load_json(cfg.input_path), cfg.tolerance)
    d = distance_ops.distance_profile(g)
    fpf = distance_ops.is_fixed_point_free(g.rep)
    return {
        "d": [float(x) for x in d],
        "d_min": float(np.min(d[1:])) if d.size > 1 else None,
        "fixed_point_free": bool(fpf),
    }


def _run_check_gu(cfg: JobConfig) -> dict:
    gram = serialize.gram_from_json(_load_json(cfg.input_path))
    permuted = is_permuted_gram(gram, tol=cfg.tolerance)
    symmetric = bool(np.max(np.abs(gram - gram.T)) <= cfg.tolerance)
    payload: dict[str, Any] = {
        "permuted": permuted.is_permuted,
        "symmetric": symmetric,
        "ft_diagonalized": None,
        "diagonal": None,
    }
    ft_ok = False
    spec_text = cfg.options.get("spec")
    if spec_text is not None:
        spec = spec_from_json(_parse_inline_json(spec_text, "--spec"))
        check = ft_diagonalizes(gram, spec, tol=cfg.tolerance)
        ft_ok = check.is_diagonal
        payload["ft_diagonalized"] = ft_ok
        if ft_ok:
            payload["diagonal"] = [float(x) for x in check.diagonal.real]
    payload["gu"] = bool((permuted.is_permuted and symmetric) or ft_ok)
    return payload


def _compound_from(obj: Any, tol: float) -> cgu_ops.CGUFrame:
    rep, generators, _, _ = serialize.cgu_bundle_from_json(obj, tol)
    if generators is None:
        raise ValidationError(
            "compound frame needs generators, or gen_spec/gen_matrices plus "
            "a generator seed"
        )
    return cgu_ops.CGUFrame(rep, generators, tol=tol)


def _run_cgu(cfg: JobConfig) -> dict:
    obj = _load_json(cfg.input_path)
    action = cfg.options["action"]
    tol = cfg.tolerance
    if action in ("synthesize", "dual", "canonical", "envelope"):
        compound = _compound_from(obj, tol)
        if action == "synthesize":
            return serialize.frame_to_json(cgu_ops.cgu_synthesize(compound))
        if action == "dual":
            gens = cgu_ops.cgu_dual_generators(compound)
        elif action == "canonical":
            gens = cgu_ops.cgu_canonical_generators(compound)
        else:
            env = cgu_ops.bounds_envelope(compound)
            return {"lower": env.lower, "value": env.value, "upper": env.upper}
        return {
            "spec": serialize.spec_to_json(compound.rep.spec),
            "matrices": [serialize.matrix_to_json(u) for u in compound.rep.matrices],
            "generators": [serialize.vector_to_json(v) for v in gens],
        }
    rep, _, gen_rep, seed = serialize.cgu_bundle_from_json(obj, tol)
    if gen_rep is None:
        raise ValidationError(f"--action {action} requires gen_spec and gen_matrices")
    if action == "phases":
        result = cgu_ops.commutation_phases(rep, gen_rep, tol=tol)
        return {
            "commute_up_to_phase": bool(result),
            "phases": [[float(x) for x in row] for row in result.phases]
            if result else None,
            "failed_pair": list(result.failed_pair) if result.failed_pair else None,
        }
    if seed is None:
        raise ValidationError(f"--action {action} requires a generator seed")
    if action == "combine":
        return serialize.gu_frame_to_json(cgu_ops.combined_gu(rep, gen_rep, seed, tol=tol))
    dual_seed, canon_seed = cgu_ops.cgu_fast_generators(
        rep, cgu_ops.GUGenerators(gen_rep, seed), tol=tol
    )
    return {
        "dual_seed": serialize.vector_to_json(dual_seed),
        "canonical_seed": serialize.vector_to_json(canon_seed),
    }


_HANDLERS = {
    "analyze": _run_analyze,
    "dual": lambda cfg: _run_dual(cfg, canonical=False),
    "canonical": lambda cfg: _run_dual(cfg, canonical=True),
    "synthesize": _run_synthesize,
    "prune": _run_prune,
    "construct": _run_construct,
    "distance": _run_distance,
    "check-gu": _run_check_gu,
    "cgu": _run_cgu,
}


def _config_from_args(args: argparse.Namespace) -> JobConfig:
    options = {
        k: v
        for k, v in vars(args).items()
        if k not in ("subcommand", "input", "output", "tolerance") and v is not None
    }
    return JobConfig(
        subcommand=args.subcommand,
        input_path=getattr(args, "input", None),
        output_path=args.output,
        tolerance=args.tolerance,
        options=options,
    )


def _emit(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        cfg = _config_from_args(parser.parse_args(argv))
        payload = _HANDLERS[cfg.subcommand](cfg)
    except ValidationError as exc:
        sys.stdout.write(serialize.dumps(
            {"error": {"type": "validation", "message": str(exc)}}
        ))
        return 1
    except NumericalError as exc:
        sys.stdout.write(serialize.dumps(
            {"error": {"type": "numerical", "message": str(exc)}}
        ))
        return 2
    _emit(serialize.dumps(payload), cfg.output_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
