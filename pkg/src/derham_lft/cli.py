"""Command line interface.

    derham-lft <validate|eval|plot|classify|dimension|sample|stationary>
               [--config FILE | --preset NAME:PARAM] [--depth K] [--tol T]
               [--seed S] [--out PATH] [--mode exact|approx] ...

Config files are JSON with a top-level "schema": 1.  Matrix entries are
strings: "num/den" or integers parse to exact rationals, anything with a
decimal point or exponent parses to a float and switches the whole
system to approximate mode.  Alternatively "preset": {"lebesgue": "1/3"}
or {"walk": "1"}.  Reports are JSON (CSV for the value grids), written
to --out or stdout.

Exit codes: 0 ok, 1 validation or analysis precondition failure,
2 parse error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys as _sys
from fractions import Fraction
from typing import Optional

import numpy as np

from . import __version__
from .analysis import ABSOLUTELY_CONTINUOUS, classify, dimension_bounds
from .errors import (
    ConditionHoldsError,
    DeRhamError,
    DomainError,
    NonConvergenceError,
    NotAbsolutelyContinuousError,
    ValidationError,
)
from .measure import DEFAULT_SEED, entropy_rate_estimate, sample_path
from .numerics import MoebiusMatrix, Scalar, is_exact
from .presets import PRESETS, force_approx
from .solution import dyadic_value_table
from .stationary import doubling_map_change_of_measure, stationarity_check
from .system import DeRhamSystem, binary_entropy, transpose_fixed_points, validate

SCHEMA_VERSION = 1

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class ConfigError(ValueError):
    """Unparseable configuration; maps to exit code 2."""


def parse_scalar(text: str) -> Scalar:
    """Rational strings stay exact; decimal notation becomes a float."""
    text = text.strip()
    if _RATIONAL_RE.match(text):
        return Fraction(text)
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"cannot parse scalar {text!r}") from None
    if not np.isfinite(value):
        raise ConfigError(f"scalar {text!r} is not finite")
    return value


def _parse_matrix(name: str, raw) -> MoebiusMatrix:
    if not isinstance(raw, (list, tuple)) or len(raw) != 4:
        raise ConfigError(f"{name} must be a list of four entry strings")
    return MoebiusMatrix(*(parse_scalar(str(e)) for e in raw))


def _system_from_preset(name: str, param: str) -> DeRhamSystem:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; expected one of {sorted(PRESETS)}")
    return PRESETS[name](parse_scalar(param))


def load_system(args: argparse.Namespace) -> tuple[DeRhamSystem, dict]:
    """Build the system from --preset or --config, honoring --mode."""
    meta: dict = {"schema": SCHEMA_VERSION}
    if args.preset and args.config:
        raise ConfigError("give exactly one of --preset and --config")
    if args.preset:
        if ":" not in args.preset:
            raise ConfigError("preset must look like name:param, e.g. lebesgue:1/3")
        name, param = args.preset.split(":", 1)
        system = _system_from_preset(name, param)
        meta["preset"] = args.preset
    elif args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise _IOFailure(f"cannot read config: {exc}") from exc
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"config parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
            ) from exc
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object")
        has_matrices = "A0" in doc or "A1" in doc
        has_preset = "preset" in doc
        if has_matrices == has_preset:
            raise ConfigError("config needs exactly one of (A0 and A1) or preset")
        if has_preset:
            preset = doc["preset"]
            if not (isinstance(preset, dict) and len(preset) == 1):
                raise ConfigError('preset must be an object like {"lebesgue": "1/3"}')
            (name, param), = preset.items()
            system = _system_from_preset(name, str(param))
        else:
            if "A0" not in doc or "A1" not in doc:
                raise ConfigError("config needs both A0 and A1")
            system = validate(
                _parse_matrix("A0", doc["A0"]), _parse_matrix("A1", doc["A1"])
            )
        if "label" in doc:
            meta["label"] = str(doc["label"])
    else:
        raise ConfigError("one of --preset or --config is required")

    if args.mode == "approx" and system.exact:
        system = force_approx(system)
    elif args.mode == "exact" and not system.exact:
        raise ConfigError(
            "exact mode requested but the input only has a floating-point "
            "representation"
        )
    meta["mode"] = system.mode
    return system, meta


class _IOFailure(OSError):
    pass


def _scalar_repr(x: Scalar):
    """Exact scalars as strings, floats as JSON numbers."""
    if is_exact(x):
        return str(Fraction(x))
    return float(x)


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        _sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise _IOFailure(f"cannot write {out!r}: {exc}") from exc


def _emit_json(doc: dict, out: Optional[str]) -> None:
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", out)


def cmd_validate(args) -> int:
    meta: dict = {"schema": SCHEMA_VERSION, "command": "validate"}
    try:
        system, meta_sys = load_system(args)
    except ValidationError as exc:
        meta["valid"] = False
        meta["violations"] = [
            {"condition": cond, "detail": detail} for cond, detail in exc.violations
        ]
        _emit_json(meta, args.out)
        return 1
    meta.update(meta_sys)
    fp0, (fp_minus1, fp1) = transpose_fixed_points(system)
    meta.update(
        valid=True,
        conditions={"A1": True, "A2": True, "A3": True},
        alpha=_scalar_repr(system.alpha),
        beta=_scalar_repr(system.beta),
        gamma=_scalar_repr(system.gamma),
        fixed_points={
            "transposed_A0": _scalar_repr(fp0),
            "transposed_A1": [_scalar_repr(fp_minus1), _scalar_repr(fp1)],
        },
    )
    _emit_json(meta, args.out)
    return 0


def cmd_grid(args) -> int:
    system, _ = load_system(args)
    depth = args.depth
    if not 0 <= depth <= 22:
        raise ConfigError("depth must be in [0, 22] for a value grid")
    values = dyadic_value_table(system, depth)
    n = 1 << depth
    lines = ["x,f_lower,f_upper"]
    for j, v in enumerate(values):
        x = j / n
        fv = float(v)
        lines.append(f"{x!r},{fv!r},{fv!r}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _bounds_fields(system: DeRhamSystem) -> dict:
    bounds = dimension_bounds(system)
    return {
        "entropy_max_nats": bounds.entropy_max,
        "entropy_min_nats": bounds.entropy_min,
        "dim_upper": bounds.dim_upper,
        "dim_lower": bounds.dim_lower,
        "argmax_location": _scalar_repr(bounds.argmax_location),
    }


def cmd_classify(args) -> int:
    system, meta = load_system(args)
    report = classify(system)
    doc = dict(meta, command="classify")
    doc.update(
        verdict=report.verdict,
        ac_condition_0=report.ac_condition_0,
        ac_condition_1=report.ac_condition_1,
        exactness=report.exactness,
    )
    if report.verdict == ABSOLUTELY_CONTINUOUS:
        doc["c0"] = _scalar_repr(report.c0)
        if report.exactness == "approx":
            _sys.stderr.write(
                "warning: absolute continuity decided from floating-point input "
                "is not certifiable\n"
            )
    else:
        doc.update(_bounds_fields(system))
        doc["defect_bound"] = report.defect_bound
    _emit_json(doc, args.out)
    return 0


def cmd_dimension(args) -> int:
    system, meta = load_system(args)
    doc = dict(meta, command="dimension")
    doc.update(_bounds_fields(system))
    _emit_json(doc, args.out)
    return 0


def cmd_sample(args) -> int:
    system, meta = load_system(args)
    n = args.steps
    path = sample_path(system, n, args.seed)
    estimate = entropy_rate_estimate(system, n, args.seed)
    states = [float(t) for t in path.states] if system.exact else path.states
    doc = dict(meta, command="sample")
    doc.update(
        seed=args.seed,
        steps=n,
        digit0_frequency=float(np.mean(path.digits == 0)),
        entropy_rate_estimate=estimate,
        entropy_rate_dim=estimate / binary_entropy(Fraction(1, 2)),
        state_min=float(np.min(states)),
        state_max=float(np.max(states)),
        alpha=_scalar_repr(system.alpha),
        beta=_scalar_repr(system.beta),
    )
    _emit_json(doc, args.out)
    return 0


def cmd_stationary(args) -> int:
    system, meta = load_system(args)
    report = stationarity_check(system, args.depth, args.tol)
    doc = dict(meta, command="stationary")
    doc.update(
        depth=report.depth,
        tol=args.tol,
        max_residual_recursion=float(report.max_residual_recursion),
        max_residual_mass=float(report.max_residual_mass),
        verdict_transfer=report.verdict_transfer,
    )
    if args.quad_depth is not None:
        residual = doubling_map_change_of_measure(
            system, args.shift_depth, args.quad_depth
        )
        doc.update(
            doubling_residual=float(residual),
            shift_depth=args.shift_depth,
            quad_depth=args.quad_depth,
        )
    _emit_json(doc, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="derham-lft",
        description="Analyze solutions of the two-branch functional equation "
        "driven by a pair of linear fractional maps.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, depth_default=None, tol_default=None):
        p.add_argument("--config", help="JSON system description")
        p.add_argument("--preset", help="name:param, e.g. lebesgue:1/3 or walk:1")
        p.add_argument("--mode", choices=["exact", "approx"], default=None)
        p.add_argument("--out", help="write the report here instead of stdout")
        if depth_default is not None:
            p.add_argument("--depth", type=int, default=depth_default)
        if tol_default is not None:
            p.add_argument("--tol", type=float, default=tol_default)
        return p

    common(sub.add_parser("validate", help="check admissibility, print constants"))
    for name in ("eval", "plot"):
        common(
            sub.add_parser(name, help="CSV of f on the dyadic grid j/2^depth"),
            depth_default=8,
        )
    common(sub.add_parser("classify", help="singular vs absolutely continuous"))
    common(sub.add_parser("dimension", help="dimension bounds"))
    p_sample = common(sub.add_parser("sample", help="Monte Carlo digit sampling"))
    p_sample.add_argument("-n", "--steps", type=int, default=100_000)
    p_sample.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_stat = common(
        sub.add_parser("stationary", help="stationarity residual report"),
        depth_default=8,
        tol_default=1e-11,
    )
    p_stat.add_argument("--quad-depth", type=int, default=None)
    p_stat.add_argument("--shift-depth", type=int, default=4)
    return parser


_DISPATCH = {
    "validate": cmd_validate,
    "eval": cmd_grid,
    "plot": cmd_grid,
    "classify": cmd_classify,
    "dimension": cmd_dimension,
    "sample": cmd_sample,
    "stationary": cmd_stationary,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except ConfigError as exc:
        _sys.stderr.write(f"error: {exc}\n")
        return 2
    except _IOFailure as exc:
        _sys.stderr.write(f"error: {exc}\n")
        return 3
    except (
        ValidationError,
        DomainError,
        ConditionHoldsError,
        NotAbsolutelyContinuousError,
        NonConvergenceError,
    ) as exc:
        _sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    except DeRhamError as exc:
        _sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
