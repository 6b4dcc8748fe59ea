"""
Turning command-line arguments into a RunConfig and RunConfig into objects.
"""
import json
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from cli.domain import RunConfig, UsageError
from submodule import VectorSubmodule
from utils.errors import SpecError
from weights import WeightSet

GLOBAL_KEYS = (
    "command",
    "family",
    "m",
    "k",
    "weights_file",
    "submodule_file",
    "generators",
    "format",
    "out",
    "strict",
    "seed",
)


def _read_json(path: str, option: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SpecError(f"cannot read {path}: {e.strerror}", field=option)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"invalid JSON in {path} at line {e.lineno}: {e.msg}", field=option)


def _parse_generators(raw: str, m: Optional[int], k: Optional[int]) -> Dict[str, Any]:
    try:
        gens = json.loads(raw)
    except json.JSONDecodeError as e:
        raise SpecError(f"invalid JSON: {e.msg}", field="--generators")
    if not isinstance(gens, list):
        raise SpecError("expected a JSON list", field="--generators")
    if m is None:
        first = gens[0] if gens else None
        alpha = first.get("alpha") if isinstance(first, dict) else first
        if not isinstance(alpha, list):
            raise SpecError("cannot infer the dimension; pass --m", field="--generators")
        m = len(alpha)
    data: Dict[str, Any] = {"m": m, "generators": gens}
    if any(isinstance(g, dict) for g in gens):
        data["k"] = k if k is not None else 1
    return data


def parse_window(raw: Optional[str]) -> Optional[Tuple[int, int]]:
    """Read ``lo:hi`` into a pair of shell degrees."""
    if raw is None:
        return None
    parts = raw.split(":")
    try:
        lo, hi = (int(v) for v in parts)
    except ValueError:
        raise UsageError(f"--window expects lo:hi, got {raw!r}")
    return lo, hi


def build_run_config(args, seed_default: int) -> RunConfig:
    """
    Collect the parsed arguments into a RunConfig.

    Args:
        args: argparse namespace
        seed_default: Seed used when ``--seed`` is absent

    Returns:
        RunConfig holding JSON-form specs and the subcommand parameters
    """
    weights = None
    if args.weights_file:
        weights = _read_json(args.weights_file, "--weights-file")
    elif args.m is not None:
        weights = {"m": args.m, "family": args.family}

    m = args.m
    if m is None and isinstance(weights, dict) and isinstance(weights.get("m"), int):
        m = weights["m"]

    submodule = None
    if args.submodule_file:
        submodule = _read_json(args.submodule_file, "--submodule-file")
    elif args.generators:
        submodule = _parse_generators(args.generators, m, args.k)

    if weights is None and isinstance(submodule, dict) and isinstance(submodule.get("m"), int):
        weights = {"m": submodule["m"], "family": args.family}

    params = {
        key: value
        for key, value in sorted(vars(args).items())
        if key not in GLOBAL_KEYS and value is not None
    }
    return RunConfig(
        command=args.command,
        weights=weights,
        submodule=submodule,
        params=params,
        output_format=args.format,
        out=args.out,
        strict=bool(args.strict),
        seed=args.seed if args.seed is not None else seed_default,
    )


def weights_from(run: RunConfig) -> WeightSet:
    if run.weights is None:
        raise SpecError("no weights given; pass --m with --family, or --weights-file", field="--m")
    return WeightSet.from_dict(run.weights)


def submodule_from(run: RunConfig, rank_cutoff: float, required: bool = True) -> Optional[VectorSubmodule]:
    if run.submodule is None:
        if required:
            raise SpecError("no submodule given; pass --generators or --submodule-file", field="--generators")
        return None
    return VectorSubmodule.from_dict(run.submodule, rank_cutoff)
