"""
Subcommand handlers.

Each handler takes a RunConfig plus the loaded Config and returns a
CommandOutput; rendering and exit codes are handled by ``cli.main``.
"""
import io
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from cli.domain import CommandOutput, RunConfig, UsageError
from cli.specs import parse_window, submodule_from, weights_from
from config import Config
from decomp import audit, corner_reduce, full_reduction, reduce_axis
from lattice import LatticeSlice, cofinite_difference, common_zero_coordinates, corner
from oracle import build, compare_operator, dense_operator, write_matrix_csv
from orchestrator import ReportOrchestrator
from samuel import dimension
from schatten import SchattenError, ShellSpectra, Verdict, verdict
from schatten.conditions import CONDITIONS, ConditionEvaluator
from shiftops import (
    LatticeOperator,
    cross_commutator,
    edge_operator_gram,
    module_domain,
    shift_op,
)
from submodule import VectorSubmodule, random_submodule
from utils.logger import get_logger
from weights import WeightSet, check_contractive, check_spherical

logger = get_logger(__name__)

OPERATOR_KINDS = ("cross", "self", "shift", "edge")
ORACLE_TOLERANCE = 1e-12


def _encode(value: Any) -> Any:
    value = complex(value)
    if value.imag == 0:
        return value.real
    return [value.real, value.imag]


def _axis(params: Dict[str, Any], key: str, m: int, default: int = 1) -> int:
    value = int(params.get(key, default))
    if not 1 <= value <= m:
        raise UsageError(f"--{key} must be between 1 and {m}, got {value}")
    return value - 1


def _operator(W: WeightSet, S: Optional[VectorSubmodule], params: Dict[str, Any]) -> LatticeOperator:
    kind = params.get("kind", "self")
    if kind not in OPERATOR_KINDS:
        raise UsageError(f"--kind must be one of {OPERATOR_KINDS}, got {kind!r}")
    domain_kind = params.get("domain", "ambient")
    k = S.k if S is not None else 1
    domain = module_domain(domain_kind, W.m, S if domain_kind != "ambient" else None, k)
    i = _axis(params, "i", W.m)
    if kind == "shift":
        return shift_op(W, i, domain)
    if kind == "self":
        return cross_commutator(W, i, i, domain)
    if kind == "edge":
        level = int(params.get("level", 0))
        return edge_operator_gram(W, i, LatticeSlice(i, level), domain)
    return cross_commutator(W, i, _axis(params, "j", W.m), domain)


def _fmt_point(point) -> str:
    return "(" + ",".join(str(int(v)) for v in point) + ")"


def weights_check(run: RunConfig, config: Config) -> CommandOutput:
    W = weights_from(run)
    params = run.params
    max_degree = int(params.get("max_degree", 100))
    contractive = check_contractive(W, max_degree)
    spherical = check_spherical(W, max_degree)
    data: Dict[str, Any] = {
        "weights": W.to_dict(),
        "contractive": contractive.to_dict(),
        "spherical": spherical.to_dict(),
    }
    failed = not contractive.holds or not spherical.holds
    conditions = params.get("condition") or []
    if conditions:
        evaluator = ConditionEvaluator()
        window = parse_window(params.get("window"))
        reports = {}
        for which in conditions:
            if which not in CONDITIONS:
                raise UsageError(f"--condition must be one of {CONDITIONS}, got {which!r}")
            if which == "star":
                cond_params: Dict[str, Any] = {"max_degree": max_degree}
            else:
                cond_params = {
                    "max_degree": int(params.get("max_degree", config.max_degree)),
                    "margin": float(params.get("margin", config.margin)),
                    "window": window,
                    "threads": int(params.get("threads", config.threads)),
                }
            if which == "star_star_p":
                ps = params.get("p") or [float(W.m + 1)]
                cond_params["p"] = ps[0]
            report = evaluator.check(W, which, cond_params)
            reports[which] = report.to_dict()
            failed = failed or report.verdict == "violated"
        data["conditions"] = reports
    rows: List[List[Any]] = [["condition", "verdict", "witness", "axis", "value", "max_value"]]
    for result in (contractive, spherical):
        rows.append([
            result.name,
            result.verdict,
            _fmt_point(result.witness.entries) if result.witness else "",
            "" if result.axis is None else result.axis + 1,
            "" if result.value is None else result.value,
            result.max_value,
        ])
    return CommandOutput(data=data, csv_rows=rows, strict_failure=failed)


def commutator(run: RunConfig, config: Config) -> CommandOutput:
    W = weights_from(run)
    S = submodule_from(run, config.rank_cutoff, required=run.params.get("domain", "ambient") != "ambient")
    op = _operator(W, S, dict(run.params, kind=run.params.get("kind", "cross")))
    max_degree = int(run.params.get("max_degree", 6))
    entries = []
    rows: List[List[Any]] = [["shell", "beta"] + [f"s{r + 1}" for r in range(op.k)]]
    for n in range(max_degree + 1):
        points = op.shell_points(n)
        if len(points) == 0:
            continue
        blocks = op.blocks(points)
        for point, block in zip(points, blocks):
            singular = [float(s) for s in np.linalg.svd(block, compute_uv=False)]
            rows.append([n, _fmt_point(point)] + singular)
            target = point + op.delta
            if (target < 0).any() or not np.any(block):
                continue
            entries.append({
                "beta": [int(v) for v in point],
                "target": [int(v) for v in target],
                "block": [[_encode(v) for v in row] for row in block],
                "singular_values": singular,
            })
    data = {"operator": op.describe(), "max_degree": max_degree, "entries": entries}
    return CommandOutput(data=data, csv_rows=rows)


def schatten(run: RunConfig, config: Config) -> CommandOutput:
    W = weights_from(run)
    params = run.params
    S = submodule_from(run, config.rank_cutoff, required=params.get("domain", "ambient") != "ambient")
    op = _operator(W, S, params)
    max_degree = int(params.get("max_degree", config.max_degree))
    margin = float(params.get("margin", config.margin))
    window = parse_window(params.get("window"))
    ps = params.get("p") or [float(W.m + 1)]
    spectra = ShellSpectra(op, max_degree, int(params.get("threads", config.threads)))

    results = []
    rows: List[List[Any]] = [["shell", "count", "shellsum", "cumulative", "p", "slope", "verdict"]]
    failed = False
    for p in ps:
        series = spectra.series(p)
        try:
            result = verdict(spectra, p, margin=margin, window=window)
            entry = result.to_dict()
            slope = result.schatten_fit.slope if result.schatten_fit else ""
            outcome = result.verdict.value
        except SchattenError as e:
            entry = {"verdict": Verdict.INCONCLUSIVE.value, "p": float(p), "error": str(e)}
            slope, outcome = "", Verdict.INCONCLUSIVE.value
        failed = failed or outcome == Verdict.DIVERGED.value
        entry["series"] = series.to_dict()
        results.append(entry)
        for s in series.shells:
            rows.append([s.n, s.count, s.shellsum, s.cumulative, float(p), slope, outcome])
    data = {"operator": op.describe(), "max_degree": max_degree, "results": results}
    return CommandOutput(data=data, csv_rows=rows, strict_failure=failed)


def decompose(run: RunConfig, config: Config) -> CommandOutput:
    S = submodule_from(run, config.rank_cutoff)
    params = run.params
    if params.get("corner"):
        if S.k != 1:
            raise UsageError("--corner needs a scalar submodule")
        result = corner_reduce(S.support())
        return CommandOutput(data={"corner_reduction": result.to_dict()})
    if params.get("axis") is not None:
        tree = reduce_axis(S, _axis(params, "axis", S.m))
    else:
        tree = full_reduction(S)
    return CommandOutput(data=tree.to_dict(), text=tree.render_text())


def audit_command(run: RunConfig, config: Config) -> CommandOutput:
    W = weights_from(run)
    S = submodule_from(run, config.rank_cutoff)
    params = run.params
    ps = params.get("p") or []
    tree = full_reduction(S)
    report = audit(
        S,
        tree,
        W,
        p=ps[0] if ps else None,
        max_degree=int(params.get("max_degree", config.max_degree)),
        margin=float(params.get("margin", config.margin)),
        window=parse_window(params.get("window")),
        threads=int(params.get("threads", config.threads)),
    )
    rows: List[List[Any]] = [["block", "mechanism", "operator", "verdict", "slope"]]
    for e in report.entries:
        rows.append([e.block, e.mechanism, e.operator, e.verdict, "" if e.slope is None else e.slope])
    return CommandOutput(
        data={"tree": tree.to_dict(), "audit": report.to_dict()},
        csv_rows=rows,
        strict_failure=report.verdict == Verdict.DIVERGED.value,
    )


def _scalar_points(run: RunConfig) -> List[List[int]]:
    data = run.submodule or {}
    gens = data.get("generators", [])
    if any(not isinstance(g, list) for g in gens):
        raise UsageError("expected a list of exponents, e.g. [[2,3],[3,3]]")
    return gens


def generators(run: RunConfig, config: Config) -> CommandOutput:
    S = submodule_from(run, config.rank_cutoff)
    B = S.support()
    data: Dict[str, Any] = {"m": B.m, "generators": [g.to_list() for g in B.generators]}
    if not B.is_empty:
        data["corner"] = corner(B).to_list()
        data["cofinite_difference"] = cofinite_difference(B).to_dict()
    rows = [[f"a{i + 1}" for i in range(B.m)]] + [g.to_list() for g in B.generators]
    return CommandOutput(data=data, csv_rows=rows)


def dimension_command(run: RunConfig, config: Config) -> CommandOutput:
    S = submodule_from(run, config.rank_cutoff)
    report = dimension(S)
    rows: List[List[Any]] = [["n", "shell_count", "cumulative"]]
    for n, (count, total) in enumerate(zip(report.counting.shell_counts, report.counting.cumulative)):
        rows.append([n, count, total])
    return CommandOutput(data=report.to_dict(), csv_rows=rows)


def zeroset(run: RunConfig, config: Config) -> CommandOutput:
    points = _scalar_points(run)
    sets = common_zero_coordinates(points)
    encoded = [sorted(a + 1 for a in s) for s in sets]
    text = "\n".join("=".join(f"z{a}" for a in s) + "=0" for s in encoded) + "\n"
    m = run.submodule.get("m") if run.submodule else None
    rows = [["coordinates"]] + [[" ".join(str(a) for a in s)] for s in encoded]
    return CommandOutput(data={"m": m, "zero_sets": encoded}, csv_rows=rows, text=text)


def oracle_compare(run: RunConfig, config: Config) -> CommandOutput:
    W = weights_from(run)
    params = run.params
    domain_kind = params.get("domain", "ambient")
    max_degree = int(params.get("max_degree", 10))
    count = int(params.get("random", 0))

    if count > 0:
        rng = np.random.default_rng(run.seed)
        k = int(params.get("random_k", 1))
        subjects = [random_submodule(rng, W.m, k) for _ in range(count)]
    else:
        subjects = [submodule_from(run, config.rank_cutoff, required=domain_kind != "ambient")]

    comparisons = []
    failed = False
    op = trunc = None
    for S in subjects:
        op = _operator(W, S, params)
        trunc = build(W, domain_kind, S if domain_kind != "ambient" else None, max_degree, S.k if S else 1)
        result = compare_operator(op, trunc)
        entry = result.to_dict()
        if S is not None and count > 0:
            entry["submodule"] = S.to_dict()
        comparisons.append(entry)
        failed = failed or result.deviation > ORACLE_TOLERANCE or result.shell_deviation > ORACLE_TOLERANCE
    data = {"tolerance": ORACLE_TOLERANCE, "truncation": trunc.describe(), "comparisons": comparisons}

    buffer = io.StringIO()
    write_matrix_csv(trunc, dense_operator(op, trunc), buffer, ambient=True)
    return CommandOutput(data=data, csv_text=buffer.getvalue(), strict_failure=failed)


def _report_failed(sections: Dict[str, Any]) -> bool:
    conditions = sections.get("conditions", {})
    if any(c.get("verdict") == "violated" for c in conditions.values()):
        return True
    for verdicts in sections.get("ambient", {}).values():
        if any(v.get("verdict") == Verdict.DIVERGED.value for v in verdicts.values()):
            return True
    audit_section = sections.get("decomposition", {}).get("audit", {})
    if audit_section.get("verdict") == Verdict.DIVERGED.value:
        return True
    return sections.get("threshold", {}).get("consistent") is False


def report(run: RunConfig, config: Config) -> CommandOutput:
    W = weights_from(run)
    S = submodule_from(run, config.rank_cutoff, required=False)
    params = run.params
    orchestrator = ReportOrchestrator(config)
    window = parse_window(params.get("window"))
    request = orchestrator.request(
        W,
        ps=params.get("p"),
        qs=params.get("q"),
        max_degree=params.get("max_degree"),
        margin=params.get("margin"),
        window=list(window) if window else None,
        threads=params.get("threads"),
    )
    result = orchestrator.run(W, S, request)
    failed = result.status.value != "success" or _report_failed(result.sections)
    return CommandOutput(data=result.to_dict(), strict_failure=failed)


HANDLERS: Dict[str, Callable[[RunConfig, Config], CommandOutput]] = {
    "weights-check": weights_check,
    "commutator": commutator,
    "schatten": schatten,
    "decompose": decompose,
    "audit": audit_command,
    "generators": generators,
    "dimension": dimension_command,
    "zeroset": zeroset,
    "oracle-compare": oracle_compare,
    "report": report,
}
