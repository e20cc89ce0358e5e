"""Report rendering for hexagauss.

This module turns batch verification results and Euler decompositions into
JSON, plain text or CSV.

Example:
    >>> from hexagauss.renderers.report import render_batch
    >>> print(render_batch(batch, "text"))
    h4: 3 instance(s), seed 7, tolerance 1e-08 -> PASS
    ...
"""

import csv
import io
import json
import logging
from typing import Any, Literal, TextIO

from hexagauss.clifford import Multivector, format_multivector
from hexagauss.core import BatchReport
from hexagauss.rotations import EulerFamily, EulerTriple, euler_compose

logger = logging.getLogger(__name__)

ReportFormat = Literal["json", "text"]

CSV_FIELDS = ("index", "space", "family", "name", "residual", "pass")


def _dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def render_batch(batch: BatchReport, fmt: ReportFormat = "json") -> str:
    """Render a batch report.

    Args:
        batch: Verification results.
        fmt: ``"json"`` for the machine-readable report, ``"text"`` for one
            line per instance.

    Returns:
        The rendered report, ending in a newline.

    Raises:
        ValueError: If the format is unknown.
    """
    if fmt == "json":
        return _dumps(batch.to_dict())
    if fmt != "text":
        raise ValueError(f"Unknown report format: {fmt!r}")

    status = "PASS" if batch.passed else "FAIL"
    lines = [
        f"{batch.space}: {len(batch.instances)} instance(s), seed {batch.seed}, "
        f"tolerance {batch.tolerance:g} -> {status}"
    ]
    for result in batch.instances:
        eps = "" if result.epsilon is None else f" eps={result.epsilon:+d}"
        worst = max((r.max_residual for r in result.reports), default=0.0)
        worst = max([worst, *result.invariants.values()])
        mark = "ok" if result.passed else "FAILED"
        line = f"  #{result.index} {mark}{eps} max={worst:.3e}"
        if not result.passed:
            line += f" [{', '.join(result.failing())}]"
            if result.error:
                line += f" {result.error}"
        lines.append(line)

    lines.append("max residuals:")
    for name, value in sorted(batch.max_residuals().items()):
        lines.append(f"  {name} {value:.3e}")
    counts = batch.epsilon_counts()
    if counts:
        lines.append("epsilon: " + ", ".join(f"{k:+d} x{v}" for k, v in counts.items()))
    return "\n".join(lines) + "\n"


def write_csv(batch: BatchReport, stream: TextIO) -> int:
    """Write one row per (instance, identity) residual.

    Returns:
        Number of data rows written.
    """
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    rows = 0
    for result in batch.instances:
        for name, value in result.invariants.items():
            writer.writerow(
                [
                    result.index,
                    result.space,
                    "invariant",
                    name,
                    f"{value:.17g}",
                    value <= batch.tolerance,
                ]
            )
            rows += 1
        for report in result.reports:
            for name, value in {**report.formulas, **report.entries}.items():
                writer.writerow(
                    [
                        result.index,
                        result.space,
                        report.space,
                        name,
                        f"{value:.17g}",
                        value <= report.tolerance,
                    ]
                )
                rows += 1
    logger.debug(f"Wrote {rows} CSV row(s)")
    return rows


def render_csv(batch: BatchReport) -> str:
    """CSV residual dump as a string."""
    buffer = io.StringIO()
    write_csv(batch, buffer)
    return buffer.getvalue()


def _triple_row(t: EulerTriple, a: Multivector) -> dict[str, float]:
    residual = float(max(abs(c) for c in (euler_compose(t) - a).coeffs))
    return {"alpha": t.alpha, "beta": t.beta, "gamma": t.gamma, "residual": residual}


def render_euler(
    a: Multivector,
    solutions: list[EulerTriple] | EulerFamily,
    fmt: ReportFormat = "text",
) -> str:
    """Render the Euler triples of a unit quaternion.

    Regular elements list every triple with its recomposition residual; a
    non-regular element shows the family descriptor and one sample member
    per branch.
    """
    if isinstance(solutions, EulerFamily):
        samples = [solutions.triple(0.0, k) for k in range(len(solutions.branches))]
        data: dict[str, Any] = {
            "input": format_multivector(a),
            "regular": False,
            "family": {
                "constraint": solutions.constraint,
                "tag": solutions.tag,
                "branches": [{"beta": b, "value": v} for b, v in solutions.branches],
            },
            "samples": [_triple_row(t, a) for t in samples],
        }
    else:
        data = {
            "input": format_multivector(a),
            "regular": True,
            "solutions": [_triple_row(t, a) for t in solutions],
        }
    if fmt == "json":
        return _dumps(data)
    if fmt != "text":
        raise ValueError(f"Unknown report format: {fmt!r}")

    lines = [f"a = {data['input']}"]
    if data["regular"]:
        count = len(data["solutions"])
        lines.append(f"{count} solutions (alpha, beta, gamma, residual):")
        rows = data["solutions"]
    else:
        family = data["family"]
        op = "+" if family["constraint"] == "sum" else "-"
        lines.append(f"degenerate: {family['tag']}")
        for branch in family["branches"]:
            beta, value = branch["beta"], branch["value"]
            lines.append(f"  beta = {beta!r}, gamma {op} alpha = {value!r}")
        lines.append("samples with alpha = 0 (alpha, beta, gamma, residual):")
        rows = data["samples"]
    for row in rows:
        lines.append(
            f"  {row['alpha']!r} {row['beta']!r} {row['gamma']!r} {row['residual']:.3e}"
        )
    return "\n".join(lines) + "\n"
