"""Turn engine results into reports: JSON, CSV rows and Jinja2 text.

Every report is first built as a plain dict with a fixed key order, so the
JSON, CSV and text renderings of the same inputs are byte-identical across
runs. Rationals are written as ``num/den`` strings.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import os
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any

from jinja2 import Environment
from jinja2 import FileSystemLoader
from jinja2 import StrictUndefined

from syzcert import __version__
from syzcert.arith import DigitVector
from syzcert.arith import format_rational
from syzcert.arith import parse_rational
from syzcert.bundle_model import PadicExpansion
from syzcert.bundle_model import expansion
from syzcert.criteria import Case
from syzcert.criteria import Certificate
from syzcert.criteria import CurveStats
from syzcert.criteria import Obligation
from syzcert.criteria import Relation
from syzcert.criteria import StabilityVerdict
from syzcert.criteria import ThresholdResult
from syzcert.criteria import Verdict
from syzcert.criteria import certify_case
from syzcert.here import TEMPLATES
from syzcert.lattice import DEFAULT_CAP
from syzcert.lattice import class_weight
from syzcert.lattice import classify_support
from syzcert.lattice import crude_margin
from syzcert.lattice import enumerate_supports
from syzcert.resources import get_resources


log = logging.getLogger(__name__)

Report = dict[str, Any]

SWEEP_COLUMNS = (
    "n",
    "p",
    "d",
    "valuation",
    "digits",
    "case",
    "verdict",
    "n_obligations",
    "n_failed",
    "min_margin_note",
)

templates = Environment(
    loader=FileSystemLoader(TEMPLATES),
    undefined=StrictUndefined,
    keep_trailing_newline=True,
    trim_blocks=True,
    lstrip_blocks=True,
)


def expansion_to_dict(exp: PadicExpansion) -> Report:
    """Little-endian digits of the full degree plus its valuation."""
    return {"digits": list(exp.digits), "valuation": exp.valuation}


def obligation_to_dict(o: Obligation) -> Report:
    """One obligation row."""
    return {
        "name": o.name,
        "lhs": format_rational(o.lhs),
        "rel": o.rel.value,
        "rhs": format_rational(o.rhs),
        "holds": o.holds,
        "context": o.context,
    }


def obligation_from_dict(row: Report) -> Obligation:
    """Inverse of :func:`obligation_to_dict`."""
    return Obligation(
        name=row["name"],
        lhs=parse_rational(row["lhs"]),
        rel=Relation(row["rel"]),
        rhs=parse_rational(row["rhs"]),
        holds=row["holds"],
        context=row["context"],
    )


def certificate_to_dict(cert: Certificate) -> Report:
    """The published certificate schema."""
    return {
        "kind": cert.kind,
        "tool_version": __version__,
        "params": {"n": cert.n, "p": cert.p, "d": cert.d},
        "expansion": expansion_to_dict(cert.expansion),
        "case": cert.case.value if cert.case else None,
        "verdict": cert.verdict.value,
        "all_hold": cert.all_hold,
        "obligations": [obligation_to_dict(o) for o in cert.obligations],
        "notes": list(cert.notes),
    }


def certificate_from_json(payload: str | Report) -> Certificate:
    """Parse a certificate report back into a :class:`Certificate`."""
    data = json.loads(payload) if isinstance(payload, str) else payload
    params = data["params"]
    valuation = data["expansion"]["valuation"]
    core = tuple(data["expansion"]["digits"][valuation:])
    exp = PadicExpansion(
        p=params["p"], valuation=valuation, core_digits=DigitVector(params["p"], core)
    )
    return Certificate(
        n=params["n"],
        p=params["p"],
        d=params["d"],
        expansion=exp,
        case=Case(data["case"]) if data["case"] else None,
        verdict=Verdict(data["verdict"]),
        obligations=tuple(obligation_from_dict(row) for row in data["obligations"]),
        notes=tuple(data["notes"]),
        kind=data["kind"],
    )


def classification_to_dict(n: int, p: int, d: int, verdict: StabilityVerdict) -> Report:
    """Case label and verdict for ``classify``."""
    return {
        "kind": "classification",
        "tool_version": __version__,
        "params": {"n": n, "p": p, "d": d},
        "expansion": expansion_to_dict(expansion(d, p)),
        "case": verdict.case.value if verdict.case else None,
        "verdict": (Verdict.STABLE if verdict.stable else Verdict.UNKNOWN).value,
    }


def bounds_to_dict(
    n: int,
    d: int,
    lower: Fraction,
    upper: Fraction,
    p: int | None = None,
    obligations: Iterable[Obligation] = (),
) -> Report:
    """The slope sandwich and, when ``p`` is known, its proof obligations."""
    return {
        "kind": "mu_max_bounds",
        "tool_version": __version__,
        "params": {"n": n, "p": p, "d": d},
        "lower": format_rational(lower),
        "upper": format_rational(upper),
        "obligations": [obligation_to_dict(o) for o in obligations],
    }


def threshold_to_dict(result: ThresholdResult) -> Report:
    """Scan outcome with the per-degree evidence."""
    q = result.query
    return {
        "kind": "threshold",
        "tool_version": __version__,
        "params": {
            "n": q.n,
            "r": q.r,
            "hn": q.hn,
            "disc": format_rational(q.disc),
            "horizon": q.horizon,
            "char_p": q.char_p,
        },
        "first_pass": result.first_pass,
        "stable_from": result.stable_from,
        "classical_window": list(result.classical_window),
        "evidence": [[d, ok] for d, ok in result.evidence],
    }


def curve_to_dict(stats: CurveStats, d: int | None = None) -> Report:
    """Curve syzygy arithmetic."""
    return {
        "kind": "curve",
        "tool_version": __version__,
        "params": {"g": stats.genus, "deg_l": stats.deg_l, "d": d},
        "rank": stats.rank,
        "deg_dual": stats.deg_dual,
        "slope_dual": format_rational(stats.slope_dual),
    }


def support_to_dict(n: int, p: int, d: int, cap: int = DEFAULT_CAP) -> Report:
    """Margin table over every admissible support."""
    rows = []
    for support in enumerate_supports(n, p, d, cap):
        result = crude_margin(support)
        classes = classify_support(support)
        rows.append(
            {
                "support": list(support.indices),
                "margin": format_rational(result.margin),
                "conclusive": result.conclusive,
                "choice": {str(i): c for i, c in result.choice.items()},
                "classes": {str(j): len(c) for j, c in classes.items()},
                "class_weight": class_weight(n, classes),
            }
        )
    conclusive = sum(1 for row in rows if row["conclusive"])
    return {
        "kind": "support_table",
        "tool_version": __version__,
        "params": {"n": n, "p": p, "d": d, "cap": cap},
        "rows": rows,
        "summary": {"conclusive": conclusive, "inconclusive": len(rows) - conclusive},
    }


def _slack(o: Obligation) -> Fraction:
    if o.rel in (Relation.LT, Relation.LE):
        return o.rhs - o.lhs
    return o.lhs - o.rhs


def min_margin_note(cert: Certificate) -> str:
    """Tightest obligation as ``name[context]=slack``."""
    if not cert.obligations:
        return ""
    tightest = min(cert.obligations, key=_slack)
    context = "" if tightest.context is None else f"[{tightest.context}]"
    return f"{tightest.name}{context}={format_rational(_slack(tightest))}"


def sweep_row(params: tuple[int, int, int]) -> Report:
    """Certify one degree and flatten the result into a sweep row."""
    n, p, d = params
    cert = certify_case(n, p, d)
    return {
        "n": n,
        "p": p,
        "d": d,
        "valuation": cert.expansion.valuation,
        "digits": ",".join(str(t) for t in cert.expansion.digits),
        "case": cert.case.value if cert.case else "Unknown",
        "verdict": cert.verdict.value,
        "n_obligations": len(cert.obligations),
        "n_failed": len(cert.failed),
        "min_margin_note": min_margin_note(cert),
    }


def sweep_rows(n: int, p: int, d_min: int, d_max: int, jobs: int | None = None) -> list[Report]:
    """One row per degree, ordered by ``d`` whatever the worker count."""
    if not 1 <= d_min <= d_max:
        raise ValueError(f"Need 1 <= dmin <= dmax, got dmin={d_min}, dmax={d_max}")
    work = [(n, p, d) for d in range(d_min, d_max + 1)]
    workers = jobs if jobs is not None else os.cpu_count() or 1
    if workers <= 1 or len(work) == 1:
        return [sweep_row(w) for w in work]
    log.debug("Sweeping %d degrees on %d workers", len(work), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(sweep_row, work, chunksize=max(1, len(work) // (4 * workers))))


def sweep_to_dict(n: int, p: int, rows: list[Report]) -> Report:
    """JSON form of a sweep."""
    return {"kind": "sweep", "tool_version": __version__, "params": {"n": n, "p": p}, "rows": rows}


def to_json(report: Report) -> str:
    """Indented JSON with a trailing newline."""
    return json.dumps(report, indent=2) + "\n"


def to_csv(rows: list[Report]) -> str:
    """RFC 4180 CSV with the sweep columns."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=SWEEP_COLUMNS, lineterminator="\r\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def render_text(report: Report) -> str:
    """Human-readable report from the ``<kind>.jinja2`` template."""
    template = templates.get_template(f"{report['kind']}.jinja2")
    case_note = None
    if report.get("case"):
        case_note = get_resources().cases.get(report["case"])
    return template.render(report=report, case_note=case_note)
