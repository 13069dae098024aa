"""Command-line interface for syzcert."""
import logging
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import replace
from pathlib import Path
from typing import Optional

import typer
from rich.console import Console
from rich.logging import RichHandler

from syzcert.arith import parse_rational
from syzcert.criteria import DEFAULT_HORIZON
from syzcert.criteria import DEFAULT_SCAN_LIMIT
from syzcert.criteria import ThresholdQuery
from syzcert.criteria import Verdict
from syzcert.criteria import certify_case
from syzcert.criteria import certify_l8_truncations
from syzcert.criteria import classify
from syzcert.criteria import curve_syzygy_stats
from syzcert.criteria import mu_max_bounds
from syzcert.criteria import mu_max_proof_check
from syzcert.criteria import plane_curve_stats
from syzcert.criteria import restriction_threshold
from syzcert.errors import EnumerationOverflow
from syzcert.errors import ScanLimitExceeded
from syzcert.lattice import DEFAULT_CAP
from syzcert.report import Report
from syzcert.report import bounds_to_dict
from syzcert.report import certificate_to_dict
from syzcert.report import classification_to_dict
from syzcert.report import curve_to_dict
from syzcert.report import render_text
from syzcert.report import support_to_dict
from syzcert.report import sweep_rows
from syzcert.report import sweep_to_dict
from syzcert.report import threshold_to_dict
from syzcert.report import to_csv
from syzcert.report import to_json


log = logging.getLogger("syzcert")

app = typer.Typer(add_completion=False, help="Exact certificates for syzygy bundle semistability.")

LOG_LEVELS = {
    "error": logging.ERROR,
    "warn": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}

EXIT_USAGE = 2
EXIT_UNVERIFIED = 3
EXIT_RESOURCE = 4

N = typer.Option(..., "-n", help="Number of variables.")
P = typer.Option(..., "-p", help="Characteristic, a prime.")
D = typer.Option(..., "-d", help="Degree.")
JSON = typer.Option(False, "--json", help="Emit JSON instead of text.")
OUT = typer.Option(None, "--out", help="Write the report to this file.")


def configure_logging(level: str) -> None:
    """Send log records to stderr through rich."""
    if level not in LOG_LEVELS:
        raise typer.BadParameter(f"SYZ_LOG must be one of {', '.join(LOG_LEVELS)}, got {level!r}")
    logging.basicConfig(
        level=LOG_LEVELS[level],
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_time=False, show_path=False)],
        force=True,
    )


@contextmanager
def exit_codes() -> Iterator[None]:
    """Map library errors onto the documented exit codes."""
    try:
        yield
    except (EnumerationOverflow, ScanLimitExceeded, OSError) as exc:
        log.error("%s", exc)
        raise typer.Exit(EXIT_RESOURCE) from exc
    except ValueError as exc:
        log.error("%s", exc)
        raise typer.Exit(EXIT_USAGE) from exc


def emit(report: Report, as_json: bool, out: Optional[Path]) -> None:
    """Write the rendered report to ``out`` or stdout."""
    text = to_json(report) if as_json else render_text(report)
    if out is None:
        typer.echo(text, nl=False)
        return
    with exit_codes():
        out.write_text(text, encoding="utf-8")
    log.info("Wrote %s report to %s", report["kind"], out)


@app.callback()
def main(
    log_level: str = typer.Option("warn", "--log-level", envvar="SYZ_LOG", hidden=True),
) -> None:
    """Certify semistability inequalities for syzygy bundles in characteristic p."""
    configure_logging(log_level.lower())


@app.command("classify")
def classify_command(
    n: int = N, p: int = P, d: int = D, as_json: bool = JSON, out: Optional[Path] = OUT
) -> None:
    """Report which case of the theorem applies."""
    with exit_codes():
        report = classification_to_dict(n, p, d, classify(n, p, d))
    emit(report, as_json, out)


@app.command()
def certify(
    n: int = N,
    p: int = P,
    d: int = D,
    truncations: bool = typer.Option(False, "--truncations", help="Also check truncations (d < p)."),
    as_json: bool = JSON,
    out: Optional[Path] = OUT,
) -> None:
    """Classify and verify every inequality the matched case relies on."""
    with exit_codes():
        cert = certify_case(n, p, d)
        if truncations:
            extra = certify_l8_truncations(n, p, d)
            verdict = cert.verdict if extra.all_hold else Verdict.UNKNOWN
            cert = replace(
                cert,
                verdict=verdict,
                obligations=cert.obligations + extra.obligations,
                notes=cert.notes + extra.notes,
            )
    emit(certificate_to_dict(cert), as_json, out)
    if cert.verdict is not Verdict.STABLE or not cert.all_hold:
        raise typer.Exit(EXIT_UNVERIFIED)


@app.command()
def bounds(
    n: int = N,
    d: int = D,
    p: Optional[int] = typer.Option(None, "-p", help="Also check the top-digit inequalities."),
    as_json: bool = JSON,
    out: Optional[Path] = OUT,
) -> None:
    """Bounds on the maximal slope of the dual syzygy bundle."""
    with exit_codes():
        lower, upper = mu_max_bounds(n, d)
        obligations = mu_max_proof_check(n, p, d) if p is not None else []
    emit(bounds_to_dict(n, d, lower, upper, p, obligations), as_json, out)
    if not all(o.holds for o in obligations):
        raise typer.Exit(EXIT_UNVERIFIED)


@app.command()
def threshold(
    n: int = N,
    r: int = typer.Option(..., "-r", help="Rank of the bundle being restricted."),
    hn: int = typer.Option(..., "--hn", help="Degree of the polarization, H^n."),
    disc: str = typer.Option("0", "--disc", help="Discriminant, an integer or a/b."),
    horizon: int = typer.Option(DEFAULT_HORIZON, "--horizon"),
    char_p: Optional[int] = typer.Option(None, "--char-p", help="List passing degrees below p."),
    scan_limit: int = typer.Option(DEFAULT_SCAN_LIMIT, "--scan-limit"),
    as_json: bool = JSON,
    out: Optional[Path] = OUT,
) -> None:
    """Smallest restriction degree from which both conditions hold for good."""
    with exit_codes():
        query = ThresholdQuery(
            n=n,
            r=r,
            hn=hn,
            disc=parse_rational(disc),
            horizon=horizon,
            char_p=char_p,
            scan_limit=scan_limit,
        )
        report = threshold_to_dict(restriction_threshold(query))
    emit(report, as_json, out)


@app.command()
def sweep(
    n: int = N,
    p: int = P,
    dmin: int = typer.Option(1, "--dmin"),
    dmax: int = typer.Option(..., "--dmax"),
    jobs: Optional[int] = typer.Option(None, "--jobs", help="Worker processes, default all cores."),
    as_csv: bool = typer.Option(False, "--csv", help="Emit CSV rows, the default."),
    as_json: bool = typer.Option(False, "--json", help="Emit JSON instead of CSV."),
    out: Optional[Path] = OUT,
) -> None:
    """Certify every degree in a range."""
    with exit_codes():
        rows = sweep_rows(n, p, dmin, dmax, jobs)
    if as_json and not as_csv:
        emit(sweep_to_dict(n, p, rows), True, out)
    else:
        text = to_csv(rows)
        if out is None:
            typer.echo(text, nl=False)
        else:
            with exit_codes():
                out.write_text(text, encoding="utf-8", newline="")
    if any(row["verdict"] != Verdict.STABLE.value or row["n_failed"] for row in rows):
        raise typer.Exit(EXIT_UNVERIFIED)


@app.command()
def support(
    n: int = N,
    p: int = P,
    d: int = D,
    cap: int = typer.Option(DEFAULT_CAP, "--cap", help="Give up beyond this many supports."),
    as_json: bool = JSON,
    out: Optional[Path] = OUT,
) -> None:
    """Crude slope margins over every admissible support."""
    with exit_codes():
        report = support_to_dict(n, p, d, cap)
    emit(report, as_json, out)


@app.command()
def curve(
    g: Optional[int] = typer.Option(None, "-g", "--genus"),
    deg_l: Optional[int] = typer.Option(None, "--degl", help="Degree of the line bundle."),
    plane: Optional[int] = typer.Option(
        None, "--plane", help="Degree d of the plane forms, on a curve of degree d + 1."
    ),
    as_json: bool = JSON,
    out: Optional[Path] = OUT,
) -> None:
    """Rank and dual slope of a syzygy bundle on a curve."""
    with exit_codes():
        if plane is not None:
            stats = plane_curve_stats(plane)
        elif g is not None and deg_l is not None:
            stats = curve_syzygy_stats(g, deg_l)
        else:
            raise ValueError("Give either --plane or both --genus and --degl")
        report = curve_to_dict(stats, plane)
    emit(report, as_json, out)


cli = typer.main.get_command(app)


if __name__ == "__main__":  # pragma: no cover
    app()
