"""Command-line surface: length windows, cusp arithmetic, verification
campaigns and CSV tables.

Exit codes: 0 success, 1 usage or parse error, 2 theorem inapplicable
(twist power below threshold, normalized length below the filling gate, or
shape outside the thick-part constraint; the report is still printed with
admissible=false), 3 verification failure.

The environment variable CUSPFILL_PRECISION_DIGITS (default 12) controls
print precision only, never computation.  Seeds default to 0 so bare
invocations are reproducible.
"""

from __future__ import annotations

import csv
import json
import math
import os
import re
import sys
from typing import Optional

import click

from . import verify as verify_mod
from .bounds import TheoremInput, intro_bounds, min_admissible_twist, pipeline, theorem_bounds
from .cusp import (
    CuspShape,
    Slope,
    flat_length,
    injectivity_radius,
    normalized_length,
    parse_complex_literal,
    torus_area,
)
from .errors import (
    CuspFillError,
    InvalidShape,
    NormalizedLengthTooShort,
    OutOfSimplifiedRange,
    TwistPowerTooSmall,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INAPPLICABLE = 2
EXIT_VERIFY_FAILED = 3

_RANGE_RE = re.compile(r"^(\d+)\.\.(\d+)$")
_SLOPE_RE = re.compile(r"^(-?\d+),(-?\d+)$")


def _digits() -> int:
    raw = os.environ.get("CUSPFILL_PRECISION_DIGITS", "12")
    try:
        value = int(raw)
    except ValueError:
        raise click.UsageError(f"CUSPFILL_PRECISION_DIGITS must be an integer, got {raw!r}")
    return max(1, min(value, 17))


def _fnum(value: float) -> str:
    return f"{value:.{_digits()}g}"


def _json_ready(obj):
    """Round floats to the print precision; refuse NaN/Inf (use null)."""
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return float(_fnum(obj))
    return obj


def _emit_json(payload: dict) -> None:
    click.echo(json.dumps(_json_ready(payload), indent=2, ensure_ascii=False, allow_nan=False))


def _text_value(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _fnum(value)
    return str(value)


def _emit_text(payload: dict) -> None:
    width = max(len(k) for k in payload)
    for key, value in payload.items():
        click.echo(f"{key:<{width}}  {_text_value(value)}")


def _format_complex(z: complex) -> str:
    sign = "+" if z.imag >= 0 else "-"
    return f"{_fnum(z.real)}{sign}{_fnum(abs(z.imag))}i"


@click.group()
def cli():
    """Cusp geometry and Dehn-filling length windows for twisted
    Heegaard splittings."""


def _parse_shape(tau_alpha: Optional[str], tau_beta: Optional[str], height: float) -> Optional[CuspShape]:
    given = [v for v in (tau_alpha, tau_beta) if v is not None]
    if not given:
        return None
    if len(given) != 2:
        raise click.UsageError("provide both --tau-alpha and --tau-beta, or neither")
    try:
        return CuspShape(
            parse_complex_literal(tau_alpha), parse_complex_literal(tau_beta), height
        )
    except (ValueError, CuspFillError) as exc:
        raise click.UsageError(str(exc))


@cli.command("bounds")
@click.option("--genus", type=int, required=True, help="Handlebody genus, at least 2.")
@click.option("--n", "twist_power", type=int, required=True, help="Twist power.")
@click.option("--tau-alpha", default=None, help="Cusp translation of alpha, e.g. 1.2+0i.")
@click.option("--tau-beta", default=None, help="Cusp translation of beta, e.g. 0+4i.")
@click.option("--height", type=float, default=1.0, show_default=True, help="Horosphere height T.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def cmd_bounds(genus, twist_power, tau_alpha, tau_beta, height, fmt):
    """Length window for the core geodesic; worst-case or from a shape."""
    shape = _parse_shape(tau_alpha, tau_beta, height)
    try:
        inp = TheoremInput(genus, twist_power)
    except CuspFillError as exc:
        raise click.UsageError(str(exc))
    try:
        report = pipeline(inp, shape)
    except (TwistPowerTooSmall, NormalizedLengthTooShort, InvalidShape) as exc:
        _emit(report_dict=exc.report.to_dict(), fmt=fmt)
        click.echo(f"inadmissible: {exc}", err=True)
        sys.exit(EXIT_INAPPLICABLE)
    except CuspFillError as exc:
        raise click.UsageError(str(exc))
    _emit(report_dict=report.to_dict(), fmt=fmt)


def _emit(report_dict: dict, fmt: str) -> None:
    if fmt == "json":
        _emit_json(report_dict)
    else:
        _emit_text(report_dict)


@cli.command("cusp")
@click.option("--tau-alpha", required=True, help="Translation of alpha, e.g. 1+0i.")
@click.option("--tau-beta", required=True, help="Translation of beta, e.g. 0+1i.")
@click.option("--height", type=float, default=1.0, show_default=True, help="Horosphere height T.")
@click.option("--slope", "slope_text", required=True, help="Primitive slope p,q.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def cmd_cusp(tau_alpha, tau_beta, height, slope_text, fmt):
    """Flat length, area, injectivity radius and normalized length."""
    match = _SLOPE_RE.match(slope_text)
    if match is None:
        raise click.UsageError(f"slope must look like p,q with integers, got {slope_text!r}")
    shape = _parse_shape(tau_alpha, tau_beta, height)
    try:
        slope = Slope(int(match.group(1)), int(match.group(2)))
    except CuspFillError as exc:
        raise click.UsageError(str(exc))
    payload = {
        "tau_alpha": _format_complex(shape.tau_alpha),
        "tau_beta": _format_complex(shape.tau_beta),
        "height": shape.height,
        "slope": f"{slope.p},{slope.q}",
        "flat_length": flat_length(shape, slope),
        "area": torus_area(shape),
        "injectivity_radius": injectivity_radius(shape),
        "normalized_length": normalized_length(shape, slope),
    }
    _emit(payload, fmt)


_SUITES = ("lemma", "fact1", "fact2", "torus-area", "cusp-area", "all")


@cli.command("verify")
@click.argument("suite", type=click.Choice(_SUITES))
@click.option("--trials", type=int, default=1000, show_default=True,
              help="Trial count; used as the grid resolution for torus-area.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def cmd_verify(suite, trials, seed, fmt):
    """Run a verification campaign; exit 0 iff it reports zero failures.

    wall_ms appears only in JSON output and is the one field that varies
    between reruns of the same seed.
    """
    if trials < 1:
        raise click.UsageError(f"trials must be >= 1, got {trials}")
    try:
        report = _run_suite(suite, trials, seed)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    payload = {"suite": suite, **report.to_dict()}
    if fmt == "json":
        _emit_json(payload)
    else:
        payload.pop("wall_ms")
        _emit_text(payload)
    if report.failures > 0:
        sys.exit(EXIT_VERIFY_FAILED)


def _run_suite(suite: str, trials: int, seed: int) -> verify_mod.TrialReport:
    if suite == "lemma":
        return verify_mod.lemma_campaign(trials, seed)
    if suite == "fact1":
        return verify_mod.fact1_sweep(trials, seed)
    if suite == "fact2":
        return verify_mod.fact2_sweep(trials, seed)
    if suite == "torus-area":
        return verify_mod.torus_area_suite(grid=trials, seed=seed)
    if suite == "cusp-area":
        return verify_mod.cusp_area_suite(trials, seed)
    parts = [
        verify_mod.run_campaign(trials, seed),
        verify_mod.torus_area_suite(seed=seed),
        verify_mod.cusp_area_suite(trials, seed),
    ]
    return verify_mod.TrialReport(
        trials=trials,
        failures=sum(p.failures for p in parts),
        worst_margin=min(p.worst_margin for p in parts),
        seed=seed & verify_mod.MASK64,
        wall_ms=sum(p.wall_ms for p in parts),
    )


def _parse_range(text: str, label: str) -> range:
    match = _RANGE_RE.match(text)
    if match is None:
        raise click.UsageError(f"{label} range must look like a..b, got {text!r}")
    lo, hi = int(match.group(1)), int(match.group(2))
    if lo > hi:
        raise click.UsageError(f"{label} range {text!r} is empty")
    return range(lo, hi + 1)


@cli.command("table")
@click.option("--genus", "genus_range", required=True, help="Inclusive range a..b, a >= 2.")
@click.option("--n", "n_range", required=True, help="Inclusive range c..d.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False), help="CSV output path.")
@click.option("--format", "fmt", type=click.Choice(["csv"]), default="csv", show_default=True)
def cmd_table(genus_range, n_range, out_path, fmt):
    """Tabulate the worst-case and simplified windows over a grid."""
    genera = _parse_range(genus_range, "genus")
    twists = _parse_range(n_range, "n")
    if genera.start < 2:
        raise click.UsageError(f"genus must be at least 2, got {genera.start}")
    rows = []
    for g in genera:
        min_n = min_admissible_twist(g)
        for n in twists:
            inp = TheoremInput(g, n)
            admissible = n >= min_n
            if admissible:
                window = theorem_bounds(inp)
                length_lo, length_hi = _fnum(window.lo), _fnum(window.hi)
            else:
                length_lo = length_hi = ""
            try:
                intro = intro_bounds(inp)
                intro_lo, intro_hi = _fnum(intro.lo), _fnum(intro.hi)
            except OutOfSimplifiedRange:
                intro_lo = intro_hi = ""
            rows.append([
                g, n, "true" if admissible else "false", min_n,
                length_lo, length_hi, intro_lo, intro_hi,
            ])
    try:
        with open(out_path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow([
                "genus", "n", "admissible", "min_n",
                "length_lo", "length_hi", "intro_lo", "intro_hi",
            ])
            writer.writerows(rows)
    except OSError as exc:
        raise click.UsageError(f"cannot write {out_path!r}: {exc}")
    click.echo(f"wrote {len(rows)} rows to {out_path}")


def main(argv=None) -> int:
    """Dispatch with the documented exit-code contract."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Abort:
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    except CuspFillError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    return EXIT_OK


def run() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    run()
