"""Typer application: the ``isotile`` command."""

import functools
from collections.abc import Callable
from pathlib import Path
from typing import Annotated, ParamSpec

import structlog
import typer
from rich.console import Console
from rich.markup import escape

from isotile.cli.constants import CensusKind
from isotile.cli.errors import UsageError, ViolationsFoundError, to_cli_error
from isotile.cli.logging import setup_logging
from isotile.core.analysis import (
    UpTo,
    c8_filling_census,
    crossing_census,
    crown_census,
    period_scan,
    tile_census,
)
from isotile.core.crossings import LegalCrossingTable
from isotile.core.rules import ValidationMode, derive_crossing_table, validate
from isotile.core.squares import SquarePatch, group_into_squares, square_census
from isotile.core.substitution import SupertileSpec, compose, decompose, supertile
from isotile.formats.document import (
    CensusDocument,
    PeriodReportDocument,
    ValidationReportDocument,
    dump_report,
    load_crossing_table,
    parse,
    parse_patch,
    serialize,
    serialize_table,
)
from isotile.formats.svg import RenderOptions, render_svg
from isotile.utils.config import get_settings

logger = structlog.get_logger()

P = ParamSpec("P")

app = typer.Typer(
    name="isotile",
    help="Generate, validate and analyse decorated right-triangle tilings.",
    no_args_is_help=True,
    add_completion=False,
)
squares_app = typer.Typer(help="Convert between square and triangle patches.")
tables_app = typer.Typer(help="Maintain the legal crossing table.")
app.add_typer(squares_app, name="squares")
app.add_typer(tables_app, name="tables")

err_console = Console(stderr=True)

InputFile = Annotated[
    Path, typer.Argument(exists=True, dir_okay=False, help="Patch document")
]
OutFile = Annotated[Path, typer.Option("--out", "-o", help="Output file")]
ReportFile = Annotated[
    Path | None,
    typer.Option("--out", "-o", help="Write the JSON report here instead of stdout"),
]
TableFile = Annotated[
    Path | None,
    typer.Option("--table", help="Crossing table document overriding the default"),
]


def handles_errors(func: Callable[P, None]) -> Callable[P, None]:
    """Turn kernel and CLI errors into a diagnostic and an exit code."""

    @functools.wraps(func)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> None:
        try:
            func(*args, **kwargs)
        except typer.Exit:
            raise
        except Exception as e:
            error = to_cli_error(e)
            if error is None:
                raise
            logger.info("command_failed", code=error.code, message=error.message)
            tag = escape(f"[{error.code}]")
            err_console.print(f"[bold red]error[/] {tag} {escape(error.message)}")
            if error.detail:
                err_console.print(f"  {escape(error.detail)}")
            raise typer.Exit(error.exit_code) from e

    return wrapper


def _table(path: Path | None) -> LegalCrossingTable:
    return load_crossing_table(path)


def _emit(data: bytes, out: Path | None) -> None:
    if out is None:
        typer.echo(data.decode("utf-8"), nl=False)
    else:
        out.write_bytes(data)


@app.callback()
def main_callback(
    log_level: Annotated[
        str | None, typer.Option("--log-level", help="Minimum log level")
    ] = None,
) -> None:
    setup_logging(log_level or get_settings().log_level)


@app.command()
@handles_errors
def gen(
    level: Annotated[
        int, typer.Option("--level", "-n", min=0, help="Supertile level")
    ],
    out: OutFile,
    seed: Annotated[
        str | None, typer.Option("--seed", help="7-character seed, e.g. GR-G+R-")
    ] = None,
) -> None:
    """Write the supertile of the given level."""
    spec = SupertileSpec.from_code(level, seed or get_settings().default_seed)
    patch = supertile(spec)
    out.write_bytes(serialize(patch))
    err_console.print(f"S_{level} ({spec.code}): {len(patch)} tiles -> {out}")


@app.command("validate")
@handles_errors
def validate_command(
    file: InputFile,
    mode: Annotated[
        ValidationMode, typer.Option("--mode", help="Which vertices are checked")
    ] = ValidationMode.PLANE_INTERIOR,
    table: TableFile = None,
    out: ReportFile = None,
) -> None:
    """Check a patch against the local rules; exit 1 on violations."""
    patch = parse_patch(file.read_bytes())
    report = validate(patch, mode, _table(table))
    _emit(dump_report(ValidationReportDocument.from_report(report)), out)
    if not report.ok:
        raise ViolationsFoundError(report.violation_count, detail=f"mode {mode.value}")
    err_console.print(f"{len(patch)} tiles, no violations ({mode.value})")


@app.command("decompose")
@handles_errors
def decompose_command(
    file: InputFile,
    out: OutFile,
    rescale: Annotated[
        bool, typer.Option("--rescale", help="Scale by 2 first so midpoints exist")
    ] = False,
) -> None:
    """Cut every tile along its height."""
    patch = parse_patch(file.read_bytes())
    if rescale:
        patch = patch.scaled(1)
    result = decompose(patch)
    out.write_bytes(serialize(result))
    err_console.print(f"{len(patch)} -> {len(result)} tiles")


@app.command("compose")
@handles_errors
def compose_command(file: InputFile, out: OutFile, table: TableFile = None) -> None:
    """Merge sibling pairs; exit 1 if the patch is not a decomposition."""
    patch = parse_patch(file.read_bytes())
    result = compose(patch, _table(table))
    out.write_bytes(serialize(result))
    err_console.print(f"{len(patch)} -> {len(result)} tiles")


@app.command()
@handles_errors
def census(
    kind: Annotated[CensusKind, typer.Argument(help="What to count")],
    file: InputFile,
    up_to: Annotated[
        UpTo, typer.Option("--up-to", help="Symmetries identified by the census")
    ] = UpTo.TRANSLATION,
    mask_outer: Annotated[
        bool, typer.Option("--mask-outer", help="Ignore outer sides of crowns")
    ] = False,
    table: TableFile = None,
    out: ReportFile = None,
) -> None:
    """Count tile, crossing, crown, square or C8-filling classes."""
    content = file.read_bytes()
    counts: dict[str, int]
    if kind is CensusKind.SQUARES:
        parsed = parse(content)
        if isinstance(parsed, SquarePatch):
            squares = parsed
        else:
            squares, _ = group_into_squares(parsed, _table(table))
        counts = {c.label: n for c, n in square_census(squares, up_to).items()}
    else:
        patch = parse_patch(content)
        if kind is CensusKind.TILES:
            counts = {c.label: n for c, n in tile_census(patch, up_to).items()}
        elif kind is CensusKind.CROSSINGS:
            found = crossing_census(patch, _table(table))
            counts = {c.value: n for c, n in found.items()}
        elif kind is CensusKind.CROWNS:
            crowns = crown_census(patch, mask_outer)
            counts = {c.label: n for c, n in crowns.items()}
        else:
            fillings = c8_filling_census(patch, _table(table))
            counts = {f"{f.value} {f.name.lower()}": n for f, n in fillings.items()}
    doc = CensusDocument.from_counts(
        kind.value,
        counts,
        up_to=up_to.value if kind in (CensusKind.TILES, CensusKind.SQUARES) else None,
        mask_outer=mask_outer if kind is CensusKind.CROWNS else False,
    )
    _emit(dump_report(doc), out)
    err_console.print(f"{kind.value}: {doc.classes} classes over {doc.total} items")


@app.command("period-scan")
@handles_errors
def period_scan_command(
    file: InputFile,
    core: Annotated[int, typer.Option("--core", min=0, help="Core radius")],
    shift: Annotated[int, typer.Option("--shift", min=0, help="Largest shift")],
    out: ReportFile = None,
) -> None:
    """Report translations that carry the patch core into the patch."""
    patch = parse_patch(file.read_bytes())
    report = period_scan(patch, core, shift)
    _emit(dump_report(PeriodReportDocument.from_report(report)), out)
    err_console.print(
        f"{report.core_tiles} core tiles, {len(report.survivors)} surviving shifts"
    )


@squares_app.command("group")
@handles_errors
def squares_group(
    file: InputFile,
    out: OutFile,
    leftover: Annotated[
        Path | None,
        typer.Option("--leftover", help="Write ungrouped triangles here"),
    ] = None,
    table: TableFile = None,
) -> None:
    """Group right-angle quadruples into square tiles."""
    patch = parse_patch(file.read_bytes())
    squares, rest = group_into_squares(patch, _table(table))
    out.write_bytes(serialize(squares))
    if leftover is not None:
        leftover.write_bytes(serialize(rest))
    err_console.print(f"{len(squares)} squares, {len(rest)} leftover triangles")


@squares_app.command("cut")
@handles_errors
def squares_cut(file: InputFile, out: OutFile) -> None:
    """Cut a square patch into its triangles."""
    parsed = parse(file.read_bytes())
    if not isinstance(parsed, SquarePatch):
        raise UsageError(f"{file} is a triangle document, expected squares")
    triangles = parsed.triangles()
    out.write_bytes(serialize(triangles))
    err_console.print(f"{len(parsed)} squares -> {len(triangles)} triangles")


@app.command()
@handles_errors
def render(
    file: InputFile,
    out: OutFile,
    labels: Annotated[
        bool, typer.Option("--labels", help="Label vertices by crossing class")
    ] = False,
    long_arrows: Annotated[
        bool, typer.Option("--long-arrows", help="Merge collinear equal arrows")
    ] = False,
    unit: Annotated[
        int | None, typer.Option("--unit", help="Pixels per lattice unit (even)")
    ] = None,
    table: TableFile = None,
) -> None:
    """Draw a patch as SVG."""
    patch = parse_patch(file.read_bytes())
    options = RenderOptions(
        unit=unit or get_settings().svg_unit,
        labels=labels,
        long_arrows=long_arrows,
        table=_table(table) if labels else None,
    )
    out.write_bytes(render_svg(patch, options))
    err_console.print(f"{len(patch)} tiles -> {out}")


@tables_app.command("derive")
@handles_errors
def tables_derive(
    out: OutFile,
    level: Annotated[
        int | None, typer.Option("--level", "-n", help="Supertile depth, at least 8")
    ] = None,
    seed: Annotated[str | None, typer.Option("--seed", help="Seed code")] = None,
) -> None:
    """Harvest the legal crossings of a deep supertile."""
    settings = get_settings()
    derived = derive_crossing_table(
        level if level is not None else settings.oracle_level,
        seed or settings.default_seed,
    )
    out.write_bytes(serialize_table(derived))
    err_console.print(f"{len(derived.c4)} C4 and {len(derived.c8)} C8 entries -> {out}")


def main() -> None:
    """Console-script entry point."""
    app()
