"""Batch command-line interface for the full pipeline.

Dimension specs use a small grammar: ``event:<name>`` for event attributes
and ``object:<type>.<name>`` for object attributes. Exit codes: 0 success,
1 usage error, 2 data error.
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import click

from . import discovery
from .cube import (
    CubeError,
    DimensionDescriptor,
    Materialization,
    MISSING,
    build_cube,
    decode_value,
    dice_cube,
    encode_value,
    grid_view,
    list_dimensions,
    slice_cube,
)
from .ocel import OcelError, export_jsonocel, export_xmlocel, parse_jsonocel, parse_xmlocel, sublog, validate
from .synth import generate_log

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


def _load_log(path: str, fmt: str | None):
    data = Path(path).read_bytes()
    if fmt is None:
        fmt = "xml" if path.endswith((".xml", ".xmlocel")) else "json"
    return parse_xmlocel(data) if fmt == "xml" else parse_jsonocel(data)


def _parse_dims(specs: tuple[str, ...]) -> list[DimensionDescriptor]:
    return [DimensionDescriptor.parse(s) for s in specs]


def _parse_at(cube, pairs: tuple[str, ...]):
    """Resolve dim=value pairs against a cube's dimensions and domains."""
    out = []
    for pair in pairs:
        if "=" not in pair:
            raise click.UsageError(f"expected dim=value, got {pair!r}")
        dim_text, token = pair.split("=", 1)
        dim = DimensionDescriptor.parse(dim_text)
        if dim not in cube.dims:
            raise CubeError(f"dimension {dim.spec()} not in cube")
        value = MISSING if token == "__null__" else decode_value(
            token, cube.domain.get(dim, ())
        )
        out.append((dim, value))
    return out


format_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "xml"]), default=None,
    help="Input format override (default: by file extension).",
)
dims_option = click.option(
    "--dims", "dims", multiple=True, required=True,
    help="Cube dimension, e.g. event:channel or object:item.product.",
)
mode_option = click.option(
    "--mode", type=click.Choice(["existence", "all"]), default="existence",
    help="Materialization semantics for object-attribute dimensions.",
)


@click.group()
def cli() -> None:
    """Object-centric process cube toolkit."""


@cli.command()
@click.argument("log_path")
@format_option
def info(log_path: str, fmt: str | None) -> None:
    """Print a log summary."""
    log = _load_log(log_path, fmt)
    report = validate(log)
    click.echo(f"events: {len(log.events)}")
    click.echo(f"objects: {len(log.objects)}")
    click.echo(f"object types: {', '.join(sorted(log.object_types)) or '-'}")
    click.echo(f"event attributes: {', '.join(sorted(log.attribute_names)) or '-'}")
    click.echo(f"validation errors: {len(report.errors)}")
    for issue in report.errors:
        click.echo(f"  {issue.code}: {issue.message}")


@cli.command()
@click.argument("log_path")
@format_option
def dims(log_path: str, fmt: str | None) -> None:
    """List available cube dimensions."""
    log = _load_log(log_path, fmt)
    for dim in list_dimensions(log):
        click.echo(dim.spec())


@cli.command()
@click.argument("log_path")
@format_option
@dims_option
@mode_option
@click.option("--rows", required=True, help="Row dimension.")
@click.option("--cols", default=None, help="Column dimension (default: ALL).")
def grid(log_path, fmt, dims, mode, rows, cols) -> None:
    """Print the event-count grid for two dimensions."""
    log = _load_log(log_path, fmt)
    cube = build_cube(log, _parse_dims(dims), Materialization(mode))
    row_dim = DimensionDescriptor.parse(rows)
    col_dim = DimensionDescriptor.parse(cols) if cols else None
    view = grid_view(cube, row_dim, col_dim)
    col_labels = [encode_value(c) if c != "ALL" else "ALL" for c in view.cols]
    header = [""] + col_labels
    table = [header]
    for value, counts in zip(view.rows, view.counts):
        table.append([encode_value(value)] + [str(n) for n in counts])
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    for row in table:
        click.echo("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


def _write_log(log, out_path: str | None) -> None:
    if out_path and out_path.endswith((".xml", ".xmlocel")):
        payload = export_xmlocel(log)
    else:
        payload = export_jsonocel(log)
    if out_path:
        Path(out_path).write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)


@cli.command("slice")
@click.argument("log_path")
@format_option
@dims_option
@mode_option
@click.option("--at", "at", multiple=True, required=True,
              help="dim=value to slice at (repeatable).")
@click.option("-o", "--output", default=None, help="Output OCEL path.")
def slice_cmd(log_path, fmt, dims, mode, at, output) -> None:
    """Slice the cube and emit the resulting cell sub-log."""
    log = _load_log(log_path, fmt)
    cube = build_cube(log, _parse_dims(dims), Materialization(mode))
    for dim, value in _parse_at(cube, at):
        cube = slice_cube(cube, dim, value)
    _write_log(sublog(log, set(cube.events())), output)


@cli.command("dice")
@click.argument("log_path")
@format_option
@dims_option
@mode_option
@click.option("--select", "select", multiple=True, required=True,
              help="dim=v1,v2 value subset (repeatable).")
@click.option("-o", "--output", default=None, help="Output OCEL path.")
def dice_cmd(log_path, fmt, dims, mode, select, output) -> None:
    """Dice the cube and emit the retained events as a sub-log."""
    log = _load_log(log_path, fmt)
    cube = build_cube(log, _parse_dims(dims), Materialization(mode))
    selection = {}
    for pair in select:
        if "=" not in pair:
            raise click.UsageError(f"expected dim=v1,v2, got {pair!r}")
        dim_text, tokens = pair.split("=", 1)
        dim = DimensionDescriptor.parse(dim_text)
        if dim not in cube.dims:
            raise CubeError(f"dimension {dim.spec()} not in cube")
        domain = cube.domain.get(dim, ())
        selection[dim] = {
            MISSING if t == "__null__" else decode_value(t, domain)
            for t in tokens.split(",")
        }
    diced = dice_cube(cube, selection)
    _write_log(sublog(log, set(diced.events())), output)


@cli.command()
@click.argument("log_path")
@format_option
@click.option("--model", type=click.Choice(["ocdfg", "ocpn"]), default="ocdfg")
@click.option("--out", "out_fmt", type=click.Choice(["dot", "json"]), default="json")
@click.option("--min-frequency", default=0, help="Drop OC-DFG elements below this frequency.")
@click.option("-o", "--output", default=None, help="Output file (default stdout).")
def discover(log_path, fmt, model, out_fmt, min_frequency, output) -> None:
    """Discover an annotated model from a log (or extracted cell)."""
    log = _load_log(log_path, fmt)
    if model == "ocdfg":
        found = discovery.discover_ocdfg(log)
        text = (
            discovery.ocdfg_to_dot(found, min_frequency)
            if out_fmt == "dot"
            else json.dumps(discovery.ocdfg_to_json(found, min_frequency), indent=2)
        )
    else:
        found = discovery.discover_ocpn(log)
        text = (
            discovery.ocpn_to_dot(found)
            if out_fmt == "dot"
            else json.dumps(discovery.ocpn_to_json(found), indent=2)
        )
    if output:
        Path(output).write_text(text + ("" if text.endswith("\n") else "\n"))
    else:
        click.echo(text)


@cli.command()
@click.argument("left_path")
@click.argument("right_path")
@format_option
@click.option("--out", "out_fmt", type=click.Choice(["json", "text"]), default="json")
@click.option("-o", "--output", default=None, help="Output file (default stdout).")
def compare(left_path, right_path, fmt, out_fmt, output) -> None:
    """Compare the OC-DFGs of two logs side-by-side."""
    left = discovery.discover_ocdfg(_load_log(left_path, fmt))
    right = discovery.discover_ocdfg(_load_log(right_path, fmt))
    diff = discovery.compare_models(left, right)
    if out_fmt == "json":
        text = json.dumps(discovery.diff_to_json(diff), indent=2)
    else:
        lines = ["type\tkind\tname\tleft\tright\tpresence"]
        for d in diff.activities:
            lines.append(
                f"{d.otype}\tactivity\t{d.activity}\t{d.freq_left}\t{d.freq_right}\t{d.presence}"
            )
        for d in diff.edges:
            lines.append(
                f"{d.otype}\tedge\t{d.edge[0]}->{d.edge[1]}\t{d.freq_left}\t{d.freq_right}\t{d.presence}"
            )
        text = "\n".join(lines)
    if output:
        Path(output).write_text(text + "\n")
    else:
        click.echo(text)


def bench_dimensions(n_event_dims: int, n_object_dims: int, n_object_types: int = 3):
    dims = [DimensionDescriptor("event", f"eattr{i}") for i in range(n_event_dims)]
    dims += [
        DimensionDescriptor("object", f"oattr{i}", f"type{i % n_object_types}")
        for i in range(n_object_dims)
    ]
    return dims


def measure_build(
    n_events: int,
    n_event_dims: int,
    n_object_dims: int,
    mode: Materialization = Materialization.EXISTENCE,
    seed: int = 0,
    repeat: int = 1,
) -> float:
    """Best-of-repeat wall time of a cube build on a synthetic log."""
    log = generate_log(
        n_events,
        n_event_attrs=max(n_event_dims, 1),
        n_object_attrs=max(n_object_dims, 1),
        seed=seed,
    )
    dims = bench_dimensions(n_event_dims, n_object_dims)
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        build_cube(log, dims, mode)
        best = min(best, time.perf_counter() - start)
    return best


@cli.command()
@click.option("--events", "events", multiple=True, type=int, required=True,
              help="Synthetic log size (repeatable for a series).")
@click.option("--event-attr-dims", default=4, show_default=True)
@click.option("--object-attr-dims", default=4, show_default=True)
@mode_option
@click.option("--seed", default=0, show_default=True)
@click.option("--repeat", default=1, show_default=True, help="Best-of-N timing.")
def bench(events, event_attr_dims, object_attr_dims, mode, seed, repeat) -> None:
    """Measure cube build time on synthetic logs (one TSV line per size)."""
    click.echo("events\tevent_dims\tobject_dims\tbuild_seconds")
    for n in events:
        seconds = measure_build(
            n, event_attr_dims, object_attr_dims,
            Materialization(mode), seed=seed, repeat=repeat,
        )
        click.echo(f"{n}\t{event_attr_dims}\t{object_attr_dims}\t{seconds:.6f}")


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option("--static-dir", default=None, help="Directory with the UI bundle.")
@click.option("--max-upload-bytes", default=256 * 1024 * 1024, show_default=True)
@click.option("--build-timeout", default=300.0, show_default=True)
def serve(host, port, static_dir, max_upload_bytes, build_timeout) -> None:
    """Run the HTTP service (and optionally serve the UI bundle)."""
    import uvicorn

    from .service import create_app

    app = create_app(
        static_dir=static_dir,
        max_upload_bytes=max_upload_bytes,
        build_timeout=build_timeout,
    )
    uvicorn.run(app, host=host, port=port)


def main(argv: list[str] | None = None) -> int:
    """Entry point with the documented exit-code contract."""
    try:
        cli.main(args=argv, standalone_mode=False)
        return EXIT_OK
    except click.exceptions.Abort:
        return EXIT_USAGE
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except (OcelError, CubeError, discovery.UnknownObjectType) as exc:
        click.echo(f"data error: {exc}", err=True)
        return EXIT_DATA
    except FileNotFoundError as exc:
        click.echo(f"data error: {exc}", err=True)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
