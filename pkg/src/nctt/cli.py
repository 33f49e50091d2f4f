"""Command-line driver: ``nctt check`` and ``nctt normalize``."""

from __future__ import annotations

import pathlib
import sys
import typing

import click

from nctt import kan, nbe
from nctt.surface import loader, printer

EXIT_OK, EXIT_TYPE, EXIT_USAGE = 0, 1, 2


def _setup(trace_fill: bool, max_steps: typing.Optional[int]) -> None:
    kan.trace = (lambda msg: click.echo(msg, err=True)) if trace_fill else None
    nbe.Fuel.limit = max_steps
    nbe.Fuel.used = 0


def _prelude(ld: loader.Loader, no_prelude: bool) -> dict:
    if no_prelude:
        return {}
    try:
        return ld.load_prelude()
    except FileNotFoundError as err:
        click.echo(f"error: prelude not found: {err}", err=True)
        sys.exit(EXIT_USAGE)


def _common(fn):
    fn = click.option("--no-prelude", is_flag=True, help="Start from an empty environment.")(fn)
    fn = click.option("--trace-fill", is_flag=True, help="Print each filling case taken (to stderr).")(fn)
    fn = click.option("--max-steps", type=click.IntRange(min=1), default=None, help="Evaluation fuel limit.")(fn)
    return fn


@click.group()
def main() -> None:
    """Type checker for naive cubical type theory."""


@main.command()
@click.argument("files", nargs=-1, required=True)
@_common
def check(files, no_prelude, trace_fill, max_steps) -> None:
    """Check each FILE after the prelude."""
    _setup(trace_fill, max_steps)
    ld = loader.Loader()
    try:
        base = _prelude(ld, no_prelude)
    except loader.Diagnostic as diag:
        click.echo(str(diag), err=True)
        sys.exit(EXIT_TYPE)
    code = EXIT_OK
    for name in files:
        path = pathlib.Path(name)
        if not path.is_file():
            click.echo(f"error: cannot read {name}", err=True)
            sys.exit(EXIT_USAGE)
        try:
            mod = ld.load(path, base, name)
        except loader.Diagnostic as diag:
            click.echo(str(diag))
            code = EXIT_TYPE
            continue
        except (OSError, UnicodeDecodeError) as err:
            click.echo(f"error: cannot read {name}: {err}", err=True)
            sys.exit(EXIT_USAGE)
        click.echo(f"ok {name} ({len(mod.own)} defs)")
    sys.exit(code)


@main.command()
@click.argument("file")
@click.option("--def", "name", required=True, help="Definition to normalize.")
@_common
def normalize(file, name, no_prelude, trace_fill, max_steps) -> None:
    """Print the normal form of definition NAME from FILE."""
    _setup(trace_fill, max_steps)
    path = pathlib.Path(file)
    if not path.is_file():
        click.echo(f"error: cannot read {file}", err=True)
        sys.exit(EXIT_USAGE)
    ld = loader.Loader()
    try:
        base = _prelude(ld, no_prelude)
        mod = ld.load(path, base, file)
    except loader.Diagnostic as diag:
        click.echo(str(diag))
        sys.exit(EXIT_TYPE)
    defn = mod.names.get(name)
    if defn is None:
        click.echo(f"error: no definition named '{name}' in {file}", err=True)
        sys.exit(EXIT_USAGE)
    try:
        nf = nbe.quote(0, defn.value, defn.ty)
    except nbe.KernelError as err:
        click.echo(f"{file}: error[Internal]: {err}")
        sys.exit(EXIT_TYPE)
    click.echo(printer.print_term(nf))


if __name__ == "__main__":
    main()
