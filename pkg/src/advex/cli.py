"""Command-line entry point ``advex``."""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .explorer import TABLE_VARIANTS, parse_variant
from .graph import GraphError, load_graph
from .harness import GenSpec, bound_expressions, g_table, generate, reports_csv, run_corpus, \
    run_instance, summarize, write_corpus
from .oracle import OracleError
from .search import SearchError


def _variants(spec: str) -> list:
    if spec == "all":
        return list(TABLE_VARIANTS)
    try:
        return [parse_variant(v.strip()).name for v in spec.split(",") if v.strip()]
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc


@click.group()
def main():
    """Advice-driven optimal graph exploration: oracle, explorer and checks."""


@main.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--max-cost", type=int, default=10, show_default=True)
@click.option("--undirected", is_flag=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
def gen(n, m, max_cost, undirected, seed, output):
    """Generate a random connected instance."""
    try:
        g = generate(GenSpec(n, m, max_cost, not undirected, seed))
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    text = g.to_json() + "\n"
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)


@main.command()
@click.argument("directory", type=click.Path(file_okay=False))
@click.option("--directed", type=int, default=200, show_default=True)
@click.option("--undirected", type=int, default=200, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def corpus(directory, directed, undirected, seed):
    """Write the default experiment corpus into DIRECTORY."""
    paths = write_corpus(directory, directed=directed, undirected=undirected, seed=seed)
    click.echo(f"wrote {len(paths)} instances to {directory}")


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--variant", default="unknown-directed-cyclic", show_default=True)
@click.option("--tape-out", type=click.Path(dir_okay=False), default=None)
@click.option("--report", type=click.Path(dir_okay=False), default=None)
def solve(file, variant, tape_out, report):
    """Record and replay one instance; print the run report."""
    try:
        g = load_graph(file)
        rep = run_instance(g, parse_variant(variant), Path(file).stem)
    except (GraphError, OracleError, SearchError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc
    doc = rep.to_dict()
    if rep.detail:
        doc["detail"] = rep.detail
    text = json.dumps(doc, indent=2)
    if tape_out and rep.tape is not None:
        Path(tape_out).write_text(rep.tape.to_json() + "\n")
    if report:
        Path(report).write_text(text + "\n")
    click.echo(text)
    sys.exit(0 if rep.ok else 1)


@main.command()
@click.argument("directory", type=click.Path(exists=True, file_okay=False))
@click.option("--variants", default="all", show_default=True)
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None)
@click.option("--jobs", type=int, default=os.cpu_count() or 1, show_default="cpu count")
def verify(directory, variants, csv_path, jobs):
    """Run every instance of DIRECTORY under the chosen variants."""
    reports, rejected = run_corpus(directory, _variants(variants), jobs=jobs)
    text = reports_csv(reports)
    if csv_path:
        Path(csv_path).write_text(text)
    for name, diag in sorted(rejected.items()):
        click.echo(f"{name}: {diag}", err=True)
    for v, runs, lo, hi, mean in summarize(reports):
        click.echo(f"{v:28s} runs={runs:4d} bits/bound min={lo:.3f} max={hi:.3f} mean={mean:.3f}")
    bad = [r for r in reports if not r.ok]
    for r in bad:
        click.echo(f"FAIL {r.instance} {r.variant}: {r.detail}", err=True)
    click.echo(f"{len(reports)} runs, {len(bad)} failed, {len(rejected)} rejected")
    sys.exit(1 if bad else 0)


@main.command()
@click.option("--max-y", type=int, default=64, show_default=True)
def gtable(max_y):
    """Tabulate g(y) against 2.5y - 3log2(y) - 3."""
    try:
        rows = g_table(max_y)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    ok = True
    click.echo(f"{'y':>5} {'g(y)':>10} {'bound':>10}")
    for y, g, b in rows:
        flag = ""
        if y >= 4 and g > b + 1e-9:
            ok = False
            flag = "  VIOLATED"
        click.echo(f"{y:5d} {g:10.4f} {b:10.4f}{flag}")
    sys.exit(0 if ok else 1)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def bounds(file):
    """Print the advice bound of every variant for FILE."""
    try:
        g = load_graph(file)
    except (GraphError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc
    for v, expr, value in bound_expressions(g):
        click.echo(f"{v:28s} {expr:34s} = {value:.3f}")


if __name__ == "__main__":  # pragma: no cover
    main()
