"""Command-line front end.

Exit codes: 0 success, 1 formula/oracle disagreement, 2 bad input,
3 memory budget too small. Data goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import json
import sys

import click

from . import dbonacci as db
from .analysis import rauzy_graph
from .complexity import complexity_table, random_directives, verify_many
from .errors import (
    BudgetExceeded,
    DirectiveParseError,
    DomainError,
    InconclusiveError,
    InvalidDirective,
)
from .words import DirectiveSequence, dbonacci_directive, default_budget, format_letters, generate_prefix

EXIT_DISAGREE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _budget(value: int | None) -> int:
    try:
        budget = default_budget() if value is None else value
    except DomainError as exc:
        _fail(str(exc), EXIT_INPUT)
    if budget < 1:
        _fail("budget must be positive", EXIT_INPUT)
    return budget


def _directive(text: str | None, d: int | None) -> DirectiveSequence:
    if text is None:
        _fail("--directive is required", EXIT_INPUT)
    try:
        ds = DirectiveSequence.parse(text, d)
        ds.require_valid()
    except (DirectiveParseError, InvalidDirective, DomainError) as exc:
        _fail(str(exc), EXIT_INPUT)
    return ds


directive_opt = click.option("--directive", "directive", help="Directive 'pre:period', e.g. ':012'.")
d_opt = click.option("--d", "d", type=int, default=None, help="Alphabet size (inferred if omitted).")
budget_opt = click.option(
    "--budget", type=int, default=None, help="Symbol budget for prefixes [env ARLAB_BUDGET]."
)


@click.group()
@click.version_option(package_name="artifact")
def cli():
    """Arnoux-Rauzy words and their (initial) non-repetitive complexity."""


@cli.command()
@directive_opt
@d_opt
@click.option("--length", type=int, required=True)
@budget_opt
def generate(directive, d, length, budget):
    """Print a prefix of the standard Arnoux-Rauzy word."""
    ds = _directive(directive, d)
    if length < 0:
        _fail("--length must be nonnegative", EXIT_INPUT)
    try:
        prefix = generate_prefix(ds, length, _budget(budget))
    except BudgetExceeded as exc:
        _fail(str(exc), EXIT_BUDGET)
    click.echo(format_letters(prefix.symbols, ds.d))


def _render_table(table, fmt: str, extra: dict | None = None) -> str:
    if fmt == "csv":
        return table.to_csv(extra)
    records = table.records()
    if extra:
        for i, rec in enumerate(records):
            rec.update({key: col[i] for key, col in extra.items()})
    if fmt == "json":
        return json.dumps(records, indent=2) + "\n"
    # txt: aligned columns
    lines = table.to_csv(extra).splitlines()
    cells = [line.split(",") for line in lines]
    widths = [max(len(row[i]) for row in cells) for i in range(len(cells[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells) + "\n"


def _check_n_max(n_max: int) -> None:
    if n_max < 1:
        _fail("--n-max must be at least 1", EXIT_INPUT)


@cli.command()
@directive_opt
@d_opt
@click.option("--n-max", type=int, required=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "txt"]), default="csv")
@budget_opt
def table(directive, d, n_max, fmt, budget):
    """Complexity table: closed forms next to the brute-force oracles."""
    _check_n_max(n_max)
    ds = _directive(directive, d)
    try:
        result = complexity_table(ds, n_max, _budget(budget))
    except BudgetExceeded as exc:
        _fail(str(exc), EXIT_BUDGET)
    click.echo(_render_table(result, fmt), nl=False)


@cli.command()
@directive_opt
@d_opt
@click.option("--n-max", type=int, required=True)
@click.option("--random-directives", "random_count", type=int, default=None)
@click.option("--seed", type=int, default=0)
@budget_opt
def verify(directive, d, n_max, random_count, seed, budget):
    """Check formulas against oracles; exit 1 on any disagreement."""
    _check_n_max(n_max)
    if random_count is not None:
        if d is None or d < 2 or random_count < 1:
            _fail("--random-directives needs a count >= 1 and --d >= 2", EXIT_INPUT)
        directives = random_directives(random_count, d, seed)
    else:
        directives = [_directive(directive, d)]
    try:
        report = verify_many(directives, n_max, _budget(budget))
    except BudgetExceeded as exc:
        _fail(str(exc), EXIT_BUDGET)
    if random_count is not None:
        report.directive = f"random(count={random_count}, d={d}, seed={seed})"
    click.echo(json.dumps(report.as_dict(), indent=2))
    if not report.ok:
        click.echo(f"{len(report.failures)} check(s) failed", err=True)
        sys.exit(EXIT_DISAGREE)


@cli.command()
@directive_opt
@d_opt
@click.option("-n", "n", type=int, required=True, help="Graph order.")
@click.option("--format", "fmt", type=click.Choice(["dot"]), default="dot")
@budget_opt
def rauzy(directive, d, n, fmt, budget):
    """Rauzy graph of order n in DOT."""
    ds = _directive(directive, d)
    if n < 0:
        _fail("-n must be nonnegative", EXIT_INPUT)
    budget = _budget(budget)
    try:
        prefix = generate_prefix(ds, min(budget, max(64, 4 * (n + 2))), budget)
        graph = rauzy_graph(prefix, n)
    except (BudgetExceeded, InconclusiveError) as exc:
        _fail(str(exc), EXIT_BUDGET)
    click.echo(graph.to_dot(), nl=False)


@cli.command("dbonacci")
@click.option("--d", "d", type=int, required=True)
@click.option("--n-max", type=int, required=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "txt"]), default="csv")
@budget_opt
def dbonacci_cmd(d, n_max, fmt, budget):
    """d-bonacci closed forms, with the generic formula path for comparison."""
    if d < 2:
        _fail("--d must be at least 2", EXIT_INPUT)
    _check_n_max(n_max)
    ds = dbonacci_directive(d)
    try:
        result = complexity_table(ds, n_max, _budget(budget))
    except BudgetExceeded as exc:
        _fail(str(exc), EXIT_BUDGET)
    d_k, b_len, agree = [], [], []
    for row in result.rows:
        k = db.bracket_dbonacci(d, row.n)
        fast_nrc, fast_inrc = db.nrc_dbonacci(d, row.n), db.inrc_dbonacci(d, row.n)
        agree.append(fast_nrc == row.nrc_formula and fast_inrc == row.inrc_formula and k == row.k)
        row.nrc_formula, row.inrc_formula = fast_nrc, fast_inrc
        d_k.append(db.dbonacci_number(d, k))
        b_len.append(db.bispecial_length_dbonacci(d, k))
    extra = {"D_k": d_k, "B_len_k": b_len, "agree_generic": agree}
    click.echo(_render_table(result, fmt, extra), nl=False)
    if not all(agree):
        sys.exit(EXIT_DISAGREE)


def main():
    cli()


if __name__ == "__main__":
    main()
