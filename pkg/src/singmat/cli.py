"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 infinite length (germ not
transverse), 3 resource cap reached.
"""

from __future__ import annotations

import sys

import click

from .catalog import DIVISOR_NAMES, check_catalog, higher_mult
from .codim import Settings, kme_codim_tau, milnor_icis
from .errors import (InputError, NotFreeDivisorError, NotTransverseError, ParseError,
                     ResourceLimitError)
from .formulas import (InvariantReport, b3_minus_b2, chi_intersection, chi_V_23, divisor_report,
                       higher_mult_computed, mu_cm_surface)
from .germfile import load_germ
from .stdbasis import INFINITE, Caps, parse_field

CHAR_P_NOTE = "characteristic-p result, unverified in characteristic 0"


def _settings(opts: dict) -> Settings:
    try:
        fld = parse_field(opts["field"])
    except ValueError as exc:
        raise InputError(str(exc))
    caps = Caps() if opts["max_degree"] is None else Caps(max_degree=opts["max_degree"])
    return Settings(field=fld, caps=caps, seed=opts["seed"],
                    generic_transform=not opts["no_generic_transform"])


def _common(fn):
    options = [
        click.option("--field", default="QQ", show_default=True, help="QQ or Fp:<p>"),
        click.option("--seed", default=0, show_default=True, type=int,
                     help="seed for generic group elements and random sections"),
        click.option("--no-generic-transform", is_flag=True,
                     help="fail instead of retrying with a generic group element"),
        click.option("--max-degree", type=int, default=None,
                     help="degree cap for standard basis pairs"),
        click.option("--machine", is_flag=True, help="append a key = value block"),
        click.option("--term-breakdown", is_flag=True,
                     help="show defining codimensions and their subtotals"),
    ]
    for opt in reversed(options):
        fn = opt(fn)
    return fn


def _emit_value(key: str, value: int, settings: Settings, opts: dict, extra=()) -> None:
    click.echo(f"{key} = {value}")
    if settings.field.p:
        click.echo(f"note: {CHAR_P_NOTE}")
    if opts["machine"]:
        click.echo("")
        click.echo("[result]")
        click.echo(f"{key.replace(' ', '')} = {value}")
        for k, v in extra:
            click.echo(f"{k} = {v}")
        click.echo(f"field = {settings.field.name}")


def _emit_report(key: str, report: InvariantReport, settings: Settings, opts: dict) -> None:
    click.echo(f"{key} = {report.value}")
    if settings.field.p:
        click.echo(f"note: {CHAR_P_NOTE}")
    if report.transform:
        click.echo(f"generic group element: {report.transform}")
    width = max(len(t.label) for t in report.terms)
    click.echo("")
    for t in report.terms:
        coef = f"{t.coef:+d}"
        line = f"  {coef:>3} * {t.label:<{width}}  = {t.value}"
        if opts["term_breakdown"]:
            line += f"   [codim {t.codim}]"
        click.echo(line)
    if report.sign != 1:
        click.echo(f"  overall sign {report.sign:+d}")
    if opts["term_breakdown"]:
        click.echo("")
        for codim, subtotal in report.lambdas().items():
            click.echo(f"  lambda_{codim} = {subtotal}")
    if opts["machine"]:
        click.echo("")
        click.echo("[report]")
        click.echo(f"kind = {report.kind}")
        click.echo(f"value = {report.value}")
        click.echo(f"sign = {report.sign}")
        click.echo(f"p = {report.meta_p}")
        click.echo(f"field = {settings.field.name}")
        click.echo(f"transform = {report.transform or 'none'}")
        for i, t in enumerate(report.terms, 1):
            click.echo(f"term.{i}.label = {t.label}")
            click.echo(f"term.{i}.coef = {t.coef}")
            click.echo(f"term.{i}.value = {t.value}")
            click.echo(f"term.{i}.codim = {t.codim}")


def _run(action) -> None:
    try:
        action()
    except (InputError, ParseError, NotFreeDivisorError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    except NotTransverseError as exc:
        click.echo(f"infinite: {exc}", err=True)
        sys.exit(2)
    except ResourceLimitError as exc:
        click.echo(f"resource limit: {exc}", err=True)
        sys.exit(3)


@click.group()
def main():
    """Singular Milnor numbers of matrix singularities."""


@main.command()
@click.argument("germ")
@click.option("--divisor", required=True, type=click.Choice(DIVISOR_NAMES),
              help="catalog divisor")
@_common
def mu(germ, divisor, **opts):
    """Singular Milnor number of GERM for a catalog divisor."""
    def action():
        settings = _settings(opts)
        f0 = load_germ(germ)
        _emit_report("mu", divisor_report(divisor, f0, settings), settings, opts)
    _run(action)


@main.command()
@click.argument("germ")
@_common
def tau(germ, **opts):
    """K_M,e-codimension (Tjurina number) of GERM."""
    def action():
        settings = _settings(opts)
        f0 = load_germ(germ)
        res = kme_codim_tau(f0, settings)
        if res.value is INFINITE:
            raise NotTransverseError("K_M,e-codimension is infinite")
        _emit_value("tau", res.value, settings, opts)
    _run(action)


@main.command("cm-surface")
@click.argument("germ")
@_common
def cm_surface(germ, **opts):
    """Milnor number of a Cohen-Macaulay 2x3 surface singularity."""
    def action():
        settings = _settings(opts)
        _emit_report("mu", mu_cm_surface(load_germ(germ), settings), settings, opts)
    _run(action)


@main.command("cm-3fold")
@click.argument("germ")
@_common
def cm_3fold(germ, **opts):
    """b3 - b2 of a Cohen-Macaulay 2x3 3-fold singularity."""
    def action():
        settings = _settings(opts)
        _emit_report("b3 - b2", b3_minus_b2(load_germ(germ), settings), settings, opts)
    _run(action)


@main.command()
@click.argument("germ")
@click.option("--divisor", "divisors", multiple=True, type=click.Choice(DIVISOR_NAMES),
              help="intersect these divisors instead of using the 2x3 determinantal variety")
@_common
def chi(germ, divisors, **opts):
    """Singular vanishing Euler characteristic of GERM."""
    def action():
        settings = _settings(opts)
        f0 = load_germ(germ)
        if divisors:
            value = chi_intersection(divisors, f0, settings)
            _emit_value("chi", value, settings, opts,
                        [("divisors", ", ".join(divisors))])
        else:
            _emit_report("chi", chi_V_23(f0, settings), settings, opts)
    _run(action)


@main.command("higher-mult")
@click.option("--divisor", required=True, type=click.Choice(DIVISOR_NAMES))
@click.option("--k", "k", required=True, type=int)
@click.option("--computed", is_flag=True,
              help="also compute it from a seeded random linear section")
@_common
def higher_mult_cmd(divisor, k, computed, **opts):
    """Higher multiplicity mu_k of a catalog divisor."""
    def action():
        settings = _settings(opts)
        value = higher_mult(divisor, k)
        if not computed:
            click.echo(str(value))
            return
        got = higher_mult_computed(divisor, k, settings.seed, settings)
        click.echo(str(value))
        click.echo(f"computed = {got}")
        if got != value:
            raise InputError(f"computed value {got} differs from the closed form {value}")
    _run(action)


@main.command("le-greuel")
@click.argument("germ")
@_common
def le_greuel(germ, **opts):
    """Milnor number of the icis map given in GERM."""
    def action():
        settings = _settings(opts)
        f0 = load_germ(germ)
        if not f0.icis:
            raise InputError("the germ file has no icis line")
        res = milnor_icis(f0.icis, settings)
        if res.value is INFINITE:
            raise NotTransverseError("the icis map is not an ICIS")
        _emit_value("mu", res.value, settings, opts, [("method", res.provenance)])
    _run(action)


@main.command("check-catalog")
def check_catalog_cmd():
    """Verify every divisor in the catalog."""
    rows = check_catalog()
    width = max(len(r[0]) for r in rows)
    for name, check, ok in rows:
        click.echo(f"{'pass' if ok else 'FAIL'}  {name:<{width}}  {check}")
    failed = sum(not ok for _, _, ok in rows)
    click.echo(f"{len(rows) - failed}/{len(rows)} checks passed")
    if failed:
        sys.exit(1)


if __name__ == "__main__":
    main()
