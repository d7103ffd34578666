"""Command-line front end.

Exit status: 0 when every report passes, 1 when some check fails, 2 when a
check is refused (cap exceeded, non-centralic ambient) or the input is bad.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Callable

import click

from . import catalog as cat
from .algebra import (
    AlgebraError,
    FiniteAlgebra,
    Hom,
    enumerate_homs,
    identity,
    load_algebra,
    load_algebra_file,
)
from .centrality import (
    ConsistencyFault,
    NotCentralError,
    NotCentralicError,
    abelian_check,
    central_check,
    commutative_check,
    cooperators_check,
    symmetrizable_check,
    z_monoid,
)
from .conditions import (
    centralic_pair_check,
    coeq_product_slice_check,
    condition_S_check,
    condition_T_check,
    factor_permutable_check,
    gumm_shifting_check,
    local_centralic_check,
    term_check,
    unital_check,
    weakly_unital_check,
)
from .constructions import DEFAULT_CONGRUENCE_CAP, CapExceeded, factors_of, product
from .reflections import (
    NotCommutativeError,
    reflect,
    reflection_report,
    verify_product_preservation,
    verify_universal_arrow,
)
from .replay import ReplayError, replay
from .report import REFUSED, CheckReport, ReportDocument, emit, refused
from .suite import run_suite
from .terms import DEFAULT_STEP_LIMIT

TRIVIAL_PREFIX = "trivial"


# -- resolving algebra and catalog arguments --------------------------------------


def resolve_algebra(spec: str, partner: FiniteAlgebra | None = None) -> FiniteAlgebra:
    """A catalog name or alias, a JSON file, ``trivial[:signature]``, or ``A*B``."""
    if "*" in spec and not Path(spec).exists():
        left, right = spec.split("*", 1)
        A = resolve_algebra(left, partner)
        return product(A, resolve_algebra(right, A)).prod
    if spec.startswith(TRIVIAL_PREFIX):
        label = spec.partition(":")[2]
        if label:
            if label not in cat.SIGNATURES:
                raise click.BadParameter(f"unknown signature {label!r}")
            return cat.trivial(cat.SIGNATURES[label])
        if partner is None:
            raise click.BadParameter("bare 'trivial' needs a partner; use trivial:<signature>")
        return cat.trivial(partner.sig)
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        return load_algebra_file(path)
    try:
        return cat.by_name(spec)
    except KeyError:
        raise click.BadParameter(f"unknown algebra {spec!r} (not a catalog name or file)")


def resolve_catalog(spec: str | None, like: FiniteAlgebra | None = None) -> list[FiniteAlgebra]:
    """``all``, a signature label, a catalog name, or a JSON file of algebra documents."""
    if spec is None:
        return cat.signature_slice(like.sig) if like is not None else cat.full_catalog()
    if spec == "all":
        return cat.full_catalog()
    if spec in cat.SIGNATURES:
        return cat.signature_slice(cat.SIGNATURES[spec])
    path = Path(spec)
    if path.exists():
        raw = json.loads(path.read_text())
        docs = raw if isinstance(raw, list) else raw.get("algebras", [raw])
        return [load_algebra(d) for d in docs]
    try:
        return cat.catalog(spec)
    except KeyError:
        raise click.BadParameter(f"unknown catalog {spec!r}")


def _pair(left: str | None, right: str | None) -> tuple[FiniteAlgebra, FiniteAlgebra]:
    if left is None or right is None:
        raise click.UsageError("--left and --right are required")
    if left.startswith(TRIVIAL_PREFIX) and ":" not in left:
        Y = resolve_algebra(right)
        return resolve_algebra(left, Y), Y
    X = resolve_algebra(left)
    return X, resolve_algebra(right, X)


def _one(spec: str | None) -> FiniteAlgebra:
    if spec is None:
        raise click.UsageError("--algebra is required")
    return resolve_algebra(spec)


def _map(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise click.BadParameter(f"not a JSON list: {text!r} ({exc})")
    if not isinstance(value, list) or not all(isinstance(v, int) for v in value):
        raise click.BadParameter(f"expected a list of integers, got {text!r}")
    return value


# -- output -------------------------------------------------------------------


def _finish(reports: list[CheckReport], as_json: bool) -> None:
    doc = ReportDocument(reports)
    sys.stdout.buffer.write(emit(doc, "json" if as_json else "text"))
    sys.stdout.flush()
    sys.exit(doc.exit_status)


def _run(as_json: bool, build: Callable[[], list[CheckReport]]) -> None:
    try:
        reports = build()
    except CapExceeded as exc:
        reports = [refused("cap", (), exc)]
    except NotCentralicError as exc:
        cause = exc.report
        rep = CheckReport("refusal", REFUSED, cause.subject if cause is not None else (),
                          stats={"reason": str(exc)},
                          witness={"centralic": cause.to_dict()} if cause is not None else None)
        reports = [rep]
    except (AlgebraError, NotCentralError, NotCommutativeError, ReplayError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except ConsistencyFault as exc:
        click.echo(f"internal consistency fault: {exc}", err=True)
        sys.exit(2)
    _finish(reports, as_json)


def common(fn):
    fn = click.option("--json", "as_json", is_flag=True, help="Canonical JSON output.")(fn)
    fn = click.option("--cap-steps", type=click.IntRange(min=1), default=DEFAULT_STEP_LIMIT,
                      show_default=True, help="Term-search step limit.")(fn)
    fn = click.option("--cap-congruences", type=click.IntRange(min=1),
                      default=DEFAULT_CONGRUENCE_CAP, show_default=True,
                      help="Largest carrier whose congruences are enumerated.")(fn)
    fn = click.option("--catalog", "catalog_spec", default=None,
                      help="Test catalog: all, a signature, a catalog name, or a file.")(fn)
    fn = click.option("--right", default=None, help="Second algebra of a pair.")(fn)
    fn = click.option("--left", default=None, help="First algebra of a pair.")(fn)
    fn = click.option("--algebra", default=None, help="Catalog name, alias, file, or A*B.")(fn)
    return fn


@click.group()
@click.version_option(package_name="centralic")
def main() -> None:
    """Finite-algebra workbench for centrality and the centralic condition."""


# -- check --------------------------------------------------------------------

CHECKS = ("centralic", "T", "S", "unital", "weakly-unital", "gumm", "factor-permutable",
          "local-centralic", "coeq-product")


@main.command()
@click.argument("kind", type=click.Choice(CHECKS))
@common
def check(kind, algebra, left, right, catalog_spec, cap_congruences, cap_steps, as_json):
    """Decide one property on an algebra or a pair."""

    def build() -> list[CheckReport]:
        if kind == "centralic":
            return [centralic_pair_check(*_pair(left, right))]
        if kind == "unital":
            return [unital_check(*_pair(left, right))]
        if kind == "weakly-unital":
            X, Y = _pair(left, right)
            return [weakly_unital_check(X, Y, resolve_catalog(catalog_spec, X))]
        if kind == "T":
            return [condition_T_check(_one(algebra), cap_congruences)]
        if kind == "S":
            return [condition_S_check(_one(algebra), cap_congruences)]
        if kind == "gumm":
            return [gumm_shifting_check(_one(algebra))]
        if kind == "factor-permutable":
            return [factor_permutable_check(_one(algebra))]
        if kind == "local-centralic":
            A = _one(algebra)
            p = factors_of(A).pi1 if A.factors is not None else identity(A)
            return [local_centralic_check(p, p)]
        A = _one(algebra)
        return [coeq_product_slice_check([cat.trivial(A.sig), A])]

    _run(as_json, build)


# -- cooperators and the additive core ------------------------------------------


def _hom_arg(dom: FiniteAlgebra, cod: FiniteAlgebra, text: str | None, what: str) -> Hom:
    m = _map(text)
    if m is None:
        if dom != cod:
            raise click.UsageError(f"--{what} is required when domain and codomain differ")
        return identity(dom)
    return Hom(dom, cod, m)


@main.command()
@click.option("--f", "f_map", default=None, help="Table of f: left -> algebra (default identity).")
@click.option("--g", "g_map", default=None, help="Table of g: right -> algebra (default identity).")
@common
def cooperators(f_map, g_map, algebra, left, right, catalog_spec, cap_congruences, cap_steps,
                as_json):
    """List every cooperator of f and g."""

    def build() -> list[CheckReport]:
        X = _one(algebra)
        A = resolve_algebra(left, X) if left else X
        B = resolve_algebra(right, X) if right else X
        f, g = _hom_arg(A, X, f_map, "f"), _hom_arg(B, X, g_map, "g")
        return [cooperators_check(f, g)]

    _run(as_json, build)


def _homs_or_given(X, Y, f_map) -> list[Hom]:
    m = _map(f_map)
    return [Hom(X, Y, m)] if m is not None else enumerate_homs(X, Y)


@main.command()
@click.option("--f", "f_map", default=None, help="Table of one hom left -> right.")
@common
def central(f_map, algebra, left, right, catalog_spec, cap_congruences, cap_steps, as_json):
    """Decide centrality of a hom (or of every hom left -> right)."""

    def build() -> list[CheckReport]:
        X, Y = _pair(left, right)
        return [central_check(f) for f in _homs_or_given(X, Y, f_map)]

    _run(as_json, build)


@main.command()
@common
def zmonoid(algebra, left, right, catalog_spec, cap_congruences, cap_steps, as_json):
    """Compute the monoid of central homs left -> right and check its laws."""
    _run(as_json, lambda: [z_monoid(*_pair(left, right)).report])


@main.command()
@click.option("--f", "f_map", default=None, help="Table of one central hom left -> right.")
@common
def symmetrizable(f_map, algebra, left, right, catalog_spec, cap_congruences, cap_steps, as_json):
    """Decide symmetrizability of central homs by both characterisations."""

    def build() -> list[CheckReport]:
        X, Y = _pair(left, right)
        table = z_monoid(X, Y)
        fs = [Hom(X, Y, _map(f_map))] if f_map else list(table.carrier)
        return [symmetrizable_check(f, table) for f in fs]

    _run(as_json, build)


@main.command()
@common
def commutative(algebra, left, right, catalog_spec, cap_congruences, cap_steps, as_json):
    """List the unitary magma structures of an algebra."""

    def build() -> list[CheckReport]:
        return [commutative_check(_one(algebra))]

    _run(as_json, build)


@main.command()
@common
def abelian(algebra, left, right, catalog_spec, cap_congruences, cap_steps, as_json):
    """Decide whether an algebra is an abelian object."""

    def build() -> list[CheckReport]:
        return [abelian_check(_one(algebra))]

    _run(as_json, build)


# -- reflections ----------------------------------------------------------------


@main.command("reflect")
@click.argument("kind", type=click.Choice(["com", "ab"]))
@common
def reflect_cmd(kind, algebra, left, right, catalog_spec, cap_congruences, cap_steps, as_json):
    """Compute the commutative or abelian reflection of an algebra."""

    def build() -> list[CheckReport]:
        return [reflection_report(_one(algebra), kind)]

    _run(as_json, build)


@main.command()
@click.argument("what", type=click.Choice(["universal", "products"]))
@click.option("--kind", type=click.Choice(["com", "ab"]), default="com", show_default=True)
@common
def verify(what, kind, algebra, left, right, catalog_spec, cap_congruences, cap_steps, as_json):
    """Verify the universal arrow of a reflection, or product preservation."""

    def build() -> list[CheckReport]:
        if what == "products":
            return [verify_product_preservation(*_pair(left, right))]
        X = _one(algebra)
        tests = resolve_catalog(catalog_spec or "all")
        pred = "commutative" if kind == "com" else "abelian"
        return [verify_universal_arrow(reflect(X, kind), pred, tests)]

    _run(as_json, build)


# -- terms, replay, suite --------------------------------------------------------


@main.command()
@click.argument("kind", type=click.Choice(["majority", "m4", "plus"]))
@common
def terms(kind, algebra, left, right, catalog_spec, cap_congruences, cap_steps, as_json):
    """Search for a majority, m4 or unital-plus term."""
    name = "unital_plus" if kind == "plus" else kind
    _run(as_json, lambda: [term_check(_one(algebra), name, cap_steps)])


@main.command("replay")
@click.argument("path", type=click.Path(exists=True, dir_okay=False, allow_dash=True))
@click.option("--json", "as_json", is_flag=True)
@click.option("--cap-congruences", type=click.IntRange(min=1), default=DEFAULT_CONGRUENCE_CAP)
@click.option("--cap-steps", type=click.IntRange(min=1), default=DEFAULT_STEP_LIMIT)
def replay_cmd(path, as_json, cap_congruences, cap_steps):
    """Re-derive every verdict in a saved JSON report."""

    def build() -> list[CheckReport]:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ReplayError(f"{path}: not JSON ({exc})") from None
        reports = raw["reports"] if "reports" in raw else [raw]
        out = []
        for d in reports:
            old = CheckReport.from_dict(d)
            if old.refused or old.check == "refusal":
                out.append(old)
                continue
            again, same = replay(old, cap_congruences, cap_steps)
            if not same:
                raise ReplayError(f"{old.check} {list(old.subject)}: verdict did not reproduce "
                                  f"({old.verdict} -> {again.verdict})")
            out.append(again)
        return out

    _run(as_json, build)


@main.command()
@click.option("--json", "as_json", is_flag=True)
@click.option("--timing", is_flag=True, help="Include wall-clock timing (breaks byte-identity).")
@click.option("--cap-congruences", type=click.IntRange(min=1), default=DEFAULT_CONGRUENCE_CAP)
@click.option("--cap-steps", type=click.IntRange(min=1), default=DEFAULT_STEP_LIMIT)
def suite(as_json, timing, cap_congruences, cap_steps):
    """Run every checker over the built-in catalog."""
    doc = run_suite(cap_congruences, cap_steps)
    sys.stdout.buffer.write(emit(doc, "json" if as_json else "text", include_timing=timing))
    sys.stdout.flush()
    sys.exit(doc.exit_status)


if __name__ == "__main__":
    main()
