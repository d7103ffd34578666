"""Reflections onto commutative and abelian objects.

The commutative reflection of ``X`` is the coequaliser of the two product
injections ``X -> X x X``; the abelian reflection of a commutative ``X`` is
the quotient of ``X x X`` by the congruence generated by the diagonal.  In
both cases the unit is the quotient map precomposed with the first injection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import (
    FiniteAlgebra,
    Hom,
    compose_homs,
    dump_algebra,
    enumerate_homs,
    hom_image,
    is_isomorphism,
)
from .centrality import commutative_structures, is_abelian_object, is_commutative
from .constructions import (
    all_subalgebras,
    all_congruences,
    coequaliser,
    factor_through_surjection,
    generate_congruence,
    pair_homs,
    product,
    product_homs,
    quotient,
)
from .report import FAIL, PASS, CheckReport, Counterexample, inputs_for

COM, AB = "com", "ab"


class NotCommutativeError(ValueError):
    pass


@dataclass(frozen=True)
class ReflectionResult:
    source: FiniteAlgebra
    reflected: FiniteAlgebra
    unit: Hom
    kind: str
    q: Hom  # the quotient X x X -> reflected


def _result(X: FiniteAlgebra, q: Hom, kind: str) -> ReflectionResult:
    label = "Com" if kind == COM else "Ab"
    R = q.cod.renamed(f"{label}({X.name})")
    q = Hom(q.dom, R, q.map, check=False)
    return ReflectionResult(X, R, compose_homs(q, product(X, X).i1), kind, q)


def com_reflection(X: FiniteAlgebra) -> ReflectionResult:
    pd = product(X, X)
    return _result(X, coequaliser(pd.i1, pd.i2).q, COM)


def ab_reflection(X: FiniteAlgebra) -> ReflectionResult:
    if not commutative_structures(X):
        raise NotCommutativeError(f"{X.name} carries no unitary magma structure")
    pd = product(X, X)
    theta = generate_congruence(pd.prod, [(pd.pair(x, x), 0) for x in X.elements])
    _, q = quotient(pd.prod, theta)
    return _result(X, q, AB)


def reflect(X: FiniteAlgebra, kind: str) -> ReflectionResult:
    if kind == COM:
        return com_reflection(X)
    if kind == AB:
        return ab_reflection(X)
    raise ValueError(f"unknown reflection {kind!r}")


def satisfies(X: FiniteAlgebra, predicate: str) -> bool:
    if predicate in (COM, "commutative"):
        return is_commutative(X)
    if predicate in (AB, "abelian"):
        return is_abelian_object(X)[0]
    raise ValueError(f"unknown predicate {predicate!r}")


def verify_universal_arrow(
    res: ReflectionResult, predicate: str, tests: Sequence[FiniteAlgebra]
) -> CheckReport:
    """Every ``h: source -> T`` with ``T`` in the class factors uniquely through the unit."""
    subject = (res.source.name,)
    catalog = tuple(T.name for T in tests)
    inputs = inputs_for(res.source, *tests)
    if not satisfies(res.reflected, predicate):
        return CheckReport(f"universal-{res.kind}", FAIL, subject, catalog=catalog, inputs=inputs,
                           counterexample=Counterexample(subject, {"reflected_not": predicate}))
    checked = 0
    for T in tests:
        if T.sig != res.source.sig or not satisfies(T, predicate):
            continue
        candidates = enumerate_homs(res.reflected, T)
        for h in enumerate_homs(res.source, T):
            checked += 1
            n = sum(1 for k in candidates if compose_homs(k, res.unit) == h)
            if n != 1:
                return CheckReport(
                    f"universal-{res.kind}", FAIL, subject, catalog=catalog, inputs=inputs,
                    counterexample=Counterexample(
                        (res.source.name, T.name),
                        {"T": T.name, "h": list(h.map), "factorisations": n}),
                    stats={"homs_checked": checked})
    return CheckReport(f"universal-{res.kind}", PASS, subject, catalog=catalog, inputs=inputs,
                       witness={"reflected_size": res.reflected.size, "unit": list(res.unit.map)},
                       stats={"homs_checked": checked})


def reflect_hom(f: Hom, kind: str = COM) -> Hom | None:
    """``r(f)``: the factorisation of ``unit_Y ∘ f`` through ``unit_X``."""
    rx, ry = reflect(f.dom, kind), reflect(f.cod, kind)
    return factor_through_surjection(rx.q, compose_homs(ry.q, product_homs(f, f)))


def verify_product_preservation(X: FiniteAlgebra, Y: FiniteAlgebra) -> CheckReport:
    """Whether ``r(X x Y) -> r(X) x r(Y)`` is an isomorphism, computed two ways.

    First through ``r(pi1)`` and ``r(pi2)``; then as the comparison from the
    coequaliser of ``i1 x i1`` and ``i2 x i2`` on ``(X x X) x (Y x Y)``.
    The two must give the same map.
    """
    pxy = product(X, Y)
    rx, ry, rxy = com_reflection(X), com_reflection(Y), com_reflection(pxy.prod)
    target = product(rx.reflected, ry.reflected)
    subject = (X.name, Y.name)
    inputs = inputs_for(X, Y)

    # r(pi) is induced on the quotients of the squares, where the maps are onto
    r1 = factor_through_surjection(rxy.q, compose_homs(rx.q, product_homs(pxy.pi1, pxy.pi1)))
    r2 = factor_through_surjection(rxy.q, compose_homs(ry.q, product_homs(pxy.pi2, pxy.pi2)))
    if r1 is None or r2 is None:
        return CheckReport("products", FAIL, subject, inputs=inputs,
                           counterexample=Counterexample(subject, {"route": "projections",
                                                                   "reason": "r(pi) undefined"}))
    via_projections = pair_homs(r1, r2)

    dx, dy = product(X, X), product(Y, Y)
    co = coequaliser(product_homs(dx.i1, dy.i1), product_homs(dx.i2, dy.i2))
    to_target = factor_through_surjection(co.q, product_homs(rx.q, ry.q))
    big = product(pxy.prod, pxy.prod)
    shuffle = pair_homs(product_homs(pxy.pi1, pxy.pi1), product_homs(pxy.pi2, pxy.pi2))
    assert shuffle.dom == big.prod
    phi = factor_through_surjection(rxy.q, compose_homs(co.q, shuffle))
    if to_target is None or phi is None:
        return CheckReport("products", FAIL, subject, inputs=inputs,
                           counterexample=Counterexample(subject, {"route": "coequaliser",
                                                                   "reason": "no comparison"}))
    via_coequaliser = compose_homs(to_target, phi)
    iso1, iso2 = is_isomorphism(via_projections), is_isomorphism(to_target) and is_isomorphism(phi)
    stats = {"source_size": rxy.reflected.size, "target_size": target.prod.size,
             "routes_agree": via_projections == via_coequaliser and iso1 == iso2}
    if not stats["routes_agree"]:
        return CheckReport("products", FAIL, subject, inputs=inputs, stats=stats,
                           counterexample=Counterexample(subject, {
                               "route": "disagreement",
                               "projections": list(via_projections.map),
                               "coequaliser": list(via_coequaliser.map)}))
    if not iso1:
        img = hom_image(via_projections)
        return CheckReport("products", FAIL, subject, inputs=inputs, stats=stats,
                           counterexample=Counterexample(subject, {
                               "comparison": list(via_projections.map),
                               "injective": img.injective, "surjective": img.surjective}))
    return CheckReport("products", PASS, subject, inputs=inputs, stats=stats,
                       witness={"comparison": list(via_projections.map)})


# -- closure properties ----------------------------------------------------------


def _fail(check: str, algebras: Sequence[FiniteAlgebra], bindings: dict) -> CheckReport:
    names = tuple(A.name for A in algebras)
    return CheckReport(check, FAIL, names, counterexample=Counterexample(names, bindings),
                       inputs=inputs_for(*algebras))


def commutative_closure_check(algebras: Sequence[FiniteAlgebra]) -> CheckReport:
    """Commutative members are closed under products, subalgebras and quotients."""
    comm = [X for X in algebras if is_commutative(X)]
    checked = 0
    for X in comm:
        for Y in comm:
            if X.sig != Y.sig:
                continue
            checked += 1
            if not is_commutative(product(X, Y).prod):
                return _fail("com-closure", (X, Y), {"construction": "product"})
        for S in all_subalgebras(X):
            checked += 1
            if not is_commutative(S.algebra):
                return _fail("com-closure", (X,), {"construction": "subalgebra",
                                                   "members": list(S.members)})
        for theta in all_congruences(X):
            checked += 1
            if not is_commutative(quotient(X, theta)[0]):
                return _fail("com-closure", (X,), {"construction": "quotient",
                                                   "Theta": list(theta.rep)})
    names = tuple(A.name for A in algebras)
    return CheckReport("com-closure", PASS, names, catalog=names,
                       stats={"commutative": [X.name for X in comm], "constructions": checked},
                       inputs=inputs_for(*algebras))


def coequaliser_inclusion_check(algebras: Sequence[FiniteAlgebra]) -> CheckReport:
    """Coequalisers of homs between commutative members are commutative."""
    comm = [X for X in algebras if is_commutative(X)]
    checked = 0
    for X in comm:
        for Y in comm:
            if X.sig != Y.sig:
                continue
            homs = enumerate_homs(X, Y)
            for i, f in enumerate(homs):
                for g in homs[i:]:
                    checked += 1
                    if not is_commutative(coequaliser(f, g).obj):
                        return _fail("com-coequalisers", (X, Y),
                                     {"f": list(f.map), "g": list(g.map)})
    names = tuple(A.name for A in algebras)
    return CheckReport("com-coequalisers", PASS, names, catalog=names,
                       stats={"pairs": checked}, inputs=inputs_for(*algebras))


def idempotence_check(X: FiniteAlgebra, kind: str) -> CheckReport:
    """On an object already in the class the unit is an isomorphism."""
    res = reflect(X, kind)
    if is_isomorphism(res.unit):
        return CheckReport(f"idempotent-{kind}", PASS, (X.name,), inputs=inputs_for(X))
    return _fail(f"idempotent-{kind}", (X,), {"unit": list(res.unit.map)})


def ab_unit_naturality_check(f: Hom) -> CheckReport:
    """``r(f) ∘ unit_X = unit_Y ∘ f`` for a hom between commutative objects."""
    rf = reflect_hom(f, AB)
    if rf is None:
        return _fail("ab-naturality", (f.dom, f.cod), {"f": list(f.map)})
    rx, ry = ab_reflection(f.dom), ab_reflection(f.cod)
    ok = compose_homs(rf, rx.unit) == compose_homs(ry.unit, f)
    if not ok:
        return _fail("ab-naturality", (f.dom, f.cod), {"f": list(f.map), "r(f)": list(rf.map)})
    return CheckReport("ab-naturality", PASS, (f.dom.name, f.cod.name),
                       witness={"f": list(f.map), "r(f)": list(rf.map)},
                       inputs=inputs_for(f.dom, f.cod))


def reflection_report(X: FiniteAlgebra, kind: str) -> CheckReport:
    res = reflect(X, kind)
    witness = {"reflected": dump_algebra(res.reflected), "unit": list(res.unit.map)}
    return CheckReport(f"reflect-{kind}", PASS, (X.name,), witness=witness,
                       stats={"reflected_size": res.reflected.size}, inputs=inputs_for(X))
