"""Decision procedures for the centralic condition and related properties.

Every checker returns a :class:`CheckReport`.  Failures carry the least
counterexample in the checker's iteration order, together with the algebra
documents needed to replay it.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Sequence

from .algebra import (
    FiniteAlgebra,
    Hom,
    compose_homs,
    enumerate_homs,
    hom_image,
    is_isomorphism,
    require_same_signature,
)
from .constructions import (
    DEFAULT_CONGRUENCE_CAP,
    CapExceeded,
    Coequaliser,
    Congruence,
    all_congruences,
    coequaliser,
    factor_through_surjection,
    principal_congruence,
    product,
    product_homs,
    pullback,
    quotient,
    relation_compose,
    subalgebra_generate,
)
from .report import FAIL, PASS, CheckReport, Counterexample, inputs_for, refused
from .terms import DEFAULT_STEP_LIMIT, term_search

DEFAULT_SHIFTING_CAP = 9

PRINCIPAL_NOTE = (
    "every congruence containing ((x,0),(x',0)) contains the principal congruence it "
    "generates, so testing the principal one decides all congruences"
)
SLICE_NOTE = "universal claims are certified for the listed finite catalog only"


def _pass(check: str, subject: Sequence[FiniteAlgebra], **kw) -> CheckReport:
    return CheckReport(check, PASS, tuple(A.name for A in subject),
                       inputs=inputs_for(*subject), **kw)


def _fail(check: str, subject: Sequence[FiniteAlgebra], bindings: dict,
          algebras: Sequence[FiniteAlgebra] | None = None, **kw) -> CheckReport:
    algebras = list(subject) if algebras is None else list(algebras)
    return CheckReport(
        check, FAIL, tuple(A.name for A in subject),
        counterexample=Counterexample(tuple(A.name for A in algebras), bindings),
        inputs=inputs_for(*subject, *algebras), **kw,
    )


# -- centralic ---------------------------------------------------------------

CongruenceGenerator = Callable[[FiniteAlgebra, int, int], Congruence]


def centralic_memberships(
    X: FiniteAlgebra, Y: FiniteAlgebra, generate: CongruenceGenerator = principal_congruence
) -> Iterable[tuple[int, int, int, Congruence, bool]]:
    """Yield ``(x, x', y, theta, member)`` for every query of the centralic check.

    ``theta`` is the congruence on ``X x Y`` generated by ``((x,0),(x',0))``
    and ``member`` says whether ``((x,y),(x',y))`` lies in it.  Pairs are
    visited with ``x' < x``; congruences are symmetric.
    """
    pd = product(X, Y)
    for x in X.elements:
        for x2 in range(x):
            theta = generate(pd.prod, pd.pair(x, 0), pd.pair(x2, 0))
            for y in Y.elements:
                yield x, x2, y, theta, theta.related(pd.pair(x, y), pd.pair(x2, y))


def centralic_pair_check(X: FiniteAlgebra, Y: FiniteAlgebra) -> CheckReport:
    require_same_signature(X, Y)
    queries = 0
    for x, x2, y, theta, ok in centralic_memberships(X, Y):
        queries += 1
        if not ok:
            return _fail("centralic", (X, Y),
                         {"x": x, "x'": x2, "y": y, "Theta": list(theta.rep)},
                         stats={"queries": queries}, notes=(PRINCIPAL_NOTE,))
    return _pass("centralic", (X, Y), stats={"queries": queries}, notes=(PRINCIPAL_NOTE,))


def is_centralic_slice(algebras: Sequence[FiniteAlgebra]) -> bool:
    return all(centralic_pair_check(X, Y).passed for X in algebras for Y in algebras)


# -- products versus coequalisers ---------------------------------------------


def coequaliser_instances(algebras: Sequence[FiniteAlgebra]) -> list[Coequaliser]:
    """Coequalisers of every parallel pair ``f <= g`` (map order) between the given algebras."""
    out = []
    for C in algebras:
        for X in algebras:
            if C.sig != X.sig:
                continue
            homs = enumerate_homs(C, X)
            for f, g in itertools.combinations_with_replacement(homs, 2):
                out.append(coequaliser(f, g))
    return out


def _coeq_bindings(c1: Coequaliser, c2: Coequaliser) -> dict:
    return {
        "C1": c1.f.dom.name, "X1": c1.f.cod.name, "u1": list(c1.f.map), "v1": list(c1.g.map),
        "C2": c2.f.dom.name, "X2": c2.f.cod.name, "u2": list(c2.f.map), "v2": list(c2.g.map),
    }


def coeq_product_comparison(c1: Coequaliser, c2: Coequaliser) -> tuple[Coequaliser, Hom]:
    """The coequaliser of ``u1 x u2, v1 x v2`` and its comparison map to ``Q1 x Q2``."""
    co = coequaliser(product_homs(c1.f, c2.f), product_homs(c1.g, c2.g))
    qq = product_homs(c1.q, c2.q)
    comparison = factor_through_surjection(co.q, qq)
    if comparison is None:
        raise AssertionError("q1 x q2 does not coequalise u1 x u2 and v1 x v2")
    return co, comparison


def coeq_product_commute_check(c1: Coequaliser, c2: Coequaliser) -> CheckReport:
    for c in (c1, c2):
        if not isinstance(c, Coequaliser):
            raise TypeError("instances must come from constructions.coequaliser")
    co, comparison = coeq_product_comparison(c1, c2)
    subject = _distinct(c1.f.dom, c1.f.cod, c2.f.dom, c2.f.cod)
    stats = {"product_size": co.f.cod.size, "coequaliser_size": co.obj.size,
             "target_size": comparison.cod.size}
    if is_isomorphism(comparison):
        return _pass("coeq-product", subject, stats=stats)
    pd = product(c1.f.cod, c2.f.cod)
    qq = product_homs(c1.q, c2.q)
    for p, p2 in itertools.combinations(pd.prod.elements, 2):
        if qq(p) == qq(p2) and co.q(p) != co.q(p2):
            b = _coeq_bindings(c1, c2)
            b.update({"p": list(pd.unpair(p)), "p'": list(pd.unpair(p2))})
            return _fail("coeq-product", subject, b, stats=stats)
    raise AssertionError("comparison is not an isomorphism but no witness was found")


def coeq_product_slice_check(algebras: Sequence[FiniteAlgebra]) -> CheckReport:
    """Run the comparison over every pair of coequaliser instances of the slice."""
    instances = coequaliser_instances(algebras)
    n = 0
    for c1, c2 in itertools.product(instances, repeat=2):
        n += 1
        r = coeq_product_commute_check(c1, c2)
        if r.failed:
            r.stats.update(instance_pairs_checked=n)
            r.catalog = tuple(A.name for A in algebras)
            return r
    return CheckReport("coeq-product", PASS, tuple(A.name for A in algebras),
                       stats={"instances": len(instances), "instance_pairs_checked": n},
                       catalog=tuple(A.name for A in algebras), notes=(SLICE_NOTE,),
                       inputs=inputs_for(*algebras))


def _distinct(*algebras: FiniteAlgebra) -> list[FiniteAlgebra]:
    out: list[FiniteAlgebra] = []
    for A in algebras:
        if A not in out:
            out.append(A)
    return out


# -- (T) and (S) --------------------------------------------------------------


def _axis_coequalising(X: FiniteAlgebra, cap: int):
    """Yield ``(theta, Q, q, f)`` for congruences on ``X x X`` with ``q i1 = q i2``."""
    pd = product(X, X)
    for theta in all_congruences(pd.prod, cap):
        if all(theta.related(pd.i1(x), pd.i2(x)) for x in X.elements):
            Q, q = quotient(pd.prod, theta)
            yield theta, Q, q, compose_homs(q, pd.i1)


def condition_T_check(X: FiniteAlgebra, cap: int = DEFAULT_CONGRUENCE_CAP) -> CheckReport:
    """For every regular quotient ``q`` of ``X x X`` with ``q i1 = q i2``, ``q i1`` is onto."""
    try:
        qualifying = 0
        pd = product(X, X)
        for theta, Q, q, f in _axis_coequalising(X, cap):
            qualifying += 1
            img = set(f.map)
            if len(img) < Q.size:
                missing = next(p for p in pd.prod.elements if q(p) not in img)
                return _fail("T", (X,), {"Theta": list(theta.rep),
                                         "missing": list(pd.unpair(missing)),
                                         "f": list(f.map)},
                             stats={"qualifying_congruences": qualifying})
    except CapExceeded as exc:
        return refused("T", (X.name,), exc)
    return _pass("T", (X,), stats={"qualifying_congruences": qualifying})


def condition_S_check(X: FiniteAlgebra, cap: int = DEFAULT_CONGRUENCE_CAP) -> CheckReport:
    """Each qualifying quotient lands inside the subalgebra generated by its axis image."""
    try:
        qualifying = 0
        pd = product(X, X)
        t_verdict = condition_T_check(X, cap).verdict
        for theta, Q, q, f in _axis_coequalising(X, cap):
            qualifying += 1
            W = subalgebra_generate(Q, f.map)
            outside = [p for p in pd.prod.elements if q(p) not in W.members]
            if outside:
                return _fail("S", (X,), {"Theta": list(theta.rep),
                                         "outside": list(pd.unpair(outside[0])),
                                         "W": list(W.members)},
                             stats={"qualifying_congruences": qualifying,
                                    "agrees_with_T": t_verdict == FAIL})
    except CapExceeded as exc:
        return refused("S", (X.name,), exc)
    return _pass("S", (X,), stats={"qualifying_congruences": qualifying,
                                   "agrees_with_T": t_verdict == PASS})


# -- unital and weakly unital ------------------------------------------------


def unital_check(X: FiniteAlgebra, Y: FiniteAlgebra) -> CheckReport:
    require_same_signature(X, Y)
    pd = product(X, Y)
    S = subalgebra_generate(pd.prod, pd.axes())
    if len(S) == pd.prod.size:
        return _pass("unital", (X, Y), stats={"generated": len(S)})
    missing = next(p for p in pd.prod.elements if p not in S.members)
    return _fail("unital", (X, Y), {"missing": list(pd.unpair(missing)),
                                    "generated": [list(pd.unpair(p)) for p in S.members]},
                 stats={"generated": len(S)})


def weakly_unital_check(
    X: FiniteAlgebra, Y: FiniteAlgebra, tests: Sequence[FiniteAlgebra]
) -> CheckReport:
    """Homs out of ``X x Y`` into any test algebra are determined by their axis values."""
    require_same_signature(X, Y)
    pd = product(X, Y)
    axes = pd.axes()
    used = [Z for Z in tests if Z.sig == X.sig]
    homs_seen = 0
    for Z in used:
        by_axes: dict[tuple[int, ...], Hom] = {}
        for h in enumerate_homs(pd.prod, Z):
            homs_seen += 1
            key = tuple(h(a) for a in axes)
            if key in by_axes:
                return _fail("weakly-unital", (X, Y),
                             {"Z": Z.name, "h": list(by_axes[key].map), "k": list(h.map)},
                             algebras=(X, Y, Z), stats={"homs": homs_seen},
                             catalog=tuple(T.name for T in used))
            by_axes[key] = h
    return _pass("weakly-unital", (X, Y), stats={"homs": homs_seen},
                 catalog=tuple(T.name for T in used), notes=(SLICE_NOTE,))


# -- Gumm shifting, factor permutability -------------------------------------


def gumm_shifting_check(A: FiniteAlgebra, cap: int = DEFAULT_SHIFTING_CAP) -> CheckReport:
    """Shifting lemma over every triple of congruences of ``A``."""
    if A.size > cap:
        return refused("gumm", (A.name,), CapExceeded(f"shifting check on {A.name}", A.size, cap))
    cons = all_congruences(A, max(cap, A.size))
    n = A.size
    stats = {"congruences": len(cons), "bound": len(cons) ** 3 * n**4}
    for ri, R in enumerate(cons):
        rcls = {x: [y for y in A.elements if R.related(x, y)] for x in A.elements}
        for si, S in enumerate(cons):
            meet = R.meet(S)
            quads = []
            for x in A.elements:
                for w in A.elements:
                    if not S.related(x, w):
                        continue
                    for y in rcls[x]:
                        for z in rcls[w]:
                            if S.related(y, z):
                                quads.append((x, y, z, w))
            if not quads:
                continue
            for ti, T in enumerate(cons):
                if not meet <= T:
                    continue
                for x, y, z, w in quads:
                    if T.related(y, z) and not T.related(x, w):
                        return _fail("gumm", (A,), {
                            "R": list(R.rep), "S": list(S.rep), "T": list(T.rep),
                            "x": x, "y": y, "z": z, "w": w,
                        }, stats=stats)
    return _pass("gumm", (A,), stats=stats)


def factor_congruence_pairs(A: FiniteAlgebra, cap: int = DEFAULT_SHIFTING_CAP):
    """Pairs of congruences giving a direct decomposition of ``A``."""
    cons = all_congruences(A, max(cap, A.size))
    out = []
    for t1, t2 in itertools.combinations_with_replacement(cons, 2):
        if not t1.meet(t2).is_equality():
            continue
        c12 = relation_compose(t1, t2)
        if c12.is_total() and c12 == relation_compose(t2, t1):
            out.append((t1, t2))
    return out


def factor_permutable_check(A: FiniteAlgebra, cap: int = DEFAULT_SHIFTING_CAP) -> CheckReport:
    if A.size > cap:
        return refused("factor-permutable", (A.name,),
                       CapExceeded(f"factor permutability on {A.name}", A.size, cap))
    cons = all_congruences(A, max(cap, A.size))
    factors: list[Congruence] = []
    for t1, t2 in factor_congruence_pairs(A, cap):
        for t in (t1, t2):
            if t not in factors:
                factors.append(t)
    factors.sort(key=lambda c: (-c.num_classes, c.rep))
    stats = {"congruences": len(cons), "factor_congruences": len(factors)}
    for theta in factors:
        for E in cons:
            left = relation_compose(theta, E)
            right = relation_compose(E, theta)
            if left != right:
                extra = min(left.pairs ^ right.pairs)
                return _fail("factor-permutable", (A,), {
                    "theta": list(theta.rep), "E": list(E.rep), "pair": list(extra),
                    "in": "theta.E" if extra in left.pairs else "E.theta",
                }, stats=stats)
    return _pass("factor-permutable", (A,), stats=stats)


# -- local centralic ---------------------------------------------------------


def local_centralic_check(p: Hom, q: Hom) -> CheckReport:
    """``(x,u) Θ (y,u)`` forces ``(x,v) Θ (y,v)`` inside the pullback of ``p`` and ``q``."""
    pb = pullback(p, q)
    index = {pair: i for i, pair in enumerate(pb.pairs)}
    P = pb.obj
    queries = 0
    subject = _distinct(p.dom, q.dom, p.cod)
    for (x, u), (y, u2) in itertools.permutations(pb.pairs, 2):
        if u != u2:
            continue
        theta = principal_congruence(P, index[(x, u)], index[(y, u)])
        for v in q.dom.elements:
            if (x, v) in index and (y, v) in index:
                queries += 1
                if not theta.related(index[(x, v)], index[(y, v)]):
                    return _fail("local-centralic", subject, {
                        "p": list(p.map), "q": list(q.map),
                        "A": p.dom.name, "B": q.dom.name, "X": p.cod.name,
                        "x": x, "y": y, "u": u, "v": v,
                    }, stats={"queries": queries, "pullback_size": P.size})
    return _pass("local-centralic", subject, stats={"queries": queries, "pullback_size": P.size},
                 witness={"p": list(p.map), "q": list(q.map),
                          "A": p.dom.name, "B": q.dom.name, "X": p.cod.name})


# -- terms -------------------------------------------------------------------


def term_check(A: FiniteAlgebra, kind: str, step_limit: int = DEFAULT_STEP_LIMIT) -> CheckReport:
    try:
        res = term_search(A, kind, step_limit)
    except CapExceeded as exc:
        return refused(f"term-{kind}", (A.name,), exc)
    stats = {"closure_size": res.closure_size, "steps": res.steps}
    if res.term is not None:
        return _pass(f"term-{kind}", (A,), witness={"term": str(res.term)}, stats=stats)
    return _fail(f"term-{kind}", (A,), {"closure_size": res.closure_size, "exhausted": True},
                 stats=stats)


# -- catalog-level helpers ----------------------------------------------------


def surjective(f: Hom) -> bool:
    return hom_image(f).surjective
