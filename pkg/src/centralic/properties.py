"""Catalog-wide invariant suites.

Each suite quantifies a structural statement over a finite slice (algebras
of one signature) and returns one :class:`CheckReport`, failing with the
first violating instance.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence

from .algebra import FiniteAlgebra, Hom, compose_homs, enumerate_homs, identity
from .catalog import POINTED, signature_slice, trivial
from .centrality import (
    ConsistencyFault,
    commutative_structures,
    cooperator_via_formula,
    cooperator_witnesses,
    find_cooperators,
    is_abelian_object,
    is_central,
    is_coequaliser_of_axes,
    is_commutative,
    is_symmetrizable,
    naturality_violations,
    preserves_magma,
    verify_internal_monoid,
    z_monoid,
)
from .conditions import (
    SLICE_NOTE,
    centralic_pair_check,
    is_centralic_slice,
    coeq_product_slice_check,
    condition_S_check,
    condition_T_check,
    factor_permutable_check,
    gumm_shifting_check,
    term_check,
    weakly_unital_check,
)
from .constructions import all_congruences, product, quotient, surjections
from .report import FAIL, PASS, CheckReport, Counterexample, inputs_for
from .terms import parse_term, satisfies


def _names(algs: Sequence[FiniteAlgebra]) -> tuple[str, ...]:
    return tuple(A.name for A in algs)


def _ok(check: str, algs: Sequence[FiniteAlgebra], **stats) -> CheckReport:
    return CheckReport(check, PASS, _names(algs), stats=stats, catalog=_names(algs),
                       notes=(SLICE_NOTE,), inputs=inputs_for(*algs))


def _vacuous(check: str, algs: Sequence[FiniteAlgebra]) -> CheckReport | None:
    """Statements about centralic ambients hold vacuously on other slices."""
    if is_centralic_slice(algs):
        return None
    return CheckReport(check, PASS, _names(algs), stats={"centralic_slice": False},
                       catalog=_names(algs), notes=("hypothesis not met: slice is not centralic",),
                       inputs=inputs_for(*algs))


def _bad(check: str, algs: Sequence[FiniteAlgebra], involved: Sequence[FiniteAlgebra],
         bindings: dict) -> CheckReport:
    return CheckReport(check, FAIL, _names(algs), catalog=_names(algs),
                       counterexample=Counterexample(_names(involved), bindings),
                       inputs=inputs_for(*algs, *involved))


@lru_cache(maxsize=None)
def _homs(A: FiniteAlgebra, B: FiniteAlgebra) -> tuple[Hom, ...]:
    return tuple(enumerate_homs(A, B))


@lru_cache(maxsize=None)
def _commute(f: Hom, g: Hom) -> bool:
    return bool(find_cooperators(f, g))


@lru_cache(maxsize=None)
def _central(f: Hom) -> bool:
    return _commute(f, identity(f.cod))


@lru_cache(maxsize=None)
def _table(X: FiniteAlgebra, Y: FiniteAlgebra):
    return z_monoid(X, Y)


def _symmetrizable(f: Hom) -> bool:
    return is_symmetrizable(f, _table(f.dom, f.cod))[0]


def _pairs(algs):
    return [(X, Y) for X, Y in itertools.product(algs, repeat=2) if X.sig == Y.sig]


def centralic_pairs(algs: Sequence[FiniteAlgebra]):
    return [(X, Y) for X, Y in _pairs(algs) if centralic_pair_check(X, Y).passed]


def with_quotients(algs: Sequence[FiniteAlgebra]) -> list[FiniteAlgebra]:
    """The slice together with every quotient of its members (duplicates dropped)."""
    out = list(algs)
    for X in algs:
        for theta in all_congruences(X):
            Q, _ = quotient(X, theta)
            if Q.size > 1 and Q not in out:
                out.append(Q)
    return out


# -- cooperators -----------------------------------------------------------------


def cooperator_uniqueness_check(algs: Sequence[FiniteAlgebra]) -> CheckReport:
    """Central ``f: X -> Y`` and any ``g: B -> Y`` have exactly one cooperator.

    It is the one given by ``(x, b) -> rho_f(x, g(b))``.
    """
    if (vac := _vacuous("cooperator-uniqueness", algs)) is not None:
        return vac
    checked = 0
    for X, Y in centralic_pairs(algs):
        for f in _homs(X, Y):
            w = is_central(f)
            if w is None:
                continue
            for B in algs:
                if B.sig != Y.sig or not centralic_pair_check(X, B).passed:
                    continue
                for g in _homs(B, Y):
                    checked += 1
                    coops = find_cooperators(f, g)
                    formula = cooperator_via_formula(w.rho, g)
                    if len(coops) != 1 or coops[0] != formula:
                        return _bad("cooperator-uniqueness", algs, (X, Y, B), {
                            "f": list(f.map), "g": list(g.map), "count": len(coops),
                            "formula": list(formula.map)})
    return _ok("cooperator-uniqueness", algs, instances=checked)


def central_cooperator_check(algs: Sequence[FiniteAlgebra]) -> CheckReport:
    """The cooperator of two central morphisms is central."""
    if (vac := _vacuous("central-cooperator", algs)) is not None:
        return vac
    checked = 0
    for A, X in centralic_pairs(algs):
        for B in algs:
            if B.sig != X.sig:
                continue
            for f in _homs(A, X):
                if not _central(f):
                    continue
                for g in _homs(B, X):
                    if not _central(g):
                        continue
                    for rho in find_cooperators(f, g):
                        checked += 1
                        if not _central(rho):
                            return _bad("central-cooperator", algs, (A, B, X), {
                                "f": list(f.map), "g": list(g.map), "rho": list(rho.map)})
    return _ok("central-cooperator", algs, instances=checked)


def right_ideal_check(algs: Sequence[FiniteAlgebra]) -> CheckReport:
    """``f`` central implies ``f ∘ x`` central."""
    if (vac := _vacuous("right-ideal", algs)) is not None:
        return vac
    checked = 0
    for X, Y in centralic_pairs(algs):
        for f in _homs(X, Y):
            if not _central(f):
                continue
            for W in algs:
                if W.sig != X.sig:
                    continue
                for x in _homs(W, X):
                    checked += 1
                    if not _central(compose_homs(f, x)):
                        return _bad("right-ideal", algs, (W, X, Y),
                                    {"f": list(f.map), "x": list(x.map)})
    return _ok("right-ideal", algs, instances=checked)


def kernel_cooperator_check(algs: Sequence[FiniteAlgebra]) -> CheckReport:
    """``Eq(f x g) <= Eq(rho)`` for every cooperator over centralic pairs."""
    if (vac := _vacuous("kernel-cooperator", algs)) is not None:
        return vac
    checked = 0
    for A, B in centralic_pairs(algs):
        for X in algs:
            if X.sig != A.sig:
                continue
            for f in _homs(A, X):
                for g in _homs(B, X):
                    for w in cooperator_witnesses(f, g):
                        checked += 1
                        if not (w.axis_equations_hold() and w.kernel_below()):
                            return _bad("kernel-cooperator", algs, (A, B, X), {
                                "f": list(f.map), "g": list(g.map), "rho": list(w.rho.map)})
    return _ok("kernel-cooperator", algs, cooperators=checked)


# -- additive core ---------------------------------------------------------------


def monoid_suite_check(algs: Sequence[FiniteAlgebra]) -> CheckReport:
    """Monoid laws, action laws and naturality of ``Z(X, Y)`` on every centralic pair."""
    if (vac := _vacuous("z-monoid-suite", algs)) is not None:
        return vac
    tables = 0
    for X, Y in centralic_pairs(algs):
        t = _table(X, Y)
        tables += 1
        if not t.report.passed:
            return _bad("z-monoid-suite", algs, (X, Y), dict(t.report.counterexample.bindings))
        for W in algs:
            if W.sig != X.sig:
                continue
            for x in _homs(W, X):
                bad = naturality_violations(t, x)
                if bad:
                    i, k = bad[0]
                    return _bad("z-monoid-suite", algs, (W, X, Y), {
                        "law": "naturality", "x": list(x.map),
                        "f": list(t.carrier[i].map), "g": list(t.homs[k].map)})
                for f in t.carrier:
                    if not _central(compose_homs(f, x)):
                        return _bad("z-monoid-suite", algs, (W, X, Y), {
                            "law": "precomposition", "x": list(x.map), "f": list(f.map)})
    return _ok("z-monoid-suite", algs, tables=tables)


def symmetrizable_check(algs: Sequence[FiniteAlgebra]) -> CheckReport:
    """Both characterisations agree on every central morphism and ``Σ(X, Y)`` is a group."""
    if (vac := _vacuous("symmetrizable-suite", algs)) is not None:
        return vac
    checked = 0
    for X, Y in centralic_pairs(algs):
        t = _table(X, Y)
        for f in t.carrier:
            checked += 1
            try:
                is_symmetrizable(f, t)
            except ConsistencyFault as exc:
                return _bad("symmetrizable-suite", algs, (X, Y),
                            {"f": list(f.map), "fault": str(exc)})
        sigma = t.symmetrizable()
        for i in sigma:
            for j in sigma:
                if t.add[i][j] not in sigma:
                    return _bad("symmetrizable-suite", algs, (X, Y), {
                        "law": "closure", "f": list(t.carrier[i].map),
                        "g": list(t.carrier[j].map)})
    return _ok("symmetrizable-suite", algs, central_morphisms=checked)


def quotient_transfer_check(algs: Sequence[FiniteAlgebra]) -> CheckReport:
    """Commuting, centrality, symmetrizability and commutativity pass along regular quotients."""
    if (vac := _vacuous("quotient-transfer", algs)) is not None:
        return vac
    objs = with_quotients(algs)
    onto = {(A, X): surjections(A, X) for A, X in _pairs(objs)}
    into = {X: [q for A in objs if A.sig == X.sig for q in onto[(A, X)]] for X in objs}
    count = 0

    def bad(law: str, involved, **b) -> CheckReport:
        return _bad("quotient-transfer", objs, involved, {"law": law, **b})

    for X, Y in _pairs(objs):
        for Z in objs:
            if Z.sig != X.sig:
                continue
            for f in _homs(X, Z):
                for g in _homs(Y, Z):
                    c = _commute(f, g)
                    for q1 in into[X]:
                        for q2 in into[Y]:
                            count += 1
                            if _commute(compose_homs(f, q1), compose_homs(g, q2)) != c:
                                return bad("commute", (q1.dom, q2.dom, X, Y, Z),
                                           f=list(f.map), g=list(g.map),
                                           q1=list(q1.map), q2=list(q2.map))
    for X in objs:
        comm = is_commutative(X)
        for q1 in into[X]:
            for q2 in into[X]:
                count += 1
                if _commute(q1, q2) != comm:
                    return bad("commutative-iff-quotients-commute", (q1.dom, q2.dom, X),
                               q1=list(q1.map), q2=list(q2.map))
    for A2, Z in _pairs(objs):
        for f in _homs(A2, Z):
            for q in into[A2]:
                count += 1
                fq = compose_homs(f, q)
                if _central(fq) and not _central(f):
                    return bad("central-descends", (q.dom, A2, Z), f=list(f.map), q=list(q.map))
                if (_central(fq) and _symmetrizable(fq)) and not _symmetrizable(f):
                    return bad("symmetrizable-descends", (q.dom, A2, Z),
                               f=list(f.map), q=list(q.map))
    for A, Y in _pairs(objs):
        for f in _homs(A, Y):
            if not _central(f):
                continue
            for Q in objs:
                if Q.sig != Y.sig:
                    continue
                for q in onto[(Y, Q)]:
                    count += 1
                    qf = compose_homs(q, f)
                    if not _central(qf):
                        return bad("central-ascends", (A, Y, Q), f=list(f.map), q=list(q.map))
                    if _symmetrizable(f) and not _symmetrizable(qf):
                        return bad("symmetrizable-ascends", (A, Y, Q),
                                   f=list(f.map), q=list(q.map))
    for X in objs:
        comm, ab = is_commutative(X), is_abelian_object(X)[0]
        for theta in all_congruences(X):
            Q, _ = quotient(X, theta)
            count += 1
            if comm and not is_commutative(Q):
                return bad("commutative-quotient", (X,), Theta=list(theta.rep))
            if ab and not is_abelian_object(Q)[0]:
                return bad("abelian-quotient", (X,), Theta=list(theta.rep))
    return _ok("quotient-transfer", objs, instances=count)


# -- commutative objects ---------------------------------------------------------


def commutative_objects_check(algs: Sequence[FiniteAlgebra]) -> CheckReport:
    """Unique structure, internal commutative monoid, magma maps and the axis coequaliser."""
    if (vac := _vacuous("commutative-objects", algs)) is not None:
        return vac
    comm = {}
    for X in algs:
        structures = commutative_structures(X)
        if len(structures) > 1:
            return _bad("commutative-objects", algs, (X,),
                        {"law": "unique-structure",
                         "structures": [list(s.map) for s in structures]})
        if structures:
            comm[X] = structures[0]
            rep = verify_internal_monoid(X, structures[0])
            if not rep.passed:
                return _bad("commutative-objects", algs, (X,), dict(rep.counterexample.bindings))
            if not is_coequaliser_of_axes(X, structures[0]):
                return _bad("commutative-objects", algs, (X,), {"law": "axis-coequaliser"})
    maps = 0
    for X, Y in itertools.product(comm, repeat=2):
        if X.sig != Y.sig:
            continue
        for f in _homs(X, Y):
            maps += 1
            if not preserves_magma(f, comm[X], comm[Y]):
                return _bad("commutative-objects", algs, (X, Y),
                            {"law": "magma-morphism", "f": list(f.map)})
    return _ok("commutative-objects", algs, commutative=[X.name for X in comm], maps=maps)


# -- theorem implications --------------------------------------------------------


def _term_on_both(kind: str, X: FiniteAlgebra, Y: FiniteAlgebra) -> str | None:
    r = term_check(X, kind)
    if not r.passed:
        return None
    term = r.witness["term"]
    return term if satisfies(parse_term(term), Y, kind) else None


def implication_matrix(algs: Sequence[FiniteAlgebra]) -> CheckReport:
    """Sufficient conditions against their consequences, pair by pair.

    Majority / weakly unital / shifting / factor permutable on ``X x Y`` each
    imply the centralic condition for ``(X, Y)``; an m4 term valid on both
    implies centralic and (T); factor permutability of ``X x X`` implies
    (T) for ``X``; (T) and (S) agree.
    """
    rows = []
    for X, Y in _pairs(algs):
        P = product(X, Y).prod
        row = {
            "X": X.name, "Y": Y.name,
            "centralic": centralic_pair_check(X, Y).verdict,
            "majority": _term_on_both("majority", X, Y) is not None,
            "m4": _term_on_both("m4", X, Y) is not None,
            "weakly_unital": weakly_unital_check(X, Y, algs).verdict,
            "gumm": gumm_shifting_check(P).verdict,
            "factor_permutable": factor_permutable_check(P).verdict,
            "T": condition_T_check(X).verdict,
            "S": condition_S_check(X).verdict,
        }
        rows.append(row)
        premises = [k for k in ("weakly_unital", "gumm", "factor_permutable") if row[k] == PASS]
        if row["majority"]:
            premises.append("majority")
        violations = []
        if premises and row["centralic"] != PASS:
            violations.append(("centralic", premises))
        if row["m4"] and (row["centralic"] != PASS or row["T"] != PASS):
            violations.append(("m4-strongly-centralic", ["m4"]))
        if X == Y and row["factor_permutable"] == PASS and row["T"] != PASS:
            violations.append(("T", ["factor_permutable"]))
        if row["T"] != row["S"]:
            violations.append(("T=S", [row["T"], row["S"]]))
        if violations:
            return _bad("implications", algs, (X, Y),
                        {"X": X.name, "Y": Y.name, "violated": violations[0][0],
                         "premises": violations[0][1], "row": row})
    return CheckReport("implications", PASS, _names(algs), catalog=_names(algs),
                       witness={"rows": rows}, notes=(SLICE_NOTE,), inputs=inputs_for(*algs))


def coequaliser_coherence(X: FiniteAlgebra) -> tuple[CheckReport, CheckReport]:
    """Products versus coequalisers on the slice ``[1, X]``, next to the centralic verdict."""
    algs = [trivial(X.sig), X]
    return coeq_product_slice_check(algs), centralic_pair_check(X, X)


def pointed_slice() -> list[FiniteAlgebra]:
    return signature_slice(POINTED)
