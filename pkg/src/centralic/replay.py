"""Re-derive verdicts from serialised reports.

A report carries the documents of the algebras it mentions, so it can be
re-run without the original command line.  For failures the specific
counterexample is also checked on its own, independently of the search
that produced it.
"""

from __future__ import annotations

from typing import Callable

from . import properties as props
from .algebra import FiniteAlgebra, Hom
from .catalog import by_name
from .centrality import (
    abelian_check,
    central_check,
    commutative_check,
    cooperators_check,
    symmetrizable_check,
    verify_internal_monoid,
    z_monoid,
)
from .conditions import (
    centralic_pair_check,
    coeq_product_commute_check,
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
from .constructions import (
    DEFAULT_CONGRUENCE_CAP,
    Congruence,
    coequaliser,
    principal_congruence,
    product,
    quotient,
    relation_compose,
    subalgebra_generate,
)
from .reflections import (
    ab_unit_naturality_check,
    coequaliser_inclusion_check,
    commutative_closure_check,
    idempotence_check,
    reflect,
    reflection_report,
    verify_product_preservation,
    verify_universal_arrow,
)
from .report import CheckReport, canonical_json
from .terms import DEFAULT_STEP_LIMIT


class ReplayError(ValueError):
    pass


class _Context:
    def __init__(self, report: CheckReport, cap_congruences: int, cap_steps: int):
        self.report = report
        self.cap_congruences = cap_congruences
        self.cap_steps = cap_steps
        self._cache: dict[str, FiniteAlgebra] = {}

    def alg(self, name: str) -> FiniteAlgebra:
        if name not in self._cache:
            if name in self.report.inputs:
                self._cache[name] = self.report.algebra(name)
            else:
                try:
                    self._cache[name] = by_name(name)
                except KeyError:
                    raise ReplayError(f"report does not embed algebra {name!r}") from None
        return self._cache[name]

    def subject(self) -> list[FiniteAlgebra]:
        return [self.alg(n) for n in self.report.subject]

    def tests(self) -> list[FiniteAlgebra]:
        return [self.alg(n) for n in self.report.catalog]

    @property
    def bindings(self) -> dict:
        ce = self.report.counterexample
        return ce.bindings if ce else {}


def _pair(fn):
    return lambda c: fn(*c.subject()[:2])


def _local(c: _Context) -> CheckReport:
    b = c.bindings or c.report.witness or {}
    try:
        A, B, X = c.alg(b["A"]), c.alg(b["B"]), c.alg(b["X"])
        return local_centralic_check(Hom(A, X, b["p"]), Hom(B, X, b["q"]))
    except KeyError as exc:
        raise ReplayError(f"local-centralic report lacks {exc}") from None


def _coeq(c: _Context) -> CheckReport:
    b = c.bindings
    if c.report.catalog:
        return coeq_product_slice_check(c.tests())
    if not b:
        return coeq_product_slice_check(c.subject())
    inst = []
    for k in "12":
        C, X = c.alg(b["C" + k]), c.alg(b["X" + k])
        inst.append(coequaliser(Hom(C, X, b["u" + k]), Hom(C, X, b["v" + k])))
    return coeq_product_commute_check(*inst)


def _internal_monoid(c: _Context) -> CheckReport:
    X = c.subject()[0]
    rho = (c.report.witness or {}).get("rho") or c.bindings.get("rho")
    return verify_internal_monoid(X, Hom(product(X, X).prod, X, rho))


def _naturality(c: _Context) -> CheckReport:
    X, Y = c.subject()[:2]
    return ab_unit_naturality_check(Hom(X, Y, _recorded(c, "f")))


def _recorded(c: _Context, key: str):
    """A value stored in the witness of a pass or the bindings of a fail."""
    value = (c.report.witness or {}).get(key, c.bindings.get(key))
    if value is None:
        raise ReplayError(f"{c.report.check} report lacks {key!r}")
    return value


def _cooperators(c: _Context) -> CheckReport:
    A, B, X = (c.alg(_recorded(c, k)) for k in "ABX")
    return cooperators_check(Hom(A, X, _recorded(c, "f")), Hom(B, X, _recorded(c, "g")))


def _on_f(check):
    def run(c: _Context) -> CheckReport:
        X, Y = c.subject()[:2]
        return check(Hom(X, Y, _recorded(c, "f")))
    return run


def _universal(kind: str) -> Callable[[_Context], CheckReport]:
    pred = "commutative" if kind == "com" else "abelian"
    return lambda c: verify_universal_arrow(reflect(c.subject()[0], kind), pred, c.tests())


RERUN: dict[str, Callable[[_Context], CheckReport]] = {
    "centralic": _pair(centralic_pair_check),
    "unital": _pair(unital_check),
    "weakly-unital": lambda c: weakly_unital_check(*c.subject()[:2], c.tests()),
    "T": lambda c: condition_T_check(c.subject()[0], c.cap_congruences),
    "S": lambda c: condition_S_check(c.subject()[0], c.cap_congruences),
    "gumm": lambda c: gumm_shifting_check(c.subject()[0]),
    "factor-permutable": lambda c: factor_permutable_check(c.subject()[0]),
    "local-centralic": _local,
    "coeq-product": _coeq,
    "internal-monoid": _internal_monoid,
    "z-monoid": lambda c: z_monoid(*c.subject()[:2]).report,
    "universal-com": _universal("com"),
    "universal-ab": _universal("ab"),
    "products": _pair(verify_product_preservation),
    "ab-naturality": _naturality,
    "cooperators": _cooperators,
    "central": _on_f(central_check),
    "symmetrizable": _on_f(symmetrizable_check),
    "commutative": lambda c: commutative_check(c.subject()[0]),
    "abelian": lambda c: abelian_check(c.subject()[0]),
    "reflect-com": lambda c: reflection_report(c.subject()[0], "com"),
    "reflect-ab": lambda c: reflection_report(c.subject()[0], "ab"),
    "com-closure": lambda c: commutative_closure_check(c.subject()),
    "com-coequalisers": lambda c: coequaliser_inclusion_check(c.subject()),
    "idempotent-com": lambda c: idempotence_check(c.subject()[0], "com"),
    "idempotent-ab": lambda c: idempotence_check(c.subject()[0], "ab"),
    "cooperator-uniqueness": lambda c: props.cooperator_uniqueness_check(c.subject()),
    "central-cooperator": lambda c: props.central_cooperator_check(c.subject()),
    "right-ideal": lambda c: props.right_ideal_check(c.subject()),
    "kernel-cooperator": lambda c: props.kernel_cooperator_check(c.subject()),
    "z-monoid-suite": lambda c: props.monoid_suite_check(c.subject()),
    "symmetrizable-suite": lambda c: props.symmetrizable_check(c.subject()),
    "quotient-transfer": lambda c: props.quotient_transfer_check(c.subject()),
    "commutative-objects": lambda c: props.commutative_objects_check(c.subject()),
    "implications": lambda c: props.implication_matrix(c.subject()),
}
for _kind in ("majority", "m4", "unital_plus"):
    RERUN[f"term-{_kind}"] = (lambda k: lambda c: term_check(c.subject()[0], k, c.cap_steps))(_kind)


# -- direct confirmation of counterexamples ------------------------------------


def _confirm_centralic(c: _Context) -> bool:
    X, Y = c.subject()[:2]
    b = c.bindings
    pd = product(X, Y)
    theta = principal_congruence(pd.prod, pd.pair(b["x"], 0), pd.pair(b["x'"], 0))
    return list(theta.rep) == b["Theta"] and not theta.related(
        pd.pair(b["x"], b["y"]), pd.pair(b["x'"], b["y"]))


def _qualifying(c: _Context):
    X = c.subject()[0]
    pd = product(X, X)
    theta = Congruence(pd.prod, tuple(c.bindings["Theta"]))
    if not all(theta.related(pd.i1(x), pd.i2(x)) for x in X.elements):
        return None
    Q, q = quotient(pd.prod, theta)
    return pd, Q, q, {q(pd.i1(x)) for x in X.elements}


def _confirm_T(c: _Context) -> bool:
    got = _qualifying(c)
    if got is None:
        return False
    pd, Q, q, img = got
    return q(pd.pair(*c.bindings["missing"])) not in img


def _confirm_S(c: _Context) -> bool:
    got = _qualifying(c)
    if got is None:
        return False
    pd, Q, q, img = got
    W = subalgebra_generate(Q, img)
    return q(pd.pair(*c.bindings["outside"])) not in W.members


def _confirm_gumm(c: _Context) -> bool:
    A = c.subject()[0]
    b = c.bindings
    R, S, T = (Congruence(A, tuple(b[k])) for k in "RST")
    x, y, z, w = b["x"], b["y"], b["z"], b["w"]
    return (R.meet(S) <= T and R.related(x, y) and R.related(w, z) and S.related(y, z)
            and S.related(x, w) and T.related(y, z) and not T.related(x, w))


def _confirm_fp(c: _Context) -> bool:
    A = c.subject()[0]
    b = c.bindings
    theta, E = Congruence(A, tuple(b["theta"])), Congruence(A, tuple(b["E"]))
    left, right = relation_compose(theta, E), relation_compose(E, theta)
    pair = tuple(b["pair"])
    inside, other = (left, right) if b["in"] == "theta.E" else (right, left)
    return pair in inside.pairs and pair not in other.pairs


def _confirm_weakly_unital(c: _Context) -> bool:
    X, Y = c.subject()[:2]
    b = c.bindings
    pd = product(X, Y)
    Z = c.alg(b["Z"])
    h, k = Hom(pd.prod, Z, b["h"]), Hom(pd.prod, Z, b["k"])
    return h != k and all(h(a) == k(a) for a in pd.axes())


def _confirm_unital(c: _Context) -> bool:
    X, Y = c.subject()[:2]
    pd = product(X, Y)
    return pd.pair(*c.bindings["missing"]) not in subalgebra_generate(pd.prod, pd.axes()).members


CONFIRM: dict[str, Callable[[_Context], bool]] = {
    "centralic": _confirm_centralic,
    "T": _confirm_T,
    "S": _confirm_S,
    "gumm": _confirm_gumm,
    "factor-permutable": _confirm_fp,
    "weakly-unital": _confirm_weakly_unital,
    "unital": _confirm_unital,
}


def replay(
    report: CheckReport,
    cap_congruences: int = DEFAULT_CONGRUENCE_CAP,
    cap_steps: int = DEFAULT_STEP_LIMIT,
) -> tuple[CheckReport, bool]:
    """Re-run ``report`` and say whether the verdict (and counterexample) reproduced."""
    if report.check not in RERUN:
        raise ReplayError(f"no replay registered for check {report.check!r}")
    ctx = _Context(report, cap_congruences, cap_steps)
    again = RERUN[report.check](ctx)
    same = again.verdict == report.verdict
    if same and report.failed:
        same = (canonical_json(again.counterexample.bindings)
                == canonical_json(report.counterexample.bindings))
        if same and report.check in CONFIRM:
            same = CONFIRM[report.check](ctx)
    return again, same
