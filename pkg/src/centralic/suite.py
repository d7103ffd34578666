"""The full catalog run: every checker over every slice, as one report document."""

from __future__ import annotations

import time
from typing import Callable, Iterator

from . import properties as props
from .algebra import FiniteAlgebra, enumerate_homs
from .catalog import full_catalog, slices
from .centrality import commutative_structures, is_abelian_object, verify_internal_monoid, z_monoid
from .conditions import (
    centralic_pair_check,
    condition_S_check,
    condition_T_check,
    factor_permutable_check,
    gumm_shifting_check,
    term_check,
    unital_check,
    weakly_unital_check,
)
from .constructions import DEFAULT_CONGRUENCE_CAP, product
from .reflections import (
    ab_reflection,
    ab_unit_naturality_check,
    coequaliser_inclusion_check,
    com_reflection,
    commutative_closure_check,
    idempotence_check,
    verify_product_preservation,
    verify_universal_arrow,
)
from .report import CheckReport, ReportDocument
from .terms import DEFAULT_STEP_LIMIT, SIZE_CAPS


def _per_algebra(algs: list[FiniteAlgebra], cap_congruences: int,
                 cap_steps: int) -> Iterator[CheckReport]:
    catalog = full_catalog()
    for X in algs:
        yield condition_T_check(X, cap_congruences)
        yield condition_S_check(X, cap_congruences)
        for kind, cap in SIZE_CAPS.items():
            if X.size <= cap:
                yield term_check(X, kind, cap_steps)
        for rho in commutative_structures(X):
            yield verify_internal_monoid(X, rho)
        yield verify_universal_arrow(com_reflection(X), "commutative", catalog)
        if commutative_structures(X):
            yield idempotence_check(X, "com")
            yield verify_universal_arrow(ab_reflection(X), "abelian", catalog)
            if is_abelian_object(X)[0]:
                yield idempotence_check(X, "ab")


def _per_slice(algs: list[FiniteAlgebra]) -> Iterator[CheckReport]:
    for X in algs:
        for Y in algs:
            pair = centralic_pair_check(X, Y)
            yield pair
            yield unital_check(X, Y)
            yield weakly_unital_check(X, Y, algs)
            P = product(X, Y).prod
            yield gumm_shifting_check(P)
            yield factor_permutable_check(P)
            yield verify_product_preservation(X, Y)
            if pair.passed:
                yield z_monoid(X, Y).report
    comm = [X for X in algs if commutative_structures(X)]
    for X in comm:
        for Y in comm:
            for f in enumerate_homs(X, Y):
                yield ab_unit_naturality_check(f)
    for check in (
        props.cooperator_uniqueness_check,
        props.central_cooperator_check,
        props.right_ideal_check,
        props.kernel_cooperator_check,
        props.monoid_suite_check,
        props.symmetrizable_check,
        props.quotient_transfer_check,
        props.commutative_objects_check,
        props.implication_matrix,
        commutative_closure_check,
        coequaliser_inclusion_check,
    ):
        yield check(algs)


def run_suite(
    cap_congruences: int = DEFAULT_CONGRUENCE_CAP,
    cap_steps: int = DEFAULT_STEP_LIMIT,
    clock: Callable[[], float] = time.perf_counter,
) -> ReportDocument:
    reports: list[CheckReport] = []
    timing: dict[str, float] = {}
    for label, algs in slices().items():
        start = clock()
        members = [X for X in algs]
        reports.extend(_per_slice(members))
        reports.extend(_per_algebra(members, cap_congruences, cap_steps))
        for X in members:
            if X.size > 1:
                a, b = props.coequaliser_coherence(X)
                reports.append(a)
        timing[label] = round(clock() - start, 6)
    return ReportDocument(reports, timing=timing)
