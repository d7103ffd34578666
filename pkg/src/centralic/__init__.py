"""Finite-algebra workbench for cooperators, central morphisms and the centralic condition."""

from .algebra import (
    AlgebraError,
    FiniteAlgebra,
    Hom,
    Signature,
    compose_homs,
    dump_algebra,
    enumerate_homs,
    identity,
    load_algebra,
    load_algebra_file,
    zero_hom,
)
from .catalog import full_catalog
from .centrality import (
    commutative_structures,
    cooperator_via_formula,
    find_cooperators,
    is_abelian_object,
    is_central,
    is_symmetrizable,
    star,
    verify_internal_monoid,
    z_monoid,
)
from .conditions import (
    centralic_pair_check,
    coeq_product_commute_check,
    condition_S_check,
    condition_T_check,
    factor_permutable_check,
    gumm_shifting_check,
    local_centralic_check,
    unital_check,
    weakly_unital_check,
)
from .constructions import (
    CapExceeded,
    Congruence,
    all_congruences,
    coequaliser,
    generate_congruence,
    product,
    pullback,
    quotient,
    subalgebra_generate,
)
from .reflections import (
    ab_reflection,
    com_reflection,
    verify_product_preservation,
    verify_universal_arrow,
)
from .report import CheckReport, ReportDocument, emit
from .terms import term_search

__all__ = [
    "ab_reflection",
    "AlgebraError",
    "all_congruences",
    "CapExceeded",
    "centralic_pair_check",
    "CheckReport",
    "coeq_product_commute_check",
    "coequaliser",
    "com_reflection",
    "commutative_structures",
    "compose_homs",
    "condition_S_check",
    "condition_T_check",
    "Congruence",
    "cooperator_via_formula",
    "dump_algebra",
    "emit",
    "enumerate_homs",
    "factor_permutable_check",
    "find_cooperators",
    "FiniteAlgebra",
    "full_catalog",
    "generate_congruence",
    "gumm_shifting_check",
    "Hom",
    "identity",
    "is_abelian_object",
    "is_central",
    "is_symmetrizable",
    "load_algebra",
    "load_algebra_file",
    "local_centralic_check",
    "product",
    "pullback",
    "quotient",
    "ReportDocument",
    "Signature",
    "star",
    "subalgebra_generate",
    "term_search",
    "unital_check",
    "verify_internal_monoid",
    "verify_product_preservation",
    "verify_universal_arrow",
    "weakly_unital_check",
    "z_monoid",
    "zero_hom",
]

__version__ = "0.1.0"
