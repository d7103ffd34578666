from __future__ import annotations

import pytest

from centralic import catalog as cat
from centralic.algebra import enumerate_homs, identity, is_isomorphism
from centralic.centrality import is_commutative
from centralic.reflections import (
    NotCommutativeError,
    ab_reflection,
    ab_unit_naturality_check,
    coequaliser_inclusion_check,
    com_reflection,
    commutative_closure_check,
    idempotence_check,
    reflect,
    reflect_hom,
    satisfies,
    verify_product_preservation,
    verify_universal_arrow,
)

GOOD = ["Z2", "N3", "B", "M2", "L"]


@pytest.mark.parametrize("name,size", [("Z2", 2), ("N3", 3), ("B", 1), ("M2", 2), ("L", 2), ("P2", 3)])
def test_com_sizes(name, size):
    res = com_reflection(cat.get(name))
    assert res.reflected.size == size
    assert res.reflected.name == f"Com({name})"


@pytest.mark.parametrize("name,size", [("Z2", 2), ("N3", 1), ("M2", 1), ("P2", 3)])
def test_ab_sizes(name, size):
    assert ab_reflection(cat.get(name)).reflected.size == size


def test_ab_needs_structure(L):
    with pytest.raises(NotCommutativeError):
        ab_reflection(L)


def test_unknown_kind(Z2):
    with pytest.raises(ValueError):
        reflect(Z2, "lie")


def test_unit_not_always_surjective(P2):
    res = com_reflection(P2)
    assert len(set(res.unit.map)) < res.reflected.size


@pytest.mark.parametrize("name", GOOD)
def test_universal_com(name):
    X = cat.get(name)
    rep = verify_universal_arrow(com_reflection(X), "commutative", cat.signature_slice(X.sig))
    assert rep.passed


@pytest.mark.parametrize("name", ["Z2", "N3", "M2"])
def test_universal_ab(name):
    X = cat.get(name)
    rep = verify_universal_arrow(ab_reflection(X), "abelian", cat.signature_slice(X.sig))
    assert rep.passed


def test_universal_com_fails_on_pointed_set(P2):
    rep = verify_universal_arrow(com_reflection(P2), "commutative", cat.signature_slice(P2.sig))
    assert rep.failed
    assert rep.counterexample.bindings["factorisations"] == 2


@pytest.mark.parametrize("x,y", [("Z2", "Z2"), ("L", "L"), ("B", "B"), ("M2", "N3"), ("N3", "N3"), ("L", "N3")])
def test_products_preserved(x, y):
    rep = verify_product_preservation(cat.get(x), cat.get(y))
    assert rep.passed and rep.stats["routes_agree"]


def test_products_not_preserved_on_pointed_sets(P2):
    rep = verify_product_preservation(P2, P2)
    assert rep.failed
    assert rep.stats == {"source_size": 13, "target_size": 9, "routes_agree": True}
    assert rep.counterexample.bindings["injective"] is False


@pytest.mark.parametrize("name", ["Z2", "N3", "M2"])
def test_idempotent_on_commutative(name):
    X = cat.get(name)
    assert is_commutative(X)
    assert idempotence_check(X, "com").passed


def test_idempotent_ab_on_group(Z2):
    assert idempotence_check(Z2, "ab").passed


def test_not_idempotent_off_class(N3, B):
    assert idempotence_check(N3, "ab").failed
    assert idempotence_check(B, "com").failed


def test_satisfies(Z2, B, N3):
    assert satisfies(Z2, "abelian") and satisfies(Z2, "com")
    assert not satisfies(B, "commutative")
    assert satisfies(N3, "commutative") and not satisfies(N3, "ab")


@pytest.mark.parametrize("sig", [cat.MONOID, cat.LATTICE])
def test_closures(sig):
    algs = cat.signature_slice(sig)
    assert commutative_closure_check(algs).passed
    assert coequaliser_inclusion_check(algs).passed


@pytest.mark.parametrize("x,y", [("N3", "M2"), ("N3", "N3"), ("Z2", "Z2"), ("M2", "N3")])
def test_ab_naturality(x, y):
    for f in enumerate_homs(cat.get(x), cat.get(y)):
        assert ab_unit_naturality_check(f).passed


def test_reflect_hom_functorial(N3, M2):
    for f in enumerate_homs(N3, M2):
        rf = reflect_hom(f)
        assert rf is not None
        rx, ry = com_reflection(N3), com_reflection(M2)
        assert rf.dom == rx.reflected and rf.cod == ry.reflected
    ident = reflect_hom(identity(N3))
    assert is_isomorphism(ident)
