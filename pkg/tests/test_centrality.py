from __future__ import annotations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from centralic import catalog as cat
from centralic.algebra import Hom, compose_homs, enumerate_homs, identity, zero_hom
from centralic.centrality import (
    NotCentralError,
    NotCentralicError,
    commutative_structures,
    cooperator_via_formula,
    cooperator_witnesses,
    find_cooperators,
    is_abelian_object,
    is_central,
    is_coequaliser_of_axes,
    is_symmetrizable,
    preserves_magma,
    star,
    verify_internal_monoid,
    z_monoid,
)
from centralic.constructions import product
from conftest import BINARY, algebras
from oracles import brute_cooperators

XOR = (0, 1, 1, 0)
OR = (0, 1, 1, 1)


def pi2(X, Y):
    return product(X, Y).pi2


class TestCooperators:
    def test_group_has_exactly_xor(self, Z2):
        assert [r.map for r in find_cooperators(identity(Z2), identity(Z2))] == [XOR]

    def test_pointed_set_has_two(self, P2):
        found = [r.map for r in find_cooperators(identity(P2), identity(P2))]
        assert found == [XOR, OR]
        differ = [i for i in range(4) if found[0][i] != found[1][i]]
        assert differ == [product(P2, P2).pair(1, 1)]

    def test_lattice_has_none(self, B):
        assert find_cooperators(identity(B), identity(B)) == []

    def test_codomain_mismatch(self, Z2, N3):
        with pytest.raises(ValueError):
            find_cooperators(identity(Z2), identity(N3))

    def test_witness_invariants(self, N3, M2):
        for f in enumerate_homs(N3, M2):
            for w in cooperator_witnesses(f, identity(M2)):
                assert w.axis_equations_hold() and w.kernel_below()

    @settings(max_examples=50, deadline=None)
    @given(algebras(BINARY, max_size=3), algebras(BINARY, max_size=2), st.data())
    def test_matches_brute_force(self, A, X, data):
        homs, endos = enumerate_homs(A, X), enumerate_homs(X, X)
        assume(homs and endos)
        f = data.draw(st.sampled_from(homs))
        g = data.draw(st.sampled_from(endos))
        assert [r.map for r in find_cooperators(f, g)] == sorted(brute_cooperators(f, g))


class TestCentral:
    @pytest.mark.parametrize("x,y", [("Z2", "N3"), ("N3", "Z2"), ("B", "B"), ("M2", "L")])
    def test_zero_has_second_projection(self, x, y):
        X, Y = cat.get(x), cat.get(y)
        assert is_central(zero_hom(X, Y)).rho == pi2(X, Y)

    def test_zero_cooperator_not_unique_without_centralic(self, P2):
        # the projection is one cooperator among two
        found = find_cooperators(zero_hom(P2, P2), identity(P2))
        assert pi2(P2, P2) in found and len(found) == 2

    def test_group_identity(self, Z2):
        assert is_central(identity(Z2)).rho.map == XOR

    def test_lattice_identity(self, B):
        assert is_central(identity(B)) is None


class TestFormula:
    def test_zero_case(self, N3):
        rho = pi2(N3, N3)
        for g in enumerate_homs(N3, N3):
            assert cooperator_via_formula(rho, g) == compose_homs(g, rho)

    def test_group_cases(self, Z2):
        xor = is_central(identity(Z2)).rho
        assert cooperator_via_formula(xor, identity(Z2)) == xor
        via = cooperator_via_formula(xor, zero_hom(Z2, Z2))
        assert via == product(Z2, Z2).pi1
        assert find_cooperators(identity(Z2), zero_hom(Z2, Z2)) == [via]


class TestStar:
    def test_zero_is_neutral(self, N3):
        for g in enumerate_homs(N3, N3):
            assert star(zero_hom(N3, N3), g) == g

    def test_group_doubling(self, Z2):
        assert star(identity(Z2), identity(Z2)) == zero_hom(Z2, Z2)

    def test_truncated_doubling(self, N3):
        assert star(identity(N3), identity(N3)).map == (0, 2, 2)

    def test_needs_central(self, B):
        with pytest.raises(NotCentralError):
            star(identity(B), identity(B))


class TestMonoid:
    def test_group(self, Z2):
        t = z_monoid(Z2, Z2)
        assert [h.map for h in t.carrier] == [(0, 0), (0, 1)]
        assert t.add == ((0, 1), (1, 0)) and t.unit == 0
        assert t.report.passed

    def test_truncated(self, N3):
        t = z_monoid(N3, N3)
        # endomorphism e_k sends 1 to k; e_i * e_j = e_min(i+j, 2)
        assert [h.map[1] for h in t.carrier] == [0, 1, 2]
        assert t.add == tuple(tuple(min(i + j, 2) for j in range(3)) for i in range(3))
        assert t.report.passed

    @pytest.mark.parametrize("name", ["B", "Z2", "N3", "L"])
    def test_into_trivial(self, name):
        X = cat.get(name)
        t = z_monoid(X, cat.trivial(X.sig))
        assert len(t.carrier) == 1 and t.add == ((0,),)

    def test_refuses_non_centralic(self, P2):
        with pytest.raises(NotCentralicError) as info:
            z_monoid(P2, P2)
        assert info.value.report.counterexample.bindings["y"] == 1

    def test_action(self, N3, Z2):
        t = z_monoid(N3, N3)
        for i, f in enumerate(t.carrier):
            for k, g in enumerate(t.homs):
                assert t.homs[t.action[i][k]] == star(f, g)


class TestSymmetrizable:
    def test_zero(self, N3):
        ok, inv = is_symmetrizable(zero_hom(N3, N3))
        assert ok and inv == zero_hom(N3, N3)

    def test_group_identity(self, Z2):
        assert is_symmetrizable(identity(Z2)) == (True, identity(Z2))

    def test_truncated_identity(self, N3):
        assert is_symmetrizable(identity(N3)) == (False, None)

    def test_requires_central(self, B):
        with pytest.raises(NotCentralError):
            is_symmetrizable(identity(B))


class TestCommutativeObjects:
    def test_structures(self, Z2, B, P2):
        assert [r.map for r in commutative_structures(Z2)] == [XOR]
        assert commutative_structures(B) == []
        assert len(commutative_structures(P2)) == 2

    def test_internal_monoids(self, Z2, P2):
        assert verify_internal_monoid(Z2, Hom(product(Z2, Z2).prod, Z2, XOR)).passed
        assert verify_internal_monoid(P2, Hom(product(P2, P2).prod, P2, OR)).passed

    def test_non_associative_magma(self):
        P3 = cat.pointed_set(3)
        pd = product(P3, P3)
        mul = {(1, 1): 2, (1, 2): 0, (2, 1): 1, (2, 2): 0}
        table = [x if y == 0 else y if x == 0 else mul[(x, y)]
                 for x, y in map(pd.unpair, pd.prod.elements)]
        rep = verify_internal_monoid(P3, Hom(pd.prod, P3, table))
        assert rep.failed
        b = rep.counterexample.bindings
        assert (b["law"], b["x"], b["y"], b["z"]) == ("associativity", 1, 1, 1)
        # (1*1)*1 = 2*1 = 1, while 1*(1*1) = 1*2 = 0
        assert (b["(xy)z"], b["x(yz)"]) == (1, 0)

    def test_abelian(self, Z2, N3, B, P2):
        assert is_abelian_object(Z2)[0]
        assert is_abelian_object(cat.trivial(Z2.sig)) == (True, identity(cat.trivial(Z2.sig)))
        assert not is_abelian_object(N3)[0]
        assert not is_abelian_object(B)[0]
        assert is_abelian_object(P2, Hom(product(P2, P2).prod, P2, OR)) == (False, None)

    def test_inverse_of_group(self, Z2):
        assert is_abelian_object(Z2)[1] == identity(Z2)

    def test_maps_preserve_structure(self, N3, M2):
        rn, rm = commutative_structures(N3)[0], commutative_structures(M2)[0]
        for f in enumerate_homs(N3, M2):
            assert preserves_magma(f, rn, rm)

    @pytest.mark.parametrize("name", ["Z2", "M2", "N3"])
    def test_structure_is_axis_coequaliser(self, name):
        X = cat.get(name)
        assert is_coequaliser_of_axes(X, commutative_structures(X)[0])
