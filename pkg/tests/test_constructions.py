from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centralic import catalog as cat
from centralic.algebra import (
    AlgebraError,
    compose_homs,
    enumerate_homs,
    hom_image,
    identity,
    is_isomorphism,
    zero_hom,
)
from centralic.constructions import (
    CapExceeded,
    Congruence,
    Relation,
    all_congruences,
    all_subalgebras,
    coequaliser,
    factor_through_surjection,
    generate_congruence,
    kernel_congruence,
    pair_homs,
    principal_congruence,
    product,
    product_homs,
    pullback,
    quotient,
    relation_compose,
    subalgebra_generate,
    surjections,
)
from conftest import BINARY, MIXED, UNARY, algebras
from oracles import brute_congruences, brute_generated, brute_subuniverse


def blocks(theta):
    return [set(c) for c in theta.classes()]


class TestProducts:
    def test_componentwise_group(self, Z2):
        pd = product(Z2, Z2)
        assert pd.prod.size == 4
        for (a, b), (c, d) in itertools.product(itertools.product(range(2), repeat=2), repeat=2):
            assert pd.prod.apply("mul", pd.pair(a, b), pd.pair(c, d)) == pd.pair(a ^ c, b ^ d)

    def test_lattice_square(self, B):
        pd = product(B, B)
        assert pd.prod.apply("join", pd.pair(1, 0), pd.pair(0, 1)) == pd.pair(1, 1)

    def test_trivial_factor(self, N3):
        pd = product(N3, cat.trivial(N3.sig))
        assert is_isomorphism(pd.pi1)

    @pytest.mark.parametrize("name", ["B", "Z2", "P2", "N3", "L"])
    def test_projection_laws(self, name):
        A = cat.get(name)
        pd = product(A, A)
        assert compose_homs(pd.pi1, pd.i1) == identity(A)
        assert compose_homs(pd.pi2, pd.i2) == identity(A)
        assert compose_homs(pd.pi2, pd.i1) == zero_hom(A, A)
        assert compose_homs(pd.pi1, pd.i2) == zero_hom(A, A)
        assert compose_homs(pd.swap, pd.swap) == identity(pd.prod)
        assert compose_homs(pd.pi1, pd.swap) == pd.pi2
        assert compose_homs(pd.pi1, pd.diag) == identity(A)

    def test_factors_recorded(self, Z2, N3):
        P = product(Z2, N3).prod
        assert P.factors == (Z2, N3)
        assert P.name == "(Z2xN3)"

    def test_pairing(self, N3):
        pd = product(N3, N3)
        f = enumerate_homs(N3, N3)[2]
        assert compose_homs(pd.pi1, pair_homs(f, identity(N3))) == f
        ff = product_homs(f, f)
        assert ff.map[pd.pair(1, 1)] == pd.pair(f(1), f(1))


class TestSubalgebras:
    def test_generated_by_nothing(self, N3):
        assert subalgebra_generate(N3).members == (0,)

    def test_lattice_axes_generate_everything(self, B):
        pd = product(B, B)
        assert len(subalgebra_generate(pd.prod, pd.axes())) == 4

    def test_pointed_axes(self, P2):
        pd = product(P2, P2)
        S = subalgebra_generate(pd.prod, pd.axes())
        assert len(S) == 3 and pd.pair(1, 1) not in S.members

    def test_inclusion_is_hom(self, N3):
        S = subalgebra_generate(N3, [2])
        assert S.members == (0, 2)
        assert S.inclusion.map == (0, 2)

    @settings(max_examples=60, deadline=None)
    @given(algebras(MIXED, max_size=4), st.sets(st.integers(0, 3)))
    def test_matches_fixpoint(self, A, seeds):
        seeds = {s for s in seeds if s < A.size}
        assert set(subalgebra_generate(A, seeds).members) == brute_subuniverse(A, seeds)

    def test_all_subalgebras(self, N3):
        assert sorted(S.members for S in all_subalgebras(N3)) == [(0,), (0, 1, 2), (0, 2)]


class TestPullbacks:
    def test_identity(self, N3):
        pb = pullback(identity(N3), identity(N3))
        assert pb.obj.size == 3 and pb.pairs == ((0, 0), (1, 1), (2, 2))

    def test_over_terminal(self, Z2, N3):
        one = cat.trivial(Z2.sig)
        pb = pullback(zero_hom(Z2, one), zero_hom(N3, one))
        assert pb.obj.size == 6

    def test_projection_pullback(self, Z2):
        q = product(Z2, Z2).pi1
        pb = pullback(q, q)
        assert pb.obj.size == 8
        assert compose_homs(q, pb.p1) == compose_homs(q, pb.p2)


class TestCongruences:
    def test_generated_from_nothing(self, N3):
        assert generate_congruence(N3, []).is_equality()

    def test_klein_coset(self, Z2):
        pd = product(Z2, Z2)
        theta = generate_congruence(pd.prod, [(pd.pair(1, 0), pd.pair(0, 1))])
        assert blocks(theta) == [{pd.pair(0, 0), pd.pair(1, 1)}, {pd.pair(0, 1), pd.pair(1, 0)}]

    def test_pointed_single_merge(self, P2):
        pd = product(P2, P2)
        theta = generate_congruence(pd.prod, [(pd.pair(1, 0), pd.pair(0, 0))])
        assert blocks(theta) == [{0, 2}, {1}, {3}]

    def test_counts(self, Z2, N3):
        assert len(all_congruences(Z2)) == 2
        assert len(all_congruences(cat.trivial(Z2.sig))) == 1
        klein = product(Z2, Z2).prod
        assert len(all_congruences(klein)) == 5 == len(brute_congruences(klein))

    def test_cap(self, N3):
        big = product(N3, N3).prod
        with pytest.raises(CapExceeded) as info:
            all_congruences(big, cap=4)
        assert (info.value.required, info.value.cap) == (9, 4)

    def test_incompatible_partition_rejected(self, N3):
        with pytest.raises(AlgebraError, match="compatible"):
            Congruence.from_partition(N3, [[0, 1]])

    def test_lattice_operations(self, N3):
        cons = all_congruences(N3)
        for a, b in itertools.product(cons, repeat=2):
            assert a.meet(b) <= a and a <= a.join(b)
            assert a.meet(b) in cons and a.join(b) in cons

    @settings(max_examples=80, deadline=None)
    @given(algebras(BINARY, max_size=4), st.data())
    def test_generation_matches_oracle(self, A, data):
        pairs = data.draw(st.lists(st.tuples(st.integers(0, A.size - 1),
                                             st.integers(0, A.size - 1)), max_size=2))
        assert generate_congruence(A, pairs).pairs() == brute_generated(A, pairs)

    @settings(max_examples=40, deadline=None)
    @given(algebras(UNARY, min_size=2, max_size=5), st.data())
    def test_generation_matches_oracle_unary(self, A, data):
        a = data.draw(st.integers(0, A.size - 1))
        b = data.draw(st.integers(0, A.size - 1))
        assert principal_congruence(A, a, b).pairs() == brute_generated(A, [(a, b)])

    @settings(max_examples=40, deadline=None)
    @given(algebras(BINARY, max_size=4))
    def test_enumeration_matches_oracle(self, A):
        assert {c.pairs() for c in all_congruences(A)} == set(brute_congruences(A))

    @pytest.mark.parametrize("left,right", [("Z2", "N3"), ("M2", "L"), ("P2", "P2"), ("B", "B")])
    def test_products_match_oracle(self, left, right):
        P = product(cat.get(left), cat.get(right)).prod
        assert {c.pairs() for c in all_congruences(P)} == set(brute_congruences(P))

    @settings(max_examples=40, deadline=None)
    @given(algebras(MIXED, max_size=4))
    def test_representatives_are_compatible(self, A):
        for theta in all_congruences(A):
            rep = theta.rep
            assert all(rep[rep[x]] == rep[x] for x in A.elements)
            for op, k, t in A.operations():
                for args in itertools.product(A.elements, repeat=k):
                    moved = tuple(rep[a] for a in args)
                    assert rep[A.apply(op, *args)] == rep[A.apply(op, *moved)]


class TestQuotients:
    def test_equality_quotient(self, N3):
        Q, q = quotient(N3, Congruence.equality(N3))
        assert Q == N3 and q.map == (0, 1, 2)

    def test_total_quotient(self, B):
        Q, _ = quotient(B, Congruence.total(B))
        assert Q.size == 1

    def test_klein_quotient_is_z2(self, Z2):
        pd = product(Z2, Z2)
        theta = generate_congruence(pd.prod, [(pd.pair(1, 1), 0)])
        Q, q = quotient(pd.prod, theta)
        assert Q.tables == Z2.tables

    @pytest.mark.parametrize("name", ["N3", "L", "B"])
    def test_kernel_round_trip(self, name):
        A = cat.get(name)
        for theta in all_congruences(A):
            _, q = quotient(A, theta)
            assert kernel_congruence(q) == theta
            assert hom_image(q).surjective

    def test_kernels_of_identity_and_zero(self, N3):
        assert kernel_congruence(identity(N3)).is_equality()
        assert kernel_congruence(zero_hom(N3, N3)).is_total()


class TestCoequalisers:
    def test_equal_pair(self, N3):
        f = enumerate_homs(N3, N3)[1]
        assert coequaliser(f, f).q.map == (0, 1, 2)

    def test_axes_of_klein_group(self, Z2):
        pd = product(Z2, Z2)
        co = coequaliser(pd.i1, pd.i2)
        assert co.obj.size == 2
        assert compose_homs(co.q, pd.i1) == compose_homs(co.q, pd.i2)

    def test_axes_of_pointed_square(self, P2):
        pd = product(P2, P2)
        assert coequaliser(pd.i1, pd.i2).obj.size == 3

    @pytest.mark.parametrize("name", ["N3", "L", "Z2"])
    def test_universal_property(self, name):
        A = cat.get(name)
        pd = product(A, A)
        co = coequaliser(pd.i1, pd.i2)
        for Z in cat.signature_slice(A.sig):
            for h in enumerate_homs(pd.prod, Z):
                coequalises = compose_homs(h, pd.i1) == compose_homs(h, pd.i2)
                assert (factor_through_surjection(co.q, h) is not None) == coequalises

    def test_surjections(self, N3, M2):
        assert [s.map for s in surjections(N3, M2)] == [(0, 1, 1)]


class TestRelations:
    def test_factor_kernels_compose_to_total(self, N3, L):
        pd = product(N3, L)
        r = relation_compose(kernel_congruence(pd.pi1), kernel_congruence(pd.pi2))
        assert r.is_total()

    def test_equality_is_neutral(self, N3):
        for theta in all_congruences(N3):
            assert relation_compose(theta, Congruence.equality(N3)) == Relation.of(theta)

    def test_non_permuting_pointed_partitions(self):
        P4 = cat.pointed_set(4)
        a = Congruence.from_partition(P4, [[0, 1]])
        b = Congruence.from_partition(P4, [[1, 2]])
        ab, ba = relation_compose(a, b), relation_compose(b, a)
        assert (0, 2) in ab.pairs and (0, 2) not in ba.pairs
        assert not ab.is_symmetric()
