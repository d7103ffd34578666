"""Finite limits, congruences and quotients of finite pointed algebras."""

from __future__ import annotations

import itertools
from dataclasses import InitVar, dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .algebra import (
    AlgebraError,
    FiniteAlgebra,
    Hom,
    hom_image,
    require_same_signature,
)

DEFAULT_CONGRUENCE_CAP = 16


class CapExceeded(Exception):
    """A search was refused because its input exceeds a configured cap."""

    def __init__(self, what: str, required: int, cap: int):
        super().__init__(f"{what}: requires cap {required}, configured cap is {cap}")
        self.what = what
        self.required = required
        self.cap = cap


# -- products ----------------------------------------------------------------


@dataclass(frozen=True)
class ProductData:
    left: FiniteAlgebra
    right: FiniteAlgebra
    prod: FiniteAlgebra
    pi1: Hom
    pi2: Hom
    i1: Hom
    i2: Hom
    diag: Hom | None
    swap: Hom | None

    def pair(self, a: int, b: int) -> int:
        return a * self.right.size + b

    def unpair(self, p: int) -> tuple[int, int]:
        return divmod(p, self.right.size)

    def axes(self) -> list[int]:
        """Indices of the elements ``(a, 0)`` and ``(0, b)``."""
        return sorted({self.pair(a, 0) for a in self.left.elements}
                      | {self.pair(0, b) for b in self.right.elements})


@lru_cache(maxsize=4096)
def product(A: FiniteAlgebra, B: FiniteAlgebra) -> ProductData:
    """Binary product with pairing ``(a, b) -> a*|B| + b``."""
    require_same_signature(A, B)
    na, nb = A.size, B.size
    N = na * nb
    tables = []
    for (op, k, ta), tb in zip(A.operations(), B.tables):
        if k == 0:
            tables.append((ta[0] * nb + tb[0],))
            continue
        t = []
        for args in itertools.product(range(N), repeat=k):
            ia = ib = 0
            for p in args:
                a, b = divmod(p, nb)
                ia = ia * na + a
                ib = ib * nb + b
            t.append(ta[ia] * nb + tb[ib])
        tables.append(tuple(t))
    P = FiniteAlgebra(A.sig, N, tuple(tables), f"({A.name}x{B.name})", factors=(A, B))
    pi1 = Hom(P, A, tuple(p // nb for p in range(N)), check=False)
    pi2 = Hom(P, B, tuple(p % nb for p in range(N)), check=False)
    i1 = Hom(A, P, tuple(a * nb for a in range(na)), check=False)
    i2 = Hom(B, P, tuple(range(nb)), check=False)
    diag = swap = None
    if A == B:
        diag = Hom(A, P, tuple(a * nb + a for a in range(na)), check=False)
        swap = Hom(P, P, tuple((p % nb) * nb + p // nb for p in range(N)), check=False)
    return ProductData(A, B, P, pi1, pi2, i1, i2, diag, swap)


def factors_of(P: FiniteAlgebra) -> ProductData:
    if P.factors is None:
        raise AlgebraError(f"{P.name} was not built as a binary product")
    return product(*P.factors)


def pair_homs(f: Hom, g: Hom) -> Hom:
    """``(f, g): S -> A x B``."""
    if f.dom != g.dom:
        raise AlgebraError("pairing needs a common domain")
    pd = product(f.cod, g.cod)
    return Hom(f.dom, pd.prod, tuple(pd.pair(f(s), g(s)) for s in f.dom.elements), check=False)


def product_homs(f: Hom, g: Hom) -> Hom:
    """``f x g: A x B -> A' x B'``."""
    src = product(f.dom, g.dom)
    dst = product(f.cod, g.cod)
    return Hom(
        src.prod,
        dst.prod,
        tuple(dst.pair(f(a), g(b)) for a, b in map(src.unpair, src.prod.elements)),
        check=False,
    )


# -- subalgebras -------------------------------------------------------------


@dataclass(frozen=True)
class Subalgebra:
    of: FiniteAlgebra
    members: tuple[int, ...]

    @property
    def algebra(self) -> FiniteAlgebra:
        return _subalgebra_algebra(self.of, self.members)

    @property
    def inclusion(self) -> Hom:
        return Hom(self.algebra, self.of, self.members, check=False)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)


@lru_cache(maxsize=4096)
def _subalgebra_algebra(A: FiniteAlgebra, members: tuple[int, ...]) -> FiniteAlgebra:
    index = {m: i for i, m in enumerate(members)}
    n = len(members)
    tables = []
    for op, k, t in A.operations():
        tables.append(tuple(
            index[t[_idx(args, A.size)]]
            for args in itertools.product(members, repeat=k)
        ))
    name = A.name if n == A.size else f"{A.name}|{{{','.join(map(str, members))}}}"
    return FiniteAlgebra(A.sig, n, tuple(tables), name)


def _idx(args: Sequence[int], n: int) -> int:
    i = 0
    for a in args:
        i = i * n + a
    return i


def subalgebra_generate(A: FiniteAlgebra, seeds: Iterable[int] = ()) -> Subalgebra:
    members = set(seeds)
    if any(not 0 <= s < A.size for s in members):
        raise AlgebraError("seed outside the carrier")
    members.add(0)
    for op, k, t in A.operations():
        if k == 0:
            members.add(t[0])
    changed = True
    while changed:
        changed = False
        current = sorted(members)
        for op, k, t in A.operations():
            if k == 0:
                continue
            for args in itertools.product(current, repeat=k):
                v = t[_idx(args, A.size)]
                if v not in members:
                    members.add(v)
                    changed = True
    return Subalgebra(A, tuple(sorted(members)))


def all_subalgebras(A: FiniteAlgebra) -> list[Subalgebra]:
    """Every subalgebra, ordered by size then members."""
    bottom = subalgebra_generate(A)
    seen = {bottom.members: bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for S in frontier:
            for e in A.elements:
                if e in S.members:
                    continue
                T = subalgebra_generate(A, S.members + (e,))
                if T.members not in seen:
                    seen[T.members] = T
                    nxt.append(T)
        frontier = nxt
    return sorted(seen.values(), key=lambda s: (len(s.members), s.members))


class Pullback(NamedTuple):
    obj: FiniteAlgebra
    p1: Hom
    p2: Hom
    pairs: tuple[tuple[int, int], ...]


def pullback(f: Hom, g: Hom) -> Pullback:
    """``A x_X B`` as a re-indexed subalgebra of ``A x B``."""
    if f.cod != g.cod:
        raise AlgebraError("pullback needs a common codomain")
    pd = product(f.dom, g.dom)
    members = tuple(
        p for p in pd.prod.elements if f(pd.unpair(p)[0]) == g(pd.unpair(p)[1])
    )
    sub = Subalgebra(pd.prod, members)
    P = sub.algebra.renamed(f"({f.dom.name}x_{f.cod.name}{g.dom.name})")
    pairs = tuple(pd.unpair(p) for p in members)
    p1 = Hom(P, f.dom, tuple(a for a, _ in pairs), check=False)
    p2 = Hom(P, g.dom, tuple(b for _, b in pairs), check=False)
    return Pullback(P, p1, p2, pairs)


# -- congruences -------------------------------------------------------------


@dataclass(frozen=True)
class Congruence:
    """Operation-compatible partition, stored as the least element of each class."""

    on: FiniteAlgebra
    rep: tuple[int, ...]
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        object.__setattr__(self, "rep", tuple(self.rep))
        if not check:
            return
        rep = self.rep
        if len(rep) != self.on.size:
            raise AlgebraError("representative table has the wrong length")
        for x, r in enumerate(rep):
            if rep[r] != r or r > x:
                raise AlgebraError(f"representative table is not canonical at {x}")
        bad = _incompatibility(self.on, rep)
        if bad is not None:
            raise AlgebraError(f"partition is not compatible with {bad[0]!r} at {list(bad[1])}")

    @classmethod
    def from_partition(cls, A: FiniteAlgebra, blocks: Iterable[Iterable[int]]) -> "Congruence":
        rep = list(range(A.size))
        for block in blocks:
            block = sorted(block)
            for x in block:
                rep[x] = block[0]
        return cls(A, tuple(rep))

    @classmethod
    def equality(cls, A: FiniteAlgebra) -> "Congruence":
        return cls(A, tuple(A.elements), check=False)

    @classmethod
    def total(cls, A: FiniteAlgebra) -> "Congruence":
        return cls(A, (0,) * A.size, check=False)

    def related(self, a: int, b: int) -> bool:
        return self.rep[a] == self.rep[b]

    def classes(self) -> list[tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for x, r in enumerate(self.rep):
            out.setdefault(r, []).append(x)
        return [tuple(v) for _, v in sorted(out.items())]

    @property
    def num_classes(self) -> int:
        return len(set(self.rep))

    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((a, b) for a in self.on.elements for b in self.on.elements
                         if self.rep[a] == self.rep[b])

    def __le__(self, other: "Congruence") -> bool:
        _same_algebra(self, other)
        return all(other.rep[x] == other.rep[r] for x, r in enumerate(self.rep))

    def meet(self, other: "Congruence") -> "Congruence":
        _same_algebra(self, other)
        first: dict[tuple[int, int], int] = {}
        rep = []
        for x in self.on.elements:
            key = (self.rep[x], other.rep[x])
            rep.append(first.setdefault(key, x))
        return Congruence(self.on, tuple(rep), check=False)

    def join(self, other: "Congruence") -> "Congruence":
        _same_algebra(self, other)
        uf = _UnionFind(self.on.size)
        for x in self.on.elements:
            uf.union(x, self.rep[x])
            uf.union(x, other.rep[x])
        return Congruence(self.on, uf.reps(), check=False)

    def is_equality(self) -> bool:
        return self.rep == tuple(self.on.elements)

    def is_total(self) -> bool:
        return all(r == 0 for r in self.rep)


def _same_algebra(a: "Congruence | Relation", b: "Congruence | Relation") -> None:
    if a.on != b.on:
        raise AlgebraError("relations live on different algebras")


def _incompatibility(A: FiniteAlgebra, rep: Sequence[int]) -> tuple[str, tuple[int, ...]] | None:
    n = A.size
    for op, k, t in A.operations():
        if k == 0:
            continue
        for i, args in enumerate(itertools.product(range(n), repeat=k)):
            if rep[t[i]] != rep[t[_idx([rep[a] for a in args], n)]]:
                return op, args
    return None


def is_compatible(A: FiniteAlgebra, rep: Sequence[int]) -> bool:
    return _incompatibility(A, rep) is None


class _UnionFind:
    """Union-find whose roots are always the least element of their class."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True

    def reps(self) -> tuple[int, ...]:
        return tuple(self.find(x) for x in range(len(self.parent)))


def _translations(A: FiniteAlgebra) -> list[tuple[tuple[int, ...], int, int]]:
    """Basic unary translations as ``(table, stride, offset)`` families.

    Fixing every argument of a k-ary operation but position ``i`` gives the
    map ``x -> t[offset + x*stride]``; one entry per (operation, position,
    frozen arguments).
    """
    out = []
    n = A.size
    for op, k, t in A.operations():
        for i in range(k):
            stride = n ** (k - 1 - i)
            for others in itertools.product(range(n), repeat=k - 1):
                args = list(others[:i]) + [0] + list(others[i:])
                out.append((t, stride, _idx(args, n)))
    return out


@lru_cache(maxsize=1024)
def _cached_translations(A: FiniteAlgebra) -> list[tuple[tuple[int, ...], int, int]]:
    return _translations(A)


def generate_congruence(A: FiniteAlgebra, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Smallest congruence containing ``pairs``.

    Union-find closure: every pair that causes a merge is pushed through all
    basic translations until nothing new merges.
    """
    uf = _UnionFind(A.size)
    work = []
    for a, b in pairs:
        if not (0 <= a < A.size and 0 <= b < A.size):
            raise AlgebraError(f"pair ({a}, {b}) outside the carrier")
        if uf.union(a, b):
            work.append((a, b))
    trans = _cached_translations(A)
    while work:
        a, b = work.pop()
        for t, stride, off in trans:
            u, v = t[off + a * stride], t[off + b * stride]
            if u != v and uf.union(u, v):
                work.append((u, v))
    return Congruence(A, uf.reps(), check=False)


def principal_congruence(A: FiniteAlgebra, a: int, b: int) -> Congruence:
    return generate_congruence(A, [(a, b)])


def _con_key(c: Congruence) -> tuple:
    return (-c.num_classes, c.rep)


@lru_cache(maxsize=256)
def _all_congruences(A: FiniteAlgebra) -> tuple[Congruence, ...]:
    principals: dict[tuple[int, ...], Congruence] = {}
    for a, b in itertools.combinations(A.elements, 2):
        c = principal_congruence(A, a, b)
        principals.setdefault(c.rep, c)
    eq = Congruence.equality(A)
    found = {eq.rep: eq, **principals}
    gens = list(principals.values())
    frontier = list(principals.values())
    while frontier:
        nxt = []
        for c in frontier:
            for p in gens:
                j = c.join(p)
                if j.rep not in found:
                    found[j.rep] = j
                    nxt.append(j)
        frontier = nxt
    return tuple(sorted(found.values(), key=_con_key))


def all_congruences(A: FiniteAlgebra, cap: int = DEFAULT_CONGRUENCE_CAP) -> list[Congruence]:
    """The congruence lattice as the join-closure of the principal congruences.

    Ordered by decreasing number of classes, then by representative table, so
    equality comes first and the total congruence last.
    """
    if A.size > cap:
        raise CapExceeded(f"congruence enumeration on {A.name}", A.size, cap)
    return list(_all_congruences(A))


def quotient(A: FiniteAlgebra, theta: Congruence) -> tuple[FiniteAlgebra, Hom]:
    if theta.on != A:
        raise AlgebraError("congruence lives on a different algebra")
    reps = sorted(set(theta.rep))
    index = {r: i for i, r in enumerate(reps)}
    n = len(reps)
    tables = []
    for op, k, t in A.operations():
        tables.append(tuple(
            index[theta.rep[t[_idx(args, A.size)]]]
            for args in itertools.product(reps, repeat=k)
        ))
    name = A.name if n == A.size else f"{A.name}/{n}"
    Q = FiniteAlgebra(A.sig, n, tuple(tables), name)
    q = Hom(A, Q, tuple(index[r] for r in theta.rep), check=False)
    return Q, q


def kernel_congruence(f: Hom) -> Congruence:
    first: dict[int, int] = {}
    rep = tuple(first.setdefault(v, x) for x, v in enumerate(f.map))
    return Congruence(f.dom, rep, check=False)


@dataclass(frozen=True)
class Coequaliser:
    f: Hom
    g: Hom
    q: Hom

    @property
    def obj(self) -> FiniteAlgebra:
        return self.q.cod

    @property
    def congruence(self) -> Congruence:
        return kernel_congruence(self.q)


def coequaliser(f: Hom, g: Hom) -> Coequaliser:
    if f.dom != g.dom or f.cod != g.cod:
        raise AlgebraError("coequaliser needs a parallel pair")
    theta = generate_congruence(f.cod, [(f(s), g(s)) for s in f.dom.elements])
    _, q = quotient(f.cod, theta)
    return Coequaliser(f, g, q)


def factor_through_surjection(q: Hom, h: Hom) -> Hom | None:
    """The unique ``h'`` with ``h' ∘ q = h``, or None when ``Eq(q)`` is not below ``Eq(h)``."""
    if q.dom != h.dom:
        raise AlgebraError("factorisation needs a common domain")
    if not hom_image(q).surjective:
        raise AlgebraError("factorisation target map is not surjective")
    out = [-1] * q.cod.size
    for a in q.dom.elements:
        c = q(a)
        if out[c] < 0:
            out[c] = h(a)
        elif out[c] != h(a):
            return None
    return Hom(q.cod, h.cod, tuple(out))


# -- relations ---------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    on: FiniteAlgebra
    pairs: frozenset[tuple[int, int]]

    @classmethod
    def of(cls, theta: Congruence) -> "Relation":
        return cls(theta.on, theta.pairs())

    def __le__(self, other: "Relation") -> bool:
        _same_algebra(self, other)
        return self.pairs <= other.pairs

    def is_total(self) -> bool:
        return len(self.pairs) == self.on.size ** 2

    def is_symmetric(self) -> bool:
        return all((b, a) in self.pairs for a, b in self.pairs)


def relation_compose(theta1: Congruence | Relation, theta2: Congruence | Relation) -> Relation:
    """``{(a, c) : a theta1 b and b theta2 c for some b}``."""
    _same_algebra(theta1, theta2)
    r1 = theta1 if isinstance(theta1, Relation) else Relation.of(theta1)
    r2 = theta2 if isinstance(theta2, Relation) else Relation.of(theta2)
    succ: dict[int, set[int]] = {}
    for b, c in r2.pairs:
        succ.setdefault(b, set()).add(c)
    out = set()
    for a, b in r1.pairs:
        for c in succ.get(b, ()):
            out.add((a, c))
    return Relation(r1.on, frozenset(out))


def surjections(A: FiniteAlgebra, B: FiniteAlgebra) -> list[Hom]:
    from .algebra import enumerate_homs

    return [h for h in enumerate_homs(A, B) if hom_image(h).surjective]


def is_identity_like(q: Hom) -> bool:
    return q.dom.size == q.cod.size and q.map == tuple(range(q.dom.size))

