"""Cooperators, central morphisms and the additive core.

Two morphisms ``f: A -> X`` and ``g: B -> X`` commute when some hom
``rho: A x B -> X`` restricts to ``f`` and ``g`` on the product axes; such a
``rho`` is a cooperator.  A morphism is central when it commutes with the
identity of its codomain.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (
    AlgebraError,
    FiniteAlgebra,
    Hom,
    compose_homs,
    enumerate_homs,
    identity,
    is_isomorphism,
    zero_hom,
)
from .conditions import centralic_pair_check
from .constructions import (
    ProductData,
    factors_of,
    kernel_congruence,
    product,
    product_homs,
)
from .report import FAIL, PASS, CheckReport, Counterexample, inputs_for


class NotCentralError(ValueError):
    pass


class NotCentralicError(ValueError):
    """Refusal: the ambient pair fails the centralic condition."""

    def __init__(self, message: str, report: CheckReport | None = None):
        super().__init__(message)
        self.report = report


class ConsistencyFault(AssertionError):
    """Two characterisations that must agree did not."""


@dataclass(frozen=True)
class CooperatorWitness:
    f: Hom
    g: Hom
    rho: Hom
    product: ProductData

    def axis_equations_hold(self) -> bool:
        pd = self.product
        return (compose_homs(self.rho, pd.i1) == self.f
                and compose_homs(self.rho, pd.i2) == self.g)

    def kernel_below(self) -> bool:
        """``Eq(f x g) <= Eq(rho)``."""
        return kernel_congruence(product_homs(self.f, self.g)) <= kernel_congruence(self.rho)


def find_cooperators(f: Hom, g: Hom) -> list[Hom]:
    """All cooperators of ``f`` and ``g``, lexicographic in their tables."""
    if f.cod != g.cod:
        raise AlgebraError("cooperators need a common codomain")
    pd = product(f.dom, g.dom)
    pinned = {pd.pair(a, 0): f(a) for a in f.dom.elements}
    pinned.update({pd.pair(0, b): g(b) for b in g.dom.elements})
    return enumerate_homs(pd.prod, f.cod, pinned)


def cooperator_witnesses(f: Hom, g: Hom) -> list[CooperatorWitness]:
    pd = product(f.dom, g.dom)
    return [CooperatorWitness(f, g, rho, pd) for rho in find_cooperators(f, g)]


def is_central(f: Hom) -> CooperatorWitness | None:
    ws = cooperator_witnesses(f, identity(f.cod))
    return ws[0] if ws else None


def commute(f: Hom, g: Hom) -> bool:
    return bool(find_cooperators(f, g))


def cooperator_via_formula(rho_f: Hom, g: Hom) -> Hom:
    """``(x, y) -> rho_f(x, g(y))`` for a cooperator ``rho_f`` of ``f`` and the identity."""
    pd = factors_of(rho_f.dom)
    if pd.right != rho_f.cod or g.cod != rho_f.cod:
        raise AlgebraError("rho_f must be X x Y -> Y and g must land in Y")
    src = product(pd.left, g.dom)
    table = tuple(rho_f(pd.pair(x, g(y))) for x, y in map(src.unpair, src.prod.elements))
    return Hom(src.prod, rho_f.cod, table, check=False)


def _rho(f: Hom, rho_f: Hom | None) -> Hom:
    if rho_f is not None:
        return rho_f
    w = is_central(f)
    if w is None:
        raise NotCentralError(f"{f!r} is not central")
    return w.rho


def star(f: Hom, g: Hom, rho_f: Hom | None = None) -> Hom:
    """``f ⋆ g``: the cooperator of ``f`` and ``g`` restricted to the diagonal."""
    if f.dom != g.dom or f.cod != g.cod:
        raise AlgebraError("star needs parallel morphisms")
    rho_fg = cooperator_via_formula(_rho(f, rho_f), g)
    diag = product(f.dom, f.dom).diag
    return compose_homs(rho_fg, diag)


# -- the additive core -------------------------------------------------------


@dataclass
class MonoidTable:
    """Central homs ``X -> Y`` under ⋆, acting on all homs ``X -> Y``.

    ``add[i][j]`` and ``action[i][k]`` hold indices into ``carrier`` and
    ``homs`` respectively (``-1`` if the result left the expected set).
    """

    X: FiniteAlgebra
    Y: FiniteAlgebra
    carrier: tuple[Hom, ...]
    homs: tuple[Hom, ...]
    add: tuple[tuple[int, ...], ...]
    unit: int
    action: tuple[tuple[int, ...], ...]
    rhos: tuple[Hom, ...]
    report: CheckReport | None = field(default=None, repr=False)

    def index(self, f: Hom) -> int:
        return self.carrier.index(f)

    def inverse(self, i: int) -> int | None:
        for j in range(len(self.carrier)):
            if self.add[i][j] == self.unit:
                return j
        return None

    def symmetrizable(self) -> list[int]:
        return [i for i in range(len(self.carrier)) if self.inverse(i) is not None]

    def as_dict(self) -> dict:
        return {
            "carrier": [list(h.map) for h in self.carrier],
            "add": [list(r) for r in self.add],
            "unit": self.unit,
            "homs": [list(h.map) for h in self.homs],
            "action": [list(r) for r in self.action],
        }


def z_monoid(X: FiniteAlgebra, Y: FiniteAlgebra) -> MonoidTable:
    """The commutative monoid ``Z(X, Y)`` of central homs.

    Refuses with :class:`NotCentralicError` when the pair ``(X, Y)`` is not
    centralic or a central hom turns out to have several cooperators.
    """
    rep = centralic_pair_check(X, Y)
    if not rep.passed:
        raise NotCentralicError(
            f"Z({X.name},{Y.name}) refused: pair is not centralic",
            rep,
        )
    homs = tuple(enumerate_homs(X, Y))
    idY = identity(Y)
    carrier, rhos = [], []
    for h in homs:
        coops = find_cooperators(h, idY)
        if len(coops) > 1:
            raise NotCentralicError(f"{h!r} has {len(coops)} cooperators with 1_{Y.name}")
        if coops:
            carrier.append(h)
            rhos.append(coops[0])
    c_index = {h.map: i for i, h in enumerate(carrier)}
    h_index = {h.map: i for i, h in enumerate(homs)}
    add = tuple(
        tuple(c_index.get(star(f, g, rho).map, -1) for g in carrier)
        for f, rho in zip(carrier, rhos)
    )
    action = tuple(
        tuple(h_index.get(star(f, g, rho).map, -1) for g in homs)
        for f, rho in zip(carrier, rhos)
    )
    table = MonoidTable(X, Y, tuple(carrier), homs, add,
                        c_index[zero_hom(X, Y).map], action, tuple(rhos))
    table.report = monoid_table_check(table)
    return table


def monoid_table_check(t: MonoidTable) -> CheckReport:
    """Exhaustive check of closure, unit, associativity, commutativity and the action laws."""
    n, m = len(t.carrier), len(t.homs)
    u = t.unit
    zero_in_homs = t.homs.index(t.carrier[u])
    failures: list[dict] = []

    def fail(law: str, **b) -> None:
        failures.append({"law": law, **b})

    for i in range(n):
        for j in range(n):
            if t.add[i][j] < 0:
                fail("closure", f=i, g=j)
    if not failures:
        for i in range(n):
            if t.add[u][i] != i or t.add[i][u] != i:
                fail("unit", f=i)
            for j in range(n):
                if t.add[i][j] != t.add[j][i]:
                    fail("commutativity", f=i, g=j)
                for k in range(n):
                    if t.add[t.add[i][j]][k] != t.add[i][t.add[j][k]]:
                        fail("associativity", f=i, g=j, h=k)
        for k in range(m):
            if t.action[u][k] != k:
                fail("action-unit", g=k)
            for i in range(n):
                for j in range(n):
                    if t.action[t.add[i][j]][k] != t.action[i][t.action[j][k]]:
                        fail("action-compatibility", f=i, g=j, h=k)
        for i in range(n):
            if t.action[i][zero_in_homs] != t.homs.index(t.carrier[i]):
                fail("action-on-zero", f=i)
    subject = (t.X.name, t.Y.name)
    stats = {"central": n, "homs": m}
    if failures:
        return CheckReport("z-monoid", FAIL, subject,
                           counterexample=Counterexample(subject, failures[0]),
                           stats={**stats, "failures": len(failures)},
                           witness={"table": t.as_dict()}, inputs=inputs_for(t.X, t.Y))
    return CheckReport("z-monoid", PASS, subject, stats=stats,
                       witness={"table": t.as_dict()}, inputs=inputs_for(t.X, t.Y))


def naturality_violations(t: MonoidTable, x: Hom) -> list[tuple[int, int]]:
    """Pairs ``(f, g)`` where ``(f ⋆ g) ∘ x != (f ∘ x) ⋆ (g ∘ x)``, for ``x: X' -> X``."""
    bad = []
    for i, f in enumerate(t.carrier):
        fx = compose_homs(f, x)
        for k, g in enumerate(t.homs):
            lhs = compose_homs(t.homs[t.action[i][k]], x)
            if star(fx, compose_homs(g, x)) != lhs:
                bad.append((i, k))
    return bad


# -- symmetrizable morphisms ---------------------------------------------------


def _pullback_route(rho_f: Hom) -> bool:
    """``(x, y) -> (x, rho_f(x, y))`` is a bijection of ``X x Y``."""
    pd = factors_of(rho_f.dom)
    images = {pd.pair(x, rho_f(pd.pair(x, y))) for x in pd.left.elements for y in pd.right.elements}
    return len(images) == pd.prod.size


def is_symmetrizable(f: Hom, table: MonoidTable | None = None) -> tuple[bool, Hom | None]:
    """Decide whether ``f`` has a ⋆-inverse in ``Z(dom f, cod f)``.

    Both the inverse search and the bijection criterion on ``X x Y`` are
    evaluated; disagreement raises :class:`ConsistencyFault`.
    """
    w = is_central(f)
    if w is None:
        raise NotCentralError(f"{f!r} is not central")
    if table is None:
        table = z_monoid(f.dom, f.cod)
    j = table.inverse(table.index(f))
    by_search = j is not None
    by_bijection = _pullback_route(table.rhos[table.index(f)])
    if by_search != by_bijection:
        raise ConsistencyFault(
            f"symmetrizability of {f!r}: inverse search says {by_search}, "
            f"bijection criterion says {by_bijection}"
        )
    return by_search, (table.carrier[j] if j is not None else None)


# -- commutative and abelian objects -------------------------------------------


def commutative_structures(X: FiniteAlgebra) -> list[Hom]:
    """Every unitary magma multiplication ``X x X -> X`` with unit 0."""
    idX = identity(X)
    return find_cooperators(idX, idX)


def is_commutative(X: FiniteAlgebra) -> bool:
    return bool(commutative_structures(X))


def verify_internal_monoid(X: FiniteAlgebra, rho: Hom) -> CheckReport:
    """Unit, associativity and commutativity of ``rho`` as element-wise equations."""
    pd = factors_of(rho.dom)
    if pd.left != X or pd.right != X or rho.cod != X:
        raise AlgebraError("rho must be a hom X x X -> X")

    def mul(a: int, b: int) -> int:
        return rho(pd.pair(a, b))

    failures = []
    for x in X.elements:
        if mul(x, 0) != x or mul(0, x) != x:
            failures.append({"law": "unit", "x": x, "x*0": mul(x, 0), "0*x": mul(0, x)})
            break
    for x in X.elements:
        for y in X.elements:
            for z in X.elements:
                lhs, rhs = mul(mul(x, y), z), mul(x, mul(y, z))
                if lhs != rhs:
                    failures.append({"law": "associativity", "x": x, "y": y, "z": z,
                                     "(xy)z": lhs, "x(yz)": rhs})
                    break
            else:
                continue
            break
        else:
            continue
        break
    for x in X.elements:
        for y in range(x):
            if mul(x, y) != mul(y, x):
                failures.append({"law": "commutativity", "x": y, "y": x,
                                 "xy": mul(y, x), "yx": mul(x, y)})
                break
        else:
            continue
        break
    subject = (X.name,)
    witness = {"rho": list(rho.map)}
    if failures:
        b = dict(failures[0], rho=list(rho.map))
        return CheckReport("internal-monoid", FAIL, subject, witness=witness,
                           counterexample=Counterexample(subject, b),
                           stats={"failed_laws": [f["law"] for f in failures]},
                           inputs=inputs_for(X))
    return CheckReport("internal-monoid", PASS, subject, witness=witness, inputs=inputs_for(X))


def _abelian_for_structure(
    X: FiniteAlgebra, rho: Hom, strict: bool = True
) -> tuple[bool, Hom | None]:
    """Inverse search and bijection criterion for one structure.

    ``strict`` (a centralic ambient) turns any disagreement into a
    :class:`ConsistencyFault`; otherwise disagreement just means "no".
    """
    pd = factors_of(rho.dom)
    inverse = None
    for g in enumerate_homs(X, X):
        if all(rho(pd.pair(x, g(x))) == 0 for x in X.elements):
            inverse = g
            break
    by_bijection = _pullback_route(rho)
    if (inverse is not None) != by_bijection:
        if strict:
            raise ConsistencyFault(
                f"{X.name}: inverse search and bijection criterion disagree for {rho!r}"
            )
        return False, None
    if inverse is None:
        return False, None
    if not _is_abelian_group(X, rho, inverse):
        if strict:
            raise ConsistencyFault(f"{X.name}: structure with inverses is not an abelian group")
        return False, None
    return True, inverse


def _is_abelian_group(X: FiniteAlgebra, rho: Hom, inv: Hom) -> bool:
    pd = factors_of(rho.dom)
    return verify_internal_monoid(X, rho).passed and all(
        rho(pd.pair(x, inv(x))) == 0 == rho(pd.pair(inv(x), x)) for x in X.elements
    )


def is_abelian_object(X: FiniteAlgebra, rho: Hom | None = None) -> tuple[bool, Hom | None]:
    """Whether ``X`` is abelian, with the inverse-assigning endomorphism.

    With ``rho`` given, the question is asked of that magma structure.
    Otherwise, in a centralic ambient, ``1_X`` is tested for
    symmetrizability; outside one (several structures may exist) each
    structure is tested and the first abelian one wins.
    """
    centralic = centralic_pair_check(X, X).passed
    if rho is not None:
        return _abelian_for_structure(X, rho, strict=centralic)
    structures = commutative_structures(X)
    if not structures:
        return False, None
    if centralic:
        ok, inv = is_symmetrizable(identity(X))
        if ok and not _is_abelian_group(X, structures[0], inv):
            raise ConsistencyFault(f"{X.name}: symmetrizable identity without a group structure")
        return ok, inv
    for s in structures:
        ok, inv = _abelian_for_structure(X, s, strict=False)
        if ok:
            return ok, inv
    return False, None


def preserves_magma(f: Hom, rho_x: Hom, rho_y: Hom) -> bool:
    """``f ∘ rho_X == rho_Y ∘ (f x f)``."""
    return compose_homs(f, rho_x) == compose_homs(rho_y, product_homs(f, f))


def is_coequaliser_of_axes(X: FiniteAlgebra, rho: Hom) -> bool:
    """Whether ``rho: X x X -> X`` is (isomorphic over ``X x X`` to) the coequaliser of the axes."""
    from .constructions import coequaliser, factor_through_surjection

    pd = product(X, X)
    co = coequaliser(pd.i1, pd.i2)
    phi = factor_through_surjection(co.q, rho)
    return phi is not None and is_isomorphism(phi)


# -- reports -----------------------------------------------------------------


def cooperators_check(f: Hom, g: Hom) -> CheckReport:
    """List the cooperators of ``f`` and ``g``; fails when there are none."""
    found = find_cooperators(f, g)
    A, B, X = f.dom, g.dom, f.cod
    names = {"A": A.name, "B": B.name, "X": X.name, "f": list(f.map), "g": list(g.map)}
    subject = tuple(dict.fromkeys((A.name, B.name, X.name)))
    inputs = inputs_for(A, B, X)
    if not found:
        return CheckReport("cooperators", FAIL, subject, inputs=inputs,
                           counterexample=Counterexample(subject, {**names, "cooperators": []}))
    return CheckReport("cooperators", PASS, subject, inputs=inputs, stats={"count": len(found)},
                       witness={**names, "cooperators": [list(r.map) for r in found]})


def central_check(f: Hom) -> CheckReport:
    X, Y = f.dom, f.cod
    subject = (X.name, Y.name)
    w = is_central(f)
    if w is None:
        return CheckReport("central", FAIL, subject, inputs=inputs_for(X, Y),
                           counterexample=Counterexample(subject, {"f": list(f.map),
                                                                   "cooperators": 0}))
    return CheckReport("central", PASS, subject, inputs=inputs_for(X, Y),
                       witness={"f": list(f.map), "rho": list(w.rho.map)})


def symmetrizable_check(f: Hom, table: MonoidTable | None = None) -> CheckReport:
    X, Y = f.dom, f.cod
    subject = (X.name, Y.name)
    ok, inv = is_symmetrizable(f, table)
    if ok:
        return CheckReport("symmetrizable", PASS, subject, inputs=inputs_for(X, Y),
                           witness={"f": list(f.map), "inverse": list(inv.map)})
    return CheckReport("symmetrizable", FAIL, subject, inputs=inputs_for(X, Y),
                       counterexample=Counterexample(subject, {"f": list(f.map), "inverse": None}))


def commutative_check(X: FiniteAlgebra) -> CheckReport:
    """Lists the unitary magma structures of ``X``."""
    found = commutative_structures(X)
    if found:
        return CheckReport("commutative", PASS, (X.name,), inputs=inputs_for(X),
                           witness={"structures": [list(r.map) for r in found]})
    return CheckReport("commutative", FAIL, (X.name,), inputs=inputs_for(X),
                       counterexample=Counterexample((X.name,), {"structures": []}))


def abelian_check(X: FiniteAlgebra) -> CheckReport:
    ok, inv = is_abelian_object(X)
    if ok:
        return CheckReport("abelian", PASS, (X.name,), witness={"inverse": list(inv.map)},
                           inputs=inputs_for(X))
    return CheckReport("abelian", FAIL, (X.name,), inputs=inputs_for(X),
                       counterexample=Counterexample((X.name,), {"inverse": None}))
