"""Signatures, finite pointed algebras and homomorphisms.

Carriers are the index sets ``{0, ..., n-1}``; index 0 is always the
distinguished point.  Operation tables are stored flat, in row-major order.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import InitVar, dataclass, field
from pathlib import Path
from typing import Any, Iterator, Mapping, NamedTuple, Sequence


class AlgebraError(ValueError):
    """Malformed algebra, morphism or document."""

    def __init__(self, message: str, coordinate: Sequence[Any] | None = None):
        super().__init__(message)
        self.coordinate = tuple(coordinate) if coordinate is not None else None


class SignatureMismatch(AlgebraError):
    pass


@dataclass(frozen=True)
class Signature:
    ops: tuple[tuple[str, int], ...]
    zero_symbol: str = "zero"

    def __post_init__(self) -> None:
        object.__setattr__(self, "ops", tuple((str(n), int(k)) for n, k in self.ops))
        names = [n for n, _ in self.ops]
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate operation names in {names}")
        if any(k < 0 for _, k in self.ops):
            raise AlgebraError("negative arity")
        arities = dict(self.ops)
        if arities.get(self.zero_symbol) != 0:
            raise AlgebraError(
                f"designated point symbol {self.zero_symbol!r} must be a nullary operation"
            )

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.ops)

    def arity(self, name: str) -> int:
        for n, k in self.ops:
            if n == name:
                return k
        raise KeyError(name)


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """A finite pointed algebra on the carrier ``range(size)``.

    ``tables`` is aligned with ``sig.ops``: the table of a k-ary operation is a
    flat tuple of length ``size**k`` indexed row-major by the argument tuple.
    ``factors`` records ``(left, right)`` when the algebra was built as a
    binary product; it does not take part in equality.
    """

    sig: Signature
    size: int
    tables: tuple[tuple[int, ...], ...]
    name: str = "A"
    factors: tuple["FiniteAlgebra", "FiniteAlgebra"] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        n = self.size
        if n < 1:
            raise AlgebraError(f"{self.name}: size must be positive, got {n}")
        tables = tuple(tuple(int(v) for v in t) for t in self.tables)
        object.__setattr__(self, "tables", tables)
        if len(tables) != len(self.sig.ops):
            raise AlgebraError(
                f"{self.name}: expected {len(self.sig.ops)} tables, got {len(tables)}")
        for (op, k), t in zip(self.sig.ops, tables):
            if len(t) != n**k:
                raise AlgebraError(
                    f"{self.name}: table of {op!r} has {len(t)} entries, expected {n**k}")
            for i, v in enumerate(t):
                if not 0 <= v < n:
                    coord = _unflatten(i, n, k)
                    raise AlgebraError(
                        f"{self.name}: operation {op!r} entry at {list(coord)} = {v} "
                        f"is out-of-range for size {n}",
                        coord,
                    )
        if self.table(self.sig.zero_symbol) != (0,):
            raise AlgebraError(f"{self.name}: the point symbol must evaluate to element 0")
        object.__setattr__(self, "_hash", hash((self.sig, n, tables)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteAlgebra):
            return NotImplemented
        return self is other or (
            self._hash == other._hash
            and self.size == other.size
            and self.sig == other.sig
            and self.tables == other.tables
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FiniteAlgebra({self.name!r}, size={self.size})"

    @property
    def elements(self) -> range:
        return range(self.size)

    def table(self, op: str) -> tuple[int, ...]:
        return self.tables[self.sig.names.index(op)]

    def apply(self, op: str, *args: int) -> int:
        return self.table(op)[_flat_index(args, self.size)]

    def operations(self) -> Iterator[tuple[str, int, tuple[int, ...]]]:
        """Yield ``(name, arity, table)`` for every operation symbol."""
        for (op, k), t in zip(self.sig.ops, self.tables):
            yield op, k, t

    def renamed(self, name: str) -> "FiniteAlgebra":
        return FiniteAlgebra(self.sig, self.size, self.tables, name, self.factors)


def _flat_index(args: Sequence[int], n: int) -> int:
    i = 0
    for a in args:
        i = i * n + a
    return i


def _unflatten(i: int, n: int, k: int) -> tuple[int, ...]:
    coord = []
    for _ in range(k):
        i, r = divmod(i, n)
        coord.append(r)
    return tuple(reversed(coord))


def algebra_from_functions(
    sig: Signature, size: int, ops: Mapping[str, Any], name: str = "A"
) -> FiniteAlgebra:
    """Tabulate Python callables; nullary entries may be plain ints."""
    tables = []
    for op, k in sig.ops:
        fn = ops.get(op, 0 if op == sig.zero_symbol else None)
        if fn is None:
            raise AlgebraError(f"missing operation {op!r}")
        if k == 0:
            tables.append((fn() if callable(fn) else int(fn),))
        else:
            tables.append(tuple(fn(*t) for t in itertools.product(range(size), repeat=k)))
    return FiniteAlgebra(sig, size, tuple(tables), name)


def require_same_signature(*algebras: FiniteAlgebra) -> None:
    sig = algebras[0].sig
    for a in algebras[1:]:
        if a.sig != sig:
            raise SignatureMismatch(f"signature mismatch between {algebras[0].name} and {a.name}")


# -- documents -------------------------------------------------------------


def _nest(flat: Sequence[int], n: int, k: int) -> Any:
    if k == 0:
        return flat[0]
    if k == 1:
        return list(flat)
    step = n ** (k - 1)
    return [_nest(flat[i * step:(i + 1) * step], n, k - 1) for i in range(n)]


def _flatten(raw: Any, n: int, k: int, op: str, prefix: tuple[int, ...] = ()) -> list[int]:
    if k == 0:
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise AlgebraError(f"operation {op!r}: expected an integer at {list(prefix)}", prefix)
        if not 0 <= raw < n:
            raise AlgebraError(
                f"operation {op!r}: entry at {list(prefix)} = {raw} is out-of-range for size {n}",
                prefix,
            )
        return [raw]
    if not isinstance(raw, list) or len(raw) != n:
        got = len(raw) if isinstance(raw, list) else type(raw).__name__
        raise AlgebraError(
            f"operation {op!r}: malformed table at {list(prefix)}: "
            f"expected a list of {n}, got {got}",
            prefix,
        )
    out: list[int] = []
    for i, sub in enumerate(raw):
        out.extend(_flatten(sub, n, k - 1, op, prefix + (i,)))
    return out


def load_algebra(raw: Mapping[str, Any]) -> FiniteAlgebra:
    """Build a validated algebra from a parsed algebra document.

    The document carries ``name``, ``size``, ``zero`` (must be 0), an optional
    ``zero_symbol`` (default ``"zero"``) and ``operations``, a list of
    ``{name, arity, table}`` with tables nested ``size**arity`` deep.  The
    point symbol may be omitted from ``operations``; it is then added with
    value 0.
    """
    if not isinstance(raw, Mapping):
        raise AlgebraError("algebra document must be a mapping")
    for key in ("name", "size", "operations"):
        if key not in raw:
            raise AlgebraError(f"missing field {key!r}")
    name = str(raw["name"])
    n = raw["size"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise AlgebraError(f"{name}: size must be a positive integer")
    if raw.get("zero", 0) != 0:
        raise AlgebraError(f"{name}: zero must be 0, got {raw.get('zero')!r}")
    zero_symbol = str(raw.get("zero_symbol", "zero"))
    ops: list[tuple[str, int]] = []
    tables: list[tuple[int, ...]] = []
    for entry in raw["operations"]:
        op = str(entry["name"])
        k = entry["arity"]
        if isinstance(k, bool) or not isinstance(k, int) or k < 0:
            raise AlgebraError(f"{name}: operation {op!r} has invalid arity {k!r}")
        try:
            flat = _flatten(entry["table"], n, k, op)
        except AlgebraError as exc:
            raise AlgebraError(f"{name}: {exc}", exc.coordinate) from None
        ops.append((op, k))
        tables.append(tuple(flat))
    if zero_symbol not in [o for o, _ in ops]:
        ops.append((zero_symbol, 0))
        tables.append((0,))
    sig = Signature(tuple(ops), zero_symbol)
    zt = tables[sig.names.index(zero_symbol)]
    if zt != (0,):
        raise AlgebraError(f"{name}: zero_symbol {zero_symbol!r} table is {zt[0]}, must be 0", ())
    return FiniteAlgebra(sig, n, tuple(tables), name)


def dump_algebra(A: FiniteAlgebra) -> dict[str, Any]:
    return {
        "name": A.name,
        "size": A.size,
        "zero": 0,
        "zero_symbol": A.sig.zero_symbol,
        "operations": [
            {"name": op, "arity": k, "table": _nest(t, A.size, k)} for op, k, t in A.operations()
        ],
    }


def load_algebra_file(path: str | Path) -> FiniteAlgebra:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise AlgebraError(f"{path}: invalid JSON ({exc})") from None
    try:
        return load_algebra(raw)
    except AlgebraError as exc:
        raise AlgebraError(f"{path}: {exc}", exc.coordinate) from None


# -- homomorphisms ---------------------------------------------------------


@dataclass(frozen=True)
class Hom:
    dom: FiniteAlgebra
    cod: FiniteAlgebra
    map: tuple[int, ...]
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        object.__setattr__(self, "map", tuple(self.map))
        if not check:
            return
        if self.dom.sig != self.cod.sig:
            raise SignatureMismatch(f"{self.dom.name} -> {self.cod.name}: signature mismatch")
        if len(self.map) != self.dom.size:
            raise AlgebraError(f"map has {len(self.map)} entries, domain has {self.dom.size}")
        if any(not 0 <= v < self.cod.size for v in self.map):
            raise AlgebraError("map value out of range")
        bad = _hom_violation(self.dom, self.cod, self.map)
        if bad is not None:
            op, args = bad
            raise AlgebraError(f"map does not preserve {op!r} at {list(args)}", args)

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __matmul__(self, other: "Hom") -> "Hom":
        return compose_homs(self, other)

    def __repr__(self) -> str:
        return f"Hom({self.dom.name}->{self.cod.name}, {list(self.map)})"


def _hom_violation(
    A: FiniteAlgebra, B: FiniteAlgebra, m: Sequence[int]
) -> tuple[str, tuple[int, ...]] | None:
    n, nb = A.size, B.size
    for (op, k, ta), tb in zip(A.operations(), B.tables):
        for i, args in enumerate(itertools.product(range(n), repeat=k)):
            if m[ta[i]] != tb[_flat_index([m[a] for a in args], nb)]:
                return op, args
    return None


def is_hom(A: FiniteAlgebra, B: FiniteAlgebra, m: Sequence[int]) -> bool:
    return (
        A.sig == B.sig
        and len(m) == A.size
        and all(0 <= v < B.size for v in m)
        and _hom_violation(A, B, m) is None
    )


def identity(A: FiniteAlgebra) -> Hom:
    return Hom(A, A, tuple(range(A.size)), check=False)


def zero_hom(A: FiniteAlgebra, B: FiniteAlgebra) -> Hom:
    require_same_signature(A, B)
    return Hom(A, B, (0,) * A.size, check=False)


def compose_homs(g: Hom, f: Hom) -> Hom:
    """``g ∘ f``."""
    if f.cod != g.dom:
        raise AlgebraError(f"cannot compose: codomain {f.cod.name} != domain {g.dom.name}")
    return Hom(f.dom, g.cod, tuple(g.map[v] for v in f.map), check=False)


class Image(NamedTuple):
    members: tuple[int, ...]
    surjective: bool
    injective: bool


def hom_image(f: Hom) -> Image:
    members = tuple(sorted(set(f.map)))
    return Image(members, len(members) == f.cod.size, len(members) == f.dom.size)


def is_isomorphism(f: Hom) -> bool:
    img = hom_image(f)
    return img.surjective and img.injective


def enumerate_homs(
    A: FiniteAlgebra, B: FiniteAlgebra, pinned: Mapping[int, int] | None = None
) -> list[Hom]:
    """All homomorphisms ``A -> B``, lexicographic in the map table.

    ``pinned`` fixes the images of some elements in advance; only homs
    agreeing with it are returned.
    """
    require_same_signature(A, B)
    return [Hom(A, B, m, check=False) for m in _hom_search(A, B, pinned or {})]


def _hom_search(
    A: FiniteAlgebra, B: FiniteAlgebra, pinned: Mapping[int, int]
) -> Iterator[tuple[int, ...]]:
    n, nb = A.size, B.size
    # clauses: (args, result, cod table); watch[e] lists clauses mentioning e
    clauses: list[tuple[tuple[int, ...], int, tuple[int, ...]]] = []
    constants: list[tuple[int, int]] = []
    watch: list[list[int]] = [[] for _ in range(n)]
    for (op, k, ta), tb in zip(A.operations(), B.tables):
        if k == 0:
            constants.append((ta[0], tb[0]))
            continue
        for i, args in enumerate(itertools.product(range(n), repeat=k)):
            ci = len(clauses)
            clauses.append((args, ta[i], tb))
            for a in set(args):
                watch[a].append(ci)

    assign = [-1] * n
    trail: list[int] = []

    def set_value(e: int, v: int) -> bool:
        if assign[e] >= 0:
            return assign[e] == v
        if not 0 <= v < nb:
            return False
        assign[e] = v
        trail.append(e)
        queue = [e]
        while queue:
            x = queue.pop()
            for ci in watch[x]:
                args, res, tb = clauses[ci]
                idx = 0
                for a in args:
                    va = assign[a]
                    if va < 0:
                        break
                    idx = idx * nb + va
                else:
                    val = tb[idx]
                    cur = assign[res]
                    if cur < 0:
                        assign[res] = val
                        trail.append(res)
                        queue.append(res)
                    elif cur != val:
                        return False
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            assign[trail.pop()] = -1

    for a, b in constants:
        if not set_value(a, b):
            return
    for e in sorted(pinned):
        if not set_value(e, pinned[e]):
            return

    def dfs() -> Iterator[tuple[int, ...]]:
        try:
            i = assign.index(-1)
        except ValueError:
            yield tuple(assign)
            return
        for v in range(nb):
            mark = len(trail)
            if set_value(i, v):
                yield from dfs()
            undo(mark)

    yield from dfs()
