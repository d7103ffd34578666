"""Built-in fixture algebras.

Every fixture is written as an algebra document and goes through
:func:`load_algebra`, so the tables are validated exactly as a file would be.
"""

from __future__ import annotations

import itertools
from typing import Any, Callable

from .algebra import FiniteAlgebra, Signature, dump_algebra, load_algebra

LATTICE = Signature((("meet", 2), ("join", 2), ("zero", 0)))
MONOID = Signature((("mul", 2), ("zero", 0)))
POINTED = Signature((("zero", 0),))

SIGNATURES = {"lattice": LATTICE, "monoid": MONOID, "pointed": POINTED}


def _doc(name: str, size: int, **binary: Callable[[int, int], int]) -> dict[str, Any]:
    ops = [
        {"name": op, "arity": 2, "table": [[fn(x, y) for y in range(size)] for x in range(size)]}
        for op, fn in binary.items()
    ]
    ops.append({"name": "zero", "arity": 0, "table": 0})
    return {"name": name, "size": size, "zero": 0, "operations": ops}


def _leftzero(x: int, y: int) -> int:
    # 0 is the adjoined unit; a=1, b=2 form a left-zero band
    if x == 0:
        return y
    return x


DOCUMENTS: dict[str, dict[str, Any]] = {
    "lattice2": _doc("B", 2, meet=min, join=max),
    "group-z2": _doc("Z2", 2, mul=lambda x, y: x ^ y),
    "pset2": {"name": "P2", "size": 2, "zero": 0,
              "operations": [{"name": "zero", "arity": 0, "table": 0}]},
    "monoid-or": _doc("M2", 2, mul=max),
    "monoid-trunc3": _doc("N3", 3, mul=lambda x, y: min(x + y, 2)),
    "monoid-leftzero3": _doc("L", 3, mul=_leftzero),
}

ALIASES = {
    "B": "lattice2",
    "Z2": "group-z2",
    "P2": "pset2",
    "M2": "monoid-or",
    "N3": "monoid-trunc3",
    "L": "monoid-leftzero3",
}


def trivial(sig: Signature) -> FiniteAlgebra:
    label = next((k for k, v in SIGNATURES.items() if v == sig), "custom")
    return FiniteAlgebra(sig, 1, tuple((0,) for _ in sig.ops), f"1[{label}]")


def pointed_set(n: int) -> FiniteAlgebra:
    return FiniteAlgebra(POINTED, n, ((0,),), f"P{n}")


def catalog(name: str) -> list[FiniteAlgebra]:
    """Algebras registered under ``name`` (a catalog name or a short alias)."""
    if name == "trivial":
        return [trivial(LATTICE), trivial(MONOID), trivial(POINTED)]
    key = ALIASES.get(name, name)
    if key not in DOCUMENTS:
        raise KeyError(f"unknown catalog name {name!r}")
    return [load_algebra(DOCUMENTS[key])]


def get(name: str) -> FiniteAlgebra:
    (A,) = catalog(name)
    return A


def by_name(name: str) -> FiniteAlgebra:
    """Look up a fixture by its algebra name (``Z2``, ``1[monoid]``, ...)."""
    for A in full_catalog():
        if A.name == name:
            return A
    return get(name)


def full_catalog() -> list[FiniteAlgebra]:
    out: list[FiniteAlgebra] = []
    for key in DOCUMENTS:
        out.extend(catalog(key))
    out.extend(catalog("trivial"))
    return out


def signature_slice(sig: Signature, extra: list[FiniteAlgebra] = ()) -> list[FiniteAlgebra]:
    """Catalog algebras of one signature (trivial first), plus ``extra``."""
    members = [trivial(sig)] + [A for A in full_catalog() if A.sig == sig and A.size > 1]
    for A in extra:
        if A not in members:
            members.append(A)
    return members


def slices() -> dict[str, list[FiniteAlgebra]]:
    return {label: signature_slice(sig) for label, sig in SIGNATURES.items()}


def iter_pairs(algebras: list[FiniteAlgebra]):
    return itertools.product(algebras, repeat=2)


def documents() -> dict[str, dict[str, Any]]:
    """Round-tripped documents for every named fixture."""
    return {key: dump_algebra(get(key)) for key in DOCUMENTS}
