from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from centralic import catalog as cat
from centralic.algebra import FiniteAlgebra, Signature

sys.path.insert(0, str(Path(__file__).parent))

UNARY = Signature((("s", 1), ("zero", 0)))
BINARY = cat.MONOID
MIXED = Signature((("s", 1), ("mul", 2), ("zero", 0)))


@pytest.fixture(scope="session")
def B():
    return cat.get("B")


@pytest.fixture(scope="session")
def Z2():
    return cat.get("Z2")


@pytest.fixture(scope="session")
def P2():
    return cat.get("P2")


@pytest.fixture(scope="session")
def M2():
    return cat.get("M2")


@pytest.fixture(scope="session")
def N3():
    return cat.get("N3")


@pytest.fixture(scope="session")
def L():
    return cat.get("L")


@st.composite
def algebras(draw, sig: Signature = BINARY, min_size: int = 1, max_size: int = 3,
             name: str = "R"):
    """Random pointed algebras; every operation table is drawn freely except the point."""
    n = draw(st.integers(min_size, max_size))
    tables = []
    for op, k in sig.ops:
        if op == sig.zero_symbol:
            tables.append((0,))
        else:
            tables.append(tuple(draw(st.lists(st.integers(0, n - 1),
                                               min_size=n**k, max_size=n**k))))
    return FiniteAlgebra(sig, n, tuple(tables), name)
