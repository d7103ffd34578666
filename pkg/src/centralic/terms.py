"""Search for terms satisfying Mal'cev-style equations on a finite algebra.

A k-ary term operation of ``A`` is a vector indexed by ``A**k`` (row-major).
The term operations form the subalgebra of ``A**(A**k)`` generated by the
projections and the constants; it is explored breadth-first, each new vector
remembering how it was built so a witness can be read back as a term.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

import numpy as np

from .algebra import FiniteAlgebra
from .constructions import CapExceeded

DEFAULT_STEP_LIMIT = 10**6
SIZE_CAPS = {"majority": 4, "m4": 3, "unital_plus": 4}
ARITIES = {"majority": 3, "m4": 4, "unital_plus": 2}


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self) -> str:
        return f"v{self.index}"


@dataclass(frozen=True)
class App:
    op: str
    args: tuple["Term", ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.op
        return f"{self.op}({', '.join(map(str, self.args))})"


Term = Union[Var, App]


def term_arity(t: Term) -> int:
    """One more than the largest variable index used."""
    if isinstance(t, Var):
        return t.index + 1
    return max((term_arity(a) for a in t.args), default=0)


def evaluate(t: Term, A: FiniteAlgebra, env: Sequence[int]) -> int:
    if isinstance(t, Var):
        return env[t.index]
    vals = [evaluate(a, A, env) for a in t.args]
    if len(vals) != A.sig.arity(t.op):
        raise ValueError(f"{t.op} applied to {len(vals)} arguments")
    return A.apply(t.op, *vals)


def parse_term(text: str) -> Term:
    """Inverse of ``str(term)``."""
    text = text.replace(" ", "")
    pos = 0

    def parse() -> Term:
        nonlocal pos
        start = pos
        while pos < len(text) and text[pos] not in "(),":
            pos += 1
        head = text[start:pos]
        if not head:
            raise ValueError(f"unexpected character at {pos} in {text!r}")
        if head[0] == "v" and head[1:].isdigit() and (pos >= len(text) or text[pos] != "("):
            return Var(int(head[1:]))
        args = []
        if pos < len(text) and text[pos] == "(":
            pos += 1
            while True:
                args.append(parse())
                if text[pos] == ",":
                    pos += 1
                    continue
                if text[pos] == ")":
                    pos += 1
                    break
        return App(head, tuple(args))

    t = parse()
    if pos != len(text):
        raise ValueError(f"trailing input in {text!r}")
    return t


# -- equations --------------------------------------------------------------
# Each kind is a list of (lhs argument pattern, rhs) over named variables; the
# symbol "0" stands for the point.

EQUATIONS: dict[str, list[tuple[tuple[str, ...], str]]] = {
    "majority": [(("x", "x", "y"), "x"), (("x", "y", "x"), "x"), (("y", "x", "x"), "x")],
    "m4": [(("x", "x", "y", "0"), "x"), (("0", "y", "y", "y"), "y"), (("y", "x", "y", "0"), "y")],
    "unital_plus": [(("x", "0"), "x"), (("0", "x"), "x")],
}


def constraints(kind: str, n: int) -> dict[tuple[int, ...], int]:
    """Coordinates of ``A**k`` pinned by the equations of ``kind``, with their values.

    Raises ValueError if the equations are inconsistent on ``n`` elements
    (they never are for the built-in kinds).
    """
    out: dict[tuple[int, ...], int] = {}
    for pattern, rhs in EQUATIONS[kind]:
        names = sorted({s for s in pattern + (rhs,) if s != "0"})
        for values in itertools.product(range(n), repeat=len(names)):
            env = dict(zip(names, values), **{"0": 0})
            coord = tuple(env[s] for s in pattern)
            val = env[rhs]
            if out.setdefault(coord, val) != val:
                raise ValueError(f"{kind}: equations clash at {coord}")
    return out


def satisfies(t: Term, A: FiniteAlgebra, kind: str) -> bool:
    """Independent check: evaluate ``t`` at every pinned argument tuple."""
    return all(evaluate(t, A, coord) == val for coord, val in constraints(kind, A.size).items())


# -- closure ----------------------------------------------------------------


@dataclass
class SearchResult:
    kind: str
    term: Term | None
    closure_size: int
    steps: int
    exhausted: bool


def _op_tables(A: FiniteAlgebra) -> list[tuple[str, int, np.ndarray]]:
    n = A.size
    return [(op, k, np.array(t, dtype=np.int64).reshape((n,) * k) if k else np.array(t[0]))
            for op, k, t in A.operations()]


def term_search(
    A: FiniteAlgebra,
    kind: str,
    step_limit: int = DEFAULT_STEP_LIMIT,
    size_cap: int | None = None,
) -> SearchResult:
    """Look for a term of the given kind (``majority``, ``m4``, ``unital_plus``).

    ``steps`` counts candidate vectors produced by operation applications; if
    it would exceed ``step_limit`` before the closure is exhausted,
    :class:`CapExceeded` is raised rather than answering "no term".
    """
    if kind not in EQUATIONS:
        raise ValueError(f"unknown term kind {kind!r}")
    cap = SIZE_CAPS[kind] if size_cap is None else size_cap
    if A.size > cap:
        raise CapExceeded(f"{kind} term search on {A.name}", A.size, cap)
    k = ARITIES[kind]
    n = A.size
    pinned = constraints(kind, n)
    coords = list(itertools.product(range(n), repeat=k))
    flat = {c: i for i, c in enumerate(coords)}
    idx = np.array([flat[c] for c in pinned], dtype=np.int64)
    want = np.array(list(pinned.values()), dtype=np.int64)

    vectors: list[np.ndarray] = []
    parents: list[tuple] = []
    seen: dict[bytes, int] = {}

    def add(vec: np.ndarray, parent: tuple) -> bool:
        key = vec.astype(np.int8).tobytes()
        if key in seen:
            return False
        seen[key] = len(vectors)
        vectors.append(vec)
        parents.append(parent)
        return True

    def hit(vec: np.ndarray) -> bool:
        return bool(np.array_equal(vec[idx], want))

    grid = np.array(coords, dtype=np.int64).reshape(len(coords), k)
    for i in range(k):
        add(grid[:, i].copy(), ("var", i))
    tables = _op_tables(A)
    for op, ar, t in tables:
        if ar == 0:
            add(np.full(len(coords), int(t), dtype=np.int64), ("app", op, ()))

    steps = 0
    for j, vec in enumerate(vectors):
        if hit(vec):
            return SearchResult(kind, _rebuild(j, parents), len(vectors), steps, False)

    i = 0
    while i < len(vectors):
        for op, ar, t in tables:
            if ar == 0:
                continue
            for args in _tuples_with_max(i, ar):
                steps += 1
                if steps > step_limit:
                    raise CapExceeded(f"{kind} term search on {A.name} (steps)", steps, step_limit)
                vec = t[tuple(vectors[a] for a in args)]
                if add(vec, ("app", op, args)) and hit(vec):
                    return SearchResult(kind, _rebuild(len(vectors) - 1, parents),
                                        len(vectors), steps, False)
        i += 1
    return SearchResult(kind, None, len(vectors), steps, True)


def _tuples_with_max(i: int, k: int) -> Iterator[tuple[int, ...]]:
    """Index tuples over ``range(i + 1)`` that use ``i`` at least once."""
    for p in range(k):
        # p is the first position holding i
        for before in itertools.product(range(i), repeat=p):
            for after in itertools.product(range(i + 1), repeat=k - 1 - p):
                yield before + (i,) + after


def _rebuild(j: int, parents: list[tuple]) -> Term:
    memo: dict[int, Term] = {}

    def go(m: int) -> Term:
        if m not in memo:
            p = parents[m]
            memo[m] = Var(p[1]) if p[0] == "var" else App(p[1], tuple(go(a) for a in p[2]))
        return memo[m]

    return go(j)


def clone_brute_force(A: FiniteAlgebra, k: int) -> set[tuple[int, ...]]:
    """All k-ary term operations by naive fixpoint iteration (small inputs only)."""
    n = A.size
    coords = list(itertools.product(range(n), repeat=k))
    funcs = {tuple(c[i] for c in coords) for i in range(k)}
    for op, ar, t in A.operations():
        if ar == 0:
            funcs.add((t[0],) * len(coords))
    while True:
        new = set()
        for op, ar, t in A.operations():
            if ar == 0:
                continue
            for args in itertools.product(sorted(funcs), repeat=ar):
                new.add(tuple(A.apply(op, *(a[c] for a in args)) for c in range(len(coords))))
        if new <= funcs:
            return funcs
        funcs |= new
