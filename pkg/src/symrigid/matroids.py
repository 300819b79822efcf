"""Finite matroids as rank oracles, and the constructions built on them.

Subsets of the ground set {0, ..., size-1} are int bitmasks.  Everything here
is exhaustive with explicit size caps; correctness over speed.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterator, Sequence

from .cyclotomic import exact_rank
from .errors import InputError, LimitExceeded
from .gaingraph import indices, popcount

EDMONDS_VALIDATE_LIMIT = 12
UNION_LIMIT = 16
FLAG_LIMIT = 10


def _bits(mask: int) -> Iterator[int]:
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def subsets(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask``."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class RankOracle(ABC):
    """A matroid on {0, ..., size-1} given by its rank function."""

    size: int

    @property
    def ground(self) -> int:
        return (1 << self.size) - 1

    @abstractmethod
    def rank(self, s: int) -> int: ...

    def independent(self, s: int) -> bool:
        return self.rank(s) == popcount(s)

    def is_loopless(self) -> bool:
        return all(self.rank(1 << e) == 1 for e in range(self.size))


class CachedOracle(RankOracle):
    """Wraps a rank function with memoisation."""

    def __init__(self, size: int, rank_fn: Callable[[int], int], name: str = "oracle"):
        self.size = size
        self._fn = lru_cache(maxsize=None)(rank_fn)
        self.name = name

    def rank(self, s: int) -> int:
        return self._fn(s)

    def __repr__(self):
        return f"<{self.name} on {self.size} elements>"


def graphic_rank(n_vertices: int, edges: Sequence[tuple[int, int]], s: int) -> int:
    """v(S) - c(S) for the edges selected by ``s`` (union-find)."""
    parent = list(range(n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    r = 0
    for e in _bits(s):
        u, v = edges[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            r += 1
    return r


class GraphicMatroid(RankOracle):
    def __init__(self, n_vertices: int, edges: Sequence[tuple[int, int]]):
        self.n_vertices = n_vertices
        self.edges = [tuple(e) for e in edges]
        self.size = len(self.edges)

    def rank(self, s: int) -> int:
        return graphic_rank(self.n_vertices, self.edges, s)

    def __repr__(self):
        return f"GraphicMatroid({self.n_vertices}, {self.edges})"


class UniformMatroid(RankOracle):
    def __init__(self, r: int, k: int):
        if not 0 <= r <= k:
            raise InputError(f"uniform matroid U({r},{k}) needs 0 <= r <= k")
        self.r, self.size = r, k

    def rank(self, s: int) -> int:
        return min(self.r, popcount(s))

    def __repr__(self):
        return f"UniformMatroid({self.r}, {self.size})"


class LinearMatroid(RankOracle):
    """Row matroid of an exact matrix (entries Fraction, int or CycloRat)."""

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = [list(r) for r in rows]
        self.size = len(self.rows)
        self._rank = lru_cache(maxsize=None)(self._compute)

    def _compute(self, s: int) -> int:
        return exact_rank([self.rows[i] for i in _bits(s)])

    def rank(self, s: int) -> int:
        return self._rank(s)


class SetFunction:
    """An integer set function on bitmasks over a ground set of ``size``."""

    def __init__(self, size: int, fn: Callable[[int], int]):
        self.size = size
        self._fn = lru_cache(maxsize=None)(fn)

    def __call__(self, s: int) -> int:
        return self._fn(s)

    def __add__(self, other: SetFunction) -> SetFunction:
        return SetFunction(self.size, lambda s: self(s) + other(s))

    def shift(self, c: int) -> SetFunction:
        return SetFunction(self.size, lambda s: self(s) + c)

    def validate(self, limit: int = EDMONDS_VALIDATE_LIMIT) -> None:
        """Check monotonicity and submodularity exhaustively.

        Uses the local forms f(S) <= f(S+a) and
        f(S+a) + f(S+b) >= f(S+a+b) + f(S), which are equivalent to the global
        ones.  Raises InputError on failure; skipped above ``limit``.
        """
        if self.size > limit:
            return
        ground = (1 << self.size) - 1
        for s in range(ground + 1):
            fs = self(s)
            out = [e for e in range(self.size) if not s >> e & 1]
            for a in out:
                if self(s | 1 << a) < fs:
                    raise InputError(f"set function is not monotone at {indices(s)} + {a}")
            for a, b in combinations(out, 2):
                if self(s | 1 << a) + self(s | 1 << b) < self(s | 1 << a | 1 << b) + fs:
                    raise InputError(f"set function is not submodular at {indices(s)}, {a}, {b}")


def rank_function(m: RankOracle) -> SetFunction:
    return SetFunction(m.size, m.rank)


def edmonds_independent(f: SetFunction, i: int) -> bool:
    """I is independent in M(f) iff I is empty or |I'| <= f(I') for all nonempty I' within I.

    The empty set is never used as a bound: f may be negative there (as for
    r_M + r_N - 1) without making every set dependent.
    """
    if i == 0:
        return True
    for sub in subsets(i):
        if sub and popcount(sub) > f(sub):
            return False
    return True


def matroid_rank(independent: Callable[[int], bool], size: int, s: int | None = None) -> int:
    """Greedy maximal independent subset; valid because the system is a matroid."""
    s = (1 << size) - 1 if s is None else s
    basis = 0
    for e in _bits(s):
        if independent(basis | 1 << e):
            basis |= 1 << e
    return popcount(basis)


class EdmondsMatroid(RankOracle):
    """M(f) for a monotone submodular integer set function f."""

    def __init__(self, f: SetFunction, validate: bool = True):
        if validate:
            f.validate()
        self.f = f
        self.size = f.size
        self._indep: dict[int, bool] = {0: True}
        self._rank = lru_cache(maxsize=None)(self._compute_rank)

    def independent(self, s: int) -> bool:
        got = self._indep.get(s)
        if got is None:
            # downward closed, so reuse memoised answers for s minus one element
            got = popcount(s) <= self.f(s) and all(self.independent(s & ~(1 << e)) for e in _bits(s))
            self._indep[s] = got
        return got

    def _compute_rank(self, s: int) -> int:
        return matroid_rank(self.independent, self.size, s)

    def rank(self, s: int) -> int:
        return self._rank(s)


def union_independent(m1: RankOracle, m2: RankOracle, i: int, limit: int = UNION_LIMIT) -> bool:
    """Whether I splits into an m1-independent and an m2-independent part."""
    if m1.size != m2.size:
        raise InputError("union needs matroids on a common ground set")
    if popcount(i) > limit:
        raise LimitExceeded(f"union check on {popcount(i)} elements exceeds the cap of {limit}")
    if popcount(i) > m1.rank(i) + m2.rank(i):
        return False
    elems = list(_bits(i))

    def search(k: int, a: int, b: int) -> bool:
        if k == len(elems):
            return True
        bit = 1 << elems[k]
        if m1.independent(a | bit) and search(k + 1, a | bit, b):
            return True
        return m2.independent(b | bit) and search(k + 1, a, b | bit)

    return search(0, 0, 0)


class UnionMatroid(RankOracle):
    def __init__(self, m1: RankOracle, m2: RankOracle):
        if m1.size != m2.size:
            raise InputError("union needs matroids on a common ground set")
        self.m1, self.m2, self.size = m1, m2, m1.size
        self._rank = lru_cache(maxsize=None)(
            lambda s: matroid_rank(lambda t: union_independent(m1, m2, t), self.size, s)
        )

    def independent(self, s: int) -> bool:
        return union_independent(self.m1, self.m2, s)

    def rank(self, s: int) -> int:
        return self._rank(s)


def closure(m: RankOracle, s: int) -> int:
    r = m.rank(s)
    out = s
    for e in range(m.size):
        if not s >> e & 1 and m.rank(s | 1 << e) == r:
            out |= 1 << e
    return out


def flats(m: RankOracle, limit: int = FLAG_LIMIT) -> list[int]:
    """All nonempty flats, sorted by rank then by elements."""
    if m.size > limit:
        raise LimitExceeded(f"flat enumeration on {m.size} elements exceeds the cap of {limit}")
    out = [s for s in range(1, m.ground + 1) if closure(m, s) == s]
    out.sort(key=lambda s: (m.rank(s), indices(s)))
    return out


def enumerate_flags(m: RankOracle, limit: int = FLAG_LIMIT, maximal_only: bool = False) -> Iterator[tuple[int, ...]]:
    """Flags of flats: nonempty chains of nonempty flats, smallest flat first.

    With ``maximal_only`` only the maximal chains (atom up to the whole ground
    set) are produced.
    """
    fl = flats(m, limit)
    above = {f: [g for g in fl if g != f and f & ~g == 0] for f in fl}
    if maximal_only:
        above = {f: [g for g in gs if m.rank(g) == m.rank(f) + 1] for f, gs in above.items()}

    def extend(chain: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        nxt = above[chain[-1]]
        if not maximal_only or not nxt:
            yield chain
        for g in nxt:
            yield from extend(chain + (g,))

    if maximal_only:
        minimal = [f for f in fl if not any(g != f and g & ~f == 0 for g in fl)]
        for f in minimal:
            yield from extend((f,))
    else:
        for f in fl:
            yield from extend((f,))


def h_graph(flag1: Sequence[int], flag2: Sequence[int], s: int) -> list[tuple[int, int]] | None:
    """Bipartite multigraph linking the minimal flats containing each element of S.

    Returns a list of edges (index into flag1, index into flag2), one per
    element of ``s``.  Returns None if some element of ``s`` lies in no flat of
    one of the flags.
    """
    edges = []
    for e in _bits(s):
        bit = 1 << e
        i = next((k for k, f in enumerate(flag1) if f & bit), None)
        j = next((k for k, g in enumerate(flag2) if g & bit), None)
        if i is None or j is None:
            return None
        edges.append((i, j))
    return edges


def is_forest(n_left: int, n_right: int, edges: Sequence[tuple[int, int]]) -> bool:
    parent = list(range(n_left + n_right))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        a, b = find(i), find(n_left + j)
        if a == b:
            return False
        parent[a] = b
    return True


def sum_minus_one(m: RankOracle, n: RankOracle) -> SetFunction:
    return SetFunction(m.size, lambda s: m.rank(s) + n.rank(s) - 1)


def independent_by_flags(
    m: RankOracle, n: RankOracle, s: int, limit: int = FLAG_LIMIT, maximal_only: bool = True
) -> bool:
    """Route B: some pair of flags of flats has a cycle-free H-graph on S.

    Refining a flag only splits vertices of the H-graph, so a cycle-free
    H-graph for a flag pair stays cycle-free for any refinement; searching the
    maximal flags therefore decides the same question as searching all flags.
    Flag pairs where an element of S lies in no flat are skipped.
    """
    if m.size != n.size:
        raise InputError("matroids must share a ground set")
    if not (m.is_loopless() and n.is_loopless()):
        raise InputError("the flag criterion needs loopless matroids")
    if s == 0:
        return True
    flags_n = list(enumerate_flags(n, limit, maximal_only))
    for f1 in enumerate_flags(m, limit, maximal_only):
        for f2 in flags_n:
            h = h_graph(f1, f2, s)
            if h is not None and is_forest(len(f1), len(f2), h):
                return True
    return False


def independent_sum_minus_one(m: RankOracle, n: RankOracle, s: int, limit: int = FLAG_LIMIT) -> tuple[bool, bool]:
    """Independence in M(r_M + r_N - 1) by both routes: (Edmonds, flags)."""
    if m.size > limit:
        raise LimitExceeded(f"flag route on {m.size} elements exceeds the cap of {limit}")
    a = edmonds_independent(sum_minus_one(m, n), s)
    b = independent_by_flags(m, n, s, limit)
    return a, b


def lift_rank(m: RankOracle, is_balanced_set: Callable[[int], bool], s: int) -> int:
    """Rank in the elementary lift given by a linear class.

    r(S) = r_M(S) when S is balanced for the class, r_M(S) + 1 otherwise.
    """
    r = m.rank(s)
    return r if is_balanced_set(s) else r + 1


class LiftMatroid(RankOracle):
    def __init__(self, m: RankOracle, is_balanced_set: Callable[[int], bool]):
        self.m, self.pred, self.size = m, is_balanced_set, m.size

    def rank(self, s: int) -> int:
        return lift_rank(self.m, self.pred, s)


def is_matroid_rank(size: int, r: Callable[[int], int]) -> bool:
    """Exhaustive check of the rank axioms (normalised, unit increase, submodular)."""
    if r(0) != 0:
        return False
    ground = (1 << size) - 1
    for s in range(ground + 1):
        rs = r(s)
        out = [e for e in range(size) if not s >> e & 1]
        for a in out:
            d = r(s | 1 << a) - rs
            if d not in (0, 1):
                return False
        for a, b in combinations(out, 2):
            if r(s | 1 << a) + r(s | 1 << b) < r(s | 1 << a | 1 << b) + rs:
                return False
    return True
