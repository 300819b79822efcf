"""Exhaustive and randomized checks of the matroid identities.

Each check returns a list of per-instance records with pass/fail counts so the
CLI can print them and tests can assert on them.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np

from .errors import LimitExceeded
from .matroids import (
    EdmondsMatroid,
    GraphicMatroid,
    LinearMatroid,
    RankOracle,
    SetFunction,
    UnionMatroid,
    edmonds_independent,
    independent_by_flags,
    rank_function,
    subsets,
    sum_minus_one,
)
from .numeric import DEFAULT_TOL, DEFAULT_TRIALS, conjecture_probe, hadamard_rank

LAB_GROUND_LIMIT = 5
K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


@dataclass
class CheckRecord:
    name: str
    checked: int = 0
    failed: int = 0
    details: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


class TableMatroid(RankOracle):
    """A matroid given by its full rank table, with a readable name."""

    def __init__(self, size: int, table: tuple[int, ...], name: str):
        self.size = size
        self.table = table
        self.name = name

    def rank(self, s: int) -> int:
        return self.table[s]

    def __repr__(self):
        return self.name


def _table(m: RankOracle) -> tuple[int, ...]:
    return tuple(m.rank(s) for s in range(1 << m.size))


def _permute_mask(s: int, perm) -> int:
    out = 0
    for i, j in enumerate(perm):
        if s >> i & 1:
            out |= 1 << j
    return out


def _canonical(size: int, table) -> tuple[int, ...]:
    best = None
    for perm in permutations(range(size)):
        t = [0] * len(table)
        for s, r in enumerate(table):
            t[_permute_mask(s, perm)] = r
        t = tuple(t)
        if best is None or t < best:
            best = t
    return best


def matroid_family(k: int, loopless: bool = False) -> tuple[list[TableMatroid], list[TableMatroid]]:
    """Graphic matroids of simple graphs on at most 4 vertices plus uniform matroids, ground size k.

    Returns ``(representatives, labelled)``: one matroid per isomorphism class,
    and every distinct labelling.  Checking all pairs (representative,
    labelled) covers all pairs up to a simultaneous relabelling.
    """
    if k > LAB_GROUND_LIMIT:
        raise LimitExceeded(f"ground set {k} exceeds the lab cap of {LAB_GROUND_LIMIT}")
    labelled: dict[tuple, TableMatroid] = {}
    for r in range(0 if not loopless else 1, k + 1):
        m = TableMatroid(k, tuple(min(r, bin(s).count("1")) for s in range(1 << k)), f"U({r},{k})")
        labelled.setdefault(m.table, m)
    for edges in permutations(K4_EDGES, k):
        t = _table(GraphicMatroid(4, list(edges)))
        labelled.setdefault(t, TableMatroid(k, t, f"graphic{list(edges)}"))
    reps: dict[tuple, TableMatroid] = {}
    for t, m in labelled.items():
        reps.setdefault(_canonical(k, t), m)
    return list(reps.values()), list(labelled.values())


def union_check(max_ground: int = LAB_GROUND_LIMIT) -> list[CheckRecord]:
    """M(r1 + r2) equals the matroid union, independent set by independent set."""
    out = []
    for k in range(1, max_ground + 1):
        reps, labelled = matroid_family(k)
        rec = CheckRecord(f"union ground={k}")
        for m1 in reps:
            for m2 in labelled:
                f = rank_function(m1) + rank_function(m2)
                u = UnionMatroid(m1, m2)
                for s in subsets((1 << k) - 1):
                    rec.checked += 1
                    if edmonds_independent(f, s) != u.independent(s):
                        rec.failed += 1
                        rec.details.append({"m1": m1.name, "m2": m2.name, "set": s})
        out.append(rec)
    return out


def hgraph_check(max_ground: int = LAB_GROUND_LIMIT) -> list[CheckRecord]:
    """Cycle-free H-graph route against the Edmonds route for M(r_M + r_N - 1)."""
    out = []
    for k in range(1, max_ground + 1):
        reps, labelled = matroid_family(k, loopless=True)
        rec = CheckRecord(f"hgraph ground={k}")
        for m1 in reps:
            for m2 in labelled:
                f = sum_minus_one(m1, m2)
                for s in subsets((1 << k) - 1):
                    rec.checked += 1
                    if edmonds_independent(f, s) != independent_by_flags(m1, m2, s):
                        rec.failed += 1
                        rec.details.append({"m1": m1.name, "m2": m2.name, "set": s})
        out.append(rec)
    return out


def _row_matroid(A) -> LinearMatroid:
    return LinearMatroid([[Fraction(int(x)) for x in row] for row in np.asarray(A).tolist()])


def random_loopless_matrix(rng: np.random.Generator, rows: int, cols: int, sparsity: float = 0.4):
    while True:
        A = rng.integers(-2, 3, size=(rows, cols))
        A[rng.random((rows, cols)) < sparsity] = 0
        if np.all(np.any(A != 0, axis=1)):
            return A


def k3_incidence():
    """Rows d_uv = t_u - t_v of K3: the linear space behind the squared distances."""
    return np.array([[1, -1, 0], [1, 0, -1], [0, 1, -1]])


def hadamard_check(instances: int = 20, size: int = 5, seed: int = 0,
                   trials: int = DEFAULT_TRIALS, tol: float = DEFAULT_TOL) -> list[CheckRecord]:
    """Numeric rank of U * V against the rank in M(r_M + r_N - 1), every coordinate subset."""
    if size > 8:
        raise LimitExceeded(f"hadamard check ground {size} exceeds the cap of 8")
    rng = np.random.default_rng(seed)
    cases = [("K3 x K3", k3_incidence(), k3_incidence())]
    for i in range(instances):
        cases.append((f"random #{i}", random_loopless_matrix(rng, size, int(rng.integers(1, size + 1))),
                      random_loopless_matrix(rng, size, int(rng.integers(1, size + 1)))))
    out = []
    for name, AU, AV in cases:
        mu, mv = _row_matroid(AU), _row_matroid(AV)
        mat = EdmondsMatroid(sum_minus_one(mu, mv), validate=False)
        rec = CheckRecord(f"hadamard {name}")
        E = AU.shape[0]
        for s in subsets((1 << E) - 1):
            rec.checked += 1
            num = hadamard_rank(AU, None, AV, None, s, seed=seed, trials=trials, tol=tol).rank
            comb = mat.rank(s)
            if num != comb:
                rec.failed += 1
                rec.details.append({"set": s, "numeric": num, "edmonds": comb})
        out.append(rec)
    return out


def probe_run(d: int = 3, instances: int = 5, size: int = 5, seed: int = 0,
              trials: int = DEFAULT_TRIALS, tol: float = DEFAULT_TOL) -> list[dict]:
    """Conjecture probe records; exploratory, never gating."""
    rng = np.random.default_rng(seed)
    cases = [("K3 copies", [k3_incidence()] * d)]
    for i in range(instances):
        cases.append((f"random #{i}", [random_loopless_matrix(rng, size, int(rng.integers(1, size + 1))) for _ in range(d)]))
    out = []
    for name, maps in cases:
        E = maps[0].shape[0]
        agree = disagree = 0
        for r in range(E + 1):
            for combo in combinations(range(E), r):
                rec = conjecture_probe(maps, list(combo), seed=seed, trials=trials, tol=tol)
                if rec.agree:
                    agree += 1
                else:
                    disagree += 1
        out.append({"instance": name, "d": d, "size": E, "agree": agree, "disagree": disagree})
    return out


__all__ = [
    "CheckRecord",
    "SetFunction",
    "hadamard_check",
    "hgraph_check",
    "matroid_family",
    "probe_run",
    "union_check",
]
