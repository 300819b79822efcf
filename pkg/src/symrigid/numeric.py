"""Floating-point and exact matrix ranks that cross-check the combinatorics.

The orbit Jacobian is the differential of the arc functions
``||x_s - A x_t - tau||^2`` at a random configuration; its rank at a generic
point is the rank of the symmetric rigidity matroid.  The complex matrices
M and M^L encode the rotation parts (and translations, for M^L) of the gains
and are row-reduced exactly over the cyclotomic field.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .cyclotomic import CycloRat, exact_rank
from .errors import InputError, LimitExceeded
from .gaingraph import GainGraph, as_mask, indices
from .isometry import Isometry, field_order
from .matroids import EdmondsMatroid, LinearMatroid, SetFunction

DEFAULT_TOL = 1e-8
DEFAULT_TRIALS = 3
EXPANSION_LIMIT = 10_000


@dataclass
class RankEstimate:
    rank: int
    trials: int
    tol: float
    gap: tuple[float, float] | None = None  # (smallest kept, largest dropped) relative singular values

    def to_dict(self) -> dict:
        return asdict(self)


def numeric_rank(m, tol: float = DEFAULT_TOL) -> RankEstimate:
    """Count singular values above ``tol`` times the largest one."""
    a = np.asarray(m)
    if a.size == 0:
        return RankEstimate(0, 1, tol, None)
    sv = np.linalg.svd(a, compute_uv=False)
    top = sv[0] if sv.size else 0.0
    if top == 0.0:
        return RankEstimate(0, 1, tol, (0.0, 0.0))
    rel = sv / top
    r = int(np.sum(rel > tol))
    kept = float(rel[r - 1]) if r > 0 else 0.0
    dropped = float(rel[r]) if r < rel.size else 0.0
    return RankEstimate(r, 1, tol, (kept, dropped))


def _best(estimates: list[RankEstimate], tol: float) -> RankEstimate:
    best = max(estimates, key=lambda e: e.rank)
    return RankEstimate(best.rank, len(estimates), tol, best.gap)


# --- M and M^L --------------------------------------------------------------


def _m_row(g: GainGraph, arc) -> list:
    if g.exact:
        L = field_order(g.rotation_order)
        zero, one = CycloRat.zero(L), CycloRat.one(L)
    else:
        zero, one = 0j, 1 + 0j
    t = arc.gain.rotation_unit()
    row = [zero] * g.n
    if arc.is_loop:
        row[arc.source] = one - t
    else:
        row[arc.source] = one
        row[arc.target] = -t
    return row


def build_M(g: GainGraph) -> list[list]:
    """|A| x |V| matrix: 1 at the source, -t(A) at the target, 1 - t(A) for a loop.

    Entries are CycloRat for exact graphs and complex floats otherwise; use
    :func:`as_array` for a numpy view.
    """
    return [_m_row(g, a) for a in g.arcs]


def build_ML(g: GainGraph) -> list[list]:
    """M with an extra last column holding -c(translation) of each gain."""
    return [_m_row(g, a) + [-a.gain.trans] for a in g.arcs]


def as_array(rows) -> np.ndarray:
    return np.array([[complex(x) for x in r] for r in rows], dtype=complex).reshape(len(rows), -1)


def matrix_rank(g: GainGraph, rows, s=None, tol: float = DEFAULT_TOL) -> int:
    """Rank of the selected rows; exact for exact graphs, SVD otherwise."""
    pick = indices(as_mask(s)) if s is not None else range(len(rows))
    sel = [rows[i] for i in pick]
    if not sel:
        return 0
    if g.exact:
        return exact_rank(sel)
    return numeric_rank(as_array(sel), tol).rank


# --- orbit Jacobian ---------------------------------------------------------


def _gain_data(gain: Isometry) -> tuple[np.ndarray, np.ndarray]:
    (a, b), (tx, ty) = gain.matrix()
    return np.array([a, b], dtype=float), np.array([tx, ty], dtype=float)


def arc_lengths(g: GainGraph, p) -> np.ndarray:
    """Squared lengths ||x_s - A x_t - tau||^2 of every arc at configuration p."""
    x = np.asarray(p, dtype=float).reshape(g.n, 2)
    out = np.empty(g.m)
    for i, arc in enumerate(g.arcs):
        A, tau = _gain_data(arc.gain)
        r = x[arc.source] - A @ x[arc.target] - tau
        out[i] = r @ r
    return out


def orbit_jacobian(g: GainGraph, p) -> np.ndarray:
    """Analytic Jacobian (|A| x 2n) of :func:`arc_lengths`.

    Non-loop rows hold 2r at the source and -2 A^T r at the target, with
    r = x_s - A x_t - tau.  A loop differentiates both occurrences of x_v and
    gets 2 (I - A)^T r.
    """
    x = np.asarray(p, dtype=float).reshape(g.n, 2)
    J = np.zeros((g.m, 2 * g.n))
    for i, arc in enumerate(g.arcs):
        A, tau = _gain_data(arc.gain)
        s, t = arc.source, arc.target
        r = x[s] - A @ x[t] - tau
        if s == t:
            J[i, 2 * s : 2 * s + 2] = 2 * (np.eye(2) - A).T @ r
        else:
            J[i, 2 * s : 2 * s + 2] = 2 * r
            J[i, 2 * t : 2 * t + 2] = -2 * A.T @ r
    return J


def finite_difference_jacobian(g: GainGraph, p, h: float = 1e-6) -> np.ndarray:
    p = np.asarray(p, dtype=float).ravel()
    J = np.zeros((g.m, p.size))
    for k in range(p.size):
        d = np.zeros_like(p)
        d[k] = h
        J[:, k] = (arc_lengths(g, p + d) - arc_lengths(g, p - d)) / (2 * h)
    return J


def random_configuration(n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.uniform(-1.0, 1.0, size=2 * n)


def generic_rank(
    g: GainGraph, trials: int = DEFAULT_TRIALS, seed: int = 0, tol: float = DEFAULT_TOL, s=None
) -> RankEstimate:
    """Max rank of the orbit Jacobian over seeded random configurations."""
    if trials < 1:
        raise InputError("trials must be at least 1")
    rows = indices(as_mask(s)) if s is not None else list(range(g.m))
    if not rows:
        return RankEstimate(0, trials, tol, None)
    ests = []
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        J = orbit_jacobian(g, random_configuration(g.n, rng))
        ests.append(numeric_rank(J[rows], tol))
    return _best(ests, tol)


def laman_generic_rank(n: int, edges, trials: int = DEFAULT_TRIALS, seed: int = 0, tol: float = DEFAULT_TOL) -> RankEstimate:
    """Rigidity-matrix rank of a plain graph; the trivial-group orbit Jacobian."""
    g = GainGraph(n, [(u, v, Isometry.identity(1)) for u, v in edges], rotation_order=1)
    return generic_rank(g, trials, seed, tol)


# --- Hadamard products ------------------------------------------------------


def hadamard_rank(AU, bU, AV, bV, s=None, seed: int = 0, trials: int = DEFAULT_TRIALS, tol: float = DEFAULT_TOL) -> RankEstimate:
    """Rank of the Jacobian of (x, y) -> pi_s((A_U x + b_U) * (A_V y + b_V)) at random points."""
    AU, AV = np.atleast_2d(np.asarray(AU, dtype=float)), np.atleast_2d(np.asarray(AV, dtype=float))
    if AU.shape[0] != AV.shape[0]:
        raise InputError("the two affine maps must have the same number of rows")
    E = AU.shape[0]
    bU = np.zeros(E) if bU is None else np.asarray(bU, dtype=float)
    bV = np.zeros(E) if bV is None else np.asarray(bV, dtype=float)
    rows = indices(as_mask(s)) if s is not None else list(range(E))
    if not rows:
        return RankEstimate(0, trials, tol, None)
    ests = []
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        u = AU @ rng.standard_normal(AU.shape[1]) + bU
        v = AV @ rng.standard_normal(AV.shape[1]) + bV
        J = np.hstack([v[:, None] * AU, u[:, None] * AV])
        ests.append(numeric_rank(J[rows], tol))
    return _best(ests, tol)


def product_rank(maps, s=None, seed: int = 0, trials: int = DEFAULT_TRIALS, tol: float = DEFAULT_TOL) -> RankEstimate:
    """Rank of the Jacobian of the coordinatewise product of several linear maps."""
    mats = [np.atleast_2d(np.asarray(A, dtype=float)) for A in maps]
    E = mats[0].shape[0]
    if any(A.shape[0] != E for A in mats):
        raise InputError("all maps must have the same number of rows")
    rows = indices(as_mask(s)) if s is not None else list(range(E))
    if not rows:
        return RankEstimate(0, trials, tol, None)
    ests = []
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        us = [A @ rng.standard_normal(A.shape[1]) for A in mats]
        blocks = []
        for i, A in enumerate(mats):
            others = np.prod([us[j] for j in range(len(us)) if j != i], axis=0)
            blocks.append(others[:, None] * A)
        ests.append(numeric_rank(np.hstack(blocks)[rows], tol))
    return _best(ests, tol)


def edmonds_product_rank(maps, s=None) -> int:
    """Rank of s in M(r_1 + ... + r_d - d + 1), the r_i being row-matroid ranks."""
    mats = [LinearMatroid([[Fraction(x) for x in row] for row in np.asarray(A).tolist()]) for A in maps]
    E = mats[0].size
    d = len(mats)
    f = SetFunction(E, lambda t: sum(m.rank(t) for m in mats) - d + 1)
    s = (1 << E) - 1 if s is None else as_mask(s)
    return EdmondsMatroid(f, validate=False).rank(s)


@dataclass
class ProbeRecord:
    d: int
    size: int
    subset: list[int]
    numeric_rank: int
    edmonds_rank: int
    agree: bool

    def to_dict(self) -> dict:
        return asdict(self)


def conjecture_probe(maps, s=None, seed: int = 0, trials: int = DEFAULT_TRIALS, tol: float = DEFAULT_TOL) -> ProbeRecord:
    """Compare the product rank with the Edmonds rank for d linear spaces.

    Reports agreement; never asserts it.  Maps must have integer or rational
    entries so that the matroid side is exact.
    """
    d = len(maps)
    if not 2 <= d <= 4:
        raise LimitExceeded(f"probe supports 2 to 4 spaces, got {d}")
    E = np.atleast_2d(np.asarray(maps[0])).shape[0]
    if E > 8:
        raise LimitExceeded(f"probe ground set of {E} exceeds the cap of 8")
    mask = (1 << E) - 1 if s is None else as_mask(s)
    num = product_rank(maps, mask, seed, trials, tol).rank
    comb = edmonds_product_rank(maps, mask)
    return ProbeRecord(d, E, indices(mask), num, comb, num == comb)


# --- covering expansion -----------------------------------------------------


def _trans_inf_norm(a: Isometry) -> float:
    t = complex(a.trans)
    return max(abs(t.real), abs(t.imag))


def expand_covering(g: GainGraph, translation_bound: int = 1, positions=None, limit: int = EXPANSION_LIMIT):
    """Finite piece of the covering framework.

    Vertices are pairs (group element, v) for the group elements generated by
    the gains whose translation has sup-norm at most ``translation_bound``;
    coordinates are g.p(v).  Each arc e = (u, v) yields the undirected edges
    {(h, u), (h phi(e), v)} with both ends present.

    Returns ``(points, edges, labels)``: an (N, 2) array, a sorted list of
    index pairs and a list of (element index, vertex) labels.
    """
    if not g.exact:
        raise InputError("covering expansion needs a finite declared rotation order")
    if translation_bound < 0:
        raise InputError("translation bound must be nonnegative")
    pos = positions if positions is not None else g.positions
    if pos is None:
        rng = np.random.default_rng(0)
        pos = {v: tuple(rng.uniform(-0.5, 0.5, 2)) for v in range(g.n)}
    gens = []
    for a in g.arcs:
        for h in (a.gain, a.gain.inverse()):
            if not h.is_identity() and h not in gens:
                gens.append(h)
    margin = sum(_trans_inf_norm(h) for h in gens)
    search = translation_bound + margin
    ident = g.identity()
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for h in gens:
            y = x * h
            if y in seen or _trans_inf_norm(y) > search + 1e-12:
                continue
            seen.add(y)
            order.append(y)
            if len(order) > limit:
                raise LimitExceeded(f"covering expansion exceeded {limit} group elements")
            queue.append(y)
    elems = [e for e in order if _trans_inf_norm(e) <= translation_bound + 1e-12]
    index = {e: i for i, e in enumerate(elems)}
    labels = []
    points = []
    vid = {}
    for i, e in enumerate(elems):
        for v in range(g.n):
            z = e.apply(complex(float(pos[v][0]), float(pos[v][1])))
            vid[(i, v)] = len(points)
            points.append((z.real, z.imag))
            labels.append((i, v))
    edges = set()
    for i, e in enumerate(elems):
        for arc in g.arcs:
            j = index.get(e * arc.gain)
            if j is None:
                continue
            a, b = vid[(i, arc.source)], vid[(j, arc.target)]
            if a != b:
                edges.add((min(a, b), max(a, b)))
    return np.array(points, dtype=float).reshape(-1, 2), sorted(edges), labels


def covering_length(points: np.ndarray, edges) -> np.ndarray:
    return np.array([math.dist(points[a], points[b]) for a, b in edges])
