"""Combinatorial rigidity verdicts.

* Laman (2,3)-counts for plain graphs, decided by a pebble game.
* Counts |F| <= 2|V(F)| - alpha(F) for gain graphs over R^2 x| SO(2).
* The set function f = 2 r_M - [C-balanced] whose Edmonds matroid gives the
  same independent sets, with r_M the frame rank of the rotation parts.
* The rotation-group counts |F| <= -1 + sum over components 2|V| - 2 beta.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .errors import InputError, LimitExceeded
from .gaingraph import (
    MAX_SUBSET_ARCS,
    GainGraph,
    alpha,
    as_mask,
    connected_subsets,
    frame_rank,
    group_alpha,
    indices,
    popcount,
)
from .matroids import EdmondsMatroid, SetFunction, subsets

LAMAN_CROSSCHECK_EDGES = 12


@dataclass
class RigidityReport:
    independent: bool
    rank: int
    target_rank: int
    spanning: bool
    minimally_rigid: bool
    n_vertices: int
    n_arcs: int
    witness: tuple[int, ...] | None = None
    method: str = "alpha-count"
    exact: bool = True
    flags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["witness"] = list(self.witness) if self.witness is not None else None
        return d


def _assemble(n, m, rank, target, witness, method, exact=True, flags=None) -> RigidityReport:
    independent = rank == m
    return RigidityReport(
        independent=independent,
        rank=rank,
        target_rank=target,
        spanning=rank == target,
        minimally_rigid=independent and m == target,
        n_vertices=n,
        n_arcs=m,
        witness=witness,
        method=method,
        exact=exact,
        flags=list(flags or []),
    )


# --- Laman ------------------------------------------------------------------


class PebbleGame:
    """The (k, l)-pebble game; only (2, 3) is used here.

    Each vertex starts with k pebbles.  An accepted edge is covered by a
    pebble taken from one endpoint and oriented away from it.  An edge uv is
    independent iff l + 1 pebbles can be gathered on u and v.
    """

    def __init__(self, n: int, k: int = 2, l: int = 3):
        self.n, self.k, self.l = n, k, l
        self.pebbles = [k] * n
        self.out: list[list[int]] = [[] for _ in range(n)]
        self.accepted: list[tuple[int, int]] = []

    def _fetch(self, root: int, pinned: int) -> bool:
        seen = {root, pinned}
        parent = {}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y in seen:
                    continue
                seen.add(y)
                parent[y] = x
                if self.pebbles[y] > 0:
                    self.pebbles[y] -= 1
                    self.pebbles[root] += 1
                    z = y
                    while z != root:
                        p = parent[z]
                        self.out[p].remove(z)
                        self.out[z].append(p)
                        z = p
                    return True
                stack.append(y)
        return False

    def _gather(self, u: int, v: int) -> bool:
        while self.pebbles[u] < self.k:
            if not self._fetch(u, v):
                return False
        while self.pebbles[v] < self.l + 1 - self.k:
            if not self._fetch(v, u):
                return False
        return True

    def reach(self, u: int, v: int) -> set[int]:
        seen = {u, v}
        stack = [u, v]
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def add_edge(self, u: int, v: int) -> bool:
        """Insert uv if independent; return whether it was accepted."""
        if not self._gather(u, v):
            return False
        self.pebbles[u] -= 1
        self.out[u].append(v)
        self.accepted.append((u, v))
        return True


def laman_count_independent(n: int, edges, s: int | None = None) -> bool:
    """|F| <= 2|V(F)| - 3 for every nonempty subset F of the selected edges."""
    edges = list(edges)
    s = (1 << len(edges)) - 1 if s is None else s
    for sub in subsets(s):
        if not sub:
            continue
        verts = set()
        for i in indices(sub):
            verts.update(edges[i])
        if popcount(sub) > 2 * len(verts) - 3:
            return False
    return True


def _check_simple(n: int, edges) -> list[tuple[int, int]]:
    seen = set()
    out = []
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge {u}-{v} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise InputError(f"self-loop at vertex {u}; the graph must be simple")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputError(f"repeated edge {u}-{v}; the graph must be simple")
        seen.add(key)
        out.append((u, v))
    return out


def laman_decide(n: int, edges, crosscheck: bool = True) -> RigidityReport:
    """Generic rigidity of a simple graph in the plane via the (2,3)-pebble game.

    Returns a report whose witness, for a dependent graph, lists the indices of
    a violating edge set: the accepted edges spanned by the pebble-game reach
    set of the first rejected edge, plus that edge.
    """
    edges = _check_simple(n, edges)
    game = PebbleGame(n)
    witness = None
    rank = 0
    accepted_idx = []
    for i, (u, v) in enumerate(edges):
        if game.add_edge(u, v):
            rank += 1
            accepted_idx.append(i)
        elif witness is None:
            block = game.reach(u, v)
            witness = tuple(
                sorted([j for j in accepted_idx if edges[j][0] in block and edges[j][1] in block] + [i])
            )
    target = 2 * n - 3 if n >= 2 else 0
    flags = []
    if crosscheck and len(edges) <= LAMAN_CROSSCHECK_EDGES:
        if laman_count_independent(n, edges) != (rank == len(edges)):
            raise AssertionError("pebble game disagrees with the count definition")
        flags.append("count-crosschecked")
    return _assemble(n, len(edges), rank, target, witness, "pebble-game", flags=flags)


# --- gain-graph counts ------------------------------------------------------


def count_bound(g: GainGraph, s, max_arcs: int = MAX_SUBSET_ARCS) -> int:
    """2|V(F)| - alpha(F)."""
    s = as_mask(s)
    return 2 * g.vertex_count(s) - alpha(g, s, max_arcs)


def _violates(g: GainGraph, s: int, max_arcs: int) -> bool:
    return popcount(s) > count_bound(g, s, max_arcs)


def _check_cap(s: int, max_arcs: int) -> None:
    if popcount(s) > max_arcs:
        raise LimitExceeded(f"arc subset of size {popcount(s)} exceeds the enumeration cap of {max_arcs}")


def _witness_key(s: int):
    return (popcount(s), indices(s))


def gain_independent(g: GainGraph, s=None, max_arcs: int = MAX_SUBSET_ARCS) -> tuple[bool, tuple[int, ...] | None]:
    """Check |F| <= 2|V(F)| - alpha(F) over all connected F within ``s``.

    A disconnected violator always has a violating component, so connected
    subsets suffice.  The witness is the violator that comes first by
    (size, sorted arc indices).
    """
    s = g.full if s is None else as_mask(s)
    _check_cap(s, max_arcs)
    best = None
    for sub in connected_subsets(g, s):
        if _violates(g, sub, max_arcs):
            if best is None or _witness_key(sub) < _witness_key(best):
                best = sub
                if popcount(sub) == 1:
                    break
    if best is None:
        return True, None
    return False, tuple(indices(best))


def gain_basis(g: GainGraph, s=None, max_arcs: int = MAX_SUBSET_ARCS) -> int:
    """Greedy basis of ``s`` in the count matroid, scanning arcs in index order."""
    s = g.full if s is None else as_mask(s)
    _check_cap(s, max_arcs)
    basis = 0
    for e in indices(s):
        cand = basis | 1 << e
        if not any(_violates(g, sub, max_arcs) for sub in connected_subsets(g, cand, containing=e)):
            basis = cand
    return basis


def gain_rank(g: GainGraph, s=None, max_arcs: int = MAX_SUBSET_ARCS) -> int:
    return popcount(gain_basis(g, s, max_arcs))


def is_c_balanced(g: GainGraph, s, max_arcs: int = MAX_SUBSET_ARCS) -> bool:
    """Every circuit of the rotation-part frame matroid inside ``s`` is in the class C.

    Those circuits are the cycles whose gain is a translation and the bicyclic
    subgraphs none of whose cycles has a translation gain.  C holds the
    balanced cycles and the Dutch bicyclic subgraphs.
    """
    st = g.structure(as_mask(s), max_arcs)
    translation_cycles = set()
    for c in st.cycles:
        if c.translation:
            if not c.balanced:
                return False
            translation_cycles.add(c.mask)
    for b in st.bicyclics:
        is_circuit = not any(cm in translation_cycles for cm in b.cycles)
        if is_circuit and not b.dutch:
            return False
    return True


def f_value(g: GainGraph, s, max_arcs: int = MAX_SUBSET_ARCS) -> int:
    """2 r_M(F) - 1 if F is C-balanced, else 2 r_M(F); r_M is the rotation-part frame rank."""
    s = as_mask(s)
    r = frame_rank(g, s, use_pi2=True)
    return 2 * r - 1 if is_c_balanced(g, s, max_arcs) else 2 * r


def proposition_matroid(g: GainGraph, validate: bool = True, max_arcs: int = MAX_SUBSET_ARCS) -> EdmondsMatroid:
    """The Edmonds matroid M(f) over the arcs of ``g``."""
    _check_cap(g.full, max_arcs)
    f = SetFunction(g.m, lambda s: f_value(g, s, max_arcs))
    return EdmondsMatroid(f, validate=validate)


def _proposition_witness(g: GainGraph, mat: EdmondsMatroid) -> tuple[int, ...] | None:
    best = None
    for sub in subsets(g.full):
        if sub and popcount(sub) > mat.f(sub):
            if best is None or _witness_key(sub) < _witness_key(best):
                best = sub
    return tuple(indices(best)) if best is not None else None


def target_rank(g: GainGraph) -> int:
    """2n - alpha of the complete gain graph over the generated group, floored at 0."""
    return max(0, 2 * g.n - group_alpha(g))


def decide(g: GainGraph, max_arcs: int = MAX_SUBSET_ARCS) -> RigidityReport:
    """Minimal generic infinitesimal rigidity verdict for a gain graph."""
    _check_cap(g.full, max_arcs)
    flags = [] if g.exact else ["inexact"]
    target = target_rank(g)
    if g.n == 1:
        flags.append("n=1: count form not covered; rank from the Edmonds matroid of f")
        mat = proposition_matroid(g, max_arcs=max_arcs)
        rank = mat.rank(g.full)
        witness = _proposition_witness(g, mat) if rank < g.m else None
        return _assemble(g.n, g.m, rank, target, witness, "proposition-f", g.exact, flags)
    rank = gain_rank(g, max_arcs=max_arcs)
    witness = None
    if rank < g.m:
        _, witness = gain_independent(g, max_arcs=max_arcs)
    return _assemble(g.n, g.m, rank, target, witness, "alpha-count", g.exact, flags)


# --- rotation groups --------------------------------------------------------


def _require_rotations(g: GainGraph) -> None:
    for i, a in enumerate(g.arcs):
        t = a.gain.trans
        if (g.exact and not t.is_zero()) or (not g.exact and abs(t) > 1e-9):
            raise InputError(f"arc {i} has a nonzero translation; the rotation-group count does not apply")


def cyclic_bound(g: GainGraph, s) -> int:
    """-1 + sum over components F of 2|V(F)| - 2 beta(F), i.e. 2 r - 1 for the frame rank r."""
    return 2 * frame_rank(g, as_mask(s), use_pi2=False) - 1


def cyclic_decide(g: GainGraph, max_arcs: int = MAX_SUBSET_ARCS) -> RigidityReport:
    """Verdict for pure-rotation gain graphs via the rotation-group counts."""
    _require_rotations(g)
    _check_cap(g.full, max_arcs)
    nontrivial = any(not a.gain.is_identity() for a in g.arcs)
    if g.n >= 2:
        target = 2 * g.n - (1 if nontrivial else 3)
    else:
        target = 1 if nontrivial else 0
    basis = 0
    for e in range(g.m):
        cand = basis | 1 << e
        if all(popcount(sub) <= cyclic_bound(g, sub) for sub in connected_subsets(g, cand, containing=e)):
            basis = cand
    rank = popcount(basis)
    witness = None
    if rank < g.m:
        best = None
        for sub in connected_subsets(g, g.full):
            if popcount(sub) > cyclic_bound(g, sub) and (best is None or _witness_key(sub) < _witness_key(best)):
                best = sub
        witness = tuple(indices(best))
    flags = [] if g.exact else ["inexact"]
    return _assemble(g.n, g.m, rank, target, witness, "rotation-count", g.exact, flags)
