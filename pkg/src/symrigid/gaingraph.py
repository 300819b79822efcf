"""Gain graphs over R^2 x| SO(2) and their gain-dependent combinatorics.

Arc subsets are plain ``int`` bitmasks throughout (bit i set means arc i is in
the set).  Helpers accept any iterable of arc indices as well.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import InputError, LimitExceeded
from .isometry import Isometry

MAX_SUBSET_ARCS = 20


def as_mask(s) -> int:
    if isinstance(s, int):
        return s
    mask = 0
    for i in s:
        mask |= 1 << i
    return mask


def indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Arc:
    source: int
    target: int
    gain: Isometry

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


@dataclass(frozen=True)
class Walk:
    """A walk given by its start vertex and (arc index, forward?) steps."""

    start: int
    steps: tuple[tuple[int, bool], ...]
    end: int

    @property
    def closed(self) -> bool:
        return self.start == self.end

    def reversed(self) -> Walk:
        return Walk(self.end, tuple((e, not fwd) for e, fwd in reversed(self.steps)), self.start)

    def then(self, other: Walk) -> Walk:
        if self.end != other.start:
            raise InputError("walks do not concatenate")
        return Walk(self.start, self.steps + other.steps, other.end)

    def arc_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for e, _ in self.steps:
            counts[e] = counts.get(e, 0) + 1
        return counts

    @property
    def mask(self) -> int:
        return as_mask(e for e, _ in self.steps)


@dataclass(frozen=True)
class Cycle:
    mask: int
    walk: Walk
    gain: Isometry
    balanced: bool
    translation: bool  # rotation part of the gain is trivial


@dataclass(frozen=True)
class Bicyclic:
    mask: int
    kind: str  # "tight", "loose" or "theta"
    pair: tuple[Walk, Walk]
    dutch: bool
    cycles: tuple[int, ...] = field(default=())  # masks of the cycles it contains


class GainGraph:
    """A directed multigraph whose arcs carry isometry gains.

    Parameters
    ----------
    n : int
        Number of vertices, labelled 0..n-1.
    arcs : sequence of (source, target, Isometry)
    rotation_order : int or None
        Declared rotation order m for exact gains; ``None`` for numeric mode.
    names : optional vertex names, used for I/O only.
    positions : optional mapping vertex -> (x, y), used for covering expansion.
    """

    def __init__(
        self,
        n: int,
        arcs: Iterable,
        rotation_order: int | None = 1,
        names: Sequence[str] | None = None,
        positions: dict | None = None,
    ):
        if n < 1:
            raise InputError("a gain graph needs at least one vertex")
        self.n = n
        self.rotation_order = rotation_order
        built = []
        for a in arcs:
            arc = a if isinstance(a, Arc) else Arc(int(a[0]), int(a[1]), a[2])
            if not (0 <= arc.source < n and 0 <= arc.target < n):
                raise InputError(f"arc {arc.source}->{arc.target} has an endpoint outside 0..{n - 1}")
            g = arc.gain
            if rotation_order is None:
                if g.exact:
                    raise InputError("numeric graph given an exact gain")
            elif not g.exact or g.order != rotation_order:
                raise InputError(
                    f"gain {g!r} does not match the declared rotation order {rotation_order}"
                )
            if arc.is_loop and g.is_identity():
                raise InputError(f"loop at vertex {arc.source} carries the identity gain")
            built.append(arc)
        self.arcs: tuple[Arc, ...] = tuple(built)
        self.names = tuple(names) if names is not None else tuple(f"v{i}" for i in range(n))
        if len(self.names) != n:
            raise InputError("vertex name list has the wrong length")
        self.positions = dict(positions) if positions else None
        self._adj = None
        self._structures: dict[int, _Structure] = {}

    @property
    def exact(self) -> bool:
        return self.rotation_order is not None

    @property
    def m(self) -> int:
        return len(self.arcs)

    @property
    def full(self) -> int:
        return (1 << len(self.arcs)) - 1

    def identity(self) -> Isometry:
        return Isometry.identity(self.rotation_order)

    def __repr__(self):
        return f"GainGraph(n={self.n}, arcs={len(self.arcs)}, rotation_order={self.rotation_order})"

    # basic structure

    def arc_adjacency(self) -> list[int]:
        """For each arc, the mask of other arcs sharing an endpoint with it."""
        if self._adj is None:
            at_vertex = [0] * self.n
            for i, a in enumerate(self.arcs):
                at_vertex[a.source] |= 1 << i
                at_vertex[a.target] |= 1 << i
            self._adj = [
                (at_vertex[a.source] | at_vertex[a.target]) & ~(1 << i) for i, a in enumerate(self.arcs)
            ]
        return self._adj

    def vertex_mask(self, s) -> int:
        s = as_mask(s)
        vm = 0
        for i in indices(s):
            a = self.arcs[i]
            vm |= (1 << a.source) | (1 << a.target)
        return vm

    def vertex_count(self, s) -> int:
        return popcount(self.vertex_mask(s))

    def degrees(self, s) -> dict[int, int]:
        deg: dict[int, int] = {}
        for i in indices(as_mask(s)):
            a = self.arcs[i]
            deg[a.source] = deg.get(a.source, 0) + 1
            deg[a.target] = deg.get(a.target, 0) + 1
        return deg

    def components(self, s) -> list[int]:
        """Partition of the arc set ``s`` by connected components."""
        s = as_mask(s)
        adj = self.arc_adjacency()
        out = []
        rest = s
        while rest:
            low = rest & -rest
            comp = low
            frontier = low
            while frontier:
                b = frontier & -frontier
                frontier ^= b
                nb = adj[b.bit_length() - 1] & rest & ~comp
                comp |= nb
                frontier |= nb
            out.append(comp)
            rest &= ~comp
        return out

    def is_connected(self, s) -> bool:
        s = as_mask(s)
        return s != 0 and len(self.components(s)) == 1

    def with_arc_reversed(self, i: int) -> GainGraph:
        """Same gain graph with arc ``i`` reversed and its gain inverted."""
        arcs = list(self.arcs)
        a = arcs[i]
        arcs[i] = Arc(a.target, a.source, a.gain.inverse())
        return GainGraph(self.n, arcs, self.rotation_order, self.names, self.positions)

    # cached cycle / bicyclic structure

    def structure(self, s=None, max_arcs: int = MAX_SUBSET_ARCS) -> _Structure:
        """Cycles and bicyclic subgraphs inside ``s`` (default: all arcs)."""
        s = self.full if s is None else as_mask(s)
        if self.m <= max_arcs:
            base = self._structures.get(self.full)
            if base is None:
                base = _Structure.build(self, self.full)
                self._structures[self.full] = base
            return base if s == self.full else base.restrict(s)
        if popcount(s) > max_arcs:
            raise LimitExceeded(
                f"arc subset of size {popcount(s)} exceeds the enumeration cap of {max_arcs} arcs"
            )
        st = self._structures.get(s)
        if st is None:
            st = _Structure.build(self, s)
            self._structures[s] = st
        return st


def connected_subsets(
    g: GainGraph,
    s=None,
    containing: int | None = None,
    prune=None,
) -> Iterator[int]:
    """Yield every nonempty connected arc subset of ``s`` exactly once.

    Subsets are grown arc by arc while staying connected.  With ``containing``
    only subsets that contain that arc are produced.  ``prune(mask)`` may
    return True to cut off all supersets of ``mask`` grown from it; it must be
    monotone (true for a set implies true for its connected supersets).
    """
    s = g.full if s is None else as_mask(s)
    adj = g.arc_adjacency()

    def grow(cur: int, ext: int, forb: int):
        yield cur
        while ext:
            b = ext & -ext
            ext ^= b
            forb |= b
            nxt = cur | b
            if prune is not None and prune(nxt):
                continue
            new_ext = (ext | adj[b.bit_length() - 1]) & s & ~forb & ~nxt
            yield from grow(nxt, new_ext, forb)

    roots = [containing] if containing is not None else indices(s)
    for i in roots:
        if not (s >> i) & 1:
            continue
        b = 1 << i
        if prune is not None and prune(b):
            continue
        forb = b if containing is not None else (b | (b - 1))
        ext = adj[i] & s & ~forb
        yield from grow(b, ext, forb)


# walks and gains


def walk_from(g: GainGraph, start: int, steps: Sequence[tuple[int, bool]]) -> Walk:
    """Validate a step sequence and return the Walk."""
    v = start
    for e, fwd in steps:
        if not 0 <= e < g.m:
            raise InputError(f"walk uses unknown arc {e}")
        a = g.arcs[e]
        tail, head = (a.source, a.target) if fwd else (a.target, a.source)
        if tail != v:
            raise InputError(f"walk step over arc {e} does not start at vertex {v}")
        v = head
    return Walk(start, tuple((int(e), bool(f)) for e, f in steps), v)


def walk_gain(g: GainGraph, w: Walk) -> Isometry:
    """Ordered product of arc gains, inverting arcs traversed backwards."""
    walk_from(g, w.start, w.steps)
    result = g.identity()
    for e, fwd in w.steps:
        gain = g.arcs[e].gain
        result = result * (gain if fwd else gain.inverse())
    return result


def is_balanced(g: GainGraph, cycle: Walk) -> bool:
    if not cycle.closed:
        raise InputError("balance is defined for closed walks")
    return walk_gain(g, cycle).is_identity()


def _trace_cycle(g: GainGraph, mask: int) -> Walk:
    arcs = indices(mask)
    e0 = arcs[0]
    a0 = g.arcs[e0]
    start = a0.source
    steps = [(e0, True)]
    used = 1 << e0
    v = a0.target
    while v != start or popcount(used) < len(arcs):
        for e in arcs:
            if used >> e & 1:
                continue
            a = g.arcs[e]
            if a.source == v:
                steps.append((e, True))
                v = a.target
                break
            if a.target == v:
                steps.append((e, False))
                v = a.source
                break
        else:  # pragma: no cover - mask is a cycle by construction
            raise InputError("arc set is not a cycle")
        used |= 1 << steps[-1][0]
    return Walk(start, tuple(steps), start)


def _ears(g: GainGraph, mask: int, deg: dict[int, int]) -> list[Walk]:
    """Maximal paths between branch vertices (degree >= 3) of a bicyclic set."""
    branch = {v for v, d in deg.items() if d >= 3}
    arcs = indices(mask)
    at: dict[int, list[tuple[int, bool]]] = {}
    for e in arcs:
        a = g.arcs[e]
        at.setdefault(a.source, []).append((e, True))
        at.setdefault(a.target, []).append((e, False))
    used = 0
    ears = []
    for b in sorted(branch):
        for e, fwd in at[b]:
            if used >> e & 1:
                continue
            steps = [(e, fwd)]
            used |= 1 << e
            a = g.arcs[e]
            v = a.target if fwd else a.source
            while v not in branch:
                nxt = next((x for x in at[v] if not used >> x[0] & 1), None)
                if nxt is None:  # pragma: no cover
                    raise InputError("arc set is not bicyclic")
                steps.append(nxt)
                used |= 1 << nxt[0]
                a = g.arcs[nxt[0]]
                v = a.target if nxt[1] else a.source
            ears.append(Walk(b, tuple(steps), v))
    return ears


def bicyclic_kind(g: GainGraph, s) -> str | None:
    """'tight', 'loose' or 'theta' when ``s`` is bicyclic, else None."""
    s = as_mask(s)
    if not g.is_connected(s):
        return None
    deg = g.degrees(s)
    if popcount(s) != len(deg) + 1 or min(deg.values()) < 2:
        return None
    branch = [v for v, d in deg.items() if d >= 3]
    if len(branch) == 1:
        return "tight"
    ears = _ears(g, s, deg)
    return "loose" if any(w.closed for w in ears) else "theta"


def covering_pair(g: GainGraph, b) -> tuple[Walk, Walk]:
    """One covering pair of closed walks of a bicyclic arc set.

    Tight handcuffs give the two loops at the shared vertex; loose handcuffs
    give (C1, Q C2 Q^-1) at an end of the connecting path Q; theta graphs give
    (P1 P2^-1, P2 P3^-1) at a branch vertex.
    """
    b = as_mask(b)
    kind = bicyclic_kind(g, b)
    if kind is None:
        raise InputError("arc set is not bicyclic")
    deg = g.degrees(b)
    ears = _ears(g, b, deg)
    if kind == "tight":
        return ears[0], ears[1]
    if kind == "loose":
        cyc = [w for w in ears if w.closed]
        path = next(w for w in ears if not w.closed)
        c1 = next(w for w in cyc if w.start == path.start)
        c2 = next(w for w in cyc if w.start == path.end)
        return c1, path.then(c2).then(path.reversed())
    root = ears[0].start
    ps = [w if w.start == root else w.reversed() for w in ears]
    p1, p2, p3 = ps
    return p1.then(p2.reversed()), p2.then(p3.reversed())


def is_dutch(g: GainGraph, b) -> bool:
    w1, w2 = covering_pair(g, b)
    return walk_gain(g, w1).commutes(walk_gain(g, w2))


class _Structure:
    """Cycles and bicyclic subgraphs of a fixed arc set."""

    def __init__(self, cycles: list[Cycle], bicyclics: list[Bicyclic]):
        self.cycles = cycles
        self.bicyclics = bicyclics

    @classmethod
    def build(cls, g: GainGraph, s: int) -> _Structure:
        cycles: list[Cycle] = []
        bicyclic_masks: list[tuple[int, dict]] = []

        def too_big(mask: int) -> bool:
            deg = g.degrees(mask)
            return popcount(mask) - len(deg) + 1 > 2 or max(deg.values()) > 4

        for mask in connected_subsets(g, s, prune=too_big):
            deg = g.degrees(mask)
            na, nv = popcount(mask), len(deg)
            if na == nv and all(d == 2 for d in deg.values()):
                walk = _trace_cycle(g, mask)
                gain = walk_gain(g, walk)
                cycles.append(Cycle(mask, walk, gain, gain.is_identity(), gain.is_translation()))
            elif na == nv + 1 and min(deg.values()) >= 2:
                bicyclic_masks.append((mask, deg))
        cycles.sort(key=lambda c: (popcount(c.mask), indices(c.mask)))
        bicyclics = []
        for mask, _ in sorted(bicyclic_masks, key=lambda t: (popcount(t[0]), indices(t[0]))):
            kind = bicyclic_kind(g, mask)
            pair = covering_pair(g, mask)
            dutch = walk_gain(g, pair[0]).commutes(walk_gain(g, pair[1]))
            inside = tuple(c.mask for c in cycles if c.mask & ~mask == 0)
            bicyclics.append(Bicyclic(mask, kind, pair, dutch, inside))
        return cls(cycles, bicyclics)

    def restrict(self, s: int) -> _Structure:
        return _Structure(
            [c for c in self.cycles if c.mask & ~s == 0],
            [b for b in self.bicyclics if b.mask & ~s == 0],
        )


def enumerate_cycles(g: GainGraph, s=None, max_arcs: int = MAX_SUBSET_ARCS) -> list[Cycle]:
    """Every cycle (loops and 2-cycles included) inside ``s``, once each."""
    return list(g.structure(s, max_arcs).cycles)


def bicyclic_subgraphs(g: GainGraph, s=None, max_arcs: int = MAX_SUBSET_ARCS) -> list[int]:
    return [b.mask for b in g.structure(s, max_arcs).bicyclics]


def alpha(g: GainGraph, s, max_arcs: int = MAX_SUBSET_ARCS) -> int:
    """The 3/2/1/0 label of an arc set.

    3 if every cycle is balanced; otherwise 2 if every cycle gain is a
    translation; otherwise 1 if every bicyclic subgraph is Dutch; else 0.
    """
    st = g.structure(as_mask(s), max_arcs)
    if all(c.balanced for c in st.cycles):
        return 3
    if all(c.translation for c in st.cycles):
        return 2
    if all(b.dutch for b in st.bicyclics):
        return 1
    return 0


def group_alpha(g: GainGraph) -> int:
    """The label of the complete gain graph over the group the arc gains generate.

    3 for the trivial group, 2 for translation groups, 1 for Abelian groups
    with a nontrivial rotation (rotations about one centre), 0 otherwise.
    """
    gens = [a.gain for a in g.arcs]
    if all(x.is_identity() for x in gens):
        return 3
    if all(x.is_translation() for x in gens):
        return 2
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not gens[i].commutes(gens[j]):
                return 0
    return 1


def _component_balanced(g: GainGraph, comp: int, use_pi2: bool) -> bool:
    # potential method: gain of a tree path from a root to each vertex
    ident = g.identity()
    gain_of = (lambda e: g.arcs[e].gain.rotation_part()) if use_pi2 else (lambda e: g.arcs[e].gain)
    at: dict[int, list[int]] = {}
    for e in indices(comp):
        a = g.arcs[e]
        at.setdefault(a.source, []).append(e)
        if a.target != a.source:
            at.setdefault(a.target, []).append(e)
    root = g.arcs[indices(comp)[0]].source
    pot = {root: ident}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for e in at[u]:
            a = g.arcs[e]
            if a.source == u and a.target not in pot:
                pot[a.target] = pot[u] * gain_of(e)
                queue.append(a.target)
            elif a.target == u and a.source not in pot:
                pot[a.source] = pot[u] * gain_of(e).inverse()
                queue.append(a.source)
    for e in indices(comp):
        a = g.arcs[e]
        if pot[a.source] * gain_of(e) != pot[a.target]:
            return False
    return True


def frame_rank(g: GainGraph, s, use_pi2: bool = False) -> int:
    """Rank in the frame matroid: sum over components of |V(F)| - beta(F).

    beta(F) is 1 when every cycle of the component is balanced, else 0.  With
    ``use_pi2`` balance is judged on the rotation parts of the gains only.
    """
    total = 0
    for comp in g.components(as_mask(s)):
        total += g.vertex_count(comp) - (1 if _component_balanced(g, comp, use_pi2) else 0)
    return total
