"""Brute-force reference implementations used only by the tests.

These deliberately avoid the library's enumeration and ear-decomposition code:
subsets are filtered from all 2^m masks, balance and Dutchness come from
spanning-tree potentials, and independence is checked over every subset.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from symrigid.gaingraph import Arc, GainGraph
from symrigid.isometry import Isometry


def bits(mask):
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def verts_of(g, mask):
    vs = set()
    for i in bits(mask):
        vs.add(g.arcs[i].source)
        vs.add(g.arcs[i].target)
    return vs


def is_connected(g, mask):
    if not mask:
        return False
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    for i in bits(mask):
        a = g.arcs[i]
        parent[find(a.source)] = find(a.target)
    return len({find(v) for v in verts_of(g, mask)}) == 1


def degrees(g, mask):
    d = {}
    for i in bits(mask):
        a = g.arcs[i]
        d[a.source] = d.get(a.source, 0) + 1
        d[a.target] = d.get(a.target, 0) + 1
    return d


def connected_masks(g, s=None):
    s = g.full if s is None else s
    return [t for t in range(1, 1 << g.m) if t & ~s == 0 and is_connected(g, t)]


def cycle_masks(g, s=None):
    out = []
    for t in connected_masks(g, s):
        if len(bits(t)) == len(verts_of(g, t)) and all(d == 2 for d in degrees(g, t).values()):
            out.append(t)
    return out


def bicyclic_masks(g, s=None):
    out = []
    for t in connected_masks(g, s):
        if len(bits(t)) == len(verts_of(g, t)) + 1 and min(degrees(g, t).values()) >= 2:
            out.append(t)
    return out


def fundamental_gains(g, mask):
    """Gains of the fundamental closed walks of a connected arc set, from a BFS tree."""
    arcs = bits(mask)
    root = g.arcs[arcs[0]].source
    pot = {root: g.identity()}
    tree = set()
    changed = True
    while changed:
        changed = False
        for i in arcs:
            a = g.arcs[i]
            if a.source in pot and a.target not in pot:
                pot[a.target] = pot[a.source] * a.gain
                tree.add(i)
                changed = True
            elif a.target in pot and a.source not in pot:
                pot[a.source] = pot[a.target] * a.gain.inverse()
                tree.add(i)
                changed = True
    return [pot[g.arcs[i].source] * g.arcs[i].gain * pot[g.arcs[i].target].inverse() for i in arcs if i not in tree]


def alpha_brute(g, mask):
    cyc = [fundamental_gains(g, c)[0] for c in cycle_masks(g, mask)]
    if all(x.is_identity() for x in cyc):
        return 3
    if all(x.is_translation() for x in cyc):
        return 2
    for b in bicyclic_masks(g, mask):
        x, y = fundamental_gains(g, b)
        if not x.commutes(y):
            return 0
    return 1


def independent_brute(g, mask):
    """Count condition over every nonempty subset, connected or not."""
    for t in range(1, 1 << g.m):
        if t & ~mask:
            continue
        comps_ok = True
        # disconnected sets: sum the bound over components
        if len(bits(t)) > sum(2 * len(verts_of(g, c)) - alpha_brute(g, c) for c in components(g, t)):
            comps_ok = False
        if not comps_ok:
            return False
    return True


def components(g, mask):
    left = mask
    out = []
    while left:
        i = bits(left)[0]
        comp = 1 << i
        grown = True
        while grown:
            grown = False
            vs = verts_of(g, comp)
            for j in bits(left & ~comp):
                a = g.arcs[j]
                if a.source in vs or a.target in vs:
                    comp |= 1 << j
                    grown = True
        out.append(comp)
        left &= ~comp
    return out


def rank_brute(indep, m, s):
    best = 0
    for t in range(1 << m):
        if t & ~s == 0 and bin(t).count("1") > best and indep(t):
            best = bin(t).count("1")
    return best


def laman_count_by_vertices(n, edges):
    """(2,3)-sparsity checked on induced subgraphs, which are the tightest subsets."""
    for r in range(2, n + 1):
        for vs in combinations(range(n), r):
            vs = set(vs)
            if sum(1 for u, v in edges if u in vs and v in vs) > 2 * r - 3:
                return False
    return True


def chains_brute(flats_list):
    """All nonempty chains of the given nonempty flats (strict inclusion)."""
    out = []
    fl = sorted(flats_list)

    def ext(chain):
        out.append(tuple(chain))
        for f in fl:
            if f != chain[-1] and chain[-1] & ~f == 0:
                ext(chain + [f])

    for f in fl:
        ext([f])
    return out


# --- random gain graphs -----------------------------------------------------

SMALL_RATIONALS = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(2), Fraction(-3, 2)]


def random_gain_graph(rng: random.Random, order: int, n_max: int = 4, m_max: int = 8,
                      translations: bool = True, n_min: int = 1) -> GainGraph:
    n = rng.randint(n_min, n_max)
    m = rng.randint(1, m_max)
    arcs = []
    while len(arcs) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        k = rng.randrange(order)
        if translations and rng.random() < 0.6:
            t = (rng.choice(SMALL_RATIONALS), rng.choice(SMALL_RATIONALS))
        else:
            t = (0, 0)
        gain = Isometry(k, t, order)
        if u == v and gain.is_identity():
            continue
        arcs.append(Arc(u, v, gain))
    return GainGraph(n, arcs, rotation_order=order)


def random_mixed_graph(rng: random.Random, **kw) -> GainGraph:
    return random_gain_graph(rng, rng.choice([1, 2, 4]), translations=True, **kw)


def random_rotation_graph(rng: random.Random, **kw) -> GainGraph:
    return random_gain_graph(rng, rng.choice([2, 3, 4]), translations=False, **kw)
