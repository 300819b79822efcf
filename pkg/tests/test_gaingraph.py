from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import (
    alpha_brute,
    bicyclic_masks,
    connected_masks,
    cycle_masks,
    random_mixed_graph,
    random_rotation_graph,
)
from symrigid.errors import InputError, LimitExceeded
from symrigid.gaingraph import (
    Arc,
    GainGraph,
    alpha,
    bicyclic_kind,
    bicyclic_subgraphs,
    connected_subsets,
    covering_pair,
    enumerate_cycles,
    frame_rank,
    group_alpha,
    is_balanced,
    is_dutch,
    walk_from,
    walk_gain,
)
from symrigid.isometry import Isometry

M = 4
I = Isometry.identity(M)
A = Isometry.rotation(1, M)
E1, E2 = Isometry(0, (1, 0), M), Isometry(0, (0, 1), M)
E1A, E2A = Isometry(1, (1, 0), M), Isometry(1, (0, 1), M)


def gg(n, arcs, m=M):
    return GainGraph(n, [Arc(u, v, g) for u, v, g in arcs], rotation_order=m)


def graphs(seed_range=80):
    return st.integers(0, seed_range).map(
        lambda s: (random_mixed_graph if s % 2 else random_rotation_graph)(random.Random(s))
    )


def test_construction_rejects_bad_input():
    with pytest.raises(InputError):
        gg(1, [(0, 0, I)])
    with pytest.raises(InputError):
        gg(2, [(0, 2, I)])
    with pytest.raises(InputError):
        GainGraph(1, [(0, 0, Isometry.rotation(1, 2))], rotation_order=4)
    with pytest.raises(InputError):
        GainGraph(0, [])


def test_walk_gain_examples():
    g = gg(2, [(0, 1, E1A), (0, 0, Isometry(1, (1, 1), M)), (0, 0, Isometry(1, (1, -1), M))])
    assert walk_gain(g, walk_from(g, 0, [(0, True)])) == E1A
    assert walk_gain(g, walk_from(g, 0, [(0, True), (0, False)])).is_identity()
    w = walk_from(g, 0, [(1, True), (2, True)])
    assert walk_gain(g, w) == Isometry(1, (1, 1), M) * Isometry(1, (1, -1), M)
    with pytest.raises(InputError):
        walk_from(g, 1, [(1, True)])


def test_balance_examples():
    tri = gg(3, [(0, 1, I), (1, 2, I), (0, 2, I)])
    (c,) = enumerate_cycles(tri)
    assert c.balanced and is_balanced(tri, c.walk) and is_balanced(tri, c.walk.reversed())
    loop = gg(1, [(0, 0, E1)])
    (c,) = enumerate_cycles(loop)
    assert not c.balanced and c.translation


def test_cycle_enumeration_examples():
    assert enumerate_cycles(gg(3, [(0, 1, I), (1, 2, A)])) == []
    assert len(enumerate_cycles(gg(1, [(0, 0, A)]))) == 1
    assert [c.mask for c in enumerate_cycles(gg(2, [(0, 1, I), (0, 1, A)]))] == [0b11]


def test_bicyclic_kinds():
    tight = gg(1, [(0, 0, E1), (0, 0, E2)])
    assert bicyclic_subgraphs(tight) == [0b11]
    assert bicyclic_kind(tight, 0b11) == "tight"
    w1, w2 = covering_pair(tight, 0b11)
    assert {w1.steps, w2.steps} == {((0, True),), ((1, True),)}
    loose = gg(3, [(0, 0, A), (0, 1, I), (1, 2, I), (2, 2, A)])
    assert bicyclic_kind(loose, 0b1111) == "loose"
    theta = gg(2, [(0, 1, I), (0, 1, A), (0, 1, E1)])
    assert bicyclic_kind(theta, 0b111) == "theta"
    assert bicyclic_kind(theta, 0b011) is None


def test_covering_pairs_visit_counts():
    for g, mask in [
        (gg(3, [(0, 0, A), (0, 1, I), (1, 2, E1), (2, 2, E1A)]), 0b1111),
        (gg(4, [(0, 1, I), (1, 3, A), (0, 2, E1), (2, 3, I), (0, 3, E2A)]), 0b11111),
    ]:
        w1, w2 = covering_pair(g, mask)
        assert w1.closed and w2.closed and w1.start == w2.start
        counts = {}
        for w in (w1, w2):
            for e, n in w.arc_counts().items():
                counts[e] = counts.get(e, 0) + n
        assert set(counts) == {i for i in range(g.m) if mask >> i & 1}
        assert all(1 <= n <= 2 for n in counts.values())


def test_dutch_examples():
    assert is_dutch(gg(1, [(0, 0, E1), (0, 0, E2)]), 0b11)
    assert not is_dutch(gg(1, [(0, 0, E1A), (0, 0, E2A)]), 0b11)
    assert is_dutch(gg(2, [(0, 1, I), (0, 1, I), (0, 1, I)]), 0b111)


def test_alpha_examples():
    assert alpha(gg(3, [(0, 1, I), (1, 2, I), (0, 2, I)]), 0b111) == 3
    assert alpha(gg(1, [(0, 0, E1), (0, 0, E2)]), 0b11) == 2
    assert alpha(gg(1, [(0, 0, A)]), 0b1) == 1
    assert alpha(gg(1, [(0, 0, E1A), (0, 0, E2A)]), 0b11) == 0


def test_group_alpha_examples():
    assert group_alpha(gg(2, [(0, 1, I)])) == 3
    assert group_alpha(gg(1, [(0, 0, E1), (0, 0, E2)])) == 2
    assert group_alpha(gg(3, [(0, 0, E1), (1, 1, E2), (2, 2, A)])) == 0
    assert group_alpha(gg(1, [(0, 0, A), (0, 0, A * A)])) == 1


def test_frame_rank_examples():
    assert frame_rank(gg(4, [(0, 1, A), (1, 2, E1), (1, 3, I)]), 0b111) == 3
    Z, I2 = Isometry.rotation(1, 2), Isometry.identity(2)
    k2 = gg(2, [(0, 0, Z), (1, 1, Z), (0, 1, I2), (0, 1, Z)], m=2)
    assert frame_rank(k2, k2.full) == 2
    tc = gg(1, [(0, 0, E1), (0, 0, E2)])
    assert frame_rank(tc, 0b11, use_pi2=True) == 0
    assert frame_rank(tc, 0b11) == 1


def test_structure_cap():
    g = gg(1, [(0, 0, A)] * 3)
    with pytest.raises(LimitExceeded):
        g.structure(g.full, max_arcs=2)


@given(graphs())
def test_connected_subsets_match_brute_force(g):
    got = list(connected_subsets(g))
    assert len(got) == len(set(got))
    assert set(got) == set(connected_masks(g))
    for e in range(g.m):
        assert set(connected_subsets(g, containing=e)) == {t for t in got if t >> e & 1}


@given(graphs())
def test_cycles_and_bicyclics_match_brute_force(g):
    assert sorted(c.mask for c in enumerate_cycles(g)) == sorted(cycle_masks(g))
    assert sorted(bicyclic_subgraphs(g)) == sorted(bicyclic_masks(g))


@given(graphs())
def test_alpha_matches_tree_potential_oracle(g):
    for s in connected_masks(g):
        assert alpha(g, s) == alpha_brute(g, s)


@given(graphs())
def test_alpha_monotone(g):
    masks = connected_masks(g)
    for s in masks:
        for t in masks:
            if s & ~t == 0:
                assert alpha(g, t) <= alpha(g, s)


@given(graphs(), st.integers(0, 7))
def test_dutch_and_balance_invariant_under_arc_reversal(g, i):
    i %= g.m
    h = g.with_arc_reversed(i)
    assert sorted((c.mask, c.balanced, c.translation) for c in enumerate_cycles(g)) == sorted(
        (c.mask, c.balanced, c.translation) for c in enumerate_cycles(h)
    )
    for b in bicyclic_subgraphs(g):
        assert is_dutch(g, b) == is_dutch(h, b)
    for s in connected_masks(g):
        assert alpha(g, s) == alpha(h, s)


@given(graphs(), st.randoms(use_true_random=False))
def test_dutch_invariant_under_arc_relabelling(g, rnd):
    perm = list(range(g.m))
    rnd.shuffle(perm)
    h = GainGraph(g.n, [g.arcs[perm[k]] for k in range(g.m)], rotation_order=g.rotation_order)

    def relabel(mask):
        return sum(1 << k for k in range(g.m) if mask >> perm[k] & 1)

    for b in bicyclic_subgraphs(g):
        assert is_dutch(g, b) == is_dutch(h, relabel(b))
