from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import chains_brute, random_mixed_graph, rank_brute
from symrigid import sparsity as sp
from symrigid.errors import InputError, LimitExceeded
from symrigid.gaingraph import frame_rank
from symrigid.lab import matroid_family
from symrigid.matroids import (
    EdmondsMatroid,
    GraphicMatroid,
    LiftMatroid,
    SetFunction,
    UniformMatroid,
    UnionMatroid,
    closure,
    edmonds_independent,
    enumerate_flags,
    flats,
    graphic_rank,
    h_graph,
    independent_by_flags,
    independent_sum_minus_one,
    is_forest,
    is_matroid_rank,
    lift_rank,
    matroid_rank,
    rank_function,
    union_independent,
)

K3 = [(0, 1), (1, 2), (0, 2)]
K4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_graphic_rank_examples():
    assert graphic_rank(3, K3, 0b111) == 2
    assert graphic_rank(3, K3, 0) == 0
    assert graphic_rank(4, [(0, 1), (2, 3)], 0b11) == 2
    assert GraphicMatroid(4, K4).rank(0b111111) == 3


def test_edmonds_examples():
    k3 = GraphicMatroid(3, K3)
    f = rank_function(k3) + rank_function(k3)
    f = f.shift(-1)
    assert edmonds_independent(f, 0b111)
    zero = SetFunction(3, lambda s: 0)
    assert not edmonds_independent(zero, 0b001)
    assert edmonds_independent(zero, 0)
    assert EdmondsMatroid(f).rank(0b111) == 3
    assert EdmondsMatroid(zero).rank(0b111) == 0


def test_edmonds_validation_rejects_non_submodular():
    bad = SetFunction(2, lambda s: 2 if s == 3 else 0)
    with pytest.raises(InputError):
        EdmondsMatroid(bad)
    dec = SetFunction(2, lambda s: 1 if s == 1 else 0)
    with pytest.raises(InputError):
        dec.validate()


def test_union_examples():
    k4 = GraphicMatroid(4, K4)
    assert union_independent(k4, k4, 0b111111)
    zero = UniformMatroid(0, 6)
    for s in range(64):
        assert union_independent(k4, zero, s) == k4.independent(s)
    assert union_independent(k4, k4, 0)
    with pytest.raises(LimitExceeded):
        union_independent(UniformMatroid(1, 20), UniformMatroid(1, 20), (1 << 20) - 1, limit=16)


def test_closure_examples():
    k3 = GraphicMatroid(3, K3)
    assert closure(k3, 0b111) == 0b111
    assert closure(k3, 0b001) == 0b001
    assert closure(k3, 0b011) == 0b111


def test_flags_of_k3():
    k3 = GraphicMatroid(3, K3)
    got = list(enumerate_flags(k3))
    assert len(got) == len(set(got)) == 7
    assert sorted(got) == sorted(chains_brute(flats(k3)))
    assert list(enumerate_flags(UniformMatroid(1, 1))) == [(1,)]
    assert all(len(f) >= 1 for f in got)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_flags_match_brute_force_chains(k):
    _, family = matroid_family(k)
    for m in family:
        assert sorted(enumerate_flags(m)) == sorted(chains_brute(flats(m)))


def test_h_graph_examples():
    assert h_graph([0b11], [0b11], 0) == []
    assert h_graph([0b11], [0b11], 0b11) == [(0, 0), (0, 0)]
    assert not is_forest(1, 1, h_graph([0b11], [0b11], 0b11))
    assert h_graph([0b01], [0b11], 0b10) is None


def test_sum_minus_one_examples():
    k3 = GraphicMatroid(3, K3)
    assert independent_sum_minus_one(k3, k3, 0b111) == (True, True)
    assert independent_sum_minus_one(k3, k3, 0) == (True, True)
    u = UniformMatroid(1, 2)
    assert independent_sum_minus_one(u, u, 0b11) == (False, False)
    with pytest.raises(InputError):
        independent_by_flags(UniformMatroid(0, 2), u, 0b1)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_maximal_flags_decide_like_all_flags(k):
    reps, family = matroid_family(k, loopless=True)
    for m in reps:
        for n in family:
            for s in range(1 << k):
                assert independent_by_flags(m, n, s, maximal_only=True) == independent_by_flags(
                    m, n, s, maximal_only=False
                )


def test_lift_rank_examples():
    k3 = GraphicMatroid(3, K3)
    assert all(lift_rank(k3, lambda s: True, s) == k3.rank(s) for s in range(8))
    assert all(lift_rank(k3, lambda s: s == 0, s) == k3.rank(s) + (s != 0) for s in range(8))


@given(st.integers(0, 60))
def test_frame_lift_is_a_matroid(seed):
    g = random_mixed_graph(random.Random(seed), m_max=6)
    pi2 = frame_rank

    class Frame:
        size = g.m

        def rank(self, s):
            return pi2(g, s, use_pi2=True)

    lift = LiftMatroid(Frame(), lambda s: sp.is_c_balanced(g, s))
    assert is_matroid_rank(g.m, Frame().rank)
    assert is_matroid_rank(g.m, lift.rank)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_union_rank_is_matroid(k):
    reps, family = matroid_family(k)
    for m1 in reps[:3]:
        for m2 in family[:6]:
            u = UnionMatroid(m1, m2)
            assert is_matroid_rank(k, u.rank)
            f = rank_function(m1) + rank_function(m2)
            for s in range(1 << k):
                assert u.rank(s) == rank_brute(lambda t: edmonds_independent(f, t), k, s)


def test_matroid_rank_greedy_matches_brute():
    m = UniformMatroid(2, 5)
    for s in range(32):
        assert matroid_rank(m.independent, 5, s) == rank_brute(m.independent, 5, s)
