import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from grasslab import qalg
from grasslab.errors import BudgetExceeded, DomainError
from grasslab.gflinalg import dim_intersection, standard, subspace_sum
from grasslab.grassmann import (
    all_vertices,
    brute_intersection_numbers,
    choose_pair,
    distance,
    local_neighbors,
    make_context,
    random_vertex,
)

import oracles


def test_context_points(ctx273):
    assert ctx273.num_points == 127
    assert len(set(ctx273.points)) == 127
    ctx = make_context(3, 7, 3)
    assert ctx.num_points == 1093


def test_context_rejects_bad_params():
    with pytest.raises(DomainError):
        make_context(2, 6, 3)


def test_distance_fixture(f1):
    ctx, x, y = f1
    assert distance(ctx, x, x) == 0
    assert distance(ctx, x, y) == 2
    assert x == standard(2, 7, [0, 1, 2]) and y == standard(2, 7, [0, 3, 4])
    with pytest.raises(DomainError):
        distance(ctx, x, standard(2, 7, [0, 1]))


@given(st.integers(0, 10**6))
def test_distance_properties(seed):
    ctx = make_context(2, 9, 4)
    rng = random.Random(seed)
    a, b, c = (random_vertex(ctx, rng) for _ in range(3))
    dab, dbc, dac = distance(ctx, a, b), distance(ctx, b, c), distance(ctx, a, c)
    assert dac <= dab + dbc
    assert subspace_sum(a, b).dim == ctx.k + dab


@pytest.mark.parametrize("q,n,k", [(2, 7, 3), (3, 7, 3), (2, 9, 4), (4, 7, 3)])
def test_local_graph_size(q, n, k):
    ctx = make_context(q, n, k)
    x, _ = choose_pair(ctx, 2, seed=5)
    nb = local_neighbors(ctx, x)
    assert len(nb) == q * qalg.bracket(k, q) * qalg.bracket(n - k, q)
    assert len(set(nb)) == len(nb)
    assert all(distance(ctx, x, z) == 1 for z in nb)


def test_local_graph_sizes_literal():
    assert len(local_neighbors(make_context(2, 7, 3), standard(2, 7, [0, 1, 2]))) == 210
    assert len(local_neighbors(make_context(3, 7, 3), standard(3, 7, [0, 1, 2]))) == 1560


def test_local_graph_matches_global_scan(ctx273):
    x, _ = choose_pair(ctx273, 2, seed=9)
    scan = [z for z in all_vertices(ctx273) if dim_intersection(x, z) == 2]
    assert sorted(scan, key=lambda s: s.sort_key()) == local_neighbors(ctx273, x)


def test_intersection_numbers_fixture(f1):
    ctx, x, y = f1
    assert brute_intersection_numbers(ctx, x, y) == (96, 9, 105)


@pytest.mark.parametrize("q,n,k,i", [(2, 7, 3, 2), (2, 9, 4, 3), (2, 9, 4, 2), (3, 7, 3, 2)])
def test_intersection_numbers_distance_regular(q, n, k, i):
    ctx = make_context(q, n, k)
    want = qalg.intersection_numbers(qalg.Params(q, n, k, i))
    for seed in (0, 3):
        x, y = choose_pair(ctx, i, seed)
        assert brute_intersection_numbers(ctx, x, y) == want


def test_c1_is_one(ctx273):
    x = standard(2, 7, [0, 1, 2])
    y = standard(2, 7, [0, 1, 3])
    assert brute_intersection_numbers(ctx273, x, y)[1] == 1


def test_choose_pair():
    ctx = make_context(2, 9, 4)
    x, y = choose_pair(ctx, 3, 0)
    assert x == standard(2, 9, [0, 1, 2, 3]) and y == standard(2, 9, [0, 4, 5, 6])
    for seed in range(1, 6):
        x, y = choose_pair(ctx, 3, seed)
        assert distance(ctx, x, y) == 3
    assert choose_pair(ctx, 2, 17) == choose_pair(ctx, 2, 17)
    for bad in (0, 1, 4):
        with pytest.raises(DomainError):
            choose_pair(ctx, bad, 0)


def test_vertex_budget(ctx273):
    assert len(all_vertices(ctx273)) == 11811
    with pytest.raises(BudgetExceeded):
        all_vertices(make_context(3, 7, 3))


def test_intersection_dim_matches_sets(f1):
    ctx, x, y = f1
    sx, sy = oracles.subspace_set(x), oracles.subspace_set(y)
    assert oracles.set_dim(sx & sy, 2) == ctx.k - distance(ctx, x, y)
