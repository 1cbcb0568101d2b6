import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from grasslab import qalg
from grasslab.errors import ClassMismatchError, DomainError
from grasslab.gflinalg import apply_map, dim_intersection, intersect, parse_subspace, span, standard, subspace_sum
from grasslab.grassmann import choose_pair, make_context
from grasslab.orbits import (
    ORDER,
    OrbitClass,
    YPartition,
    _stage_subsets,
    adapted_blocks,
    classify,
    structure_matrix_brute,
    witness_pair,
    witness_single,
    y_partition,
)

import oracles

PARAMS = [(2, 7, 3, 2), (2, 9, 4, 2), (2, 9, 4, 3), (3, 7, 3, 2)]


def vec(*idx, n=7):
    v = [0] * n
    for j in idx:
        v[j] = 1
    return tuple(v)


def sub(*vectors):
    return span(2, 7, *vectors)


@pytest.mark.parametrize("z,cls", [
    (sub(vec(0), vec(1), vec(5)), OrbitClass.A_PLUS),
    (sub(vec(1), vec(2), vec(3)), OrbitClass.A_MINUS),
    (sub(vec(0), vec(1), vec(2, 3)), OrbitClass.A_ZERO),
    (sub(vec(0), vec(1), vec(3)), OrbitClass.C),
    (sub(vec(1), vec(2), vec(5)), OrbitClass.B),
])
def test_classify_fixture(f1, z, cls):
    ctx, x, y = f1
    assert classify(ctx, x, y, z) is cls


def test_classify_rejects_non_neighbor(f1):
    ctx, x, y = f1
    with pytest.raises(DomainError):
        classify(ctx, x, y, y)


def _classify_by_sets(x, y, z, i, k):
    """Class from explicit vector sets only."""
    sx, sy, sz = (oracles.subspace_set(u) for u in (x, y, z))
    d = k - oracles.set_dim(sz & sy, 2)
    if d == i + 1:
        return OrbitClass.B
    if d == i - 1:
        return OrbitClass.C
    xy_sum = oracles.set_sum(sx, sy, 2)
    grows = not sz <= xy_sum
    shrinks = not (sx & sy) <= sz
    assert not (grows and shrinks)
    return OrbitClass.A_PLUS if grows else OrbitClass.A_MINUS if shrinks else OrbitClass.A_ZERO


def test_partition_fixture_against_sets(f1, f1_part):
    ctx, x, y = f1
    assert f1_part.sizes() == (96, 9, 72, 9, 24)
    for c, z in f1_part.members():
        assert _classify_by_sets(x, y, z, 2, 3) is c


@pytest.mark.parametrize("params", PARAMS)
def test_partition_sizes(params):
    q, n, k, i = params
    ctx = make_context(q, n, k)
    want = qalg.class_sizes(qalg.Params(*params))
    for seed in (0, 4):
        x, y = choose_pair(ctx, i, seed)
        part = y_partition(ctx, x, y)
        assert part.sizes() == want
        members = [z for _, z in part.members()]
        assert len(set(members)) == len(members)


def test_partition_sizes_literal():
    ctx = make_context(2, 9, 4)
    x, y = choose_pair(ctx, 3, 0)
    assert y_partition(ctx, x, y).sizes() == (384, 49, 336, 49, 112)


def test_partition_serialization(f1_part):
    d = f1_part.to_dict()
    assert d["i"] == 2
    assert [d["classes"][c.value]["count"] for c in ORDER] == [96, 9, 72, 9, 24]
    z = d["classes"]["A0"]["members"][0]
    assert parse_subspace(z) == f1_part.classes[OrbitClass.A_ZERO][0]


def test_structure_fixture(f1, f1_part):
    ctx, _, _ = f1
    rows, equitable = structure_matrix_brute(ctx, f1_part)
    assert equitable
    assert rows == ((29, 0, 6, 0, 6), (0, 4, 24, 5, 8), (8, 3, 27, 3, 0), (0, 5, 24, 4, 8), (24, 3, 0, 3, 11))
    assert all(sum(r) == 41 for r in rows)


def test_corrupted_partition_not_equitable(f1, f1_part):
    ctx, x, y = f1
    classes = dict(f1_part.classes)
    moved = classes[OrbitClass.B][0]
    classes[OrbitClass.B] = classes[OrbitClass.B][1:]
    classes[OrbitClass.C] = classes[OrbitClass.C] + (moved,)
    bad = YPartition(x, y, 2, classes)
    assert structure_matrix_brute(ctx, bad)[1] is False


def test_structure_neighbor_counts_by_sets(f1, f1_part):
    """Row of one vertex per class recounted with vector sets."""
    ctx, _, _ = f1
    rows, _ = structure_matrix_brute(ctx, f1_part)
    sets = {z: oracles.subspace_set(z) for _, z in f1_part.members()}
    for r, c in enumerate(ORDER):
        w = f1_part.classes[c][0]
        counts = []
        for c2 in ORDER:
            counts.append(sum(1 for z in f1_part.classes[c2] if len(sets[z] & sets[w]) == 4))
        assert tuple(counts) == rows[r]


# --- witnesses

def _check_sigma_by_sets(sigma, x, y, z, z2):
    q = sigma.q
    for a, b in ((x, x), (y, y), (z, z2)):
        assert oracles.apply_matrix_set(sigma.matrix, oracles.subspace_set(a), q) == oracles.subspace_set(b)
    assert oracles.det_mod(sigma.matrix, q) != 0


def test_witness_single():
    ctx = make_context(2, 7, 3)
    x = standard(2, 7, [0, 1, 2])
    v, v2 = standard(2, 7, [0, 3]), standard(2, 7, [1, 4])
    sigma = witness_single(ctx, x, v, v2)
    assert apply_map(sigma, x) == x and apply_map(sigma, v) == v2
    assert apply_map(witness_single(ctx, x, v, v), v) == v
    with pytest.raises(ClassMismatchError):
        witness_single(ctx, x, v, standard(2, 7, [3, 4]))


def test_witness_pair_fixture(f1):
    ctx, x, y = f1
    z = sub(vec(0), vec(1), vec(2, 3))
    z2 = sub(vec(0), vec(2), vec(1, 4))
    assert classify(ctx, x, y, z2) is OrbitClass.A_ZERO
    _check_sigma_by_sets(witness_pair(ctx, x, y, z, z), x, y, z, z)
    _check_sigma_by_sets(witness_pair(ctx, x, y, z, z2), x, y, z, z2)
    with pytest.raises(ClassMismatchError):
        witness_pair(ctx, x, y, sub(vec(0), vec(1), vec(5)), sub(vec(1), vec(2), vec(3)))


@pytest.mark.parametrize("params", PARAMS)
def test_witness_pair_random(params):
    q, n, k, i = params
    ctx = make_context(q, n, k)
    x, y = choose_pair(ctx, i, seed=2)
    part = y_partition(ctx, x, y)
    rng = random.Random(1)
    for c in ORDER:
        for _ in range(8):
            z, z2 = rng.choice(part.classes[c]), rng.choice(part.classes[c])
            sigma = witness_pair(ctx, x, y, z, z2)
            if q == 2:
                _check_sigma_by_sets(sigma, x, y, z, z2)


@given(st.integers(0, 10**6))
def test_classify_is_stabilizer_invariant(seed):
    ctx = make_context(2, 7, 3)
    x, y = choose_pair(ctx, 2, 0)
    part = _fixture_partition()
    rng = random.Random(seed)
    z, z2 = rng.choice(part.classes[OrbitClass.A_PLUS]), rng.choice(part.classes[OrbitClass.A_PLUS])
    sigma = witness_pair(ctx, x, y, z, z2)
    w = rng.choice([m for _, m in part.members()])
    assert classify(ctx, x, y, apply_map(sigma, w)) is classify(ctx, x, y, w)


_CACHE = {}


def _fixture_partition():
    if "p" not in _CACHE:
        ctx = make_context(2, 7, 3)
        _CACHE["p"] = y_partition(ctx, *choose_pair(ctx, 2, 0))
    return _CACHE["p"]


def test_adapted_blocks_rejects_non_distributive():
    ctx = make_context(2, 7, 3)
    F = ctx.spec
    a, b = standard(2, 7, [0]), standard(2, 7, [1])
    c = span(2, 7, vec(0, 1))
    with pytest.raises(DomainError):
        adapted_blocks(F, 7, [a, b, c])


def test_adapted_blocks_spans_intersections(f1):
    ctx, x, y = f1
    z = sub(vec(1), vec(2), vec(5))
    subs = [x, y, z]
    blocks = adapted_blocks(ctx.spec, 7, subs)
    stages = _stage_subsets(3)
    flat = [v for b in blocks for v in b]
    assert span(2, 7, *flat).dim == 7 == len(flat)
    for S in stages:
        U = subs[S[0]]
        for j in S[1:]:
            U = intersect(U, subs[j])
        inside = [v for T, b in zip(stages, blocks) if set(S) <= set(T) for v in b]
        assert span(2, 7, *inside) == U if inside else U.dim == 0
