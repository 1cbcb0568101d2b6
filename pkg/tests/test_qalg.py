from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from grasslab import qalg
from grasslab.errors import DomainError
from grasslab.qalg import Params, TableId, TransitionId
from grasslab.qmatrix import QMatrix

import oracles

DESK = [(2, 7, 3, 2), (2, 9, 4, 2), (2, 9, 4, 3), (3, 7, 3, 2), (4, 9, 4, 2), (3, 11, 5, 4), (5, 7, 3, 2)]


def valid_params():
    return st.tuples(
        st.sampled_from([2, 3, 4, 5, 7, 8, 9]),
        st.integers(3, 6),
        st.integers(1, 5),
    ).flatmap(lambda t: st.builds(
        lambda extra, i: Params(t[0], 2 * t[1] + extra, t[1], i),
        st.integers(1, 3), st.integers(2, t[1] - 1),
    ))


# --- brackets and binomials

def test_bracket_values():
    assert qalg.bracket(0, 2) == 0
    assert qalg.bracket(1, 5) == 1
    assert qalg.bracket(7, 2) == oracles.count_lines(2, 7) == 127
    assert qalg.bracket(3, 3) == oracles.count_lines(3, 3) == 13


def test_bracket_rejects_negative():
    with pytest.raises(DomainError):
        qalg.bracket(-1, 2)


@given(st.integers(1, 30), st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11]))
def test_bracket_recurrence(m, q):
    assert qalg.bracket(m, q) == q * qalg.bracket(m - 1, q) + 1


def test_gauss_binom_values():
    assert qalg.gauss_binom(7, 0, 2) == 1
    assert qalg.gauss_binom(7, 3, 2) == oracles.count_subspaces_by_bases(2, 7, 3) == 11811
    assert qalg.gauss_binom(7, 1, 2) == qalg.bracket(7, 2)
    with pytest.raises(DomainError):
        qalg.gauss_binom(3, 4, 2)
    with pytest.raises(DomainError):
        qalg.gauss_binom(3, -1, 2)


@pytest.mark.parametrize("q,n,r", [(2, 4, 2), (2, 5, 2), (3, 3, 1), (3, 4, 2)])
def test_gauss_binom_counts_sets(q, n, r):
    assert qalg.gauss_binom(n, r, q) == oracles.count_subspaces_as_sets(q, n, r)


@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 9), st.data())
def test_gauss_binom_pascal(q, m, data):
    r = data.draw(st.integers(1, m))
    # q-Pascal: [m choose r] = [m-1 choose r-1] + q^r [m-1 choose r]
    right = qalg.gauss_binom(m - 1, r - 1, q) + (q**r * qalg.gauss_binom(m - 1, r, q) if r <= m - 1 else 0)
    assert qalg.gauss_binom(m, r, q) == right


# --- parameters

@pytest.mark.parametrize("args", [(2, 6, 3), (2, 5, 2), (1, 9, 4), (2, 7, 3, 4), (2, 7, 3, -1)])
def test_params_rejects(args):
    with pytest.raises(DomainError):
        Params(*args)


def test_i_range_enforced_for_tables():
    for i in (0, 1, 3):
        with pytest.raises(DomainError):
            qalg.closed_table(TableId.GEOM_GRAM, Params(2, 7, 3, i))
        with pytest.raises(DomainError):
            qalg.orbit_sizes(Params(2, 7, 3, i))


# --- scalar formulas

def test_intersection_numbers_values():
    assert qalg.intersection_numbers(Params(2, 7, 3, 2)) == (96, 9, 105)
    assert qalg.intersection_numbers(Params(2, 7, 3, 0)) == (210, 0, 0)
    assert qalg.intersection_numbers(Params(2, 9, 4, 3)) == (384, 49, 497)


def test_orbit_sizes_values():
    assert qalg.orbit_sizes(Params(2, 7, 3, 2)) == (72, 9, 24)
    assert qalg.orbit_sizes(Params(2, 9, 4, 2)) == (168, 9, 72)
    assert qalg.orbit_sizes(Params(2, 9, 4, 3)) == (336, 49, 112)


def test_theta_values():
    assert qalg.eigenvalue_theta(Params(2, 7, 3, 0)) == 210
    assert qalg.eigenvalue_theta(Params(2, 7, 3, 1)) == 83
    assert qalg.eigenvalue_theta(Params(2, 7, 3, 3)) == -7


@given(valid_params())
def test_counts_add_up(p):
    b, c, a = qalg.intersection_numbers(p)
    assert b + c + a == p.q * p.b(p.k) * p.b(p.n - p.k)
    assert sum(qalg.orbit_sizes(p)) == a
    assert all(v > 0 for v in qalg.class_sizes(p))


# --- tables

def test_geom_gram_row_x():
    G = qalg.closed_table(TableId.GEOM_GRAM, Params(2, 7, 3, 2))
    assert G.rows[0] == (840, 78, 120, 672)


def test_structure_rows_fixture():
    M = qalg.closed_table(TableId.STRUCTURE, Params(2, 7, 3, 2))
    assert M.rows[0] == (29, 0, 6, 0, 6)
    assert M.rows[1] == (0, 4, 24, 5, 8)


@given(valid_params())
def test_structure_row_sums_and_transpose(p):
    M = qalg.closed_table(TableId.STRUCTURE, p)
    a1 = qalg.local_a1(p)
    assert all(sum(r) == a1 for r in M.rows)
    D = QMatrix.diag(qalg.class_sizes(p))
    assert M.T == D @ M @ D.inverse()
    assert all(v >= 0 and v.denominator == 1 for r in M.rows for v in r)


@given(valid_params())
def test_gram_tables_are_symmetric_where_square(p):
    for tid in (TableId.GEOM_GRAM, TableId.COMB_GRAM, TableId.A_A):
        G = qalg.closed_table(tid, p)
        assert G == G.T


@given(valid_params())
def test_geometric_inverse(p):
    G = qalg.closed_table(TableId.GEOM_GRAM, p)
    assert G @ qalg.geometric_gram_inverse(p) == QMatrix.identity(4)


def test_geometric_inverse_prefactor():
    p = Params(2, 7, 3, 2)
    Minv = qalg.geometric_gram_inverse(p)
    assert Minv[0, 0] == Fraction(4, 2286)
    p = Params(2, 9, 4, 3)
    assert qalg.geometric_gram_inverse(p)[0, 1] == Fraction(1, 2 * 1 * 49 * 511)


def test_transitions_fixture():
    p = Params(2, 7, 3, 2)
    alin = qalg.basis_transition(TransitionId.ALIN, p)
    rows, cols = qalg.table_labels(TransitionId.ALIN)
    assert alin.col(cols.index(qalg.A0)) == (1, -2, 8, 2)
    assert alin[rows.index(qalg.Y), cols.index(qalg.AP)] == 0
    alin2 = qalg.basis_transition(TransitionId.ALIN2, p)
    assert alin2.col(qalg.table_labels(TransitionId.ALIN2)[1].index(qalg.A0)) == (-3, -6, 0, 2)


@given(valid_params())
def test_transitions_consistent_with_grams(p):
    """Gram of the expanded vectors against the basis reproduces the closed A tables."""
    G = qalg.closed_table(TableId.GEOM_GRAM, p)
    T = qalg.basis_transition(TransitionId.ALIN, p)
    assert G @ T == qalg.closed_table(TableId.A_GEOM, p)
    assert T.T @ G @ T == qalg.closed_table(TableId.A_A, p)
    C = qalg.closed_table(TableId.COMB_GRAM, p)
    T2 = qalg.basis_transition(TransitionId.ALIN2, p)
    assert C @ T2 == qalg.closed_table(TableId.A_COMB, p)


def test_unknown_ids():
    p = Params(2, 7, 3, 2)
    with pytest.raises(DomainError):
        qalg.closed_table("GEOM_GRAM", p)
    with pytest.raises(DomainError):
        qalg.basis_transition(TableId.GEOM_GRAM, p)


def test_tampered_restores():
    p = Params(2, 7, 3, 2)
    before = qalg.closed_table(TableId.A_GEOM, p)
    with qalg.tampered(TableId.A_GEOM, qalg.X, qalg.AP, 5):
        assert qalg.closed_table(TableId.A_GEOM, p) != before
    assert qalg.closed_table(TableId.A_GEOM, p) == before


# --- eigen-data

@pytest.mark.parametrize("params", DESK)
def test_eigen_data(params):
    p = Params(*params)
    M = qalg.closed_table(TableId.STRUCTURE, p)
    t = sympy.Symbol("t")
    roots = sympy.roots(sympy.Matrix([[int(v) for v in r] for r in M.rows]).charpoly(t).as_expr(), t)
    assert sorted(roots) == sorted(qalg.structure_eigenvalues(p))
    for lam, row, col in qalg.eigen_data(p):
        assert row @ M == row.scale(lam)
        assert M @ col == col.scale(lam)


def test_eigen_fixture():
    p = Params(2, 7, 3, 2)
    assert qalg.structure_eigenvalues(p) == (41, 27, 11, -1, -3)
    data = {lam: (r, c) for lam, r, c in qalg.eigen_data(p)}
    assert data[-1][0].rows[0] == (0, 1, 0, -1, 0)
    assert data[-1][1].col(0) == (0, 1, 0, -1, 0)
    assert data[-3][0].rows[0] == (2, 1, -2, 1, -2)


def test_eigen_three_seven():
    assert qalg.structure_eigenvalues(Params(3, 7, 3, 2)) == (155, 116, 35, -1, -4)


def test_local_spectrum_closed():
    assert qalg.local_spectrum_closed(Params(2, 7, 3)) == [(41, 1), (27, 6), (11, 14), (-1, 105), (-3, 84)]
    assert [m for _, m in qalg.local_spectrum_closed(Params(2, 9, 4))] == [1, 14, 30, 465, 420]


@given(valid_params())
def test_local_spectrum_moments(p):
    spec = qalg.local_spectrum_closed(p)
    assert sum(m for _, m in spec) == qalg.valency(p)
    assert sum(m * lam for lam, m in spec) == 0  # loopless
    assert sum(m * lam * lam for lam, m in spec) == qalg.valency(p) * qalg.local_a1(p)
