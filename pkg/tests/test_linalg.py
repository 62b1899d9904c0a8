import doctest
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sullivan import linalg
from sullivan.errors import InputError
from sullivan.linalg import Matrix, RowSpace, kernel_basis, rref, solve_in_span

F = Fraction


def test_doctests():
    assert doctest.testmod(linalg).failed == 0


def test_rref_identity_is_fixed():
    m = Matrix.identity(2)
    r, pivots = rref(m)
    assert r == m
    assert pivots == [0, 1]


def test_rref_proportional_rows():
    r, pivots = rref(Matrix([[2, 4], [1, 2]]))
    assert r == Matrix([[1, 2], [0, 0]])
    assert pivots == [0]


def test_rref_row_swap():
    r, pivots = rref(Matrix([[0, 1], [1, 0]]))
    assert r == Matrix.identity(2)
    assert pivots == [0, 1]


def test_kernel_of_zero_matrix_is_everything():
    vecs = kernel_basis(Matrix.zero(2, 3))
    assert vecs == [
        (F(1), F(0), F(0)),
        (F(0), F(1), F(0)),
        (F(0), F(0), F(1)),
    ]


def test_kernel_single_row():
    assert kernel_basis(Matrix([[1, 2]])) == [(F(-2), F(1))]


def test_kernel_of_injective_map_is_empty():
    # one column mapping a^2 -> a^2: rank one, no kernel
    assert kernel_basis(Matrix([[1]])) == []


def test_solve_outside_span():
    assert solve_in_span([(F(1), F(0))], (F(0), F(1))) is None


def test_solve_two_vectors():
    coeffs = solve_in_span([(F(1), F(1)), (F(1), F(-1))], (F(2), F(0)))
    assert coeffs == (F(1), F(1))


def test_solve_rational_coefficient():
    assert solve_in_span([(F(2), F(4))], (F(1), F(2))) == (F(1, 2),)


def test_solve_length_mismatch():
    with pytest.raises(InputError):
        solve_in_span([(F(1),)], (F(1), F(2)))


small_matrices = st.integers(1, 4).flatmap(
    lambda rows: st.integers(1, 4).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(-4, 4), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
)


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_rref_is_idempotent(entries):
    m = Matrix(entries)
    r1, p1 = rref(m)
    r2, p2 = rref(r1)
    assert r1 == r2
    assert p1 == p2
    assert p1 == sorted(p1)


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_rank_nullity(entries):
    m = Matrix(entries)
    _, pivots = rref(m)
    assert len(pivots) + len(kernel_basis(m)) == m.cols


@settings(max_examples=150, deadline=None)
@given(small_matrices, st.lists(st.integers(-3, 3), min_size=1, max_size=4))
def test_solve_reconstructs_combinations(entries, weights):
    basis = [tuple(F(x) for x in row) for row in entries]
    n = len(basis[0])
    weights = (weights * 4)[: len(basis)]
    target = tuple(
        sum((F(w) * v[j] for w, v in zip(weights, basis)), F(0)) for j in range(n)
    )
    coeffs = solve_in_span(basis, target)
    assert coeffs is not None
    rebuilt = tuple(
        sum((c * v[j] for c, v in zip(coeffs, basis)), F(0)) for j in range(n)
    )
    assert rebuilt == target


@settings(max_examples=100, deadline=None)
@given(small_matrices)
def test_kernel_vectors_annihilate(entries):
    m = Matrix(entries)
    for vec in kernel_basis(m):
        for row in m.entries:
            assert sum((a * b for a, b in zip(row, vec)), F(0)) == 0


def test_rowspace_reduce_and_contains():
    space = RowSpace([{0: 1, 1: 2}, {1: 1, 2: 1}])
    assert space.rank == 2
    assert space.contains({0: F(2), 1: F(4)})
    assert space.contains({0: F(1), 1: F(3), 2: F(1)})
    assert not space.contains({2: F(1)})


def test_intersect_spans():
    a = [{0: F(1), 1: F(0)}, {1: F(1), 2: F(0)}]  # span{e0, e1}
    b = [{1: F(1)}, {2: F(1)}]  # span{e1, e2}
    meet = linalg.intersect_spans(a, b)
    assert meet == [{1: F(1)}]
    assert linalg.intersect_spans(a, []) == []
