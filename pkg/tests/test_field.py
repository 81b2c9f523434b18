"""Exact linear algebra: worked examples plus the spec's algebraic invariants."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quivercover.field import (
    Field,
    Mat,
    invert,
    is_invertible,
    kernel_basis,
    rank,
    rref,
    solve_linear,
)

F101 = Field.prime(101)
QQ = Field.rationals()


def test_rref_identity():
    m = Mat.identity(F101, 2)
    red, piv = rref(m)
    assert red == m
    assert piv == (0, 1)


def test_rref_zero():
    m = Mat.zeros(F101, 3, 2)
    red, piv = rref(m)
    assert red.is_zero()
    assert piv == ()


def test_rref_rank_one_hand_reduction():
    # [[1,2],[2,4]] over F_101: second row is twice the first
    red, piv = rref(Mat.from_rows(F101, [[1, 2], [2, 4]]))
    assert red.tolists() == [[1, 2], [0, 0]]
    assert piv == (0,)


def test_kernel_identity_empty():
    assert kernel_basis(Mat.identity(F101, 3)).cols == 0


def test_kernel_zero_full():
    assert kernel_basis(Mat.zeros(F101, 2, 3)).cols == 3


def test_kernel_line():
    # x + y = 0: kernel spanned by (1, -1)
    k = kernel_basis(Mat.from_rows(F101, [[1, 1]]))
    assert k.cols == 1
    x, y = k.a[0, 0], k.a[1, 0]
    assert (x + y) % 101 == 0 and x != 0


def test_solve_identity():
    b = Mat.from_rows(F101, [[7], [9]])
    assert solve_linear(Mat.identity(F101, 2), b) == b


def test_solve_inconsistent():
    a = Mat.zeros(F101, 2, 2)
    b = Mat.from_rows(F101, [[1], [0]])
    assert solve_linear(a, b) is None


def test_solve_inverse_of_two():
    # 2 * 51 = 102 = 1 mod 101
    x = solve_linear(Mat.from_rows(F101, [[2]]), Mat.from_rows(F101, [[1]]))
    assert x.tolists() == [[51]]


def test_solve_shape_mismatch():
    from quivercover.errors import ShapeMismatch

    with pytest.raises(ShapeMismatch):
        solve_linear(Mat.zeros(F101, 2, 2), Mat.zeros(F101, 3, 1))


def test_rationals_exact():
    m = Mat.from_rows(QQ, [[Fraction(1, 2), 1], [1, 2]])
    red, piv = rref(m)
    assert piv == (0,)
    assert red.a[0, 1] == Fraction(2)


@st.composite
def small_matrix(draw):
    rows = draw(st.integers(0, 5))
    cols = draw(st.integers(0, 5))
    entries = draw(
        st.lists(
            st.lists(st.integers(0, 100), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    if rows == 0:
        return Mat.zeros(F101, 0, cols)
    return Mat.from_rows(F101, entries)


@settings(max_examples=80, deadline=None)
@given(small_matrix())
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).cols == m.cols


@settings(max_examples=60, deadline=None)
@given(small_matrix())
def test_rref_idempotent(m):
    red, _ = rref(m)
    red2, _ = rref(red)
    assert red == red2


@settings(max_examples=60, deadline=None)
@given(small_matrix())
def test_kernel_annihilates(m):
    k = kernel_basis(m)
    if m.rows and k.cols:
        assert (m @ k).is_zero()


@settings(max_examples=60, deadline=None)
@given(small_matrix(), st.integers(0, 4))
def test_solve_exact_when_consistent(m, c):
    # build a consistent rhs from a known solution; the returned solution
    # must satisfy the system exactly (no tolerance)
    if m.cols == 0 or m.rows == 0:
        return
    x = Mat.from_rows(F101, [[(i * 7 + c) % 101] for i in range(m.cols)])
    b = m @ x
    sol = solve_linear(m, b)
    assert sol is not None
    assert (m @ sol) == b


def test_invert_round_trip():
    m = Mat.from_rows(F101, [[2, 1], [1, 1]])
    inv = invert(m)
    assert inv is not None
    assert (m @ inv) == Mat.identity(F101, 2)
    assert is_invertible(m)
    assert invert(Mat.from_rows(F101, [[1, 2], [2, 4]])) is None
