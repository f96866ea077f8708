"""Exact mod-p matrix kernel.

Expected values below were computed by hand or by brute-force enumeration
before the implementation existed; they are frozen here as oracles.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reedychain.errors import FieldMismatchError
from reedychain.linalg import (
    FpMatrix,
    eye,
    kernel_basis,
    quotient_by_columns,
    rref,
    solve,
    zeros,
)


def test_rank_rank_one_matrix_f7():
    # second row is 2 * first row, so rank 1
    m = FpMatrix.from_rows(7, [[1, 2], [2, 4]])
    assert m.rank() == 1


def test_rref_pivots_leftmost():
    m = FpMatrix.from_rows(5, [[0, 2, 1], [0, 4, 3]])
    r, pivots = rref(m)
    assert pivots == (1, 2)
    assert r.tolists() == [[0, 1, 0], [0, 0, 1]]


def test_entries_canonical_residues():
    m = FpMatrix.from_rows(5, [[-1, 7], [10, -6]])
    assert m.tolists() == [[4, 2], [0, 4]]


def test_solve_free_variables_zero_f3():
    # x + y = 2 over F_3 has solutions (2,0), (1,1), (0,2); the deterministic
    # convention (free variables set to 0) picks (2, 0).
    a = FpMatrix.from_rows(3, [[1, 1], [0, 0]])
    b = FpMatrix.from_rows(3, [[2], [0]])
    x = solve(a, b)
    assert x is not None
    assert x.tolists() == [[2], [0]]
    # brute-force: confirm (2,0) is a solution and that solve found the one
    # with free coordinate zero
    sols = [
        (x0, x1)
        for x0, x1 in itertools.product(range(3), repeat=2)
        if (x0 + x1) % 3 == 2
    ]
    assert (2, 0) in sols


def test_solve_inconsistent_returns_none():
    a = FpMatrix.from_rows(3, [[1, 1], [1, 1]])
    b = FpMatrix.from_rows(3, [[1], [2]])
    assert solve(a, b) is None


def test_solve_multiple_rhs_columns():
    a = FpMatrix.from_rows(7, [[2, 0], [0, 3]])
    b = FpMatrix.from_rows(7, [[1, 2], [1, 3]])
    x = solve(a, b)
    assert x is not None
    assert (a @ x) == b


def test_kernel_basis_column_order():
    # kernel of [1 2 0; 0 0 1] over F_5 is spanned by (-2, 1, 0) = (3, 1, 0)
    m = FpMatrix.from_rows(5, [[1, 2, 0], [0, 0, 1]])
    k = kernel_basis(m)
    assert k.shape == (3, 1)
    assert k.tolists() == [[3], [1], [0]]
    assert (m @ k).is_zero()


def test_kernel_of_zero_matrix_is_identity():
    m = zeros(5, 2, 3)
    k = kernel_basis(m)
    assert k == eye(5, 3)


def test_quotient_by_columns_projection_and_section():
    # quotient of F_5^3 by span{(1,0,2)}: non-pivot coordinates survive
    sub = FpMatrix.from_rows(5, [[1], [0], [2]])
    proj, sect = quotient_by_columns(sub, 3)
    assert proj.shape == (2, 3)
    assert sect.shape == (3, 2)
    assert (proj @ sect) == eye(5, 2)
    # the subspace dies in the quotient
    assert (proj @ sub).is_zero()


def test_quotient_by_full_space_is_zero():
    sub = eye(5, 2)
    proj, sect = quotient_by_columns(sub, 2)
    assert proj.shape == (0, 2)
    assert sect.shape == (2, 0)


def test_field_mismatch_rejected():
    a = FpMatrix.from_rows(5, [[1]])
    b = FpMatrix.from_rows(7, [[1]])
    with pytest.raises(FieldMismatchError):
        a @ b
    with pytest.raises(FieldMismatchError):
        a + b


def test_matmul_mod_p():
    a = FpMatrix.from_rows(5, [[2, 3], [4, 1]])
    b = FpMatrix.from_rows(5, [[1, 0], [2, 2]])
    assert (a @ b).tolists() == [[3, 1], [1, 2]]


small_entries = st.integers(min_value=0, max_value=6)


def _matrices(p, max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(small_entries, min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            ).map(lambda rows: FpMatrix.from_rows(p, rows))
        )
    )


@settings(max_examples=60, deadline=None)
@given(_matrices(7))
def test_rref_is_idempotent_and_rank_bounded(m):
    r, pivots = rref(m)
    r2, pivots2 = rref(r)
    assert r == r2
    assert pivots == pivots2
    assert len(pivots) <= min(m.shape)


@settings(max_examples=60, deadline=None)
@given(_matrices(7))
def test_kernel_dimension_theorem(m):
    k = kernel_basis(m)
    assert (m @ k).is_zero()
    assert k.shape[1] == m.shape[1] - m.rank()
    # kernel basis columns are independent
    assert k.rank() == k.shape[1]


@settings(max_examples=60, deadline=None)
@given(_matrices(7), st.data())
def test_solve_recovers_known_solution(m, data):
    # build a consistent system by picking x first
    cols = data.draw(st.integers(1, 2))
    x_rows = data.draw(
        st.lists(
            st.lists(small_entries, min_size=cols, max_size=cols),
            min_size=m.shape[1],
            max_size=m.shape[1],
        )
    )
    x = FpMatrix.from_rows(7, x_rows)
    b = m @ x
    got = solve(m, b)
    assert got is not None
    assert (m @ got) == b


@settings(max_examples=40, deadline=None)
@given(_matrices(7))
def test_quotient_dimension_theorem(m):
    proj, sect = quotient_by_columns(m, m.shape[0])
    q = m.shape[0] - m.rank()
    assert proj.shape == (q, m.shape[0])
    assert (proj @ sect) == eye(7, q)
    assert (proj @ m).is_zero()
