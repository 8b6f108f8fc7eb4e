import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

import oracles
from strathom.smith import (
    field_nullspace,
    field_rank,
    field_solve,
    hermite_rows,
    integer_kernel,
    invariant_factors,
    is_prime,
    smith_normal_form,
    solve_in_lattice,
)

matrices = st.integers(1, 6).flatmap(lambda m: st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)))


def _det(M):
    return int(Matrix(M.tolist()).det())


@settings(max_examples=120, deadline=None)
@given(matrices)
def test_smith_form_reproduces_and_is_unimodular(rows):
    M = np.array(rows, dtype=object)
    form = smith_normal_form(M)
    D = form.left.dot(M).dot(form.right)
    m, n = M.shape
    for i in range(m):
        for j in range(n):
            assert D[i, j] == (form.diagonal[i] if i == j else 0)
    assert abs(_det(form.left)) == 1 and abs(_det(form.right)) == 1
    nonzero = [d for d in form.diagonal if d]
    assert all(d > 0 for d in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert list(nonzero) == oracles.factors(Matrix(rows))


@settings(max_examples=120, deadline=None)
@given(matrices)
def test_sparse_invariants_match_sympy(rows):
    assert list(invariant_factors(rows)) == oracles.factors(Matrix(rows))


def test_known_forms():
    assert smith_normal_form([[2, 4], [6, 8]]).diagonal == (2, 4)
    assert invariant_factors([[2, 0], [0, 3]]) == (1, 6)
    assert invariant_factors(np.zeros((0, 3), dtype=object)) == ()


def test_entries_never_overflow():
    big = 10**40
    M = [[big, big + 1], [big - 1, big]]
    assert invariant_factors(M) == (1, 1)


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_integer_kernel_is_saturated_kernel(rows):
    M = np.array(rows, dtype=object)
    K = integer_kernel(M)
    n = M.shape[1]
    sym = Matrix(rows)
    assert len(K) == n - sym.rank()
    for v in K:
        assert not np.any(M.dot(np.array(v, dtype=object)))
    if K:
        # Saturated: the lattice has the same invariants as its rational span.
        assert all(f == 1 for f in invariant_factors(K))


@settings(max_examples=80, deadline=None)
@given(matrices, st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_hermite_membership(rows, coeffs):
    H = hermite_rows(rows)
    n = len(rows[0])
    v = [sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(n)]
    coords = solve_in_lattice(H, v)
    assert [sum(c * h[j] for c, h in zip(coords, H)) for j in range(n)] == v


def test_solve_in_lattice_rejects_outside_vector():
    with pytest.raises(ValueError):
        solve_in_lattice(hermite_rows([[2, 0]]), [1, 0])


@settings(max_examples=80, deadline=None)
@given(matrices, st.sampled_from([0, 2, 3, 5]))
def test_field_rank_and_nullspace(rows, q):
    M = np.array(rows, dtype=object)
    sym = Matrix(rows)
    expected = sym.rank() if q == 0 else _rank_mod(rows, q)
    assert field_rank(M, q) == expected
    null = field_nullspace(M, q)
    assert len(null) == M.shape[1] - expected
    for v in null:
        image = M.dot(np.array(v, dtype=object))
        assert all((x % q if q else x) == 0 for x in image)


def _rank_mod(rows, q):
    from sympy import GF
    from sympy.polys.matrices import DomainMatrix
    return DomainMatrix.from_list_sympy(len(rows), len(rows[0]), rows).convert_to(GF(q)).rank()


def test_field_solve():
    M = np.array([[1, 1], [0, 2]], dtype=object)
    x = field_solve(M, [3, 4], 0)
    assert list(M.dot(np.array(x, dtype=object))) == [3, 4]
    with pytest.raises(ValueError):
        field_solve(np.array([[1, 1], [1, 1]], dtype=object), [0, 1], 0)


def test_is_prime():
    assert [k for k in range(20) if is_prime(k)] == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(ValueError):
        field_rank([[1]], 4)
