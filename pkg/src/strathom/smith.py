"""Exact integer linear algebra: Smith and Hermite normal forms, integer kernels.

Everything runs on Python integers, so entry growth can never overflow.
Matrices come in as anything ``numpy.asarray`` accepts and are worked on
as lists of lists internally.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np


class SmithForm(NamedTuple):
    """``left @ M @ right == diag(diagonal)`` padded to the shape of ``M``."""

    diagonal: tuple[int, ...]
    left: np.ndarray
    right: np.ndarray


def _as_lists(M) -> tuple[list[list[int]], int, int]:
    A = np.asarray(M, dtype=object)
    if A.ndim != 2:
        raise ValueError("expected a 2-dimensional matrix")
    m, n = A.shape
    return [[int(x) for x in row] for row in A], m, n


def _identity(k: int) -> list[list[int]]:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def _obj(rows: list[list[int]], m: int, n: int) -> np.ndarray:
    out = np.zeros((m, n), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = x
    return out


def smith_normal_form(M) -> SmithForm:
    """Smith normal form with unimodular transforms.

    Pivots are chosen with minimal nonzero absolute value. The diagonal is
    non-negative with each entry dividing the next; trailing zeros are kept
    so that ``len(diagonal) == min(M.shape)``.

    >>> smith_normal_form([[2, 0], [0, 3]]).diagonal
    (1, 6)
    """
    A, m, n = _as_lists(M)
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):  # col_dst += c * col_src
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = A[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            # Row and column are clear; enforce divisibility of the remainder.
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < m and t < n and A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]

    diagonal = tuple(A[i][i] for i in range(min(m, n)))
    return SmithForm(diagonal, _obj(U, m, m), _obj(V, n, n))


def _sparse_rows(M) -> dict[int, dict[int, int]]:
    A = np.asarray(M, dtype=object)
    rows: dict[int, dict[int, int]] = {}
    for i, j in zip(*np.nonzero(A)):
        rows.setdefault(int(i), {})[int(j)] = int(A[i, j])
    return rows


def invariant_factors(M) -> tuple[int, ...]:
    """Nonzero Smith invariants of ``M``, in divisibility order.

    Unit pivots are eliminated sparsely first; whatever is left is handed to
    :func:`smith_normal_form`. Simplicial boundary matrices are usually
    consumed entirely by the sparse phase.
    """
    rows = _sparse_rows(M)
    cols: dict[int, set[int]] = {}
    for i, row in rows.items():
        for j in row:
            cols.setdefault(j, set()).add(i)
    units = 0
    while True:
        pivot = None
        for i, row in rows.items():
            for j, x in row.items():
                if x in (1, -1):
                    cost = (len(row) - 1) * (len(cols[j]) - 1)
                    if pivot is None or cost < pivot[0]:
                        pivot = (cost, i, j)
                    break
            if pivot is not None and pivot[0] == 0:
                break
        if pivot is None:
            break
        _, pi, pj = pivot
        prow = rows.pop(pi)
        pval = prow[pj]
        for j in prow:
            cols[j].discard(pi)
        for i in list(cols[pj]):
            row = rows[i]
            c = row[pj] * pval  # pval is a unit, so row -= (row[pj] / pval) * prow
            for j, x in prow.items():
                y = row.get(j, 0) - c * x
                if y:
                    if j not in row:
                        cols[j].add(i)
                    row[j] = y
                elif j in row:
                    del row[j]
                    cols[j].discard(i)
            if not row:
                del rows[i]
        # The pivot column is now empty; dropping the pivot row finishes it.
        del cols[pj]
        units += 1
    if not rows:
        return (1,) * units
    live_cols = sorted({j for row in rows.values() for j in row})
    where = {j: k for k, j in enumerate(live_cols)}
    dense = [[0] * len(live_cols) for _ in rows]
    for r, row in enumerate(rows.values()):
        for j, x in row.items():
            dense[r][where[j]] = x
    rest = tuple(d for d in smith_normal_form(dense).diagonal if d)
    return (1,) * units + rest


def rank(M) -> int:
    return len(invariant_factors(M))


def hermite_rows(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form of the lattice spanned by ``vectors``.

    Rows are in echelon form with positive pivots, and entries above each
    pivot are reduced into ``[0, pivot)``. Zero rows are dropped, so the
    result is the unique canonical basis of the spanned lattice.
    """
    A = [list(map(int, v)) for v in vectors]
    A = [row for row in A if any(row)]
    if not A:
        return []
    n = len(A[0])
    out: list[list[int]] = []
    col = 0
    while A and col < n:
        live = [row for row in A if row[col]]
        if not live:
            col += 1
            continue
        rest = [row for row in A if not row[col]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            p = live[0]
            nxt = [p]
            for row in live[1:]:
                q = row[col] // p[col]
                r = [a - q * b for a, b in zip(row, p)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            live = nxt
        p = live[0]
        if p[col] < 0:
            p = [-x for x in p]
        for row in out:
            q = row[col] // p[col]
            if q:
                row[:] = [a - q * b for a, b in zip(row, p)]
        out.append(p)
        A = rest
        col += 1
    return out


def pivots(hnf: Sequence[Sequence[int]]) -> list[int]:
    return [next(j for j, x in enumerate(row) if x) for row in hnf]


def solve_in_lattice(hnf: Sequence[Sequence[int]], vector: Sequence[int]) -> list[int]:
    """Integer coordinates of ``vector`` in the Hermite basis ``hnf``.

    Raises ``ValueError`` when the vector is not in the lattice.
    """
    v = list(map(int, vector))
    coords = []
    for row, j in zip(hnf, pivots(hnf)):
        q, r = divmod(v[j], row[j])
        if r:
            raise ValueError("vector is not in the lattice")
        coords.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        raise ValueError("vector is not in the lattice")
    return coords


def integer_kernel(M, ncols: int | None = None) -> list[list[int]]:
    """Hermite basis (as rows) of ``{x in Z^n : M x = 0}``.

    The kernel of an integer matrix is a saturated sublattice, so every
    basis vector returned is primitive.
    """
    A = np.asarray(M, dtype=object)
    if A.ndim != 2:
        raise ValueError("expected a 2-dimensional matrix")
    m, n = A.shape
    if ncols is not None and ncols != n:
        raise ValueError("column count mismatch")
    # Work on columns: each column carries (its M-part, its identity part).
    cols = [([int(A[i, j]) for i in range(m)], [int(k == j) for k in range(n)]) for j in range(n)]
    done = 0
    for i in range(m):
        while True:
            live = [k for k in range(done, n) if cols[k][0][i]]
            if not live:
                break
            k0 = min(live, key=lambda k: abs(cols[k][0][i]))
            cols[done], cols[k0] = cols[k0], cols[done]
            p = cols[done][0][i]
            clean = True
            for k in range(done + 1, n):
                x = cols[k][0][i]
                if x:
                    q = x // p
                    mk, ik = cols[k]
                    mp, ip = cols[done]
                    cols[k] = ([a - q * b for a, b in zip(mk, mp)], [a - q * b for a, b in zip(ik, ip)])
                    clean = clean and cols[k][0][i] == 0
            if clean:
                done += 1
                break
    return hermite_rows([ident for _, ident in cols[done:]])


# Linear algebra over Q (characteristic 0) or GF(p).

def _field(characteristic: int):
    if characteristic == 0:
        return Fraction, (lambda x: Fraction(x)), (lambda x: 1 / x)
    if not is_prime(characteristic):
        raise ValueError(f"characteristic {characteristic} is neither 0 nor prime")
    p = characteristic
    return int, (lambda x: int(x) % p), (lambda x: pow(x, -1, p))


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    d = 2
    while d * d <= k:
        if k % d == 0:
            return False
        d += 1
    return True


def row_echelon(vectors: Sequence[Sequence[int]], characteristic: int) -> list[list]:
    """Reduced row echelon basis of the span of ``vectors`` over the field."""
    _, conv, inv = _field(characteristic)
    p = characteristic
    rows = [[conv(x) for x in v] for v in vectors]
    if not rows:
        return []
    n = len(rows[0])
    out: list[list] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        s = inv(rows[r][c])
        rows[r] = [x * s for x in rows[r]]
        if p:
            rows[r] = [x % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                if p:
                    rows[i] = [x % p for x in rows[i]]
        r += 1
        if r == len(rows):
            break
    out = [row for row in rows[:r]]
    return out


def field_rank(M, characteristic: int = 0) -> int:
    """Rank over the field by sparse elimination on leading columns.

    Over Q rows stay integral: each elimination step is fraction-free and
    the row is divided by its content afterwards.
    """
    A = np.asarray(M, dtype=object)
    if A.size == 0:
        return 0
    p = characteristic
    if p and not is_prime(p):
        raise ValueError(f"characteristic {p} is neither 0 nor prime")
    pivots: dict[int, dict[int, int]] = {}
    for row in _sparse_rows(A).values():
        if p:
            row = {j: x % p for j, x in row.items() if x % p}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                if p:
                    s = pow(row[c], -1, p)
                    row = {j: x * s % p for j, x in row.items()}
                else:
                    g = math.gcd(*row.values())
                    row = {j: x // g for j, x in row.items()}
                pivots[c] = row
                break
            if p:
                f = row[c]
                for j, x in piv.items():
                    y = (row.get(j, 0) - f * x) % p
                    if y:
                        row[j] = y
                    else:
                        row.pop(j, None)
            else:
                a, b = piv[c], row[c]
                g = math.gcd(a, b)
                a, b = a // g, b // g
                new = {j: a * x for j, x in row.items()}
                for j, x in piv.items():
                    y = new.get(j, 0) - b * x
                    if y:
                        new[j] = y
                    else:
                        new.pop(j, None)
                row = new
    return len(pivots)


def field_nullspace(M, characteristic: int = 0) -> list[list]:
    """Basis (as rows) of ``{x : M x = 0}`` over the field."""
    A = np.asarray(M, dtype=object)
    m, n = A.shape
    _, conv, _ = _field(characteristic)
    if m == 0:
        return [[conv(int(i == j)) for j in range(n)] for i in range(n)]
    R = row_echelon(A.tolist(), characteristic)
    pivot_cols = [next(j for j, x in enumerate(row) if x) for row in R]
    free = [j for j in range(n) if j not in pivot_cols]
    basis = []
    for f in free:
        v = [conv(0)] * n
        v[f] = conv(1)
        for row, pc in zip(R, pivot_cols):
            v[pc] = -row[f]
            if characteristic:
                v[pc] %= characteristic
        basis.append(v)
    return basis


def field_solve(M, b, characteristic: int = 0) -> list:
    """One solution ``x`` of ``M x = b`` over the field; ``ValueError`` if none."""
    A = np.asarray(M, dtype=object)
    m, n = A.shape
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R = row_echelon(aug, characteristic)
    _, conv, _ = _field(characteristic)
    x = [conv(0)] * n
    for row in R:
        pc = next(j for j, v in enumerate(row) if v)
        if pc == n:
            raise ValueError("system is inconsistent")
        x[pc] = row[n]
    return x
