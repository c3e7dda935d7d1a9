"""Smith normal form over the integers.

Entries are kept as Python integers so that no overflow can occur. The
pivot at each step is an entry of smallest absolute value; remainders from
division by the pivot replace it until the pivot divides its row and
column, which keeps coefficient growth in check.
"""

import numpy as np


def _to_rows(A):
    A = np.asarray(A, dtype=object)
    if A.ndim != 2:
        raise ValueError("expected a 2-dimensional matrix")
    return [[int(x) for x in row] for row in A.tolist()], A.shape


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith(A):
    """Return (U, D, V, Uinv, Vinv) as lists of lists with U A V = D."""
    D, (m, n) = _to_rows(A)
    U, Uinv = _identity(m), _identity(m)
    V, Vinv = _identity(n), _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(src, dst, q):
        # row_dst += q * row_src
        if q == 0:
            return
        D[dst] = [x + q * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]
        for row in Uinv:
            row[src] -= q * row[dst]

    def add_col(src, dst, q):
        # col_dst += q * col_src
        if q == 0:
            return
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vinv[src] = [x - q * y for x, y in zip(Vinv[src], Vinv[dst])]

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]
        for row in Uinv:
            row[i] = -row[i]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        done = False
            if not done:
                # bring the smallest remaining entry of row/column t to the pivot
                cands = [(abs(D[i][t]), i, t) for i in range(t, m) if D[i][t]] + \
                        [(abs(D[t][j]), t, j) for j in range(t, n) if D[t][j]]
                _, i, j = min(cands)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if D[t][t] < 0:
            negate_row(t)
    return U, D, V, Uinv, Vinv


def snf(A):
    """Smith normal form: (U, D, V) with U @ A @ V == D.

    U and V are unimodular and D is diagonal with d1 | d2 | ... and
    non-negative entries. Arrays have dtype object holding Python ints.
    """
    U, D, V, _, _ = smith(A)
    m, n = np.asarray(A, dtype=object).shape
    return (np.array(U, dtype=object).reshape(m, m), np.array(D, dtype=object).reshape(m, n),
            np.array(V, dtype=object).reshape(n, n))


def invariant_factors(A):
    """Nonzero diagonal entries of the Smith normal form."""
    A = np.asarray(A, dtype=object)
    if A.size == 0:
        return []
    _, D, _, _, _ = smith(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]))) if D[i][i]]


def rank(A):
    return len(invariant_factors(A))
