"""Smith normal form over the integers, exact and dependency-free.

Matrices are lists of rows of Python ints, so there is no overflow; the
inputs here are boundary matrices of desk-scale cell complexes.
"""

from __future__ import annotations


def smith_divisors(matrix: list[list[int]]) -> list[int]:
    """The nonzero diagonal entries d1 | d2 | ... of the Smith form.

    Only the divisors are computed (no transform tracking); the rank of the
    matrix is the length of the returned list.
    """
    a = [list(row) for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    divisors: list[int] = []
    s = 0
    while True:
        # pick the smallest-magnitude nonzero entry in the remaining block
        pi = pj = -1
        best = 0
        for i in range(s, nrows):
            for j in range(s, ncols):
                v = abs(a[i][j])
                if v and (best == 0 or v < best):
                    best, pi, pj = v, i, j
        if best == 0:
            break
        if pi != s:
            a[s], a[pi] = a[pi], a[s]
        if pj != s:
            for row in a:
                row[s], row[pj] = row[pj], row[s]
        if a[s][s] < 0:
            a[s] = [-v for v in a[s]]

        clean = True
        for i in range(s + 1, nrows):
            if a[i][s]:
                q = a[i][s] // a[s][s]
                a[i] = [x - q * y for x, y in zip(a[i], a[s])]
                if a[i][s]:
                    clean = False
        for j in range(s + 1, ncols):
            if a[s][j]:
                q = a[s][j] // a[s][s]
                for row in a:
                    row[j] -= q * row[s]
                if a[s][j]:
                    clean = False
        if not clean:
            continue

        # enforce divisibility of the remaining block by the pivot
        offender = None
        for i in range(s + 1, nrows):
            for j in range(s + 1, ncols):
                if a[i][j] % a[s][s]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            a[s] = [x + y for x, y in zip(a[s], a[offender])]
            continue
        divisors.append(a[s][s])
        s += 1
        if s >= nrows or s >= ncols:
            break
    return divisors


def matrix_rank(matrix: list[list[int]]) -> int:
    return len(smith_divisors(matrix))


def zero_matrix(nrows: int, ncols: int) -> list[list[int]]:
    return [[0] * ncols for _ in range(nrows)]


def mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    nrows, inner, ncols = len(a), len(b), len(b[0]) if b else 0
    out = zero_matrix(nrows, ncols)
    for i in range(nrows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            v = ai[k]
            if v:
                bk = b[k]
                for j in range(ncols):
                    oi[j] += v * bk[j]
    return out


def is_zero(matrix: list[list[int]]) -> bool:
    return all(all(v == 0 for v in row) for row in matrix)
