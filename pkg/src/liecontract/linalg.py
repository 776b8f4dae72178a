"""Exact linear algebra over the rationals.

Vectors are tuples of ``Fraction``; matrices are tuples of row tuples.
Reduced row-echelon form is the canonical representation used for
subspace equality throughout the package.
"""

from __future__ import annotations

from fractions import Fraction

Q = Fraction


def vec(values):
    return tuple(Q(v) for v in values)


def zero_vec(n):
    return (Q(0),) * n


def unit_vec(n, i):
    return tuple(Q(1) if j == i else Q(0) for j in range(n))


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c, a):
    c = Q(c)
    return tuple(c * x for x in a)


def is_zero_vec(a):
    return all(x == 0 for x in a)


def mat_vec(m, v):
    return tuple(sum((r[j] * v[j] for j in range(len(v))), Q(0)) for r in m)


def mat_mul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Q(0)) for col in bt) for row in a)


def identity(n):
    return tuple(unit_vec(n, i) for i in range(n))


def rref(rows):
    """Reduced row-echelon form.

    Returns ``(rows, pivots)`` with zero rows dropped; the result is the
    canonical basis of the row span.
    """
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    rows_out = tuple(tuple(row) for row in m[:r])
    return rows_out, tuple(pivots)


def rank(rows):
    return len(rref(rows)[0])


def row_span_contains(basis_rref, pivots, v):
    """Membership test against an RREF basis."""
    v = list(v)
    for row, p in zip(basis_rref, pivots):
        if v[p] != 0:
            f = v[p]
            v = [x - f * y for x, y in zip(v, row)]
    return all(x == 0 for x in v)


def reduce_against(basis_rref, pivots, v):
    """Subtract the basis projection, zeroing the pivot coordinates of ``v``."""
    v = list(v)
    for row, p in zip(basis_rref, pivots):
        if v[p] != 0:
            f = v[p]
            v = [x - f * y for x, y in zip(v, row)]
    return tuple(v)


def solve_exact(a_rows, b):
    """Solve ``A x = b`` exactly; returns ``None`` when inconsistent.

    For underdetermined systems returns one solution (free variables 0).
    """
    n = len(a_rows)
    if n == 0:
        return ()
    ncols = len(a_rows[0])
    aug = [list(r) + [Q(b[i])] for i, r in enumerate(a_rows)]
    red, pivots = rref(aug)
    x = [Q(0)] * ncols
    for row, p in zip(red, pivots):
        if p == ncols:
            return None
        x[p] = row[ncols]
    return tuple(x)


def det(a_rows):
    """Determinant by fraction-free elimination over Fraction."""
    m = [list(r) for r in a_rows]
    n = len(m)
    sign = Q(1)
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            return Q(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    out = sign
    for i in range(n):
        out *= m[i][i]
    return out


def invert(a_rows):
    """Exact inverse of a square matrix; ``None`` if singular."""
    n = len(a_rows)
    aug = [list(r) + list(unit_vec(n, i)) for i, r in enumerate(a_rows)]
    red, pivots = rref(aug)
    if len(red) < n or any(p >= n for p in pivots[:n]) or tuple(pivots[:n]) != tuple(range(n)):
        return None
    return tuple(tuple(row[n:]) for row in red)


def kernel(rows):
    """Basis of the null space of the linear map given by ``rows``."""
    if not rows:
        return ()
    n = len(rows[0])
    red, pivots = rref(rows)
    free = [i for i in range(n) if i not in pivots]
    out = []
    for f in free:
        v = [Q(0)] * n
        v[f] = Q(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        out.append(tuple(v))
    return tuple(out)


def intersect_rowspans(rows_a, rows_b):
    """Basis (RREF) of the intersection of two row spans."""
    a, _ = rref(rows_a)
    b, _ = rref(rows_b)
    if not a or not b:
        return ()
    n = len((a + b)[0])
    # Zassenhaus: echelonize [A|A; B|0]; rows with zero left half carry the
    # intersection in their right half.
    big = [list(r) + list(r) for r in a] + [list(r) + [Q(0)] * n for r in b]
    red, _ = rref(big)
    inter = [row[n:] for row in red if all(x == 0 for x in row[:n])]
    return rref(inter)[0]


def sum_rowspans(rows_a, rows_b):
    return rref(tuple(rows_a) + tuple(rows_b))[0]
