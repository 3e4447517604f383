"""Exact integer linear algebra on small dense matrices.

Matrices are tuples of tuples of Python ints (rows).  Everything here is
exact: determinants use fraction-free (Bareiss) elimination, inverses are
matrices of ``fractions.Fraction``, and the Smith normal form is computed
with integer row/column operations.  Sizes in this package stay below ~30,
so asymptotics are irrelevant; exactness is not.
"""

from fractions import Fraction


def freeze(rows):
    """Return the matrix as a tuple of tuples of ints."""
    return tuple(tuple(int(x) for x in row) for row in rows)


def is_symmetric(m):
    n = len(m)
    return all(len(row) == n for row in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i)
    )


def mat_mul(a, b):
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def transpose(m):
    return tuple(zip(*m))


def gram(rows):
    """Gram matrix of the rows under the Euclidean dot product."""
    return tuple(
        tuple(sum(x * y for x, y in zip(u, v)) for v in rows) for u in rows
    )


def neg(m):
    return tuple(tuple(-x for x in row) for row in m)


def bareiss_minors(m):
    """Leading principal minors det(m[:j][:j]) for j = 1..n, exactly.

    Fraction-free elimination; the pivots of the Bareiss scheme are the
    leading principal minors, so they come out as a by-product.  Falls back
    to expansion through a Fraction elimination when a leading pivot
    vanishes (the callers below only need the honest minor values).
    """
    n = len(m)
    return tuple(_det_int([row[: j + 1] for row in m[: j + 1]]) for j in range(n))


def _det_int(m):
    """Exact determinant of an integer matrix (Bareiss)."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def det(m):
    """Exact integer determinant."""
    return _det_int(m)


def is_negative_definite(m):
    """True iff the symmetric integer matrix is negative definite.

    Checked through the leading principal minors: the j-th minor must have
    sign (-1)^j.  Raises ValueError on non-symmetric input.
    """
    if not is_symmetric(m):
        raise ValueError("matrix is not symmetric")
    for j, minor in enumerate(bareiss_minors(m), start=1):
        if (minor if j % 2 == 0 else -minor) <= 0:
            return False
    return True


def inverse(m):
    """Exact inverse as a matrix of Fractions."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(i == j) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def solve_int(m, rhs):
    """Solve m x = rhs over the integers; None when no integer solution.

    m must be square and nonsingular.
    """
    inv = inverse(m)
    x = [sum(inv[i][j] * rhs[j] for j in range(len(rhs))) for i in range(len(rhs))]
    if any(v.denominator != 1 for v in x):
        return None
    return tuple(int(v) for v in x)


def smith_normal_form(m):
    """Diagonal invariant factors d_1 | d_2 | ... and the left transform U.

    Returns (divisors, U) with U unimodular and U*m*V diagonal for some
    unimodular V (V is not needed by the callers).  Divisors are
    non-negative; zeros would indicate a singular matrix.
    """
    a = [list(row) for row in m]
    n = len(a)
    cols = len(a[0]) if a else 0
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]

    t = 0
    while t < min(n, cols):
        # find a nonzero pivot in the remaining block
        piv = None
        for i in range(t, n):
            for j in range(t, cols):
                if a[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        u[t], u[i] = u[i], u[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            # clear column t
            again = False
            for i in range(t + 1, n):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        u[t], u[i] = u[i], u[t]
                        again = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        again = True
            if not again:
                break
        # enforce divisibility: pivot must divide the rest of the block
        fixed = True
        for i in range(t + 1, n):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t]:
                    row_op(t, i, -1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1
    divisors = []
    for i in range(min(n, cols)):
        divisors.append(abs(a[i][i]))
    return tuple(divisors), tuple(tuple(row) for row in u)
