"""Small dense-matrix helpers over Surds and integers (tuples of tuples)."""

from __future__ import annotations


def matmul(a, b):
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(len(b))), 0 * a[i][0]) for j in range(len(b[0])))
        for i in range(len(a))
    )


def identity(n: int):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def inverse_unimodular2(u):
    """Inverse of a 2x2 integer matrix with determinant +-1."""
    det = det2(u)
    if det not in (1, -1):
        raise ValueError("matrix is not unimodular")
    return ((u[1][1] * det, -u[0][1] * det), (-u[1][0] * det, u[0][0] * det))


def inverse_affine3(t):
    """Inverse of an integer affine 3x3 matrix ``[[L, c], [0, 1]]`` with det L = +-1."""
    lin = ((t[0][0], t[0][1]), (t[1][0], t[1][1]))
    li = inverse_unimodular2(lin)
    c = (t[0][2], t[1][2])
    ci = (-(li[0][0] * c[0] + li[0][1] * c[1]), -(li[1][0] * c[0] + li[1][1] * c[1]))
    return ((li[0][0], li[0][1], ci[0]), (li[1][0], li[1][1], ci[1]), (0, 0, 1))


def column(m, j):
    return tuple(row[j] for row in m)
