"""Independent reference computations used only by the tests."""

import csv
import math


def normal_equations_solve(X, y):
    """Solve (X'X) b = X'y by Gaussian elimination with partial pivoting, in plain floats."""
    rows = [list(map(float, r)) for r in X]
    y = [float(v) for v in y]
    p = len(rows[0])
    A = [[sum(r[i] * r[j] for r in rows) for j in range(p)] for i in range(p)]
    b = [sum(r[i] * yi for r, yi in zip(rows, y)) for i in range(p)]
    for col in range(p):
        piv = max(range(col, p), key=lambda r: abs(A[r][col]))
        A[col], A[piv] = A[piv], A[col]
        b[col], b[piv] = b[piv], b[col]
        for r in range(col + 1, p):
            f = A[r][col] / A[col][col]
            for c in range(col, p):
                A[r][c] -= f * A[col][c]
            b[r] -= f * b[col]
    beta = [0.0] * p
    for i in reversed(range(p)):
        beta[i] = (b[i] - sum(A[i][j] * beta[j] for j in range(i + 1, p))) / A[i][i]
    return beta


def t_two_sided_closed_form(t, df):
    """Two-sided Student t tail for df = 1 and df = 2, where closed forms exist."""
    if df == 1:
        return 1.0 - 2.0 * math.atan(abs(t)) / math.pi
    if df == 2:
        return 1.0 - abs(t) / math.sqrt(2.0 + t * t)
    raise ValueError("closed form only for df 1 or 2")


def published_table(path):
    """Read a transcribed count table; blank cells are zero."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    cols = rows[0][1:]
    return {(r[0], c): int(v or 0) for r in rows[1:] for c, v in zip(cols, r[1:])}
