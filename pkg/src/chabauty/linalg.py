"""Exact rational linear algebra (Gaussian elimination)."""

from fractions import Fraction


def solve(A, b):
    """Solve A x = b for rational x; return None when inconsistent.

    A is a list of rows.  Free variables are set to zero.
    """
    rows = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(A, b)]
    if not rows:
        return []
    ncols = len(rows[0]) - 1
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                t = rows[i][c]
                rows[i] = [x - t * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return x


def rank(A):
    rows = [[Fraction(v) for v in row] for row in A]
    if not rows:
        return 0
    r = 0
    for c in range(len(rows[0])):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                t = rows[i][c] / rows[r][c]
                rows[i] = [x - t * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r
