"""Dense exact linear algebra over a field (small systems only).

Matrices are lists of row lists whose entries share one field (Fraction
or FpElement).  Everything here is textbook Gaussian elimination; sizes
in this package stay in the hundreds, so no pivoting subtleties matter.
"""

from __future__ import annotations

from .fields import QQ, Field


def rref(rows, field: Field = QQ):
    """Reduced row echelon form. Returns (new_rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field: Field = QQ) -> int:
    return len(rref(rows, field)[0])


def nullspace(rows, ncols: int, field: Field = QQ):
    """Basis of the right nullspace of the matrix (list of vectors)."""
    red, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for r, p in zip(red, pivots):
            v[p] = -r[f]
        basis.append(v)
    return basis


def in_span(basis_rows, vec, field: Field = QQ) -> bool:
    if not basis_rows:
        return not any(vec)
    a = rank(basis_rows, field)
    b = rank(list(basis_rows) + [list(vec)], field)
    return a == b


def solve(rows, rhs, field: Field = QQ):
    """One solution x of rows @ x = rhs, or None."""
    if not rows:
        return [] if not any(rhs) else None
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, field)
    ncols = len(rows[0])
    x = [field.zero] * ncols
    for r, p in zip(red, pivots):
        if p == ncols:
            return None
        x[p] = r[-1]
    return x


def mat_mul(a, b, field: Field = QQ):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    out = [[field.zero] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for j in range(k):
            if ai[j]:
                f = ai[j]
                bj = b[j]
                oi = out[i]
                for c in range(m):
                    if bj[c]:
                        oi[c] = oi[c] + f * bj[c]
    return out


def identity(n, field: Field = QQ):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def mat_inverse(a, field: Field = QQ):
    """Inverse of a square matrix, or None if singular."""
    n = len(a)
    aug = [list(r) + row for r, row in zip(a, identity(n, field))]
    red, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        return None
    return [r[n:] for r in red]
