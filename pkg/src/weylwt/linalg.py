"""Small exact linear algebra over Q on dense lists of Fractions."""

from __future__ import annotations

from fractions import Fraction


def rref(rows: list[list]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((k for k in range(r, len(m)) if m[k][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c]:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list[list]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: list[list], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0} for A given by its rows."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(x)
    return basis


def complement_of_span(rows: list[list], n: int) -> list[int]:
    """Standard basis indices whose vectors extend a basis of span(rows) to Q^n."""
    chosen = []
    current = [list(r) for r in rows]
    r = rank(current) if current else 0
    for i in range(n):
        if r == n:
            break
        e = [Fraction(int(i == j)) for j in range(n)]
        if rank(current + [e]) > r:
            current.append(e)
            chosen.append(i)
            r += 1
    return chosen


def coordinates(basis: list[list], v: list) -> list[Fraction]:
    """Coefficients c with v = sum c_k basis_k; raises if v is not in the span."""
    k = len(basis)
    if k == 0:
        if any(v):
            raise ValueError("vector is not in the span")
        return []
    n = len(v)
    # columns are basis vectors: solve B c = v via rref of [B | v]
    aug = [[Fraction(basis[c][r]) for c in range(k)] + [Fraction(v[r])] for r in range(n)]
    red, pivots = rref(aug)
    if k in pivots:
        raise ValueError("vector is not in the span")
    c = [Fraction(0)] * k
    for row, pc in zip(red, pivots):
        c[pc] = row[k]
    return c
