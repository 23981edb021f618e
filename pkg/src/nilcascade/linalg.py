"""Exact linear algebra over Fraction matrices (lists of lists)."""

from __future__ import annotations

from fractions import Fraction


def zeros(rows: int, cols: int) -> list[list[Fraction]]:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> list[list[Fraction]]:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def mat_mul(a, b) -> list[list[Fraction]]:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            aik = ai[k]
            if aik == 0:
                continue
            bk = b[k]
            for j in range(cols):
                if bk[j] != 0:
                    oi[j] += aik * bk[j]
    return out


def row_echelon(matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Row echelon form (copy) and the list of pivot column indices."""
    m = [list(map(Fraction, row)) for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((k for k in range(r, rows) if m[k][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(rows):
            if k != r and m[k][c] != 0:
                factor = m[k][c]
                m[k] = [x - factor * y for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(matrix) -> int:
    if not matrix or not matrix[0]:
        return 0
    return len(row_echelon(matrix)[1])


def kernel_basis(matrix) -> list[list[Fraction]]:
    """Basis of the right kernel {v : matrix @ v = 0}."""
    if not matrix:
        return []
    cols = len(matrix[0])
    echelon, pivots = row_echelon(matrix)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -echelon[r][fc]
        basis.append(v)
    return basis


def det(matrix) -> Fraction:
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    m = [list(map(Fraction, row)) for row in matrix]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot = next((k for k in range(c, n) if m[k][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        result *= m[c][c]
        inv = 1 / m[c][c]
        for k in range(c + 1, n):
            if m[k][c] != 0:
                factor = m[k][c] * inv
                m[k] = [x - factor * y for x, y in zip(m[k], m[c])]
    return sign * result


class SpanBuilder:
    """Incrementally row-reduced span of coordinate vectors."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[list[Fraction]] = []  # reduced, each with a pivot
        self.pivots: list[int] = []

    def reduce(self, vector) -> list[Fraction]:
        v = list(map(Fraction, vector))
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                factor = v[p]
                v = [x - factor * y for x, y in zip(v, row)]
        return v

    def add(self, vector) -> bool:
        """Add a vector to the span; False if it was already contained."""
        v = self.reduce(vector)
        pivot = next((c for c in range(self.dim) if v[c] != 0), None)
        if pivot is None:
            return False
        inv = 1 / v[pivot]
        v = [x * inv for x in v]
        for k, row in enumerate(self.rows):
            if row[pivot] != 0:
                factor = row[pivot]
                self.rows[k] = [x - factor * y for x, y in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(pivot)
        return True

    def contains(self, vector) -> bool:
        return all(x == 0 for x in self.reduce(vector))

    @property
    def size(self) -> int:
        return len(self.rows)

    def basis(self) -> list[list[Fraction]]:
        order = sorted(range(len(self.rows)), key=lambda k: self.pivots[k])
        return [self.rows[k] for k in order]
