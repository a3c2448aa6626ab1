"""Exact integer matrices and Smith normal form with transform tracking.

Everything here is arbitrary-precision on purpose: pivot growth overflows
fixed-width integers even for small inputs.  The solver reduces A·x = b to
the diagonal case through the recorded unimodular transforms.
"""

from __future__ import annotations


class IntMatrix:
    """Immutable dense integer matrix."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, rows=None, cols=None):
        entries = tuple(tuple(int(v) for v in row) for row in entries)
        if rows is None:
            rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError("ragged or mismatched matrix data")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def zeros(cls, rows, cols):
        return cls(((0,) * cols,) * rows, rows, cols)

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def from_columns(cls, columns, rows):
        return cls(tuple(tuple(col[i] for col in columns) for i in range(rows)),
                   rows, len(columns))

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]})"

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in product")
        data = [[sum(self.entries[i][k] * other.entries[k][j]
                     for k in range(self.cols))
                 for j in range(other.cols)] for i in range(self.rows)]
        return IntMatrix(data, self.rows, other.cols)

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in difference")
        return IntMatrix([[a - b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.entries, other.entries)],
                         self.rows, self.cols)

    def transpose(self):
        # a 0 x n matrix flips to n rows of width zero, not to nothing
        return IntMatrix(tuple(zip(*self.entries)) if self.entries
                         else ((),) * self.cols,
                         self.cols, self.rows)

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        return IntMatrix(tuple(a + b for a, b in zip(self.entries, other.entries)),
                         self.rows, self.cols + other.cols)

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return IntMatrix(self.entries + other.entries,
                         self.rows + other.rows, self.cols)

    def apply(self, vector):
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(self.entries[i][k] * vector[k] for k in range(self.cols))
                     for i in range(self.rows))

    def is_zero(self):
        return all(v == 0 for row in self.entries for v in row)

    def diagonal(self):
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))


def smith_normal_form(matrix):
    """Return (U, D, V) with U·A·V = D diagonal, d_i >= 0 and d_i | d_{i+1}.

    Classic pivoting by smallest absolute value with a divisibility repair
    step; U and V are built from the same elementary operations, so the
    identity U·A·V = D is re-checked exactly before returning.
    """
    r, c = matrix.rows, matrix.cols
    m = [list(row) for row in matrix.entries]
    u = [list(row) for row in IntMatrix.identity(r).entries]
    v = [list(row) for row in IntMatrix.identity(c).entries]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        m[dst] = [a + q * b for a, b in zip(m[dst], m[src])]
        u[dst] = [a + q * b for a, b in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in m:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        m[i] = [-a for a in m[i]]
        u[i] = [-a for a in u[i]]

    for t in range(min(r, c)):
        while True:
            pivot = None
            for i in range(t, r):
                for j in range(t, c):
                    if m[i][j] and (pivot is None
                                    or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            if pivot != (t, t):
                if pivot[0] != t:
                    swap_rows(t, pivot[0])
                if pivot[1] != t:
                    swap_cols(t, pivot[1])
            dirty = False
            for i in range(t + 1, r):
                if m[i][t]:
                    add_row(i, t, -(m[i][t] // m[t][t]))
                    if m[i][t]:
                        dirty = True
            for j in range(t + 1, c):
                if m[t][j]:
                    add_col(j, t, -(m[t][j] // m[t][t]))
                    if m[t][j]:
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if m[i][j] % m[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if t < r and t < c and m[t][t] < 0:
            negate_row(t)

    um = IntMatrix(u, r, r)
    dm = IntMatrix(m, r, c)
    vm = IntMatrix(v, c, c)
    if (um @ matrix) @ vm != dm:
        raise AssertionError("normal form transforms are inconsistent")
    return um, dm, vm


def solve(matrix, rhs):
    """One integer solution x of A·x = b, or None.

    rhs may be a vector (length = rows) or an IntMatrix of stacked columns;
    the result matches the input shape.
    """
    if isinstance(rhs, IntMatrix):
        cols = []
        for j in range(rhs.cols):
            x = solve(matrix, rhs.column(j))
            if x is None:
                return None
            cols.append(x)
        return IntMatrix.from_columns(cols, matrix.cols)
    u, d, v = smith_normal_form(matrix)
    ub = u.apply(tuple(rhs))
    y = [0] * matrix.cols
    for i in range(matrix.rows):
        di = d.entries[i][i] if i < min(matrix.rows, matrix.cols) else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di:
                return None
            y[i] = ub[i] // di
    return v.apply(tuple(y))


def kernel_basis(matrix):
    """Columns generating {x : A·x = 0}, as an IntMatrix (cols x k)."""
    _, d, v = smith_normal_form(matrix)
    free = [j for j in range(matrix.cols)
            if j >= min(matrix.rows, matrix.cols) or d.entries[j][j] == 0]
    return IntMatrix.from_columns([v.column(j) for j in free], matrix.cols)
