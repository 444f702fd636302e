"""Exact dense linear algebra sized for desk-scale problems.

Vectors are tuples/lists of field scalars.  All routines produce canonical
output: spans are reported by their reduced echelon basis sorted by pivot
column, and kernels by the standard free-column construction, so results are
reproducible regardless of insertion order.
"""

from __future__ import annotations


class SpanTracker:
    """Incrementally maintained reduced-echelon basis of a subspace."""

    def __init__(self, field, width: int) -> None:
        self.field = field
        self.width = width
        self._rows: dict[int, list] = {}  # pivot column -> row, pivot scaled to 1

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _residual(self, vec) -> list:
        f = self.field
        sub, mul = f.sub, f.mul
        v = list(vec)
        for col, row in self._rows.items():
            c = v[col]
            if c:
                for i in range(self.width):
                    b = row[i]
                    if b:
                        v[i] = sub(v[i], mul(c, b))
        return v

    def add(self, vec) -> bool:
        """Add a vector to the span; True iff the rank grew."""
        v = self._residual(vec)
        piv = next((i for i, a in enumerate(v) if a), None)
        if piv is None:
            return False
        f = self.field
        scale = f.inv(v[piv])
        row = [f.mul(scale, a) for a in v]
        for col, r in self._rows.items():
            c = r[piv]
            if c:
                self._rows[col] = [f.sub(a, f.mul(c, b)) for a, b in zip(r, row)]
        self._rows[piv] = row
        return True

    def contains(self, vec) -> bool:
        return not any(self._residual(vec))

    def basis(self) -> list[tuple]:
        """Reduced echelon basis, rows sorted by pivot column."""
        return [tuple(self._rows[c]) for c in sorted(self._rows)]


def span_basis(vectors, field, width: int) -> list[tuple]:
    tracker = SpanTracker(field, width)
    for v in vectors:
        tracker.add(v)
    return tracker.basis()


def rref(rows, field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    width = len(mat[0])
    pivots: list[int] = []
    r = 0
    for col in range(width):
        pivot_row = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        scale = field.inv(mat[r][col])
        mat[r] = [field.mul(scale, a) for a in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                c = mat[i][col]
                mat[i] = [field.sub(a, field.mul(c, b)) for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def kernel_basis(rows, width: int, field) -> list[tuple]:
    """Canonical basis of the solution space of (rows) * x = 0."""
    reduced, pivots = rref(rows, field)
    pivot_set = set(pivots)
    free_cols = [j for j in range(width) if j not in pivot_set]
    basis = []
    for j in free_cols:
        v = [field.zero] * width
        v[j] = field.one
        for row, p in zip(reduced, pivots):
            v[p] = field.neg(row[j])
        basis.append(tuple(v))
    return basis


def solve(rows, rhs, field):
    """One solution x of (rows) * x = rhs with free variables set to 0, else None."""
    if not rows:
        return None
    width = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug, field)
    sol = [field.zero] * width
    for row, p in zip(reduced, pivots):
        if p == width:
            return None  # 0 = 1 row
        sol[p] = row[-1]
    return tuple(sol)


def intersection_dim(basis_a, basis_b, field, width: int) -> int:
    """dim(span A ∩ span B) via the rank formula."""
    ra = len(span_basis(basis_a, field, width))
    rb = len(span_basis(basis_b, field, width))
    rab = len(span_basis(list(basis_a) + list(basis_b), field, width))
    return ra + rb - rab
