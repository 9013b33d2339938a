"""Dense matrices over a :class:`ScalarField` with deterministic Gauss-Jordan elimination.

Pivot rule: in the leftmost column not yet resolved, take the first remaining
row whose entry is nonzero.  No magnitude heuristics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .scalar import FieldError, ScalarExpr, ScalarField


class SingularMatrix(FieldError):
    pass


@dataclass(frozen=True)
class RowEchelon:
    rref: "ExactMatrix"
    pivots: tuple[int, ...]
    transform: "ExactMatrix"  # transform @ original == rref

    @property
    def rank(self) -> int:
        return len(self.pivots)


class ExactMatrix:
    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: ScalarField, rows: Sequence[Sequence[ScalarExpr]], ncols: int | None = None):
        rows = tuple(tuple(field.const(e) if not isinstance(e, ScalarExpr) else e for e in r)
                     for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise FieldError("matrix rows have unequal lengths")
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def zeros(cls, field, n, m):
        return cls(field, [[field.zero] * m for _ in range(n)], m)

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field, cols: Sequence[Sequence[ScalarExpr]], nrows: int | None = None):
        if not cols:
            return cls(field, [[] for _ in range(nrows or 0)], 0)
        return cls(field, [list(r) for r in zip(*cols)], len(cols))

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j) -> tuple[ScalarExpr, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in r) for r in self.rows)
        return f"ExactMatrix[{body}]"

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, [list(c) for c in zip(*self.rows)] if self.rows else [],
                           self.nrows)

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise FieldError("shape mismatch in matrix product")
            cols = other.columns()
            return ExactMatrix(self.field, [[dot(r, c) for c in cols] for r in self.rows], other.ncols)
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise FieldError("shape mismatch in matrix-vector product")
        return tuple(dot(r, vec) for r in self.rows)

    def map(self, fn) -> "ExactMatrix":
        return ExactMatrix(self.field, [[fn(e) for e in r] for r in self.rows], self.ncols)

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i))

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.rows for e in r)

    # -- elimination --------------------------------------------------------
    def echelon(self) -> RowEchelon:
        """Reduced row-echelon form together with the accumulated row transform."""
        f = self.field
        a = [list(r) for r in self.rows]
        t = [[f.one if i == j else f.zero for j in range(self.nrows)] for i in range(self.nrows)]
        pivots = []
        r = 0
        for c in range(self.ncols):
            if r == self.nrows:
                break
            p = next((i for i in range(r, self.nrows) if not a[i][c].is_zero()), None)
            if p is None:
                continue
            a[r], a[p] = a[p], a[r]
            t[r], t[p] = t[p], t[r]
            inv = a[r][c].inverse()
            if not (inv == 1):
                a[r] = [e * inv for e in a[r]]
                t[r] = [e * inv for e in t[r]]
            for i in range(self.nrows):
                if i != r and not a[i][c].is_zero():
                    k = a[i][c]
                    a[i] = [x - k * y for x, y in zip(a[i], a[r])]
                    t[i] = [x - k * y for x, y in zip(t[i], t[r])]
            pivots.append(c)
            r += 1
        return RowEchelon(ExactMatrix(f, a, self.ncols), tuple(pivots),
                          ExactMatrix(f, t, self.nrows))

    def rank(self) -> int:
        return self.echelon().rank

    def nullspace(self, ech: RowEchelon | None = None) -> list[tuple[ScalarExpr, ...]]:
        """Basis of the right nullspace, one vector per free column (in column order)."""
        ech = ech or self.echelon()
        f = self.field
        free = [c for c in range(self.ncols) if c not in ech.pivots]
        basis = []
        for fc in free:
            v = [f.zero] * self.ncols
            v[fc] = f.one
            for row, pc in enumerate(ech.pivots):
                v[pc] = -ech.rref[row, fc]
            basis.append(tuple(v))
        return basis

    def solve(self, rhs: Sequence[ScalarExpr]) -> tuple[ScalarExpr, ...] | None:
        """A particular solution of ``self @ x == rhs`` with free unknowns set to zero.

        Returns ``None`` when the system is inconsistent.
        """
        rhs = [self.field.const(e) for e in rhs]
        if len(rhs) != self.nrows:
            raise FieldError("right-hand side has wrong length")
        ech = self.echelon()
        b = ech.transform @ rhs
        if any(not e.is_zero() for e in b[ech.rank:]):
            return None
        x = [self.field.zero] * self.ncols
        for row, pc in enumerate(ech.pivots):
            x[pc] = b[row]
        return tuple(x)

    def inverse(self) -> "ExactMatrix":
        if self.nrows != self.ncols:
            raise FieldError("only square matrices can be inverted")
        ech = self.echelon()
        if ech.rank < self.nrows:
            raise SingularMatrix("matrix is singular over the fraction field")
        return ech.transform

    def det(self) -> ScalarExpr:
        """Determinant by elimination (sign tracked through row swaps)."""
        if self.nrows != self.ncols:
            raise FieldError("determinant of a non-square matrix")
        f = self.field
        a = [list(r) for r in self.rows]
        n = self.nrows
        det = f.one
        for c in range(n):
            p = next((i for i in range(c, n) if not a[i][c].is_zero()), None)
            if p is None:
                return f.zero
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            piv = a[c][c]
            det = det * piv
            inv = piv.inverse()
            for i in range(c + 1, n):
                if not a[i][c].is_zero():
                    k = a[i][c] * inv
                    a[i] = [x - k * y for x, y in zip(a[i], a[c])]
        return det


def dot(u: Sequence[ScalarExpr], v: Sequence[ScalarExpr], field: ScalarField | None = None) -> ScalarExpr:
    acc = None
    for a, b in zip(u, v):
        if a.is_zero() or b.is_zero():
            continue
        term = a * b
        acc = term if acc is None else acc + term
    if acc is None:
        return field.zero if field is not None else (u[0] if u else v[0]).field.zero
    return acc


def exact_nullspace(m: ExactMatrix) -> tuple[int, list[tuple[ScalarExpr, ...]]]:
    """``(rank, basis)`` of the right nullspace of ``m``."""
    ech = m.echelon()
    return ech.rank, m.nullspace(ech)
