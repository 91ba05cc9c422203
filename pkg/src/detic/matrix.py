"""Dense matrices over a :class:`~detic.field.Field`.

Entries live in a tuple of row tuples.  Matrices with zero rows or zero
columns are ordinary values: ``Matrix.zeros(F, 2, 0)`` is a 2x0 matrix and
products with it behave as the shapes dictate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .field import Field


class ShapeError(ValueError):
    pass


class Matrix:
    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: Iterable[Iterable], nrows: int | None = None,
                 ncols: int | None = None):
        data = tuple(tuple(field(x) for x in row) for row in rows)
        if nrows is None:
            nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if len(data) != nrows:
            raise ShapeError(f"expected {nrows} rows, got {len(data)}")
        for row in data:
            if len(row) != ncols:
                raise ShapeError(f"ragged row: expected {ncols} entries, got {len(row)}")
        self._set(field, nrows, ncols, data)

    def _set(self, field, nrows, ncols, data):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", data)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, field: Field, nrows: int, ncols: int, data) -> Matrix:
        # Trusted constructor: entries already reduced into the field.
        m = cls.__new__(cls)
        m._set(field, nrows, ncols, tuple(tuple(r) for r in data))
        return m

    # -- constructors --------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> Matrix:
        z = field.zero
        return cls._raw(field, nrows, ncols, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls._raw(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int) -> Matrix:
        cols = [[field(x) for x in c] for c in columns]
        for c in cols:
            if len(c) != nrows:
                raise ShapeError(f"column of length {len(c)} in a {nrows}-row matrix")
        data = [[c[i] for c in cols] for i in range(nrows)]
        return cls._raw(field, nrows, len(cols), data)

    @classmethod
    def column(cls, field: Field, vec: Sequence) -> Matrix:
        return cls.from_columns(field, [vec], len(vec))

    # -- basic protocol ------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix[{self.field}]({self.nrows}x{self.ncols}: [{body}])"

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def columns(self) -> list[tuple]:
        return [tuple(self.rows[i][j] for i in range(self.nrows)) for j in range(self.ncols)]

    def col(self, j: int) -> tuple:
        return tuple(self.rows[i][j] for i in range(self.nrows))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    # -- arithmetic ----------------------------------------------------

    @property
    def T(self) -> Matrix:
        data = [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return Matrix._raw(self.field, self.ncols, self.nrows, data)

    def _check_field(self, other: Matrix):
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_field(other)
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.field.p
        cols = other.columns()
        zero = self.field.zero
        data = []
        for row in self.rows:
            out = []
            for c in cols:
                s = sum((a * b for a, b in zip(row, c) if a and b), zero)
                out.append(s % p if p is not None else s)
            data.append(out)
        return Matrix._raw(self.field, self.nrows, other.ncols, data)

    def __add__(self, other: Matrix) -> Matrix:
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        p = self.field.p
        data = [[(a + b) % p if p is not None else a + b for a, b in zip(r, s)]
                for r, s in zip(self.rows, other.rows)]
        return Matrix._raw(self.field, self.nrows, self.ncols, data)

    def __neg__(self) -> Matrix:
        p = self.field.p
        data = [[(-a) % p if p is not None else -a for a in r] for r in self.rows]
        return Matrix._raw(self.field, self.nrows, self.ncols, data)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, c) -> Matrix:
        c = self.field(c)
        p = self.field.p
        data = [[a * c % p if p is not None else a * c for a in r] for r in self.rows]
        return Matrix._raw(self.field, self.nrows, self.ncols, data)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix-vector product, returned as a tuple."""
        if len(vec) != self.ncols:
            raise ShapeError(f"vector of length {len(vec)} for a {self.shape} matrix")
        v = [self.field(x) for x in vec]
        p = self.field.p
        zero = self.field.zero
        out = []
        for row in self.rows:
            s = sum((a * b for a, b in zip(row, v)), zero)
            out.append(s % p if p is not None else s)
        return tuple(out)

    # -- slicing and assembly -----------------------------------------

    def take_rows(self, idx: Sequence[int]) -> Matrix:
        return Matrix._raw(self.field, len(idx), self.ncols, [self.rows[i] for i in idx])

    def take_cols(self, idx: Sequence[int]) -> Matrix:
        data = [[r[j] for j in idx] for r in self.rows]
        return Matrix._raw(self.field, self.nrows, len(idx), data)

    def row_slice(self, start: int, stop: int) -> Matrix:
        return self.take_rows(range(start, stop))

    def col_slice(self, start: int, stop: int) -> Matrix:
        return self.take_cols(range(start, stop))

    def to_json(self) -> list[list]:
        if self.field.p is not None:
            return self.tolist()
        return [[_frac_str(x) for x in r] for r in self.rows]


def _frac_str(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def hstack(*mats: Matrix) -> Matrix:
    if not mats:
        raise ValueError("hstack of nothing")
    field, n = mats[0].field, mats[0].nrows
    for m in mats:
        if m.field != field or m.nrows != n:
            raise ShapeError("hstack needs equal row counts over one field")
    data = [sum((m.rows[i] for m in mats), ()) for i in range(n)]
    return Matrix._raw(field, n, sum(m.ncols for m in mats), data)


def vstack(*mats: Matrix) -> Matrix:
    if not mats:
        raise ValueError("vstack of nothing")
    field, n = mats[0].field, mats[0].ncols
    for m in mats:
        if m.field != field or m.ncols != n:
            raise ShapeError("vstack needs equal column counts over one field")
    data = [r for m in mats for r in m.rows]
    return Matrix._raw(field, len(data), n, data)


def block(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a block matrix from a grid of conformable blocks."""
    return vstack(*[hstack(*row) for row in grid])


def block_diag(*mats: Matrix) -> Matrix:
    field = mats[0].field
    total = sum(m.ncols for m in mats)
    out = []
    offset = 0
    for m in mats:
        left = Matrix.zeros(field, m.nrows, offset)
        right = Matrix.zeros(field, m.nrows, total - offset - m.ncols)
        out.append(hstack(left, m, right))
        offset += m.ncols
    return vstack(*out)


def random_matrix(field: Field, nrows: int, ncols: int, rng) -> Matrix:
    data = [[field.random(rng) for _ in range(ncols)] for _ in range(nrows)]
    return Matrix._raw(field, nrows, ncols, data)
