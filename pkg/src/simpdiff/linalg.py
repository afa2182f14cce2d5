"""Exact sparse linear algebra over the rationals.

Vectors are ``dict[int, Fraction]`` with no stored zeros.  Matrices keep one
sparse dict per row.  Everything here is plain Gaussian elimination; the
matrices met in practice are at most a few hundred columns wide.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Vec = Dict[int, Fraction]


def vec_add(a: Vec, b: Vec, scale: Fraction = Fraction(1)) -> Vec:
    """Return ``a + scale * b`` as a new vector."""
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, 0) + scale * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def vec_iadd(a: Vec, b: Vec, scale: Fraction = Fraction(1)) -> None:
    for k, v in b.items():
        nv = a.get(k, 0) + scale * v
        if nv:
            a[k] = nv
        else:
            a.pop(k, None)


def vec_scale(a: Vec, c: Fraction) -> Vec:
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


class Matrix:
    """A sparse ``nrows x ncols`` rational matrix stored by rows."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Optional[Dict[int, Vec]] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: Dict[int, Vec] = {}
        if rows:
            for i, r in rows.items():
                r = {j: Fraction(v) for j, v in r.items() if v}
                if r:
                    self.rows[i] = r

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], ncols: Optional[int] = None) -> "Matrix":
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        rows = {}
        for i, row in enumerate(data):
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            rows[i] = {j: Fraction(v) for j, v in enumerate(row) if v}
        return cls(nrows, ncols, rows)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Vec]) -> "Matrix":
        m = cls(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    m.rows.setdefault(i, {})[j] = Fraction(v)
        return m

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for i, r in self.rows.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    def get(self, i: int, j: int) -> Fraction:
        return self.rows.get(i, {}).get(j, Fraction(0))

    def set(self, i: int, j: int, value) -> None:
        value = Fraction(value)
        if value:
            self.rows.setdefault(i, {})[j] = value
        else:
            r = self.rows.get(i)
            if r is not None:
                r.pop(j, None)
                if not r:
                    del self.rows[i]

    def column(self, j: int) -> Vec:
        return {i: r[j] for i, r in self.rows.items() if j in r}

    def columns(self) -> List[Vec]:
        cols: List[Vec] = [{} for _ in range(self.ncols)]
        for i, r in self.rows.items():
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def transpose(self) -> "Matrix":
        t = Matrix(self.ncols, self.nrows)
        for i, r in self.rows.items():
            for j, v in r.items():
                t.rows.setdefault(j, {})[i] = v
        return t

    def apply(self, v: Vec) -> Vec:
        """Matrix times column vector."""
        out: Vec = {}
        for i, r in self.rows.items():
            s = Fraction(0)
            if len(r) < len(v):
                for j, a in r.items():
                    b = v.get(j)
                    if b:
                        s += a * b
            else:
                for j, b in v.items():
                    a = r.get(j)
                    if a:
                        s += a * b
            if s:
                out[i] = s
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = Matrix(self.nrows, other.ncols)
        for i, r in self.rows.items():
            acc: Vec = {}
            for k, a in r.items():
                orow = other.rows.get(k)
                if orow:
                    vec_iadd(acc, orow, a)
            if acc:
                out.rows[i] = acc
        return out

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, Fraction(1))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, Fraction(-1))

    def _combine(self, other: "Matrix", c: Fraction) -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = Matrix(self.nrows, self.ncols, {i: dict(r) for i, r in self.rows.items()})
        for i, r in other.rows.items():
            acc = out.rows.setdefault(i, {})
            vec_iadd(acc, r, c)
            if not acc:
                del out.rows[i]
        return out

    def scale(self, c) -> "Matrix":
        c = Fraction(c)
        if not c:
            return Matrix(self.nrows, self.ncols)
        return Matrix(self.nrows, self.ncols, {i: vec_scale(r, c) for i, r in self.rows.items()})

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols}, nnz={sum(len(r) for r in self.rows.values())})"


class EchelonBasis:
    """Incrementally maintained echelon basis of a subspace of Q^n.

    ``reduce`` returns the remainder of a vector after elimination against the
    current basis; a zero remainder means membership.
    """

    def __init__(self):
        self.pivots: Dict[int, Vec] = {}
        # insertion order of pivots, so callers can map back to added vectors
        self.order: List[int] = []

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, v: Vec) -> Vec:
        v = dict(v)
        # eliminate pivots present in v; each pivot row has its pivot as
        # smallest index, so processing by increasing index terminates
        while True:
            hit = [k for k in v if k in self.pivots]
            if not hit:
                return v
            k = min(hit)
            vec_iadd(v, self.pivots[k], -v[k])

    def add(self, v: Vec) -> bool:
        """Add ``v`` to the span; return True if the dimension grew."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {k: c * inv for k, c in r.items()}
        self.pivots[p] = r
        self.order.append(p)
        return True

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def basis(self) -> List[Vec]:
        return [self.pivots[p] for p in self.order]


def rank_of_vectors(vectors: Iterable[Vec]) -> int:
    e = EchelonBasis()
    for v in vectors:
        e.add(v)
    return len(e)


def rref(m: Matrix) -> Tuple[List[Vec], List[int]]:
    """Fully reduced row echelon form: (rows, pivot columns), pivots increasing."""
    work = [dict(r) for _, r in sorted(m.rows.items()) if r]
    pivots: List[int] = []
    reduced: List[Vec] = []
    for row in work:
        for prow, p in zip(reduced, pivots):
            c = row.get(p)
            if c:
                vec_iadd(row, prow, -c)
        if not row:
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {k: c * inv for k, c in row.items()}
        for idx, prow in enumerate(reduced):
            c = prow.get(p)
            if c:
                vec_iadd(prow, row, -c)
        reduced.append(row)
        pivots.append(p)
    order = sorted(range(len(pivots)), key=lambda i: pivots[i])
    return [reduced[i] for i in order], [pivots[i] for i in order]


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix) -> List[Vec]:
    """Basis of ``{v : m v = 0}``, one vector per free column, unit on it."""
    return nullspace_with_free(m)[0]


def nullspace_with_free(m: Matrix) -> Tuple[List[Vec], List[int]]:
    """Like :func:`nullspace`, also returning the free column of each vector."""
    rows, pivots = rref(m)
    pivset = set(pivots)
    basis: List[Vec] = []
    frees: List[int] = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        v: Vec = {free: Fraction(1)}
        for row, p in zip(rows, pivots):
            c = row.get(free)
            if c:
                v[p] = -c
        basis.append(v)
        frees.append(free)
    return basis, frees


def solve(m: Matrix, b: Vec) -> Optional[Vec]:
    """One solution of ``m x = b`` or None when inconsistent."""
    aug = Matrix(m.nrows, m.ncols + 1, {i: dict(r) for i, r in m.rows.items()})
    for i, v in b.items():
        aug.rows.setdefault(i, {})[m.ncols] = Fraction(v)
    rows, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x: Vec = {}
    for row, p in zip(rows, pivots):
        c = row.get(m.ncols)
        if c:
            x[p] = c
    return x


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    n = m.nrows
    aug = Matrix(n, 2 * n, {i: dict(r) for i, r in m.rows.items()})
    for i in range(n):
        aug.rows.setdefault(i, {})[n + i] = Fraction(1)
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    out = Matrix(n, n)
    for row, p in zip(rows, pivots):
        if p >= n:
            raise ValueError("matrix is singular")
        r = {k - n: v for k, v in row.items() if k >= n}
        if r:
            out.rows[p] = r
    return out


def column_space(m: Matrix) -> EchelonBasis:
    e = EchelonBasis()
    for col in m.columns():
        if col:
            e.add(col)
    return e


def subspace_dimension(vectors: Sequence[Vec]) -> int:
    return rank_of_vectors(vectors)
