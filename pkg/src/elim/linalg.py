"""Exact linear algebra over the rationals.

Scalars are ``fractions.Fraction`` throughout; no floating point enters any
computation here.  Matrices are small and dense (desk scale), stored
immutably.  All pivoting is deterministic leftmost-greedy so that every
downstream quantity (torsions, resultants) is reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import ParseError

Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse a canonical rational literal: ``"p"`` or ``"p/q"``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {text!r}") from exc


def format_rational(x: Fraction) -> str:
    """Canonical string form: ``"p"`` for integers, else ``"p/q"``."""
    return str(x)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix of rationals, stored as a tuple of row tuples."""

    data: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def from_rows(rows) -> "Matrix":
        converted = tuple(tuple(Fraction(x) for x in row) for row in rows)
        if converted:
            width = len(converted[0])
            if any(len(row) != width for row in converted):
                raise ValueError("rows have differing lengths")
        return Matrix(converted)

    @staticmethod
    def identity(n: int) -> "Matrix":
        one, zero = Fraction(1), Fraction(0)
        return Matrix(tuple(tuple(one if i == j else zero for j in range(n))
                            for i in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        z = Fraction(0)
        return Matrix(tuple((z,) * cols for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return len(self.data[0]) if self.data else 0

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.data)

    def columns(self, indices) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in indices]

    def transpose(self) -> "Matrix":
        return Matrix(tuple(zip(*self.data))) if self.data else self

    def scale(self, mu) -> "Matrix":
        mu = Fraction(mu)
        return Matrix(tuple(tuple(mu * x for x in row) for row in self.data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = other.transpose().data
        return Matrix(tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.data))

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [format_rational(x) for row in self.data for x in row],
        }

    @staticmethod
    def from_json(obj) -> "Matrix":
        try:
            r, c = int(obj["rows"]), int(obj["cols"])
            entries = obj["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("matrix JSON needs rows/cols/entries") from exc
        if r < 0 or c < 0 or len(entries) != r * c:
            raise ParseError("matrix JSON entry count does not match rows*cols")
        vals = [parse_rational(e) for e in entries]
        return Matrix(tuple(tuple(vals[i * c:(i + 1) * c]) for i in range(r)))


def det(m: Matrix) -> Fraction:
    """Exact determinant via fraction-free Bareiss elimination.

    Rows are first scaled to integers (the scale is divided back out), so the
    inner loop runs on plain Python ints.
    """
    if m.rows != m.cols:
        raise ValueError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)

    scale = Fraction(1)
    a: list[list[int]] = []
    for row in m.data:
        mult = lcm(*(x.denominator for x in row)) if row else 1
        scale *= mult
        a.append([int(x * mult) for x in row])

    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        for i in range(k + 1, n):
            ai, ak = a[i], a[k]
            aik = ai[k]
            for j in range(k + 1, n):
                ai[j] = (pivot * ai[j] - aik * ak[j]) // prev
            ai[k] = 0
        prev = pivot
    return Fraction(sign * a[n - 1][n - 1]) / scale


class _Echelon:
    """Incremental row-echelon accumulator for rank/span queries."""

    def __init__(self, dim: int):
        self.dim = dim
        self.pivots: list[tuple[int, list[Fraction]]] = []  # (pivot col, reduced row)

    def reduce(self, vec) -> list[Fraction]:
        v = [Fraction(x) for x in vec]
        for col, row in self.pivots:
            if v[col]:
                f = v[col]
                for j in range(self.dim):
                    v[j] -= f * row[j]
        return v

    def add(self, vec) -> bool:
        """Insert ``vec`` if it enlarges the span; return whether it did."""
        v = self.reduce(vec)
        for col, x in enumerate(v):
            if x:
                inv = 1 / x
                self.pivots.append((col, [y * inv for y in v]))
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(m: Matrix) -> int:
    """Exact rank of the matrix."""
    ech = _Echelon(m.cols)
    for row in m.data:
        ech.add(row)
    return ech.rank


def select_independent_columns(m: Matrix, forbidden=None) -> list[int]:
    """Leftmost-greedy choice of ``rank(m)`` independent column indices.

    Columns in ``forbidden`` are skipped; if the remaining columns cannot
    reach the full rank of ``m``, this raises ``ValueError``.
    """
    forbidden = frozenset(forbidden or ())
    target = rank(m)
    ech = _Echelon(m.rows)
    chosen: list[int] = []
    for j in range(m.cols):
        if j in forbidden:
            continue
        if ech.add(m.column(j)):
            chosen.append(j)
            if len(chosen) == target:
                return chosen
    raise ValueError(
        f"rank {target} unattainable: only {len(chosen)} independent columns allowed")


def complete_to_basis(columns, dim: int) -> list[int]:
    """Leftmost-greedy standard-basis indices extending ``columns`` to a basis.

    ``columns`` is a list of length-``dim`` vectors that must already be
    independent.
    """
    ech = _Echelon(dim)
    for k, col in enumerate(columns):
        if len(col) != dim:
            raise ValueError(f"column {k} has length {len(col)}, expected {dim}")
        if not ech.add(col):
            raise ValueError("given columns are linearly dependent")
    chosen: list[int] = []
    need = dim - len(columns)
    zero, one = Fraction(0), Fraction(1)
    for j in range(dim):
        if len(chosen) == need:
            break
        basis_vec = [one if i == j else zero for i in range(dim)]
        if ech.add(basis_vec):
            chosen.append(j)
    return chosen
