"""Sparse exact square matrices over the rationals.

Entries are :class:`fractions.Fraction` and only nonzero entries are stored.
Container indexing (``m[r, c]``) is 0-based like any Python sequence; the
1-based E_{i,j} / A_{i,j} conventions live in :mod:`sopq.basis_index`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]


def as_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


class Matrix:
    """Immutable d x d matrix with exact rational entries."""

    __slots__ = ("size", "_entries", "_hash")

    def __init__(self, size: int, entries: Mapping[tuple[int, int], Scalar] = ()):
        if size < 1:
            raise ValueError("matrix size must be positive")
        clean = {}
        for (r, c), v in dict(entries).items():
            if not (0 <= r < size and 0 <= c < size):
                raise IndexError(f"entry ({r}, {c}) outside {size}x{size}")
            v = as_scalar(v)
            if v:
                clean[(r, c)] = v
        self.size = size
        self._entries = clean
        self._hash = None

    # construction ---------------------------------------------------------

    @classmethod
    def zero(cls, size: int) -> "Matrix":
        return cls(size)

    @classmethod
    def identity(cls, size: int) -> "Matrix":
        return cls(size, {(k, k): 1 for k in range(size)})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "Matrix":
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("rows do not form a square matrix")
        return cls(n, {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row)})

    @classmethod
    def from_flat(cls, size: int, coords: Sequence[Scalar]) -> "Matrix":
        if len(coords) != size * size:
            raise ValueError("coordinate vector has wrong length")
        return cls(size, {divmod(k, size): v for k, v in enumerate(coords) if v})

    @classmethod
    def _raw(cls, size: int, entries: dict) -> "Matrix":
        # entries already clean: Fraction values, nonzero, in range
        m = cls.__new__(cls)
        m.size = size
        m._entries = entries
        m._hash = None
        return m

    # access ---------------------------------------------------------------

    def __getitem__(self, rc: tuple[int, int]) -> Fraction:
        r, c = rc
        if not (0 <= r < self.size and 0 <= c < self.size):
            raise IndexError(rc)
        return self._entries.get((r, c), Fraction(0))

    def items(self):
        """Nonzero entries as ``((row, col), value)`` pairs in row-major order."""
        return sorted(self._entries.items())

    def nnz(self) -> int:
        return len(self._entries)

    def is_zero(self) -> bool:
        return not self._entries

    def rows(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.size for _ in range(self.size)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def flatten(self) -> tuple[Fraction, ...]:
        """Row-major coordinate vector of length d^2."""
        out = [Fraction(0)] * (self.size * self.size)
        for (r, c), v in self._entries.items():
            out[r * self.size + c] = v
        return tuple(out)

    def sparse_flat(self) -> dict[int, Fraction]:
        n = self.size
        return {r * n + c: v for (r, c), v in self._entries.items()}

    def submatrix(self, rows: range, cols: range) -> list[list[Fraction]]:
        return [[self[r, c] for c in cols] for r in rows]

    # arithmetic -----------------------------------------------------------

    def _check(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix):
            raise TypeError("expected Matrix")
        if other.size != self.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        out = dict(self._entries)
        for k, v in other._entries.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Matrix._raw(self.size, out)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.size, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c: Scalar) -> "Matrix":
        c = as_scalar(c)
        if not c:
            return Matrix(self.size)
        return Matrix._raw(self.size, {k: c * v for k, v in self._entries.items()})

    def __rmul__(self, c: Scalar) -> "Matrix":
        return self.scale(c)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        by_row: dict[int, list] = {}
        for (k, c), v in other._entries.items():
            by_row.setdefault(k, []).append((c, v))
        out: dict[tuple[int, int], Fraction] = {}
        for (r, k), u in self._entries.items():
            for c, v in by_row.get(k, ()):
                key = (r, c)
                out[key] = out.get(key, 0) + u * v
        return Matrix._raw(self.size, {k: v for k, v in out.items() if v})

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.size, {(c, r): v for (r, c), v in self._entries.items()})

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def trace(self) -> Fraction:
        return sum((v for (r, c), v in self._entries.items() if r == c), Fraction(0))

    # comparison -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.size == other.size and self._entries == other._entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.size, frozenset(self._entries.items())))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"({r + 1},{c + 1}): {format_scalar(v)}" for (r, c), v in self.items())
        return f"Matrix({self.size}, {{{body}}})"


def bracket(x: Matrix, y: Matrix) -> Matrix:
    """The commutator xy - yx."""
    return x @ y - y @ x


def linear_combination(terms: Iterable[tuple[Scalar, Matrix]], size: int) -> Matrix:
    out = Matrix(size)
    for c, m in terms:
        out = out + m.scale(c)
    return out


def format_scalar(v: Scalar) -> str:
    """``num/den`` with the denominator omitted when it is 1."""
    v = as_scalar(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
