"""Exact linear algebra on coordinate vectors.

Elimination is fraction-free: rows are kept as sparse primitive integer
vectors and only the final echelon basis is normalized to rationals with
leading entry 1.  That final reduced echelon form is unique for a subspace,
so two bases of the same span compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

from .matrix import Matrix, as_scalar

Vector = Union[Sequence, Mapping[int, object]]


class DimensionMismatch(ValueError):
    pass


# --- sparse integer rows ------------------------------------------------------


def _sparse(v: Vector, n: int | None = None) -> dict[int, Fraction]:
    if isinstance(v, Mapping):
        out = {int(k): as_scalar(x) for k, x in v.items()}
        if n is not None and any(not 0 <= k < n for k in out):
            raise DimensionMismatch("sparse index outside ambient dimension")
        return {k: x for k, x in out.items() if x}
    if n is not None and len(v) != n:
        raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {n}")
    return {k: as_scalar(x) for k, x in enumerate(v) if x}


def _integral(v: Mapping[int, Fraction]) -> dict[int, int]:
    if not v:
        return {}
    den = 1
    for x in v.values():
        den = lcm(den, x.denominator)
    return _primitive({k: int(x * den) for k, x in v.items()})


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        return {k: x // g for k, x in row.items()}
    return row


def _combine(a: int, row: dict[int, int], b: int, other: dict[int, int]) -> dict[int, int]:
    """a*row - b*other, zeros dropped."""
    out = {k: a * x for k, x in row.items()} if a != 1 else dict(row)
    for k, x in other.items():
        s = out.get(k, 0) - b * x
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


class _Echelon:
    """Incremental fraction-free echelon form over sparse integer rows.

    With ``reduced=True`` every pivot column is cleared from all other rows
    (reduced echelon form); otherwise only forward elimination is done.
    """

    def __init__(self, ncols: int, reduced: bool = True):
        self.ncols = ncols
        self.reduced = reduced
        self.rows: dict[int, dict[int, int]] = {}

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        rows = self.rows
        if self.reduced:
            for c in sorted(k for k in row if k in rows):
                a = row.get(c)
                if a:
                    row = self._eliminate(row, c, a)
            return _primitive(row)
        last = -1
        while True:
            cands = [k for k in row if k > last and k in rows]
            if not cands:
                return _primitive(row)
            c = min(cands)
            row = self._eliminate(row, c, row[c])
            last = c

    def _eliminate(self, row, c, a):
        piv = self.rows[c]
        b = piv[c]
        g = gcd(a, b)
        return _combine(b // g, row, a // g, piv)

    def add(self, row: dict[int, int], limit: int | None = None) -> dict[int, int]:
        """Insert ``row``; return its reduced form (empty if it was dependent).

        Columns >= ``limit`` never become pivots; a row whose reduced form
        lives entirely there is returned without being inserted.
        """
        r = self.reduce(row)
        pcols = [k for k in r if limit is None or k < limit]
        if not pcols:
            return r
        p = min(pcols)
        if r[p] < 0:
            r = {k: -x for k, x in r.items()}
        if self.reduced:
            for c, other in list(self.rows.items()):
                a = other.get(p)
                if a:
                    g = gcd(a, r[p])
                    self.rows[c] = _primitive(_combine(r[p] // g, other, a // g, r))
        self.rows[p] = r
        return r

    def __len__(self) -> int:
        return len(self.rows)

    def normalized(self) -> list[dict[int, Fraction]]:
        out = []
        for p in sorted(self.rows):
            r = self.rows[p]
            lead = r[p]
            out.append({k: Fraction(x, lead) for k, x in r.items()})
        return out


# --- canonical bases ----------------------------------------------------------


@dataclass(frozen=True)
class VectorSpaceBasis:
    """Canonical (reduced row echelon) basis of a subspace of Q^n."""

    ambient_dim: int
    vectors: tuple[tuple[Fraction, ...], ...] = ()

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Vector] = ()) -> "VectorSpaceBasis":
        ech = _Echelon(ambient_dim)
        for v in vectors:
            ech.add(_integral(_sparse(v, ambient_dim)))
        return cls._from_echelon(ech)

    @classmethod
    def _from_echelon(cls, ech: _Echelon) -> "VectorSpaceBasis":
        n = ech.ncols
        dense = []
        for row in ech.normalized():
            v = [Fraction(0)] * n
            for k, x in row.items():
                v[k] = x
            dense.append(tuple(v))
        return cls(n, tuple(dense))

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(k for k, x in enumerate(v) if x) for v in self.vectors)

    def _echelon(self) -> _Echelon:
        ech = _Echelon(self.ambient_dim)
        for v in self.vectors:
            r = _integral(_sparse(v))
            ech.rows[min(r)] = r
        return ech

    def contains(self, v: Vector) -> bool:
        return not self._echelon().reduce(_integral(_sparse(v, self.ambient_dim)))

    def coordinates(self, v: Vector) -> tuple[Fraction, ...]:
        """Coefficients of ``v`` against ``self.vectors``; raises if v is outside the span."""
        sv = _sparse(v, self.ambient_dim)
        if not self.contains(sv):
            raise ValueError("vector is not in the span")
        return tuple(sv.get(p, Fraction(0)) for p in self.pivots)

    def extend(self, v: Vector) -> "VectorSpaceBasis":
        ech = self._echelon()
        ech.add(_integral(_sparse(v, self.ambient_dim)))
        return VectorSpaceBasis._from_echelon(ech)


def _ambient(vectors: Sequence[Vector]) -> int | None:
    dims = {len(v) for v in vectors if not isinstance(v, Mapping)}
    if len(dims) > 1:
        raise DimensionMismatch(f"vectors of differing lengths {sorted(dims)}")
    return dims.pop() if dims else None


def rank(vectors: Sequence[Vector]) -> int:
    """Dimension of the span of ``vectors``."""
    vectors = list(vectors)
    n = _ambient(vectors)
    ech = _Echelon(n or 0, reduced=False)
    for v in vectors:
        ech.add(_integral(_sparse(v, n)))
    return len(ech)


def in_span(v: Vector, basis: VectorSpaceBasis) -> bool:
    return basis.contains(v)


def extend_span(basis: VectorSpaceBasis, v: Vector) -> VectorSpaceBasis:
    return basis.extend(v)


def linear_relations(vectors: Sequence[Vector]) -> list[dict[int, Fraction]]:
    """Basis of {c : sum_k c_k v_k = 0}, each relation as a sparse dict over k."""
    vectors = list(vectors)
    n = _ambient(vectors)
    if n is None:
        n = 1 + max((max(v) for v in vectors if v), default=-1)
    m = len(vectors)
    ech = _Echelon(n + m, reduced=False)
    relations = []
    for k, v in enumerate(vectors):
        row = _tagged(v, n, k)
        r = ech.add(row, limit=n)
        if r and min(r) >= n:
            relations.append({c - n: Fraction(x) for c, x in r.items()})
    return relations


def _tagged(v: Vector, n: int, k: int) -> dict[int, int]:
    sv = _sparse(v, n)
    den = 1
    for x in sv.values():
        den = lcm(den, x.denominator)
    row = {c: int(x * den) for c, x in sv.items()}
    row[n + k] = den
    return row


def kernel(rows: Sequence[Vector], ncols: int) -> VectorSpaceBasis:
    """Canonical basis of {x in Q^ncols : r . x = 0 for every r in rows}."""
    ech = _Echelon(ncols)
    for r in rows:
        ech.add(_integral(_sparse(r, ncols)))
    pivots = ech.rows
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for p, row in pivots.items():
            if f in row:
                x[p] = Fraction(-row[f], row[p])
        out.append(x)
    return VectorSpaceBasis.span(ncols, out)


def _as_matrix(m) -> Matrix:
    return m if isinstance(m, Matrix) else Matrix.from_rows(m)


def solve_commutant(maps: Sequence, n: int | None = None) -> VectorSpaceBasis:
    """Basis of {T : TM = MT for all M in maps}, T flattened row-major.

    The kernel of the stacked system is narrowed one operator at a time:
    the candidate space is parameterized by its current basis and each new
    operator only adds linear relations among those parameters.
    """
    mats = [_as_matrix(m) for m in maps]
    sizes = {m.size for m in mats}
    if n is not None:
        sizes.add(n)
    if len(sizes) != 1:
        raise DimensionMismatch(f"operators of differing sizes {sorted(sizes)}")
    n = sizes.pop()
    cands = [Matrix(n, {(i, j): 1}) for i in range(n) for j in range(n)]
    for m in mats:
        images = [(t @ m - m @ t).sparse_flat() for t in cands]
        rels = linear_relations(images) if any(images) else None
        if rels is None:
            continue
        cands = [_combo(cands, rel, n) for rel in rels]
        if not cands:
            break
    return VectorSpaceBasis.span(n * n, [t.sparse_flat() for t in cands])


def _combo(mats: Sequence[Matrix], coeffs: Mapping[int, Fraction], n: int) -> Matrix:
    out: dict = {}
    for k, c in coeffs.items():
        for key, v in mats[k].items():
            out[key] = out.get(key, 0) + c * v
    return Matrix(n, out)


class IncrementalSpan:
    """Mutable span accumulator used by closure algorithms."""

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self._ech = _Echelon(ambient_dim)

    def add(self, v: Vector) -> bool:
        """Add ``v``; return True iff the dimension grew."""
        return bool(self._ech.add(_integral(_sparse(v, self.ambient_dim))))

    def contains(self, v: Vector) -> bool:
        return not self._ech.reduce(_integral(_sparse(v, self.ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self._ech)

    def basis(self) -> VectorSpaceBasis:
        return VectorSpaceBasis._from_echelon(self._ech)
