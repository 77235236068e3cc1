"""Shared bookkeeping for verification results and multiplicity tables."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import LinearForm
from .matrix import Matrix, bracket


@dataclass(frozen=True)
class Failure:
    check: str
    subject: str
    detail: str = ""

    def to_dict(self) -> dict:
        return {"check": self.check, "subject": self.subject, "detail": self.detail}

    def __str__(self) -> str:
        return f"{self.check}: {self.subject}" + (f" ({self.detail})" if self.detail else "")


@dataclass(frozen=True)
class TableRow:
    kind: str
    count: int
    dim_each: int
    total: int

    def to_dict(self) -> dict:
        return {"kind": self.kind, "count": self.count, "dim_each": self.dim_each, "total": self.total}


def eigen_defect(generators: Sequence[Matrix], form: LinearForm, x: Matrix) -> int | None:
    """First 1-based generator index where [F_i, x] != form_i * x, or None."""
    for i, (f, c) in enumerate(zip(generators, form.coeffs), start=1):
        if bracket(f, x) != x.scale(c):
            return i
    return None


def observed_table(spaces: Iterable[tuple[LinearForm, int]], kinds: Sequence[str]) -> list[TableRow]:
    """Group (form, multiplicity) pairs into rows of the given kinds."""
    counts: Counter = Counter()
    dims: dict[str, set] = {k: set() for k in kinds}
    totals: Counter = Counter()
    for form, mult in spaces:
        k = form.kind()
        dims.setdefault(k, set()).add(mult)
        counts[k] += 1
        totals[k] += mult
    rows = []
    for k in kinds:
        ds = dims.get(k) or set()
        dim_each = ds.pop() if len(ds) == 1 else (-1 if ds else 0)
        rows.append(TableRow(k, counts[k], dim_each, totals[k]))
    return rows


def compare_tables(expected: Sequence[TableRow], observed: Sequence[TableRow], check: str) -> list[Failure]:
    out = []
    for e, o in zip(expected, observed):
        if e != o:
            out.append(Failure(check, e.kind, f"expected {e}, observed {o}"))
    return out
