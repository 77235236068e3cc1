"""Index conventions for Mat_d: the standard basis E_{i,j} and the block basis.

With d = p + q, a matrix is split into blocks A (p x p), B (p x q),
C (q x p), D (q x q).  The block basis reverses the order of the first p
coordinates::

    A_{i,j} = E_{p+1-i, p+1-j}     B_{i,j} = E_{p+1-i, p+j}
    C_{i,j} = E_{p+i,   p+1-j}     D_{i,j} = E_{p+i,   p+j}

All public indices are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .matrix import Matrix, Scalar


@dataclass(frozen=True)
class Signature:
    """A pair (p, q) with d = p + q >= 2, normalized so that p >= q.

    ``Signature(1, 3)`` is stored as p=3, q=1 with ``swapped=True``; the
    swap is a plain relabeling, no conjugation is applied.
    """

    p: int
    q: int
    swapped: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise TypeError("p and q must be integers")
        if self.p < 0 or self.q < 0:
            raise ValueError("p and q must be nonnegative")
        if self.p + self.q < 2:
            raise ValueError(f"d = p + q must be at least 2, got {self.p + self.q}")
        if self.p < self.q:
            p, q = self.q, self.p
            object.__setattr__(self, "p", p)
            object.__setattr__(self, "q", q)
            object.__setattr__(self, "swapped", True)

    @property
    def d(self) -> int:
        return self.p + self.q

    @property
    def dim_so(self) -> int:
        p, q = self.p, self.q
        return (p * (p - 1) + q * (q - 1)) // 2 + p * q

    @property
    def dim_s(self) -> int:
        p, q = self.p, self.q
        return (p * (p + 1) + q * (q + 1)) // 2 + p * q - 1

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


BLOCKS = ("A", "B", "C", "D")


class BlockIndex(NamedTuple):
    block: str
    i: int
    j: int


def block_shape(sig: Signature, block: str) -> tuple[int, int]:
    p, q = sig.p, sig.q
    try:
        return {"A": (p, p), "B": (p, q), "C": (q, p), "D": (q, q)}[block]
    except KeyError:
        raise ValueError(f"unknown block {block!r}") from None


def standard_basis(sig: Signature, i: int, j: int) -> Matrix:
    """E_{i,j}: the single-entry matrix with a 1 at row i, column j (1-based)."""
    d = sig.d
    if not (1 <= i <= d and 1 <= j <= d):
        raise IndexError(f"E_({i},{j}) out of range for d={d}")
    return Matrix(d, {(i - 1, j - 1): 1})


def block_position(sig: Signature, idx: BlockIndex) -> tuple[int, int]:
    """1-based (row, col) of the single nonzero entry of a block basis element."""
    block, i, j = idx
    rows, cols = block_shape(sig, block)
    if not (1 <= i <= rows and 1 <= j <= cols):
        raise IndexError(f"{block}_({i},{j}) out of range for {block}-block of shape {rows}x{cols}")
    p = sig.p
    if block == "A":
        return p + 1 - i, p + 1 - j
    if block == "B":
        return p + 1 - i, p + j
    if block == "C":
        return p + i, p + 1 - j
    return p + i, p + j


def block_basis(sig: Signature, idx: BlockIndex | tuple) -> Matrix:
    r, c = block_position(sig, BlockIndex(*idx))
    return standard_basis(sig, r, c)


def block_combination(sig: Signature, terms: Iterable[tuple[Scalar, str, int, int]]) -> Matrix:
    """Sum of coef * X_{i,j} over terms ``(coef, X, i, j)`` with X in A/B/C/D."""
    entries: dict = {}
    for coef, block, i, j in terms:
        r, c = block_position(sig, BlockIndex(block, i, j))
        key = (r - 1, c - 1)
        entries[key] = entries.get(key, 0) + coef
    return Matrix(sig.d, entries)


def all_block_indices(sig: Signature) -> list[BlockIndex]:
    out = []
    for block in BLOCKS:
        rows, cols = block_shape(sig, block)
        out.extend(BlockIndex(block, i, j) for i in range(1, rows + 1) for j in range(1, cols + 1))
    return out


class Blocks(NamedTuple):
    A: list
    B: list
    C: list
    D: list


def decompose_blocks(sig: Signature, x: Matrix) -> Blocks:
    """Split ``x`` at row/column p into its four blocks, as plain row lists.

    The blocks are the literal submatrices in E-coordinates; the block basis
    reindexing above is a separate matter.
    """
    if x.size != sig.d:
        raise ValueError(f"expected a {sig.d}x{sig.d} matrix, got {x.size}x{x.size}")
    p, d = sig.p, sig.d
    top, bottom = range(0, p), range(p, d)
    return Blocks(
        x.submatrix(top, top),
        x.submatrix(top, bottom),
        x.submatrix(bottom, top),
        x.submatrix(bottom, bottom),
    )


def assemble_blocks(sig: Signature, blocks: Blocks) -> Matrix:
    p = sig.p
    entries = {}
    for rows, (r0, c0) in zip(blocks, [(0, 0), (0, p), (p, 0), (p, p)]):
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                if v:
                    entries[(r0 + r, c0 + c)] = v
    return Matrix(sig.d, entries)
