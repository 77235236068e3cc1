"""so(p,q) inside sl_d: basis, Cartan decomposition, the abelian subspace a, and 𝔞*."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact_linalg
from .basis_index import Signature, block_combination, decompose_blocks
from .matrix import Matrix, Scalar, as_scalar, bracket

__all__ = [
    "LinearForm",
    "CartanSplit",
    "AbelianA",
    "bracket",
    "is_member",
    "standard_basis_so",
    "cartan_split",
    "cartan_involution",
    "abelian_a",
    "evaluate_form",
    "centralizer",
]


@dataclass(frozen=True, order=True)
class LinearForm:
    """sum_i coeffs[i] * f_i, where f_i is dual to B_{i,i} + C_{i,i}."""

    coeffs: tuple[int, ...]

    @classmethod
    def zero(cls, q: int) -> "LinearForm":
        return cls((0,) * q)

    @classmethod
    def basis(cls, q: int, i: int, c: int = 1) -> "LinearForm":
        """c * f_i (i is 1-based)."""
        v = [0] * q
        v[i - 1] = c
        return cls(tuple(v))

    @classmethod
    def pair(cls, q: int, i: int, si: int, j: int, sj: int) -> "LinearForm":
        v = [0] * q
        v[i - 1] += si
        v[j - 1] += sj
        return cls(tuple(v))

    def __add__(self, other: "LinearForm") -> "LinearForm":
        if len(other.coeffs) != len(self.coeffs):
            raise ValueError("forms on different spaces")
        return LinearForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def __call__(self, a: Sequence[Scalar]) -> Fraction:
        return evaluate_form(self, a)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, c in enumerate(self.coeffs) if c)

    def kind(self) -> str:
        """Table row this form belongs to: one of
        ``'0'``, ``'±f_i'``, ``'±2f_i'``, ``'±f_i±f_j'``, ``'±f_i∓f_j'``, ``'other'``."""
        nz = [c for c in self.coeffs if c]
        if not nz:
            return "0"
        if len(nz) == 1 and abs(nz[0]) == 1:
            return "±f_i"
        if len(nz) == 1 and abs(nz[0]) == 2:
            return "±2f_i"
        if len(nz) == 2 and all(abs(c) == 1 for c in nz):
            return "±f_i±f_j" if nz[0] == nz[1] else "±f_i∓f_j"
        return "other"

    def label(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs, start=1):
            if not c:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{mag}f_{i}")
        return "".join(parts) or "0"

    @classmethod
    def parse(cls, text: str, q: int) -> "LinearForm":
        """Inverse of :meth:`label`."""
        text = text.replace(" ", "")
        if text == "0":
            return cls.zero(q)
        v = [0] * q
        terms = re.findall(r"([+-]?)(\d*)f_(\d+)", text)
        if "".join(s + m + "f_" + i for s, m, i in terms) != text:
            raise ValueError(f"cannot parse linear form {text!r}")
        for s, m, i in terms:
            v[int(i) - 1] += (-1 if s == "-" else 1) * (int(m) if m else 1)
        return cls(tuple(v))

    def __str__(self) -> str:
        return self.label()


def evaluate_form(form: LinearForm, a: Sequence[Scalar]) -> Fraction:
    if len(a) != len(form.coeffs):
        raise ValueError(f"form on a {len(form.coeffs)}-dim space evaluated at {len(a)} coordinates")
    return sum((c * as_scalar(x) for c, x in zip(form.coeffs, a)), Fraction(0))


def _is_skew(m) -> bool:
    n = len(m)
    return all(m[r][c] == -m[c][r] for r in range(n) for c in range(r, n))


def _transposes(b, c) -> bool:
    return all(b[r][k] == c[k][r] for r in range(len(b)) for k in range(len(b[r])))


def is_member(sig: Signature, x: Matrix) -> bool:
    """True iff the A and D blocks of x are skew and B^t = C."""
    if x.size != sig.d:
        raise ValueError(f"expected a {sig.d}x{sig.d} matrix")
    a, b, c, d = decompose_blocks(sig, x)
    return _is_skew(a) and _is_skew(d) and _transposes(b, c)


def standard_basis_so(sig: Signature) -> list[Matrix]:
    """Basis of so(p,q), ordered by block: A_{i,j}-A_{j,i}, then B_{i,j}+C_{j,i}, then D_{i,j}-D_{j,i}."""
    p, q = sig.p, sig.q
    out = [block_combination(sig, [(1, "A", i, j), (-1, "A", j, i)])
           for i in range(1, p + 1) for j in range(i + 1, p + 1)]
    out += [block_combination(sig, [(1, "B", i, j), (1, "C", j, i)])
            for i in range(1, p + 1) for j in range(1, q + 1)]
    out += [block_combination(sig, [(1, "D", i, j), (-1, "D", j, i)])
            for i in range(1, q + 1) for j in range(i + 1, q + 1)]
    return out


def cartan_involution(x: Matrix) -> Matrix:
    """X -> -X^t; its +1 eigenspace on so(p,q) is k, the -1 eigenspace is p."""
    return -x.transpose()


@dataclass(frozen=True)
class CartanSplit:
    k_basis: tuple[Matrix, ...]
    p_basis: tuple[Matrix, ...]


def cartan_split(sig: Signature) -> CartanSplit:
    k, p = [], []
    for x in standard_basis_so(sig):
        (k if cartan_involution(x) == x else p).append(x)
    return CartanSplit(tuple(k), tuple(p))


@dataclass(frozen=True)
class AbelianA:
    sig: Signature
    generators: tuple[Matrix, ...]

    def element(self, a: Sequence[Scalar]) -> Matrix:
        """F = sum_i a_i (B_{i,i} + C_{i,i})."""
        if len(a) != len(self.generators):
            raise ValueError("wrong number of coordinates for a")
        out = Matrix(self.sig.d)
        for c, g in zip(a, self.generators):
            out = out + g.scale(c)
        return out


def abelian_a(sig: Signature) -> AbelianA:
    gens = tuple(block_combination(sig, [(1, "B", i, i), (1, "C", i, i)]) for i in range(1, sig.q + 1))
    for x in gens:
        for y in gens:
            if not bracket(x, y).is_zero():
                raise AssertionError("a is not abelian")
    return AbelianA(sig, gens)


def centralizer(space: Sequence[Matrix], elements: Sequence[Matrix]) -> list[Matrix]:
    """Basis of {X in span(space) : [E, X] = 0 for every E in elements}."""
    space = list(space)
    if not space:
        return []
    n = space[0].size
    images = []
    for x in space:
        flat: dict[int, Fraction] = {}
        for k, e in enumerate(elements):
            for idx, v in bracket(e, x).sparse_flat().items():
                flat[k * n * n + idx] = v
        images.append(flat)
    rels = exact_linalg.linear_relations(images)
    out = []
    for rel in rels:
        m = Matrix(n)
        for k, c in rel.items():
            m = m + space[k].scale(c)
        out.append(m)
    return out
