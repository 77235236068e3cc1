"""Restricted root spaces of (so(p,q), a) with explicit root vectors."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import exact_linalg
from .algebra import LinearForm, abelian_a, bracket, is_member
from .basis_index import Signature, block_combination
from .matrix import Matrix
from .verification import Failure, TableRow, compare_tables, eigen_defect, observed_table

ROOT_KINDS = ("±f_i", "±f_i±f_j", "±f_i∓f_j", "0")
PAIR_SIGNS = ((1, 1), (-1, -1), (1, -1), (-1, 1))


@dataclass(frozen=True)
class RootSpace:
    root: LinearForm
    basis: tuple[Matrix, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.basis)


@dataclass
class RootSystemReport:
    sig: Signature
    spaces: list[RootSpace]
    multiplicity_table: list[TableRow]
    expected_table: list[TableRow]
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def total_dim(self) -> int:
        return sum(s.multiplicity for s in self.spaces)

    def space(self, root: LinearForm) -> RootSpace:
        for s in self.spaces:
            if s.root == root:
                return s
        raise KeyError(root.label())


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")


def root_vector_short(sig: Signature, sign: int, i: int, ell: int) -> Matrix:
    """H(±f_i)_ell, 1 <= i <= q, 1 <= ell <= p - q."""
    _check_sign(sign)
    p, q = sig.p, sig.q
    if p == q:
        raise ValueError("±f_i are not roots when p == q")
    if not (1 <= i <= q and 1 <= ell <= p - q):
        raise IndexError(f"H(±f_{i})_{ell} out of range for {sig}")
    s = sign
    return block_combination(sig, [
        (1, "A", q + ell, i), (-s, "B", q + ell, i), (-1, "A", i, q + ell), (-s, "C", i, q + ell),
    ])


def root_vector_long(sig: Signature, signs: tuple[int, int], i: int, j: int) -> Matrix:
    """Root vector for s_i f_i + s_j f_j, i < j, with ``signs = (s_i, s_j)``."""
    if tuple(signs) not in PAIR_SIGNS:
        raise ValueError(f"signs must be one of {PAIR_SIGNS}")
    if not (1 <= i < j <= sig.q):
        raise IndexError(f"need 1 <= i < j <= q, got i={i}, j={j}, q={sig.q}")
    coeffs = {
        (1, 1): (-1, 1, 1, -1, -1, 1, 1, -1),
        (-1, -1): (-1, -1, 1, 1, 1, 1, -1, -1),
        (1, -1): (-1, -1, 1, -1, -1, -1, -1, 1),
        (-1, 1): (-1, 1, 1, 1, 1, -1, 1, 1),
    }[tuple(signs)]
    slots = [("A", i, j), ("B", i, j), ("A", j, i), ("B", j, i),
             ("C", i, j), ("D", i, j), ("C", j, i), ("D", j, i)]
    return block_combination(sig, [(c, *s) for c, s in zip(coeffs, slots)])


def m_basis(sig: Signature) -> list[Matrix]:
    """Basis A_{q+j,q+i} - A_{q+i,q+j} (i < j <= p - q) of the centralizer m of a in k."""
    q, r = sig.q, sig.p - sig.q
    return [block_combination(sig, [(1, "A", q + j, q + i), (-1, "A", q + i, q + j)])
            for i, j in combinations(range(1, r + 1), 2)]


def zero_root_space(sig: Signature) -> RootSpace:
    return RootSpace(LinearForm.zero(sig.q), abelian_a(sig).generators + tuple(m_basis(sig)))


def root_spaces(sig: Signature) -> list[RootSpace]:
    """All root spaces, including the zero slot, in descending lexicographic order of the root."""
    p, q = sig.p, sig.q
    spaces = [zero_root_space(sig)]
    if p > q:
        for i in range(1, q + 1):
            for s in (1, -1):
                basis = tuple(root_vector_short(sig, s, i, ell) for ell in range(1, p - q + 1))
                spaces.append(RootSpace(LinearForm.basis(q, i, s), basis))
    for i, j in combinations(range(1, q + 1), 2):
        for si, sj in PAIR_SIGNS:
            spaces.append(RootSpace(LinearForm.pair(q, i, si, j, sj), (root_vector_long(sig, (si, sj), i, j),)))
    return sorted(spaces, key=lambda s: s.root.coeffs, reverse=True)


def expected_root_table(sig: Signature) -> list[TableRow]:
    p, q = sig.p, sig.q
    short = 2 * q if p > q else 0
    pairs = q * (q - 1)
    zero = (p - q) * (p - q - 1) // 2 + q
    return [
        TableRow("±f_i", short, p - q if short else 0, 2 * q * (p - q)),
        TableRow("±f_i±f_j", pairs, 1 if pairs else 0, pairs),
        TableRow("±f_i∓f_j", pairs, 1 if pairs else 0, pairs),
        TableRow("0", 1, zero, zero),
    ]


def full_root_system(sig: Signature) -> RootSystemReport:
    """Assemble every root space and verify it.

    Checked: each vector lies in so(p,q) and satisfies its eigen-identity
    against every generator of a; the multiplicity table; the grand total;
    and linear independence of all root vectors taken together.
    """
    gens = abelian_a(sig).generators
    spaces = root_spaces(sig)
    failures: list[Failure] = []
    for space in spaces:
        for k, x in enumerate(space.basis, start=1):
            name = f"H({space.root.label()})_{k}"
            if not is_member(sig, x):
                failures.append(Failure("membership", name, "not in so(p,q)"))
            bad = eigen_defect(gens, space.root, x)
            if bad is not None:
                failures.append(Failure("eigen-identity", name, f"fails against F_{bad}"))
    observed = observed_table(((s.root, s.multiplicity) for s in spaces), ROOT_KINDS)
    expected = expected_root_table(sig)
    failures += compare_tables(expected, observed, "root-table")
    total = sum(s.multiplicity for s in spaces)
    if total != sig.dim_so:
        failures.append(Failure("root-total", str(sig), f"{total} != dim so = {sig.dim_so}"))
    vecs = [x.sparse_flat() for s in spaces for x in s.basis]
    r = exact_linalg.rank(vecs)
    if r != total:
        failures.append(Failure("root-independence", str(sig), f"rank {r} of {total} vectors"))
    return RootSystemReport(sig, spaces, observed, expected, failures)


def grading_failures(sig: Signature, spaces: list[RootSpace] | None = None) -> list[Failure]:
    """Check [so_l, so_m] lies in so_{l+m} (zero when l+m is neither a root nor 0)."""
    spaces = spaces if spaces is not None else root_spaces(sig)
    by_root = {s.root: s for s in spaces}
    n = sig.d ** 2
    spans = {r: exact_linalg.VectorSpaceBasis.span(n, [x.flatten() for x in s.basis]) for r, s in by_root.items()}
    out = []
    for s in spaces:
        for t in spaces:
            target = spans.get(s.root + t.root)
            for x in s.basis:
                for y in t.basis:
                    z = bracket(x, y)
                    if z.is_zero():
                        continue
                    if target is None or not target.contains(z.flatten()):
                        out.append(Failure("grading", f"[{s.root.label()}, {t.root.label()}]"))
    return out
