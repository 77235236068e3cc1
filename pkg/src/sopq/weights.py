"""The invariant complement s of so(p,q) in sl_d and its weight decomposition under a.

s consists of the traceless matrices whose A and D blocks are symmetric and
whose off-diagonal blocks satisfy B = -C^t.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import exact_linalg
from .algebra import LinearForm, abelian_a, is_member, standard_basis_so
from .basis_index import Blocks, Signature, assemble_blocks, block_combination, decompose_blocks
from .matrix import Matrix, bracket
from .roots import PAIR_SIGNS
from .verification import Failure, TableRow, compare_tables, eigen_defect, observed_table

WEIGHT_KINDS = ("±f_i", "±2f_i", "±f_i±f_j", "±f_i∓f_j", "0")


@dataclass(frozen=True)
class ComplementS:
    sig: Signature
    basis: tuple[Matrix, ...]


@dataclass(frozen=True)
class WeightSpace:
    weight: LinearForm
    basis: tuple[Matrix, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.basis)


@dataclass
class WeightSystemReport:
    sig: Signature
    spaces: list[WeightSpace]
    multiplicity_table: list[TableRow]
    expected_table: list[TableRow]
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def total_dim(self) -> int:
        return sum(s.multiplicity for s in self.spaces)

    def space(self, weight: LinearForm) -> WeightSpace:
        for s in self.spaces:
            if s.weight == weight:
                return s
        raise KeyError(weight.label())


def _symmetric(m) -> bool:
    n = len(m)
    return all(m[r][c] == m[c][r] for r in range(n) for c in range(r + 1, n))


def is_in_s(sig: Signature, x: Matrix) -> bool:
    a, b, c, d = decompose_blocks(sig, x)
    return (
        x.trace() == 0
        and _symmetric(a)
        and _symmetric(d)
        and all(b[r][k] == -c[k][r] for r in range(len(b)) for k in range(len(b[r])))
    )


def complement_basis(sig: Signature) -> ComplementS:
    """Basis of s: symmetric off-diagonal A and D generators, B_{i,j} - C_{j,i},
    and consecutive differences of the diagonal units in block order."""
    p, q = sig.p, sig.q
    out = [block_combination(sig, [(1, "A", i, j), (1, "A", j, i)]) for i, j in combinations(range(1, p + 1), 2)]
    out += [block_combination(sig, [(1, "B", i, j), (-1, "C", j, i)])
            for i in range(1, p + 1) for j in range(1, q + 1)]
    out += [block_combination(sig, [(1, "D", i, j), (1, "D", j, i)]) for i, j in combinations(range(1, q + 1), 2)]
    diag = [("A", i) for i in range(1, p + 1)] + [("D", i) for i in range(1, q + 1)]
    out += [block_combination(sig, [(1, x, i, i), (-1, y, j, j)]) for (x, i), (y, j) in zip(diag, diag[1:])]
    return ComplementS(sig, tuple(out))


def project(sig: Signature, x: Matrix) -> tuple[Matrix, Matrix]:
    """Split a traceless x as x_so + x_s with x_so in so(p,q) and x_s in s."""
    if x.size != sig.d:
        raise ValueError(f"expected a {sig.d}x{sig.d} matrix")
    if x.trace() != 0:
        raise ValueError("project needs a traceless matrix")
    a, b, c, d = decompose_blocks(sig, x)
    half = Fraction(1, 2)

    def sym(m, s):
        n = len(m)
        return [[half * (m[r][k] + s * m[k][r]) for k in range(n)] for r in range(n)]

    b_so = [[half * (b[r][k] + c[k][r]) for k in range(sig.q)] for r in range(sig.p)]
    c_so = [[b_so[r][k] for r in range(sig.p)] for k in range(sig.q)]
    x_so = assemble_blocks(sig, Blocks(sym(a, -1), b_so, c_so, sym(d, -1)))
    return x_so, x - x_so


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")


def weight_vector_short(sig: Signature, sign: int, i: int, ell: int) -> Matrix:
    """S(±f_i)_ell, 1 <= i <= q, 1 <= ell <= p - q."""
    _check_sign(sign)
    p, q = sig.p, sig.q
    if p == q:
        raise ValueError("±f_i are not weights of s when p == q")
    if not (1 <= i <= q and 1 <= ell <= p - q):
        raise IndexError(f"S(±f_{i})_{ell} out of range for {sig}")
    s = sign
    return block_combination(sig, [
        (1, "A", q + ell, i), (-s, "B", q + ell, i), (1, "A", i, q + ell), (s, "C", i, q + ell),
    ])


def weight_vector_double(sig: Signature, sign: int, i: int) -> Matrix:
    """S(±2f_i)."""
    _check_sign(sign)
    if not 1 <= i <= sig.q:
        raise IndexError(f"S(±2f_{i}) out of range for {sig}")
    s = sign
    return block_combination(sig, [(1, "A", i, i), (-s, "B", i, i), (s, "C", i, i), (-1, "D", i, i)])


def weight_vector_mixed(sig: Signature, signs: tuple[int, int], i: int, j: int) -> Matrix:
    """Weight vector for s_i f_i + s_j f_j, i < j, with ``signs = (s_i, s_j)``."""
    if tuple(signs) not in PAIR_SIGNS:
        raise ValueError(f"signs must be one of {PAIR_SIGNS}")
    if not (1 <= i < j <= sig.q):
        raise IndexError(f"need 1 <= i < j <= q, got i={i}, j={j}, q={sig.q}")
    coeffs = {
        (1, 1): (-1, 1, -1, 1, -1, 1, -1, 1),
        (-1, -1): (1, 1, 1, 1, -1, -1, -1, -1),
        (1, -1): (1, 1, 1, -1, 1, 1, -1, 1),
        (-1, 1): (1, -1, 1, 1, -1, 1, 1, 1),
    }[tuple(signs)]
    slots = [("A", i, j), ("B", i, j), ("A", j, i), ("B", j, i),
             ("C", i, j), ("D", i, j), ("C", j, i), ("D", j, i)]
    return block_combination(sig, [(c, *s) for c, s in zip(coeffs, slots)])


def zero_weight_generators(sig: Signature, uncorrected: bool = False) -> list[Matrix]:
    """Generators of s_0 in three families.

    1. A_{q+i,q+j} + A_{q+j,q+i}, i < j <= p - q
    2. 2A_{q+i,q+i} - (A_{1,1} + D_{1,1}), i <= p - q, ordered by the row of
       the doubled entry (i descending)
    3. (A_{i,i} + D_{i,i}) - (A_{i+1,i+1} + D_{i+1,i+1}), i <= q - 1

    ``uncorrected=True`` puts ``+`` in family 2, which leaves trace 4 and so
    is not in s.  When q = 0 there is no D block and family 2 is replaced by
    the differences A_{i,i} - A_{i+1,i+1}.
    """
    p, q = sig.p, sig.q
    r = p - q
    out = [block_combination(sig, [(1, "A", q + i, q + j), (1, "A", q + j, q + i)])
           for i, j in combinations(range(1, r + 1), 2)]
    if q == 0:
        out += [block_combination(sig, [(1, "A", i, i), (-1, "A", i + 1, i + 1)]) for i in range(1, p)]
        return out
    s = 1 if uncorrected else -1
    out += [block_combination(sig, [(2, "A", q + i, q + i), (s, "A", 1, 1), (s, "D", 1, 1)])
            for i in range(r, 0, -1)]
    out += [block_combination(sig, [(1, "A", i, i), (1, "D", i, i), (-1, "A", i + 1, i + 1), (-1, "D", i + 1, i + 1)])
            for i in range(1, q)]
    return out


def zero_weight_space(sig: Signature, uncorrected: bool = False) -> WeightSpace:
    return WeightSpace(LinearForm.zero(sig.q), tuple(zero_weight_generators(sig, uncorrected)))


def weight_spaces(sig: Signature) -> list[WeightSpace]:
    """All weight spaces of s (the zero space always included), descending lexicographic order."""
    p, q = sig.p, sig.q
    spaces = [zero_weight_space(sig)]
    for i in range(1, q + 1):
        for s in (1, -1):
            if p > q:
                basis = tuple(weight_vector_short(sig, s, i, ell) for ell in range(1, p - q + 1))
                spaces.append(WeightSpace(LinearForm.basis(q, i, s), basis))
            spaces.append(WeightSpace(LinearForm.basis(q, i, 2 * s), (weight_vector_double(sig, s, i),)))
    for i, j in combinations(range(1, q + 1), 2):
        for si, sj in PAIR_SIGNS:
            spaces.append(WeightSpace(LinearForm.pair(q, i, si, j, sj), (weight_vector_mixed(sig, (si, sj), i, j),)))
    return sorted(spaces, key=lambda s: s.weight.coeffs, reverse=True)


def expected_weight_table(sig: Signature) -> list[TableRow]:
    p, q = sig.p, sig.q
    short = 2 * q if p > q else 0
    pairs = q * (q - 1)
    zero = (p - q) * (p - q + 1) // 2 + q - 1
    return [
        TableRow("±f_i", short, p - q if short else 0, 2 * q * (p - q)),
        TableRow("±2f_i", 2 * q, 1 if q else 0, 2 * q),
        TableRow("±f_i±f_j", pairs, 1 if pairs else 0, pairs),
        TableRow("±f_i∓f_j", pairs, 1 if pairs else 0, pairs),
        TableRow("0", 1, zero, zero),
    ]


def full_weight_system(sig: Signature) -> WeightSystemReport:
    """Assemble every weight space of s and verify membership, eigen-identities,
    the multiplicity table, independence and the total dimension."""
    gens = abelian_a(sig).generators
    spaces = weight_spaces(sig)
    failures: list[Failure] = []
    for space in spaces:
        for k, x in enumerate(space.basis, start=1):
            name = f"S({space.weight.label()})_{k}"
            if not is_in_s(sig, x):
                failures.append(Failure("membership", name, "not in s"))
            bad = eigen_defect(gens, space.weight, x)
            if bad is not None:
                failures.append(Failure("eigen-identity", name, f"fails against F_{bad}"))
    observed = observed_table(((s.weight, s.multiplicity) for s in spaces), WEIGHT_KINDS)
    expected = expected_weight_table(sig)
    failures += compare_tables(expected, observed, "weight-table")
    total = sum(s.multiplicity for s in spaces)
    if total != sig.dim_s:
        failures.append(Failure("weight-total", str(sig), f"{total} != dim s = {sig.dim_s}"))
    r = exact_linalg.rank([x.sparse_flat() for s in spaces for x in s.basis])
    if r != total:
        failures.append(Failure("weight-independence", str(sig), f"rank {r} of {total} vectors"))
    return WeightSystemReport(sig, spaces, observed, expected, failures)


def direct_sum_failures(sig: Signature) -> list[Failure]:
    """sl_d = so(p,q) + s with trivial intersection, and both pieces ad(so)-invariant."""
    n = sig.d ** 2
    so = standard_basis_so(sig)
    s = list(complement_basis(sig).basis)
    out = []
    if exact_linalg.rank([x.sparse_flat() for x in so]) != len(so):
        out.append(Failure("direct-sum", "so basis dependent"))
    if exact_linalg.rank([x.sparse_flat() for x in s]) != len(s):
        out.append(Failure("direct-sum", "s basis dependent"))
    total = exact_linalg.rank([x.sparse_flat() for x in so + s])
    if total != n - 1:
        out.append(Failure("direct-sum", str(sig), f"rank(so + s) = {total} != d^2 - 1 = {n - 1}"))
    if total != len(so) + len(s):
        out.append(Failure("direct-sum", str(sig), "so and s intersect nontrivially"))
    s_span = exact_linalg.IncrementalSpan(n)
    for x in s:
        s_span.add(x.sparse_flat())
    for x in so:
        for y in so:
            if not is_member(sig, bracket(x, y)):
                out.append(Failure("invariance-so", str(sig)))
        for y in s:
            if not s_span.contains(bracket(x, y).sparse_flat()):
                out.append(Failure("invariance-s", str(sig)))
    return out
