"""Irreducibility certificates for the complement s, and the generation check.

Two independent routes:

* the commutant of ad(so(p,q)) restricted to s -- a scalar commutant plus
  complete reducibility (Weyl, for semisimple so(p,q), i.e. d >= 3) means s
  is irreducible;
* explicit weight ladders: brackets of root vectors with weight vectors,
  each checked to be a nonzero element of the claimed target weight space.

Invariant closures from seeds are recorded as supporting evidence; on their
own they cannot rule out an invariant subspace that avoids every seed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from . import exact_linalg
from .algebra import LinearForm, is_member, standard_basis_so
from .basis_index import Signature, block_combination
from .matrix import Matrix, bracket, format_scalar
from .roots import root_spaces, root_vector_long, root_vector_short
from .weights import (
    complement_basis,
    direct_sum_failures,
    is_in_s,
    weight_spaces,
)
from .verification import Failure

COMPLETE_REDUCIBILITY = "complete reducibility of finite-dimensional modules of semisimple so(p,q) (d >= 3)"


# --- closures -------------------------------------------------------------------


@dataclass(frozen=True)
class ClosureStep:
    generator: int  # index into the so(p,q) basis
    source: int  # index of the vector it was applied to, in order of discovery
    dim: int


@dataclass
class ClosureTrace:
    seed: Matrix
    steps: list[ClosureStep]
    final_dim: int
    basis: list[Matrix] = field(repr=False, default_factory=list)


def _closure(generators: Sequence[Matrix], seed: Matrix) -> ClosureTrace:
    # breadth first; generators are always tried in their given order
    span = exact_linalg.IncrementalSpan(seed.size ** 2)
    found = [seed] if span.add(seed.sparse_flat()) else []
    steps = []
    queue = deque(range(len(found)))
    while queue:
        k = queue.popleft()
        v = found[k]
        for g_idx, g in enumerate(generators):
            w = bracket(g, v)
            if not w.is_zero() and span.add(w.sparse_flat()):
                found.append(w)
                queue.append(len(found) - 1)
                steps.append(ClosureStep(g_idx, k, span.dim))
    return ClosureTrace(seed, steps, span.dim, found)


def invariant_closure(sig: Signature, seed: Matrix) -> ClosureTrace:
    """Smallest ad(so(p,q))-invariant subspace containing ``seed`` (which must be a nonzero element of s)."""
    if seed.is_zero():
        raise ValueError("seed must be nonzero")
    if not is_in_s(sig, seed):
        raise ValueError("seed is not in s")
    return _closure(standard_basis_so(sig), seed)


# --- module analysis --------------------------------------------------------------


def restricted_operators(generators: Sequence[Matrix], module: Sequence[Matrix]) -> tuple[list[Matrix], list[Matrix]]:
    """Coordinate matrices of ad(g) on span(module), against its canonical basis.

    Returns (operators, canonical basis as matrices).  Raises if the span is
    not invariant.
    """
    d = module[0].size
    basis = exact_linalg.VectorSpaceBasis.span(d * d, [x.sparse_flat() for x in module])
    pivots = basis.pivots
    mats = [Matrix.from_flat(d, v) for v in basis.vectors]
    k = len(mats)
    ops = []
    for g in generators:
        entries = {}
        for c, m in enumerate(mats):
            img = bracket(g, m).sparse_flat()
            coords = {r: img.get(pv, 0) for r, pv in enumerate(pivots)}
            recon = {}
            for r, x in coords.items():
                if x:
                    for key, y in mats[r].sparse_flat().items():
                        recon[key] = recon.get(key, 0) + x * y
            if {a: b for a, b in recon.items() if b} != img:
                raise ValueError("span is not invariant under the generators")
            for r, x in coords.items():
                if x:
                    entries[(r, c)] = x
        ops.append(Matrix(k, entries))
    return ops, mats


def commutant_dimension(ops: Sequence[Matrix], k: int) -> int:
    return len(exact_linalg.solve_commutant(ops, n=k))


@dataclass
class CommutantCertificate:
    commutant_dim: int
    irreducible: bool | None
    semisimple: bool
    hypothesis: str

    def to_dict(self) -> dict:
        return {
            "commutant_dim": self.commutant_dim,
            "irreducible": self.irreducible,
            "semisimple": self.semisimple,
            "hypothesis": self.hypothesis,
        }


def _is_semisimple(sig: Signature) -> bool:
    # so(2) and so(1,1) are abelian; every so(p,q) with d >= 3 is semisimple
    return sig.d >= 3


def commutant_certificate(sig: Signature) -> CommutantCertificate:
    """Commutant of ad(so(p,q)) on s.

    ``irreducible`` is True when the commutant is scalar and so(p,q) is
    semisimple, and None otherwise: a larger commutant over R can still
    belong to an irreducible module, and for abelian so(p,q) complete
    reducibility is not available.
    """
    ops, mats = restricted_operators(standard_basis_so(sig), complement_basis(sig).basis)
    dim = commutant_dimension(ops, len(mats))
    ss = _is_semisimple(sig)
    hyp = COMPLETE_REDUCIBILITY if ss else "so(p,q) is abelian: complete reducibility not guaranteed, closure evidence only"
    return CommutantCertificate(dim, True if (ss and dim == 1) else None, ss, hyp)


@dataclass
class ModuleAnalysis:
    """Everything computed about one ad(so(p,q))-module (s or so(p,q) itself)."""

    name: str
    dim: int
    commutant_dim: int
    semisimple: bool
    closure_dims: list[int]
    verdict: str  # "irreducible", "reducible" or "undetermined"
    evidence: str
    witness_dim: int | None = None

    @property
    def irreducible(self) -> bool | None:
        return {"irreducible": True, "reducible": False}.get(self.verdict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "dim": self.dim,
            "commutant_dim": self.commutant_dim,
            "semisimple": self.semisimple,
            "closure_dims": self.closure_dims,
            "closure_min": min(self.closure_dims, default=0),
            "verdict": self.verdict,
            "evidence": self.evidence,
            "witness_dim": self.witness_dim,
        }


def _image_dim(ops: Sequence[Matrix], t: Matrix, lam: Fraction) -> int | None:
    """Dimension of image(T - lam) if it is a proper nonzero invariant subspace."""
    k = t.size
    shifted = t - Matrix.identity(k).scale(lam)
    cols = [[shifted[r, c] for r in range(k)] for c in range(k)]
    img = exact_linalg.VectorSpaceBasis.span(k, cols)
    if not 0 < img.dim < k:
        return None
    for m in ops:
        for v in img.vectors:
            mv = [sum(m[r, c] * v[c] for c in range(k)) for r in range(k)]
            if not img.contains(mv):
                return None
    return img.dim


def _rational_eigenvalues(t: Matrix) -> list[Fraction]:
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Matrix(t.rows()).charpoly(x)
    return [Fraction(int(r.p), int(r.q)) for r in poly.ground_roots()]


def _commutant_witness(ops: Sequence[Matrix], k: int) -> int | None:
    comm = exact_linalg.solve_commutant(ops, n=k)
    ident = Matrix.identity(k)
    for v in comm.vectors:
        t = Matrix.from_flat(k, v)
        if t == ident.scale(t[0, 0]):
            continue
        for lam in _rational_eigenvalues(t):
            w = _image_dim(ops, t, lam)
            if w is not None:
                return w
    return None


def _commutant_is_complex(ops: Sequence[Matrix], k: int) -> bool:
    """For a 2-dimensional commutant span{I, T}: True iff T^2 = aT + bI with a^2 + 4b < 0."""
    comm = exact_linalg.solve_commutant(ops, n=k)
    ident = Matrix.identity(k)
    for v in comm.vectors:
        t = Matrix.from_flat(k, v)
        if t == ident.scale(t[0, 0]):
            continue
        rels = exact_linalg.linear_relations([ident.sparse_flat(), t.sparse_flat(), (t @ t).sparse_flat()])
        for rel in rels:
            c2 = rel.get(2)
            if c2:
                a = -rel.get(1, Fraction(0)) / c2
                b = -rel.get(0, Fraction(0)) / c2
                return a * a + 4 * b < 0
    return False


def analyze_module(
    sig: Signature, name: str, module: Sequence[Matrix], extra_seeds: Sequence[Matrix] = ()
) -> ModuleAnalysis:
    gens = standard_basis_so(sig)
    ops, mats = restricted_operators(gens, module)
    k = len(mats)
    comm = commutant_dimension(ops, k)
    ss = _is_semisimple(sig)
    closure_dims = [_closure(gens, x).final_dim for x in module]
    extra_dims = [_closure(gens, x).final_dim for x in extra_seeds]
    if k == 1:
        return ModuleAnalysis(name, k, comm, ss, closure_dims, "irreducible", "one-dimensional module")
    if ss and comm == 1:
        return ModuleAnalysis(name, k, comm, ss, closure_dims, "irreducible",
                              f"scalar commutant; hypothesis: {COMPLETE_REDUCIBILITY}")
    small = [x for x in closure_dims + extra_dims if x < k]
    if small:
        return ModuleAnalysis(name, k, comm, ss, closure_dims, "reducible",
                              "a seed generates a proper invariant subspace", min(small))
    if comm > 1:
        w = _commutant_witness(ops, k)
        if w is not None:
            return ModuleAnalysis(name, k, comm, ss, closure_dims, "reducible",
                                  "eigenspace image of a commutant element is a proper invariant subspace", w)
    if ss and comm == 2 and _commutant_is_complex(ops, k):
        return ModuleAnalysis(name, k, comm, ss, closure_dims, "irreducible",
                              "commutant is a field isomorphic to C (a division algebra); "
                              f"hypothesis: {COMPLETE_REDUCIBILITY}")
    nonzero = [m for m in ops if not m.is_zero()]
    if k == 2 and len(gens) == 1 and nonzero:
        m = nonzero[0]
        disc = (m[0, 0] + m[1, 1]) ** 2 - 4 * (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
        if disc < 0:
            return ModuleAnalysis(name, k, comm, ss, closure_dims, "irreducible",
                                  "single operator on a plane without real eigenvalues")
        return ModuleAnalysis(name, k, comm, ss, closure_dims, "reducible",
                              "single operator on a plane with a real eigenvector", 1)
    return ModuleAnalysis(name, k, comm, ss, closure_dims, "undetermined",
                          "commutant is not scalar and no invariant subspace was found; closure evidence only")


# --- ladders --------------------------------------------------------------------


@dataclass(frozen=True)
class LadderEdge:
    source: str
    root: str
    target: str
    nonzero: bool
    in_target_space: bool
    scalar: Fraction | None  # bracket = scalar * target vector, when it is a multiple
    listed: bool = True

    @property
    def verified(self) -> bool:
        return self.nonzero and self.in_target_space

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "root": self.root,
            "target": self.target,
            "verified": self.verified,
            "nonzero": self.nonzero,
            "in_target_space": self.in_target_space,
            "scalar": None if self.scalar is None else format_scalar(self.scalar),
            "listed": self.listed,
        }


@dataclass
class LadderCertificate:
    edges: list[LadderEdge]
    completion: list[LadderEdge]
    nodes: list[str]
    listed_components: int
    components: int

    @property
    def edges_verified(self) -> bool:
        return all(e.verified for e in self.edges)

    @property
    def connected(self) -> bool:
        return self.components <= 1

    @property
    def ok(self) -> bool:
        return self.edges_verified and self.connected

    def failures(self) -> list[Failure]:
        out = [Failure("ladder-edge", f"{e.source} -{e.root}-> {e.target}") for e in self.edges if not e.verified]
        if not self.connected:
            out.append(Failure("ladder-connectivity", f"{self.components} components"))
        return out

    def to_dict(self) -> dict:
        return {
            "edges": [e.to_dict() for e in self.edges],
            "completion_edges": len(self.completion),
            "nodes": len(self.nodes),
            "listed_components": self.listed_components,
            "components": self.components,
            "edges_verified": self.edges_verified,
            "connected": self.connected,
        }


@dataclass(frozen=True)
class _Node:
    name: str
    weight: LinearForm
    vector: Matrix


def _sym_name(q: int, i: int, j: int) -> str:
    return f"A_{q + i},{q + j}+A_{q + j},{q + i}"


def _dbl_name(q: int, i: int) -> str:
    return f"2A_{q + i},{q + i}-(A_1,1+D_1,1)"


def _diff_name(i: int) -> str:
    return f"A_{i},{i}+D_{i},{i}-(A_{i + 1},{i + 1}+D_{i + 1},{i + 1})"


class _Ladder:
    """Weight vectors of s as named nodes, with bracket evaluation between them."""

    def __init__(self, sig: Signature):
        self.sig = sig
        q, r = sig.q, sig.p - sig.q
        self.spaces = {s.weight: s for s in weight_spaces(sig)}
        self.nodes: dict[str, _Node] = {}
        for w, s in self.spaces.items():
            if w.kind() == "±f_i":
                for ell, x in enumerate(s.basis, start=1):
                    self._add(f"S({w.label()})_{ell}", w, x)
            elif not w.is_zero():
                self._add(f"S({w.label()})", w, s.basis[0])
        zero = LinearForm.zero(q)
        for i, j in combinations(range(1, r + 1), 2):
            self._add(_sym_name(q, i, j), zero, block_combination(
                sig, [(1, "A", q + i, q + j), (1, "A", q + j, q + i)]))
        for i in range(1, r + 1):
            self._add(_dbl_name(q, i), zero, block_combination(
                sig, [(2, "A", q + i, q + i), (-1, "A", 1, 1), (-1, "D", 1, 1)]))
        for i in range(1, q):
            self._add(_diff_name(i), zero, block_combination(
                sig, [(1, "A", i, i), (1, "D", i, i), (-1, "A", i + 1, i + 1), (-1, "D", i + 1, i + 1)]))
        self.by_weight: dict[LinearForm, list[_Node]] = {}
        for node in self.nodes.values():
            self.by_weight.setdefault(node.weight, []).append(node)

    def _add(self, name, w, x):
        self.nodes[name] = _Node(name, w, x)

    def root_vector(self, form: LinearForm, ell: int | None) -> tuple[str, Matrix]:
        sig = self.sig
        sup = form.support
        if len(sup) == 1:
            i = sup[0]
            return f"H({form.label()})_{ell}", root_vector_short(sig, form.coeffs[i - 1], i, ell)
        if len(sup) != 2:
            raise ValueError(f"{form.label()} is not a root")
        i, j = sup
        return f"H({form.label()})", root_vector_long(sig, (form.coeffs[i - 1], form.coeffs[j - 1]), i, j)

    def expand(self, z: Matrix, weight: LinearForm) -> list[Fraction] | None:
        """Coefficients of z against the nodes of the given weight, or None if outside their span."""
        nodes = self.by_weight.get(weight, [])
        if not nodes:
            return None
        vecs = [n.vector.sparse_flat() for n in nodes] + [z.sparse_flat()]
        for rel in exact_linalg.linear_relations(vecs):
            cz = rel.get(len(nodes))
            if cz:
                return [-rel.get(k, Fraction(0)) / cz for k in range(len(nodes))]
        return None

    def edge(self, src: str, dst: str, ell: int | None = None) -> LadderEdge:
        u, v = self.nodes[src], self.nodes[dst]
        label, h = self.root_vector(v.weight - u.weight, ell)
        z = bracket(h, u.vector)
        coeffs = self.expand(z, v.weight)
        return LadderEdge(src, label, dst, not z.is_zero(), coeffs is not None, _multiple(z, v.vector))


def _multiple(z: Matrix, x: Matrix) -> Fraction | None:
    if z.is_zero() or x.is_zero():
        return None
    (key, xv), *_ = x.items()
    c = z[key] / xv
    return c if c and x.scale(c) == z else None


def _lf(q: int, *terms: tuple[int, int]) -> LinearForm:
    v = [0] * q
    for c, i in terms:
        v[i - 1] += c
    return LinearForm(tuple(v))


def _listed_edges(sig: Signature) -> list[tuple[str, str, int | None]]:
    """Undirected ladder edges as (node, node, short-root index)."""
    p, q = sig.p, sig.q
    r = p - q

    def S(*terms, ell=None):
        name = f"S({_lf(q, *terms).label()})"
        return name if ell is None else f"{name}_{ell}"

    edges = []
    # S(2f_1) -- S(f_1 ± f_j) -- S(±2f_j)
    for j in range(2, q + 1):
        for s in (1, -1):
            edges.append((S((2, 1)), S((1, 1), (s, j)), None))
            edges.append((S((1, 1), (s, j)), S((2 * s, j)), None))
    # S(∓f_i ± f_j) -- S(f_1 ± f_j) -- S(±f_i ± f_j) -- S(-f_1 ± f_j), i, j >= 2
    for i, j in permutations(range(2, q + 1), 2):
        for sj in (1, -1):
            for si in (1, -1):
                edges.append((S((-si, i), (sj, j)), S((1, 1), (sj, j)), None))
                edges.append((S((1, 1), (sj, j)), S((si, i), (sj, j)), None))
                edges.append((S((si, i), (sj, j)), S((-1, 1), (sj, j)), None))
    # S(±2f_i) -- S(±f_i)_ell
    if r:
        for i in range(1, q + 1):
            for s in (1, -1):
                for ell in range(1, r + 1):
                    edges.append((S((2 * s, i)), S((s, i), ell=ell), ell))
    # zero weight: S(-f_1)_j -- sym(i, j) via H(±f_1)_i; S(-f_1)_i -- dbl(i); S(-f_i-f_{i+1}) -- diff(i)
    if q:
        for i, j in combinations(range(1, r + 1), 2):
            edges.append((S((-1, 1), ell=j), _sym_name(q, i, j), i))
        for i in range(1, r + 1):
            edges.append((S((-1, 1), ell=i), _dbl_name(q, i), i))
        for i in range(1, q):
            edges.append((S((-1, i), (-1, i + 1)), _diff_name(i), None))
    seen, out = set(), []
    for a, b, ell in edges:
        key = (frozenset((a, b)), ell)
        if key not in seen:
            seen.add(key)
            out.append((a, b, ell))
    return out


def _components(nodes: Sequence[str], edges: Sequence[LadderEdge]) -> int:
    parent = {n: n for n in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        if e.verified:
            parent[find(e.source)] = find(e.target)
    return len({find(n) for n in nodes})


def ladder_certificate(sig: Signature, complete: bool = True) -> LadderCertificate:
    """Evaluate every ladder edge in both directions (requires q >= 1).

    The applied root is the target weight minus the source weight.  With
    ``complete=True`` every other nonzero bracket of a root vector with a
    weight vector is added as a completion edge, joining the source to each
    target node with a nonzero coefficient; connectivity is judged on the
    union.
    """
    if sig.q == 0:
        raise ValueError("no ladder when q = 0; use invariant_closure")
    lad = _Ladder(sig)
    edges = []
    for a, b, ell in _listed_edges(sig):
        edges.append(lad.edge(a, b, ell))
        edges.append(lad.edge(b, a, ell))
    names = list(lad.nodes)
    listed_components = _components(names, edges)
    completion = []
    if complete:
        listed = {(e.source, e.root, e.target) for e in edges}
        roots = [s for s in root_spaces(sig) if not s.root.is_zero()]
        for u in lad.nodes.values():
            for space in roots:
                w = u.weight + space.root
                if w not in lad.by_weight:
                    continue
                short = space.root.kind() == "±f_i"
                for ell in range(1, space.multiplicity + 1):
                    label, h = lad.root_vector(space.root, ell if short else None)
                    z = bracket(h, u.vector)
                    if z.is_zero():
                        continue
                    coeffs = lad.expand(z, w)
                    for v, c in zip(lad.by_weight[w], coeffs or []):
                        if c and (u.name, label, v.name) not in listed:
                            completion.append(LadderEdge(u.name, label, v.name, True, True,
                                                         _multiple(z, v.vector), listed=False))
    comps = _components(names, edges + completion) if complete else listed_components
    return LadderCertificate(edges, completion, names, listed_components, comps)


# --- the two-piece decomposition and generation ------------------------------------


@dataclass
class TwoPieceReport:
    sig: Signature
    failures: list[Failure]
    s_module: ModuleAnalysis
    so_module: ModuleAnalysis
    notes: list[str]

    @property
    def direct_sum_ok(self) -> bool:
        return not self.failures

    @property
    def s_irreducible(self) -> bool | None:
        return self.s_module.irreducible

    def to_dict(self) -> dict:
        return {
            "direct_sum": self.direct_sum_ok,
            "failures": [f.to_dict() for f in self.failures],
            "s": self.s_module.to_dict(),
            "so": self.so_module.to_dict(),
            "notes": self.notes,
        }


def two_piece_decomposition(sig: Signature) -> TwoPieceReport:
    """sl_d = so(p,q) + s, both pieces invariant, with per-piece irreducibility verdicts."""
    failures = direct_sum_failures(sig)
    weight_vectors = [x for s in weight_spaces(sig) for x in s.basis]
    s_mod = analyze_module(sig, "s", complement_basis(sig).basis, extra_seeds=weight_vectors)
    so_mod = analyze_module(sig, "so", standard_basis_so(sig))
    notes = []
    for mod in (s_mod, so_mod):
        if mod.verdict == "reducible":
            notes.append(f"{mod.name} is not ad(so{sig})-irreducible: invariant subspace of dim "
                         f"{mod.witness_dim} inside dim {mod.dim} ({mod.evidence})")
        elif mod.verdict == "undetermined":
            notes.append(f"irreducibility of {mod.name} undetermined: {mod.evidence}")
        elif not mod.semisimple and mod.dim > 1:
            notes.append(f"{mod.name}: so{sig} is abelian; {mod.evidence}")
    return TwoPieceReport(sig, failures, s_mod, so_mod, notes)


def generated_subalgebra_dim(generators: Sequence[Matrix], stop_at: int | None = None) -> int:
    """Dimension of the Lie subalgebra generated by ``generators``."""
    n = generators[0].size ** 2
    span = exact_linalg.IncrementalSpan(n)
    elems = [g for g in generators if span.add(g.sparse_flat())]
    i = 0
    while i < len(elems):
        if stop_at is not None and span.dim >= stop_at:
            break
        for j in range(i):
            z = bracket(elems[j], elems[i])
            if not z.is_zero() and span.add(z.sparse_flat()):
                elems.append(z)
        i += 1
    return span.dim


def generation_check(sig: Signature, x: Matrix) -> bool:
    """True iff so(p,q) together with x generates all of sl_d."""
    if x.size != sig.d:
        raise ValueError(f"expected a {sig.d}x{sig.d} matrix")
    if x.trace() != 0:
        raise ValueError("x must be traceless")
    if is_member(sig, x):
        raise ValueError("x lies in so(p,q); the generated subalgebra is so(p,q) itself")
    target = sig.d ** 2 - 1
    return generated_subalgebra_dim(standard_basis_so(sig) + [x], stop_at=target) == target
