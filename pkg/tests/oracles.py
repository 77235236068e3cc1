"""Independent descriptions used as test oracles.

so(p,q) = {X : X^t J + J X = 0} and s = {X : X^t J = J X, tr X = 0} with
J = diag(1,...,1,-1,...,-1) (p ones, q minus ones); these avoid the block
basis altogether.
"""


from sopq.exact_linalg import VectorSpaceBasis, kernel, rank
from sopq.matrix import Matrix, bracket


def j_matrix(sig) -> Matrix:
    return Matrix(sig.d, {(k, k): (1 if k < sig.p else -1) for k in range(sig.d)})


def in_so_oracle(sig, x: Matrix) -> bool:
    j = j_matrix(sig)
    return (x.T @ j + j @ x).is_zero()


def in_s_oracle(sig, x: Matrix) -> bool:
    j = j_matrix(sig)
    return x.trace() == 0 and (x.T @ j - j @ x).is_zero()


def so_dimension_oracle(sig) -> int:
    """Dimension of {X : X^t J + J X = 0}, as the kernel of the linear map."""
    d, j = sig.d, j_matrix(sig)
    rows = []
    for r in range(d):
        for c in range(d):
            # entry (r, c) of X^t J + J X is x_{c r} J_{c c} + J_{r r} x_{r c}
            row = [0] * (d * d)
            row[c * d + r] += j[c, c]
            row[r * d + c] += j[r, r]
            rows.append(row)
    return kernel(rows, d * d).dim


def brute_closure_dim(generators, seed) -> int:
    """Invariant closure by repeated full sweeps until the span stops growing."""
    vecs = [seed]
    n = seed.size ** 2
    while True:
        span = VectorSpaceBasis.span(n, [v.flatten() for v in vecs])
        new = [bracket(g, v) for g in generators for v in vecs]
        grown = VectorSpaceBasis.span(n, [v.flatten() for v in vecs + new])
        if grown.dim == span.dim:
            return span.dim
        vecs = [Matrix.from_flat(seed.size, v) for v in grown.vectors]


def brute_generated_dim(generators) -> int:
    """Lie subalgebra generated by ``generators``: bracket the whole span with itself until stable."""
    n = generators[0].size ** 2
    span = VectorSpaceBasis.span(n, [g.flatten() for g in generators])
    while True:
        mats = [Matrix.from_flat(generators[0].size, v) for v in span.vectors]
        grown = VectorSpaceBasis.span(n, list(span.vectors) + [bracket(a, b).flatten() for a in mats for b in mats])
        if grown.dim == span.dim:
            return span.dim
        span = grown


def is_independent(mats) -> bool:
    return rank([m.flatten() for m in mats]) == len(mats)




def eigenspace_dim(space, generators, coeffs) -> int:
    """dim {X in span(space) : [F_i, X] = c_i X for all i}, via a sympy rank."""
    import sympy

    cols = []
    for b in space:
        col = []
        for g, c in zip(generators, coeffs):
            col += list((bracket(g, b) - b.scale(c)).flatten())
        cols.append(col)
    if not cols:
        return 0
    if not cols[0]:
        return len(space)
    m = sympy.Matrix(cols).T
    return len(space) - m.rank()
