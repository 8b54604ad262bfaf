"""Exact Gaussian elimination over any of the toolkit's fields.

Matrices are lists/tuples of row tuples.  Kernel bases are
echelon-normalized so all outputs are deterministic.
"""

from __future__ import annotations

from .errors import NoSolution


def _rref(rows, field, ncols):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not field.is_zero(rows[i][c]):
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.one() / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def rref(rows, field, ncols=None):
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return _rref(rows, field, ncols)


def rank(rows, field, ncols=None):
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return len(_rref(rows, field, ncols)[0])


def kernel_basis(rows, field, ncols):
    """Echelon-normalized basis of the right kernel of the matrix."""
    red, pivots = _rref(rows, field, ncols) if rows else ([], [])
    piv_set = set(pivots)
    free = [c for c in range(ncols) if c not in piv_set]
    basis = []
    for fc in free:
        vec = [field.zero()] * ncols
        vec[fc] = field.one()
        for i, pc in enumerate(pivots):
            vec[pc] = -red[i][fc]
        basis.append(tuple(vec))
    return basis


def solve(rows, rhs, field):
    """One solution of rows * x = rhs, or None when inconsistent."""
    if not rows:
        return () if all(field.is_zero(b) for b in rhs) else None
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red_full, piv_full = _rref(aug, field, ncols + 1)
    if ncols in piv_full:
        return None
    sol = [field.zero()] * ncols
    for i, pc in enumerate(piv_full):
        sol[pc] = red_full[i][ncols]
        for c in range(pc + 1, ncols):
            if not field.is_zero(red_full[i][c]):
                sol[pc] = sol[pc] - red_full[i][c] * sol[c]
    # pivots of rref have zero entries elsewhere, so back substitution above
    # only matters for free columns (which stay zero); verify exactly
    for r, b in zip(rows, rhs):
        acc = field.zero()
        for a, x in zip(r, sol):
            acc = acc + a * x
        if not field.is_zero(acc - b):
            return None
    return tuple(sol)


def solve_linear(rows, field, mode="kernel", rhs=None, ncols=None):
    """Spec-level entry point: kernel basis or a single solution.

    mode "kernel" returns the echelon-normalized kernel basis; mode
    "solve" returns one exact solution of rows*x = rhs and raises
    NoSolution when the system is inconsistent.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if mode == "kernel":
        return kernel_basis(rows, field, ncols)
    if mode == "solve":
        sol = solve(rows, rhs, field)
        if sol is None:
            raise NoSolution("inconsistent linear system")
        return sol
    raise ValueError("unknown mode %r" % mode)


def det(rows, field):
    n = len(rows)
    rows = [list(r) for r in rows]
    out = field.one()
    for c in range(n):
        pr = None
        for i in range(c, n):
            if not field.is_zero(rows[i][c]):
                pr = i
                break
        if pr is None:
            return field.zero()
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            out = -out
        out = out * rows[c][c]
        inv = field.one() / rows[c][c]
        for i in range(c + 1, n):
            if not field.is_zero(rows[i][c]):
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return out


def invert(rows, field):
    """Inverse matrix, or None when singular."""
    n = len(rows)
    aug = [list(r) + [field.one() if i == j else field.zero() for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = _rref(aug, field, 2 * n)
    if pivots[:n] != list(range(n)):
        return None
    return [tuple(row[n:]) for row in red[:n]]


def mat_vec(rows, vec, field):
    out = []
    for r in rows:
        acc = field.zero()
        for a, x in zip(r, vec):
            acc = acc + a * x
        out.append(acc)
    return tuple(out)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(u, c):
    return tuple(a * c for a in u)


def is_zero_vec(u, field):
    return all(field.is_zero(a) for a in u)


def express(vec, basis_rows, field):
    """Coordinates of vec in the span of basis_rows, or None."""
    if not basis_rows:
        return () if is_zero_vec(vec, field) else None
    ncols = len(basis_rows)
    rows = [tuple(b[i] for b in basis_rows) for i in range(len(vec))]
    return solve(rows, vec, field)


def extend_to_basis(vectors, field, n):
    """Standard basis vectors completing the given independent set."""
    rows = [list(v) for v in vectors]
    chosen = []
    for j in range(n):
        cand = [field.zero()] * n
        cand[j] = field.one()
        if rank(rows + [cand], field, n) > len(rows):
            rows.append(cand)
            chosen.append(tuple(cand))
        if len(rows) == n:
            break
    return chosen


def independent_subset(vectors, field, n, target=None):
    """Greedy maximal independent subset, in input order."""
    rows = []
    out = []
    for v in vectors:
        if rank(rows + [list(v)], field, n) > len(rows):
            rows.append(list(v))
            out.append(tuple(v))
            if target is not None and len(out) == target:
                break
    return out
