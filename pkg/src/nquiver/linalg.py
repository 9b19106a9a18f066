"""Exact dense linear algebra over a ground field.

Matrices are lists of row lists of field elements.  Every routine is pure
(inputs are never mutated) and deterministic; the canonical basis of any
subspace that leaves this module is its reduced row echelon basis, which
is what makes downstream relation sets and quotient bases reproducible.

Over F_p with word-size modulus, rref dispatches to the compiled kernel
(nquiver._rrefkern) when it was built; rref_pure is the reference
implementation and the fallback.
"""

from .fields import PrimeField

try:
    from . import _rrefkern
except ImportError:  # extension not built; pure Python throughout
    _rrefkern = None


def rref_pure(field, rows):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    mat = [list(row) for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for j in range(ncols):
        if r == len(mat):
            break
        piv = None
        for i in range(r, len(mat)):
            if not field.is_zero(mat[i][j]):
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = field.inv(mat[r][j])
        mat[r] = [field.mul(inv, v) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and not field.is_zero(mat[i][j]):
                f = mat[i][j]
                mat[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(mat[i], mat[r])]
        pivots.append(j)
        r += 1
    return mat[:r], pivots


def rref(field, rows):
    """rref_pure, or the compiled F_p kernel when available and applicable."""
    if (
        _rrefkern is not None
        and isinstance(field, PrimeField)
        and field.p < 2**31
        and rows
    ):
        return _rrefkern.rref_mod_p([list(r) for r in rows], len(rows[0]), field.p)
    return rref_pure(field, rows)


def rank(field, rows):
    return len(rref(field, rows)[0])


def reduce_row(field, ech_rows, pivots, vec):
    """Normal form of vec modulo the row space given in echelon form."""
    v = list(vec)
    for row, j in zip(ech_rows, pivots):
        c = v[j]
        if not field.is_zero(c):
            v = [field.sub(a, field.mul(c, b)) for a, b in zip(v, row)]
    return v


def nullspace(field, rows, ncols):
    """Canonical (rref) basis of {x : A·x = 0} for the matrix with these rows."""
    ech, pivots = rref(field, rows)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = [field.zero] * ncols
        vec[f] = field.one
        for row, j in zip(ech, pivots):
            if not field.is_zero(row[f]):
                vec[j] = field.neg(row[f])
        basis.append(vec)
    out, _ = rref(field, basis)
    return out


def solve(field, rows, rhs):
    """One solution of A·x = rhs, or None if inconsistent."""
    if not rows:
        return None if any(not field.is_zero(b) for b in rhs) else []
    ncols = len(rows[0])
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    ech, pivots = rref(field, aug)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row, j in zip(ech, pivots):
        x[j] = row[ncols]
    return x


def same_span(field, rows_a, rows_b):
    """Whether two row sets span the same subspace (rref comparison)."""
    ech_a, piv_a = rref(field, rows_a)
    ech_b, piv_b = rref(field, rows_b)
    return ech_a == ech_b and piv_a == piv_b


def span_contains(field, ech_rows, pivots, vec):
    return all(field.is_zero(v) for v in reduce_row(field, ech_rows, pivots, vec))


def mat_mul(field, a, b):
    if not a or not b:
        return [[] for _ in a]
    n = len(b[0])
    out = []
    for row in a:
        acc = [field.zero] * n
        for c, brow in zip(row, b):
            if not field.is_zero(c):
                acc = [field.add(x, field.mul(c, y)) for x, y in zip(acc, brow)]
        out.append(acc)
    return out


def mat_vec(field, a, v):
    out = []
    for row in a:
        s = field.zero
        for c, x in zip(row, v):
            s = field.add(s, field.mul(c, x))
        out.append(s)
    return out


def transpose(rows, ncols=None):
    if not rows:
        return [[] for _ in range(ncols)] if ncols else []
    return [list(col) for col in zip(*rows)]


def identity(field, n):
    return [
        [field.one if i == j else field.zero for j in range(n)] for i in range(n)
    ]


def zero_matrix(field, nrows, ncols):
    return [[field.zero] * ncols for _ in range(nrows)]


def is_zero_matrix(field, rows):
    return all(field.is_zero(v) for row in rows for v in row)
