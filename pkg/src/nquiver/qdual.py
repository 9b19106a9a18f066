"""Quadratic duals of bound quivers.

The dual keeps the quiver and replaces the relation span, per vertex pair,
by its orthogonal complement inside the span of length-2 paths, where the
paths themselves form an orthonormal basis.  Complements are emitted as
reduced echelon bases in canonical path order, so the dual of a canonical
presentation is canonical.
"""

from .linalg import nullspace, rref, same_span
from .quiver import BoundQuiver, LinComb, QuiverError, enumerate_paths, opposite


class QuadraticDualResult:
    """The dual bound quiver plus the per-pair dimension bookkeeping
    dim span(rho) + dim span(rho-perp) = #paths_2(i, j)."""

    def __init__(self, bound_quiver, pair_dims):
        self.bound_quiver = bound_quiver
        self.pair_dims = pair_dims  # {(i, j): (dim_rho, dim_perp, n_paths)}

    def dims_ok(self):
        return all(a + b == n for a, b, n in self.pair_dims.values())

    def __repr__(self):
        return "QuadraticDualResult(%r)" % (self.bound_quiver,)


def _relation_rows(bq, paths, i, j):
    """Coefficient rows, over the given path basis, of the degree-2
    relations with endpoints (i, j)."""
    index = {p.key(): k for k, p in enumerate(paths)}
    rows = []
    for r in bq.relations:
        if r.degree != 2 or r.source != i or r.target != j:
            continue
        row = [bq.field.zero] * len(paths)
        for p, c in r.terms:
            row[index[p.key()]] = c
        rows.append(row)
    return rows


def quadratic_dual(bq):
    """Quadratic dual of a quadratic bound quiver, with canonical
    (echelon) relation bases on both sides of the bookkeeping."""
    if not bq.is_quadratic:
        raise QuiverError("quadratic dual needs all relations of length 2")
    q = bq.quiver
    field = bq.field
    nv = len(q.vertices)
    dual_relations = []
    pair_dims = {}
    for i in range(nv):
        for j in range(nv):
            paths = enumerate_paths(q, i, j, 2)
            if not paths:
                continue
            rows = _relation_rows(bq, paths, i, j)
            ech, _ = rref(field, rows)
            comp = nullspace(field, ech, len(paths))
            for vec in comp:
                terms = [
                    (p, c) for p, c in zip(paths, vec) if not field.is_zero(c)
                ]
                dual_relations.append(LinComb(field, terms))
            pair_dims[(i, j)] = (len(ech), len(comp), len(paths))
    return QuadraticDualResult(
        BoundQuiver(q, dual_relations, field), pair_dims
    )


def dual_pair_check(bq):
    """Verify that dualizing twice returns the original relation span,
    pair by pair.  Returns {(i, j): bool}; vacuous pairs are omitted."""
    if not bq.is_quadratic:
        raise QuiverError("dual pair check needs a quadratic bound quiver")
    ddual = quadratic_dual(quadratic_dual(bq).bound_quiver).bound_quiver
    q = bq.quiver
    field = bq.field
    report = {}
    nv = len(q.vertices)
    for i in range(nv):
        for j in range(nv):
            paths = enumerate_paths(q, i, j, 2)
            if not paths:
                continue
            rows_orig = _relation_rows(bq, paths, i, j)
            rows_back = _relation_rows(ddual, paths, i, j)
            report[(i, j)] = same_span(field, rows_orig, rows_back)
    return report


def dual_commutes_with_opposite(bq):
    """dual(op(q)) and op(dual(q)) computed independently and compared as
    relation spans on the opposite quiver.  Returns True/False."""
    route_a = quadratic_dual(opposite(bq)).bound_quiver
    route_b = opposite(quadratic_dual(bq).bound_quiver)
    if route_a.quiver.arrow_index != route_b.quiver.arrow_index:
        return False
    q = route_a.quiver
    field = bq.field
    nv = len(q.vertices)
    for i in range(nv):
        for j in range(nv):
            paths = enumerate_paths(q, i, j, 2)
            if not paths:
                continue
            if not same_span(
                field,
                _relation_rows(route_a, paths, i, j),
                _relation_rows(route_b, paths, i, j),
            ):
                return False
    return True
