"""Quadratic duals: orthogonal relation complements with the path basis
declared orthonormal."""

import pytest

from conftest import QQ
from nquiver.dsl import parse_quiver, serialize_quiver
from nquiver.linalg import same_span
from nquiver.qdual import (
    dual_commutes_with_opposite,
    dual_pair_check,
    quadratic_dual,
)
from nquiver.quiver import QuiverError, enumerate_paths


def relation_rows(bq, i, j):
    paths = enumerate_paths(bq.quiver, i, j, 2)
    index = {p.key(): k for k, p in enumerate(paths)}
    rows = []
    for r in bq.relations:
        if r.source != i or r.target != j:
            continue
        row = [QQ.zero] * len(paths)
        for p, c in r.terms:
            row[index[p.key()]] = c
        rows.append(row)
    return rows


def spans_equal(bq_a, bq_b):
    assert bq_a.quiver == bq_b.quiver
    nv = len(bq_a.quiver.vertices)
    for i in range(nv):
        for j in range(nv):
            if not same_span(QQ, relation_rows(bq_a, i, j), relation_rows(bq_b, i, j)):
                return False
    return True


def test_dual_of_full_length_two_relations_is_the_path_algebra(a3, a3rs):
    res = quadratic_dual(a3rs)
    assert res.bound_quiver.relations == ()
    assert res.bound_quiver.quiver == a3.quiver
    assert res.dims_ok()


def test_dual_of_the_path_algebra_kills_all_length_two_paths(a3, a3rs):
    res = quadratic_dual(a3)
    assert spans_equal(res.bound_quiver, a3rs)
    # and the Kronecker quiver has no length-2 paths at all, so both the
    # algebra and its dual are relation-free
    kron_dual = quadratic_dual(parse_quiver("vertices: 1 2\narrows:\n  a: 1 -> 2\n  b: 1 -> 2\n", QQ))
    assert kron_dual.bound_quiver.relations == ()


def test_commutative_square_dual(square):
    res = quadratic_dual(square).bound_quiver
    # complement of span{b.a - d.c} inside the 2-dim path space
    assert len(res.relations) == 1
    assert "b.a + d.c ;" in serialize_quiver(res)


def test_double_dual_is_the_identity_on_spans(a3, a3rs, square, a4mesh):
    for bq in (a3, a3rs, square, a4mesh):
        ddual = quadratic_dual(quadratic_dual(bq).bound_quiver).bound_quiver
        assert spans_equal(ddual, bq)
        assert all(dual_pair_check(bq).values())


def test_pair_dims_bookkeeping(a4mesh):
    res = quadratic_dual(a4mesh)
    assert res.dims_ok()
    total_rho = sum(a for a, _, _ in res.pair_dims.values())
    total_perp = sum(b for _, b, _ in res.pair_dims.values())
    total_paths = sum(n for _, _, n in res.pair_dims.values())
    assert total_rho == len(a4mesh.relations)
    assert total_rho + total_perp == total_paths


def test_dual_commutes_with_opposite(a3, a3rs, square, a4mesh):
    for bq in (a3, a3rs, square, a4mesh):
        assert dual_commutes_with_opposite(bq)


def test_non_quadratic_input_is_rejected():
    cubic = parse_quiver(
        "vertices: 1 2 3 4\narrows:\n  a: 1 -> 2\n  b: 2 -> 3\n  c: 3 -> 4\n"
        "relations:\n  c.b.a ;\n",
        QQ,
    )
    with pytest.raises(QuiverError):
        quadratic_dual(cubic)
    with pytest.raises(QuiverError):
        dual_pair_check(cubic)


def test_dual_relations_are_canonical(a4mesh):
    once = quadratic_dual(a4mesh).bound_quiver
    twice = quadratic_dual(a4mesh).bound_quiver
    assert serialize_quiver(once) == serialize_quiver(twice)
    assert once == twice
