"""Degreewise quotient-algebra views, checked against independent path
counts and an independently written ideal-dimension oracle."""

from fractions import Fraction

import pytest
import sympy

from conftest import QQ
from nquiver.dsl import parse_quiver
from nquiver.graded import (
    CutoffExceeded,
    GradedAlgebraView,
    is_n_properly_graded,
    loewy_length,
    maximal_bound_paths,
)
from nquiver.quiver import LinComb, arrow_path, compose, enumerate_paths, path_name


def ideal_dim_oracle(bq, t, i, j):
    """Dimension of the degree-t two-sided ideal slice between i and j,
    computed from scratch: pad each relation with all paths on both sides
    and row-reduce with sympy."""
    q = bq.quiver
    paths = enumerate_paths(q, i, j, t)
    index = {p.key(): k for k, p in enumerate(paths)}
    rows = []
    for r in bq.relations:
        pre = r.degree
        for left in range(t - pre + 1):
            right = t - pre - left
            for lp in enumerate_paths(q, i, r.source, left):
                for rp in enumerate_paths(q, r.target, j, right):
                    row = [Fraction(0)] * len(paths)
                    for p, c in r.terms:
                        full = compose(q, compose(q, lp, p), rp)
                        row[index[full.key()]] += c
                    rows.append(row)
    if not rows:
        return 0, len(paths)
    m = sympy.Matrix(len(rows), len(paths), lambda a, b: sympy.Rational(rows[a][b]))
    return m.rank(), len(paths)


def quotient_dims_match_oracle(bq, max_deg):
    view = GradedAlgebraView(bq)
    q = bq.quiver
    for t in range(max_deg + 1):
        for i in range(len(q.vertices)):
            for j in range(len(q.vertices)):
                rank, npaths = ideal_dim_oracle(bq, t, i, j)
                assert view.dim(t, i, j) == npaths - rank


def test_path_algebra_dims_count_paths(a3, kron):
    for bq in (a3, kron):
        view = GradedAlgebraView(bq)
        q = bq.quiver
        for t in range(4):
            for i in range(len(q.vertices)):
                for j in range(len(q.vertices)):
                    assert view.dim(t, i, j) == len(enumerate_paths(q, i, j, t))


def test_bound_dims_match_independent_oracle(a3rs, square, a4mesh):
    quotient_dims_match_oracle(a3rs, 3)
    quotient_dims_match_oracle(square, 3)
    quotient_dims_match_oracle(a4mesh, 4)


def test_degree_zero_is_the_vertex_span(a3rs):
    view = GradedAlgebraView(a3rs)
    assert view.total_dim(0) == 3
    assert view.dim(0, 0, 0) == 1
    assert view.dim(0, 0, 1) == 0


def test_radical_square_zero_dims(a3rs):
    view = GradedAlgebraView(a3rs)
    assert view.dim(1, 0, 1) == 1
    assert view.dim(1, 1, 2) == 1
    assert view.total_dim(2) == 0
    assert view.top_degree() == 1
    assert loewy_length(view) == 2


def test_component_additivity(a3rs, a4mesh):
    # quotient basis + independent ideal rows account for every path
    for bq in (a3rs, a4mesh):
        view = GradedAlgebraView(bq)
        q = bq.quiver
        for t in range(3):
            for i in range(len(q.vertices)):
                for j in range(len(q.vertices)):
                    comp = view.component(t, i, j)
                    npaths = len(enumerate_paths(q, i, j, t))
                    assert len(comp.paths) == npaths
                    assert comp.dim + len(comp.ideal_rows) == npaths
                    assert len(set(comp.ideal_pivots)) == len(comp.ideal_rows)


def test_multiply_respects_relations(a3, a3rs):
    for bq, expect_zero in ((a3, False), (a3rs, True)):
        view = GradedAlgebraView(bq)
        q = bq.quiver
        a = LinComb(QQ, [(arrow_path(q, 0), QQ.one)])
        b = LinComb(QQ, [(arrow_path(q, 1), QQ.one)])
        prod = view.multiply(b, a)  # algebra order: a applied first
        assert view.is_zero_class(prod) == expect_zero


def test_class_of_and_reduce(a3):
    view = GradedAlgebraView(a3)
    q = a3.quiver
    ba = compose(q, arrow_path(q, 0), arrow_path(q, 1))
    lc = LinComb(QQ, [(ba, QQ.coerce(3))])
    cls = view.class_of(lc)
    assert cls.degree == 2
    assert cls.source == 0 and cls.target == 2
    assert view.reduce(lc) == [QQ.coerce(3)]


def test_maximal_bound_paths(a3, a3rs, kron, a4mesh):
    view = GradedAlgebraView(a3)
    classes = maximal_bound_paths(view)
    assert [(c.degree, path_name(a3.quiver, c.lincomb.terms[0][0])) for c in classes] == [
        (2, "b.a")
    ]
    for bq, names in ((a3rs, ["a", "b"]), (kron, ["a", "b"])):
        got = sorted(
            path_name(bq.quiver, c.lincomb.terms[0][0])
            for c in maximal_bound_paths(GradedAlgebraView(bq))
        )
        assert got == names
    assert len(maximal_bound_paths(GradedAlgebraView(a4mesh))) == 4


def test_proper_grading(a3, a3rs, kron, a4mesh):
    assert is_n_properly_graded(GradedAlgebraView(a3)) == (True, 2)
    assert is_n_properly_graded(GradedAlgebraView(a3rs)) == (True, 1)
    assert is_n_properly_graded(GradedAlgebraView(kron)) == (True, 1)
    assert is_n_properly_graded(GradedAlgebraView(a4mesh)) == (True, 3)
    mixed = parse_quiver(
        "vertices: 1 2 3\narrows:\n  a: 1 -> 2\n  b: 2 -> 3\n  c: 1 -> 3\n",
        QQ,
    )
    ok, _ = is_n_properly_graded(GradedAlgebraView(mixed))
    assert not ok  # maximal paths of lengths 1 and 2 coexist


def test_loewy_lengths(a3, a4mesh):
    assert loewy_length(GradedAlgebraView(a3)) == 3
    assert loewy_length(GradedAlgebraView(a4mesh)) == 4


def test_cutoff_guard():
    loop = parse_quiver("vertices: v\narrows:\n  l: v -> v\n", QQ)
    view = GradedAlgebraView(loop, cutoff=3)
    assert view.dim(3, 0, 0) == 1
    with pytest.raises(CutoffExceeded):
        view.dim(4, 0, 0)


def test_acyclic_views_terminate(a3):
    view = GradedAlgebraView(a3)
    assert view.max_degree_bound() == 2
    assert view.total_dim(3) == 0
