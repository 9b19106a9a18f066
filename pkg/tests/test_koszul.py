"""Koszul complexes over the quadratic dual, almost-split exactness
audits, and resolution purity."""

from collections import Counter

import pytest

from conftest import QQ
from nquiver.dsl import parse_quiver
from nquiver.graded import GradedAlgebraView
from nquiver.qdual import quadratic_dual
from nquiver.quiver import LinComb, QuiverError
from nquiver.translation import STARTING, hammock
from nquiver.zq import returning_arrow_quiver, zq_window
from nquiver.koszul import (
    koszul_complex,
    koszul_type_check,
    verify_n_almost_split,
)


@pytest.fixture(scope="module")
def a3_setup():
    a3rs = parse_quiver(
        "quiver a3\nvertices: 1 2 3\narrows:\n  a: 1 -> 2\n  b: 2 -> 3\n"
        "relations:\n  b.a ;\n",
        QQ,
    )
    W = zq_window(a3rs, 1, 0, 2)
    return W, W.translation_structure()


@pytest.fixture(scope="module")
def kron_setup():
    kron = parse_quiver(
        "vertices: 1 2\narrows:\n  a: 1 -> 2\n  b: 1 -> 2\n", QQ
    )
    W = zq_window(kron, 1, 0, 3)
    return W, W.translation_structure()


def test_mesh_complex_shape(a3_setup):
    W, T = a3_setup
    i = W.vertex_of[(1, 1)]
    xi = koszul_complex(T, i)
    assert xi.length == 2
    assert xi.steps[0] == [i]
    assert sorted(xi.steps[1]) == sorted(
        [W.vertex_of[(2, 1)], W.vertex_of[(0, 2)]]
    )
    assert xi.steps[2] == [W.vertex_of[(1, 2)]]
    assert xi.anchor == i
    assert xi.meta["top"] == T.tau_inv[i]


def test_kronecker_complex_doubles_the_middle(kron_setup):
    W, T = kron_setup
    i = W.vertex_of[(0, 1)]
    xi = koszul_complex(T, i)
    assert xi.steps[1] == [W.vertex_of[(1, 1)], W.vertex_of[(1, 1)]]
    assert xi.steps[2] == [W.vertex_of[(0, 2)]]
    ok, witnesses = xi.composites_zero()
    assert ok and witnesses == []


def test_term_multiplicities_follow_the_hammock(a3_setup, kron_setup):
    for W, T in (a3_setup, kron_setup):
        for i in W.interior_vertices():
            xi = koszul_complex(T, i)
            H = hammock(T, i, STARTING)
            for t in range(T.n + 2):
                level = {
                    j: mu for (j, lt), mu in H.vertices.items() if lt == t
                }
                assert Counter(xi.steps[t]) == Counter(level)


def test_composites_vanish_everywhere(a3_setup, kron_setup):
    for W, T in (a3_setup, kron_setup):
        for i in W.interior_vertices():
            ok, _ = koszul_complex(T, i).composites_zero()
            assert ok


def test_boundary_vertex_is_rejected(a3_setup):
    W, T = a3_setup
    with pytest.raises(QuiverError, match="inverse translate"):
        koszul_complex(T, W.vertex_of[(0, 2)])


def test_corrupted_differential_is_detected(a3_setup):
    W, T = a3_setup
    xi = koszul_complex(T, W.vertex_of[(1, 1)])
    entry = xi.diffs[2][0][0]
    assert entry is not None
    xi.diffs[2][0][0] = LinComb(
        QQ,
        [(p, QQ.add(c, QQ.one)) for p, c in entry.terms],
        source=entry.source,
        target=entry.target,
    )
    ok, witnesses = xi.composites_zero()
    assert not ok and witnesses


def test_interior_almost_split_verification(a3_setup, kron_setup):
    for W, T in (a3_setup, kron_setup):
        ok, report = verify_n_almost_split(T)
        assert ok
        assert set(report) == {
            W.quiver.vertices[i] for i in W.interior_vertices()
        }
        for entry in report.values():
            assert entry["composites_zero"]
            assert entry["source"] == {} and entry["sink"] == {}


def test_boundary_test_objects_break_top_exactness(a3_setup):
    # probing with every vertex (not just the interior) must expose the
    # window boundary: the top differential acquires a kernel visible
    # from the far corner.
    W, T = a3_setup
    ok, report = verify_n_almost_split(
        T, test_vertices=list(range(len(W.quiver.vertices)))
    )
    assert not ok
    assert report["1_1"]["sink"] == {"3_2": [("inject", 2)]}


def test_corrupted_complex_fails_before_exactness(a3_setup):
    W, T = a3_setup
    xi = koszul_complex(T, W.vertex_of[(1, 1)])
    entry = xi.diffs[1][0][0]
    xi.diffs[1][0][0] = LinComb(
        QQ,
        [(p, QQ.add(c, QQ.one)) for p, c in entry.terms],
        source=entry.source,
        target=entry.target,
    )
    ok, report = verify_n_almost_split(T, complexes=[xi])
    assert not ok
    assert not report["2_1"]["composites_zero"]
    assert "witnesses" in report["2_1"]


def test_koszul_type_of_the_a3_trivial_extension(a3rs):
    raq = returning_arrow_quiver(GradedAlgebraView(a3rs), twist="sign")
    rep = koszul_type_check(raq.bound_quiver, steps=6)
    assert rep.q_hat == 2
    assert rep.pure_through == 2
    assert rep.per_simple["1"] == [[0], [1], [2], [4], [5], [6], [8]]
    assert rep.per_simple["2"] == [[0], [1, 1], [2], [4], [5, 5], [6], [8]]
    assert rep.per_simple["3"] == rep.per_simple["1"]


def test_koszul_type_of_the_kronecker_trivial_extension(kron):
    raq = returning_arrow_quiver(GradedAlgebraView(kron), twist="sign")
    rep = koszul_type_check(raq.bound_quiver, steps=6)
    assert rep.q_hat is None
    assert rep.pure_through == 6
    assert rep.per_simple["1"][:4] == [[0], [1, 1], [2, 2, 2], [3, 3, 3, 3]]


def test_koszul_type_of_the_golden_trivial_extension(a4mesh):
    lam = quadratic_dual(a4mesh).bound_quiver
    raq = returning_arrow_quiver(GradedAlgebraView(lam), twist="sign")
    rep = koszul_type_check(raq.bound_quiver, steps=5)
    assert rep.pure_through == 3
    assert rep.q_hat == 3


def test_koszul_type_of_a_semisimple_algebra():
    ss = parse_quiver("vertices: 1 2\n", QQ)
    rep = koszul_type_check(ss, steps=4)
    assert rep.pure_through == 4
    assert rep.q_hat is None
    assert rep.per_simple["1"] == [[0], [], [], [], []]
