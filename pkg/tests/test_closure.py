"""Translate-closure of the projectives, AR data, and finiteness probes."""

import random

import pytest

from conftest import QQ
from nquiver.dsl import parse_quiver
from nquiver.qdual import quadratic_dual
from nquiver import reps as R

COXETER_INV = [[-1, 2], [-2, 3]]  # Kronecker, minus direction


@pytest.fixture(scope="module")
def a3_closure(request):
    bq = parse_quiver(
        "quiver a3\nvertices: 1 2 3\narrows:\n  a: 1 -> 2\n  b: 2 -> 3\n", QQ
    )
    return R.closure(bq, 1)


@pytest.fixture(scope="module")
def kron_closure():
    bq = parse_quiver(
        "quiver kron\nvertices: 1 2\narrows:\n  a: 1 -> 2\n  b: 1 -> 2\n", QQ
    )
    return R.closure(bq, 1, "minus", budget=2)


def test_a3_closure_members(a3_closure):
    C = a3_closure
    assert sorted(C.labels) == [
        ("1", 0), ("2", 0), ("2", 1), ("3", 0), ("3", 1), ("3", 2),
    ]
    assert C.terminated
    assert C.gldim == 1
    assert C.defects == []


def test_a3_closure_dimension_vectors(a3_closure):
    dims = {l: a3_closure.rep(l).dims for l in a3_closure.labels}
    assert dims == {
        ("1", 0): [1, 1, 1],
        ("2", 0): [0, 1, 1],
        ("3", 0): [0, 0, 1],
        ("2", 1): [1, 1, 0],
        ("3", 1): [0, 1, 0],
        ("3", 2): [1, 0, 0],
    }


def test_a3_ar_quiver(a3_closure):
    assert a3_closure.ar_arrows == {
        (("1", 0), ("2", 1)): 1,
        (("2", 0), ("1", 0)): 1,
        (("2", 0), ("3", 1)): 1,
        (("2", 1), ("3", 2)): 1,
        (("3", 0), ("2", 0)): 1,
        (("3", 1), ("2", 1)): 1,
    }
    assert a3_closure.tau_pairs == {
        ("2", 1): ("2", 0),
        ("3", 1): ("3", 0),
        ("3", 2): ("3", 1),
    }


def test_a3_closure_matches_window(a3_closure):
    base = quadratic_dual(a3_closure.bq).bound_quiver
    rep = R.compare_with_prediction(a3_closure, base, 1)
    assert rep["ok"]
    for key in ("vertices", "arrows", "translation", "mesh"):
        assert rep[key][0], rep[key][1]


def test_mid_orbit_deletion_is_detected(a3_closure):
    C = a3_closure
    drop = ("3", 1)
    forged = R.ClosureResult(
        C.bq, C.n, C.direction,
        [l for l in C.labels if l != drop],
        {k: v for k, v in C.reps.items() if k != drop},
        True, C.budget,
        {k: v for k, v in C.ar_arrows.items() if drop not in k},
        {k: v for k, v in C.tau_pairs.items() if drop not in (k, v)},
        C.gldim, [],
    )
    rep = R.compare_with_prediction(forged, quadratic_dual(C.bq).bound_quiver, 1)
    assert not rep["ok"]
    assert not rep["vertices"][0]
    assert rep["vertices"][1]["orbit_gaps"] == [drop]


def test_kronecker_closure_follows_inverse_coxeter(kron_closure):
    C = kron_closure
    assert not C.terminated
    assert C.labels == [
        ("1", 0), ("2", 0), ("1", 1), ("2", 1), ("1", 2), ("2", 2),
    ]
    dims = {l: C.rep(l).dims for l in C.labels}
    assert dims[("1", 0)] == [1, 2]
    assert dims[("2", 0)] == [0, 1]
    for (u, t), d in dims.items():
        if (u, t + 1) in dims:
            stepped = [sum(r * x for r, x in zip(row, d)) for row in COXETER_INV]
            assert dims[(u, t + 1)] == stepped
    # every AR arrow is doubled, matching the doubled base arrows
    assert set(C.ar_arrows.values()) == {2}
    assert ((("2", 0), ("1", 0)) in C.ar_arrows)
    assert ((("1", 0), ("2", 1)) in C.ar_arrows)


def test_kronecker_closure_matches_window(kron_closure):
    base = quadratic_dual(kron_closure.bq).bound_quiver
    rep = R.compare_with_prediction(kron_closure, base, 1)
    assert rep["ok"]


def test_mesh_algebra_closure_terminates(a4mesh):
    C = R.closure(a4mesh, 2)
    assert C.terminated
    assert C.gldim == 2
    assert len(C.labels) == 20
    per_t = {}
    for _, t in C.labels:
        per_t[t] = per_t.get(t, 0) + 1
    assert per_t == {0: 10, 1: 6, 2: 3, 3: 1}
    rep = R.compare_with_prediction(C, quadratic_dual(a4mesh).bound_quiver, 2)
    assert rep["ok"]


def test_hom_vanishes_against_the_slice_order(a3_closure):
    C = a3_closure
    for x in C.labels:
        for y in C.labels:
            d = len(R.hom_space(C.rep(x), C.rep(y)))
            if x[1] > y[1]:
                assert d == 0, (x, y)
            if x == y:
                assert d == 1


def test_ar_counts_survive_base_change(a3_closure):
    rng = random.Random(11)

    def change(rep):
        mats = []
        for d in rep.dims:
            while True:
                m = [[QQ.coerce(rng.randint(-3, 3)) for _ in range(d)]
                     for _ in range(d)]
                from nquiver.linalg import rank
                if rank(QQ, m) == d:
                    break
            mats.append(m)
        return rep.base_change(mats)

    members = [(l, change(a3_closure.rep(l))) for l in a3_closure.labels]
    counts, _ = R.ar_arrow_counts(members)
    assert counts == a3_closure.ar_arrows


def test_iyama_verdicts(a3, kron, a4mesh):
    assert R.iyama_check(a3, 1, 1) == (True, [0])
    assert R.iyama_check(kron, 1, 1) == (False, [1])
    assert R.iyama_check(a4mesh, 3, 2) == (True, [0, 0])
    assert R.iyama_check(a4mesh, 1, 2) == (True, [0, 0])
    pts = parse_quiver("quiver pts\nvertices: 1 2\n", QQ)
    assert R.iyama_check(pts, 1, 1) == (True, [0])


def test_rep_infinite_probe(kron, a3):
    out = R.n_rep_infinite_probe(kron, 1, 4)
    assert out["probe_positive"]
    assert out["reason"] is None
    assert out["comparison"]["ok"]
    assert not out["closure"].terminated

    out = R.n_rep_infinite_probe(a3, 1, 6)
    assert not out["probe_positive"]
    assert out["reason"] == "closure terminated at step 2"

    pts = parse_quiver("quiver pts\nvertices: 1 2\n", QQ)
    out = R.n_rep_infinite_probe(pts, 1, 3)
    assert not out["probe_positive"]
    assert out["reason"] == "closure terminated at step 0"
