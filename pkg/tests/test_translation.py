"""Translation structures, hammocks, truncations, maturity."""

import pytest

from conftest import QQ
from nquiver.dsl import parse_quiver
from nquiver.quiver import QuiverError
from nquiver.translation import (
    ENDING,
    STARTING,
    TranslationStructure,
    convexity_witness,
    derive_translation,
    hammock,
    hammock_bijection_check,
    is_stable_n_translation,
    is_tau_mature,
    truncate,
    truncate_bound_quiver,
)
from nquiver.zq import zq_window


@pytest.fixture
def a3_window(a3rs):
    return zq_window(a3rs, 1, 0, 3)


def test_derived_translation_matches_the_window(a3_window):
    T = a3_window.translation_structure()
    D = derive_translation(a3_window.bound_quiver, 1)
    assert D.tau == T.tau
    assert D.tau_inv == T.tau_inv
    assert D.check_translation_paths() == []


def test_translation_bookkeeping(a3_window):
    T = a3_window.translation_structure()
    q = a3_window.quiver
    names = lambda ids: sorted(q.vertices[v] for v in ids)
    assert names(T.projective_vertices()) == ["1_0", "2_0", "3_0"]
    assert names(T.injective_vertices()) == ["1_3", "2_3", "3_3"]
    # tau shifts the slice index down by one
    for i, ti in T.tau.items():
        u, t = a3_window.coord_of[i]
        assert a3_window.coord_of[ti] == (u, t - 1)


def test_translation_must_be_injective(a3rs):
    with pytest.raises(QuiverError):
        TranslationStructure(a3rs, 1, {"2": "1", "3": "1"})


def test_hammock_levels_and_arrows(a3_window):
    T = a3_window.translation_structure()
    i = a3_window.vertex_of[(1, 1)]  # the middle vertex of slice 1
    H = hammock(T, i, ENDING)
    assert H.level(0) == [(i, 1)]
    assert H.level(1) == [
        (a3_window.vertex_of[(2, 0)], 1),
        (a3_window.vertex_of[(0, 1)], 1),
    ]
    assert H.level(2) == [(a3_window.vertex_of[(1, 0)], 1)]
    assert len(H.arrows) == 4


def test_hammock_needs_the_right_translate(a3_window):
    T = a3_window.translation_structure()
    projective = a3_window.vertex_of[(0, 0)]
    injective = a3_window.vertex_of[(0, 3)]
    with pytest.raises(QuiverError):
        hammock(T, projective, STARTING)
    with pytest.raises(QuiverError):
        hammock(T, injective, ENDING)
    with pytest.raises(QuiverError):
        hammock(T, projective, "sideways")


def test_hammock_bijection_on_all_interiors(a3_window):
    T = a3_window.translation_structure()
    for i in a3_window.interior_vertices():
        ok, mismatches = hammock_bijection_check(T, i)
        assert ok, mismatches


def test_stability_report(a3_window):
    T = a3_window.translation_structure()
    rep = is_stable_n_translation(T, a3_window.interior_vertices())
    assert rep["ok"]
    assert sorted(rep["skipped"]) == ["1_0", "1_3", "2_0", "2_3", "3_0", "3_3"]
    for entry in rep["entries"].values():
        assert entry == {
            "tau_defined": True,
            "tau_inverse_defined": True,
            "deep_path_nonzero": True,
            "bijection": True,
        }


def test_truncation_keeps_convex_pieces(a3_window):
    sub, vmap, amap = truncate_bound_quiver(
        a3_window.bound_quiver, ["1_0", "2_0", "3_0", "1_1", "2_1", "3_1"]
    )
    assert len(sub.quiver.vertices) == 6
    assert set(vmap) == {a3_window.vertex_of[(u, t)] for u in range(3) for t in range(2)}
    for old, new in amap.items():
        assert sub.quiver.arrows[new].name == a3_window.quiver.arrows[old].name


def test_truncation_rejects_non_convex_sets(a3_window):
    # 1_0 reaches 2_1 only through vertices outside the chosen set
    with pytest.raises(QuiverError, match="convex"):
        truncate_bound_quiver(a3_window.bound_quiver, ["1_0", "2_1"])
    assert convexity_witness(a3_window.quiver, ["1_0", "2_1"]) is not None
    assert convexity_witness(a3_window.quiver, ["1_0", "2_0", "3_0"]) is None


def test_truncate_shorthand(a3_window):
    T = a3_window.translation_structure()
    sub = truncate(T, ["1_0", "2_0", "3_0"])
    assert len(sub.quiver.vertices) == 3
    assert len(sub.quiver.arrows) == 2


def test_single_slice_is_mature(a3_window):
    T = a3_window.translation_structure()
    ok, report = is_tau_mature(T, ["1_0", "2_0", "3_0"], 2)
    assert ok
    assert report["witnesses"] == []


def test_two_slice_rectangle_fails_maturity_at_q_two(a3_window):
    T = a3_window.translation_structure()
    ok, report = is_tau_mature(
        T, ["1_0", "2_0", "3_0", "1_1", "2_1", "3_1"], 2
    )
    assert not ok
    assert ("1_0", "1_1", "3_1") in report["witnesses"]
    assert report["simple_criterion"] is False


def test_infinite_q_is_always_mature(a3_window):
    T = a3_window.translation_structure()
    for q_param in (None, "inf", float("inf")):
        ok, report = is_tau_mature(
            T, ["1_0", "2_0", "3_0", "1_1", "2_1", "3_1"], q_param
        )
        assert ok and report["q"] == "inf"


def test_maturity_requires_convexity(a3_window):
    T = a3_window.translation_structure()
    with pytest.raises(QuiverError):
        is_tau_mature(T, ["1_0", "2_1"], 2)


def test_negative_translation_parameter_rejected(a3rs):
    with pytest.raises(QuiverError):
        TranslationStructure(a3rs, -1, {})
