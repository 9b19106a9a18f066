"""Quiver containers, path composition conventions, and the text/JSON
formats."""

import json

import pytest

from conftest import A3_RS_SRC, A3_SRC, KRON_SRC, QQ, a4_mesh_text
from nquiver.dsl import (
    ParseError,
    parse_quiver,
    parse_source,
    quiver_from_json,
    quiver_to_json,
    serialize_quiver,
)
from nquiver.quiver import (
    LinComb,
    QuiverError,
    arrow_path,
    compose,
    enumerate_paths,
    opposite,
    opposite_path,
    path_exists,
    path_mul,
    path_name,
    stationary_path,
)


def adjacency_power_count(q, i, j, t):
    """Independent path count: t-th power of the adjacency matrix."""
    nv = len(q.vertices)
    adj = [[0] * nv for _ in range(nv)]
    for arr in q.arrows:
        adj[arr.source][arr.target] += 1
    row = [1 if k == i else 0 for k in range(nv)]
    for _ in range(t):
        row = [
            sum(row[u] * adj[u][v] for u in range(nv)) for v in range(nv)
        ]
    return row[j]


def test_composition_is_first_applied_first(a3):
    q = a3.quiver
    a = arrow_path(q, 0)
    b = arrow_path(q, 1)
    ba = compose(q, a, b)
    assert ba.source == 0 and ba.target == 2
    assert ba.arrows == (0, 1)
    assert path_name(q, ba) == "b.a"
    # path_mul is the algebra product: second factor acts first
    assert path_mul(q, b, a) == ba
    with pytest.raises(QuiverError):
        compose(q, b, a)


def test_stationary_paths(a3):
    q = a3.quiver
    e = stationary_path(q, 1)
    assert e.source == e.target == 1
    a = arrow_path(q, 0)  # a: vertex 0 -> vertex 1
    assert compose(q, a, stationary_path(q, 1)) == a
    assert compose(q, stationary_path(q, 0), a) == a


def test_enumerate_paths_matches_adjacency_powers(a3, kron, a4mesh):
    for bq in (a3, kron, a4mesh):
        q = bq.quiver
        for t in range(4):
            for i in range(len(q.vertices)):
                for j in range(len(q.vertices)):
                    got = len(enumerate_paths(q, i, j, t))
                    assert got == adjacency_power_count(q, i, j, t)


def test_path_exists(a3):
    q = a3.quiver
    assert path_exists(q, 0, 2)
    assert not path_exists(q, 2, 0)
    assert path_exists(q, 1, 1)
    assert not path_exists(q, 0, 2, max_len=1)


def test_acyclicity_and_longest_path(a3, a4mesh):
    assert a3.quiver.is_acyclic()
    assert a3.quiver.longest_path_length() == 2
    assert a4mesh.quiver.is_acyclic()
    loop = parse_quiver("vertices: v\narrows:\n  l: v -> v\n", QQ)
    assert not loop.quiver.is_acyclic()


def test_lincomb_requires_matching_endpoints_and_degree(a3):
    q = a3.quiver
    a = arrow_path(q, 0)
    b = arrow_path(q, 1)
    with pytest.raises(QuiverError):
        LinComb(QQ, [(a, QQ.one), (b, QQ.one)])
    ba = compose(q, a, b)
    with pytest.raises(QuiverError):
        LinComb(QQ, [(a, QQ.one), (ba, QQ.one)])


def test_opposite_is_an_involution(a3rs, kron, a4mesh):
    for bq in (a3rs, kron, a4mesh):
        assert opposite(opposite(bq)) == bq


def test_opposite_path_reverses(a3):
    q = a3.quiver
    qop = opposite(a3).quiver
    ba = compose(q, arrow_path(q, 0), arrow_path(q, 1))
    rev = opposite_path(q, qop, ba)
    assert rev.source == 2 and rev.target == 0
    assert path_name(qop, rev) == "a.b"


def test_parse_serialize_round_trip(a3rs, kron, square, a4mesh):
    for bq in (a3rs, kron, square, a4mesh):
        text = serialize_quiver(bq)
        again = parse_quiver(text, QQ)
        assert again == bq
        assert serialize_quiver(again) == text


def test_serializer_emits_known_canonical_form(a3rs):
    assert serialize_quiver(a3rs) == (
        "quiver a3\n"
        "vertices: 1 2 3\n"
        "arrows:\n"
        "  a: 1 -> 2\n"
        "  b: 2 -> 3\n"
        "relations:\n"
        "  b.a ;\n"
    )


def test_json_round_trip(a3rs, square, a4mesh):
    for bq in (a3rs, square, a4mesh):
        doc = quiver_to_json(bq)
        json.loads(doc)  # must be plain JSON
        assert quiver_from_json(doc, QQ) == bq


def test_translation_sections_round_trip(a3rs):
    text = serialize_quiver(a3rs, n=1, tau={"3": "1"})
    q, rels, n, tau = parse_source(text, QQ)
    assert n == 1
    assert tau == {"3": "1"}
    # parse_quiver ignores the translation sections
    assert parse_quiver(text, QQ) == a3rs
    doc = json.loads(quiver_to_json(a3rs, n=1, tau={"3": "1"}))
    assert doc["n"] == 1
    assert doc["tau"] == {"3": "1"}


def test_relation_coefficients(square):
    r = square.relations[0]
    assert r.degree == 2
    assert len(r.terms) == 2
    text = serialize_quiver(square)
    assert "b.a - d.c ;" in text
    scaled = parse_quiver(text.replace("b.a - d.c", "2*b.a - 2*d.c"), QQ)
    assert scaled.relations[0].terms[0][1] in (QQ.coerce(1), QQ.coerce(2))


def test_parse_errors():
    cases = [
        "arrows:\n  a: 1 -> 2\n",                     # no vertices
        "vertices: 1 1\n",                            # duplicate vertex
        "vertices: 1 2\narrows:\n  a: 1 -> 9\n",      # unknown vertex
        "vertices: 1 2\narrows:\n  a: 1 -> 2\n  a: 1 -> 2\n",
        "vertices: 1 2\narrows:\n  a: 1 -> 2\nrelations:\n  c ;\n",
        "vertices: 1 2 3\narrows:\n  a: 1 -> 2\n  b: 2 -> 3\nrelations:\n  a.b ;\n",
        "stray text\n",
        "vertices: 1\nn: 0\n",
        "vertices: 1 2\ntau:\n  1 -> 2\n  1 -> 2\n",
    ]
    for src in cases:
        with pytest.raises(ParseError):
            parse_source(src, QQ)
    # a final relation without ';' is tolerated: it flushes at end of input
    bq = parse_quiver(A3_SRC + "relations:\n  b.a\n", QQ)
    assert len(bq.relations) == 1


def test_comments_and_shared_lines():
    src = "vertices: 1 2  # two vertices\narrows: ; relations:\n"
    q, rels, n, tau = parse_source(src, QQ)
    assert tuple(q.vertices) == ("1", "2")
    assert rels == [] and n is None and tau == {}


def test_a4_mesh_fixture_shape(a4mesh):
    assert len(a4mesh.quiver.vertices) == 10
    assert len(a4mesh.quiver.arrows) == 12
    assert len(a4mesh.relations) == 6
    assert parse_quiver(a4_mesh_text(), QQ) == a4mesh


def test_kron_source_is_multigraph():
    bq = parse_quiver(KRON_SRC, QQ)
    assert len(bq.quiver.arrows) == 2
    assert all(a.source == 0 and a.target == 1 for a in bq.quiver.arrows)
    assert A3_RS_SRC  # imported fixtures are the single source of truth
