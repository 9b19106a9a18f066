"""Shared fixtures: the small quivers every suite leans on."""

import pytest

from nquiver.dsl import parse_quiver
from nquiver.fields import PrimeField, RationalField

QQ = RationalField()
F5 = PrimeField(5)

A2_SRC = """
quiver a2
vertices: 1 2
arrows:
  a: 1 -> 2
"""

A3_SRC = """
quiver a3
vertices: 1 2 3
arrows:
  a: 1 -> 2
  b: 2 -> 3
"""

# A3 with radical square zero: the quadratic dual of the path algebra.
A3_RS_SRC = A3_SRC + """
relations:
  b.a ;
"""

KRON_SRC = """
quiver kron
vertices: 1 2
arrows:
  a: 1 -> 2
  b: 1 -> 2
"""

COMM_SQUARE_SRC = """
quiver square
vertices: 1 2 3 4
arrows:
  a: 1 -> 2
  b: 2 -> 4
  c: 1 -> 3
  d: 3 -> 4
relations:
  b.a - d.c ;
"""


def a4_mesh_text():
    """The mesh-bound translation quiver on the 10 orbits of the A4 path
    algebra: 4 shrinking rows, rightward arrows r, down-left arrows d,
    one mesh relation wherever a vertex has a vertical successor."""
    verts = [(i, t) for t in range(1, 5) for i in range(1, 6 - t)]
    lines = ["vertices: " + " ".join("v%d%d" % v for v in verts), "arrows:"]
    for (i, t) in verts:
        if (i + 1, t) in verts:
            lines.append("  r%d%d: v%d%d -> v%d%d" % (i, t, i, t, i + 1, t))
    for (i, t) in verts:
        if i >= 2 and (i - 1, t + 1) in verts:
            lines.append("  d%d%d: v%d%d -> v%d%d" % (i, t, i, t, i - 1, t + 1))
    lines.append("relations:")
    for (i, t) in verts:
        if (i, t + 1) not in verts:
            continue
        terms = []
        if (i + 1, t) in verts:
            terms.append("d%d%d.r%d%d" % (i + 1, t, i, t))
        if (i - 1, t + 1) in verts and i >= 2:
            terms.append("r%d%d.d%d%d" % (i - 1, t + 1, i, t))
        if terms:
            lines.append("  " + " + ".join(terms) + ";")
    return "\n".join(lines) + "\n"


@pytest.fixture
def a2():
    return parse_quiver(A2_SRC, QQ)


@pytest.fixture
def a3():
    return parse_quiver(A3_SRC, QQ)


@pytest.fixture
def a3rs():
    return parse_quiver(A3_RS_SRC, QQ)


@pytest.fixture
def kron():
    return parse_quiver(KRON_SRC, QQ)


@pytest.fixture
def square():
    return parse_quiver(COMM_SQUARE_SRC, QQ)


@pytest.fixture(scope="session")
def a4mesh():
    return parse_quiver(a4_mesh_text(), QQ)
