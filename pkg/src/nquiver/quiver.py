"""Bound quivers: vertices, arrows, paths, relations.

Composition is right-to-left: a path p = α_m⋯α_1 starts at s(α_1) and ends
at t(α_m).  Internally a Path stores its arrows in traversal order
(α_1 first), so the canonical path order — lexicographic on arrow indices
read in composition order — is plain lexicographic order on the stored
tuple.  A LinComb is a homogeneous combination of paths sharing one source,
one target and one length; relations are LinCombs of length ≥ 2 stored in
canonical form (terms sorted, order-minimal path scaled to coefficient 1).
"""

from collections import namedtuple

Arrow = namedtuple("Arrow", ["name", "source", "target"])


class QuiverError(ValueError):
    pass


class Quiver:
    """A finite directed multigraph with named vertices and arrows."""

    __slots__ = ("name", "vertices", "arrows", "vertex_index", "arrow_index", "_out", "_in")

    def __init__(self, vertices, arrows, name="quiver"):
        self.name = name
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex name")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        arrs = []
        for a in arrows:
            if isinstance(a, Arrow):
                arrs.append(a)
            else:
                nm, s, t = a
                if not isinstance(s, int):
                    s = self._vid(s)
                if not isinstance(t, int):
                    t = self._vid(t)
                arrs.append(Arrow(nm, s, t))
        self.arrows = tuple(arrs)
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow name")
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}
        for a in self.arrows:
            if not (0 <= a.source < len(self.vertices) and 0 <= a.target < len(self.vertices)):
                raise QuiverError(f"arrow {a.name} has endpoint outside the vertex list")
        self._out = [[] for _ in self.vertices]
        self._in = [[] for _ in self.vertices]
        for i, a in enumerate(self.arrows):
            self._out[a.source].append(i)
            self._in[a.target].append(i)

    def _vid(self, v):
        if isinstance(v, int):
            return v
        try:
            return self.vertex_index[v]
        except KeyError:
            raise QuiverError(f"unknown vertex {v!r}") from None

    def out_arrows(self, v):
        return self._out[self._vid(v)]

    def in_arrows(self, v):
        return self._in[self._vid(v)]

    def is_acyclic(self):
        color = [0] * len(self.vertices)  # 0 unvisited, 1 on stack, 2 done

        def visit(u):
            color[u] = 1
            for ai in self._out[u]:
                w = self.arrows[ai].target
                if color[w] == 1:
                    return False
                if color[w] == 0 and not visit(w):
                    return False
            color[u] = 2
            return True

        for u in range(len(self.vertices)):
            if color[u] == 0 and not visit(u):
                return False
        return True

    def longest_path_length(self):
        """Length of the longest path; requires acyclicity."""
        if not self.is_acyclic():
            raise QuiverError("longest path undefined on a cyclic quiver")
        memo = {}

        def depth(u):
            if u not in memo:
                memo[u] = max(
                    (1 + depth(self.arrows[ai].target) for ai in self._out[u]),
                    default=0,
                )
            return memo[u]

        return max((depth(u) for u in range(len(self.vertices))), default=0)

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
        )

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        return f"Quiver({self.name!r}, {len(self.vertices)} vertices, {len(self.arrows)} arrows)"


class Path:
    """A path: source vertex index plus arrow indices in traversal order."""

    __slots__ = ("source", "arrows", "target")

    def __init__(self, source, arrows, target):
        self.source = source
        self.arrows = tuple(arrows)
        self.target = target

    @property
    def length(self):
        return len(self.arrows)

    def key(self):
        # Within one (length, source, target) block this is the canonical order.
        return (len(self.arrows), self.arrows, self.source)

    def __eq__(self, other):
        return (
            isinstance(other, Path)
            and self.source == other.source
            and self.arrows == other.arrows
        )

    def __hash__(self):
        return hash((self.source, self.arrows))

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        return f"Path({self.source}, {self.arrows}, {self.target})"


def stationary_path(q, v):
    vid = q._vid(v)
    return Path(vid, (), vid)


def arrow_path(q, a):
    ai = a if isinstance(a, int) else q.arrow_index[a]
    arr = q.arrows[ai]
    return Path(arr.source, (ai,), arr.target)


def compose(q, first, second):
    """The path 'first then second' (= second·first in algebra notation)."""
    if first.target != second.source:
        raise QuiverError("paths do not compose")
    return Path(first.source, first.arrows + second.arrows, second.target)


def path_mul(q, x, y):
    """Algebra product x·y: traverse y first, then x."""
    return compose(q, y, x)


def path_name(q, p):
    """Render a path in DSL notation (algebra order, '.'-separated)."""
    if not p.arrows:
        return f"e_{q.vertices[p.source]}"
    return ".".join(q.arrows[ai].name for ai in reversed(p.arrows))


def opposite_path(q, qop, p):
    """The reversed path in the opposite quiver (same arrow indices)."""
    return Path(p.target, tuple(reversed(p.arrows)), p.source)


class LinComb:
    """A homogeneous linear combination of equal-endpoint paths.

    terms is a tuple of (Path, coefficient) sorted in canonical path order
    with zero coefficients dropped.  Empty term lists are allowed only when
    endpoints are supplied (the zero element of a known component).
    """

    __slots__ = ("source", "target", "degree", "terms")

    def __init__(self, field, terms, source=None, target=None, degree=None):
        acc = {}
        for p, c in terms:
            c = field.coerce(c)
            if p in acc:
                acc[p] = field.add(acc[p], c)
            else:
                acc[p] = c
        items = sorted(
            ((p, c) for p, c in acc.items() if not field.is_zero(c)),
            key=lambda pc: pc[0].key(),
        )
        if items:
            p0 = items[0][0]
            source, target, degree = p0.source, p0.target, p0.length
            for p, _ in items:
                if p.length != degree:
                    raise QuiverError("non-homogeneous combination of paths")
                if p.source != source or p.target != target:
                    raise QuiverError("mixed-endpoint combination of paths")
        elif source is None:
            raise QuiverError("zero LinComb needs explicit endpoints")
        self.source = source
        self.target = target
        self.degree = degree
        self.terms = tuple(items)

    def is_zero(self):
        return not self.terms

    def scaled(self, field, c):
        return LinComb(
            field,
            [(p, field.mul(c, v)) for p, v in self.terms],
            self.source,
            self.target,
            self.degree,
        )

    def monic(self, field):
        """Scale so the order-minimal path has coefficient 1."""
        if not self.terms:
            return self
        return self.scaled(field, field.inv(self.terms[0][1]))

    def map_paths(self, field, fn):
        return LinComb(field, [(fn(p), c) for p, c in self.terms])

    def __eq__(self, other):
        return (
            isinstance(other, LinComb)
            and self.terms == other.terms
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash((self.source, self.target, self.terms))

    def __repr__(self):
        return f"LinComb({self.terms!r})"


class BoundQuiver:
    """A quiver with a canonical, validated relation list."""

    __slots__ = ("quiver", "relations", "field", "_acyclic")

    def __init__(self, quiver, relations, field):
        self.quiver = quiver
        self.field = field
        canon = []
        for r in relations:
            if r.is_zero():
                continue
            if r.degree < 2:
                raise QuiverError("relations must have length >= 2")
            canon.append(r.monic(field))
        canon.sort(key=_relation_key)
        deduped = []
        for r in canon:
            if not deduped or deduped[-1] != r:
                deduped.append(r)
        self.relations = tuple(deduped)
        self._acyclic = None

    @property
    def is_quadratic(self):
        return all(r.degree == 2 for r in self.relations)

    @property
    def is_acyclic(self):
        if self._acyclic is None:
            self._acyclic = self.quiver.is_acyclic()
        return self._acyclic

    def __eq__(self, other):
        return (
            isinstance(other, BoundQuiver)
            and self.quiver == other.quiver
            and self.relations == other.relations
        )

    def __hash__(self):
        return hash((self.quiver, self.relations))

    def __repr__(self):
        return (
            f"BoundQuiver({self.quiver.name!r}, {len(self.quiver.vertices)} vertices, "
            f"{len(self.quiver.arrows)} arrows, {len(self.relations)} relations)"
        )


def _relation_key(r):
    return (r.degree, r.source, r.target, tuple(p.key() for p, _ in r.terms))


def opposite(bq):
    """The opposite bound quiver: arrows reversed, relations reversed path-by-path."""
    q = bq.quiver
    qop = Quiver(
        q.vertices,
        [Arrow(a.name, a.target, a.source) for a in q.arrows],
        name=q.name + "_op" if not q.name.endswith("_op") else q.name[:-3],
    )
    rels = [
        r.map_paths(bq.field, lambda p: opposite_path(q, qop, p)) for r in bq.relations
    ]
    return BoundQuiver(qop, rels, bq.field)


def enumerate_paths(q, i, j, t):
    """All paths from i to j of length t, in canonical path order."""
    if t < 0:
        raise QuiverError("negative path length")
    i = q._vid(i)
    j = q._vid(j)
    out = []

    def extend(prefix, at, remaining):
        if remaining == 0:
            if at == j:
                out.append(Path(i, tuple(prefix), j))
            return
        for ai in q._out[at]:
            prefix.append(ai)
            extend(prefix, q.arrows[ai].target, remaining - 1)
            prefix.pop()

    extend([], i, t)
    return out


def path_exists(q, i, j, max_len=None):
    """Reachability i -> j (including the empty path when i = j)."""
    i = q._vid(i)
    j = q._vid(j)
    if max_len is None:
        max_len = len(q.vertices) if q.is_acyclic() else len(q.vertices) * len(q.arrows) + 1
    seen = {i}
    frontier = [i]
    for _ in range(max_len):
        nxt = []
        for u in frontier:
            for ai in q._out[u]:
                w = q.arrows[ai].target
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
        if not frontier:
            break
    return j in seen
