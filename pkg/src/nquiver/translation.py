"""Higher translation structure on a bound quiver.

A TranslationStructure couples a bound quiver with a translation parameter
n and a partial injective vertex map tau.  On top of it live the
tau-hammocks (the level sets of nonzero bound-path classes between a
vertex and the rest of the quiver), the level-flip bijection between the
hammock ending at i and the one starting at tau(i), stability reports for
window interiors, convex truncations, and the tau-maturity test that
controls when almost-split behaviour survives truncation.
"""

from collections import deque

from .graded import DEFAULT_CUTOFF, GradedAlgebraView
from .qdual import quadratic_dual
from .quiver import (
    Arrow,
    BoundQuiver,
    LinComb,
    Path,
    Quiver,
    QuiverError,
    arrow_path,
    compose,
)

ENDING = "ending"
STARTING = "starting"


class TranslationStructure:
    """Bound quiver + n + partial translation.

    tau maps a vertex to the start of the length-(n+1) bound paths ending
    there; vertices without tau are the projective ones, vertices without
    tau-inverse the injective ones.
    """

    def __init__(self, bound_quiver, n, tau, cutoff=DEFAULT_CUTOFF):
        if n < 0:
            raise QuiverError("translation parameter must be nonnegative")
        self.bq = bound_quiver
        self.quiver = bound_quiver.quiver
        self.field = bound_quiver.field
        self.n = n
        q = self.quiver
        self.tau = {}
        for src, dst in tau.items():
            self.tau[q._vid(src)] = q._vid(dst)
        self.tau_inv = {}
        for src, dst in self.tau.items():
            if dst in self.tau_inv:
                raise QuiverError("translation is not injective")
            self.tau_inv[dst] = src
        self.view = GradedAlgebraView(bound_quiver, cutoff)

    def projective_vertices(self):
        return [v for v in range(len(self.quiver.vertices)) if v not in self.tau]

    def injective_vertices(self):
        return [v for v in range(len(self.quiver.vertices)) if v not in self.tau_inv]

    def check_translation_paths(self):
        """Vertices whose translate admits no nonzero bound path of length
        n+1 into them (should be empty for a genuine n-translation)."""
        bad = []
        for i, ti in self.tau.items():
            if self.view.dim(self.n + 1, ti, i) == 0:
                bad.append(i)
        return bad


def derive_translation(bq, n, cutoff=DEFAULT_CUTOFF):
    """Read the translation off the algebra itself: tau(i) is the unique
    source vertex of the nonzero length-(n+1) bound-path classes ending
    at i.  Vertices receiving none stay untranslated (projective); more
    than one source means the algebra is not an n-translation algebra."""
    view = GradedAlgebraView(bq, cutoff)
    q = bq.quiver
    tau = {}
    for i in range(len(q.vertices)):
        starts = [
            j for j in range(len(q.vertices)) if view.dim(n + 1, j, i)
        ]
        if not starts:
            continue
        if len(starts) > 1:
            raise QuiverError(
                "vertex %s receives length-%d classes from %d sources"
                % (q.vertices[i], n + 1, len(starts))
            )
        tau[i] = starts[0]
    return TranslationStructure(bq, n, tau, cutoff=cutoff)


class Hammock:
    """Level sets with multiplicities plus the induced arrows.

    vertices: {(j, t): mu}; arrows: {(arrow index, base level t)} with the
    paper-direction convention (levels fall toward the endpoint for the
    ending hammock, rise away from it for the starting one).
    """

    def __init__(self, endpoint, direction, n, vertices, arrows):
        self.endpoint = endpoint
        self.direction = direction
        self.n = n
        self.vertices = vertices
        self.arrows = arrows

    def level(self, t):
        return sorted((j, mu) for (j, lt), mu in self.vertices.items() if lt == t)

    def __repr__(self):
        return "Hammock(%r, %s, %d vertices)" % (
            self.endpoint,
            self.direction,
            len(self.vertices),
        )


def _hammock_data(T, i, direction):
    """Hammock data without translate preconditions (the data itself is
    well-defined for any endpoint)."""
    q = T.quiver
    view = T.view
    field = T.field
    i = q._vid(i)
    n = T.n
    vertices = {}
    for t in range(n + 2):
        for j in range(len(q.vertices)):
            if direction == ENDING:
                d = view.dim(t, j, i)
            else:
                d = view.dim(t, i, j)
            if d:
                vertices[(j, t)] = d
    arrows = set()
    for aidx, arr in enumerate(q.arrows):
        j, j2 = arr.source, arr.target
        for t in range(n + 1):
            if direction == ENDING:
                # (alpha, t): (j, t+1) -> (j2, t); need a length-t path p
                # from j2 to i with p*alpha nonzero.
                if (j2, t) not in vertices or (j, t + 1) not in vertices:
                    continue
                hit = False
                for p in view.basis_paths(t, j2, i):
                    ext = compose(q, arrow_path(q, aidx), p)
                    lc = LinComb(field, [(ext, field.one)])
                    if not view.is_zero_class(lc):
                        hit = True
                        break
                if hit:
                    arrows.add((aidx, t))
            else:
                # (alpha, t): (j, t) -> (j2, t+1); need a length-t path p
                # from i to j with alpha*p nonzero.
                if (j, t) not in vertices or (j2, t + 1) not in vertices:
                    continue
                hit = False
                for p in view.basis_paths(t, i, j):
                    ext = compose(q, p, arrow_path(q, aidx))
                    lc = LinComb(field, [(ext, field.one)])
                    if not view.is_zero_class(lc):
                        hit = True
                        break
                if hit:
                    arrows.add((aidx, t))
    return Hammock(i, direction, n, vertices, arrows)


def hammock(T, i, direction):
    """The tau-hammock ending at i (levels fall toward i) or starting at i
    (levels rise away from i)."""
    q = T.quiver
    i = q._vid(i)
    if direction == ENDING:
        if i not in T.tau_inv:
            raise QuiverError(
                "ending hammock needs the inverse translate of %r"
                % (q.vertices[i],)
            )
    elif direction == STARTING:
        if i not in T.tau:
            raise QuiverError(
                "starting hammock needs the translate of %r" % (q.vertices[i],)
            )
    else:
        raise QuiverError("direction must be 'ending' or 'starting'")
    return _hammock_data(T, i, direction)


def hammock_bijection_check(T, i):
    """Verify that (j, t) -> (j, n+1-t) carries the hammock ending at i
    onto the hammock starting at tau(i), arrows and multiplicities
    included.  Returns (ok, mismatches)."""
    q = T.quiver
    i = q._vid(i)
    if i not in T.tau:
        raise QuiverError(
            "bijection check needs the translate of %r" % (q.vertices[i],)
        )
    n = T.n
    ending = _hammock_data(T, i, ENDING)
    starting = _hammock_data(T, T.tau[i], STARTING)
    mismatches = []
    flipped = {(j, n + 1 - t): mu for (j, t), mu in ending.vertices.items()}
    for key in sorted(set(flipped) | set(starting.vertices)):
        a = flipped.get(key)
        b = starting.vertices.get(key)
        if a != b:
            mismatches.append(("vertex", key, a, b))
    flipped_arrows = {(aidx, n - t) for aidx, t in ending.arrows}
    for key in sorted(flipped_arrows ^ starting.arrows):
        mismatches.append(
            ("arrow", key, key in flipped_arrows, key in starting.arrows)
        )
    return not mismatches, mismatches


def is_stable_n_translation(T, interior):
    """Report, per declared-interior vertex: translate and inverse
    translate defined, a nonzero bound path of length n+1 from tau(i) to
    i, and the hammock bijection.  Other vertices are listed as skipped."""
    q = T.quiver
    interior_ids = sorted({q._vid(v) for v in interior})
    entries = {}
    ok = True
    for i in interior_ids:
        has_tau = i in T.tau
        has_inv = i in T.tau_inv
        deep = bool(has_tau and T.view.dim(T.n + 1, T.tau[i], i))
        if has_tau:
            bij, _ = hammock_bijection_check(T, i)
        else:
            bij = False
        entry = {
            "tau_defined": has_tau,
            "tau_inverse_defined": has_inv,
            "deep_path_nonzero": deep,
            "bijection": bij,
        }
        entries[q.vertices[i]] = entry
        ok = ok and all(entry.values())
    skipped = [
        q.vertices[v]
        for v in range(len(q.vertices))
        if v not in set(interior_ids)
    ]
    return {"ok": ok, "entries": entries, "skipped": skipped}


# -- truncations -----------------------------------------------------------


def _reachable_with_parents(q, start):
    """BFS over arrows; parents allow reconstructing one path per vertex."""
    parent = {}
    seen = set()
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for aidx in q.out_arrows(u):
            w = q.arrows[aidx].target
            if w not in seen:
                seen.add(w)
                parent[w] = (u, aidx)
                queue.append(w)
    return seen, parent


def _path_from_parents(q, parent, start, end):
    arrows = []
    v = end
    while v != start:
        u, aidx = parent[v]
        arrows.append(aidx)
        v = u
    arrows.reverse()
    return Path(start, tuple(arrows), end)


def convexity_witness(q, subset):
    """None if the vertex subset is convex, else a Path between two
    members passing through a non-member."""
    ids = {q._vid(v) for v in subset}
    for u in sorted(ids):
        reach, parent = _reachable_with_parents(q, u)
        for w in sorted(reach - ids):
            reach2, parent2 = _reachable_with_parents(q, w)
            hits = sorted(reach2 & ids)
            if hits:
                first = _path_from_parents(q, parent, u, w)
                second = _path_from_parents(q, parent2, w, hits[0])
                return compose(q, first, second)
    return None


def truncate_bound_quiver(bq, subset):
    """(full sub bound quiver, vertex map, arrow map) for a convex subset."""
    q = bq.quiver
    ids = sorted({q._vid(v) for v in subset})
    witness = convexity_witness(q, ids)
    if witness is not None:
        raise QuiverError(
            "subset is not convex; witness path %s"
            % "<-".join(
                reversed([q.arrows[a].name for a in witness.arrows])
            )
        )
    vmap = {old: new for new, old in enumerate(ids)}
    names = [q.vertices[v] for v in ids]
    arrows = []
    amap = {}
    for aidx, arr in enumerate(q.arrows):
        if arr.source in vmap and arr.target in vmap:
            amap[aidx] = len(arrows)
            arrows.append(Arrow(arr.name, vmap[arr.source], vmap[arr.target]))
    sub = Quiver(names, arrows, name=q.name)
    rels = []
    for r in bq.relations:
        if r.source in vmap and r.target in vmap:
            rels.append(
                r.map_paths(
                    bq.field,
                    lambda p: Path(
                        vmap[p.source],
                        tuple(amap[a] for a in p.arrows),
                        vmap[p.target],
                    ),
                )
            )
    return BoundQuiver(sub, rels, bq.field), vmap, amap


def truncate(T, vertices):
    """Full convex sub bound quiver on the given vertices."""
    return truncate_bound_quiver(T.bq, vertices)[0]


def is_tau_mature(T, truncation, q_param):
    """Whether the truncation stays almost-split-friendly: for finite q,
    no vertex of the truncation receives a nonzero length-q bound path of
    the quadratic-dual algebra from any inverse translate of a truncation
    vertex.  Infinite q is always mature.  The simpler translate-overlap
    criterion is evaluated alongside and reported, not asserted equal.

    Returns (ok, report) with report carrying witnesses and the simpler
    verdict.
    """
    q = T.quiver
    ids = sorted({q._vid(v) for v in truncation})
    witness = convexity_witness(q, ids)
    if witness is not None:
        raise QuiverError("truncation is not convex")
    if q_param is None or q_param == float("inf") or q_param == "inf":
        return True, {"witnesses": [], "simple_criterion": True, "q": "inf"}
    qv = int(q_param)
    dual = quadratic_dual(T.bq).bound_quiver
    dview = GradedAlgebraView(dual, T.view.cutoff)
    id_set = set(ids)
    witnesses = []
    for i in ids:
        if i not in T.tau_inv:
            continue
        src = T.tau_inv[i]
        for j in ids:
            if dview.dim(qv, src, j):
                witnesses.append(
                    (q.vertices[i], q.vertices[src], q.vertices[j])
                )
    simple_ok = True
    for i in ids:
        tau_in = i in T.tau and T.tau[i] in id_set
        perp_inv_in = any(
            dview.dim(qv, i, j) for j in ids
        )
        if tau_in and perp_inv_in:
            simple_ok = False
            break
    return (
        not witnesses,
        {"witnesses": witnesses, "simple_criterion": simple_ok, "q": qv},
    )
