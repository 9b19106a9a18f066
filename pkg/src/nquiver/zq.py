"""Returning-arrow constructions over a properly graded algebra.

Given an acyclic algebra L = kQ/(rho) whose maximal bound paths all have
length n, the trivial extension L x DL acquires one new "returning" arrow
per maximal bound-path class, pointing backwards.  This module computes
the quadratic part of its presentation exactly (the mixed degree-2 kernel
of multiplication into the dual bimodule), decides whether that quadratic
part presents the whole trivial extension, applies arrow-scaling twists,
takes the quadratic dual to present the higher preprojective algebra, and
materializes finite slice windows of the induced stable translation
quiver, together with slice extraction and the slice order function.
"""

import warnings
from collections import Counter

from .graded import GradedAlgebraView, is_n_properly_graded, maximal_bound_paths
from .linalg import nullspace, rref, span_contains, transpose
from .qdual import _relation_rows, quadratic_dual
from .quiver import (
    Arrow,
    BoundQuiver,
    LinComb,
    Path,
    Quiver,
    QuiverError,
    arrow_path,
    compose,
    enumerate_paths,
)
from .translation import TranslationStructure, truncate_bound_quiver


class NonQuadraticWarning(UserWarning):
    """The trivial extension is not presented by its quadratic relations."""


# -- returning-arrow quiver ------------------------------------------------


class ReturningArrowQuiver:
    """Presentation data for the trivial extension of a properly graded
    algebra: the enlarged quiver, the three relation families, the twist
    applied to the mixed family, and the quadraticity verdict."""

    def __init__(
        self,
        base,
        view,
        n,
        maximal,
        beta_names,
        bound_quiver,
        rho,
        rho_m,
        rho_0,
        twist_scalars,
        quadratic,
        dim_mismatches,
    ):
        self.base = base
        self.view = view
        self.n = n
        self.maximal = maximal
        self.beta_names = beta_names
        self.bound_quiver = bound_quiver
        self.quiver = bound_quiver.quiver
        self.rho = rho
        self.rho_m = rho_m
        self.rho_0 = rho_0
        self.twist_scalars = twist_scalars
        self.quadratic = quadratic
        self.dim_mismatches = dim_mismatches

    @property
    def n_base_arrows(self):
        return len(self.base.quiver.arrows)

    def beta_index(self, k):
        """Arrow index (in the enlarged quiver) of the k-th returning arrow."""
        return self.n_base_arrows + k

    def __repr__(self):
        return "ReturningArrowQuiver(%r, %d returning arrows, quadratic=%s)" % (
            self.base.quiver.name,
            len(self.maximal),
            self.quadratic,
        )


def _beta_name(q, cls, taken):
    terms = cls.lincomb.terms
    if len(terms) == 1 and terms[0][0].arrows:
        p = terms[0][0]
        base = "_".join(q.arrows[a].name for a in reversed(p.arrows)) + "_star"
    else:
        base = "star"
    name = base
    k = 2
    while name in taken:
        name = "%s%d" % (base, k)
        k += 1
    return name


def _twist_scalars(view, twist, n):
    """Per-base-arrow scalars of the arrow-scaling twist, validated to
    respect the base relations."""
    field = view.field
    q = view.quiver
    if twist is None or twist == "none":
        return None
    if twist == "sign":
        c = field.one if n % 2 == 0 else field.neg(field.one)
        return {a: c for a in range(len(q.arrows))}
    scal = {a: field.one for a in range(len(q.arrows))}
    for name, value in twist.items():
        scal[q.arrow_index[name]] = field.coerce(value)
    if any(field.is_zero(c) for c in scal.values()):
        raise QuiverError("twist scalars must be nonzero")
    # A diagonal arrow scaling is an automorphism exactly when it fixes the
    # relation span componentwise.
    for i in range(len(q.vertices)):
        for j in range(len(q.vertices)):
            paths = enumerate_paths(q, i, j, 2)
            if not paths:
                continue
            rows = _relation_rows(view.bq, paths, i, j)
            if not rows:
                continue
            ech, pivots = rref(field, rows)
            for row in rows:
                scaled = []
                for p, c in zip(paths, row):
                    f = field.one
                    for a in p.arrows:
                        f = field.mul(f, scal[a])
                    scaled.append(field.mul(c, f))
                if not span_contains(field, ech, pivots, scaled):
                    raise QuiverError(
                        "twist does not preserve the relation ideal"
                    )
    return scal


def returning_arrow_quiver(view, twist=None):
    """Trivial-extension presentation of the algebra behind `view`.

    The mixed relation family is the exact kernel of degree-2 multiplication
    into the dual bimodule, computed per component from the bimodule actions
    on dual basis vectors; `twist` (None | "sign" | {arrow name: scalar})
    rescales the terms that end with a base arrow, as the twisted extension
    prescribes.
    """
    bq = view.bq
    q = view.quiver
    field = view.field
    if not q.is_acyclic():
        raise QuiverError("returning arrows need an acyclic base")
    ok, n = is_n_properly_graded(view)
    if not ok:
        raise QuiverError(
            "base algebra is not properly graded: maximal degrees %d and %d"
            % (n[0].degree, n[1].degree)
        )
    maximal = maximal_bound_paths(view)
    scal = _twist_scalars(view, twist, n)

    taken = set(q.arrow_index) | set(q.vertex_index)
    beta_names = []
    arrows = list(q.arrows)
    for cls in maximal:
        name = _beta_name(q, cls, taken)
        taken.add(name)
        beta_names.append(name)
        arrows.append(Arrow(name, cls.target, cls.source))
    qt = Quiver(q.vertices, arrows, name=q.name + "_trivext")
    nbase = len(q.arrows)

    # Position of each maximal class inside its component's quotient basis.
    mpos = []
    for cls in maximal:
        pos = next(
            k for k, c in enumerate(cls.coords) if not field.is_zero(c)
        )
        mpos.append(pos)

    rho = list(bq.relations)
    rho_m = []
    for k1, m1 in enumerate(maximal):
        for k2, m2 in enumerate(maximal):
            # beta_{m1} then beta_{m2}: runs t(m1) -> s(m1) = t(m2) -> s(m2)
            if m1.source == m2.target:
                p = compose(
                    qt,
                    arrow_path(qt, nbase + k1),
                    arrow_path(qt, nbase + k2),
                )
                rho_m.append(LinComb(field, [(p, field.one)]))

    rho_0 = []
    for u in range(len(q.vertices)):
        for v in range(len(q.vertices)):
            mixed = [
                p
                for p in enumerate_paths(qt, u, v, 2)
                if sum(1 for a in p.arrows if a >= nbase) == 1
            ]
            if not mixed:
                continue
            targets = view.basis_paths(n - 1, v, u) if n >= 1 else []
            dim_d = len(targets)
            rows = []
            for p in mixed:
                row = [field.zero] * dim_d
                if p.arrows[0] >= nbase:
                    # beta then alpha: alpha . dual(m) evaluated on classes
                    # y from v to u via y -> m-coordinate of [y * alpha].
                    k = p.arrows[0] - nbase
                    aidx = p.arrows[1]
                    for col, y in enumerate(targets):
                        prod = compose(q, arrow_path(q, aidx), y)
                        lc = LinComb(field, [(prod, field.one)])
                        row[col] = view.reduce(lc)[mpos[k]]
                else:
                    # alpha then beta: dual(m) . alpha evaluated via
                    # y -> m-coordinate of [alpha * y].
                    aidx = p.arrows[0]
                    k = p.arrows[1] - nbase
                    for col, y in enumerate(targets):
                        prod = compose(q, y, arrow_path(q, aidx))
                        lc = LinComb(field, [(prod, field.one)])
                        row[col] = view.reduce(lc)[mpos[k]]
                rows.append(row)
            kernel = nullspace(field, transpose(rows, dim_d), len(mixed))
            for vec in kernel:
                terms = []
                for p, c in zip(mixed, vec):
                    if field.is_zero(c):
                        continue
                    if scal is not None and p.arrows[0] < nbase:
                        c = field.mul(c, scal[p.arrows[0]])
                    terms.append((p, c))
                rho_0.append(LinComb(field, terms))

    bqt = BoundQuiver(qt, rho + rho_m + rho_0, field)
    tview = GradedAlgebraView(bqt, cutoff=max(view.cutoff, n + 3))
    mismatches = []
    for t in range(n + 3):
        s = n + 1 - t
        for i in range(len(q.vertices)):
            for j in range(len(q.vertices)):
                expected = view.dim(t, i, j) if t <= n else 0
                if 0 <= s <= n:
                    expected += view.dim(s, j, i)
                got = tview.dim(t, i, j)
                if got != expected:
                    mismatches.append((t, i, j, got, expected))
    return ReturningArrowQuiver(
        base=bq,
        view=view,
        n=n,
        maximal=maximal,
        beta_names=beta_names,
        bound_quiver=bqt,
        rho=tuple(rho),
        rho_m=tuple(rho_m),
        rho_0=tuple(rho_0),
        twist_scalars=scal,
        quadratic=not mismatches,
        dim_mismatches=mismatches,
    )


def self_injective_pairing_report(raq):
    """Socle-pairing check of the quadratic trivial extension: for each
    component, multiplication into the one-dimensional vertex socle pairs
    degree t against degree n+1-t nondegenerately.  Returns {(i, j, t):
    bool}."""
    if not raq.quadratic:
        raise QuiverError("pairing check needs a quadratic trivial extension")
    n = raq.n
    tview = GradedAlgebraView(raq.bound_quiver, cutoff=n + 3)
    field = tview.field
    nv = len(raq.quiver.vertices)
    report = {}
    for i in range(nv):
        if tview.dim(n + 1, i, i) != 1:
            report[(i, i, n + 1)] = False
            continue
    for i in range(nv):
        for j in range(nv):
            for t in range(n + 2):
                d1 = tview.dim(t, i, j)
                d2 = tview.dim(n + 1 - t, j, i)
                if d1 == 0 and d2 == 0:
                    continue
                if d1 != d2:
                    report[(i, j, t)] = False
                    continue
                xs = [
                    LinComb(field, [(p, field.one)])
                    for p in tview.basis_paths(t, i, j)
                ]
                ys = [
                    LinComb(field, [(p, field.one)])
                    for p in tview.basis_paths(n + 1 - t, j, i)
                ]
                mat = []
                for x in xs:
                    row = []
                    for y in ys:
                        prod = tview.multiply(y, x)
                        coords = tview.reduce(prod)
                        row.append(coords[0] if coords else field.zero)
                    mat.append(row)
                report[(i, j, t)] = len(rref(field, mat)[0]) == d1
    return report


def preprojective_presentation(gamma, n):
    """Presentation of the (n+1)-preprojective algebra of the n-slice
    algebra given by `gamma`: the quadratic dual of the sign-twisted
    trivial extension of gamma's quadratic dual."""
    lam = quadratic_dual(gamma).bound_quiver
    view = GradedAlgebraView(lam)
    ok, got = is_n_properly_graded(view)
    if not ok:
        raise QuiverError("quadratic dual is not properly graded")
    if got != n:
        raise QuiverError(
            "quadratic dual is %d-properly graded, expected %d" % (got, n)
        )
    raq = returning_arrow_quiver(view, twist="sign")
    if not raq.quadratic:
        warnings.warn(
            "trivial extension is not quadratic; the presentation only "
            "reflects its quadratic part",
            NonQuadraticWarning,
            stacklevel=2,
        )
    return quadratic_dual(raq.bound_quiver).bound_quiver


# -- windows ---------------------------------------------------------------


def _tag(t):
    return str(t) if t >= 0 else "m%d" % -t


class ZQWindow:
    """A finite range of slices of the stable translation quiver built
    from a properly graded base: slice copies of the base joined by
    returning arrows, relations instantiated per slice, and the positional
    translation (u, t) -> (u, t-1)."""

    def __init__(
        self,
        base,
        raq,
        n,
        t_min,
        t_max,
        bound_quiver,
        vertex_of,
        coord_of,
        arrow_origin,
        slice_arrow_of,
        returning_arrow_of,
        tau,
        dropped,
        relation_counts,
    ):
        self.base = base
        self.raq = raq
        self.n = n
        self.t_min = t_min
        self.t_max = t_max
        self.bound_quiver = bound_quiver
        self.quiver = bound_quiver.quiver
        self.vertex_of = vertex_of
        self.coord_of = coord_of
        self.arrow_origin = arrow_origin
        self.slice_arrow_of = slice_arrow_of
        self.returning_arrow_of = returning_arrow_of
        self.tau = tau
        self.dropped = dropped
        self.relation_counts = relation_counts

    def translation_structure(self, cutoff=None):
        kwargs = {} if cutoff is None else {"cutoff": cutoff}
        return TranslationStructure(self.bound_quiver, self.n, self.tau, **kwargs)

    def slice_vertices(self, t):
        return [
            w
            for w, (u, lt) in sorted(self.coord_of.items())
            if lt == t
        ]

    def interior_vertices(self):
        """Window vertices with both translate and inverse translate."""
        return [
            w
            for w, (u, t) in sorted(self.coord_of.items())
            if self.t_min < t < self.t_max
        ]

    def __repr__(self):
        return "ZQWindow(%r, slices %d..%d, %d vertices)" % (
            self.base.quiver.name,
            self.t_min,
            self.t_max,
            len(self.quiver.vertices),
        )


def zq_window(base, n, t_min, t_max, raq=None):
    """Materialize the window of slices t_min..t_max over the base.

    The base must be acyclic and n-properly graded with a quadratic
    trivial extension; returning arrows that would leave the window are
    dropped and recorded, as are relation instances that mention them.
    """
    if t_min > t_max:
        raise QuiverError("empty slice range")
    if raq is None:
        view = GradedAlgebraView(base)
        raq = returning_arrow_quiver(view, twist=None)
    if raq.n != n:
        raise QuiverError(
            "base is %d-properly graded, expected %d" % (raq.n, n)
        )
    if not raq.quadratic:
        raise QuiverError(
            "trivial extension is not quadratic; windows are undefined "
            "(first mismatch %r)" % (raq.dim_mismatches[0],)
        )
    q = base.quiver
    field = base.field
    nbase = len(q.arrows)
    nmax = len(raq.maximal)

    names = []
    vertex_of = {}
    coord_of = {}
    for t in range(t_min, t_max + 1):
        for u in range(len(q.vertices)):
            vertex_of[(u, t)] = len(names)
            coord_of[len(names)] = (u, t)
            names.append("%s_%s" % (q.vertices[u], _tag(t)))

    arrows = []
    arrow_origin = {}
    slice_arrow_of = {}
    returning_arrow_of = {}
    dropped_returning = []
    for t in range(t_min, t_max + 1):
        for aidx, arr in enumerate(q.arrows):
            wid = len(arrows)
            slice_arrow_of[(aidx, t)] = wid
            arrow_origin[wid] = ("slice", aidx, t)
            arrows.append(
                Arrow(
                    "%s_%s" % (arr.name, _tag(t)),
                    vertex_of[(arr.source, t)],
                    vertex_of[(arr.target, t)],
                )
            )
        for k in range(nmax):
            cls = raq.maximal[k]
            if t + 1 > t_max:
                dropped_returning.append((raq.beta_names[k], t))
                continue
            wid = len(arrows)
            returning_arrow_of[(k, t)] = wid
            arrow_origin[wid] = ("returning", k, t)
            arrows.append(
                Arrow(
                    "%s_%s" % (raq.beta_names[k], _tag(t)),
                    vertex_of[(cls.target, t)],
                    vertex_of[(cls.source, t + 1)],
                )
            )
    wq = Quiver(
        names, arrows, name="%s_window_%s_%s" % (q.name, _tag(t_min), _tag(t_max))
    )

    def lift_path(p, t):
        cur = t
        win_arrows = []
        for a in p.arrows:
            if a < nbase:
                key = slice_arrow_of.get((a, cur))
            else:
                key = returning_arrow_of.get((a - nbase, cur))
            if key is None:
                return None
            win_arrows.append(key)
            if a >= nbase:
                cur += 1
        return Path(
            vertex_of[(p.source, t)], tuple(win_arrows), vertex_of[(p.target, cur)]
        )

    relations = []
    relation_counts = Counter()
    dropped_relations = []
    families = [("rho", raq.rho), ("rho_m", raq.rho_m), ("rho_0", raq.rho_0)]
    for fam, rels in families:
        for ridx, r in enumerate(rels):
            for t in range(t_min, t_max + 1):
                lifted = []
                complete = True
                for p, c in r.terms:
                    lp = lift_path(p, t)
                    if lp is None:
                        complete = False
                        break
                    lifted.append((lp, c))
                if complete:
                    relations.append(LinComb(field, lifted))
                    relation_counts[fam] += 1
                else:
                    dropped_relations.append((fam, ridx, t))
    wbq = BoundQuiver(wq, relations, field)
    tau = {}
    for (u, t), wid in vertex_of.items():
        if t - 1 >= t_min:
            tau[wid] = vertex_of[(u, t - 1)]
    return ZQWindow(
        base=base,
        raq=raq,
        n=n,
        t_min=t_min,
        t_max=t_max,
        bound_quiver=wbq,
        vertex_of=vertex_of,
        coord_of=coord_of,
        arrow_origin=arrow_origin,
        slice_arrow_of=slice_arrow_of,
        returning_arrow_of=returning_arrow_of,
        tau=tau,
        dropped={
            "returning_arrows": dropped_returning,
            "relations": dropped_relations,
        },
        relation_counts=dict(relation_counts),
    )


# -- slice extraction ------------------------------------------------------


def _compare_regions(wa, ids_a, wb, ids_b, phi):
    """Compare two window truncations under a vertex bijection phi
    (index in wa -> index in wb): arrow multiplicities per vertex pair and
    relation spans per component (exact spans where arrows are
    multiplicity-free, dimensions otherwise).  Returns list of defects."""
    defects = []
    ta, vmap_a, amap_a = truncate_bound_quiver(wa.bound_quiver, ids_a)
    tb, vmap_b, amap_b = truncate_bound_quiver(wb.bound_quiver, ids_b)
    pair_a = Counter(
        (vmap_a[arrA.source], vmap_a[arrA.target])
        for arrA in [wa.quiver.arrows[a] for a in sorted(amap_a)]
    )
    # Translate wb arrow endpoint pairs through phi-inverse to wa labels.
    inv_phi = {b: a for a, b in phi.items()}
    pair_b = Counter()
    for a_old in sorted(amap_b):
        arrB = wb.quiver.arrows[a_old]
        src = vmap_a[inv_phi[arrB.source]]
        tgt = vmap_a[inv_phi[arrB.target]]
        pair_b[(src, tgt)] += 1
    if pair_a != pair_b:
        diff = (pair_a - pair_b) + (pair_b - pair_a)
        defects.append(("arrow-count", sorted(diff.keys())[:3]))
        return defects
    # Arrow identification for span comparison: where a pair has a single
    # arrow the identification is forced; ambiguous pairs downgrade the
    # comparison to span dimensions.
    forced = all(c == 1 for c in pair_a.values())
    field = ta.field
    nva = len(ta.quiver.vertices)
    if forced:
        arrow_bij = {}
        pos_b = {}
        for a_old in sorted(amap_b):
            arrB = wb.quiver.arrows[a_old]
            key = (
                vmap_a[inv_phi[arrB.source]],
                vmap_a[inv_phi[arrB.target]],
            )
            pos_b[key] = amap_b[a_old]
        for a_old in sorted(amap_a):
            arrA = wa.quiver.arrows[a_old]
            key = (vmap_a[arrA.source], vmap_a[arrA.target])
            arrow_bij[amap_a[a_old]] = pos_b[key]
    for i in range(nva):
        for j in range(nva):
            paths_a = enumerate_paths(ta.quiver, i, j, 2)
            if not paths_a:
                continue
            rows_a = _relation_rows(ta, paths_a, i, j)
            back_a = {new: old for old, new in vmap_a.items()}
            i_b = vmap_b[phi[back_a[i]]]
            j_b = vmap_b[phi[back_a[j]]]
            paths_b = enumerate_paths(tb.quiver, i_b, j_b, 2)
            rows_b = _relation_rows(tb, paths_b, i_b, j_b)
            if forced:
                mapped = []
                index_b = {p.key(): c for c, p in enumerate(paths_b)}
                for row in rows_a:
                    vec = [field.zero] * len(paths_b)
                    for p, c in zip(paths_a, row):
                        arrows_b = tuple(arrow_bij[a] for a in p.arrows)
                        kb = (2, arrows_b, i_b)
                        vec[index_b[kb]] = c
                    mapped.append(vec)
                ra, pa_ = rref(field, mapped)
                rb, pb_ = rref(field, rows_b)
                if (ra, pa_) != (rb, pb_):
                    defects.append(("relation-span", (i, j)))
            else:
                if len(rref(field, rows_a)[0]) != len(rref(field, rows_b)[0]):
                    defects.append(("relation-dim", (i, j)))
    return defects


def extract_tau_slice(window, choice):
    """Extract the full bound subquiver on one chosen vertex per
    translation orbit and verify it: single hit per orbit, convexity, and
    reconstruction (the window rebuilt from the extracted slice matches
    the original on the common rectangular core).

    Returns (BoundQuiver, report).
    """
    base_q = window.base.quiver
    norm = {}
    for key, t in choice.items():
        u = base_q._vid(key)
        if u in norm:
            raise QuiverError(
                "orbit of %r hit twice" % (base_q.vertices[u],)
            )
        norm[u] = t
    missing = [
        base_q.vertices[u]
        for u in range(len(base_q.vertices))
        if u not in norm
    ]
    if missing:
        raise QuiverError("orbit of %r missed" % (missing[0],))
    for u, t in norm.items():
        if not window.t_min <= t <= window.t_max:
            raise QuiverError(
                "slice index %d for %r falls outside the window"
                % (t, base_q.vertices[u])
            )
    ids = [window.vertex_of[(u, norm[u])] for u in sorted(norm)]
    slice_bq, _, _ = truncate_bound_quiver(window.bound_quiver, ids)

    report = {"ok": True}
    view2 = GradedAlgebraView(slice_bq)
    ok2, n2 = is_n_properly_graded(view2)
    report["properly_graded"] = bool(ok2 and n2 == window.n)
    base_view = GradedAlgebraView(window.base)
    dim_base = sum(
        base_view.total_dim(t) for t in range(window.n + 1)
    )
    dim_slice = sum(view2.total_dim(t) for t in range(window.n + 1))
    report["dimension_match"] = dim_base == dim_slice
    if not (report["properly_graded"] and report["dimension_match"]):
        report["ok"] = False
        return slice_bq, report

    span = window.t_max - window.t_min
    rebuilt = zq_window(slice_bq, window.n, 0, span)
    c_max = max(norm.values())
    core_a = [
        window.vertex_of[(u, t)]
        for (u, t) in window.vertex_of
        if c_max <= t <= window.t_max
    ]
    phi = {}
    # Vertex u of the base appears in slice_bq under its window name; the
    # rebuilt window indexes it per slice s, representing (u, c_u + s).
    slice_names = {
        slice_bq.quiver.vertices[k]: k
        for k in range(len(slice_bq.quiver.vertices))
    }
    core_b = []
    for u, c_u in norm.items():
        wname = window.quiver.vertices[window.vertex_of[(u, c_u)]]
        k = slice_names[wname]
        for s in range(span + 1):
            t_inf = c_u + s
            if c_max <= t_inf <= window.t_max:
                wa = window.vertex_of[(u, t_inf)]
                wb = rebuilt.vertex_of[(k, s)]
                phi[wa] = wb
                core_b.append(wb)
    core_a = sorted(set(core_a))
    core_b = sorted(set(core_b))
    defects = _compare_regions(window, core_a, rebuilt, core_b, phi)
    report["core_slices"] = (c_max, window.t_max)
    report["full_match"] = c_max == window.t_min
    report["reconstruction_defects"] = defects
    report["ok"] = not defects
    return slice_bq, report


# -- slice order -----------------------------------------------------------


def slice_order(window, vertex, path_order):
    """The degree -r*l + t of a window vertex (u, r), where t is the
    1-based position of u in the declared path order u_1..u_l.  The order
    is valid only when every base arrow goes from a later position to an
    earlier one (so no path runs forward in the order)."""
    q = window.base.quiver
    order = [q._vid(u) for u in path_order]
    if sorted(order) != list(range(len(q.vertices))):
        raise QuiverError("path order must enumerate every base vertex once")
    pos = {u: k + 1 for k, u in enumerate(order)}
    for arr in q.arrows:
        if pos[arr.source] < pos[arr.target]:
            raise QuiverError(
                "invalid path order: arrow %s runs from position %d to %d"
                % (arr.name, pos[arr.source], pos[arr.target])
            )
    if isinstance(vertex, tuple):
        u, r = vertex
        u = q._vid(u)
    else:
        wid = window.quiver._vid(vertex)
        u, r = window.coord_of[wid]
    return -r * len(order) + pos[u]
