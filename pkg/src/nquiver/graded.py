"""Degreewise bases for a bound-quiver algebra kQ/(rho).

A GradedAlgebraView computes, per key (degree t, source i, target j), the
component of the relation ideal inside the span of length-t paths from i
to j, and a canonical basis of the quotient.  The ideal component is built
by two-sided arrow propagation from degree t-1 plus the degree-t relations
themselves; everything is an exact echelon computation, so the chosen
quotient basis (classes of the non-pivot paths in canonical path order) is
reproducible.

Cache entries are pure functions of the bound quiver and the key.  Fills
are idempotent: racing fills recompute the same immutable entry, and dict
publication is atomic, so shared views are safe to read concurrently.
"""

from .linalg import nullspace, reduce_row, rref
from .quiver import LinComb, QuiverError, compose, enumerate_paths

DEFAULT_CUTOFF = 64

#: Marker returned by loewy_length when the cutoff is hit while components
#: are still nonzero (possible only for cyclic quivers).
LOEWY_UNBOUNDED = "infinite up to cutoff"


class CutoffExceeded(QuiverError):
    """A graded computation ran past the configured degree cutoff."""


class BoundPathClass:
    """A nonzero class of the graded algebra: a representative linear
    combination of paths together with its coordinates in the cached
    quotient basis of its (degree, source, target) component."""

    def __init__(self, lincomb, key, coords):
        self.lincomb = lincomb
        self.key = key  # (degree, source index, target index)
        self.coords = tuple(coords)

    @property
    def degree(self):
        return self.key[0]

    @property
    def source(self):
        return self.key[1]

    @property
    def target(self):
        return self.key[2]

    def __repr__(self):
        return "BoundPathClass(%r, key=%r)" % (self.lincomb, self.key)


class _Component:
    """Immutable cache entry for one (t, i, j) key."""

    __slots__ = ("paths", "path_index", "ideal_rows", "ideal_pivots", "basis_idx")

    def __init__(self, paths, ideal_rows, ideal_pivots):
        self.paths = paths
        self.path_index = {p.key(): k for k, p in enumerate(paths)}
        self.ideal_rows = ideal_rows
        self.ideal_pivots = ideal_pivots
        pivot_set = set(ideal_pivots)
        self.basis_idx = [k for k in range(len(paths)) if k not in pivot_set]

    @property
    def dim(self):
        return len(self.basis_idx)


class GradedAlgebraView:
    def __init__(self, bound_quiver, cutoff=DEFAULT_CUTOFF):
        if cutoff < 1:
            raise QuiverError("degree cutoff must be positive")
        self.bq = bound_quiver
        self.quiver = bound_quiver.quiver
        self.field = bound_quiver.field
        self.cutoff = cutoff
        self._cache = {}
        self._top_degree = None
        self._rel_by_key = {}
        for r in bound_quiver.relations:
            key = (r.degree, r.source, r.target)
            self._rel_by_key.setdefault(key, []).append(r)

    # -- component construction -------------------------------------------

    def component(self, t, i, j):
        """The cache entry for length-t classes from i to j."""
        if t < 0:
            raise QuiverError("negative degree")
        if t > self.cutoff:
            raise CutoffExceeded(
                "degree %d exceeds cutoff %d" % (t, self.cutoff)
            )
        q = self.quiver
        i = q._vid(i)
        j = q._vid(j)
        key = (t, i, j)
        entry = self._cache.get(key)
        if entry is None:
            entry = self._build(t, i, j)
            self._cache[key] = entry
        return entry

    def _build(self, t, i, j):
        q = self.quiver
        field = self.field
        paths = enumerate_paths(q, i, j, t)
        if not paths or t == 0:
            return _Component(paths, [], [])
        index = {p.key(): k for k, p in enumerate(paths)}
        rows = []

        def push(terms):
            row = [field.zero] * len(paths)
            for pkey, c in terms:
                row[index[pkey]] = field.add(row[index[pkey]], c)
            rows.append(row)

        # Left propagation: arrows x -> j applied to ideal rows of (t-1, i, x).
        for x in range(len(q.vertices)):
            sub = self.component(t - 1, i, x)
            if not sub.ideal_rows:
                continue
            for aidx in q.out_arrows(x):
                if q.arrows[aidx].target != j:
                    continue
                for row in sub.ideal_rows:
                    terms = []
                    for k, c in enumerate(row):
                        if not field.is_zero(c):
                            p = sub.paths[k]
                            ext = p.key()
                            terms.append(((t, ext[1] + (aidx,), i), c))
                    push(terms)
        # Right propagation: ideal rows of (t-1, x, j) precomposed with arrows i -> x.
        for x in range(len(q.vertices)):
            sub = self.component(t - 1, x, j)
            if not sub.ideal_rows:
                continue
            for aidx in q.out_arrows(i):
                if q.arrows[aidx].target != x:
                    continue
                for row in sub.ideal_rows:
                    terms = []
                    for k, c in enumerate(row):
                        if not field.is_zero(c):
                            ext = sub.paths[k].key()
                            terms.append(((t, (aidx,) + ext[1], i), c))
                    push(terms)
        # Relations living in this very degree and component.
        for r in self._rel_by_key.get((t, i, j), ()):
            push([(p.key(), c) for p, c in r.terms])

        ech, pivots = rref(field, rows)
        return _Component(paths, ech, pivots)

    # -- public queries ----------------------------------------------------

    def dim(self, t, i, j):
        return self.component(t, i, j).dim

    def graded_component(self, t, i, j):
        """(dimension, tuple of BoundPathClass) for the (t, i, j) key."""
        entry = self.component(t, i, j)
        q = self.quiver
        i = q._vid(i)
        j = q._vid(j)
        classes = []
        for pos, k in enumerate(entry.basis_idx):
            coords = [self.field.zero] * entry.dim
            coords[pos] = self.field.one
            lc = LinComb(self.field, [(entry.paths[k], self.field.one)])
            classes.append(BoundPathClass(lc, (t, i, j), coords))
        return entry.dim, tuple(classes)

    def basis_paths(self, t, i, j):
        entry = self.component(t, i, j)
        return [entry.paths[k] for k in entry.basis_idx]

    def total_dim(self, t):
        nv = len(self.quiver.vertices)
        return sum(self.dim(t, i, j) for i in range(nv) for j in range(nv))

    def reduce(self, lincomb):
        """Coordinates of a homogeneous linear combination in the quotient
        basis of its component.  Stationary/zero input needs endpoints, so
        lincomb must carry them (LinComb always does)."""
        t = lincomb.degree
        i = lincomb.source
        j = lincomb.target
        entry = self.component(t, i, j)
        field = self.field
        vec = [field.zero] * len(entry.paths)
        for p, c in lincomb.terms:
            vec[entry.path_index[p.key()]] = c
        nf = reduce_row(field, entry.ideal_rows, entry.ideal_pivots, vec)
        return [nf[k] for k in entry.basis_idx]

    def is_zero_class(self, lincomb):
        if lincomb.is_zero():
            return True
        return all(self.field.is_zero(c) for c in self.reduce(lincomb))

    def class_of(self, lincomb):
        """BoundPathClass of a nonzero combination, or None if it reduces
        to zero."""
        coords = self.reduce(lincomb)
        if all(self.field.is_zero(c) for c in coords):
            return None
        key = (lincomb.degree, lincomb.source, lincomb.target)
        entry = self.component(*key)
        field = self.field
        rep = LinComb(
            field,
            [
                (entry.paths[k], c)
                for k, c in zip(entry.basis_idx, coords)
                if not field.is_zero(c)
            ],
        )
        return BoundPathClass(rep, key, coords)

    def multiply(self, x, y):
        """Reduced representative of x*y (y applied first), as a LinComb.

        Endpoints must compose: y runs i -> j and x runs j -> l.
        """
        field = self.field
        q = self.quiver
        if y.target != x.source:
            raise QuiverError("endpoints do not compose")
        terms = []
        for px, cx in x.terms:
            for py, cy in y.terms:
                terms.append((compose(q, py, px), field.mul(cx, cy)))
        prod = LinComb(
            field,
            terms,
            source=y.source,
            target=x.target,
            degree=x.degree + y.degree,
        )
        if prod.is_zero():
            return prod
        coords = self.reduce(prod)
        entry = self.component(prod.degree, prod.source, prod.target)
        return LinComb(
            field,
            [
                (entry.paths[k], c)
                for k, c in zip(entry.basis_idx, coords)
                if not field.is_zero(c)
            ],
            source=prod.source,
            target=prod.target,
            degree=prod.degree,
        )

    def max_degree_bound(self):
        """Largest degree worth scanning: path length bound for acyclic
        quivers, the cutoff otherwise."""
        if self.quiver.is_acyclic():
            return min(self.quiver.longest_path_length(), self.cutoff)
        return self.cutoff

    def top_degree(self):
        """The largest degree with a nonzero component.  Scans upward and
        stops at the first all-zero degree (every later one is zero too);
        raises CutoffExceeded if none appears within the cutoff."""
        if self._top_degree is None:
            for t in range(1, self.cutoff + 1):
                if self.total_dim(t) == 0:
                    self._top_degree = t - 1
                    break
            else:
                raise CutoffExceeded(
                    "no vanishing degree within cutoff %d" % self.cutoff
                )
        return self._top_degree


def _socle_basis(view, t, i, j):
    """Coordinate basis of the classes in (t, i, j) killed by every arrow
    extension on either side."""
    entry = view.component(t, i, j)
    if entry.dim == 0:
        return entry, []
    q = view.quiver
    field = view.field
    rows = []
    basis_paths = [entry.paths[k] for k in entry.basis_idx]
    # Left extensions: arrows leaving j.
    for aidx in q.out_arrows(j):
        y = q.arrows[aidx].target
        up = view.component(t + 1, i, y)
        cols = []
        for p in basis_paths:
            ext = p.key()
            vec = [field.zero] * len(up.paths)
            vec[up.path_index[(t + 1, ext[1] + (aidx,), i)]] = field.one
            nf = reduce_row(field, up.ideal_rows, up.ideal_pivots, vec)
            cols.append([nf[k] for k in up.basis_idx])
        for m in range(len(up.basis_idx)):
            rows.append([cols[k][m] for k in range(len(basis_paths))])
    # Right extensions: arrows entering i.
    for aidx in q.in_arrows(i):
        x = q.arrows[aidx].source
        up = view.component(t + 1, x, j)
        cols = []
        for p in basis_paths:
            ext = p.key()
            vec = [field.zero] * len(up.paths)
            vec[up.path_index[(t + 1, (aidx,) + ext[1], x)]] = field.one
            nf = reduce_row(field, up.ideal_rows, up.ideal_pivots, vec)
            cols.append([nf[k] for k in up.basis_idx])
        for m in range(len(up.basis_idx)):
            rows.append([cols[k][m] for k in range(len(basis_paths))])
    if not rows:
        rows = [[field.zero] * entry.dim]
    return entry, nullspace(field, rows, entry.dim)


def maximal_bound_paths(view):
    """Echelon bases of the maximal bound-path classes: nonzero classes
    whose every arrow extension vanishes.  Grouped deterministically by
    (source, target, degree)."""
    q = view.quiver
    if not q.is_acyclic():
        raise QuiverError("maximal bound paths need an acyclic quiver")
    field = view.field
    out = []
    top = q.longest_path_length()
    if top + 1 > view.cutoff:
        raise CutoffExceeded(
            "socle scan needs degree %d but cutoff is %d" % (top + 1, view.cutoff)
        )
    nv = len(q.vertices)
    for i in range(nv):
        for j in range(nv):
            for t in range(top + 1):
                entry, socle = _socle_basis(view, t, i, j)
                for coords in socle:
                    rep = LinComb(
                        field,
                        [
                            (entry.paths[k], c)
                            for k, c in zip(entry.basis_idx, coords)
                            if not field.is_zero(c)
                        ],
                        source=i,
                        target=j,
                        degree=t,
                    )
                    out.append(BoundPathClass(rep, (t, i, j), coords))
    out.sort(key=lambda cls: (cls.source, cls.target, cls.degree))
    return out


def is_n_properly_graded(view):
    """(True, n) when every maximal bound path class has the same degree n;
    otherwise (False, (witness, witness)) with two classes of different
    degrees."""
    classes = maximal_bound_paths(view)
    if not classes:
        raise QuiverError("algebra has no maximal bound paths")
    degrees = sorted({cls.degree for cls in classes})
    if len(degrees) == 1:
        return True, degrees[0]
    lo = next(cls for cls in classes if cls.degree == degrees[0])
    hi = next(cls for cls in classes if cls.degree == degrees[-1])
    return False, (lo, hi)


def loewy_length(view):
    """1 + the top degree with a nonzero component; LOEWY_UNBOUNDED when
    the cutoff is reached first.  Once a degree is entirely zero every
    later one is too, so the scan may stop there."""
    last_nonzero = -1
    for t in range(view.cutoff + 1):
        if view.total_dim(t) == 0:
            return last_nonzero + 1
        last_nonzero = t
    return LOEWY_UNBOUNDED
