"""Exact sparse linear algebra over the Gaussian rationals.

Elimination is fraction free: every row is scaled to Gaussian-integer entries
(pairs of Python ints) and combined as ``a*row - b*pivot_row``, with the
integer content divided out after each step.  Pivots are taken as the first
structurally nonzero column of each incoming row, so results depend only on
the input order.
"""

from __future__ import annotations

from math import gcd

from gmpy2 import mpq

from .coeffs import GaussRat, ONE, ZERO
from .errors import DimensionMismatch, ParseError

_MPQ = type(mpq(0))


# --------------------------------------------------------------------------
# matrices


class GaussMat:
    """Sparse ``rows x cols`` matrix; ``data`` maps row -> {col: GaussRat}."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data=None):
        self.rows = rows
        self.cols = cols
        self.data = {}
        if data:
            for r, row in data.items():
                clean = {c: GaussRat.coerce(v) for c, v in row.items() if v}
                for c in clean:
                    if not (0 <= r < rows and 0 <= c < cols):
                        raise IndexError("entry (%d, %d) outside %dx%d" % (r, c, rows, cols))
                clean = {c: v for c, v in clean.items() if v}
                if clean:
                    self.data[r] = clean

    @classmethod
    def _wrap(cls, rows, cols, data):
        m = object.__new__(cls)
        m.rows, m.cols, m.data = rows, cols, data
        return m

    @classmethod
    def identity(cls, n, scale=ONE):
        scale = GaussRat.coerce(scale)
        if not scale:
            return cls(n, n)
        return cls._wrap(n, n, {i: {i: scale} for i in range(n)})

    @classmethod
    def zeros(cls, rows, cols=None):
        return cls(rows, rows if cols is None else cols)

    @classmethod
    def from_dense(cls, rows):
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        return cls(nr, nc, {i: {j: v for j, v in enumerate(r)} for i, r in enumerate(rows)})

    @classmethod
    def from_entries(cls, rows, cols, entries):
        data = {}
        for r, c, v in entries:
            v = GaussRat.coerce(v)
            row = data.setdefault(r, {})
            s = row.get(c, ZERO) + v
            if s:
                row[c] = s
            else:
                row.pop(c, None)
        return cls(rows, cols, data)

    @property
    def shape(self):
        return self.rows, self.cols

    def nnz(self):
        return sum(len(r) for r in self.data.values())

    def get(self, r, c):
        return self.data.get(r, {}).get(c, ZERO)

    def entries(self):
        for r in sorted(self.data):
            row = self.data[r]
            for c in sorted(row):
                yield r, c, row[c]

    def to_dense(self):
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def is_zero(self):
        return not self.data

    def is_diagonal(self):
        return all(set(row) == {r} for r, row in self.data.items())

    def is_square(self):
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, GaussMat):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    __hash__ = None

    def __repr__(self):
        return "GaussMat(%dx%d, nnz=%d)" % (self.rows, self.cols, self.nnz())

    # arithmetic -----------------------------------------------------
    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch("shapes %s and %s differ" % (self.shape, other.shape))

    def __add__(self, other):
        self._same_shape(other)
        data = {r: dict(row) for r, row in self.data.items()}
        for r, row in other.data.items():
            tgt = data.setdefault(r, {})
            for c, v in row.items():
                s = tgt.get(c)
                s = v if s is None else s + v
                if s:
                    tgt[c] = s
                else:
                    del tgt[c]
            if not tgt:
                del data[r]
        return GaussMat._wrap(self.rows, self.cols, data)

    def __neg__(self):
        return GaussMat._wrap(self.rows, self.cols,
                              {r: {c: -v for c, v in row.items()} for r, row in self.data.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = GaussRat.coerce(s)
        if not s:
            return GaussMat(self.rows, self.cols)
        if s == ONE:
            return self
        return GaussMat._wrap(self.rows, self.cols,
                              {r: {c: v * s for c, v in row.items()} for r, row in self.data.items()})

    def __matmul__(self, other):
        if isinstance(other, dict):
            return self.apply(other)
        if self.cols != other.rows:
            raise DimensionMismatch("cannot multiply %s by %s" % (self.shape, other.shape))
        odata = other.data
        out = {}
        for r, row in self.data.items():
            acc = {}
            for j, v in row.items():
                orow = odata.get(j)
                if not orow:
                    continue
                vr, vi = v.re, v.im
                for c, w in orow.items():
                    wr, wi = w.re, w.im
                    if vi or wi:
                        pr, pi = vr * wr - vi * wi, vr * wi + vi * wr
                    else:
                        pr, pi = vr * wr, wr * 0
                    s = acc.get(c)
                    if s is None:
                        acc[c] = [pr, pi]
                    else:
                        s[0] += pr
                        s[1] += pi
            clean = {c: GaussRat._raw(p[0], p[1]) for c, p in acc.items() if p[0] or p[1]}
            if clean:
                out[r] = clean
        return GaussMat._wrap(self.rows, other.cols, out)

    def apply(self, vec):
        """Matrix times a sparse vector ``{index: GaussRat}``."""
        out = {}
        for r, row in self.data.items():
            s = ZERO
            for c, v in row.items():
                x = vec.get(c)
                if x is not None:
                    s = s + v * x
            if s:
                out[r] = s
        return out

    def transpose(self):
        data = {}
        for r, row in self.data.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return GaussMat._wrap(self.cols, self.rows, data)

    def commutator(self, other):
        return self @ other - other @ self

    def kron(self, other):
        data = {}
        for r1, row1 in self.data.items():
            for r2, row2 in other.data.items():
                r = r1 * other.rows + r2
                tgt = data.setdefault(r, {})
                for c1, v1 in row1.items():
                    for c2, v2 in row2.items():
                        tgt[c1 * other.cols + c2] = v1 * v2
        return GaussMat._wrap(self.rows * other.rows, self.cols * other.cols, data)

    def flatten(self):
        """Row-major sparse vector of length ``rows * cols``."""
        nc = self.cols
        return {r * nc + c: v for r, row in self.data.items() for c, v in row.items()}

    @classmethod
    def from_flat(cls, vec, rows, cols=None):
        cols = rows if cols is None else cols
        data = {}
        for idx, v in vec.items():
            r, c = divmod(idx, cols)
            data.setdefault(r, {})[c] = v
        return cls._wrap(rows, cols, data)

    def trace(self):
        s = ZERO
        for r, row in self.data.items():
            v = row.get(r)
            if v is not None:
                s = s + v
        return s

    def inverse(self):
        """Exact inverse of a small square matrix (Gauss-Jordan)."""
        if not self.is_square():
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        a = [[self.get(i, j) for j in range(n)] + [ONE if i == j else ZERO for j in range(n)]
             for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            a[col], a[piv] = a[piv], a[col]
            inv = a[col][col].inverse()
            a[col] = [x * inv for x in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return GaussMat(n, n, {i: {j: a[i][n + j] for j in range(n)} for i in range(n)})

    # json -----------------------------------------------------------
    def to_json(self):
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[r, c, *v.to_pair()] for r, c, v in self.entries()]}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls.from_entries(obj["rows"], obj["cols"],
                                    [(r, c, GaussRat.from_pair(re, im))
                                     for r, c, re, im in obj["entries"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("bad matrix JSON: %s" % exc) from exc


# --------------------------------------------------------------------------
# fraction-free elimination over Z[i]


def _gauss_int_row(vec):
    """Scale a {col: GaussRat} row to coprime Gaussian-integer pairs."""
    den = 1
    for v in vec.values():
        for q in (v.re, v.im):
            d = int(q.denominator)
            if d != 1:
                den = den * d // gcd(den, d)
    row = {}
    for c, v in vec.items():
        a = int(v.re * den)
        b = int(v.im * den)
        if a or b:
            row[c] = (a, b)
    return _primitive(row)


def _primitive(row):
    g = 0
    for a, b in row.values():
        g = gcd(g, a, b)
        if g == 1:
            return row
    if g > 1:
        return {c: (a // g, b // g) for c, (a, b) in row.items()}
    return row


def _combine(row, piv, c):
    """Eliminate column ``c`` of ``row`` using pivot row ``piv``."""
    pa, pb = piv[c]
    ra, rb = row.pop(c)
    n = pa * pa + pb * pb
    # quotient (ra + rb i) / (pa + pb i) when exact
    qa = ra * pa + rb * pb
    qb = rb * pa - ra * pb
    if qa % n == 0 and qb % n == 0:
        qa //= n
        qb //= n
        for j, (x, y) in piv.items():
            if j == c:
                continue
            ta = qa * x - qb * y
            tb = qa * y + qb * x
            cur = row.get(j)
            if cur is None:
                row[j] = (-ta, -tb)
            else:
                na, nb = cur[0] - ta, cur[1] - tb
                if na or nb:
                    row[j] = (na, nb)
                else:
                    del row[j]
        return row
    # row <- piv[c] * row - row[c] * piv
    out = {}
    for j, (x, y) in row.items():
        out[j] = (pa * x - pb * y, pa * y + pb * x)
    for j, (x, y) in piv.items():
        if j == c:
            continue
        ta = ra * x - rb * y
        tb = ra * y + rb * x
        cur = out.get(j)
        if cur is None:
            out[j] = (-ta, -tb)
        else:
            na, nb = cur[0] - ta, cur[1] - tb
            if na or nb:
                out[j] = (na, nb)
            else:
                del out[j]
    return _primitive(out)


class Echelon:
    """Incremental row echelon form; ``pivots`` maps column -> pivot row."""

    def __init__(self, ncols=None):
        self.ncols = ncols
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row):
        """Reduce a Gaussian-integer row; returns the remainder (maybe empty)."""
        pivots = self.pivots
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                return row
            row = _combine(row, piv, c)
        return row

    def add(self, vec):
        """Add a {col: GaussRat} row; True when it raised the rank."""
        if not vec:
            return False
        return self.add_int(_gauss_int_row(vec))

    def add_int(self, row):
        row = self.reduce(row)
        if not row:
            return False
        self.pivots[min(row)] = _primitive(row)
        return True

    def contains_int(self, row):
        return not self.reduce(dict(row))

    def reduced_rows(self):
        """Fully reduced rows keyed by pivot column (back-substitution)."""
        cols = sorted(self.pivots, reverse=True)
        done = {}
        for c in cols:
            row = dict(self.pivots[c])
            for j in sorted(k for k in row if k != c and k in done):
                if j in row:
                    row = _combine(row, done[j], j)
            done[c] = _primitive(row)
        return done


def _to_gauss(pair, den=1):
    a, b = pair
    if den == 1:
        return GaussRat._raw(mpq(a), mpq(b))
    return GaussRat._raw(mpq(a, 1) / den, mpq(b, 1) / den)


def _div_pairs(num, den):
    """Exact quotient of two Gaussian-integer pairs as a GaussRat."""
    a, b = num
    c, d = den
    n = c * c + d * d
    return GaussRat._raw(mpq(a * c + b * d, n), mpq(b * c - a * d, n))


# --------------------------------------------------------------------------
# subspaces


def _coerce_vec(vec):
    if all(isinstance(v, GaussRat) for v in vec.values()):
        return vec
    return {c: GaussRat.coerce(v) for c, v in vec.items()}


class Subspace:
    """Span of sparse vectors, stored in reduced row echelon form.

    Each basis vector has entry 1 at its pivot and 0 at every other pivot;
    pivots increase along the basis.
    """

    __slots__ = ("ambient_dim", "basis", "pivots", "_ech")

    def __init__(self, ambient_dim, vectors=()):
        self.ambient_dim = ambient_dim
        ech = Echelon(ambient_dim)
        for v in vectors:
            if v and max(v) >= ambient_dim:
                raise DimensionMismatch("vector index outside ambient dimension %d" % ambient_dim)
            ech.add(_coerce_vec(v))
        self._ech = ech
        reduced = ech.reduced_rows()
        self.pivots = sorted(reduced)
        self.basis = []
        for c in self.pivots:
            row = reduced[c]
            p = row[c]
            self.basis.append({j: (ONE if j == c else _div_pairs(x, p)) for j, x in row.items()})

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, vec):
        if vec and max(vec) >= self.ambient_dim:
            raise DimensionMismatch("vector outside ambient dimension")
        if not vec:
            return True
        return self._ech.contains_int(_gauss_int_row(_coerce_vec(vec)))

    def contains_space(self, other):
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("ambient dimensions %d and %d" % (self.ambient_dim, other.ambient_dim))
        return all(self.contains(v) for v in other.basis)

    def equal(self, other):
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("ambient dimensions %d and %d" % (self.ambient_dim, other.ambient_dim))
        return self.dim == other.dim and self.pivots == other.pivots and self.basis == other.basis

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.equal(other)

    __hash__ = None

    def __repr__(self):
        return "Subspace(dim=%d, ambient=%d)" % (self.dim, self.ambient_dim)

    @classmethod
    def full(cls, n):
        return cls(n, [{i: ONE} for i in range(n)])


def subspace_ops(op, a, b=None):
    if op == "dim":
        return a.dim
    if op == "contains":
        if isinstance(b, Subspace):
            return a.contains_space(b)
        return a.contains(b)
    if op == "equal":
        return a.equal(b)
    raise ValueError("unknown op %r" % op)


def span(vectors, ambient_dim):
    return Subspace(ambient_dim, vectors)


# --------------------------------------------------------------------------
# rank and nullspace


def rank(M):
    if isinstance(M, GaussMat):
        rows = M.data.values()
    else:
        rows = M
    ech = Echelon()
    for row in rows:
        ech.add(row)
    return ech.rank


def _null_from_echelon(ech, variables):
    """Nullspace vectors (over ``variables``) of the equations in ``ech``."""
    reduced = ech.reduced_rows()
    free = [v for v in variables if v not in reduced]
    by_free = {f: {f: ONE} for f in free}
    for c, row in reduced.items():
        p = row[c]
        for j, x in row.items():
            if j == c:
                continue
            by_free[j][c] = -_div_pairs(x, p)
    return [by_free[f] for f in free]


def nullspace(M):
    """Basis of ``{x : M x = 0}`` as a :class:`Subspace`."""
    ech = Echelon(M.cols)
    for r in sorted(M.data):
        ech.add(M.data[r])
    vecs = _null_from_echelon(ech, range(M.cols))
    return Subspace(M.cols, vecs)


# --------------------------------------------------------------------------
# commutants and centers


def _square_dim(gens, d):
    for g in gens:
        if not g.is_square():
            raise DimensionMismatch("generator of shape %s is not square" % (g.shape,))
        if d is None:
            d = g.rows
        elif g.rows != d:
            raise DimensionMismatch("generators of sizes %d and %d" % (d, g.rows))
    if d is None:
        raise DimensionMismatch("no generators and no dimension given")
    return d


def commutant_system(gens, d=None):
    """Solve ``X g = g X`` for every generator.

    Diagonal generators are used first: they force ``X[a, b] = 0`` whenever
    the diagonal entries at ``a`` and ``b`` differ, which is the same as
    eliminating those one-term equations.  Remaining unknowns are numbered in
    row-major order and the other generators' equations are eliminated one
    generator at a time.

    Returns ``(d, variables, vectors)`` where ``variables[i] = (a, b)`` and
    ``vectors`` is a nullspace basis in variable coordinates.
    """
    gens = list(gens)
    d = _square_dim(gens, d)
    diag = [g for g in gens if g.is_diagonal()]
    other = [g for g in gens if not g.is_diagonal()]
    classes = {}
    for a in range(d):
        sig = tuple(g.get(a, a) for g in diag)
        classes.setdefault(sig, []).append(a)
    cls_of = {}
    for members in classes.values():
        for a in members:
            cls_of[a] = members
    variables = []
    for a in range(d):
        for b in cls_of[a]:
            variables.append((a, b))
    variables.sort()
    var_id = {ab: i for i, ab in enumerate(variables)}
    # unknowns by row / by column for fast equation assembly
    by_row = {}
    by_col = {}
    for (a, b), i in var_id.items():
        by_row.setdefault(a, []).append((b, i))
        by_col.setdefault(b, []).append((a, i))

    ech = Echelon(len(variables))
    for g in other:
        gt = g.transpose()
        eqs = {}
        # (X g)[a, c] = sum_j X[a, j] g[j, c]
        for (a, j), i in var_id.items():
            grow = g.data.get(j)
            if grow:
                for c, val in grow.items():
                    eq = eqs.setdefault((a, c), {})
                    s = eq.get(i)
                    eq[i] = val if s is None else s + val
            # (g X)[r, b] = sum_a' g[r, a'] X[a', b]  with (a', b) = (a, j)
            gcol = gt.data.get(a)
            if gcol:
                for r, val in gcol.items():
                    eq = eqs.setdefault((r, j), {})
                    s = eq.get(i)
                    eq[i] = -val if s is None else s - val
        for key in sorted(eqs):
            eq = {i: v for i, v in eqs[key].items() if v}
            if eq:
                ech.add(eq)
    vecs = _null_from_echelon(ech, range(len(variables)))
    return d, variables, vecs


def commutant_basis(gens, d=None):
    """Basis of ``{X : X g = g X for all g}`` as flattened ``d*d`` vectors."""
    d, variables, vecs = commutant_system(gens, d)
    flat = [{variables[i][0] * d + variables[i][1]: v for i, v in vec.items()} for vec in vecs]
    return Subspace(d * d, flat)


def commutant_matrices(gens, d=None):
    """Commutant basis as a list of matrices (cheaper than the Subspace form)."""
    d, variables, vecs = commutant_system(gens, d)
    mats = []
    for vec in vecs:
        data = {}
        for i, v in vec.items():
            a, b = variables[i]
            data.setdefault(a, {})[b] = v
        mats.append(GaussMat._wrap(d, d, data))
    return mats


def vector_to_matrix(vec, d):
    return GaussMat.from_flat(vec, d, d)


def independent_subset(mats):
    """Indices of a maximal linearly independent prefix-greedy subset."""
    ech = Echelon()
    keep = []
    for i, m in enumerate(mats):
        if ech.add(m.flatten()):
            keep.append(i)
    return keep


def center_dim(spanning_set, generators=None):
    """Dimension of the center of the algebra spanned by ``spanning_set``.

    An element ``Z = sum c_a S_a`` is central when it commutes with every
    element of ``generators`` (default: the spanning set itself).  Passing a
    smaller generating set of the same algebra gives the same answer faster.
    """
    mats = list(spanning_set)
    if not mats:
        return 0
    d = _square_dim(mats, None)
    gens = mats if generators is None else list(generators)
    _square_dim(gens, d)
    basis = [mats[i] for i in independent_subset(mats)]
    ech = Echelon(len(basis))
    for gi, g in enumerate(gens):
        eqs = {}
        for a, s in enumerate(basis):
            comm = s @ g - g @ s
            for r, row in comm.data.items():
                for c, v in row.items():
                    eqs.setdefault((r, c), {})[a] = v
        for key in sorted(eqs):
            ech.add(eqs[key])
        if ech.rank == len(basis):
            break
    return len(basis) - ech.rank
