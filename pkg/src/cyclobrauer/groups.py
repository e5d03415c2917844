"""Real forms Sp(2n, R) and SO(p, q): the maximal compact side of the story.

A context holds the standard representation V of the complexified group, the
invariant form, the Cartan involution ``xi``, a basis of the Lie algebra of K
and the invariant vector ``v1`` in V (x) V.  Everything is checked exactly when
the context is built.

Operators on V^{(x)k} index basis words ``(w_1, ..., w_k)`` by
``sum w_j d^(k-j)``, so slot 1 is the most significant digit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .coeffs import GaussRat, I, ONE, ZERO
from .errors import BadSpec, IndexOutOfRange, InvariantViolation, NotScalarMultiple
from .linalg import GaussMat

SP = "Sp"
SO = "SOpq"


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int | None = None
    p: int | None = None
    q: int | None = None

    def __post_init__(self):
        if self.family == SP:
            if not isinstance(self.n, int) or self.n < 1:
                raise BadSpec("Sp needs n >= 1")
        elif self.family == SO:
            p, q = self.p, self.q
            if not isinstance(p, int) or not isinstance(q, int):
                raise BadSpec("SOpq needs integers p and q")
            if q < 1:
                # the compact case has no noncompact part for xi to detect
                raise BadSpec("SOpq needs q >= 1")
            if p <= q:
                raise BadSpec("SOpq needs p > q")
            if (p + q) % 2 == 0:
                raise BadSpec("SOpq needs p + q odd")
        else:
            raise BadSpec("unknown family %r" % (self.family,))

    @classmethod
    def sp(cls, n):
        return cls(SP, n=n)

    @classmethod
    def so(cls, p, q):
        return cls(SO, p=p, q=q)

    @property
    def dim_v(self):
        return 2 * self.n if self.family == SP else self.p + self.q

    @property
    def rank(self):
        return self.n if self.family == SP else (self.p + self.q - 1) // 2

    def label(self):
        if self.family == SP:
            return "Sp(%d)" % self.n
        return "SO(%d,%d)" % (self.p, self.q)

    def params(self):
        if self.family == SP:
            return {"family": SP, "n": self.n}
        return {"family": SO, "p": self.p, "q": self.q}

    def stated_deltas(self):
        """Loop parameters as printed in the source theorems (for reporting)."""
        if self.family == SP:
            return -self.n, 0
        return (self.p + self.q) // 2, self.p - self.q


@dataclass(frozen=True, eq=False)
class GroupContext:
    spec: GroupSpec
    dim_v: int
    form: GaussMat
    xi: GaussMat
    lie_basis: tuple
    basis_change: GaussMat
    v1: dict
    weight_basis: GaussMat
    component_reps: tuple
    swap_sign: int
    contract_sign: int
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self):
        return self.spec.rank

    def cached(self, key, build):
        """Write-once memo for operators of this context."""
        val = self._cache.get(key)
        if val is None:
            val = build()
            val = self._cache.setdefault(key, val)
        return val

    def weight_inverse(self):
        return self.cached(("weight_inverse",), self.weight_basis.inverse)

    def lie_in_weight_basis(self):
        def build():
            P, Pi = self.weight_basis, self.weight_inverse()
            return tuple(Pi @ X @ P for X in self.lie_basis)
        return self.cached(("lie_weight",), build)

    def components_in_weight_basis(self):
        def build():
            P, Pi = self.weight_basis, self.weight_inverse()
            return tuple(Pi @ g @ P for g in self.component_reps)
        return self.cached(("comp_weight",), build)


def _unit(d, i, j, v=ONE):
    return GaussMat._wrap(d, d, {i: {j: GaussRat.coerce(v)}})


def _mat(d, entries):
    return GaussMat.from_entries(d, d, entries)


def _tensor2_apply(X, vec, d):
    """(X (x) 1 + 1 (x) X) applied to a vector on V (x) V."""
    out = {}
    for idx, val in vec.items():
        a, b = divmod(idx, d)
        for r, row in X.data.items():
            x = row.get(a)
            if x is not None:
                key = r * d + b
                out[key] = out.get(key, ZERO) + x * val
            x = row.get(b)
            if x is not None:
                key = a * d + r
                out[key] = out.get(key, ZERO) + x * val
    return {i: v for i, v in out.items() if v}


def _sp_data(n):
    d = 2 * n
    form = _mat(d, [(i, n + i, 1) for i in range(n)] + [(n + i, i, -1) for i in range(n)])
    xi = form.scale(I)
    lie = []
    for i in range(n):
        for j in range(i + 1, n):
            # A-slot: E_ij - E_ji in both diagonal blocks
            lie.append(_mat(d, [(i, j, 1), (j, i, -1), (n + i, n + j, 1), (n + j, n + i, -1)]))
    for i in range(n):
        for j in range(i, n):
            # B-slot: symmetric S in [[0, S], [-S, 0]]
            ent = [(i, n + j, 1), (n + i, j, -1)]
            if i != j:
                ent += [(j, n + i, 1), (n + j, i, -1)]
            lie.append(_mat(d, ent))
    v1 = {}
    for i in range(n):
        v1[i * d + n + i] = ONE
        v1[(n + i) * d + i] = -ONE
    change = _mat(d, [(i, i, 1) for i in range(n)] + [(n + i, i, 1) for i in range(n)]
                  + [(i, n + i, 1) for i in range(n)] + [(n + i, n + i, -1) for i in range(n)])
    # xi-eigenvectors: e_j - i e_{n+j} (xi = +1) then e_j + i e_{n+j} (xi = -1)
    weight = _mat(d, [(i, i, 1) for i in range(n)] + [(n + i, i, -I) for i in range(n)]
                  + [(i, n + i, 1) for i in range(n)] + [(n + i, n + i, I) for i in range(n)])
    return form, xi, lie, v1, change, weight, []


def _so_data(p, q):
    d = p + q
    eps = [1] * p + [-1] * q
    form = _mat(d, [(i, i, eps[i]) for i in range(d)])
    xi = form
    lie = []
    for lo, hi in ((0, p), (p, d)):
        for i in range(lo, hi):
            for j in range(i + 1, hi):
                lie.append(_mat(d, [(i, j, 1), (j, i, -1)]))
    v1 = {i * d + i: GaussRat(eps[i]) for i in range(d)}
    # light-cone pairs across the two blocks, remaining coordinates unchanged
    ent = []
    used = set()
    for i in range(1, q + 1):
        a, b = p - i, p + i - 1
        ent += [(a, 2 * (i - 1), 1), (b, 2 * (i - 1), 1), (a, 2 * i - 1, 1), (b, 2 * i - 1, -1)]
        used |= {a, b}
    col = 2 * q
    for c in range(d):
        if c not in used:
            ent.append((c, col, 1))
            col += 1
    change = _mat(d, ent)
    # weight vectors: e_a + i e_b, e_a - i e_b for consecutive pairs per block
    went = []
    comps = []
    for lo, hi in ((0, p), (p, d)):
        size = hi - lo
        for a in range(lo, hi - 1, 2):
            b = a + 1
            went += [(a, a, 1), (b, a, I), (a, b, 1), (b, b, -I)]
        if size % 2:
            went.append((hi - 1, hi - 1, 1))
            # -1 on an odd block has determinant -1
            comps.append(_mat(d, [(c, c, -1 if lo <= c < hi else 1) for c in range(d)]))
        else:
            # reflect the last coordinate of the block
            comps.append(_mat(d, [(c, c, -1 if c == hi - 1 else 1) for c in range(d)]))
    weight = _mat(d, went)
    return form, xi, lie, v1, change, weight, comps


def group_context(spec, xi=None):
    """Build and check a context; ``xi`` overrides the involution (testing aid)."""
    if spec.family == SP:
        form, xi0, lie, v1, change, weight, comps = _sp_data(spec.n)
        swap_sign, contract_sign = -1, -1
        lie_size = spec.n ** 2
    else:
        form, xi0, lie, v1, change, weight, comps = _so_data(spec.p, spec.q)
        swap_sign, contract_sign = 1, 1
        lie_size = spec.p * (spec.p - 1) // 2 + spec.q * (spec.q - 1) // 2
    if xi is None:
        xi = xi0
    d = spec.dim_v
    ctx = GroupContext(spec, d, form, xi, tuple(lie), change, v1, weight, tuple(comps),
                       swap_sign, contract_sign)
    _check_context(ctx, lie_size)
    return ctx


def _check_context(ctx, lie_size):
    d = ctx.dim_v
    ident = GaussMat.identity(d)
    xi, form = ctx.xi, ctx.form
    if len(ctx.lie_basis) != lie_size:
        raise InvariantViolation("lie_basis_size", "%d != %d" % (len(ctx.lie_basis), lie_size))
    if xi @ xi != ident:
        raise InvariantViolation("xi_involution")
    for X in ctx.lie_basis:
        if X @ xi != xi @ X:
            raise InvariantViolation("xi_commutes", repr(X.to_json()))
        if X.transpose() @ form + form @ X != GaussMat(d, d):
            raise InvariantViolation("form_invariant", repr(X.to_json()))
        if _tensor2_apply(X, ctx.v1, d):
            raise InvariantViolation("v1_invariant", repr(X.to_json()))
    for g in ctx.component_reps:
        if g.transpose() @ form @ g != form or g @ xi != xi @ g:
            raise InvariantViolation("component_rep")
        for X in ctx.lie_basis:
            # conjugation must preserve the Lie algebra; checked via the form
            Y = g @ X @ g.inverse()
            if Y.transpose() @ form + form @ Y != GaussMat(d, d) or Y @ xi != xi @ Y:
                raise InvariantViolation("component_normalizes")
    if not ctx.v1:
        raise InvariantViolation("v1_nonzero")
    try:
        Pi = ctx.weight_basis.inverse()
    except ZeroDivisionError:
        raise InvariantViolation("weight_basis_invertible") from None
    if not (Pi @ xi @ ctx.weight_basis).is_diagonal():
        raise InvariantViolation("weight_basis_xi")
    if ctx.spec.family == SP:
        n = ctx.spec.n
        F = ctx.basis_change
        for i in range(n):
            f = {r: F.get(r, i) for r in range(d) if F.get(r, i)}
            fp = {r: F.get(r, n + i) for r in range(d) if F.get(r, n + i)}
            if xi.apply(f) != {r: v * I for r, v in fp.items()}:
                raise InvariantViolation("xi_on_f_basis", "f_%d" % (i + 1))
            if xi.apply(fp) != {r: -v * I for r, v in f.items()}:
                raise InvariantViolation("xi_on_f_basis", "f'_%d" % (i + 1))


# --------------------------------------------------------------------------
# operators on tensor powers


def _words(d, k):
    return itertools.product(range(d), repeat=k)


def slot_operator(X, j, d, k):
    """``(X)_j``: X on tensor slot ``j`` (1-based), identity elsewhere."""
    if not 1 <= j <= k:
        raise IndexOutOfRange("slot %d outside 1..%d" % (j, k))
    step = d ** (k - j)
    cols = X.transpose().data
    data = {}
    for idx, w in enumerate(_words(d, k)):
        src = w[j - 1]
        for a, val in cols.get(src, {}).items():
            data.setdefault(idx + (a - src) * step, {})[idx] = val
    return GaussMat._wrap(d ** k, d ** k, data)


def pair_operator(M, j, d, k):
    """A ``d^2 x d^2`` operator acting on slots ``j, j+1``."""
    if not 1 <= j <= k - 1:
        raise IndexOutOfRange("slot pair (%d, %d) outside 1..%d" % (j, j + 1, k))
    s1, s2 = d ** (k - j), d ** (k - j - 1)
    cols = M.transpose().data
    data = {}
    for idx, w in enumerate(_words(d, k)):
        x, y = w[j - 1], w[j]
        for out, val in cols.get(x * d + y, {}).items():
            a, b = divmod(out, d)
            data.setdefault(idx + (a - x) * s1 + (b - y) * s2, {})[idx] = val
    return GaussMat._wrap(d ** k, d ** k, data)


def permutation_operator(perm, d, k, sign=ONE):
    """Output slot ``i`` receives input slot ``perm[i-1]``."""
    sign = GaussRat.coerce(sign)
    data = {}
    for idx, w in enumerate(_words(d, k)):
        u = 0
        for i in range(k):
            u = u * d + w[perm[i] - 1]
        data.setdefault(u, {})[idx] = sign
    return GaussMat._wrap(d ** k, d ** k, data)


def swap_matrix(d):
    return GaussMat.from_entries(d * d, d * d, [(b * d + a, a * d + b, 1)
                                                for a in range(d) for b in range(d)])


def contract_matrix(ctx):
    """``u (x) w -> c B(u, w) v1`` on V (x) V, with the context's sign ``c``."""
    d = ctx.dim_v
    beta = {a * d + b: v for a, row in ctx.form.data.items() for b, v in row.items()}
    c = GaussRat(ctx.contract_sign)
    data = {}
    for r, x in ctx.v1.items():
        data[r] = {col: c * x * y for col, y in beta.items()}
    return GaussMat._wrap(d * d, d * d, data)


def tensor_operator(kind, ctx, k, arg=None):
    """``swap``/``contract`` at (i, i+1), ``xi`` at slot i, or ``lie`` of a matrix."""
    d = ctx.dim_v
    if kind == "swap":
        return ctx.cached(("swap", k, arg), lambda: pair_operator(swap_matrix(d), arg, d, k))
    if kind == "contract":
        return ctx.cached(("contract", k, arg),
                          lambda: pair_operator(contract_matrix(ctx), arg, d, k))
    if kind == "xi":
        return ctx.cached(("xi", k, arg), lambda: slot_operator(ctx.xi, arg, d, k))
    if kind == "lie":
        return lie_operator(arg, d, k)
    raise ValueError("unknown operator kind %r" % kind)


def lie_operator(X, d, k):
    """``sum_j (X)_j`` on V^{(x)k}."""
    total = GaussMat(d ** k, d ** k)
    for j in range(1, k + 1):
        total = total + slot_operator(X, j, d, k)
    return total


def group_operator(g, d, k):
    """``g^{(x)k}``."""
    out = GaussMat.identity(1)
    for _ in range(k):
        out = out.kron(g)
    return out


def kron_power(P, k):
    return group_operator(P, P.rows, k)


# --------------------------------------------------------------------------
# loop parameters


def _scalar_multiple(A, B):
    """The scalar c with A = c B, or raise NotScalarMultiple."""
    if B.is_zero():
        raise NotScalarMultiple("reference operator is zero")
    r, row = next(iter(sorted(B.data.items())))
    col = min(row)
    c = A.get(r, col) / row[col]
    if A != B.scale(c):
        raise NotScalarMultiple("operator is not a multiple of the contraction")
    return c


def deltas_from(contract, xi_pair):
    """(delta0, delta1) from a contraction and ``xi (x) 1`` on V (x) V."""
    d0 = _scalar_multiple(contract @ contract, contract)
    d1 = _scalar_multiple(contract @ xi_pair @ contract, contract)
    for name, val in (("delta0", d0), ("delta1", d1)):
        if not val.is_real():
            raise NotScalarMultiple("%s = %s is not real" % (name, val))
    return d0, d1


def measure_deltas(ctx):
    def build():
        d = ctx.dim_v
        xi1 = ctx.xi.kron(GaussMat.identity(d))
        return deltas_from(contract_matrix(ctx), xi1)
    return ctx.cached(("deltas",), build)


def conjugated_deltas(ctx, P):
    """Recompute the loop parameters after the change of basis ``P``."""
    Pi = P.inverse()
    PP, PPi = P.kron(P), Pi.kron(Pi)
    d = ctx.dim_v
    contract = PPi @ contract_matrix(ctx) @ PP
    xi1 = (Pi @ ctx.xi @ P).kron(GaussMat.identity(d))
    return deltas_from(contract, xi1)
