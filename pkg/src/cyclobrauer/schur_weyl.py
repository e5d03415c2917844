"""The representation map from Br_{k,2} to End_K(V^{(x)k}) and the checks built on it."""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

from .algebra import AlgebraElement, RelationReport, check_relations
from .coeffs import ONE, specialize
from .diagrams import (
    count_diagrams,
    enumerate_diagrams,
    factor_marked,
    format_diagram,
    standard_factorization,
)
from .errors import ContextMismatch
from .groups import (
    GroupSpec,
    group_context,
    group_operator,
    kron_power,
    lie_operator,
    measure_deltas,
    permutation_operator,
    slot_operator,
    tensor_operator,
)
from .linalg import Echelon, GaussMat, center_dim, commutant_matrices


# --------------------------------------------------------------------------
# the map


def _perm_sign(perm):
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _perm_image(ctx, perm, k):
    sign = ctx.swap_sign ** (1 if _perm_sign(perm) < 0 else 0)
    return permutation_operator(perm, ctx.dim_v, k, sign)


def _marks_image(ctx, marks, k):
    out = GaussMat.identity(ctx.dim_v ** k)
    for i in sorted(marks):
        out = out @ tensor_operator("xi", ctx, k, i)
    return out


def phi_diagram(ctx, d):
    """Image of one basis diagram (m = 2) via its marked factorization."""
    k = d.k

    def build():
        top_marks, bare, bottom_marks = factor_marked(d)
        p_top, r, p_bot = standard_factorization(bare)
        out = _marks_image(ctx, top_marks, k) @ _perm_image(ctx, p_top, k)
        for j in range(r):
            out = out @ tensor_operator("contract", ctx, k, 2 * j + 1)
        out = out @ _perm_image(ctx, p_bot, k)
        return out @ _marks_image(ctx, bottom_marks, k)
    return ctx.cached(("phi", d), build)


def delta_assignment(ctx):
    d0, d1 = measure_deltas(ctx)
    return {0: d0, 1: d1}


def phi(x, ctx, k):
    """Linear extension of the diagram images, deltas set to the measured values."""
    if x.m != 2 or x.k != k:
        raise ContextMismatch("phi needs an element of Br_{%d,2}, got k=%d, m=%d" % (k, x.k, x.m))
    assign = delta_assignment(ctx)
    out = GaussMat(ctx.dim_v ** k, ctx.dim_v ** k)
    for d, c in x.sorted_terms():
        out = out + phi_diagram(ctx, d).scale(specialize(c, assign))
    return out


def generator_image(ctx, kind, i, k):
    if kind == "t":
        return tensor_operator("swap", ctx, k, i).scale(ctx.swap_sign)
    if kind == "e":
        return tensor_operator("contract", ctx, k, i)
    if kind == "theta":
        return tensor_operator("xi", ctx, k, i)
    raise ValueError("unknown generator kind %r" % kind)


def generator_images(ctx, k):
    gens = [generator_image(ctx, kind, i, k) for kind in ("t", "e") for i in range(1, k)]
    gens += [generator_image(ctx, "theta", i, k) for i in range(1, k + 1)]
    return gens


class _MatDiff(NamedTuple):
    mat: GaussMat

    def to_json(self):
        return {"nonzero_entries": self.mat.nnz()}


def verify_phi(ctx, k):
    """Relations of Br_{k,2} checked on matrices, plus multiplicativity for k <= 2."""
    assign = delta_assignment(ctx)
    size = ctx.dim_v ** k

    def evaluate(side):
        total = GaussMat(size, size)
        for coeff, word in side:
            x = GaussMat.identity(size)
            for kind, i in word:
                x = x @ generator_image(ctx, kind, i, k)
            total = total + x.scale(specialize(coeff, assign))
        return _Val(total)

    reports = check_relations(k, 2, evaluate, lambda diff: diff.mat.is_zero())
    reports = [r._replace(failures=[(p, _MatDiff(v.mat)) for p, v in r.failures]) for r in reports]
    if k <= 2:
        basis = enumerate_diagrams(k, 2)
        n = 0
        failures = []
        for a in basis:
            for b in basis:
                n += 1
                x = AlgebraElement.from_diagram(a) * AlgebraElement.from_diagram(b)
                diff = phi(x, ctx, k) - phi_diagram(ctx, a) @ phi_diagram(ctx, b)
                if not diff.is_zero():
                    failures.append(((format_diagram(a), format_diagram(b)), _MatDiff(diff)))
        reports.append(RelationReport("homomorphism_pairs", n, failures))
    return reports


class _Val(NamedTuple):
    mat: GaussMat

    def __sub__(self, other):
        return _Val(self.mat - other.mat)


# --------------------------------------------------------------------------
# faithfulness and the commutant


def expected_dim(k):
    return math.factorial(2 * k) // math.factorial(k)


def _image_echelon(ctx, k):
    def build():
        ech = Echelon()
        for d in enumerate_diagrams(k, 2):
            ech.add(phi_diagram(ctx, d).flatten())
        return ech
    return ctx.cached(("image_echelon", k), build)


def phi_faithful(ctx, k):
    r = _image_echelon(ctx, k).rank
    exp = expected_dim(k)
    return {"rank": r, "expected": exp, "injective": r == exp}


def k_generators(ctx, k, weight=True, components=True):
    """Operators whose commutant is End_K(V^{(x)k})."""
    d = ctx.dim_v
    if weight:
        lie, comps = ctx.lie_in_weight_basis(), ctx.components_in_weight_basis()
    else:
        lie, comps = ctx.lie_basis, ctx.component_reps
    gens = [lie_operator(X, d, k) for X in lie]
    if components:
        gens += [group_operator(g, d, k) for g in comps]
    return gens


def commutant_in_weight_basis(ctx, k):
    """Basis matrices of End_K(V^{(x)k}) written in the weight basis."""
    def build():
        return commutant_matrices(k_generators(ctx, k), ctx.dim_v ** k)
    return ctx.cached(("commutant", k), build)


def commutant_check(ctx, k):
    comm = commutant_in_weight_basis(ctx, k)
    image_dim = phi_faithful(ctx, k)["rank"]
    gens = k_generators(ctx, k, weight=False)
    contained = True
    first_bad = None
    for d in enumerate_diagrams(k, 2):
        img = phi_diagram(ctx, d)
        for g in gens:
            if img @ g != g @ img:
                contained = False
                first_bad = format_diagram(d)
                break
        if not contained:
            break
    out = {"commutant_dim": len(comm), "image_dim": image_dim,
           "image_in_commutant": contained,
           "equal": contained and image_dim == len(comm),
           "expected": expected_dim(k)}
    if first_bad is not None:
        out["first_noncommuting_diagram"] = first_bad
    if ctx.component_reps and k <= 2:
        # the identity component alone has a larger commutant
        out["identity_component_commutant_dim"] = len(
            commutant_matrices(k_generators(ctx, k, components=False), ctx.dim_v ** k))
    return out


# --------------------------------------------------------------------------
# the symplectic block decomposition


class SectorReport(NamedTuple):
    k: int
    sectors: list
    off_block_zero: bool
    total_dim: int
    cross_check: dict

    def to_json(self):
        return {"k": self.k, "sectors": self.sectors, "off_block_zero": self.off_block_zero,
                "total_dim": self.total_dim, "cross_check": self.cross_check}


def _sector_of(idx, n, k):
    """Number of tensor slots carrying a xi = +1 weight vector."""
    d = 2 * n
    s = 0
    for _ in range(k):
        idx, r = divmod(idx, d)
        if r < n:
            s += 1
    return s


def _sector_dims(mats, n, k):
    size = (2 * n) ** k
    sec = [_sector_of(i, n, k) for i in range(size)]
    off_zero = True
    per = {s: Echelon() for s in range(k + 1)}
    for M in mats:
        parts = {s: {} for s in range(k + 1)}
        for r, row in M.data.items():
            for c, v in row.items():
                if sec[r] != sec[c]:
                    off_zero = False
                else:
                    parts[sec[r]][r * size + c] = v
        for s, vec in parts.items():
            per[s].add(vec)
    return off_zero, [per[s].rank for s in range(k + 1)]


def decompose_sp(n, k):
    """Split End_K(V^{(x)k}) for Sp(2n) by the number s of xi = +1 slots.

    The commutant basis (computed in the xi-eigenbasis) is the primary route;
    the images of all diagrams, conjugated into the same basis, are the cross
    check.
    """
    ctx = group_context(GroupSpec.sp(n))
    comm = commutant_in_weight_basis(ctx, k)
    off_zero, dims = _sector_dims(comm, n, k)
    P = kron_power(ctx.weight_basis, k)
    Pi = kron_power(ctx.weight_inverse(), k)
    images = [Pi @ phi_diagram(ctx, d) @ P for d in enumerate_diagrams(k, 2)]
    img_zero, img_dims = _sector_dims(images, n, k)
    sectors = []
    for s in range(k + 1):
        c = math.comb(k, s)
        sectors.append({"s": s, "multiplicity": c, "block_dim": dims[s],
                        "expected": c * c * math.factorial(k)})
    return SectorReport(k, sectors, off_zero, sum(dims),
                        {"image_off_block_zero": img_zero, "image_block_dims": img_dims,
                         "agree": img_zero and img_dims == dims})


def sector_identity(k):
    return sum(math.comb(k, s) ** 2 * math.factorial(k) for s in range(k + 1)) == expected_dim(k)


# --------------------------------------------------------------------------
# K-types


def count_ktypes(ctx, k):
    return ktype_report(ctx, k)["count"]


def ktype_report(ctx, k):
    """Blocks of End_K(V^{(x)k}) counted as the dimension of its center.

    When the diagram images span the commutant, the generator images
    generate it as an algebra, so commuting with them is enough.
    """
    comm = commutant_in_weight_basis(ctx, k)
    check = commutant_check(ctx, k)
    if check["equal"]:
        P = kron_power(ctx.weight_basis, k)
        Pi = kron_power(ctx.weight_inverse(), k)
        gens = [Pi @ g @ P for g in generator_images(ctx, k)]
        method = "generator_images"
    else:
        gens = None
        method = "full_spanning_set"
    return {"count": center_dim(comm, gens), "method": method,
            "bipartitions": count_bipartitions(k)}


@lru_cache(maxsize=None)
def partition_count(n):
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return table[n]


def count_bipartitions(k):
    total = 0
    for l in range(k // 2 + 1):
        r = k - 2 * l
        total += sum(partition_count(a) * partition_count(r - a) for a in range(r + 1))
    return total


# --------------------------------------------------------------------------
# counting identities and the walled Brauer centralizer


def so_dimension_identity(k):
    lhs = 0
    for s in range(k + 1):
        for t in range(k + 1):
            if (s + t) % 2:
                continue
            h = (s + t) // 2
            lhs += math.comb(k, s) * math.comb(k, t) * count_diagrams(h, 1) * count_diagrams(k - h, 1)
    rhs = expected_dim(k)
    return {"lhs": lhs, "rhs": rhs, "equal": lhs == rhs}


def _mixed_operator(X, n, s, t):
    """gl_n element acting on V^{(x)s} (x) (V*)^{(x)t}."""
    dual = X.transpose().scale(-1)
    k = s + t
    total = GaussMat(n ** k, n ** k)
    for j in range(1, k + 1):
        total = total + slot_operator(X if j <= s else dual, j, n, k)
    return total


def walled_centralizer_check(n, s, t):
    gens = []
    for i in range(n):
        for j in range(n):
            E = GaussMat._wrap(n, n, {i: {j: ONE}})
            gens.append(_mixed_operator(E, n, s, t))
    dim = len(commutant_matrices(gens, n ** (s + t)))
    exp = math.factorial(s + t)
    return {"commutant_dim": dim, "expected": exp, "equal": dim == exp}


__all__ = [
    "phi", "phi_diagram", "verify_phi", "phi_faithful", "commutant_check", "decompose_sp",
    "count_ktypes", "ktype_report", "count_bipartitions", "so_dimension_identity",
    "walled_centralizer_check", "SectorReport", "generator_images", "expected_dim",
    "sector_identity",
]
