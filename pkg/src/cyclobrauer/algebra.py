"""Elements of the cyclotomic Brauer algebra and checks of its presentation."""

from __future__ import annotations

import itertools
from typing import NamedTuple

from .coeffs import DeltaPoly, delta_monomial
from .diagrams import (
    canonicalize,
    compose,
    count_diagrams,
    enumerate_diagrams,
    format_diagram,
    identity,
    is_walled,
    parse_diagram,
    permutation_diagram,
    bottom,
    top,
)
from .errors import ContextMismatch, IndexOutOfRange, ParseError


class AlgebraElement:
    """Finite combination of canonical diagrams with DeltaPoly coefficients."""

    __slots__ = ("k", "m", "terms")

    def __init__(self, k, m, terms=None):
        self.k = k
        self.m = m
        clean = {}
        for d, c in (terms or {}).items():
            if d.k != k or d.m != m:
                raise ContextMismatch("diagram with k=%d,m=%d in an element of k=%d,m=%d"
                                      % (d.k, d.m, k, m))
            if not isinstance(c, DeltaPoly):
                c = DeltaPoly.constant(m, c)
            if c:
                clean[d] = c
        self.terms = clean

    @classmethod
    def from_diagram(cls, d, coeff=1):
        return cls(d.k, d.m, {d: coeff})

    @classmethod
    def one(cls, k, m):
        return cls.from_diagram(identity(k, m))

    @classmethod
    def zero(cls, k, m):
        return cls(k, m)

    def _check(self, other):
        if (self.k, self.m) != (other.k, other.m):
            raise ContextMismatch("elements of Br_{%d,%d} and Br_{%d,%d}"
                                  % (self.k, self.m, other.k, other.m))

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            s = out[d] + c if d in out else c
            if s:
                out[d] = s
            else:
                out.pop(d, None)
        return _elem(self.k, self.m, out)

    def __neg__(self):
        return _elem(self.k, self.m, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not isinstance(c, DeltaPoly):
            c = DeltaPoly.constant(self.m, c)
        return AlgebraElement(self.k, self.m, {d: v * c for d, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        self._check(other)
        out = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                loops, d = compose(d1, d2)
                c = c1 * c2
                if loops:
                    c = c * delta_monomial(loops, self.m)
                s = out[d] + c if d in out else c
                if s:
                    out[d] = s
                else:
                    out.pop(d, None)
        return _elem(self.k, self.m, out)

    def __pow__(self, e):
        result = AlgebraElement.one(self.k, self.m)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.k, self.m) == (other.k, other.m) and self.terms == other.terms

    __hash__ = None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0])

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for d, c in self.sorted_terms():
            parts.append("(%s)*[%s]" % (c, format_diagram(d)))
        return " + ".join(parts)

    def __repr__(self):
        return "AlgebraElement(k=%d, m=%d, %s)" % (self.k, self.m, self)

    def to_json(self):
        return {"k": self.k, "m": self.m,
                "terms": [{"diagram": format_diagram(d), "coeff": c.to_json()}
                          for d, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, obj):
        try:
            k, m = obj["k"], obj["m"]
            terms = {}
            for t in obj["terms"]:
                d = parse_diagram(t["diagram"], m=m, k=k)
                c = DeltaPoly.from_json(m, t["coeff"])
                terms[d] = terms[d] + c if d in terms else c
        except (KeyError, TypeError) as exc:
            raise ParseError("bad element JSON: %s" % exc) from exc
        return cls(k, m, terms)


def _elem(k, m, terms):
    x = object.__new__(AlgebraElement)
    x.k, x.m, x.terms = k, m, terms
    return x


def elem_arith(op, x, y):
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "scale":
        return x.scale(y)
    raise ValueError("unknown op %r" % op)


def generator(kind, i, k, m):
    """``t``/``e`` at (i, i+1) or ``theta`` on strand i."""
    if kind in ("t", "e"):
        if not 1 <= i <= k - 1:
            raise IndexOutOfRange("%s_%d needs 1 <= i <= k-1 (k=%d)" % (kind, i, k))
        edges = [(top(j), bottom(j), 0) for j in range(1, k + 1) if j not in (i, i + 1)]
        if kind == "t":
            edges += [(top(i), bottom(i + 1), 0), (top(i + 1), bottom(i), 0)]
        else:
            edges += [(top(i), top(i + 1), 0), (bottom(i), bottom(i + 1), 0)]
        return AlgebraElement.from_diagram(canonicalize(edges, k, m))
    if kind == "theta":
        if not 1 <= i <= k:
            raise IndexOutOfRange("theta_%d needs 1 <= i <= k (k=%d)" % (i, k))
        edges = [(top(j), bottom(j), 1 % m if j == i else 0) for j in range(1, k + 1)]
        return AlgebraElement.from_diagram(canonicalize(edges, k, m))
    raise ValueError("unknown generator kind %r" % kind)


# --------------------------------------------------------------------------
# relation checks


class RelationReport(NamedTuple):
    relation_id: str
    instances_checked: int
    failures: list
    informational: bool = False

    @property
    def passed(self):
        return not self.failures

    def to_json(self):
        return {"relation_id": self.relation_id,
                "instances_checked": self.instances_checked,
                "passed": self.passed,
                "informational": self.informational,
                "failures": [{"instance": inst, "difference": diff.to_json()}
                             for inst, diff in self.failures]}


def _delta(m, l):
    return DeltaPoly.var(m, min(l % m, (-l) % m))


# A word is a tuple of generator factors ("t", i), ("e", i), ("theta", i); a
# side of a relation is a list of (coefficient, word) terms.


def _w(*factors):
    out = []
    for f in factors:
        if len(f) == 3:  # ("theta", i, power)
            out.extend([("theta", f[1])] * f[2])
        else:
            out.append(f)
    return tuple(out)


def relation_instances(k, m):
    """Yield ``(relation_id, params, lhs, rhs, informational)`` for the presentation.

    Relation ids:
      sym_*            Coxeter relations of the t's
      e_square, t_e_absorb, t_conj_e, t_e_commute, e_e_commute
                       the Brauer relations (delta = delta_0)
      e_e_e, e_t_e     e_i e_{i+-1} e_i = e_i and e_i t_{i+-1} e_i = e_i
      theta_*          cyclotomic relations (m >= 2)
      rel1 .. rel6     the m = 2 relations used for the representation map
    """
    one = DeltaPoly.constant(m, 1)
    d0 = _delta(m, 0)
    idx = range(1, k)
    strands = range(1, k + 1)
    T = lambda i: ("t", i)  # noqa: E731
    E = lambda i: ("e", i)  # noqa: E731
    H = lambda i, p=1: ("theta", i, p)  # noqa: E731

    def rel(rid, params, lhs, rhs, coeff=one, info=False):
        return rid, params, [(one, lhs)], [(coeff, rhs)], info

    for i in idx:
        yield rel("sym_involution", (i,), _w(T(i), T(i)), ())
    for i in range(1, k - 1):
        yield rel("sym_braid", (i,), _w(T(i), T(i + 1), T(i)), _w(T(i + 1), T(i), T(i + 1)))
    far = [(i, j) for i in idx for j in idx if j - i >= 2]
    far_all = [(i, j) for i in idx for j in idx if abs(i - j) >= 2]
    adj = [(i, j) for i in idx for j in idx if abs(i - j) == 1]
    for i, j in far:
        yield rel("sym_commute", (i, j), _w(T(i), T(j)), _w(T(j), T(i)))
    for i in idx:
        yield rel("e_square", (i,), _w(E(i), E(i)), _w(E(i)), d0)
    for i in idx:
        yield rel("t_e_absorb", (i, "left"), _w(T(i), E(i)), _w(E(i)))
        yield rel("t_e_absorb", (i, "right"), _w(E(i), T(i)), _w(E(i)))
    for i in range(1, k - 1):
        yield rel("t_conj_e", (i,), _w(T(i), T(i + 1), E(i), T(i + 1), T(i)), _w(E(i + 1)))
    for i, j in far_all:
        yield rel("t_e_commute", (i, j), _w(T(i), E(j)), _w(E(j), T(i)))
    for i, j in far:
        yield rel("e_e_commute", (i, j), _w(E(i), E(j)), _w(E(j), E(i)))
    for i, j in adj:
        yield rel("e_e_e", (i, j), _w(E(i), E(j), E(i)), _w(E(i)))
    for i, j in adj:
        yield rel("e_t_e", (i, j), _w(E(i), T(j), E(i)), _w(E(i)))

    if m >= 2:
        ls = range(1, m)
        for i in strands:
            yield rel("theta_order", (i,), _w(H(i, m)), ())
        for i in strands:
            for j in strands:
                if i < j:
                    yield rel("theta_commute", (i, j), _w(H(i), H(j)), _w(H(j), H(i)))
        for i in idx:
            yield rel("t_theta_conj", (i,), _w(T(i), H(i), T(i)), _w(H(i + 1)))
        for i in strands:
            for j in idx:
                if j not in (i, i - 1):
                    yield rel("t_theta_commute", (i, j), _w(H(i), T(j)), _w(T(j), H(i)))
        for i in idx:
            for l in ls:
                yield rel("e_theta_e", (i, l), _w(E(i), H(i, l), E(i)), _w(E(i)), _delta(m, l))
        # a mark carried across a cap changes orientation, so theta_i^l and
        # theta_{i+1}^l cancel on it
        for i in idx:
            for l in ls:
                yield rel("theta_pair_e", (i, l, "left"), _w(H(i, l), H(i + 1, l), E(i)), _w(E(i)))
                yield rel("theta_pair_e", (i, l, "right"), _w(E(i), H(i, l), H(i + 1, l)), _w(E(i)))
        for i in idx:
            for l in ls:
                yield rel("theta_pair_e_literal", (i, l, "left"),
                          _w(H(i, l), H(i + 1, m - l), E(i)), _w(E(i)), info=True)
                yield rel("theta_pair_e_literal", (i, l, "right"),
                          _w(E(i), H(i, l), H(i + 1, m - l)), _w(E(i)), info=True)
        for i in strands:
            for j in idx:
                if j not in (i, i - 1):
                    yield rel("theta_e_commute", (i, j), _w(H(i), E(j)), _w(E(j), H(i)))

    if m == 2:
        d1 = _delta(m, 1)
        for i in strands:
            yield rel("rel1", (i,), _w(H(i), H(i)), ())
        for i in idx:
            yield rel("rel2", (i,), _w(T(i), H(i), T(i)), _w(H(i + 1)))
        for i in range(2, k + 1):
            yield rel("rel3", (i,), _w(E(i - 1), H(i), E(i - 1)), _w(E(i - 1)), d1)
        for i in idx:
            yield rel("rel4", (i, "left"), _w(H(i), H(i + 1), E(i)), _w(E(i)))
            yield rel("rel4", (i, "right"), _w(E(i), H(i), H(i + 1)), _w(E(i)))
        for i in strands:
            for j in idx:
                if j not in (i, i - 1):
                    yield rel("rel5", (i, j), _w(H(i), E(j)), _w(E(j), H(i)))
        for i in strands:
            for j in idx:
                if j not in (i, i - 1):
                    yield rel("rel6", (i, j), _w(H(i), T(j)), _w(T(j), H(i)))


def check_relations(k, m, evaluate, difference_is_zero):
    """Group relation instances into reports using a pluggable evaluator.

    ``evaluate(side)`` turns a list of (coefficient, word) terms into an
    object supporting subtraction; ``difference_is_zero`` tests the result.
    """
    order = []
    grouped = {}
    for rid, params, lhs, rhs, info in relation_instances(k, m):
        if rid not in grouped:
            order.append(rid)
            grouped[rid] = [0, [], info]
        slot = grouped[rid]
        slot[0] += 1
        diff = evaluate(lhs) - evaluate(rhs)
        if not difference_is_zero(diff):
            slot[1].append((params, diff))
    return [RelationReport(rid, *grouped[rid]) for rid in order]


def _diagram_checks(rid, instances):
    n = 0
    failures = []
    for params, lhs, rhs in instances:
        n += 1
        diff = lhs - rhs
        if not diff.is_zero():
            failures.append((params, diff))
    return RelationReport(rid, n, failures)


def verify_presentation(k, m):
    """Check the defining relations symbolically; failures are returned as data.

    Besides the word relations of :func:`relation_instances` this adds
      brauer_subalgebra  unlabeled diagrams close up with delta_0 loops only
      wreath_product     through-strand diagrams multiply like S_k x| (Z/m)^k
    """
    gens = {}

    def evaluate(side):
        total = AlgebraElement.zero(k, m)
        for coeff, word in side:
            x = AlgebraElement.one(k, m)
            for f in word:
                if f not in gens:
                    gens[f] = generator(f[0], f[1], k, m)
                x = x * gens[f]
            total = total + x.scale(coeff)
        return total

    reports = check_relations(k, m, evaluate, lambda d: d.is_zero())
    reports.append(_diagram_checks("brauer_subalgebra", _brauer_closure(k, m)))
    reports.append(_diagram_checks("wreath_product", _wreath_instances(k, m)))
    return reports


def _brauer_closure(k, m):
    """Unlabeled diagrams multiply among themselves with delta_0 loops only."""
    bare = [d.with_modulus(m) for d in enumerate_diagrams(k, 1)]
    gens = [generator(kind, i, k, m) for kind in ("t", "e") for i in range(1, k)]
    gens = [next(iter(x.terms)) for x in gens]
    for d in bare:
        for s in gens:
            loops, prod = compose(d, s)
            ok = all(l == 0 for l in loops) and all(lab == 0 for lab in prod.labels())
            lhs = AlgebraElement.from_diagram(prod, delta_monomial(loops, m))
            rhs = lhs if ok else AlgebraElement.zero(k, m)
            yield (format_diagram(d), format_diagram(s)), lhs, rhs


def wreath_mul(a, b):
    """Product in S_k x| (Z/m)^k of pairs (perm, colors), ``a`` applied on top.

    ``perm[i]`` is the bottom index (0-based) reached from top ``i``.
    """
    (pa, ca), (pb, cb), m = a[:2], b[:2], a[2]
    perm = tuple(pb[pa[i]] for i in range(len(pa)))
    colors = tuple((ca[i] + cb[pa[i]]) % m for i in range(len(pa)))
    return perm, colors, m


def wreath_to_diagram(x, k):
    perm, colors, m = x
    return permutation_diagram([p + 1 for p in perm], m=m, labels=list(colors))


def _wreath_instances(k, m):
    """Check the through-strand diagrams realize the wreath product.

    The map (perm, colors) -> diagram must be a bijection onto the
    through-strand diagrams, send the unit to the identity, and be
    multiplicative against every generator; by associativity that makes it
    multiplicative everywhere.
    """
    group = [(p, c, m) for p in itertools.permutations(range(k))
             for c in itertools.product(range(m), repeat=k)]
    image = {wreath_to_diagram(x, k) for x in group}
    through = {d for d in enumerate_diagrams(k, m) if d.is_permutation()} if k <= 4 else image
    one = AlgebraElement.one(k, m)
    ok = len(image) == len(group) == len(through) and image == through
    yield ("bijection",), one, (one if ok else AlgebraElement.zero(k, m))
    unit = (tuple(range(k)), (0,) * k, m)
    yield ("unit",), AlgebraElement.from_diagram(wreath_to_diagram(unit, k)), one
    gens = []
    for i in range(k - 1):
        p = list(range(k))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append((tuple(p), (0,) * k, m))
    for i in range(k):
        gens.append((tuple(range(k)), tuple(1 % m if j == i else 0 for j in range(k)), m))
    for x in group:
        dx = wreath_to_diagram(x, k)
        for s in gens:
            loops, prod = compose(dx, wreath_to_diagram(s, k))
            lhs = AlgebraElement.from_diagram(prod, delta_monomial(loops, m))
            rhs = AlgebraElement.from_diagram(wreath_to_diagram(wreath_mul(x, s), k))
            yield (format_diagram(dx), format_diagram(wreath_to_diagram(s, k))), lhs, rhs


# --------------------------------------------------------------------------
# walled Brauer


def walled_basis(s, t):
    """Diagrams of Br_{s+t} respecting the wall after position ``s``."""
    return [d for d in enumerate_diagrams(s + t, 1) if is_walled(d, s)]


def walled_closure(s, t):
    """True when every product of two walled diagrams is again walled."""
    basis = walled_basis(s, t)
    members = set(basis)
    for a in basis:
        for b in basis:
            loops, d = compose(a, b)
            if d not in members:
                return False
    return True


def is_presentation_ok(reports):
    return all(r.passed for r in reports if not r.informational)


__all__ = [
    "AlgebraElement", "RelationReport", "elem_arith", "generator", "verify_presentation",
    "walled_basis", "walled_closure", "wreath_mul", "wreath_to_diagram", "count_diagrams",
    "is_presentation_ok",
]
