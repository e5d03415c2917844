"""Labeled, directed Brauer diagrams.

A diagram on ``k`` top and ``k`` bottom vertices is a perfect matching whose
edges carry a direction and a label mod ``m``.  Reversing an edge and
negating its label gives an equivalent diagram; the canonical representative
points every edge from the smaller to the larger endpoint in the order

    t1 < t2 < ... < tk < b1 < ... < bk

and lists the edges sorted.  Plain Brauer diagrams are the ``m == 1`` case.

Composition ``compose(a, b)`` stacks ``a`` on top of ``b``.  When diagrams act
on tensor space the bottom row is the input and the top row the output, so
``compose(a, b)`` corresponds to the operator product ``a @ b``.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from typing import NamedTuple

from .errors import BadLabel, BadModulus, NotAMatching, ParseError, SizeMismatch

TOP = 0
BOTTOM = 1


class Vertex(NamedTuple):
    row: int
    index: int

    def __str__(self):
        return "%s%d" % ("tb"[self.row], self.index)


def top(i):
    return Vertex(TOP, i)


def bottom(i):
    return Vertex(BOTTOM, i)


class LabeledDiagram:
    """Canonical labeled diagram.  Build through :func:`canonicalize`."""

    __slots__ = ("k", "m", "edges", "_partner", "_hash")

    def __init__(self, k, m, edges):
        # trusted constructor: ``edges`` is already canonical
        self.k = k
        self.m = m
        self.edges = edges
        self._partner = None
        self._hash = hash((k, m, edges))

    def __eq__(self, other):
        return (isinstance(other, LabeledDiagram) and self.k == other.k
                and self.m == other.m and self.edges == other.edges)

    def __lt__(self, other):
        return (self.k, self.m, self.edges) < (other.k, other.m, other.edges)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "LabeledDiagram(k=%d, m=%d, %r)" % (self.k, self.m, format_diagram(self))

    def partner_map(self):
        """vertex -> (partner, label read when walking towards the partner)."""
        if self._partner is None:
            pm = {}
            for u, v, lab in self.edges:
                pm[u] = (v, lab)
                pm[v] = (u, (-lab) % self.m)
            self._partner = pm
        return self._partner

    def through_strands(self):
        return [(u, v, lab) for u, v, lab in self.edges if u.row == TOP and v.row == BOTTOM]

    def is_permutation(self):
        return len(self.through_strands()) == self.k

    def labels(self):
        return [lab for _, _, lab in self.edges]

    def forget_labels(self):
        return LabeledDiagram(self.k, 1, tuple((u, v, 0) for u, v, _ in self.edges))

    def with_modulus(self, m):
        """Same matching read in ``Br_{k,m}``; labels must already fit."""
        for _, _, lab in self.edges:
            if lab >= m:
                raise BadLabel("label %d does not fit modulus %d" % (lab, m))
        return LabeledDiagram(self.k, m, self.edges)

    def __str__(self):
        return format_diagram(self)


BrauerDiagram = LabeledDiagram  # a Brauer diagram is the m == 1 case


class CompositionResult(NamedTuple):
    loops: tuple
    diagram: LabeledDiagram


class UnevenDiagram(NamedTuple):
    s: int
    t: int
    edges: tuple


class MarkedFactorization(NamedTuple):
    top_marks: frozenset
    bare: LabeledDiagram
    bottom_marks: frozenset


# --------------------------------------------------------------------------
# canonical form


def _vertex_ok(v, k):
    return v.row in (TOP, BOTTOM) and 1 <= v.index <= k


def canonicalize(raw_edges, k, m):
    """Canonical representative of a raw list of ``(u, v, label)`` edges."""
    if m < 1:
        raise BadModulus("modulus must be positive, got %r" % m)
    deg = Counter()
    out = []
    for u, v, lab in raw_edges:
        u, v = Vertex(*u), Vertex(*v)
        if not isinstance(lab, int) or not 0 <= lab < m:
            raise BadLabel("label %r outside 0..%d" % (lab, m - 1))
        for w in (u, v):
            if not _vertex_ok(w, k):
                raise NotAMatching("vertex %s outside a k=%d diagram" % (w, k))
            deg[w] += 1
        if u > v:
            u, v, lab = v, u, (-lab) % m
        out.append((u, v, lab))
    bad = [str(w) for w, c in deg.items() if c != 1]
    missing = 2 * k - len(deg)
    if bad or missing:
        raise NotAMatching("not a perfect matching (repeated: %s, uncovered: %d)"
                           % (",".join(sorted(bad)) or "-", missing))
    return LabeledDiagram(k, m, tuple(sorted(out)))


def identity(k, m=1):
    return LabeledDiagram(k, m, tuple((top(i), bottom(i), 0) for i in range(1, k + 1)))


def from_pairs(k, pairs, m=1):
    """Unlabeled diagram from a list of vertex pairs."""
    return canonicalize([(u, v, 0) for u, v in pairs], k, m)


def permutation_diagram(perm, m=1, labels=None):
    """Top vertex ``i`` joined to bottom vertex ``perm[i-1]``."""
    k = len(perm)
    labels = labels or [0] * k
    return canonicalize([(top(i + 1), bottom(p), labels[i]) for i, p in enumerate(perm)], k, m)


# --------------------------------------------------------------------------
# composition


def compose(a, b):
    """Stack ``a`` above ``b`` and read off the loops and the result."""
    if a.k != b.k or a.m != b.m:
        raise SizeMismatch("cannot compose k=%d,m=%d with k=%d,m=%d" % (a.k, a.m, b.k, b.m))
    k, m = a.k, a.m
    pa, pb = a.partner_map(), b.partner_map()
    # a-vertices on row BOTTOM and b-vertices on row TOP are the glued middle row
    seen_mid = set()
    raw = []

    def walk(side, v, label):
        # leave vertex v of diagram `side` along its edge until an outer vertex
        while True:
            pm = pa if side == 0 else pb
            w, lab = pm[v]
            label += lab
            if side == 0 and w.row == TOP:
                return Vertex(TOP, w.index), label
            if side == 1 and w.row == BOTTOM:
                return Vertex(BOTTOM, w.index), label
            seen_mid.add(w.index)
            if side == 0:
                side, v = 1, Vertex(TOP, w.index)
            else:
                side, v = 0, Vertex(BOTTOM, w.index)

    done = set()
    for start_side, row in ((0, TOP), (1, BOTTOM)):
        for i in range(1, k + 1):
            start = Vertex(row, i)
            if start in done:
                continue
            end, label = walk(start_side, start, 0)
            done.add(start)
            done.add(end)
            raw.append((start, end, label % m))

    loops = []
    for j in range(1, k + 1):
        if j in seen_mid:
            continue
        # closed loop through middle vertex j: start in a's bottom row
        label = 0
        side, v = 0, Vertex(BOTTOM, j)
        seen_mid.add(j)
        while True:
            pm = pa if side == 0 else pb
            w, lab = pm[v]
            label += lab
            seen_mid.add(w.index)
            if side == 0:
                side, v = 1, Vertex(TOP, w.index)
            else:
                side, v = 0, Vertex(BOTTOM, w.index)
            if side == 0 and v.index == j:
                break
        label %= m
        loops.append(min(label, m - label) if label else 0)
    return CompositionResult(tuple(sorted(loops)), canonicalize(raw, k, m))


# --------------------------------------------------------------------------
# enumeration and counting


def _matchings(vertices):
    if not vertices:
        yield []
        return
    first, rest = vertices[0], vertices[1:]
    for i, other in enumerate(rest):
        for tail in _matchings(rest[:i] + rest[i + 1:]):
            yield [(first, other)] + tail


def _all_vertices(k):
    return [top(i) for i in range(1, k + 1)] + [bottom(i) for i in range(1, k + 1)]


def enumerate_diagrams(k, m=1):
    """All canonical diagrams of ``Br_{k,m}``, sorted by canonical edge list."""
    if k < 0 or m < 1:
        raise ValueError("need k >= 0 and m >= 1")
    out = []
    for matching in _matchings(_all_vertices(k)):
        for labels in itertools.product(range(m), repeat=k):
            out.append(LabeledDiagram(k, m, tuple((u, v, lab) for (u, v), lab in zip(matching, labels))))
    out.sort(key=lambda d: d.edges)
    return out


def count_diagrams(k, m=1):
    return math.factorial(2 * k) * m ** k // (math.factorial(k) * 2 ** k)


def enumerate_uneven(s, t):
    if s < 0 or t < 0:
        raise ValueError("need s, t >= 0")
    if (s + t) % 2:
        return []
    verts = [top(i) for i in range(1, s + 1)] + [bottom(i) for i in range(1, t + 1)]
    return [UnevenDiagram(s, t, tuple(mt)) for mt in _matchings(verts)]


def is_walled(d, s):
    """Through strands stay on one side of the wall, horizontal ones cross it."""
    if not 0 <= s <= d.k:
        raise ValueError("wall position %d outside 0..%d" % (s, d.k))
    for u, v, _ in d.edges:
        left_u, left_v = u.index <= s, v.index <= s
        if u.row != v.row:
            if left_u != left_v:
                return False
        elif left_u == left_v:
            return False
    return True


# --------------------------------------------------------------------------
# marks (m == 2)


def theta_diagram(marks, k, m=2):
    """Identity diagram with label 1 on every strand listed in ``marks``."""
    for i in marks:
        if not 1 <= i <= k:
            raise ValueError("mark %d outside 1..%d" % (i, k))
    return LabeledDiagram(k, m, tuple((top(i), bottom(i), 1 if i in marks else 0)
                                      for i in range(1, k + 1)))


def factor_marked(d):
    """Split a marked diagram into theta(top) o bare o theta(bottom).

    Marks on through strands and top arcs move to the top identity, marks on
    bottom arcs to the bottom one; an arc's mark sits on its right-most vertex.
    """
    if d.m != 2:
        raise BadModulus("marked factorization needs m = 2, got %d" % d.m)
    top_marks, bottom_marks = set(), set()
    for u, v, lab in d.edges:
        if not lab:
            continue
        if u.row == TOP and v.row == BOTTOM:
            top_marks.add(u.index)
        elif u.row == TOP:
            top_marks.add(max(u.index, v.index))
        else:
            bottom_marks.add(max(u.index, v.index))
    return MarkedFactorization(frozenset(top_marks), d.forget_labels(), frozenset(bottom_marks))


def standard_factorization(d):
    """Write a bare diagram as ``perm_top o E_r o perm_bot``.

    ``E_r`` has arcs (1,2), (3,4), ..., (2r-1,2r) on both rows and vertical
    strands elsewhere.  Returns ``(perm_top, r, perm_bot)`` in the
    :func:`permutation_diagram` convention.
    """
    k = d.k
    caps = sorted((u.index, v.index) for u, v, _ in d.edges if u.row == v.row == TOP)
    cups = sorted((u.index, v.index) for u, v, _ in d.edges if u.row == v.row == BOTTOM)
    through = sorted((u.index, v.index) for u, v, _ in d.edges if u.row != v.row)
    r = len(caps)
    p_top = [0] * k
    p_bot = [0] * k
    for i, (a, b) in enumerate(caps):
        p_top[a - 1] = 2 * i + 1
        p_top[b - 1] = 2 * i + 2
    for i, (c, e) in enumerate(cups):
        p_bot[2 * i] = c
        p_bot[2 * i + 1] = e
    for j, (x, y) in enumerate(through):
        p_top[x - 1] = 2 * r + j + 1
        p_bot[2 * r + j] = y
    return tuple(p_top), r, tuple(p_bot)


def arc_diagram(r, k, m=1):
    """``E_r``: arcs joining 2i-1 and 2i on both rows for i <= r."""
    edges = []
    for i in range(1, r + 1):
        edges.append((top(2 * i - 1), top(2 * i), 0))
        edges.append((bottom(2 * i - 1), bottom(2 * i), 0))
    for j in range(2 * r + 1, k + 1):
        edges.append((top(j), bottom(j), 0))
    return canonicalize(edges, k, m)


# --------------------------------------------------------------------------
# text format:  t1-b2:1,t2-t3,b1-b3:2

_EDGE_RE = re.compile(r"^\s*([tb])(\d+)\s*-\s*([tb])(\d+)\s*(?::\s*(-?\d+))?\s*$")


def parse_diagram(text, m=1, k=None):
    text = text.strip()
    raw = []
    if text:
        for chunk in text.split(","):
            mt = _EDGE_RE.match(chunk)
            if not mt:
                raise ParseError("bad edge %r" % chunk.strip())
            r1, i1, r2, i2, lab = mt.groups()
            u = Vertex(TOP if r1 == "t" else BOTTOM, int(i1))
            v = Vertex(TOP if r2 == "t" else BOTTOM, int(i2))
            raw.append((u, v, int(lab) if lab is not None else 0))
    if k is None:
        k = len(raw)
    return canonicalize(raw, k, m)


def format_diagram(d):
    parts = []
    for u, v, lab in d.edges:
        s = "%s-%s" % (u, v)
        if lab:
            s += ":%d" % lab
        parts.append(s)
    return ",".join(parts)


def format_uneven(d):
    return ",".join("%s-%s" % (u, v) for u, v in d.edges)


def ascii_art(d):
    """Small text rendering: one line per row listing partners."""
    pm = d.partner_map()
    lines = []
    for row in (TOP, BOTTOM):
        cells = []
        for i in range(1, d.k + 1):
            w, lab = pm[Vertex(row, i)]
            cells.append("%s->%s%s" % (Vertex(row, i), w, "" if not lab else "[%d]" % lab))
        lines.append("  ".join(cells))
    return "\n".join(lines)
