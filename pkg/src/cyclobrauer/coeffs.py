"""Exact scalars: Gaussian rationals and polynomials in the loop parameters.

``GaussRat`` is the one scalar type used everywhere (the symplectic Cartan
involution has entries +-i).  ``DeltaPoly`` is a polynomial in
``delta_0 .. delta_{m//2}`` with ``GaussRat`` coefficients.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

from .errors import BadLabel, ContextMismatch, MissingAssignment, ParseError

_ZERO = mpq(0)
_ONE = mpq(1)


def _to_mpq(x):
    if isinstance(x, str):
        try:
            return mpq(x.strip())
        except ValueError as exc:
            raise ParseError("bad rational %r" % x) from exc
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or string")
    return mpq(x)


def _rat_str(q):
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


class GaussRat:
    """A complex number ``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is type(_ZERO) else _to_mpq(re)
        self.im = im if type(im) is type(_ZERO) else _to_mpq(im)

    @classmethod
    def _raw(cls, re, im):
        z = object.__new__(cls)
        z.re = re
        z.im = im
        return z

    @classmethod
    def coerce(cls, x):
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, complex):
            raise TypeError("complex floats are not exact")
        return cls(x)

    # predicates -----------------------------------------------------
    def is_zero(self):
        return not self.re and not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self):
        return not self.im

    def is_integer(self):
        return self.re.denominator == 1 and self.im.denominator == 1

    # arithmetic -----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussRat._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussRat._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __neg__(self):
        return GaussRat._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussRat._raw(a * c, _ZERO)
        return GaussRat._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussRat._raw(self.re, -self.im)

    def norm(self):
        """``|z|^2`` as an exact rational."""
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.norm()
        if not n:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = GaussRat.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparison / hashing -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) or type(other) is type(_ZERO):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(Fraction(int(self.re.numerator), int(self.re.denominator)))
        return hash((int(self.re.numerator), int(self.re.denominator),
                     int(self.im.numerator), int(self.im.denominator)))

    # text -----------------------------------------------------------
    def __str__(self):
        if not self.im:
            return _rat_str(self.re)
        if not self.re:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return "%s*i" % _rat_str(self.im)
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        tail = "i" if mag == 1 else "%s*i" % _rat_str(mag)
        return "%s%s%s" % (_rat_str(self.re), sign, tail)

    def __repr__(self):
        return "GaussRat(%s)" % self

    def to_pair(self):
        """``("p/q", "p/q")`` strings for the JSON formats."""
        return _rat_str(self.re), _rat_str(self.im)

    @classmethod
    def from_pair(cls, re, im):
        return cls(_to_mpq(re), _to_mpq(im))


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


# --------------------------------------------------------------------------
# polynomials in the loop parameters


def num_delta_vars(m):
    return m // 2 + 1


class DeltaPoly:
    """Polynomial in ``delta_0 .. delta_{m//2}`` over the Gaussian rationals.

    ``terms`` maps a dense exponent tuple to a nonzero ``GaussRat``.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m, terms=None):
        if m < 1:
            raise ValueError("modulus must be positive")
        self.m = m
        nv = num_delta_vars(m)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nv or any(e < 0 for e in exps):
                raise ValueError("bad exponent vector %r for m=%d" % (exps, m))
            c = GaussRat.coerce(c)
            if c:
                clean[exps] = clean.get(exps, ZERO) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    @classmethod
    def constant(cls, m, c=1):
        return cls(m, {(0,) * num_delta_vars(m): c})

    @classmethod
    def zero(cls, m):
        return cls(m)

    @classmethod
    def var(cls, m, i):
        nv = num_delta_vars(m)
        if not 0 <= i < nv:
            raise BadLabel("delta_%d does not exist for m=%d" % (i, m))
        exps = [0] * nv
        exps[i] = 1
        return cls(m, {tuple(exps): ONE})

    def _check(self, other):
        if not isinstance(other, DeltaPoly):
            other = DeltaPoly.constant(self.m, other)
        if other.m != self.m:
            raise ContextMismatch("polynomials over m=%d and m=%d" % (self.m, other.m))
        return other

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return _poly(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return _poly(self.m, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return _poly(self.m, out)

    __rmul__ = __mul__

    def scale(self, c):
        c = GaussRat.coerce(c)
        if not c:
            return DeltaPoly(self.m)
        return _poly(self.m, {e: v * c for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, DeltaPoly):
            return self.m == other.m and self.terms == other.terms
        try:
            return self == DeltaPoly.constant(self.m, other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                "d%d" % i if e == 1 else "d%d^%d" % (i, e)
                for i, e in enumerate(exps) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                cs = str(c)
                if not c.is_real() and c.re:
                    cs = "(%s)" % cs
                parts.append("%s*%s" % (cs, mono))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return "DeltaPoly(m=%d, %s)" % (self.m, self)

    def to_json(self):
        out = []
        for exps, c in self.sorted_terms():
            re, im = c.to_pair()
            out.append({"coeff_re": re, "coeff_im": im, "exponents": list(exps)})
        return out

    @classmethod
    def from_json(cls, m, data):
        terms = {}
        for t in data:
            c = GaussRat.from_pair(t["coeff_re"], t["coeff_im"])
            e = tuple(int(x) for x in t["exponents"])
            terms[e] = terms.get(e, ZERO) + c
        return cls(m, terms)


def _poly(m, terms):
    p = object.__new__(DeltaPoly)
    p.m = m
    p.terms = terms
    return p


def delta_monomial(loops, m):
    """Product of ``delta_l`` over the (normalized) loop labels."""
    nv = num_delta_vars(m)
    exps = [0] * nv
    for label in loops:
        if not 0 <= label < nv:
            raise BadLabel("loop label %r outside 0..%d" % (label, nv - 1))
        exps[label] += 1
    return _poly(m, {tuple(exps): ONE})


def poly_arith(op, a, b=None):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError("unknown op %r" % op)


def specialize(p, assignment):
    """Evaluate ``p`` exactly; ``assignment`` maps variable index -> value."""
    vals = {i: GaussRat.coerce(v) for i, v in assignment.items()}
    total = ZERO
    for exps, c in p.terms.items():
        term = c
        for i, e in enumerate(exps):
            if not e:
                continue
            if i not in vals:
                raise MissingAssignment("no value for delta_%d" % i)
            term = term * vals[i] ** e
        total = total + term
    return total
