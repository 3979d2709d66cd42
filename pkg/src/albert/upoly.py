"""Univariate polynomials and rational function fields.

``UPoly`` is a dense coefficient-list polynomial over any field of the scalar
tower.  ``RationalFunctionField(base, var)`` has ``RatFunc`` elements kept in
canonical form: numerator and denominator coprime, denominator monic.  That
makes pole detection at a point a purely syntactic test on the denominator.
"""

from __future__ import annotations

from .errors import AlbertError, DivisionByZero, ParentMismatch, PoleAtPoint
from .scalars import Ring
from . import linalg


class UPoly:
    """Dense univariate polynomial; coeffs ascending, no trailing zeros."""

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field):
        while coeffs and field.is_zero(coeffs[-1]):
            coeffs = coeffs[:-1]
        self.coeffs = tuple(coeffs)
        self.field = field

    @classmethod
    def const(cls, c, field):
        return cls((c,), field)

    @classmethod
    def x(cls, field):
        return cls((field.zero(), field.one()), field)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def lead(self):
        if not self.coeffs:
            raise AlbertError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self):
        return self.coeffs and self.coeffs[-1] == self.field.one()

    def _coerce(self, other):
        if isinstance(other, UPoly):
            if other.field != self.field:
                raise ParentMismatch("mixed polynomial coefficient fields")
            return other
        if isinstance(other, int):
            return UPoly((self.field.from_int(other),), self.field)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UPoly(out, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        return UPoly([-c for c in self.coeffs], self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return UPoly((), self.field)
        z = self.field.zero()
        out = [z] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if self.field.is_zero(ca):
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return UPoly(out, self.field)

    __rmul__ = __mul__

    def scale(self, c):
        return UPoly([c * x for x in self.coeffs], self.field)

    def shift(self, k):
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return UPoly((self.field.zero(),) * k + self.coeffs, self.field)

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.degree < 0:
            raise DivisionByZero("polynomial division by zero")
        field = self.field
        rem = list(self.coeffs)
        q = [field.zero()] * max(0, len(rem) - len(o.coeffs) + 1)
        inv_lead = field.inv(o.lead())
        for i in range(len(rem) - len(o.coeffs), -1, -1):
            c = rem[i + len(o.coeffs) - 1]
            if field.is_zero(c):
                continue
            f = c * inv_lead
            q[i] = f
            for j, oc in enumerate(o.coeffs):
                rem[i + j] = rem[i + j] - f * oc
        return UPoly(q, field), UPoly(rem, field)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise AlbertError("inexact polynomial division")
        return q

    def monic(self):
        if self.degree < 0:
            return self
        return self.scale(self.field.inv(self.lead()))

    def derivative(self):
        f = self.field
        return UPoly([f.from_int(i) * c for i, c in enumerate(self.coeffs)][1:], f)

    def __call__(self, point):
        """Evaluate by Horner; ``point`` may live in any extension ring."""
        if not self.coeffs:
            return point - point if not isinstance(point, int) else self.field.zero()
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * point + c
        return acc

    def eval_in(self, ring, point, lift_fn):
        """Evaluate at ``point`` of ``ring`` with coefficients lifted by lift_fn."""
        acc = ring.zero()
        for c in reversed(self.coeffs):
            acc = acc * point + lift_fn(c)
        return acc

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def format(self, var="t"):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if self.field.is_zero(c):
                continue
            cs = self.field.format(c)
            if i == 0:
                parts.append(cs)
            elif i == 1:
                parts.append(f"{cs}*{var}")
            else:
                parts.append(f"{cs}*{var}^{i}")
        return " + ".join(parts)

    def __repr__(self):
        return self.format()


def poly_gcd(a, b):
    """Monic gcd by the Euclidean algorithm."""
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def poly_lcm(a, b):
    if not a or not b:
        return UPoly((), a.field)
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def _power(field, c, k):
    acc = field.one()
    for _ in range(k):
        acc = acc * c
    return acc


def resultant(f, g):
    """Resultant via the Sylvester matrix determinant (exact, any field)."""
    field = f.field
    n, m = f.degree, g.degree
    if n < 0 or m < 0:
        return field.zero()
    if n == 0:
        return _power(field, f.coeffs[0], m)
    if m == 0:
        return _power(field, g.coeffs[0], n)
    size = n + m
    z = field.zero()
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(m):
        rows.append([z] * i + fc + [z] * (size - i - len(fc)))
    for i in range(n):
        rows.append([z] * i + gc + [z] * (size - i - len(gc)))
    return linalg.det(field, rows)


def is_separable(f):
    """Separability of a polynomial via resultant(f, f') != 0.

    Works uniformly in every characteristic, including the degenerate cases
    where the formal derivative drops degree or vanishes.
    """
    fp = f.derivative()
    if not fp:
        return False
    return not f.field.is_zero(resultant(f, fp))


class RatFunc:
    """Canonical fraction of univariate polynomials."""

    __slots__ = ("num", "den", "ring")

    def __init__(self, num, den, ring, _canonical=False):
        if not den:
            raise DivisionByZero("rational function with zero denominator")
        if not _canonical:
            if num:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            else:
                den = UPoly.const(ring.base.one(), ring.base)
            lead_inv = ring.base.inv(den.lead())
            if den.lead() != ring.base.one():
                num = num.scale(lead_inv)
                den = den.scale(lead_inv)
        self.num = num
        self.den = den
        self.ring = ring

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.ring != self.ring:
                raise ParentMismatch("mixed rational function fields")
            return other
        if isinstance(other, int):
            return self.ring.from_int(other)
        if isinstance(other, UPoly) and other.field == self.ring.base:
            return self.ring.from_poly(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den - o.num * self.den, self.den * o.den, self.ring)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den, self.ring)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise DivisionByZero("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num, self.ring)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return RatFunc(-self.num, self.den, self.ring, _canonical=True)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __bool__(self):
        return bool(self.num)

    def __hash__(self):
        return hash((self.num, self.den))

    def is_polynomial(self):
        return self.den.degree == 0

    def __repr__(self):
        v = self.ring.var
        if self.den.degree == 0:
            return self.num.format(v)
        return f"({self.num.format(v)})/({self.den.format(v)})"


class RationalFunctionField(Ring):
    """base(var): the field of univariate rational functions."""

    is_field = True

    def __init__(self, base, var="t"):
        if not base.is_field:
            raise AlbertError("rational functions need field coefficients")
        self.base = base
        self.var = var

    def zero(self):
        return RatFunc(UPoly((), self.base), UPoly.const(self.base.one(), self.base),
                       self, _canonical=True)

    def one(self):
        o = UPoly.const(self.base.one(), self.base)
        return RatFunc(o, o, self, _canonical=True)

    def from_int(self, n):
        return self.from_poly(UPoly.const(self.base.from_int(n), self.base))

    def from_base(self, value):
        return self.from_poly(UPoly.const(value, self.base))

    def from_poly(self, p):
        return RatFunc(p, UPoly.const(self.base.one(), self.base), self, _canonical=True)

    def gen(self):
        return self.from_poly(UPoly.x(self.base))

    def characteristic(self):
        return self.base.characteristic()

    def sample(self, rng, bound=9):
        num = UPoly([self.base.sample(rng, bound) for _ in range(rng.randint(1, 3))], self.base)
        den = UPoly((), self.base)
        while not den:
            den = UPoly([self.base.sample(rng, bound) for _ in range(rng.randint(1, 3))], self.base)
        return RatFunc(num, den, self)

    def inv(self, v):
        if not v.num:
            raise DivisionByZero("division by zero rational function")
        return RatFunc(v.den, v.num, self)

    def evaluate(self, r, point):
        """r(point) in the base field; raises PoleAtPoint when undefined."""
        den_val = r.den(point)
        if self.base.is_zero(den_val):
            raise PoleAtPoint(f"pole at {self.base.format(point)}")
        return r.num(point) / den_val

    def is_regular_at(self, r, point):
        return not self.base.is_zero(r.den(point))

    def format(self, v):
        num = ",".join(self.base.format(c) for c in v.num.coeffs) or "0"
        den = ",".join(self.base.format(c) for c in v.den.coeffs)
        return f"{num}|{den}"

    def parse(self, text):
        if "|" in text:
            ntext, dtext = text.split("|", 1)
        else:
            ntext, dtext = text, self.base.format(self.base.one())
        num = UPoly([self.base.parse(c) for c in ntext.split(",")], self.base)
        den = UPoly([self.base.parse(c) for c in dtext.split(",")], self.base)
        return RatFunc(num, den, self)

    def spec_string(self):
        return f"{self.base.spec_string()}({self.var})"

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunctionField)
            and other.base == self.base
            and other.var == self.var
        )

    def __hash__(self):
        return hash(("ratfunc", self.base, self.var))


def ratfunc_eval(r, point):
    """Module-level convenience wrapper over RationalFunctionField.evaluate."""
    return r.ring.evaluate(r, point)
