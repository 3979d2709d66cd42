"""Exact scalar arithmetic for the ring tower every other module computes over.

Supported rings:

* ``QQ`` - rational numbers, elements are ``fractions.Fraction``;
* ``PrimeField(p)`` - integers mod a prime, elements are ``FpElement``;
* ``QuadraticExtension(base, d)`` - base[s] with s^2 = d, elements ``QuadElement``;
* ``SplitQuadratic(base)`` - the split etale algebra base x base, elements
  ``SplitElement`` (honest component pairs, valid in every characteristic);
* ``RationalFunctionField(base, var)`` - univariate rational functions, see
  :mod:`albert.upoly`;
* dual-number extensions used for exact directional derivatives.

Elements are plain payload objects carrying native Python operators; rings are
lightweight parent objects providing construction, sampling, canonical
formatting and characteristic data.  All values are immutable after
construction and every representation is canonical, so ``==`` is mathematical
equality.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import AlbertError, DivisionByZero, ParentMismatch


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Ring:
    """Common parent interface.

    ``base`` points one level down the extension tower (None at the bottom).
    ``from_base`` lifts one level; :func:`lift` walks the whole chain.
    """

    base = None
    is_field = False

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n):
        raise NotImplementedError

    def from_base(self, value):
        raise NotImplementedError

    def is_zero(self, v):
        return not v

    def characteristic(self):
        raise NotImplementedError

    def depth(self):
        d, r = 1, self
        while r.base is not None:
            d += 1
            r = r.base
        return d

    def sample(self, rng, bound=9):
        raise NotImplementedError

    def sample_nonzero(self, rng, bound=9):
        for _ in range(1000):
            v = self.sample(rng, bound)
            if not self.is_zero(v):
                return v
        raise AlbertError("could not sample a nonzero element")

    def inv(self, v):
        raise NotImplementedError

    def format(self, v):
        return str(v)

    def spec_string(self):
        raise NotImplementedError

    def __repr__(self):
        return self.spec_string()


class RationalField(Ring):
    """The rationals; elements are ``fractions.Fraction`` used directly."""

    is_field = True

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def characteristic(self):
        return 0

    def sample(self, rng, bound=9):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def inv(self, v):
        if v == 0:
            raise DivisionByZero("division by zero in Q")
        return 1 / v

    def format(self, v):
        return str(v)

    def parse(self, text):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise AlbertError(f"bad rational literal {text!r}") from exc

    def spec_string(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


QQ = RationalField()


class FpElement:
    """An element of a prime field, reduced representative in [0, p)."""

    __slots__ = ("val", "p")

    def __init__(self, val, p):
        self.val = val % p
        self.p = p

    def _check(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ParentMismatch("mixed prime fields")
            return other.val
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        v = self._check(other)
        if v is None:
            return NotImplemented
        return FpElement(self.val + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._check(other)
        if v is None:
            return NotImplemented
        return FpElement(self.val - v, self.p)

    def __rsub__(self, other):
        v = self._check(other)
        if v is None:
            return NotImplemented
        return FpElement(v - self.val, self.p)

    def __mul__(self, other):
        v = self._check(other)
        if v is None:
            return NotImplemented
        return FpElement(self.val * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.val, self.p)

    def __truediv__(self, other):
        v = self._check(other)
        if v is None:
            return NotImplemented
        v %= self.p
        if v == 0:
            raise DivisionByZero(f"division by zero in F{self.p}")
        return FpElement(self.val * pow(v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        v = self._check(other)
        if v is None:
            return NotImplemented
        if self.val == 0:
            raise DivisionByZero(f"division by zero in F{self.p}")
        return FpElement(v * pow(self.val, -1, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.val == other.val
        if isinstance(other, int):
            return self.val == other % self.p
        return NotImplemented

    def __bool__(self):
        return self.val != 0

    def __hash__(self):
        return hash((self.p, self.val))

    def __repr__(self):
        return f"{self.val}"


class PrimeField(Ring):
    is_field = True

    def __init__(self, p):
        if not _is_prime(p):
            raise AlbertError(f"{p} is not prime")
        self.p = p

    def zero(self):
        return FpElement(0, self.p)

    def one(self):
        return FpElement(1, self.p)

    def from_int(self, n):
        return FpElement(n, self.p)

    def characteristic(self):
        return self.p

    def sample(self, rng, bound=9):
        return FpElement(rng.randrange(self.p), self.p)

    def inv(self, v):
        return self.one() / v

    def format(self, v):
        return str(v.val)

    def parse(self, text):
        try:
            return FpElement(int(text), self.p)
        except ValueError as exc:
            raise AlbertError(f"bad F{self.p} literal {text!r}") from exc

    def spec_string(self):
        return f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


class QuadElement:
    """a + b*s with s^2 = d, components in the base ring."""

    __slots__ = ("a", "b", "ring")

    def __init__(self, a, b, ring):
        self.a = a
        self.b = b
        self.ring = ring

    def _coerce(self, other):
        if isinstance(other, QuadElement):
            if other.ring != self.ring:
                raise ParentMismatch("mixed quadratic extensions")
            return other
        if isinstance(other, int):
            return QuadElement(self.ring.base.from_int(other), self.ring._bzero, self.ring)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a + o.a, self.b + o.b, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(self.a - o.a, self.b - o.b, self.ring)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElement(o.a - self.a, o.b - self.b, self.ring)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.ring.d
        return QuadElement(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            self.ring,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.ring)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * self.ring.inv(o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.ring.inv(self)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return self.ring.format(self)


class QuadraticExtension(Ring):
    """base[s] / (s^2 - d).

    A field when d is a non-square in the base; for square d this is the
    split etale algebra base x base in disguise (callers needing a field must
    check the non-square condition themselves).  Characteristic 2 bases are
    rejected: s^2 - d is inseparable there, so the extension is never etale.
    """

    def __init__(self, base, d):
        if base.is_zero(d):
            raise AlbertError("quadratic extension needs d != 0")
        if base.characteristic() == 2:
            raise AlbertError("s^2 = d is inseparable in characteristic 2")
        self.base = base
        self.d = d
        self._bzero = base.zero()
        self.is_field = base.is_field

    def zero(self):
        return QuadElement(self.base.zero(), self.base.zero(), self)

    def one(self):
        return QuadElement(self.base.one(), self.base.zero(), self)

    def from_int(self, n):
        return QuadElement(self.base.from_int(n), self.base.zero(), self)

    def from_base(self, value):
        return QuadElement(value, self.base.zero(), self)

    def make(self, a, b):
        return QuadElement(a, b, self)

    def components(self, v):
        return (v.a, v.b)

    def conj(self, v):
        return QuadElement(v.a, -v.b, self)

    def norm_to_base(self, v):
        return v.a * v.a - self.d * v.b * v.b

    def trace_to_base(self, v):
        return v.a + v.a

    def characteristic(self):
        return self.base.characteristic()

    def sample(self, rng, bound=9):
        return QuadElement(self.base.sample(rng, bound), self.base.sample(rng, bound), self)

    def inv(self, v):
        n = self.norm_to_base(v)
        if self.base.is_zero(n):
            raise DivisionByZero("not invertible in quadratic extension")
        ninv = self.base.inv(n)
        return QuadElement(v.a * ninv, -v.b * ninv, self)

    def extend(self, new_base, lift_fn):
        """Same extension with coefficients lifted into ``new_base``."""
        return QuadraticExtension(new_base, lift_fn(self.d))

    def lift_element(self, target, v, lift_fn):
        return QuadElement(lift_fn(v.a), lift_fn(v.b), target)

    def format(self, v):
        return f"({self.base.format(v.a)};{self.base.format(v.b)})"

    def parse(self, text):
        if text.startswith("(") and text.endswith(")") and ";" in text:
            a, b = text[1:-1].split(";")
            return QuadElement(self.base.parse(a), self.base.parse(b), self)
        return self.from_base(self.base.parse(text))

    def spec_string(self):
        return f"{self.base.spec_string()}[s]/(s^2-({self.base.format(self.d)}))"

    def __eq__(self, other):
        return (
            isinstance(other, QuadraticExtension)
            and other.base == self.base
            and other.d == self.d
        )

    def __hash__(self):
        return hash(("quad", self.base, self.d))


class SplitElement:
    """A pair over the base ring with componentwise operations."""

    __slots__ = ("a", "b", "ring")

    def __init__(self, a, b, ring):
        self.a = a
        self.b = b
        self.ring = ring

    def _coerce(self, other):
        if isinstance(other, SplitElement):
            if other.ring != self.ring:
                raise ParentMismatch("mixed split pairs")
            return other
        if isinstance(other, int):
            c = self.ring.base.from_int(other)
            return SplitElement(c, c, self.ring)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SplitElement(self.a + o.a, self.b + o.b, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SplitElement(self.a - o.a, self.b - o.b, self.ring)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SplitElement(o.a - self.a, o.b - self.b, self.ring)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SplitElement(self.a * o.a, self.b * o.b, self.ring)

    __rmul__ = __mul__

    def __neg__(self):
        return SplitElement(-self.a, -self.b, self.ring)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * self.ring.inv(o)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return self.ring.format(self)


class SplitQuadratic(Ring):
    """The split quadratic etale algebra base x base.

    The exchange of the two factors is the nontrivial automorphism, the genuine
    analogue of conjugation on a quadratic field extension, and the
    representation works in every characteristic.  Not a field: elements with
    exactly one zero component are zero divisors.
    """

    def __init__(self, base):
        self.base = base
        self.is_field = False

    def zero(self):
        return SplitElement(self.base.zero(), self.base.zero(), self)

    def one(self):
        return SplitElement(self.base.one(), self.base.one(), self)

    def from_int(self, n):
        c = self.base.from_int(n)
        return SplitElement(c, c, self)

    def from_base(self, value):
        return SplitElement(value, value, self)

    def make(self, a, b):
        return SplitElement(a, b, self)

    def components(self, v):
        return (v.a, v.b)

    def conj(self, v):
        return SplitElement(v.b, v.a, self)

    def norm_to_base(self, v):
        return v.a * v.b

    def trace_to_base(self, v):
        return v.a + v.b

    def characteristic(self):
        return self.base.characteristic()

    def sample(self, rng, bound=9):
        return SplitElement(self.base.sample(rng, bound), self.base.sample(rng, bound), self)

    def inv(self, v):
        if self.base.is_zero(v.a) or self.base.is_zero(v.b):
            raise DivisionByZero("zero divisor in split quadratic algebra")
        return SplitElement(self.base.inv(v.a), self.base.inv(v.b), self)

    def extend(self, new_base, lift_fn):
        return SplitQuadratic(new_base)

    def lift_element(self, target, v, lift_fn):
        return SplitElement(lift_fn(v.a), lift_fn(v.b), target)

    def format(self, v):
        return f"({self.base.format(v.a)};{self.base.format(v.b)})"

    def parse(self, text):
        if text.startswith("(") and text.endswith(")") and ";" in text:
            a, b = text[1:-1].split(";")
            return SplitElement(self.base.parse(a), self.base.parse(b), self)
        return self.from_base(self.base.parse(text))

    def spec_string(self):
        return f"{self.base.spec_string()}xx"

    def __eq__(self, other):
        return isinstance(other, SplitQuadratic) and other.base == self.base

    def __hash__(self):
        return hash(("split", self.base))


class DualElement:
    """a + b*eps with eps^2 = 0; carries first-order derivative data."""

    __slots__ = ("a", "b", "ring")

    def __init__(self, a, b, ring):
        self.a = a
        self.b = b
        self.ring = ring

    def _coerce(self, other):
        if isinstance(other, DualElement):
            return other
        if isinstance(other, int):
            z = self.ring.base
            return DualElement(z.from_int(other), z.zero(), self.ring)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualElement(self.a + o.a, self.b + o.b, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualElement(self.a - o.a, self.b - o.b, self.ring)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualElement(o.a - self.a, o.b - self.b, self.ring)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualElement(self.a * o.a, self.a * o.b + self.b * o.a, self.ring)

    __rmul__ = __mul__

    def __neg__(self):
        return DualElement(-self.a, -self.b, self.ring)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"({self.a}) + ({self.b})*eps"


class DualRing(Ring):
    """base[eps] / (eps^2)."""

    def __init__(self, base):
        self.base = base

    def zero(self):
        return DualElement(self.base.zero(), self.base.zero(), self)

    def one(self):
        return DualElement(self.base.one(), self.base.zero(), self)

    def from_int(self, n):
        return DualElement(self.base.from_int(n), self.base.zero(), self)

    def from_base(self, value):
        return DualElement(value, self.base.zero(), self)

    def eps(self):
        return DualElement(self.base.zero(), self.base.one(), self)

    def characteristic(self):
        return self.base.characteristic()

    def __eq__(self, other):
        return isinstance(other, DualRing) and other.base == self.base

    def __hash__(self):
        return hash(("dual", self.base))

    def spec_string(self):
        return f"{self.base.spec_string()}[eps]"


class BiDualElement:
    """a + b1*e1 + b2*e2 + c*e1*e2 with e1^2 = e2^2 = 0.

    The e1*e2 component of a product collects exactly the mixed second-order
    directional derivative, which is what the derived trace form needs.
    """

    __slots__ = ("a", "b1", "b2", "c", "ring")

    def __init__(self, a, b1, b2, c, ring):
        self.a = a
        self.b1 = b1
        self.b2 = b2
        self.c = c
        self.ring = ring

    def _coerce(self, other):
        if isinstance(other, BiDualElement):
            return other
        if isinstance(other, int):
            z = self.ring.base
            zz = z.zero()
            return BiDualElement(z.from_int(other), zz, zz, zz, self.ring)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BiDualElement(self.a + o.a, self.b1 + o.b1, self.b2 + o.b2, self.c + o.c, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BiDualElement(self.a - o.a, self.b1 - o.b1, self.b2 - o.b2, self.c - o.c, self.ring)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BiDualElement(o.a - self.a, o.b1 - self.b1, o.b2 - self.b2, o.c - self.c, self.ring)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return BiDualElement(
            self.a * o.a,
            self.a * o.b1 + self.b1 * o.a,
            self.a * o.b2 + self.b2 * o.a,
            self.a * o.c + self.c * o.a + self.b1 * o.b2 + self.b2 * o.b1,
            self.ring,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return BiDualElement(-self.a, -self.b1, -self.b2, -self.c, self.ring)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b1 == o.b1 and self.b2 == o.b2 and self.c == o.c

    def __bool__(self):
        return bool(self.a) or bool(self.b1) or bool(self.b2) or bool(self.c)

    def __repr__(self):
        return f"({self.a}) + ({self.b1})e1 + ({self.b2})e2 + ({self.c})e1e2"


class BiDualRing(Ring):
    """base[e1, e2] / (e1^2, e2^2)."""

    def __init__(self, base):
        self.base = base

    def zero(self):
        z = self.base.zero()
        return BiDualElement(z, z, z, z, self)

    def one(self):
        z = self.base.zero()
        return BiDualElement(self.base.one(), z, z, z, self)

    def from_int(self, n):
        z = self.base.zero()
        return BiDualElement(self.base.from_int(n), z, z, z, self)

    def from_base(self, value):
        z = self.base.zero()
        return BiDualElement(value, z, z, z, self)

    def e1(self):
        z = self.base.zero()
        return BiDualElement(z, self.base.one(), z, z, self)

    def e2(self):
        z = self.base.zero()
        return BiDualElement(z, z, self.base.one(), z, self)

    def characteristic(self):
        return self.base.characteristic()

    def __eq__(self, other):
        return isinstance(other, BiDualRing) and other.base == self.base

    def __hash__(self):
        return hash(("bidual", self.base))

    def spec_string(self):
        return f"{self.base.spec_string()}[e1,e2]"


def lift(target, source, value):
    """Lift ``value`` from ``source`` up the extension chain into ``target``."""
    if target == source:
        return value
    if target.base is None:
        raise ParentMismatch(f"cannot lift from {source!r} into {target!r}")
    return target.from_base(lift(target.base, source, value))


def parse_field_spec(text):
    """Parse the textual field syntax: ``Q``, ``F7``, ``Q[s]/(s^2-(-1))``, ``Q(t)``.

    Tower nesting is limited to depth 3.
    """
    field = _parse_field_spec(text.strip())
    if field.depth() > 3:
        raise AlbertError(f"field tower deeper than 3: {text!r}")
    return field


def _parse_field_spec(text):
    from .upoly import RationalFunctionField

    if text == "Q":
        return QQ
    if text.startswith("F") and text[1:].isdigit():
        return PrimeField(int(text[1:]))
    if text.endswith(")") and "[s]/(" in text:
        idx = text.index("[s]/(")
        base = _parse_field_spec(text[:idx])
        inner = text[idx + len("[s]/("):-1]
        if not inner.startswith("s^2"):
            raise AlbertError(f"bad quadratic extension spec {text!r}")
        rest = inner[3:]
        if rest.startswith("-"):
            lit, sign = rest[1:], 1
        elif rest.startswith("+"):
            lit, sign = rest[1:], -1
        else:
            raise AlbertError(f"bad quadratic extension spec {text!r}")
        if lit.startswith("(") and lit.endswith(")"):
            lit = lit[1:-1]
        d = base.parse(lit)
        if sign < 0:
            d = -d
        return QuadraticExtension(base, d)
    if text.endswith(")") and "(" in text:
        idx = text.index("(")
        base = _parse_field_spec(text[:idx])
        var = text[idx + 1:-1]
        if not var.isidentifier():
            raise AlbertError(f"bad function field variable {var!r}")
        return RationalFunctionField(base, var)
    raise AlbertError(f"unknown field spec {text!r}")
