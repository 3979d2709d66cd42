"""Degree-3 associative coordinate algebras with reduced norm, trace, adjoint.

Four kinds are provided:

* ``CubicEtale(field, f)`` - field[x]/(f) for a monic separable cubic f;
* ``Matrix3(ring)`` - 3x3 matrices over a commutative ring of the tower;
* ``Cyclic(L, rho_image, b)`` - L + Lz + Lz^2 with z*l = rho(l)*z, z^3 = b;
* ``ProductWithOpposite(D)`` - D x D^op over the split quadratic algebra.

All structural operations (multiplication, characteristic data, adjoint,
involutions) are generic programs: they take an explicit scalar ring S and
coordinate tuples over S, so the same code runs numerically over the base
ring, symbolically over polynomial rings, and along one-parameter families
over rational function fields.  Characteristic data is computed division-free
from faithful 3x3 matrix representations, so prime characteristics 2 and 3
work unchanged.

Elements are thin immutable wrappers (algebra, ring, coords) with operator
syntax on top of the generic programs.
"""

from __future__ import annotations

from .errors import (
    AlbertError,
    ConstraintError,
    InvolutionError,
    NotInvertible,
    ParentMismatch,
)
from .scalars import QuadraticExtension, SplitQuadratic, lift
from .upoly import UPoly, is_separable
from . import linalg


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def vscale(c, a):
    return tuple(c * x for x in a)


def _mat3(coords):
    return [list(coords[0:3]), list(coords[3:6]), list(coords[6:9])]


def _flat3(m):
    return tuple(m[i][j] for i in range(3) for j in range(3))


class Deg3Algebra:
    """Shared interface for the four coordinate algebra kinds."""

    base_ring = None
    dim = 0
    kind = "?"
    involution = None

    def one_coords(self, S):
        raise NotImplementedError

    def zero_coords(self, S):
        z = S.zero()
        return (z,) * self.dim

    def lift_coords(self, S, coords):
        """Lift base-ring coordinates into the extension ring S."""
        if S == self.base_ring:
            return tuple(coords)
        return tuple(self._lift_scalar(S, c) for c in coords)

    def _lift_scalar(self, S, c):
        K = self.base_ring
        if isinstance(K, (QuadraticExtension, SplitQuadratic)) and isinstance(
            S, (QuadraticExtension, SplitQuadratic)
        ):
            return K.lift_element(S, c, lambda v: lift(S.base, K.base, v))
        return lift(S, K, c)

    def extend_ring(self, S_base):
        """The coefficient ring for coordinates base-changed along S_base.

        For algebras over a quadratic etale center K this is K with its own
        base extended; otherwise it is S_base itself.
        """
        K = self.base_ring
        if isinstance(K, (QuadraticExtension, SplitQuadratic)):
            return K.extend(S_base, lambda v: lift(S_base, K.base, v))
        return S_base

    def mul(self, S, a, b):
        raise NotImplementedError

    def char_data(self, S, a):
        """(T(a), S(a), N(a)) from X^3 - T X^2 + S X - N, division-free."""
        raise NotImplementedError

    def norm(self, S, a):
        return self.char_data(S, a)[2]

    def trace(self, S, a):
        """Reduced trace as a linear form; coefficients cached on the basis."""
        coeffs = self._trace_form()
        base = self.base_ring
        direct = S == base
        acc = S.zero()
        for c, v in zip(coeffs, a):
            if not base.is_zero(c):
                cc = c if direct else self._lift_scalar(S, c)
                acc = acc + cc * v
        return acc

    def _trace_form(self):
        cached = getattr(self, "_trace_form_cache", None)
        if cached is None:
            base = self.base_ring
            cached = []
            for i in range(self.dim):
                coords = list(self.zero_coords(base))
                coords[i] = base.one()
                cached.append(self.char_data(base, tuple(coords))[0])
            self._trace_form_cache = cached
        return cached

    def trace_gram(self):
        """dim x dim matrix of T(e_i e_j) over the base ring, cached."""
        cached = getattr(self, "_trace_gram_cache", None)
        if cached is None:
            base = self.base_ring
            basis = [e.coords for e in self.basis()]
            cached = [
                [self.trace(base, self.mul(base, ei, ej)) for ej in basis]
                for ei in basis
            ]
            self._trace_gram_cache = cached
        return cached

    def trace_of_product(self, S, a, b):
        """T(a*b) as a bilinear contraction against the cached trace Gram
        matrix; avoids forming the product for large symbolic operands."""
        g = self.trace_gram()
        base = self.base_ring
        direct = S == base
        acc = S.zero()
        for i, ai in enumerate(a):
            row = g[i]
            for j, bj in enumerate(b):
                c = row[j]
                if not base.is_zero(c):
                    cc = c if direct else self._lift_scalar(S, c)
                    acc = acc + cc * ai * bj
        return acc

    def sharp(self, S, a):
        """Adjoint: a^2 - T(a) a + S(a) 1; satisfies a a^# = N(a) 1 exactly."""
        t, s, _ = self.char_data(S, a)
        sq = self.mul(S, a, a)
        one = self.one_coords(S)
        return vadd(vsub(sq, vscale(t, a)), vscale(s, one))

    def inverse_coords(self, S, a):
        _, _, n = self.char_data(S, a)
        if S.is_zero(n):
            raise NotInvertible("element has reduced norm 0")
        ninv = S.inv(n)
        return vscale(ninv, self.sharp(S, a))

    def trace_pairing(self, S, a, b):
        """T(a*b), the reduced trace of the associative product."""
        return self.trace(S, self.mul(S, a, b))

    def attach_involution(self, involution):
        involution.validate(self)
        alg = self.clone()
        alg.involution = involution
        return alg

    def clone(self):
        raise NotImplementedError

    def involution_apply(self, S, a):
        if self.involution is None:
            raise InvolutionError("algebra has no involution attached")
        return self.involution.apply(self, S, a)

    # elements over the base ring

    def element(self, coords, ring=None):
        ring = ring or self.base_ring
        return Element(self, ring, tuple(coords))

    def one(self, ring=None):
        ring = ring or self.base_ring
        return Element(self, ring, self.one_coords(ring))

    def zero(self, ring=None):
        ring = ring or self.base_ring
        return Element(self, ring, self.zero_coords(ring))

    def from_int(self, n, ring=None):
        ring = ring or self.base_ring
        return Element(self, ring, vscale(ring.from_int(n), self.one_coords(ring)))

    def basis(self, ring=None):
        ring = ring or self.base_ring
        z, o = ring.zero(), ring.one()
        out = []
        for i in range(self.dim):
            coords = [z] * self.dim
            coords[i] = o
            out.append(Element(self, ring, tuple(coords)))
        return out

    def sample(self, rng, bound=9, ring=None):
        ring = ring or self.base_ring
        return Element(self, ring, tuple(ring.sample(rng, bound) for _ in range(self.dim)))

    def sample_invertible(self, rng, bound=9):
        for _ in range(1000):
            a = self.sample(rng, bound)
            if not self.base_ring.is_zero(a.norm()):
                return a
        raise AlbertError("failed to sample an invertible element")

    def descriptor_string(self):
        raise NotImplementedError

    def __repr__(self):
        return self.descriptor_string()


class Element:
    """Immutable algebra element: coordinates over a scalar ring."""

    __slots__ = ("algebra", "ring", "coords")

    def __init__(self, algebra, ring, coords):
        self.algebra = algebra
        self.ring = ring
        self.coords = tuple(coords)

    def _coerce(self, other):
        if isinstance(other, Element):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise ParentMismatch("elements of different algebras")
            if other.ring != self.ring:
                raise ParentMismatch("elements over different scalar rings")
            return other
        if isinstance(other, int):
            return Element(
                self.algebra,
                self.ring,
                vscale(self.ring.from_int(other), self.algebra.one_coords(self.ring)),
            )
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Element(self.algebra, self.ring, vadd(self.coords, o.coords))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Element(self.algebra, self.ring, vsub(self.coords, o.coords))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Element(self.algebra, self.ring, vneg(self.coords))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Element(self.algebra, self.ring, self.algebra.mul(self.ring, self.coords, o.coords))

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def scale(self, c):
        return Element(self.algebra, self.ring, vscale(c, self.coords))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __bool__(self):
        return any(not self.ring.is_zero(c) for c in self.coords)

    def __hash__(self):
        return hash((self.algebra.kind, self.coords))

    def char_data(self):
        return self.algebra.char_data(self.ring, self.coords)

    def norm(self):
        return self.algebra.norm(self.ring, self.coords)

    def trace(self):
        return self.algebra.trace(self.ring, self.coords)

    def sharp(self):
        return Element(self.algebra, self.ring, self.algebra.sharp(self.ring, self.coords))

    def inverse(self):
        return Element(self.algebra, self.ring, self.algebra.inverse_coords(self.ring, self.coords))

    def conj(self):
        return Element(
            self.algebra, self.ring, self.algebra.involution_apply(self.ring, self.coords)
        )

    def is_invertible(self):
        return not self.ring.is_zero(self.norm())

    def __repr__(self):
        return f"<{self.algebra.kind} elt {list(self.coords)!r}>"


class CubicEtale(Deg3Algebra):
    """field[x]/(f) for a monic separable cubic; basis 1, x, x^2."""

    kind = "cubic-etale"
    dim = 3

    def __init__(self, field, f):
        if isinstance(f, (list, tuple)):
            f = UPoly(list(f), field)
        if f.degree != 3 or not f.is_monic():
            raise ConstraintError("minimal polynomial must be a monic cubic")
        if not is_separable(f):
            raise ConstraintError("inseparable cubic", code="inseparable-cubic")
        self.base_ring = field
        self.f = f
        # x^3 and x^4 reduced mod f, as coordinate triples
        f0, f1, f2 = f.coeffs[0], f.coeffs[1], f.coeffs[2]
        self._x3 = (-f0, -f1, -f2)
        x4 = vadd(vscale(-f2, self._x3), (field.zero(), -f0, -f1))
        self._x4 = x4

    def clone(self):
        alg = CubicEtale.__new__(CubicEtale)
        alg.__dict__.update(self.__dict__)
        return alg

    def one_coords(self, S):
        return (S.one(), S.zero(), S.zero())

    def mul(self, S, a, b):
        a0, a1, a2 = a
        b0, b1, b2 = b
        # raw coefficients of degree 0..4
        c0 = a0 * b0
        c1 = a0 * b1 + a1 * b0
        c2 = a0 * b2 + a1 * b1 + a2 * b0
        c3 = a1 * b2 + a2 * b1
        c4 = a2 * b2
        x3 = self.lift_coords(S, self._x3)
        x4 = self.lift_coords(S, self._x4)
        out = (c0, c1, c2)
        out = vadd(out, vscale(c3, x3))
        out = vadd(out, vscale(c4, x4))
        return out

    def _regular_matrix(self, S, a):
        basis = [
            (S.one(), S.zero(), S.zero()),
            (S.zero(), S.one(), S.zero()),
            (S.zero(), S.zero(), S.one()),
        ]
        cols = [self.mul(S, a, b) for b in basis]
        return [[cols[j][i] for j in range(3)] for i in range(3)]

    def char_data(self, S, a):
        return _char3(self._regular_matrix(S, a))

    def norm(self, S, a):
        return _det3(self._regular_matrix(S, a))

    def sharp(self, S, a):
        m = self._regular_matrix(S, a)
        t = m[0][0] + m[1][1] + m[2][2]
        s = (
            m[0][0] * m[1][1]
            - m[0][1] * m[1][0]
            + m[0][0] * m[2][2]
            - m[0][2] * m[2][0]
            + m[1][1] * m[2][2]
            - m[1][2] * m[2][1]
        )
        sq = self.mul(S, a, a)
        one = self.one_coords(S)
        return vadd(vsub(sq, vscale(t, a)), vscale(s, one))

    def descriptor_string(self):
        coeffs = ",".join(self.base_ring.format(c) for c in self.f.coeffs)
        return f"cubic_etale({self.base_ring.spec_string()},f=[{coeffs}])"

    def __eq__(self, other):
        return (
            isinstance(other, CubicEtale)
            and other.base_ring == self.base_ring
            and other.f == self.f
        )

    def __hash__(self):
        return hash(("cubic-etale", self.base_ring, self.f.coeffs))


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _char3(m):
    """Trace, second coefficient and determinant of a 3x3 matrix, by minors."""
    t = m[0][0] + m[1][1] + m[2][2]
    s = (
        m[0][0] * m[1][1]
        - m[0][1] * m[1][0]
        + m[0][0] * m[2][2]
        - m[0][2] * m[2][0]
        + m[1][1] * m[2][2]
        - m[1][2] * m[2][1]
    )
    return t, s, _det3(m)


def _adjugate3(m):
    return [
        [
            m[1][1] * m[2][2] - m[1][2] * m[2][1],
            m[0][2] * m[2][1] - m[0][1] * m[2][2],
            m[0][1] * m[1][2] - m[0][2] * m[1][1],
        ],
        [
            m[1][2] * m[2][0] - m[1][0] * m[2][2],
            m[0][0] * m[2][2] - m[0][2] * m[2][0],
            m[0][2] * m[1][0] - m[0][0] * m[1][2],
        ],
        [
            m[1][0] * m[2][1] - m[1][1] * m[2][0],
            m[0][1] * m[2][0] - m[0][0] * m[2][1],
            m[0][0] * m[1][1] - m[0][1] * m[1][0],
        ],
    ]


class Matrix3(Deg3Algebra):
    """3x3 matrices over a commutative ring; coordinates row-major."""

    kind = "matrix3"
    dim = 9

    def __init__(self, ring):
        self.base_ring = ring

    def clone(self):
        alg = Matrix3.__new__(Matrix3)
        alg.__dict__.update(self.__dict__)
        return alg

    def one_coords(self, S):
        z, o = S.zero(), S.one()
        return (o, z, z, z, o, z, z, z, o)

    def mul(self, S, a, b):
        A, B = _mat3(a), _mat3(b)
        out = []
        for i in range(3):
            for j in range(3):
                out.append(A[i][0] * B[0][j] + A[i][1] * B[1][j] + A[i][2] * B[2][j])
        return tuple(out)

    def char_data(self, S, a):
        return _char3(_mat3(a))

    def norm(self, S, a):
        return _det3(_mat3(a))

    def sharp(self, S, a):
        return _flat3(_adjugate3(_mat3(a)))

    def matrix_unit(self, i, j, ring=None):
        ring = ring or self.base_ring
        z = ring.zero()
        coords = [z] * 9
        coords[3 * i + j] = ring.one()
        return Element(self, ring, tuple(coords))

    def from_rows(self, rows, ring=None):
        ring = ring or self.base_ring
        return Element(self, ring, _flat3(rows))

    def diag(self, entries, ring=None):
        ring = ring or self.base_ring
        z = ring.zero()
        coords = [z] * 9
        for i, e in enumerate(entries):
            coords[4 * i] = e
        return Element(self, ring, tuple(coords))

    def transvection(self, i, j, alpha, ring=None):
        """E_ij(alpha) = 1 + alpha*e_ij, indices 1-based, i != j."""
        ring = ring or self.base_ring
        if i == j:
            raise ConstraintError("transvection needs i != j")
        e = self.one(ring)
        coords = list(e.coords)
        coords[3 * (i - 1) + (j - 1)] = coords[3 * (i - 1) + (j - 1)] + alpha
        return Element(self, ring, tuple(coords))

    def descriptor_string(self):
        return f"matrix3({self.base_ring.spec_string()})"

    def __eq__(self, other):
        return isinstance(other, Matrix3) and other.base_ring == self.base_ring

    def __hash__(self):
        return hash(("matrix3", self.base_ring))


class Cyclic(Deg3Algebra):
    """Cyclic algebra on the left module basis L + Lz + Lz^2.

    ``rho_image`` is the image of the generator of L under an order-3
    automorphism rho, given explicitly as an L-coordinate triple.  Cyclicity
    of the user's data is verified structurally: rho must be a well-defined
    algebra automorphism with rho^3 = id, rho != id, and fixed subring k.
    Whether the resulting algebra is division (b outside the norms of L) is
    the caller's own assertion and is never checked here.
    """

    kind = "cyclic"
    dim = 9

    def __init__(self, L, rho_image, b, division_asserted=False):
        if not isinstance(L, CubicEtale):
            raise ConstraintError("cyclic algebra needs a cubic etale L")
        field = L.base_ring
        if field.is_zero(b):
            raise ConstraintError("cyclic algebra needs b != 0", code="zero-parameter")
        self.base_ring = field
        self.L = L
        self.b = b
        self.division_asserted = division_asserted
        rho_image = tuple(rho_image)
        # rho as a 3x3 matrix over k: columns are rho(1), rho(x), rho(x^2)
        one = L.one_coords(field)
        rx = rho_image
        rx2 = L.mul(field, rx, rx)
        self._rho = [[one[i], rx[i], rx2[i]] for i in range(3)]
        self._validate_rho(field, rx)
        rho2 = linalg.mat_mul(self._rho, self._rho)
        self._rho_pows = [linalg.identity(field, 3), self._rho, rho2]

    def _validate_rho(self, field, rx):
        L = self.L
        # rho(x) must again be a root of f, so the substitution map is an
        # algebra endomorphism
        img = Element(L, field, rx)
        acc = L.zero()
        power = L.one()
        for c in L.f.coeffs:
            acc = acc + power.scale(c)
            power = power * img
        if acc:
            raise ConstraintError("rho image is not a root of the minimal polynomial")
        rho3 = linalg.mat_mul(self._rho, linalg.mat_mul(self._rho, self._rho))
        if not linalg.mat_eq(rho3, linalg.identity(field, 3)):
            raise ConstraintError("rho does not have order dividing 3")
        if linalg.mat_eq(self._rho, linalg.identity(field, 3)):
            raise ConstraintError("rho must be nontrivial")
        fixed = linalg.kernel(field, linalg.mat_sub(self._rho, linalg.identity(field, 3)))
        if len(fixed) != 1:
            raise ConstraintError("rho does not have fixed subring k")

    def clone(self):
        alg = Cyclic.__new__(Cyclic)
        alg.__dict__.update(self.__dict__)
        return alg

    def one_coords(self, S):
        z = S.zero()
        return (S.one(), z, z, z, z, z, z, z, z)

    def _lparts(self, a):
        return a[0:3], a[3:6], a[6:9]

    def _rho_apply(self, S, power, ell):
        m = self._rho_pows[power % 3]
        out = []
        for i in range(3):
            acc = S.zero()
            for j in range(3):
                c = m[i][j]
                if not self.base_ring.is_zero(c):
                    acc = acc + self._lift_scalar(S, c) * ell[j]
            out.append(acc)
        return tuple(out)

    def mul(self, S, a, bb):
        L = self.L
        a0, a1, a2 = self._lparts(a)
        b0, b1, b2 = self._lparts(bb)
        bconst = self._lift_scalar(S, self.b)
        r = self._rho_apply
        m = lambda u, v: L.mul(S, u, v)
        g0 = vadd(
            m(a0, b0),
            vscale(bconst, vadd(m(a1, r(S, 1, b2)), m(a2, r(S, 2, b1)))),
        )
        g1 = vadd(vadd(m(a0, b1), m(a1, r(S, 1, b0))), vscale(bconst, m(a2, r(S, 2, b2))))
        g2 = vadd(vadd(m(a0, b2), m(a1, r(S, 1, b1))), m(a2, r(S, 2, b0)))
        return g0 + g1 + g2

    def _left_regular_over_L(self, S, a):
        """Matrix of left multiplication on the right-L-module basis 1, z, z^2.

        Entries are L-coordinate triples over S.
        """
        L = self.L
        a0, a1, a2 = self._lparts(a)
        bconst = self._lift_scalar(S, self.b)
        r = self._rho_apply
        row0 = [a0, vscale(bconst, a2), vscale(bconst, a1)]
        row1 = [r(S, 2, a1), r(S, 2, a0), vscale(bconst, r(S, 2, a2))]
        row2 = [r(S, 1, a2), r(S, 1, a1), r(S, 1, a0)]
        return [row0, row1, row2]

    def _descend(self, S, v):
        if not (S.is_zero(v[1]) and S.is_zero(v[2])):
            raise AlbertError("characteristic data did not land in the base field")
        return v[0]

    def _ts_over_L(self, S, m):
        L = self.L
        mul = lambda u, v: L.mul(S, u, v)
        t_l = vadd(vadd(m[0][0], m[1][1]), m[2][2])
        s_l = vsub(mul(m[0][0], m[1][1]), mul(m[0][1], m[1][0]))
        s_l = vadd(s_l, vsub(mul(m[0][0], m[2][2]), mul(m[0][2], m[2][0])))
        s_l = vadd(s_l, vsub(mul(m[1][1], m[2][2]), mul(m[1][2], m[2][1])))
        return t_l, s_l

    def _det_over_L(self, S, m):
        L = self.L
        mul = lambda u, v: L.mul(S, u, v)
        n_l = mul(m[0][0], vsub(mul(m[1][1], m[2][2]), mul(m[1][2], m[2][1])))
        n_l = vsub(n_l, mul(m[0][1], vsub(mul(m[1][0], m[2][2]), mul(m[1][2], m[2][0]))))
        n_l = vadd(n_l, mul(m[0][2], vsub(mul(m[1][0], m[2][1]), mul(m[1][1], m[2][0]))))
        return n_l

    def char_data(self, S, a):
        m = self._left_regular_over_L(S, a)
        t_l, s_l = self._ts_over_L(S, m)
        n_l = self._det_over_L(S, m)
        return self._descend(S, t_l), self._descend(S, s_l), self._descend(S, n_l)

    def norm(self, S, a):
        return self._descend(S, self._det_over_L(S, self._left_regular_over_L(S, a)))

    def sharp(self, S, a):
        m = self._left_regular_over_L(S, a)
        t_l, s_l = self._ts_over_L(S, m)
        t, s = self._descend(S, t_l), self._descend(S, s_l)
        sq = self.mul(S, a, a)
        one = self.one_coords(S)
        return vadd(vsub(sq, vscale(t, a)), vscale(s, one))

    def descriptor_string(self):
        f = self.base_ring.format
        rho_col = [self._rho[i][1] for i in range(3)]
        rho = ",".join(f(c) for c in rho_col)
        return (
            f"cyclic({self.L.descriptor_string()},rho=[{rho}],b={f(self.b)})"
        )

    def __eq__(self, other):
        return (
            isinstance(other, Cyclic)
            and other.L == self.L
            and other.b == self.b
            and linalg.mat_eq(other._rho, self._rho)
        )

    def __hash__(self):
        return hash(("cyclic", self.L, self.b))


class ProductWithOpposite(Deg3Algebra):
    """D x D^op as a 9-dimensional algebra over the split quadratic center.

    Coordinates are split pairs (first component from D, second from D^op) on
    the diagonal basis, so the exchange involution is coordinatewise
    conjugation of the center.
    """

    kind = "prodop"

    def __init__(self, inner):
        if isinstance(inner.base_ring, (QuadraticExtension, SplitQuadratic)):
            raise ConstraintError("inner algebra of prodop must be over the bottom field")
        self.inner = inner
        self.base_ring = SplitQuadratic(inner.base_ring)
        self.dim = inner.dim

    def clone(self):
        alg = ProductWithOpposite.__new__(ProductWithOpposite)
        alg.__dict__.update(self.__dict__)
        return alg

    def one_coords(self, S):
        inner_one = self.inner.one_coords(S.base)
        return tuple(S.make(c, c) for c in inner_one)

    def _split(self, S, a):
        xs = tuple(v.a for v in a)
        ys = tuple(v.b for v in a)
        return xs, ys

    def _join(self, S, xs, ys):
        return tuple(S.make(x, y) for x, y in zip(xs, ys))

    def mul(self, S, a, b):
        Sb = S.base
        ax, ay = self._split(S, a)
        bx, by = self._split(S, b)
        zx = self.inner.mul(Sb, ax, bx)
        zy = self.inner.mul(Sb, by, ay)
        return self._join(S, zx, zy)

    def char_data(self, S, a):
        Sb = S.base
        ax, ay = self._split(S, a)
        tx, sx, nx = self.inner.char_data(Sb, ax)
        ty, sy, ny = self.inner.char_data(Sb, ay)
        return S.make(tx, ty), S.make(sx, sy), S.make(nx, ny)

    def norm(self, S, a):
        Sb = S.base
        ax, ay = self._split(S, a)
        return S.make(self.inner.norm(Sb, ax), self.inner.norm(Sb, ay))

    def trace(self, S, a):
        Sb = S.base
        ax, ay = self._split(S, a)
        return S.make(self.inner.trace(Sb, ax), self.inner.trace(Sb, ay))

    def sharp(self, S, a):
        Sb = S.base
        ax, ay = self._split(S, a)
        return self._join(S, self.inner.sharp(Sb, ax), self.inner.sharp(Sb, ay))

    def pair(self, x, y):
        """Element from a pair of inner-algebra elements."""
        K = self.base_ring
        return self.element(tuple(K.make(a, b) for a, b in zip(x.coords, y.coords)))

    def descriptor_string(self):
        return f"prodop({self.inner.descriptor_string()})"

    def __eq__(self, other):
        return isinstance(other, ProductWithOpposite) and other.inner == self.inner

    def __hash__(self):
        return hash(("prodop", self.inner))


class Involution:
    kind = "?"

    def validate(self, algebra):
        """Structural checks: involutive anti-homomorphism on the basis."""
        base = algebra.base_ring
        basis = algebra.basis()
        for e in basis:
            img = Element(algebra, base, self.apply(algebra, base, e.coords))
            back = Element(algebra, base, self.apply(algebra, base, img.coords))
            if back != e:
                raise ConstraintError(f"{self.kind} is not involutive")
        for e in basis:
            for f in basis:
                lhs = self.apply(algebra, base, (e * f).coords)
                se = Element(algebra, base, self.apply(algebra, base, e.coords))
                sf = Element(algebra, base, self.apply(algebra, base, f.coords))
                if lhs != (sf * se).coords:
                    raise ConstraintError(f"{self.kind} is not an anti-homomorphism")

    def apply(self, algebra, S, a):
        raise NotImplementedError

    def descriptor_string(self):
        return self.kind


class ConjugateTranspose(Involution):
    """Entrywise center conjugation composed with transposition, on matrix3."""

    kind = "conjtrans"

    def validate(self, algebra):
        if not isinstance(algebra, Matrix3) or not isinstance(
            algebra.base_ring, (QuadraticExtension, SplitQuadratic)
        ):
            raise ConstraintError("conjtrans needs matrix3 over a quadratic etale center")
        super().validate(algebra)

    def apply(self, algebra, S, a):
        m = _mat3(a)
        return tuple(S.conj(m[j][i]) for i in range(3) for j in range(3))


class Switch(Involution):
    """The exchange involution on D x D^op: coordinatewise center conjugation."""

    kind = "switch"

    def validate(self, algebra):
        if not isinstance(algebra, ProductWithOpposite):
            raise ConstraintError("switch involution lives on prodop algebras")
        super().validate(algebra)

    def apply(self, algebra, S, a):
        return tuple(S.conj(v) for v in a)


class UTwist(Involution):
    """sigma_u = Int(u) o sigma for an invertible u with sigma(u) = u."""

    kind = "utwist"

    def __init__(self, inner, u):
        self.inner = inner
        self.u = u

    def validate(self, algebra):
        base = algebra.base_ring
        u = self.u
        if not u.is_invertible():
            raise ConstraintError("utwist element must be invertible")
        if Element(algebra, base, self.inner.apply(algebra, base, u.coords)) != u:
            raise ConstraintError("utwist element must be sigma-hermitian")
        self._u_inv = u.inverse()
        super().validate(algebra)

    def apply(self, algebra, S, a):
        inner = self.inner.apply(algebra, S, a)
        u = algebra.lift_coords(S, self.u.coords)
        uinv = algebra.lift_coords(S, self._u_inv.coords)
        return algebra.mul(S, u, algebra.mul(S, inner, uinv))

    def descriptor_string(self):
        coords = ",".join(
            self.u.algebra.base_ring.format(c) for c in self.u.coords
        )
        return f"utwist(u=[{coords}])"


def membership(g, which):
    """Group membership tests: SL1, U, SU or Sim.

    ``Sim`` returns (bool, witness) where the witness is the bottom-field
    scalar lambda with g*sigma(g) = lambda*1; the others return a bool.
    Non-invertible g is simply not a member.
    """
    alg = g.algebra
    ring = g.ring
    if which == "SL1":
        return g.norm() == ring.one() if g.is_invertible() else False
    if alg.involution is None:
        raise InvolutionError(f"{which} membership needs an involution")
    if not g.is_invertible():
        return False if which != "Sim" else (False, None)
    gs = g * g.conj()
    if which == "U":
        return gs == alg.one(ring)
    if which == "SU":
        return gs == alg.one(ring) and g.norm() == ring.one()
    if which == "Sim":
        one = alg.one_coords(ring)
        lam = None
        for c, o in zip(gs.coords, one):
            if ring.is_zero(o):
                if not ring.is_zero(c):
                    return (False, None)
            else:
                if lam is None:
                    lam = c
                elif c != lam:
                    return (False, None)
        if lam is None or ring.is_zero(lam):
            return (False, None)
        if isinstance(ring, (QuadraticExtension, SplitQuadratic)):
            if ring.conj(lam) != lam:
                return (False, None)
            return (True, ring.components(lam)[0])
        return (True, lam)
    raise AlbertError(f"unknown membership test {which!r}")


def transvection_factorization(d):
    """Factor a norm-one 3x3 matrix into transvections E_ij(alpha).

    Returns a list of 1-based triples (i, j, alpha) whose ordered product is
    exactly d.  Gauss-Jordan elimination by row transvections only; length is
    at most 12.
    """
    alg = d.algebra
    field = d.ring
    if not isinstance(alg, Matrix3) or not field.is_field:
        raise ConstraintError("transvection factorization needs matrix3 over a field")
    if d.norm() != field.one():
        raise ConstraintError("element must have reduced norm 1", code="not-norm-one")
    m = [list(d.coords[0:3]), list(d.coords[3:6]), list(d.coords[6:9])]
    ops = []  # applied row operations (i, j, alpha): row_i += alpha * row_j

    def row_op(i, j, alpha):
        if field.is_zero(alpha):
            return
        m[i] = [x + alpha * y for x, y in zip(m[i], m[j])]
        ops.append((i, j, alpha))

    one = field.one()
    for k in range(2):
        if m[k][k] != one:
            # fix the pivot to exactly 1 using a row strictly below it, so
            # already finished columns are never disturbed
            src = None
            for i in range(k + 1, 3):
                if not field.is_zero(m[i][k]):
                    src = i
                    break
            if src is None:
                src = k + 1
                row_op(src, k, one)
            row_op(k, src, (one - m[k][k]) / m[src][k])
        for i in range(3):
            if i != k and not field.is_zero(m[i][k]):
                row_op(i, k, -m[i][k])
    # after elimination the lower-right entry equals det = 1; clear above it
    for i in range(2):
        if not field.is_zero(m[i][2]):
            row_op(i, 2, -m[i][2])
    factors = [(i + 1, j + 1, -alpha) for (i, j, alpha) in ops]
    if len(factors) > 12:
        raise AlbertError("factorization exceeded the 12-factor bound")
    check = alg.one(field)
    for (i, j, alpha) in factors:
        check = check * alg.transvection(i, j, alpha, field)
    if check != d:
        raise AlbertError("transvection factorization failed to reassemble")
    return factors


def random_norm_one(alg, rng, nfactors=3, bound=4):
    """A random product of transvections; reduced norm exactly 1."""
    field = alg.base_ring
    acc = alg.one()
    for _ in range(nfactors):
        i = rng.randint(1, 3)
        j = rng.randint(1, 3)
        while j == i:
            j = rng.randint(1, 3)
        acc = acc * alg.transvection(i, j, field.sample(rng, bound))
    return acc


def random_norm_equal_pair(alg, rng, bound=4):
    """(g, h) invertible with N(g) = N(h), via h = g * (norm-one factor)."""
    g = alg.sample_invertible(rng, bound)
    h = g * random_norm_one(alg, rng, bound=bound)
    return g, h
