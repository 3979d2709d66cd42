"""First and second Tits constructions as cubic norm structures.

First construction J(D, lam): carrier D + D + D with

    N((x,y,z)) = N_D(x) + lam N_D(y) + lam^{-1} N_D(z) - T_D(xyz)
    (x,y,z)^#  = (x^# - yz, lam^{-1} z^# - xy, lam y^# - zx)
    1 = (1, 0, 0)

Second construction J(B, sigma, u, mu) for an algebra B with involution of
the second kind over a quadratic etale center K and an admissible pair
(sigma(u) = u, N_B(u) = mu*conj(mu)): carrier Herm(B, sigma) + B with

    N((b,x)) = N_B(b) + T_K(mu N_B(x)) - T_B(b x u sigma(x))
    (b,x)^#  = (b^# - x u sigma(x), conj(mu) sigma(x)^# u^{-1} - b x)
    1 = (1_B, 0)

Whether the result is a division algebra depends on norm-image conditions
that are accepted as caller-supplied metadata and recorded, never evaluated.
"""

from __future__ import annotations

from .errors import AlbertError, ConstraintError
from .scalars import QuadraticExtension, SplitQuadratic, lift
from .deg3 import Element, ProductWithOpposite, Switch, vadd, vscale, vsub
from .cubicnorm import CubicJordan
from . import linalg


class FirstTits(CubicJordan):
    """J(D, lam) on the carrier D + D + D."""

    kind = "first-tits"

    def __init__(self, D, lam, division_asserted=False):
        field = D.base_ring
        if not field.is_field:
            raise AlbertError("first construction needs coordinates over a field")
        if field.is_zero(lam):
            raise ConstraintError("lambda must be nonzero", code="zero-lambda")
        self.D = D
        self.lam = lam
        self.lam_inv = field.inv(lam)
        # division holds exactly when the scale is not a reduced norm from the
        # coordinate algebra; that membership is the caller's own assertion
        self.division_asserted = division_asserted
        self.division_criterion = "scale-not-a-reduced-norm-of-coordinates"
        m = D.dim
        unit = D.one_coords(field) + D.zero_coords(field) + D.zero_coords(field)
        super().__init__(field, 3 * m, unit, label=f"first_tits({D.descriptor_string()},lambda={field.format(lam)})")

    def blocks(self, coords):
        m = self.D.dim
        return tuple(coords[0:m]), tuple(coords[m:2 * m]), tuple(coords[2 * m:3 * m])

    def assemble(self, x, y, z):
        return tuple(x) + tuple(y) + tuple(z)

    def embed(self, elem, block=0):
        """Carrier vector with the element's coordinates in one block."""
        zero = self.D.zero_coords(elem.ring if isinstance(elem, Element) else self.field)
        coords = elem.coords if isinstance(elem, Element) else tuple(elem)
        parts = [zero, zero, zero]
        parts[block] = coords
        return self.assemble(*parts)

    def block_elements(self, vec, ring=None):
        ring = ring or self.field
        return tuple(Element(self.D, ring, b) for b in self.blocks(vec))

    def norm_program(self, S, coords):
        D = self.D
        x, y, z = self.blocks(coords)
        lam = lift(S, self.field, self.lam)
        lam_inv = lift(S, self.field, self.lam_inv)
        nx = D.norm(S, x)
        ny = D.norm(S, y)
        nz = D.norm(S, z)
        txyz = D.trace_of_product(S, D.mul(S, x, y), z)
        return nx + lam * ny + lam_inv * nz - txyz

    def sharp_program(self, S, coords):
        D = self.D
        x, y, z = self.blocks(coords)
        lam = lift(S, self.field, self.lam)
        lam_inv = lift(S, self.field, self.lam_inv)
        first = vsub(D.sharp(S, x), D.mul(S, y, z))
        second = vsub(vscale(lam_inv, D.sharp(S, z)), D.mul(S, x, y))
        third = vsub(vscale(lam, D.sharp(S, y)), D.mul(S, z, x))
        return first + second + third


def first_tits(D, lam, division_asserted=False):
    return FirstTits(D, lam, division_asserted)


class SecondTits(CubicJordan):
    """J(B, sigma, u, mu) on the carrier Herm(B, sigma) + B, over the bottom
    field of B's quadratic etale center."""

    kind = "second-tits"

    def __init__(self, B, u, mu, division_asserted=False):
        K = B.base_ring
        if not isinstance(K, (QuadraticExtension, SplitQuadratic)):
            raise ConstraintError("second construction needs a quadratic etale center")
        if B.involution is None:
            raise ConstraintError("second construction needs an involution of the second kind")
        field = K.base
        self.B = B
        self.K = K
        if not isinstance(u, Element):
            u = B.element(u)
        self.u = u
        self.mu = mu
        self.mu_bar = K.conj(mu)
        if u.conj() != u:
            raise ConstraintError(
                "inadmissible pair: sigma(u) != u", code="inadmissible-pair"
            )
        if K.is_zero(mu):
            raise ConstraintError("inadmissible pair: mu = 0", code="inadmissible-pair")
        if u.norm() != mu * self.mu_bar:
            raise ConstraintError(
                "inadmissible pair: N_B(u) != mu*conj(mu)", code="inadmissible-pair"
            )
        self.u_inv = u.inverse()
        self.division_asserted = division_asserted
        self.division_criterion = "mu-not-a-norm-from-B"

        self._init_hermitian(field)
        m = B.dim
        unit_b = self._project_hermitian_base(B.one_coords(K))
        unit = tuple(unit_b) + (field.zero(),) * (2 * m)
        label = (
            f"second_tits({B.descriptor_string()},{B.involution.descriptor_string()},"
            f"u=[{','.join(K.format(c) for c in u.coords)}],mu={K.format(mu)})"
        )
        super().__init__(field, 3 * m, unit, label=label)

    # hermitian bookkeeping: B has m coordinates over K, hence 2m over k; the
    # k-coordinate layout interleaves the two K-components of each coordinate

    def _k_coords(self, coords_K):
        out = []
        for v in coords_K:
            a, b = self.K.components(v)
            out.append(a)
            out.append(b)
        return out

    def _init_hermitian(self, field):
        B, K = self.B, self.K
        m = B.dim
        sigma_cols = []
        for j in range(2 * m):
            kvec = [field.zero()] * (2 * m)
            kvec[j] = field.one()
            coords_K = [K.make(kvec[2 * i], kvec[2 * i + 1]) for i in range(m)]
            img = B.involution_apply(K, coords_K)
            sigma_cols.append(self._k_coords(img))
        sigma_mat = [[sigma_cols[j][i] for j in range(2 * m)] for i in range(2 * m)]
        delta = linalg.mat_sub(sigma_mat, linalg.identity(field, 2 * m))
        herm_k = linalg.kernel(field, delta)
        if len(herm_k) != m:
            raise ConstraintError(
                f"hermitian part has k-dimension {len(herm_k)}, expected {m}"
            )
        self._herm_k = herm_k
        self._herm_K = [
            tuple(K.make(v[2 * i], v[2 * i + 1]) for i in range(m)) for v in herm_k
        ]
        # left inverse of the 2m x m matrix with the hermitian basis as
        # columns, realized as (pivot row selection, inverse of the m x m minor)
        M = [[herm_k[j][i] for j in range(m)] for i in range(2 * m)]
        Mt = [[M[i][j] for i in range(2 * m)] for j in range(m)]
        tmp = [list(row) for row in Mt]
        piv = []
        r = 0
        for c in range(2 * m):
            found = None
            for i in range(r, m):
                if not field.is_zero(tmp[i][c]):
                    found = i
                    break
            if found is None:
                continue
            tmp[r], tmp[found] = tmp[found], tmp[r]
            inv_p = field.inv(tmp[r][c])
            tmp[r] = [v * inv_p for v in tmp[r]]
            for i in range(m):
                if i != r and not field.is_zero(tmp[i][c]):
                    f = tmp[i][c]
                    tmp[i] = [a - f * b for a, b in zip(tmp[i], tmp[r])]
            piv.append(c)
            r += 1
            if r == m:
                break
        if len(piv) != m:
            raise AlbertError("hermitian basis matrix is rank deficient")
        minor = [[M[piv[i]][j] for j in range(m)] for i in range(m)]
        self._herm_piv = piv
        self._herm_pinv = linalg.inverse(field, minor)

    def _project_hermitian_base(self, coords_K):
        kvec = self._k_coords(coords_K)
        sel = [kvec[i] for i in self._herm_piv]
        return linalg.mat_vec(self._herm_pinv, sel)

    def extension(self, S):
        """The center base-changed along S, as a ring over S."""
        return self.B.extend_ring(S)

    def lift_center(self, KS, v):
        """Lift a center scalar into the base-changed center."""
        return self.K.lift_element(KS, v, lambda w: lift(KS.base, self.field, w))

    def _base_part(self, KS, v):
        """Extract the bottom component of a conjugation-invariant value."""
        a, b = KS.components(v)
        if isinstance(KS, SplitQuadratic):
            if a != b:
                raise AlbertError("value is not conjugation invariant")
            return a
        if not KS.base.is_zero(b):
            raise AlbertError("value is not conjugation invariant")
        return a

    def parts(self, S, coords):
        """(KS, b, x): the hermitian block as B-coordinates over the extended
        center, and the free block likewise."""
        B, K = self.B, self.K
        m = B.dim
        KS = self.extension(S)
        b = tuple(B.zero_coords(KS))
        for i in range(m):
            c = coords[i]
            if not S.is_zero(c):
                h = B.lift_coords(KS, self._herm_K[i])
                scaled = tuple(self._scale_center(KS, c, v) for v in h)
                b = vadd(b, scaled)
        x = tuple(KS.make(coords[m + 2 * i], coords[m + 2 * i + 1]) for i in range(m))
        return KS, b, x

    @staticmethod
    def _scale_center(KS, s, v):
        a, b = KS.components(v)
        return KS.make(s * a, s * b)

    def embed_hermitian(self, b_elem):
        """Carrier vector of a hermitian element of B."""
        if b_elem.conj() != b_elem:
            raise ConstraintError("element is not hermitian")
        m = self.B.dim
        coords = self._project_hermitian_base(b_elem.coords)
        return tuple(coords) + (self.field.zero(),) * (2 * m)

    def embed_b(self, x_elem):
        """Carrier vector of an element of the free block."""
        m = self.B.dim
        z = self.field.zero()
        out = [z] * m
        for v in x_elem.coords:
            a, b = self.K.components(v)
            out.append(a)
            out.append(b)
        return tuple(out)

    def pair_to_vec(self, b_elem, x_elem):
        return tuple(
            p + q for p, q in zip(self.embed_hermitian(b_elem), self.embed_b(x_elem))
        )

    def vec_to_pair(self, vec, ring=None):
        """(b, x) as elements of B over the (extended) center."""
        ring = ring or self.field
        KS, b, x = self.parts(ring, vec)
        return Element(self.B, KS, b), Element(self.B, KS, x)

    def norm_program(self, S, coords):
        B = self.B
        KS, b, x = self.parts(S, coords)
        mu = self.lift_center(KS, self.mu)
        u = B.lift_coords(KS, self.u.coords)
        sx = B.involution_apply(KS, x)
        nb = self._base_part(KS, B.norm(KS, b))
        tmu = KS.trace_to_base(mu * B.norm(KS, x))
        w = B.mul(KS, x, B.mul(KS, u, sx))
        tb = self._base_part(KS, B.trace_of_product(KS, b, w))
        return nb + tmu - tb

    def sharp_program(self, S, coords):
        B = self.B
        m = B.dim
        KS, b, x = self.parts(S, coords)
        mu_bar = self.lift_center(KS, self.mu_bar)
        u = B.lift_coords(KS, self.u.coords)
        u_inv = B.lift_coords(KS, self.u_inv.coords)
        sx = B.involution_apply(KS, x)
        first = vsub(B.sharp(KS, b), B.mul(KS, x, B.mul(KS, u, sx)))
        second = vsub(
            vscale(mu_bar, B.mul(KS, B.sharp(KS, sx), u_inv)),
            B.mul(KS, b, x),
        )
        # project the hermitian block back to carrier coordinates
        kvec = []
        for v in first:
            a, bb = KS.components(v)
            kvec.append(a)
            kvec.append(bb)
        sel = [kvec[i] for i in self._herm_piv]
        k = self.field
        out_b = []
        for row in self._herm_pinv:
            acc = S.zero()
            for cij, s in zip(row, sel):
                if not k.is_zero(cij):
                    acc = acc + lift(S, k, cij) * s
            out_b.append(acc)
        # consistency: the projected coordinates must reconstruct the block
        recon = tuple(B.zero_coords(KS))
        for i in range(m):
            if not S.is_zero(out_b[i]):
                h = B.lift_coords(KS, self._herm_K[i])
                recon = vadd(recon, tuple(self._scale_center(KS, out_b[i], v) for v in h))
        if tuple(recon) != tuple(first):
            raise AlbertError("adjoint first component failed hermitian projection")
        out_x = []
        for v in second:
            a, bb = KS.components(v)
            out_x.append(a)
            out_x.append(bb)
        return tuple(out_b) + tuple(out_x)


def second_tits(B, u, mu, division_asserted=False):
    return SecondTits(B, u, mu, division_asserted)


def embed_first_summand(J):
    """Inclusion matrix of the distinguished first summand.

    For a first construction this is the coordinate algebra D in the first
    block; for a second construction, the hermitian part.  Columns are images
    of the summand's basis vectors.
    """
    field = J.field
    n = J.dim
    if isinstance(J, FirstTits):
        m = J.D.dim
    elif isinstance(J, SecondTits):
        m = J.B.dim
    else:
        raise AlbertError("no distinguished first summand")
    z, o = field.zero(), field.one()
    return [[o if (i == j and i < m) else z for j in range(m)] for i in range(n)]


def split_identify(D, mu):
    """Identify J(D x D^op, switch, 1, mu) with the first construction J(D, lam).

    ``mu`` is a split-pair center scalar; admissibility forces its second
    component to be the inverse of the first, and lam is the first component.
    The identification sends a hermitian (diagonal) element to the first
    block and the two opposite-algebra components to the second and third
    blocks.  The returned map is certified by coefficient-level norm
    comparison; the lam value is confirmed by that oracle, not assumed.
    """
    from .maps import certify_between

    field = D.base_ring
    prodop = ProductWithOpposite(D).attach_involution(Switch())
    K = prodop.base_ring
    if not isinstance(mu, type(K.zero())):
        mu = K.make(mu[0], mu[1])
    J2 = SecondTits(prodop, prodop.one(), mu)
    lam = K.components(mu)[0]
    J1 = FirstTits(D, lam)
    m = D.dim
    n = 3 * m
    z = field.zero()
    cols = []
    for i in range(m):
        # hermitian basis vector -> its diagonal component in the first block
        first = [K.components(v)[0] for v in J2._herm_K[i]]
        cols.append(list(first) + [z] * (2 * m))
    for i in range(m):
        col_a = [z] * n
        col_a[m + i] = field.one()
        col_b = [z] * n
        col_b[2 * m + i] = field.one()
        cols.append(col_a)
        cols.append(col_b)
    matrix = [[cols[j][i] for j in range(n)] for i in range(n)]
    fmap = certify_between(J1, J2, matrix)
    if fmap.multiplier != field.one():
        raise AlbertError(
            "split identification oracle failed: multiplier is not 1",
            code="identification-failed",
        )
    img_unit = linalg.mat_vec(matrix, list(J2.unit))
    if tuple(img_unit) != tuple(J1.unit):
        raise AlbertError(
            "split identification oracle failed: unit not preserved",
            code="identification-failed",
        )
    return fmap
