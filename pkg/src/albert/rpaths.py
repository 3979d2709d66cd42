"""One-parameter rational families of norm similarities and equivalence
certificates.

An :class:`RPath` is an n x n matrix over k(t) that is a norm similarity at
the generic fiber (N(f(X)) = nu(t) N(X) at the coefficient level in k(t)),
with every entry and the multiplier regular and the multiplier nonvanishing
at t = 0 and t = 1.  The two endpoint specializations are certified
separately, from scratch, so a checker never trusts the builder.

An :class:`RCertificate` chains paths from a target automorphism to the
identity: the first path starts at the target, consecutive endpoints agree,
and the last path ends at the identity map.  Certificates are built here for
the explicitly parameterized stabilizer maps of a split first construction;
paths are stored as plain matrices over k(t), never as symbolic compositions,
precisely so the independent checker re-derives everything from the stored
entries.
"""

from __future__ import annotations

from .errors import AlbertError, ConstraintError, NotInvertible, PathError
from .scalars import lift
from .upoly import UPoly, RationalFunctionField, poly_lcm
from .multipoly import MPoly, PolyRing
from .deg3 import CubicEtale, Element, Matrix3, transvection_factorization, vadd, vscale
from .tits import FirstTits
from .maps import SimilarityMap, aut_conj_I, aut_J, aut_stab_D, certify, compose
from . import linalg

_BITS = 8


class RPath:
    """A certified one-parameter family of norm similarities."""

    __slots__ = ("parent", "matrix", "multiplier", "start", "end")

    def __init__(self, parent, matrix, multiplier, start, end):
        self.parent = parent
        self.matrix = matrix
        self.multiplier = multiplier
        self.start = start
        self.end = end

    def evaluate(self, point):
        """Entrywise specialization at a non-pole parameter value."""
        Rt = self.matrix[0][0].ring
        return [[Rt.evaluate(v, point) for v in row] for row in self.matrix]

    def is_automorphism_family(self):
        """Whether the multiplier is identically 1 in k(t)."""
        Rt = self.multiplier.ring
        return self.multiplier == Rt.one()

    def __repr__(self):
        return f"<RPath on {self.parent.label}>"


def function_field(J):
    return RationalFunctionField(J.field, "t")


def path_certify(J, matrix):
    """Certify a matrix over k(t) as a one-parameter family of similarities.

    Denominators are cleared, the generic-fiber similarity identity is decided
    at the coefficient level in k[t, X], regularity and nonvanishing of the
    multiplier at 0 and 1 are checked syntactically on canonical forms, and
    both endpoint specializations are certified independently.
    """
    field = J.field
    n = J.dim
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise AlbertError("path matrix has wrong shape")
    Rt = matrix[0][0].ring
    # entry regularity at the endpoints is a cheap syntactic test on the
    # canonical denominators; run it before the symbolic work
    for point, name in ((field.zero(), "0"), (field.one(), "1")):
        for row in matrix:
            for v in row:
                if not Rt.is_regular_at(v, point):
                    raise PathError(
                        f"matrix entry has a pole at t = {name}",
                        code="pole-at-endpoint",
                    )
    one_p = UPoly.const(field.one(), field)
    # common denominator and cleared numerators
    q = one_p
    for row in matrix:
        for v in row:
            q = poly_lcm(q, v.den)
    cleared = [
        [v.num * q.exact_div(v.den) for v in row]
        for row in matrix
    ]
    # generic fiber check in k[t, X1..Xn]: variable 0 is t
    ring = PolyRing(field, ["t"] + [f"x{i+1}" for i in range(n)])
    gens = ring.gens()
    fX = []
    for i in range(n):
        terms = {}
        for j in range(n):
            p = cleared[i][j]
            for d, c in enumerate(p.coeffs):
                if not field.is_zero(c):
                    key = (1 << (_BITS * (j + 1))) + d
                    terms[key] = terms.get(key, field.zero()) + c
            # accumulated coefficients of t^d x_j
        terms = {k: c for k, c in terms.items() if c}
        deg = max((p.degree for p in cleared[i] if p.degree >= 0), default=0)
        fX.append(MPoly(terms, ring, deg + 1))
    composed = J.norm_program(ring, fX)
    plain = J.norm_program(ring, list(gens[1:]))
    if not plain.terms:
        raise AlbertError("norm form vanished; invalid structure")
    key0 = next(iter(plain.terms))
    beta = plain.terms[key0]
    # collect the t-profile of the composed form at the reference X-monomial
    profile = {}
    for k, c in composed.terms.items():
        if (k >> _BITS) == (key0 >> _BITS):
            profile[k & 0xFF] = c
    w_coeffs = [field.zero()] * (max(profile, default=0) + 1)
    binv = field.inv(beta)
    for d, c in profile.items():
        w_coeffs[d] = c * binv
    w = UPoly(w_coeffs, field)
    w_mp = MPoly(
        {d: c for d, c in enumerate(w.coeffs) if not field.is_zero(c)},
        ring,
        max(w.degree, 0),
    )
    if composed != plain * w_mp:
        raise PathError(
            "family is not a norm similarity at the generic fiber",
            code="generic-fiber-failure",
        )
    if not w:
        raise PathError(
            "multiplier vanishes identically", code="generic-fiber-failure"
        )
    q3 = q * q * q
    nu = _ratfunc(Rt, w, q3)
    # multiplier regularity and nonvanishing at 0 and 1
    zero, one = field.zero(), field.one()
    for point, name in ((zero, "0"), (one, "1")):
        if not Rt.is_regular_at(nu, point):
            raise PathError(
                f"multiplier has a pole at t = {name}", code="pole-at-endpoint"
            )
        if field.is_zero(Rt.evaluate(nu, point)):
            raise PathError(
                f"multiplier vanishes at t = {name}",
                code="multiplier-vanishes-at-endpoint",
            )
    m0 = [[Rt.evaluate(v, zero) for v in row] for row in matrix]
    m1 = [[Rt.evaluate(v, one) for v in row] for row in matrix]
    start = certify(J, m0)
    end = certify(J, m1)
    if start.multiplier != Rt.evaluate(nu, zero) or end.multiplier != Rt.evaluate(nu, one):
        raise AlbertError("endpoint multipliers disagree with the family multiplier")
    return RPath(J, [list(r) for r in matrix], nu, start, end)


def _ratfunc(Rt, num, den):
    from .upoly import RatFunc

    return RatFunc(num, den, Rt)


def constant_path(J, simmap):
    """The constant family at a certified map."""
    Rt = function_field(J)
    matrix = [[Rt.from_base(v) for v in row] for row in simmap.matrix]
    return path_certify(J, matrix)


def compose_path_with_map(path, simmap):
    """The family t -> f(g(t)) for a constant certified f; used to shift a
    contraction so it starts at a composite map."""
    J = path.parent
    Rt = path.matrix[0][0].ring
    lifted = [[Rt.from_base(v) for v in row] for row in simmap.matrix]
    product = linalg.mat_mul(lifted, path.matrix)
    return path_certify(J, product)


def conj_path(J, a):
    """The contraction of coordinatewise conjugation: conjugate every block by
    a_t = (1-t) a + t.  Starts at the conjugation map of a, ends at the
    identity; denominators divide powers of N(a_t), which is nonzero at both
    endpoints."""
    if not isinstance(J, FirstTits):
        raise AlbertError("conjugation paths live on a first construction")
    D = J.D
    if not isinstance(a, Element):
        a = D.element(a)
    if not a.is_invertible():
        raise NotInvertible("conjugating element must be invertible")
    Rt = function_field(J)
    t = Rt.gen()
    one_mt = Rt.one() - t
    a_t = vadd(
        vscale(one_mt, D.lift_coords(Rt, a.coords)),
        vscale(t, D.one_coords(Rt)),
    )
    a_t_inv = D.inverse_coords(Rt, a_t)
    cols = []
    for block in range(3):
        for e in D.basis(Rt):
            img = D.mul(Rt, D.mul(Rt, a_t, e.coords), a_t_inv)
            parts = [D.zero_coords(Rt)] * 3
            parts[block] = img
            cols.append(parts[0] + parts[1] + parts[2])
    matrix = [[cols[j][i] for j in range(J.dim)] for i in range(J.dim)]
    path = path_certify(J, matrix)
    expected0 = aut_conj_I(J, a)
    if not linalg.mat_eq(path.start.matrix, expected0.matrix):
        raise AlbertError("conjugation path start mismatch")
    if not path.end.is_identity():
        raise AlbertError("conjugation path end is not the identity")
    return path


def transvection_path(alg, d, rng_factors=None):
    """gamma(t): scale each transvection factor E_ij(alpha) of d to
    E_ij((1-t) alpha); polynomial in t, gamma(0) = d, gamma(1) = 1 and
    N(gamma(t)) = 1 identically."""
    factors = rng_factors if rng_factors is not None else transvection_factorization(d)
    field = alg.base_ring
    Rt = RationalFunctionField(field, "t")
    t = Rt.gen()
    one_mt = Rt.one() - t
    acc = alg.one(Rt)
    for (i, j, alpha) in factors:
        acc = acc * alg.transvection(i, j, one_mt * Rt.from_base(alpha), Rt)
    return acc


def sl1_path_split(J, d, variant="B"):
    """The J-map family of a norm-one d over split coordinates.

    The coordinate algebra must be split (3x3 matrices over the base field):
    the elementary factorization that realizes the family constructively does
    not exist for division coordinate algebras, which is a documented
    limitation.
    """
    if not isinstance(J, FirstTits):
        raise AlbertError("SL1 paths live on a first construction")
    D = J.D
    if not isinstance(D, Matrix3) or not D.base_ring.is_field or \
            D.base_ring != J.field:
        raise ConstraintError(
            "SL1 path needs split matrix coordinates", code="non-split-coordinates"
        )
    if not isinstance(d, Element):
        d = D.element(d)
    if d.norm() != J.field.one():
        raise ConstraintError("element must have reduced norm 1", code="not-norm-one")
    gamma = transvection_path(D, d)
    Rt = gamma.ring
    gamma_inv = D.inverse_coords(Rt, gamma.coords)
    cols = []
    zero = D.zero_coords(Rt)
    for block in range(3):
        for e in D.basis(Rt):
            parts = [zero, zero, zero]
            if block == 0:
                parts[0] = e.coords
            elif block == 1:
                parts[1] = D.mul(Rt, e.coords, gamma.coords)
            else:
                if variant == "B":
                    parts[2] = D.mul(Rt, gamma_inv, e.coords)
                else:
                    parts[2] = D.mul(Rt, D.mul(Rt, gamma_inv, e.coords), gamma.coords)
            cols.append(parts[0] + parts[1] + parts[2])
    matrix = [[cols[j][i] for j in range(J.dim)] for i in range(J.dim)]
    path = path_certify(J, matrix)
    expected0 = aut_J(J, d, variant)
    if not linalg.mat_eq(path.start.matrix, expected0.matrix):
        raise AlbertError("SL1 path start mismatch")
    if not path.end.is_identity():
        raise AlbertError("SL1 path end is not the identity")
    return path


def str_path(J, a, b, d, gamma=None):
    """The contraction of a first-summand-stabilizing similarity:

        (x, y, z) -> (a_t x b_t, b_t^# y c_t, c_t^{-1} z a_t^#)

    with a_t = (1-t)a + t, b_t = (1-t)b + t, c_t = a_t b_t^{-1} gamma(t) and
    gamma a norm-one family contracting d.  Ends at the identity; starts at
    the similarity built from (a, b, a b^{-1} d)."""
    if not isinstance(J, FirstTits):
        raise AlbertError("structure paths live on a first construction")
    D = J.D
    a = a if isinstance(a, Element) else D.element(a)
    b = b if isinstance(b, Element) else D.element(b)
    d = d if isinstance(d, Element) else D.element(d)
    if not a.is_invertible() or not b.is_invertible():
        raise NotInvertible("a and b must be invertible")
    if d.norm() != J.field.one():
        raise ConstraintError("d must have reduced norm 1", code="not-norm-one")
    if gamma is None:
        gamma = transvection_path(D, d)
    Rt = gamma.ring
    t = Rt.gen()
    one_mt = Rt.one() - t
    lift_c = lambda e: D.lift_coords(Rt, e.coords)
    a_t = vadd(vscale(one_mt, lift_c(a)), vscale(t, D.one_coords(Rt)))
    b_t = vadd(vscale(one_mt, lift_c(b)), vscale(t, D.one_coords(Rt)))
    b_t_inv = D.inverse_coords(Rt, b_t)
    c_t = D.mul(Rt, D.mul(Rt, a_t, b_t_inv), gamma.coords)
    c_t_inv = D.inverse_coords(Rt, c_t)
    a_t_sharp = D.sharp(Rt, a_t)
    b_t_sharp = D.sharp(Rt, b_t)
    cols = []
    zero = D.zero_coords(Rt)
    for block in range(3):
        for e in D.basis(Rt):
            parts = [zero, zero, zero]
            if block == 0:
                parts[0] = D.mul(Rt, D.mul(Rt, a_t, e.coords), b_t)
            elif block == 1:
                parts[1] = D.mul(Rt, D.mul(Rt, b_t_sharp, e.coords), c_t)
            else:
                parts[2] = D.mul(Rt, D.mul(Rt, c_t_inv, e.coords), a_t_sharp)
            cols.append(parts[0] + parts[1] + parts[2])
    matrix = [[cols[j][i] for j in range(J.dim)] for i in range(J.dim)]
    path = path_certify(J, matrix)
    if not path.end.is_identity():
        raise AlbertError("structure path end is not the identity")
    return path


def chi_map(J, a, middle="element-scaled"):
    """The norm similarity chi = (homothety by N(a)) o U_{(0,0,1)} o U_{(0,m,0)}
    on a first construction over a commutative cubic coordinate algebra.

    Two middle operands are exposed: ``unit-scaled`` takes m = N(a)^{-1} 1 and
    ``element-scaled`` takes m = N(a)^{-1} a.  With this module's sign and
    pairing conventions the element-scaled choice satisfies chi((a,0,0)) =
    (1,0,0); the unit-scaled one sends it to (N(a)^{-1} a, 0, 0) instead.  The
    disambiguation is decided by :func:`chi_unit_check`, not presumed.
    """
    if not isinstance(J, FirstTits) or not isinstance(J.D, CubicEtale):
        raise AlbertError("chi lives on a first construction over a cubic etale algebra")
    E = J.D
    field = J.field
    a = a if isinstance(a, Element) else E.element(a)
    na = a.norm()
    if field.is_zero(na):
        raise NotInvertible("element must be invertible")
    na_inv = field.inv(na)
    if middle == "unit-scaled":
        m_elem = E.one().scale(na_inv)
    elif middle == "element-scaled":
        m_elem = a.scale(na_inv)
    else:
        raise AlbertError(f"unknown middle operand choice {middle!r}")
    w1 = J.embed(m_elem, 1)
    w2 = J.embed(E.one(), 2)
    u1 = J.u_matrix(w1)
    u2 = J.u_matrix(w2)
    hom = [[na if i == j else field.zero() for j in range(J.dim)] for i in range(J.dim)]
    matrix = linalg.mat_mul(hom, linalg.mat_mul(u2, u1))
    return certify(J, matrix)


def chi_unit_check(J, a):
    """Evaluate chi((a,0,0)) for both middle-operand choices.

    Returns {choice: (SimilarityMap, maps_to_unit: bool)}."""
    E = J.D
    a = a if isinstance(a, Element) else E.element(a)
    out = {}
    for choice in ("unit-scaled", "element-scaled"):
        f = chi_map(J, a, choice)
        image = f.apply(J.embed(a, 0))
        out[choice] = (f, tuple(image) == tuple(J.unit))
    return out


class RCertificate:
    """A chain of one-parameter families connecting a target automorphism to
    the identity.

    Only raw matrices are stored: the target over the base field and one
    matrix over k(t) per path.  The checker re-derives everything from them.
    """

    __slots__ = ("parent", "target_matrix", "path_matrices")

    def __init__(self, parent, target_matrix, path_matrices):
        self.parent = parent
        self.target_matrix = [list(row) for row in target_matrix]
        self.path_matrices = [[list(row) for row in m] for m in path_matrices]

    def __repr__(self):
        return f"<RCertificate on {self.parent.label}, {len(self.path_matrices)} paths>"


def cert_build_stab(J, a, b):
    """Certificate contracting the stabilizer automorphism of the pair (a, b)
    with N(a) = N(b) on a split first construction.

    The map factors through the J-map of a b^{-1} composed with conjugation by
    a; the conjugation factor is contracted by ``conj_path`` and the J-map
    factor by the elementary ``sl1_path_split`` family, giving a chain of
    length two."""
    if not isinstance(J, FirstTits):
        raise AlbertError("certificates built here live on a first construction")
    D = J.D
    a = a if isinstance(a, Element) else D.element(a)
    b = b if isinstance(b, Element) else D.element(b)
    phi = aut_stab_D(J, a, b)
    p = a * b.inverse()
    jmap = aut_J(J, p, "B")
    theta = conj_path(J, a)
    first = compose_path_with_map(theta, jmap)
    second = sl1_path_split(J, p)
    cert = RCertificate(J, phi.matrix, [first.matrix, second.matrix])
    report = cert_check(cert)
    if not report.all_pass:
        raise AlbertError("freshly built certificate failed its own check")
    return cert


class CertReport:
    """Itemized validation results for a certificate."""

    def __init__(self):
        self.items = []

    def record(self, check_id, passed, details=""):
        self.items.append((check_id, bool(passed), details))

    @property
    def all_pass(self):
        return all(p for _, p, _ in self.items)

    def render_lines(self):
        out = []
        for check_id, passed, details in self.items:
            verdict = "pass" if passed else "fail"
            suffix = f" {details}" if details else ""
            out.append(f"cert {check_id} {verdict}{suffix}")
        return out

    def render(self):
        return "\n".join(self.render_lines())


def cert_check(cert):
    """Independent validation of a certificate.

    Re-certifies the target, re-certifies every path from its raw matrix,
    and verifies the endpoint chain from the target to the identity.  Nothing
    the builder computed is trusted; only matrices are read."""
    report = CertReport()
    J = cert.parent
    try:
        target = certify(J, cert.target_matrix)
        report.record("target-certified", True)
        if not target.is_automorphism:
            report.record("target-automorphism", False, "multiplier or base point off")
        else:
            report.record("target-automorphism", True)
    except AlbertError as exc:
        report.record("target-certified", False, str(exc))
        return report
    paths = []
    for idx, matrix in enumerate(cert.path_matrices):
        try:
            fresh = path_certify(J, matrix)
            paths.append(fresh)
            report.record(f"path-{idx+1}-certified", True)
            if target.is_automorphism:
                report.record(
                    f"path-{idx+1}-multiplier-one",
                    fresh.is_automorphism_family(),
                    "" if fresh.is_automorphism_family() else "multiplier varies",
                )
        except AlbertError as exc:
            report.record(f"path-{idx+1}-certified", False, f"{exc.code}: {exc}")
            return report
    if not paths:
        report.record("chain-nonempty", False, "certificate has no paths")
        return report
    report.record(
        "chain-start-matches-target",
        linalg.mat_eq(paths[0].start.matrix, cert.target_matrix),
    )
    for idx in range(len(paths) - 1):
        report.record(
            f"chain-link-{idx+1}",
            linalg.mat_eq(paths[idx].end.matrix, paths[idx + 1].start.matrix),
        )
    report.record("chain-ends-at-identity", paths[-1].end.is_identity())
    return report
