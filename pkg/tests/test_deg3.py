import itertools
import random
from fractions import Fraction as F

import pytest

from albert.errors import ConstraintError, NotInvertible, ParentMismatch
from albert.scalars import QQ, PrimeField, QuadraticExtension
from albert.deg3 import (
    ConjugateTranspose,
    CubicEtale,
    Cyclic,
    Matrix3,
    ProductWithOpposite,
    Switch,
    UTwist,
    membership,
    random_norm_equal_pair,
    random_norm_one,
    transvection_factorization,
)

M3 = Matrix3(QQ)

# the worked cyclic example: L = Q[x]/(x^3-3x-1) with rho(x) = 2 - x^2
CYCLIC_F = [F(-1), F(-3), F(0), F(1)]
CYCLIC_RHO = (F(2), F(0), F(-1))


def char_poly_oracle(roots):
    """Coefficients (T, S, N) of prod (X - r) for explicit eigenvalues."""
    t = sum(roots)
    s = sum(a * b for a, b in itertools.combinations(roots, 2))
    n = roots[0] * roots[1] * roots[2]
    return (t, s, n)


def adjugate_oracle(elem):
    """Adjoint of a 3x3 matrix by explicit cofactor expansion."""
    m = [list(elem.coords[0:3]), list(elem.coords[3:6]), list(elem.coords[6:9])]
    out = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != j]
            cols = [c for c in range(3) if c != i]
            minor = m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - \
                m[rows[0]][cols[1]] * m[rows[1]][cols[0]]
            out[i][j] = minor if (i + j) % 2 == 0 else -minor
    return elem.algebra.from_rows(out)


# ---- construction ----------------------------------------------------------


def test_cubic_etale_splits():
    E = CubicEtale(QQ, [F(0), F(-1), F(0), F(1)])  # x^3 - x = x(x-1)(x+1)
    assert E.dim == 3
    # idempotents of the split algebra: x(x+1)/2 etc. square to themselves
    e = E.element([F(0), F(1, 2), F(1, 2)])
    assert e * e == e


def test_matrix3_unit():
    assert M3.one().coords == M3.diag([F(1), F(1), F(1)]).coords


def test_cyclic_zero_parameter():
    L = CubicEtale(QQ, CYCLIC_F)
    with pytest.raises(ConstraintError):
        Cyclic(L, CYCLIC_RHO, F(0))


def test_inseparable_cubic_rejected():
    with pytest.raises(ConstraintError):
        CubicEtale(QQ, [F(0), F(0), F(0), F(1)])
    F3 = PrimeField(3)
    with pytest.raises(ConstraintError):
        CubicEtale(F3, [F3.from_int(-1), F3.zero(), F3.zero(), F3.one()])


def test_cyclic_rho_validation():
    L = CubicEtale(QQ, CYCLIC_F)
    with pytest.raises(ConstraintError):
        Cyclic(L, (F(0), F(1), F(0)), F(2))  # identity map
    with pytest.raises(ConstraintError):
        Cyclic(L, (F(1), F(1), F(0)), F(2))  # not a root of f


# ---- multiplication --------------------------------------------------------


def test_matrix_units():
    assert M3.matrix_unit(0, 1) * M3.matrix_unit(1, 0) == M3.matrix_unit(0, 0)


def test_cyclic_twist_rule():
    L = CubicEtale(QQ, CYCLIC_F)
    C = Cyclic(L, CYCLIC_RHO, F(2))
    z = C.element([F(0)] * 3 + [F(1), F(0), F(0)] + [F(0)] * 3)
    ell = C.element([F(0), F(1), F(0)] + [F(0)] * 6)
    rho_ell = C.element(list(CYCLIC_RHO) + [F(0)] * 6)
    assert z * ell == rho_ell * z
    assert z * z * z == C.one().scale(F(2))


def test_prodop_reversed_second_factor():
    P = ProductWithOpposite(M3)
    rng = random.Random(0)
    x1, y1, x2, y2 = (M3.sample(rng) for _ in range(4))
    assert P.pair(x1, y1) * P.pair(x2, y2) == P.pair(x1 * x2, y2 * y1)


def test_associativity_all_kinds():
    rng = random.Random(4)
    L = CubicEtale(QQ, CYCLIC_F)
    algebras = [M3, L, Cyclic(L, CYCLIC_RHO, F(2)), ProductWithOpposite(M3)]
    for alg in algebras:
        for _ in range(10):
            x, y, z = (alg.sample(rng, 3) for _ in range(3))
            assert (x * y) * z == x * (y * z)


# ---- characteristic data ---------------------------------------------------


def test_char_data_diag():
    a = M3.diag([F(1), F(2), F(3)])
    assert a.char_data() == char_poly_oracle([F(1), F(2), F(3)]) == (F(6), F(11), F(6))


def test_char_data_unit():
    assert M3.one().char_data() == (F(3), F(3), F(1))


def test_char_data_cubic_etale_generator():
    E = CubicEtale(QQ, [F(0), F(-1), F(0), F(1)])
    xbar = E.element([F(0), F(1), F(0)])
    assert xbar.char_data() == (F(0), F(-1), F(0))


def test_prodop_norm_componentwise():
    P = ProductWithOpposite(M3)
    rng = random.Random(1)
    x, y = M3.sample(rng), M3.sample(rng)
    n = P.pair(x, y).norm()
    assert P.base_ring.components(n) == (x.norm(), y.norm())


# ---- adjoint and inverse ---------------------------------------------------


def test_sharp_diag():
    a = M3.diag([F(1), F(2), F(3)])
    assert a.sharp() == M3.diag([F(6), F(3), F(2)]) == adjugate_oracle(a)


def test_sharp_unit():
    assert M3.one().sharp() == M3.one()


def test_sharp_reverses_products():
    rng = random.Random(7)
    L = CubicEtale(QQ, CYCLIC_F)
    for alg in (M3, Cyclic(L, CYCLIC_RHO, F(2))):
        for _ in range(10):
            x, y = alg.sample(rng, 3), alg.sample(rng, 3)
            assert (x * y).sharp() == y.sharp() * x.sharp()
            assert x.sharp().norm() == x.norm() * x.norm()
            assert x * x.sharp() == alg.one().scale(x.norm())
            assert x.sharp() * x == alg.one().scale(x.norm())


def test_norm_multiplicative_sampled():
    rng = random.Random(8)
    for alg in (M3, Matrix3(PrimeField(2)), Matrix3(PrimeField(3))):
        for _ in range(20):
            x, y = alg.sample(rng), alg.sample(rng)
            assert (x * y).norm() == x.norm() * y.norm()


def test_inverse():
    a = M3.diag([F(1), F(2), F(3)])
    assert a.inverse() == M3.diag([F(1), F(1, 2), F(1, 3)])
    assert (M3.one().scale(F(2))).inverse() == M3.one().scale(F(1, 2))
    with pytest.raises(NotInvertible):
        M3.matrix_unit(0, 1).inverse()


# ---- involutions -----------------------------------------------------------


def test_switch_involution():
    P = ProductWithOpposite(M3).attach_involution(Switch())
    rng = random.Random(2)
    x, y = M3.sample(rng), M3.sample(rng)
    assert P.pair(x, y).conj() == P.pair(y, x)


def test_conjugate_transpose():
    K = QuadraticExtension(QQ, F(-1))
    B = Matrix3(K).attach_involution(ConjugateTranspose())
    i = K.make(F(0), F(1))
    assert B.matrix_unit(0, 1).scale(i).conj() == B.matrix_unit(1, 0).scale(-i)


def test_utwist_with_unit_is_base():
    K = QuadraticExtension(QQ, F(-1))
    B = Matrix3(K).attach_involution(ConjugateTranspose())
    B2 = Matrix3(K).attach_involution(UTwist(ConjugateTranspose(), Matrix3(K).one()))
    rng = random.Random(3)
    s = B.sample(rng)
    assert s.conj().coords == B2.element(s.coords).conj().coords


def test_involution_properties_sampled():
    K = QuadraticExtension(QQ, F(-1))
    B = Matrix3(K).attach_involution(ConjugateTranspose())
    P = ProductWithOpposite(M3).attach_involution(Switch())
    rng = random.Random(5)
    for alg in (B, P):
        ring = alg.base_ring
        for _ in range(10):
            x, y = alg.sample(rng, 3), alg.sample(rng, 3)
            assert x.conj().conj() == x
            assert (x * y).conj() == y.conj() * x.conj()
            assert x.conj().norm() == ring.conj(x.norm())


def test_no_involution_error():
    from albert.errors import InvolutionError

    with pytest.raises(InvolutionError):
        M3.sample(random.Random(0)).conj()


# ---- membership ------------------------------------------------------------


def test_membership_unit_everything():
    K = QuadraticExtension(QQ, F(-1))
    B = Matrix3(K).attach_involution(ConjugateTranspose())
    one = B.one()
    assert membership(one, "SL1") and membership(one, "U") and membership(one, "SU")
    ok, lam = membership(one, "Sim")
    assert ok and lam == F(1)


def test_membership_transvection_sl1():
    assert membership(M3.transvection(1, 2, F(5)), "SL1")


def test_membership_unitary_diag():
    K = QuadraticExtension(QQ, F(-1))
    B = Matrix3(K).attach_involution(ConjugateTranspose())
    i = K.make(F(0), F(1))
    g = B.diag([i, -i, K.one()])
    assert membership(g, "U")
    assert membership(g, "SU")


def test_membership_noninvertible_false():
    assert not membership(M3.matrix_unit(0, 1), "SL1")


# ---- transvection factorization --------------------------------------------


def test_factorization_identity_empty():
    assert transvection_factorization(M3.one()) == []


def test_factorization_single():
    assert transvection_factorization(M3.transvection(1, 2, F(7))) == [(1, 2, F(7))]


def test_factorization_diag():
    d = M3.diag([F(2), F(1, 2), F(1)])
    fac = transvection_factorization(d)
    assert 1 <= len(fac) <= 12
    acc = M3.one()
    for (i, j, alpha) in fac:
        acc = acc * M3.transvection(i, j, alpha)
    assert acc == d


def test_factorization_random_property():
    rng = random.Random(13)
    for nfac in (1, 2, 4, 6):
        for _ in range(10):
            d = random_norm_one(M3, rng, nfactors=nfac)
            fac = transvection_factorization(d)
            assert len(fac) <= 12
            acc = M3.one()
            for (i, j, alpha) in fac:
                acc = acc * M3.transvection(i, j, alpha)
            assert acc == d


def test_factorization_char2():
    F2 = PrimeField(2)
    M2 = Matrix3(F2)
    rng = random.Random(14)
    for _ in range(15):
        d = random_norm_one(M2, rng, nfactors=4)
        fac = transvection_factorization(d)
        acc = M2.one()
        for (i, j, alpha) in fac:
            acc = acc * M2.transvection(i, j, alpha)
        assert acc == d


def test_factorization_needs_norm_one():
    with pytest.raises(ConstraintError):
        transvection_factorization(M3.diag([F(2), F(1), F(1)]))


def test_norm_equal_pair_sampler():
    rng = random.Random(15)
    for _ in range(10):
        g, h = random_norm_equal_pair(M3, rng)
        assert g.norm() == h.norm()
        assert not QQ.is_zero(g.norm())


# ---- parents ----------------------------------------------------------------


def test_parent_mismatch_rejected():
    E = CubicEtale(QQ, [F(0), F(-1), F(0), F(1)])
    with pytest.raises(ParentMismatch):
        M3.one() + E.one()
