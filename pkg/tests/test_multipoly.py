import itertools
import random
from fractions import Fraction as F

from albert.scalars import QQ, PrimeField
from albert.multipoly import PolyRing, proportionality


def det3_permutation_oracle(entries):
    """det of a 3x3 matrix of ring values by full permutation expansion."""
    total = None
    for perm in itertools.permutations(range(3)):
        sign = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if perm[i] > perm[j]:
                    sign = -sign
        term = entries[0][perm[0]] * entries[1][perm[1]] * entries[2][perm[2]]
        term = term if sign > 0 else -term
        total = term if total is None else total + term
    return total


def test_binomial_square():
    R = PolyRing(QQ, ["x1", "x2"])
    x1, x2 = R.gens()
    p = (x1 + x2) * (x1 + x2) - x1 * x1 - x2 * x2
    assert p == R.monomial(F(2), [1, 1])


def test_binomial_square_char2():
    R = PolyRing(PrimeField(2), 2)
    x1, x2 = R.gens()
    assert not ((x1 + x2) * (x1 + x2) - x1 * x1 - x2 * x2)


def test_generic_det_is_six_monomials():
    R = PolyRing(QQ, 9)
    g = R.gens()
    m = [[g[3 * i + j] for j in range(3)] for i in range(3)]
    # cofactor expansion
    det = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    assert det.nterms() == 6
    assert det == det3_permutation_oracle(m)


def test_ring_homomorphism_property():
    rng = random.Random(17)
    R = PolyRing(QQ, 3)
    for _ in range(50):
        a, b, c = (R.sample(rng, 5) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)


def test_proportionality():
    R = PolyRing(QQ, 2)
    x1, x2 = R.gens()
    p = x1 * x1 + x2 * 3
    assert proportionality(p * 5, p) == F(5)
    assert proportionality(p, x1) is None
    assert proportionality(R.zero(), R.zero()) == F(1)
    assert proportionality(p + x1, p) is None


def test_evaluate():
    R = PolyRing(QQ, 2)
    x1, x2 = R.gens()
    p = x1 * x1 * 3 + x2 - 7
    assert p.evaluate([F(2), F(5)]) == F(10)


def test_coefficient_lookup():
    R = PolyRing(QQ, 3)
    x1, x2, x3 = R.gens()
    p = x1 * x2 * x3 * 4 + x1 * x1
    assert p.coefficient([1, 1, 1]) == F(4)
    assert p.coefficient([2, 0, 0]) == F(1)
    assert p.coefficient([0, 1, 0]) == F(0)


def test_degree_guard():
    import pytest
    from albert.errors import AlbertError

    R = PolyRing(QQ, 1)
    (x,) = R.gens()
    p = x
    for _ in range(7):
        p = p * p  # degree 128
    with pytest.raises(AlbertError):
        p * p  # would be 256
