from fractions import Fraction as F

import pytest

from albert.scalars import QQ, QuadraticExtension
from albert.deg3 import ConjugateTranspose, Matrix3
from albert.tits import FirstTits, SecondTits


@pytest.fixture(scope="session")
def J27():
    """J(matrix3(Q), lambda=2): the workhorse 27-dimensional structure."""
    return FirstTits(Matrix3(QQ), F(2))


@pytest.fixture(scope="session")
def Qi():
    return QuadraticExtension(QQ, F(-1))


@pytest.fixture(scope="session")
def B_conj(Qi):
    return Matrix3(Qi).attach_involution(ConjugateTranspose())


@pytest.fixture(scope="session")
def J_second(B_conj, Qi):
    """J(matrix3(Q(i)), conjugate-transpose, u=1, mu=1)."""
    return SecondTits(B_conj, B_conj.one(), Qi.one())
