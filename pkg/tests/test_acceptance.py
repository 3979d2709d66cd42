"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line (visible with ``pytest -s``) and
asserts the criterion at its stated tolerance; every tolerance here is exact
equality of canonical forms, since all arithmetic is exact.
"""

import random
import time
from fractions import Fraction as F

import pytest

from albert import linalg, maps
from albert.errors import ConstraintError
from albert.scalars import QQ, PrimeField
from albert.deg3 import (
    CubicEtale,
    Matrix3,
    random_norm_equal_pair,
    random_norm_one,
)
from albert.cubicnorm import DPlus
from albert.tits import FirstTits, SecondTits, split_identify
from albert.certfile import load_certificate, render_certificate, save_certificate
from albert.rpaths import (
    cert_build_stab,
    cert_check,
    chi_unit_check,
    conj_path,
    sl1_path_split,
)

M3 = Matrix3(QQ)


def _verdict(num, name, ok, detail=""):
    mark = "PASS" if ok else "FAIL"
    suffix = f"  [{detail}]" if detail else ""
    print(f"ACCEPTANCE {num:02d} {name}: {mark}{suffix}")
    assert ok, f"acceptance criterion {num} ({name}) failed"


def test_criterion_01_axiom_suite_symbolic(J27):
    started = time.monotonic()
    rep = J27.axiom_suite(sample_count=25, seed=1)
    elapsed = time.monotonic() - started
    ok = rep.all_pass and elapsed < 60.0
    _verdict(1, "axiom suite on the rational 27-dim structure", ok,
             f"{elapsed:.1f}s")


def test_criterion_02_characteristic_robustness():
    results = []
    for p, lam in ((2, 1), (3, 2)):
        Fp = PrimeField(p)
        J = FirstTits(Matrix3(Fp), Fp.from_int(lam))
        results.append(J.axiom_suite(sample_count=25, seed=2).all_pass)
    _verdict(2, "axiom suite in characteristics 2 and 3", all(results))


def test_criterion_03_quadratic_jordan_check(J27):
    rng = random.Random(3)
    failures = 0
    for _ in range(25):
        x = J27.sample_vec(rng, 3)
        y = J27.sample_vec(rng, 3)
        ux, uy = J27.u_matrix(x), J27.u_matrix(y)
        uxy = J27.u_matrix(J27.u_op(x, y))
        if not linalg.mat_eq(uxy, linalg.mat_mul(ux, linalg.mat_mul(uy, ux))):
            failures += 1
    _verdict(3, "U-operator composition rule on 25 seeded pairs", failures == 0,
             f"{failures} failures")


def test_criterion_04_degree_identities(J27):
    ring, X = J27.generic_vectors(1)
    nsharp = J27.norm_program(ring, J27.sharp_program(ring, X))
    nx = J27.norm_program(ring, X)
    first = nsharp == nx * nx
    ring2, X2, Y2 = J27.generic_vectors(2)
    nu = J27.norm_program(ring2, J27.u_op(X2, Y2, S=ring2))
    nx2 = J27.norm_program(ring2, X2)
    ny2 = J27.norm_program(ring2, Y2)
    second = nu == nx2 * nx2 * ny2
    _verdict(4, "degree identities for adjoint and U-operator, symbolic",
             first and second)


def test_criterion_05_extension_automorphisms(J27):
    rng = random.Random(5)
    ok = True
    for _ in range(10):
        g, h = random_norm_equal_pair(M3, rng, bound=4)
        f = maps.aut_ext_D(J27, g, h)
        if f.multiplier != F(1) or not f.is_automorphism:
            ok = False
        if f.apply(J27.unit) != tuple(J27.unit):
            ok = False
    rejected = False
    try:
        maps.aut_ext_D(J27, M3.diag([F(1), F(2), F(3)]), M3.one())
    except ConstraintError:
        rejected = True
    _verdict(5, "first-summand extension automorphisms on 10 seeded pairs",
             ok and rejected)


def test_criterion_06_multiplier_law(J27):
    rng = random.Random(6)
    # the law is confirmed on one instance by the certify oracle, then
    # asserted on ten seeded admissible tuples
    base = maps.str_ext_D(J27, F(2), M3.one(), M3.one(), M3.one())
    confirmed = base.multiplier == F(8)
    ok = confirmed
    for _ in range(10):
        gamma = QQ.sample_nonzero(rng, 4)
        b = M3.sample_invertible(rng, 3)
        c = M3.sample_invertible(rng, 3)
        a = b * c * random_norm_one(M3, rng)
        f = maps.str_ext_D(J27, gamma, a, b, c)
        if f.multiplier != gamma ** 3 * a.norm() * b.norm():
            ok = False
    _verdict(6, "similarity multiplier law on 10 seeded admissible tuples", ok)


def test_criterion_07_jmap_disambiguation(J27):
    out = maps.jmap_disambiguation(J27, M3.transvection(1, 2, F(1)))
    survivors = [v for v in ("A", "B")
                 if not isinstance(out[v], str) and out[v].is_automorphism]
    _verdict(7, "exactly one one-sided stabilizer variant certifies",
             survivors == ["B"], f"surviving variant: {','.join(survivors)}")


def test_criterion_08_path_suite(J27):
    a = M3.diag([F(1), F(2), F(3)])
    p = conj_path(J27, a)
    ok = (
        p.is_automorphism_family()
        and linalg.mat_eq(p.start.matrix, maps.aut_conj_I(J27, a).matrix)
        and p.end.is_identity()
    )
    rng = random.Random(8)
    for _ in range(5):
        d = random_norm_one(M3, rng, nfactors=3, bound=3)
        sp = sl1_path_split(J27, d)
        if not (sp.is_automorphism_family() and sp.end.is_identity()):
            ok = False
    _verdict(8, "conjugation path and 5 seeded elementary paths certify", ok)


def test_criterion_09_certificate_round_trip(J27, tmp_path):
    rng = random.Random(9)
    ok = True
    for idx in range(10):
        g, h = random_norm_equal_pair(M3, rng, bound=3)
        cert = cert_build_stab(J27, g, h)
        path = tmp_path / f"cert_{idx}.txt"
        save_certificate(cert, path)
        loaded = load_certificate(path)
        if not cert_check(loaded).all_pass:
            ok = False
        # single-entry tampering must always be detected
        lines = render_certificate(cert).splitlines()
        tamper_line = None
        for i, ln in enumerate(lines):
            if ln == "target":
                tamper_line = i + 1 + (idx % 27)
                break
        row = lines[tamper_line].split()
        col = idx % len(row)
        row[col] = "311/7" if row[col] != "311/7" else "312/7"
        lines[tamper_line] = " ".join(row)
        from albert.certfile import parse_certificate

        bad = parse_certificate("\n".join(lines) + "\n")
        if cert_check(bad).all_pass:
            ok = False
    _verdict(9, "10 seeded certificates round-trip; tampering detected", ok)


def test_criterion_10_split_identification():
    fmap = split_identify(M3, (F(2), F(1, 2)))
    ok = (
        fmap.multiplier == F(1)
        and fmap.target.lam == F(2)
        and fmap.apply(fmap.parent.unit) == tuple(fmap.target.unit)
    )
    _verdict(10, "split second construction identified with the first", ok)


def test_criterion_11_second_construction(J_second, B_conj, Qi):
    rep = J_second.axiom_suite(sample_count=10, seed=11)
    ok = rep.all_pass
    i = Qi.make(F(0), F(1))
    g = B_conj.one().scale(i)
    q = B_conj.diag([Qi.from_int(-1), Qi.one(), Qi.one()])
    ok = ok and maps.aut_ext_second(J_second, g, q).is_automorphism
    p = B_conj.diag([i, -i, Qi.one()])
    ok = ok and maps.aut_stab_second(J_second, p, B_conj.one()).is_automorphism
    rejections = 0
    try:
        maps.aut_ext_second(
            J_second, B_conj.diag([Qi.one(), Qi.one(), Qi.from_int(2)]), B_conj.one()
        )
    except ConstraintError:
        rejections += 1
    try:
        maps.aut_stab_second(
            J_second, B_conj.diag([i, Qi.one(), Qi.one()]), B_conj.one()
        )
    except ConstraintError:
        rejections += 1
    try:
        SecondTits(B_conj, B_conj.one(), Qi.from_int(2))
    except ConstraintError:
        rejections += 1
    _verdict(11, "second construction axioms, extensions, rejections",
             ok and rejections == 3)


def test_criterion_12_chi_verification():
    E = CubicEtale(QQ, [F(0), F(-1), F(0), F(1)])
    JE = FirstTits(E, F(5))
    a = E.element([F(1), F(2), F(3)])
    res = chi_unit_check(JE, a)
    determined = res["element-scaled"][1] and not res["unit-scaled"][1]
    na_inv = QQ.inv(a.norm())
    literal_image = res["unit-scaled"][0].apply(JE.embed(a, 0))
    discrepancy = tuple(literal_image) == tuple(JE.embed(a.scale(na_inv), 0))
    rng = random.Random(12)
    seeded_ok = all(
        chi_unit_check(JE, E.sample_invertible(rng, 4))["element-scaled"][1]
        for _ in range(10)
    )
    _verdict(
        12, "chi middle-operand determination and seeded assertion",
        determined and discrepancy and seeded_ok,
        "element-scaled maps (a,0,0) to the base point; "
        "unit-scaled lands on (N(a)^{-1}a,0,0)",
    )


def test_criterion_13_trace_form_oracle():
    Dp = DPlus(M3)
    rng = random.Random(13)
    failures = 0
    for _ in range(50):
        x = Dp.sample_vec(rng, 4)
        y = Dp.sample_vec(rng, 4)
        if Dp.trace_bilinear(x, y) != M3.trace(QQ, M3.mul(QQ, x, y)):
            failures += 1
    _verdict(13, "derived trace equals associative trace pairing, 50 pairs",
             failures == 0, f"{failures} failures")
