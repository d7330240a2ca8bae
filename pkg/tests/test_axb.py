import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from hecke.axb import (IDENTITY, AxbElement, PrimeSet, axb_inv, axb_mul, common_q, conjugate,
                       euler_phi, hecke_witness, in_AP, in_AP_units, in_HP, matmul2,
                       phi_hom_check, phi_mod, nonsubnormal_witness, random_AP, random_AP_unit,
                       star_fuzz, star_solve, subnormal_triple)
from hecke.errors import MembershipError, RationalOverflow
from hecke.rational import bit_limit

q = st.fractions(-1000, 1000, max_denominator=1000)
nonzero = q.filter(lambda v: v != 0)
elems = st.builds(AxbElement, q, nonzero)
P2 = PrimeSet((2,))


def inv2(M):
    (a, b), (c, d) = M
    det = a * d - b * c
    return ((d / det, -b / det), (-c / det, a / det))


@given(elems, elems)
def test_mul_is_matrix_product(x, y):
    assert axb_mul(x, y).matrix() == matmul2(x.matrix(), y.matrix())


@given(elems, elems, elems)
def test_group_laws(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * axb_inv(x) == IDENTITY == axb_inv(x) * x
    assert x * IDENTITY == x


@given(elems, elems)
def test_conjugate_formula(h, x):
    c = conjugate(h, x)
    assert c.matrix() == matmul2(matmul2(inv2(x.matrix()), h.matrix()), x.matrix())
    assert c == AxbElement(h.b * x.a + (1 - h.a) * x.b, h.a)


def test_parse():
    assert AxbElement.parse("1/2,-3") == AxbElement(Fraction(1, 2), -3)
    for bad in ("1", "1,0", "1,2,3", "x,1"):
        with pytest.raises(ValueError):
            AxbElement.parse(bad)


def test_prime_sets():
    assert PrimeSet.parse("3, 2").primes == (2, 3)
    assert PrimeSet.parse("").primes == ()
    with pytest.raises(ValueError):
        PrimeSet.parse("4")
    assert P2.part(24) == 8 and PrimeSet((2, 3)).part(-90) == 18


def test_membership_examples():
    assert in_HP(AxbElement(Fraction(1, 3), 3), P2)
    assert not in_HP(AxbElement(Fraction(1, 2), 1), P2)
    assert not in_HP(AxbElement(0, 2), P2)
    assert in_AP(Fraction(5, 9), P2) and not in_AP_units(Fraction(4, 9), P2)
    # P empty: A_P = Q
    assert in_HP(AxbElement(Fraction(1, 6), Fraction(2, 3)), PrimeSet())


def test_nonsubnormal_values():
    cert = nonsubnormal_witness(P2, 2)
    assert cert.x == AxbElement(0, Fraction(1, 4))
    assert conjugate(cert.h, cert.x) == AxbElement(Fraction(1, 4), 1)
    assert cert.result == AxbElement(Fraction(1, 2), -1) and cert.violates
    cert = nonsubnormal_witness(PrimeSet((3, 5)), 3)
    assert cert.result == AxbElement(Fraction(1, 3), -1) and cert.violates
    # a = 1 keeps everything integral: no violation
    assert not nonsubnormal_witness(P2, 2, a=1).violates
    with pytest.raises(ValueError):
        nonsubnormal_witness(P2, 3)
    with pytest.raises(ValueError):
        nonsubnormal_witness(PrimeSet(), 2)


@given(nonzero)
def test_nonsubnormal_general_a(a):
    cert = nonsubnormal_witness(P2, 2, a=a)
    assert cert.result == subnormal_triple(cert.x, cert.h, cert.k) == AxbElement(2 * a, -1)


@st.composite
def hp_elements(draw, P=P2):
    rng = random.Random(draw(st.integers(0, 2 ** 32)))
    return AxbElement(random_AP(rng, P, 1000), random_AP_unit(rng, P, 1000))


@given(elems, hp_elements(), hp_elements())
def test_star_solve(x, h, k):
    sol = star_solve(x, h, k)
    assert in_HP(sol.h2, P2) and in_HP(sol.k2, P2)
    # recheck with the matrix product rather than axb_mul
    lhs = matmul2(conjugate(h, x).matrix(), k.matrix())
    rhs = matmul2(sol.k2.matrix(), conjugate(sol.h2, x).matrix())
    assert lhs == rhs


def test_star_solve_examples():
    x = AxbElement(Fraction(3, 7), Fraction(-2, 5))
    sol = star_solve(x, IDENTITY, IDENTITY)
    assert sol.h2 == IDENTITY and sol.k2 == IDENTITY
    # mu = 1 leaves xi alone and forces mu' = 1
    h = AxbElement(Fraction(1, 3), Fraction(5, 7))
    sol = star_solve(x, h, AxbElement(Fraction(2, 9), 1))
    assert sol.h2.a == h.a and sol.k2.a == 1


def test_star_solve_membership_errors():
    P3 = PrimeSet((3,))
    x = AxbElement(1, 1)
    with pytest.raises(MembershipError, match="xi'"):
        star_solve(x, AxbElement(0, 2), AxbElement(0, 2), P3)
    with pytest.raises(MembershipError):
        star_solve(x, AxbElement(Fraction(1, 2), 1), IDENTITY)


def test_star_fuzz():
    ok, bad = star_fuzz(200, seed=1)
    assert ok == 200 and bad == []


def test_hecke_witness():
    w = hecke_witness(AxbElement(0, Fraction(1, 2)), P2, samples=50)
    assert w.ok and w.q == 2 and w.index_bound == 2
    x = AxbElement(Fraction(1, 4), Fraction(1, 2))
    assert common_q(x, P2) == 4
    w = hecke_witness(x, P2, samples=50, seed=3)
    assert w.ok and w.index_bound == 8
    w = hecke_witness(AxbElement(Fraction(1, 12), Fraction(5, 9)), PrimeSet((2, 3)), 30)
    assert w.ok and w.q == 36 and w.index_bound == 36 * 12
    # denominators outside P need no clearing
    assert common_q(AxbElement(Fraction(1, 7), 3), P2) == 1


@given(st.integers(1, 500))
def test_euler_phi_matches_sympy(n):
    assert euler_phi(n) == sympy.totient(n)


@pytest.mark.parametrize("P,q", [(P2, 8), (PrimeSet((3,)), 9), (PrimeSet((2, 3)), 12), (P2, 1)])
def test_phi_is_ring_hom(P, q):
    assert phi_hom_check(P, q, samples=200, seed=5) is None


def test_phi_mod_examples():
    assert phi_mod(Fraction(1, 3), 4, P2) == 3
    assert phi_mod(Fraction(-5, 7), 8, P2) == (-5 * pow(7, -1, 8)) % 8
    with pytest.raises(MembershipError):
        phi_mod(Fraction(1, 2), 4, P2)


def test_overflow():
    with bit_limit(32):
        with pytest.raises(RationalOverflow):
            AxbElement(Fraction(2 ** 40, 3), 1)
        big = AxbElement(Fraction(2 ** 20 + 1, 3), Fraction(2 ** 20 + 3, 5))
        with pytest.raises(RationalOverflow):
            axb_mul(big, big)
