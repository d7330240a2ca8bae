"""The ax+b group over Q and its P-integral subgroup H_P.

An element (b, a) is the matrix [[1, b], [0, a]] with a != 0.  Multiplying
matrices gives

    (b1, a1) (b2, a2) = (b2 + b1 a2, a1 a2).

Everything here is pointwise: each function checks one concrete instance
with exact rationals.  Nothing claims a statement about the whole group.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import MembershipError, TheoremViolation
from .rational import checked, parse_rational

FUZZ_BOUND = 2 ** 20


@dataclass(frozen=True)
class AxbElement:
    b: Fraction
    a: Fraction

    def __post_init__(self):
        object.__setattr__(self, "b", checked(Fraction(self.b)))
        object.__setattr__(self, "a", checked(Fraction(self.a)))
        if self.a == 0:
            raise ValueError("a must be nonzero")

    @classmethod
    def parse(cls, text: str) -> "AxbElement":
        """``"b,a"`` with each entry an integer or ``n/d``."""
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'b,a', got {text!r}")
        return cls(parse_rational(parts[0]), parse_rational(parts[1]))

    def matrix(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((Fraction(1), self.b), (Fraction(0), self.a))

    def __mul__(self, other: "AxbElement") -> "AxbElement":
        return axb_mul(self, other)

    def __str__(self) -> str:
        return f"({self.b}, {self.a})"


IDENTITY = AxbElement(Fraction(0), Fraction(1))


def axb_mul(x: AxbElement, y: AxbElement) -> AxbElement:
    return AxbElement(y.b + x.b * y.a, x.a * y.a)


def axb_inv(x: AxbElement) -> AxbElement:
    return AxbElement(-x.b / x.a, 1 / x.a)


def conjugate(h: AxbElement, x: AxbElement) -> AxbElement:
    """x^-1 h x."""
    return axb_mul(axb_mul(axb_inv(x), h), x)


def matmul2(A, B):
    """Plain 2x2 product; used as an independent check on axb_mul."""
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(2)) for j in range(2))
                 for i in range(2))


# --- P-integrality ------------------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeSet:
    primes: tuple[int, ...] = field(default=())

    def __post_init__(self):
        ps = tuple(sorted(set(int(p) for p in self.primes)))
        bad = [p for p in ps if not _is_prime(p)]
        if bad:
            raise ValueError(f"not prime: {bad}")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def parse(cls, text: str) -> "PrimeSet":
        text = text.strip()
        return cls(tuple(int(t) for t in text.split(",") if t.strip()) if text else ())

    def __iter__(self):
        return iter(self.primes)

    def __contains__(self, p) -> bool:
        return p in self.primes

    def coprime(self, n: int) -> bool:
        return all(n % p for p in self.primes)

    def part(self, n: int) -> int:
        """Largest divisor of n built from primes in P."""
        n = abs(n)
        out = 1
        for p in self.primes:
            while n and n % p == 0:
                n //= p
                out *= p
        return out


def in_AP(q: Fraction, P: PrimeSet) -> bool:
    return P.coprime(Fraction(q).denominator)


def in_AP_units(q: Fraction, P: PrimeSet) -> bool:
    q = Fraction(q)
    return q != 0 and P.coprime(q.numerator) and P.coprime(q.denominator)


def in_HP(g: AxbElement, P: PrimeSet) -> bool:
    return in_AP(g.b, P) and in_AP_units(g.a, P)


# --- non-subnormality ------------------------------------------------------------

@dataclass
class NonSubnormalCertificate:
    p: int
    x: AxbElement
    h: AxbElement
    k: AxbElement
    result: AxbElement
    in_HP: bool

    @property
    def violates(self) -> bool:
        return not self.in_HP


def subnormal_triple(x: AxbElement, h: AxbElement, k: AxbElement) -> AxbElement:
    """(x^-1 h x)^-1 k (x^-1 h x)."""
    c = conjugate(h, x)
    return axb_mul(axb_mul(axb_inv(c), k), c)


def nonsubnormal_witness(P: PrimeSet, p: int,
                         a: Optional[Fraction] = None) -> NonSubnormalCertificate:
    """x = (0, a), h = (1, 1), k = (0, -1) with a = 1/(2p) unless given.

    The result is (2a, -1); for the default a that is (1/p, -1), outside H_P."""
    if not P.primes:
        raise ValueError("P must be nonempty")
    if p not in P:
        raise ValueError(f"{p} is not in P")
    a = Fraction(1, 2 * p) if a is None else Fraction(a)
    x = AxbElement(0, a)
    h = AxbElement(1, 1)
    k = AxbElement(0, -1)
    if not (in_HP(h, P) and in_HP(k, P)):
        raise TheoremViolation("h or k is not in H_P")
    r = subnormal_triple(x, h, k)
    if r != AxbElement(2 * a, -1):
        raise TheoremViolation(f"triple product {r} differs from (2a, -1)")
    return NonSubnormalCertificate(p, x, h, k, r, in_HP(r, P))


# --- local protonormality ---------------------------------------------------------

@dataclass
class StarSolution:
    x: AxbElement
    h: AxbElement
    k: AxbElement
    h2: AxbElement
    k2: AxbElement
    identity_ok: bool


def star_solve(x: AxbElement, h: AxbElement, k: AxbElement,
               P: PrimeSet = PrimeSet((2,))) -> StarSolution:
    """Find h', k' in H_P with x^-1 h x k = k' x^-1 h' x.

    Uses xi' = 1 + (xi - 1) mu, mu' = xi mu / xi', eta' = eta mu, nu' = nu / xi'.
    Raises MembershipError when an input or output leaves H_P; for P = {2}
    that never happens."""
    if not in_HP(h, P) or not in_HP(k, P):
        raise MembershipError("h and k must lie in H_P")
    eta, xi = h.b, h.a
    nu, mu = k.b, k.a
    xi2 = checked(1 + (xi - 1) * mu)
    if not in_AP_units(xi2, P):
        raise MembershipError(f"xi' = {xi2} is not a unit of A_P")
    mu2 = checked(xi * mu / xi2)
    eta2 = checked(eta * mu)
    nu2 = checked(nu / xi2)
    h2 = AxbElement(eta2, xi2)
    k2 = AxbElement(nu2, mu2)
    for name, g in (("h'", h2), ("k'", k2)):
        if not in_HP(g, P):
            raise MembershipError(f"{name} = {g} is not in H_P")
    lhs = axb_mul(conjugate(h, x), k)
    rhs = axb_mul(k2, conjugate(h2, x))
    if lhs != rhs:
        raise TheoremViolation(f"x^-1 h x k = {lhs} but k' x^-1 h' x = {rhs}")
    return StarSolution(x, h, k, h2, k2, True)


# --- Hecke-pair witness -------------------------------------------------------------

def phi_mod(z: Fraction, q: int, P: PrimeSet) -> int:
    """n m^-1 mod q for z = n/m in A_P."""
    z = Fraction(z)
    if not in_AP(z, P):
        raise MembershipError(f"{z} is not in A_P")
    if q == 1:
        return 0
    return z.numerator * pow(z.denominator, -1, q) % q


def euler_phi(n: int) -> int:
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


def random_AP(rng: random.Random, P: PrimeSet, bound: int = FUZZ_BOUND) -> Fraction:
    while True:
        d = rng.randint(1, bound)
        if P.coprime(d):
            return Fraction(rng.randint(-bound, bound), d)


def random_AP_unit(rng: random.Random, P: PrimeSet, bound: int = FUZZ_BOUND) -> Fraction:
    while True:
        q = random_AP(rng, P, bound)
        if in_AP_units(q, P):
            return q


@dataclass
class HeckeWitness:
    x: AxbElement
    primes: tuple
    q: int
    index_bound: int          # |G_q| = q * phi(q)
    samples: int
    passed: int
    seed: int
    first_failure: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return self.passed == self.samples


def common_q(x: AxbElement, P: PrimeSet) -> int:
    """Least q built from P with q*a and q*b both in A_P (lcm of the P-parts
    of the two denominators)."""
    from math import lcm
    return lcm(P.part(x.a.denominator), P.part(x.b.denominator))


def hecke_witness(x: AxbElement, P: PrimeSet, samples: int = 100,
                  seed: int = 0) -> HeckeWitness:
    """Sample the kernel of H_P -> G_q and check each sample lies in
    H_P cap H_P^{x^-1}, i.e. eta a + (1 - xi) b in A_P."""
    q = common_q(x, P)
    a0, b0 = x.a * q, x.b * q
    if not (in_AP(a0, P) and in_AP(b0, P)):
        raise TheoremViolation(f"q = {q} does not clear the P-part of the denominators")
    rng = random.Random(seed)
    passed, fail = 0, None
    for i in range(samples):
        eta = q * random_AP(rng, P)
        while True:
            xi = 1 + q * random_AP(rng, P)
            if in_AP_units(xi, P):
                break
        h = AxbElement(eta, xi)
        in_kernel = in_HP(h, P) and phi_mod(eta, q, P) == 0 and phi_mod(xi, q, P) == 1 % q
        c = conjugate(h, x)
        formula = eta * x.a + (1 - xi) * x.b
        good = in_kernel and c.b == formula and c.a == xi and in_HP(c, P)
        if good:
            passed += 1
        elif fail is None:
            fail = (i, str(h))
    return HeckeWitness(x, P.primes, q, q * euler_phi(q), samples, passed, seed, fail)


def phi_hom_check(P: PrimeSet, q: int, samples: int = 100, seed: int = 0) -> Optional[tuple]:
    """First sampled (z, w) where phi fails additivity or multiplicativity, or None."""
    rng = random.Random(seed)
    for _ in range(samples):
        z, w = random_AP(rng, P), random_AP(rng, P)
        if phi_mod(z + w, q, P) != (phi_mod(z, q, P) + phi_mod(w, q, P)) % q:
            return z, w
        if phi_mod(z * w, q, P) != (phi_mod(z, q, P) * phi_mod(w, q, P)) % q:
            return z, w
    return None


def star_fuzz(samples: int = 1000, seed: int = 0, P: PrimeSet = PrimeSet((2,))) -> tuple[int, list]:
    """Solve random (x, h, k) with h, k in H_P (for P = {2}: odd over odd
    diagonal entries); returns (passes, failures)."""
    rng = random.Random(seed)
    ok, bad = 0, []
    for i in range(samples):
        a = Fraction(0)
        while a == 0:
            a = Fraction(rng.randint(-FUZZ_BOUND, FUZZ_BOUND), rng.randint(1, FUZZ_BOUND))
        x = AxbElement(Fraction(rng.randint(-FUZZ_BOUND, FUZZ_BOUND), rng.randint(1, FUZZ_BOUND)), a)
        h = AxbElement(random_AP(rng, P), random_AP_unit(rng, P))
        k = AxbElement(random_AP(rng, P), random_AP_unit(rng, P))
        try:
            sol = star_solve(x, h, k, P)
        except MembershipError as e:
            bad.append((i, str(e)))
            continue
        ok += 1
    return ok, bad
