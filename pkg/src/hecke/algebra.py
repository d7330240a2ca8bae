"""The Hecke algebra as bi-invariant functions on G.

A :class:`HeckeElement` stores one value per double coset (the constant
value of the function there).  ``sigma(pair, x)`` is the function
``1_{HxH} / R(x)``; the unit is the indicator of H.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, Sequence

from .errors import NotInHeckeAlgebra, PreconditionError, TheoremViolation
from .linalg import rank
from .module_space import ModuleOperator
from .pair import HeckePair
from .rational import ZERO, checked, checked_all, max_bits

_ONE = Fraction(1)


class HeckeElement:
    """Stored as integer numerators over one positive common denominator,
    kept in lowest terms so that equality is a tuple comparison.  ``values``
    is the Fraction view, built on demand."""

    __slots__ = ("pair", "num", "den", "_values")

    def __init__(self, pair: HeckePair, values: Sequence[Fraction]):
        if len(values) != pair.ndc:
            raise ValueError("value count does not match the number of double cosets")
        num, den = _int_scaled([Fraction(v) for v in values])
        self._set(pair, num, den)

    def _set(self, pair, num, den):
        g = gcd(den, *num)
        if g > 1:
            num = [n // g for n in num]
            den //= g
        lim = max_bits()
        if den.bit_length() >= lim or max(max(num).bit_length(), min(num).bit_length()) >= lim:
            # the common denominator can be wider than any single entry
            checked_all(Fraction(n, den) for n in num)
        self.pair = pair
        self.num = tuple(num)
        self.den = den
        self._values = None

    @classmethod
    def _raw(cls, pair: HeckePair, num, den: int) -> "HeckeElement":
        out = cls.__new__(cls)
        out._set(pair, num, den)
        return out

    @property
    def values(self) -> tuple[Fraction, ...]:
        v = self._values
        if v is None:
            d = self.den
            v = self._values = tuple(Fraction(n, d) if n else ZERO for n in self.num)
        return v

    # constructors
    @classmethod
    def zero(cls, pair: HeckePair) -> "HeckeElement":
        return cls._raw(pair, [0] * pair.ndc, 1)

    @classmethod
    def unit(cls, pair: HeckePair) -> "HeckeElement":
        v = [0] * pair.ndc
        v[pair.identity_dc] = 1
        return cls._raw(pair, v, 1)

    @classmethod
    def from_coords(cls, pair: HeckePair, coords: Sequence[Fraction]) -> "HeckeElement":
        """Element sum_i c_i sigma_{x_i} over double-coset reps x_i."""
        return cls(pair, [Fraction(c) / r for c, r in zip(coords, pair.R)])

    def coords(self) -> tuple[Fraction, ...]:
        """Coefficients in the sigma basis."""
        return tuple(v * r for v, r in zip(self.values, self.pair.R))

    def __call__(self, t: int) -> Fraction:
        return self.values[self.pair.dc_of[t]]

    # linear structure
    def _combine(self, other: "HeckeElement", sign: int) -> "HeckeElement":
        if other.pair is not self.pair:
            raise ValueError("elements belong to different pairs")
        d1, d2 = self.den, other.den
        g = gcd(d1, d2)
        m1, m2 = d2 // g, d1 // g
        num = [a * m1 + sign * b * m2 for a, b in zip(self.num, other.num)]
        return HeckeElement._raw(self.pair, num, d1 * m1)

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        return self._combine(other, 1)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self._combine(other, -1)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement._raw(self.pair, [-a for a in self.num], self.den)

    def scale(self, c) -> "HeckeElement":
        c = Fraction(c)
        if c < 0:
            return HeckeElement._raw(self.pair, [-c.numerator * a for a in self.num],
                                     self.den * c.denominator)
        return HeckeElement._raw(self.pair, [c.numerator * a for a in self.num],
                                 self.den * c.denominator)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return convolve(self, other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, HeckeElement) and self.den == other.den
                and self.num == other.num)

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return not any(self.num)

    def support(self) -> list[int]:
        return [i for i, v in enumerate(self.num) if v]

    def __repr__(self) -> str:
        terms = [f"{c}*s[{self.pair.dc_reps[i]}]" for i, c in enumerate(self.coords()) if c]
        return "HeckeElement(" + (" + ".join(terms) or "0") + ")"


def sigma(pair: HeckePair, x: int) -> HeckeElement:
    i = pair.dc_of[x]
    v = [ZERO] * pair.ndc
    v[i] = Fraction(1, pair.R[i])
    return HeckeElement(pair, v)


def unit(pair: HeckePair) -> HeckeElement:
    return HeckeElement.unit(pair)


def _int_scaled(values) -> tuple[list[int], int]:
    """Numerators over a common denominator D."""
    D = 1
    for v in values:  # lcm of the denominators
        if v:
            d = v.denominator
            if d != 1 and D % d:
                D = D * d // gcd(D, d)
    return [v.numerator * (D // v.denominator) if v else 0 for v in values], D


def convolve(f: HeckeElement, g: HeckeElement) -> HeckeElement:
    """(f*g)(t) = sum over right cosets Hs of f(t s^{-1}) g(s).

    Walks the supports of f and g against the indicator structure table,
    in integers over the product of the two denominators."""
    pair = f.pair
    if g.pair is not pair:
        raise ValueError("elements belong to different pairs")
    gv = g.num
    gsupp = [(b, gb) for b, gb in enumerate(gv) if gb]
    table = pair.struct
    acc = [0] * pair.ndc
    for a, fa in enumerate(f.num):
        if not fa:
            continue
        for b, gb in gsupp:
            entries = table.get((a, b))
            if entries:
                c = fa * gb
                for z, cnt in entries:
                    acc[z] += c * cnt
    return HeckeElement._raw(pair, acc, f.den * g.den)


def from_operator(a: ModuleOperator, strict: bool = True) -> HeckeElement:
    """f_a(t) = coefficient of delta_{Ht} in a(delta_H).

    Raises NotInHeckeAlgebra if f_a is not constant on double cosets, or
    (with ``strict``) if a differs from the operator f_a determines."""
    pair = a.pair
    col = a.cols[pair.rc_of[0]]
    vals = []
    for i in range(pair.ndc):
        rcs = pair.rc_in_dc[i]
        v = col[rcs[0]]
        for r in rcs[1:]:
            if col[r] != v:
                raise NotInHeckeAlgebra(
                    f"coefficient function is not constant on the double coset of {pair.dc_reps[i]}")
        vals.append(v)
    f = HeckeElement(pair, vals)
    if strict and to_operator(f) != a:
        raise NotInHeckeAlgebra("operator is not determined by its bi-invariant function")
    return f


def to_operator(f: HeckeElement) -> ModuleOperator:
    """Matrix entry (row t, column s) is f(t s^{-1})."""
    pair = f.pair
    inv_rc = pair.inverse_rc
    dc_of_rc = [pair.dc_of[t] for t in pair.rc_reps]
    vals = f.values
    n = pair.index
    cols = [[vals[dc_of_rc[inv_rc[i][j]]] for i in range(n)] for j in range(n)]
    return ModuleOperator(pair, cols)


def basis(pair: HeckePair) -> list[HeckeElement]:
    """sigma_x over double-coset reps, with linear independence checked.

    An algebra element is determined by its value on delta_H, so the rank is
    taken over those image vectors."""
    out = [sigma(pair, x) for x in pair.dc_reps]
    vecs = [[b(t) for t in pair.rc_reps] for b in out]
    if rank(vecs) != pair.ndc:
        raise TheoremViolation("sigma basis is linearly dependent")
    return out


def star(f: HeckeElement) -> HeckeElement:
    """f*(t) = Delta(t^{-1}) f(t^{-1})."""
    p = f.pair
    return HeckeElement(p, [p.Delta[j] * f.values[j] for j in p.dc_inv])


def sharp(f: HeckeElement) -> HeckeElement:
    """f#(t) = f(t^{-1})."""
    p = f.pair
    return HeckeElement(p, [f.values[j] for j in p.dc_inv])


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Nonnegative rational square root, or None."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def derive_lambda(order: int, delta: Callable[[int], Fraction]) -> list[Fraction]:
    """Positive square root of a positive multiplicative Delta, elementwise.

    The positive root of a positive homomorphism is again a homomorphism, so
    picking it pointwise agrees with picking it on generators."""
    lam = []
    for x in range(order):
        d = Fraction(delta(x))
        r = rational_sqrt(d)
        if r is None or r == 0:
            raise PreconditionError(f"no lambda over Q: Delta({x}) = {d} has no positive rational square root")
        lam.append(r)
    return lam


class LambdaMap:
    """f -> (x -> lambda(x) f(x)), from (H, star) to (H, sharp)."""

    def __init__(self, pair: HeckePair, lam: Sequence[Fraction]):
        self.pair = pair
        self.lam = tuple(checked(Fraction(v)) for v in lam)
        self.on_dc = tuple(self.lam[x] for x in pair.dc_reps)

    def __call__(self, f: HeckeElement) -> HeckeElement:
        return HeckeElement(self.pair, [l * v for l, v in zip(self.on_dc, f.values)])

    def inverse(self, f: HeckeElement) -> HeckeElement:
        return HeckeElement(self.pair, [v / l for l, v in zip(self.on_dc, f.values)])

    def is_identity(self) -> bool:
        return all(l == 1 for l in self.on_dc)


def lambda_isomorphism(pair: HeckePair, lam: Sequence[Fraction] | None = None,
                       delta: Callable[[int], Fraction] | None = None) -> LambdaMap:
    """Build and verify the map f -> lambda f.

    ``lam`` is a value per group element (default: derived from Delta).
    Checks: lambda multiplicative, lambda^2 = Delta, lambda = 1 on H (so that
    the image of a bi-invariant function stays bi-invariant and the unit is
    preserved), then bijectivity, multiplicativity and the intertwining
    Lambda(f*) = Lambda(f)# on the sigma basis."""
    G = pair.G
    delta = delta or pair.delta_of
    if lam is None:
        lam = derive_lambda(G.order, delta)
    lam = [Fraction(v) for v in lam]
    if len(lam) != G.order:
        raise ValueError("lambda needs one value per group element")
    for x in range(G.order):
        if lam[x] == 0:
            raise PreconditionError(f"lambda({x}) = 0")
        if lam[x] * lam[x] != Fraction(delta(x)):
            raise PreconditionError(f"lambda({x})^2 != Delta({x})")
        row = G.mul[x]
        for y in range(G.order):
            if lam[row[y]] != lam[x] * lam[y]:
                raise PreconditionError(f"lambda is not multiplicative at ({x}, {y})")
    for h in pair.H:
        if lam[h] != 1:
            raise PreconditionError(f"lambda({h}) != 1 on H; image would leave the Hecke algebra")
    L = LambdaMap(pair, lam)
    B = basis(pair)
    imgs = [L(b) for b in B]
    if rank([i.values for i in imgs]) != pair.ndc:
        raise TheoremViolation("Lambda is not bijective")
    for i, a in enumerate(B):
        if L(star(a)) != sharp(imgs[i]):
            raise TheoremViolation("Lambda does not intertwine the involutions")
        for j, b in enumerate(B):
            if L(a * b) != imgs[i] * imgs[j]:
                raise TheoremViolation("Lambda is not multiplicative")
    return L
