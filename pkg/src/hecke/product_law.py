"""Products of double cosets, the averaged product formula, and the
universal property / presentation of the Hecke algebra for subnormal H."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .algebra import HeckeElement, basis, convolve, sigma, star, unit
from .analysis import is_subnormal
from .errors import PreconditionError, TheoremViolation
from .finite_algebra import FiniteAlgebra
from .groups import SubgroupRef, conjugate_subgroup, rep_family, set_product
from .linalg import rank
from .pair import HeckePair
from .rational import ZERO


@dataclass
class TripleDecomposition:
    x: int
    y: int
    S_xy: list[int]               # elements h of H, one per block HxhyH
    double_cosets: list[int]      # double-coset reps z_i = rep of x h y

    @property
    def n(self) -> int:
        return len(self.S_xy)


def triple_set(pair: HeckePair, x: int, y: int) -> frozenset:
    """The set H x H y H, element by element."""
    G, H = pair.G, pair.H
    mid = set_product(G, set_product(G, H.elements, [x]), H.elements)
    return set_product(G, set_product(G, mid, [y]), H.elements)


def triple_decompose_bruteforce(pair: HeckePair, x: int, y: int) -> TripleDecomposition:
    """Partition HxHyH into double cosets HxhyH; S_xy takes the least h per block."""
    G, H = pair.G, pair.H
    mul = G.mul
    seen: dict[int, int] = {}
    for h in H:
        z = pair.dc_of[mul[mul[x][h]][y]]
        if z not in seen:
            seen[z] = h
    order = sorted(seen, key=lambda z: seen[z])
    return TripleDecomposition(x, y, [seen[z] for z in order], [pair.dc_reps[z] for z in order])


def _require_subnormal(pair: HeckePair, subnormal: Optional[bool]) -> None:
    if subnormal is None:
        subnormal = is_subnormal(pair.G, pair.H)[0]
    if not subnormal:
        raise PreconditionError("H is not subnormal")


def triple_kernel(pair: HeckePair, x: int, y: int) -> SubgroupRef:
    """H cap H^x H^{y^-1} (a subgroup when H is subnormal)."""
    G, H = pair.G, pair.H
    prod = set_product(G, conjugate_subgroup(H, x).elements,
                       conjugate_subgroup(H, G.inv[y]).elements)
    return SubgroupRef(G, tuple(H.set & prod))


def triple_decompose(pair: HeckePair, x: int, y: int,
                     subnormal: Optional[bool] = None) -> TripleDecomposition:
    """S_xy = representatives of H/(H cap H^x H^{y^-1}); checked against the set product."""
    _require_subnormal(pair, subnormal)
    G, H = pair.G, pair.H
    mul = G.mul
    S = rep_family(H, triple_kernel(pair, x, y))
    blocks = [pair.dc_of[mul[mul[x][h]][y]] for h in S]
    if len(set(blocks)) != len(blocks):
        raise TheoremViolation(f"blocks HxhyH overlap for x={x}, y={y}")
    union = set()
    for z in blocks:
        union.update(pair.double.blocks[z])
    if union != triple_set(pair, x, y):
        raise TheoremViolation(f"blocks do not cover HxHyH for x={x}, y={y}")
    return TripleDecomposition(x, y, S, [pair.dc_reps[z] for z in blocks])


def average_sigma(pair: HeckePair, zs: Sequence[int]) -> HeckeElement:
    coords = [ZERO] * pair.ndc
    w = Fraction(1, len(zs))
    for z in zs:
        coords[pair.dc_of[z]] += w
    return HeckeElement.from_coords(pair, coords)


@dataclass
class ProductFormulaReport:
    holds: bool
    pairs_checked: int
    failures: list = field(default_factory=list)


def product_formula_check(pair: HeckePair, full: bool = False) -> ProductFormulaReport:
    """sigma_x sigma_y against the average of sigma_z over the blocks of HxHyH.

    Runs on any pair; whether it must hold is the caller's business."""
    G = pair.G
    xs = range(G.order) if full else pair.dc_reps
    sig = {i: sigma(pair, x) for i, x in enumerate(pair.dc_reps)}
    fails = []
    n = 0
    for x in xs:
        for y in xs:
            n += 1
            lhs = convolve(sig[pair.dc_of[x]], sig[pair.dc_of[y]])
            dec = triple_decompose_bruteforce(pair, x, y)
            if lhs != average_sigma(pair, dec.double_cosets):
                fails.append((x, y))
    return ProductFormulaReport(not fails, n, fails)


def triple_count_audit(pair: HeckePair, full: bool = True,
                       subnormal: Optional[bool] = None) -> Optional[tuple[int, int]]:
    """First (x, y) where |H/(H cap H^x H^{y^-1})| differs from the number of
    blocks in HxHyH, or None."""
    _require_subnormal(pair, subnormal)
    G, H = pair.G, pair.H
    xs = range(G.order) if full else pair.dc_reps
    for x in xs:
        for y in xs:
            K = triple_kernel(pair, x, y)
            if len(H) // len(K) != triple_decompose_bruteforce(pair, x, y).n:
                return x, y
    return None


# --- universal property ----------------------------------------------------------

def hecke_algebra(pair: HeckePair) -> FiniteAlgebra:
    """The Hecke algebra in sigma-basis coordinates."""
    sig = [sigma(pair, x) for x in pair.dc_reps]
    u = [ZERO] * pair.ndc
    u[pair.identity_dc] = Fraction(1)
    stars = [star(s).coords() for s in sig]
    return FiniteAlgebra(pair.ndc, lambda i, j: convolve(sig[i], sig[j]).coords(), u,
                         star_images=stars, name="hecke")


@dataclass
class HomResult:
    ok: bool
    images: Optional[list] = None     # phi(sigma_x) per double-coset rep
    witness: Optional[tuple] = None
    reason: str = ""
    is_star: Optional[bool] = None
    target: Optional[FiniteAlgebra] = None

    def apply(self, f: HeckeElement):
        acc = self.target.zero()
        for c, img in zip(f.coords(), self.images):
            if c:
                acc = self.target.add(acc, self.target.scale(c, img))
        return acc


def universal_hom(pair: HeckePair, tau: Callable[[int], Sequence[Fraction]],
                  target: FiniteAlgebra, subnormal: Optional[bool] = None,
                  check_star: bool = True) -> HomResult:
    """Extend tau: G -> target to a homomorphism on the sigma basis.

    Checks tau(1) = 1, bi-invariance of tau, the averaged product relation
    on pairs of double-coset reps, then multiplicativity of the extension on
    basis pairs.  If the target has an involution and tau(x^-1) = tau(x)*,
    the extension is checked to be a star map as well."""
    _require_subnormal(pair, subnormal)
    G, H = pair.G, pair.H
    mul = G.mul
    T = {}

    def t(x):
        v = T.get(x)
        if v is None:
            v = T[x] = tuple(Fraction(c) for c in tau(x))
        return v

    res = HomResult(False, target=target)
    if t(0) != target.unit():
        res.reason, res.witness = "tau(1) != 1", (0,)
        return res
    for x in range(G.order):
        if t(x) != t(pair.dc_rep(x)):
            res.reason, res.witness = "tau is not bi-invariant", (x,)
            return res
    for x in pair.dc_reps:
        for y in pair.dc_reps:
            dec = triple_decompose(pair, x, y, subnormal=True)
            rhs = target.zero()
            for h in dec.S_xy:
                rhs = target.add(rhs, t(mul[mul[x][h]][y]))
            rhs = target.scale(Fraction(1, dec.n), rhs)
            if target.mul(t(x), t(y)) != rhs:
                res.reason, res.witness = "product relation fails", (x, y)
                return res
    res.images = [t(x) for x in pair.dc_reps]
    B = basis(pair)
    for i, a in enumerate(B):
        for j, b in enumerate(B):
            if res.apply(a * b) != target.mul(res.images[i], res.images[j]):
                res.reason, res.witness = "extension is not multiplicative", (i, j)
                return res
    res.ok = True
    if check_star and target.star_images is not None:
        if all(t(G.inv[x]) == target.star(t(x)) for x in pair.dc_reps):
            res.is_star = all(res.apply(star(b)) == target.star(res.images[i])
                              for i, b in enumerate(B))
            if not res.is_star:
                res.ok = False
                res.reason = "extension is not a star map"
    return res


@dataclass
class PresentationReport:
    unit_ok: bool
    relations_ok: bool
    dimension: int
    num_double_cosets: int
    universal_roundtrip: bool
    witness: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return (self.unit_ok and self.relations_ok and self.universal_roundtrip
                and self.dimension == self.num_double_cosets)


def presentation_check(pair: HeckePair, subnormal: Optional[bool] = None) -> PresentationReport:
    """Structure constants from the relations against the convolution product."""
    _require_subnormal(pair, subnormal)
    G = pair.G
    mul = G.mul
    sig = [sigma(pair, x) for x in pair.dc_reps]
    unit_ok = sig[pair.identity_dc] == unit(pair)
    rel_ok, wit = True, None
    for i, x in enumerate(pair.dc_reps):
        for j, y in enumerate(pair.dc_reps):
            dec = triple_decompose(pair, x, y, subnormal=True)
            from_relations = average_sigma(pair, [mul[mul[x][h]][y] for h in dec.S_xy])
            if from_relations != sig[i] * sig[j]:
                rel_ok, wit = False, (x, y)
                break
        if not rel_ok:
            break
    dim = rank([[b(t) for t in pair.rc_reps] for b in sig])
    A = hecke_algebra(pair)
    hom = universal_hom(pair, lambda x: sigma(pair, x).coords(), A, subnormal=True)
    roundtrip = hom.ok and all(
        hom.images[i] == A.basis_vec(i) for i in range(pair.ndc))
    return PresentationReport(unit_ok, rel_ok, dim, pair.ndc, roundtrip, wit)
