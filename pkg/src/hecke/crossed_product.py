"""The Hecke algebra of a subnormal pair as a crossed product.

Given H normal in N normal in G, the algebra A = F(N/H) sits inside the
Hecke algebra as the span of sigma_n (n in N).  The quotient G/N acts on A
partially: D_t = e_t A with e_x = sigma_x sigma_{x^-1}, theta_t(a) =
sigma_{xi(t)} a sigma_{xi(t)^-1}, and the cocycle is
w_{r,s} = sigma_{xi(r) xi(s) xi(rs)^-1}.

All elements are HeckeElements of the ambient pair, so every identity is
checked in one concrete algebra.  Ideals are held as exact subspaces of the
value vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import HeckeElement, sigma, star, unit
from .errors import PreconditionError, TheoremViolation
from .finite_algebra import FiniteAlgebra
from .groups import SubgroupRef, all_subgroups, coset_space, is_normal, rep_family
from .linalg import Subspace, rank
from .pair import HeckePair
from .product_law import universal_hom
from .rational import ZERO


def _vec(a: HeckeElement) -> tuple:
    return a.values


class TwistedActionData:
    def __init__(self, pair: HeckePair, N: SubgroupRef, xi: Sequence[int]):
        self.pair = pair
        self.N = N
        G = pair.G
        q = coset_space(N, "right")
        self.quotient = q
        m = len(q.reps)
        self.m = m
        self.pi = q.block_of
        self.qmul = tuple(tuple(q.block_of[G.mul[a][b]] for b in q.reps) for a in q.reps)
        self.qinv = tuple(q.block_of[G.inv[a]] for a in q.reps)
        self.xi = tuple(xi)
        self.n_reps = rep_family(N, pair.H)          # basis of F(N/H)
        self.A_basis = [sigma(pair, n) for n in self.n_reps]
        self.A = Subspace([_vec(a) for a in self.A_basis], pair.ndc)
        self._sig: dict[int, HeckeElement] = {}
        self.e = tuple(self.sig(x) * self.sig(G.inv[x]) for x in self.xi)
        self.D = tuple(Subspace([_vec(self.e[t] * a) for a in self.A_basis], pair.ndc)
                       for t in range(m))
        self._w: dict[tuple[int, int], tuple[HeckeElement, HeckeElement]] = {}
        self._meet: dict[tuple, Subspace] = {}
        self._meet_elems: dict[tuple, list[HeckeElement]] = {}

    def sig(self, x: int) -> HeckeElement:
        i = self.pair.dc_of[x]
        s = self._sig.get(i)
        if s is None:
            s = self._sig[i] = sigma(self.pair, x)
        return s

    def elem(self, v) -> HeckeElement:
        return HeckeElement(self.pair, v)

    def D_basis(self, t: int) -> list[HeckeElement]:
        return [self.elem(v) for v in self.D[t].basis]

    def theta(self, t: int, a: HeckeElement) -> HeckeElement:
        x = self.xi[t]
        return self.sig(x) * a * self.sig(self.pair.G.inv[x])

    def theta_inv(self, t: int, a: HeckeElement) -> HeckeElement:
        """Inverse of theta_t on D_t: conjugation by sigma_{xi(t)^-1}."""
        x = self.xi[t]
        return self.sig(self.pair.G.inv[x]) * a * self.sig(x)

    def cocycle_element(self, r: int, s: int) -> int:
        G = self.pair.G
        xi = self.xi
        return G.m(xi[r], xi[s], G.inv[xi[self.qmul[r][s]]])

    def w(self, r: int, s: int) -> HeckeElement:
        return self._wpair(r, s)[0]

    def w_inv(self, r: int, s: int) -> HeckeElement:
        return self._wpair(r, s)[1]

    def _wpair(self, r, s):
        key = (r, s)
        v = self._w.get(key)
        if v is None:
            n = self.cocycle_element(r, s)
            v = self._w[key] = (self.sig(n), self.sig(self.pair.G.inv[n]))
        return v

    def meet(self, *ts: int) -> Subspace:
        key = tuple(sorted(set(ts)))
        S = self._meet.get(key)
        if S is None:
            S = self.D[key[0]]
            for t in key[1:]:
                S = S.intersect(self.D[t])
            self._meet[key] = S
        return S

    def meet_basis(self, *ts: int) -> list[HeckeElement]:
        key = tuple(sorted(set(ts)))
        out = self._meet_elems.get(key)
        if out is None:
            out = self._meet_elems[key] = [self.elem(v) for v in self.meet(*key).basis]
        return out

    def theta_matrix(self, t: int) -> list[list[Fraction]]:
        """Matrix of theta_t from the basis of D_{t^-1} to coordinates in D_t."""
        ti = self.qinv[t]
        cols = []
        for a in self.D_basis(ti):
            c = self.D[t].coords(_vec(self.theta(t, a)))
            if c is None:
                raise TheoremViolation(f"theta_{t} leaves D_{t}")
            cols.append(c)
        return cols

    def w_all_unit(self) -> bool:
        one = unit(self.pair)
        return all(self.w(r, s) == one for r in range(self.m) for s in range(self.m))


def embed_iota(pair: HeckePair, N: SubgroupRef, n: int) -> HeckeElement:
    """Image of the basis vector of Hn in F(N/H): sigma_n."""
    if n not in N:
        raise PreconditionError(f"{n} is not in N")
    if not is_normal(pair.H, N):
        raise PreconditionError("H is not normal in N")
    return sigma(pair, n)


def iota_rank(pair: HeckePair, N: SubgroupRef) -> int:
    reps = rep_family(N, pair.H)
    return rank([embed_iota(pair, N, n).values for n in reps])


def default_section(pair: HeckePair, N: SubgroupRef) -> tuple[int, ...]:
    """Least element of each N-coset; the identity coset gets the identity."""
    return coset_space(N, "right").reps


def _check_chain(pair: HeckePair, N: SubgroupRef) -> None:
    if not pair.H.set <= N.set:
        raise PreconditionError("H is not contained in N")
    if not is_normal(pair.H, N):
        raise PreconditionError("H is not normal in N")
    if not is_normal(N):
        raise PreconditionError("N is not normal in G")


def _check_section(q, xi) -> None:
    if len(xi) != len(q.reps):
        raise PreconditionError("section has the wrong length")
    if xi[0] != 0:
        raise PreconditionError("section must send the identity coset to the identity")
    for t, x in enumerate(xi):
        if q.block_of[x] != t:
            raise PreconditionError(f"section value {x} is not in coset {t}")


def build_action(pair: HeckePair, N: SubgroupRef, xi: Optional[Sequence[int]] = None,
                 verify: bool = True) -> TwistedActionData:
    """Construct the partial action and check the lemmas it rests on."""
    _check_chain(pair, N)
    q = coset_space(N, "right")
    xi = tuple(xi) if xi is not None else default_section(pair, N)
    _check_section(q, xi)
    data = TwistedActionData(pair, N, xi)
    if verify:
        _verify_build(data)
    return data


def _in_A(data: TwistedActionData, a: HeckeElement) -> bool:
    return _vec(a) in data.A


def _verify_build(data: TwistedActionData) -> None:
    pair = data.pair
    G = pair.G
    inv, mul = G.inv, G.mul
    if data.A.dim != len(data.n_reps):
        raise TheoremViolation("iota is not injective")
    # products landing in N stay in A
    for x in pair.dc_reps:
        for n in data.N:
            y = mul[inv[x]][n]
            if not _in_A(data, data.sig(x) * data.sig(y)):
                raise TheoremViolation(f"sigma_x sigma_y outside A for x={x}, y={y}")
    # e_x: central idempotent of A, constant on N-cosets
    for t in range(data.m):
        e = data.e[t]
        if e * e != e or not _in_A(data, e):
            raise TheoremViolation(f"e_{t} is not an idempotent of A")
        for a in data.A_basis:
            if e * a != a * e:
                raise TheoremViolation(f"e_{t} is not central in A")
    for x in range(G.order):
        if data.sig(x) * data.sig(inv[x]) != data.e[data.pi[x]]:
            raise TheoremViolation(f"e_x depends on more than Nx (x={x})")
    # theta_t: D_{t^-1} -> D_t bijective, multiplicative, inverted by theta_inv
    for t in range(data.m):
        ti = data.qinv[t]
        images = Subspace([_vec(data.theta(t, a)) for a in data.A_basis], pair.ndc)
        if images != data.D[t]:
            raise TheoremViolation(f"psi_x(A) != D_t for t={t}")
        src = data.D_basis(ti)
        imgs = [data.theta(t, a) for a in src]
        if rank([_vec(b) for b in imgs]) != len(src) or len(src) != data.D[t].dim:
            raise TheoremViolation(f"theta_{t} is not bijective")
        for a, b in zip(src, imgs):
            if data.theta_inv(t, b) != a:
                raise TheoremViolation(f"theta_{t} is not inverted on D_t^-1")
            for c, d in zip(src, imgs):
                if data.theta(t, a * c) != b * d:
                    raise TheoremViolation(f"theta_{t} is not multiplicative")
    # cocycle identities
    for r in range(data.m):
        for s in range(data.m):
            x, y = data.xi[r], data.xi[s]
            z = data.xi[data.qmul[r][s]]
            ey = data.e[data.qinv[s]]
            sx, sy, sz = data.sig(x), data.sig(y), data.sig(z)
            if sx * sy * ey != data.w(r, s) * sz * ey:
                raise TheoremViolation(f"cocycle identity (i) fails at ({r}, {s})")
            lhs = ey * data.sig(inv[y]) * data.sig(inv[x])
            if lhs != ey * data.sig(inv[z]) * data.w_inv(r, s):
                raise TheoremViolation(f"cocycle identity (ii) fails at ({r}, {s})")


@dataclass
class AxiomReport:
    results: dict = field(default_factory=dict)   # axiom -> (ok, witness)

    @property
    def ok(self) -> bool:
        return all(v[0] for v in self.results.values())


def check_tpa_axioms(data: TwistedActionData) -> AxiomReport:
    """The eight partial-action axioms, over all quotient elements and ideal bases."""
    pair = data.pair
    m = data.m
    qmul, qinv = data.qmul, data.qinv
    one = unit(pair)
    rep = AxiomReport()
    E = data.elem

    # (i) D_1 = A and theta_1 = id
    ok = data.D[0] == data.A and all(data.theta(0, a) == a for a in data.A_basis)
    rep.results["i"] = (ok, None if ok else (0,))

    # (ii) theta_r(D_{r^-1} cap D_s) = D_r cap D_rs
    wit = None
    for r in range(m):
        for s in range(m):
            img = Subspace([_vec(data.theta(r, a)) for a in data.meet_basis(qinv[r], s)], pair.ndc)
            if img != data.meet(r, qmul[r][s]):
                wit = (r, s)
                break
        if wit:
            break
    rep.results["ii"] = (wit is None, wit)

    # (iii) theta_r theta_s (a) = w_rs theta_rs(a) w_rs^-1 on D_{s^-1} cap D_{(rs)^-1}
    wit = None
    for r in range(m):
        for s in range(m):
            rs = qmul[r][s]
            for a in data.meet_basis(qinv[s], qinv[rs]):
                if data.theta(r, data.theta(s, a)) != data.w(r, s) * data.theta(rs, a) * data.w_inv(r, s):
                    wit = (r, s)
                    break
            if wit:
                break
        if wit:
            break
    rep.results["iii"] = (wit is None, wit)

    # (iv) w_{1,t} = w_{t,1} = 1
    wit = next((t for t in range(m) if data.w(0, t) != one or data.w(t, 0) != one), None)
    rep.results["iv"] = (wit is None, wit)

    # (v) theta_r(a w_st) w_{r,st} = theta_r(a) w_rs w_{rs,t} on D_{r^-1} cap D_s cap D_st
    wit = None
    for r in range(m):
        for s in range(m):
            for t in range(m):
                st = qmul[s][t]
                rs = qmul[r][s]
                for a in data.meet_basis(qinv[r], s, st):
                    lhs = data.theta(r, a * data.w(s, t)) * data.w(r, st)
                    rhs = data.theta(r, a) * data.w(r, s) * data.w(rs, t)
                    if lhs != rhs:
                        wit = (r, s, t)
                        break
                if wit:
                    break
            if wit:
                break
        if wit:
            break
    rep.results["v"] = (wit is None, wit)

    # (vi) D_t* = D_t
    wit = next((t for t in range(m)
                if any(_vec(star(E(v))) not in data.D[t] for v in data.D[t].basis)), None)
    rep.results["vi"] = (wit is None, wit)

    # (vii) theta_t(a*) = theta_t(a)*
    wit = None
    for t in range(m):
        for v in data.D[qinv[t]].basis:
            a = E(v)
            if data.theta(t, star(a)) != star(data.theta(t, a)):
                wit = (t,)
                break
        if wit:
            break
    rep.results["vii"] = (wit is None, wit)

    # (viii) w_rs^-1 = w_rs^*
    wit = None
    for r in range(m):
        for s in range(m):
            w, wi = data.w(r, s), data.w_inv(r, s)
            if w * wi != one or wi * w != one or star(w) != wi:
                wit = (r, s)
                break
        if wit:
            break
    rep.results["viii"] = (wit is None, wit)
    return rep


class CrossedProduct:
    """Direct sum of the D_t with the twisted product, as a FiniteAlgebra."""

    def __init__(self, data: TwistedActionData):
        self.data = data
        self.index = [(t, k) for t in range(data.m) for k in range(data.D[t].dim)]
        self.offset = {}
        pos = 0
        for t in range(data.m):
            self.offset[t] = pos
            pos += data.D[t].dim
        self.dim = pos
        self.bases = [data.D_basis(t) for t in range(data.m)]
        unit_c = data.D[0].coords(_vec(unit(data.pair)))
        u = [ZERO] * self.dim
        for k, c in enumerate(unit_c):
            u[self.offset[0] + k] = c
        self.algebra = FiniteAlgebra(self.dim, self._product, u, name="crossed-product")

    def embed(self, t: int, a: HeckeElement) -> tuple:
        """a (in D_t) placed in the t-th summand."""
        c = self.data.D[t].coords(_vec(a))
        if c is None:
            raise TheoremViolation(f"element is not in D_{t}")
        v = [ZERO] * self.dim
        o = self.offset[t]
        for k, x in enumerate(c):
            v[o + k] = x
        return tuple(v)

    def component(self, i: int) -> tuple[int, HeckeElement]:
        t, k = self.index[i]
        return t, self.bases[t][k]

    def _product(self, i: int, j: int):
        d = self.data
        g, a = self.component(i)
        h, b = self.component(j)
        c = d.theta(g, d.theta_inv(g, a) * b) * d.w(g, h)
        return self.embed(d.qmul[g][h], c)


def crossed_product(data: TwistedActionData, check: bool = True) -> CrossedProduct:
    cp = CrossedProduct(data)
    if check:
        ax = check_tpa_axioms(data)
        if not ax.ok:
            raise TheoremViolation(f"partial-action axioms fail: {ax.results}")
        wit = cp.algebra.associativity_witness()
        if wit is not None:
            raise TheoremViolation(f"crossed product is not associative at {wit}")
        if cp.algebra.unit_witness() is not None:
            raise TheoremViolation("crossed product unit fails")
    return cp


@dataclass
class PhiReport:
    dim_crossed: int
    num_double_cosets: int
    phi_unital: bool
    phi_multiplicative: bool
    psi_ok: bool
    phi_psi_identity: bool
    psi_phi_identity: bool
    witness: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return (self.dim_crossed == self.num_double_cosets and self.phi_unital
                and self.phi_multiplicative and self.psi_ok and self.phi_psi_identity
                and self.psi_phi_identity)


def phi_isomorphism(cp: CrossedProduct) -> PhiReport:
    """Phi(a delta_t) = a sigma_{xi(t)} and its inverse from the universal property."""
    d = cp.data
    pair = d.pair
    G = pair.G
    alg = cp.algebra

    def Phi(v) -> HeckeElement:
        acc = HeckeElement.zero(pair)
        for i, c in enumerate(v):
            if c:
                t, a = cp.component(i)
                acc = acc + (a * d.sig(d.xi[t])).scale(c)
        return acc

    images = [Phi(alg.basis_vec(i)) for i in range(cp.dim)]
    unital = Phi(alg.unit()) == unit(pair)
    mult, wit = True, None
    for i in range(cp.dim):
        for j in range(cp.dim):
            if Phi(alg.basis_product(i, j)) != images[i] * images[j]:
                mult, wit = False, (i, j)
                break
        if not mult:
            break

    def tau(x):
        t = d.pi[x]
        n = G.mul[x][G.inv[d.xi[t]]]
        e = d.sig(x) * d.sig(G.inv[x])
        return cp.embed(t, e * d.sig(n))

    hom = universal_hom(pair, tau, alg, subnormal=True)
    psi_ok = hom.ok
    phipsi = psiphi = False
    if psi_ok:
        phipsi = all(Phi(hom.images[i]) == sigma(pair, x) for i, x in enumerate(pair.dc_reps))
        psiphi = all(hom.apply(images[i]) == alg.basis_vec(i) for i in range(cp.dim))
    return PhiReport(cp.dim, pair.ndc, unital, mult, psi_ok, phipsi, psiphi, wit)


@dataclass
class UntwistResult:
    found: bool
    section: Optional[tuple] = None
    complement: Optional[SubgroupRef] = None
    w_all_unit: Optional[bool] = None


def untwist_detect(data: TwistedActionData) -> UntwistResult:
    """Search for a homomorphic section, i.e. a complement K of N in G.

    The section then sends each coset to its unique element of K, and every
    cocycle value is sigma_1 = 1."""
    pair, N = data.pair, data.N
    G = pair.G
    m = data.m
    for K in all_subgroups(G):
        if len(K) != m or (K.set & N.set) != {0}:
            continue
        sec = [None] * m
        for k in K:
            sec[data.pi[k]] = k
        sec = tuple(sec)
        alt = build_action(pair, N, sec, verify=False)
        if any(alt.cocycle_element(r, s) != 0 for r in range(m) for s in range(m)):
            raise TheoremViolation("complement section is not homomorphic")
        return UntwistResult(True, sec, K, alt.w_all_unit())
    return UntwistResult(False)
