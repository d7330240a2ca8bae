"""The ten acceptance criteria, at zero tolerance.

Each test records one PASS/FAIL line; conftest prints them in the terminal
summary so they show up in a plain ``pytest -v`` run.
"""

import json
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from hecke.algebra import (basis, from_operator, lambda_isomorphism, sharp, sigma, star,
                           to_operator, unit)
from hecke.analysis import delta_is_multiplicative, is_protonormal, is_subnormal
from hecke.axb import AxbElement, PrimeSet, hecke_witness, nonsubnormal_witness, star_fuzz
from hecke.corpus import corpus_pairs
from hecke.crossed_product import (build_action, check_tpa_axioms, crossed_product,
                                   phi_isomorphism, untwist_detect)
from hecke.groups import dihedral, generate_subgroup, symmetric, trivial
from hecke.module_space import sigma_op
from hecke.pair import HeckePair
from hecke.partial_rep import check_sigma, check_sigma_weak
from hecke.product_law import product_formula_check, triple_count_audit

from conftest import el, record

MAX_ORDER = 24


@pytest.fixture(scope="module")
def corpus():
    return [(fam, n, HeckePair(G, H)) for fam, n, G, H in corpus_pairs(MAX_ORDER)]


@pytest.fixture(scope="module")
def subnormal(corpus):
    out = []
    for fam, n, P in corpus:
        ok, N, _ = is_subnormal(P.G, P.H)
        if ok:
            out.append((fam, n, P, N))
    return out


def name(fam, n, P):
    return f"{fam}({n}) |H|={len(P.H)} H={list(P.H.elements)}"


def verdict(num, bad, detail):
    ok = not bad
    record(num, ok, detail if ok else f"{detail}; first failure: {bad[0]}")
    assert ok, bad[:5]


def test_criterion_1_protonormal_iff_partial_rep(corpus):
    t = time.perf_counter()
    bad = []
    for fam, n, P in corpus:
        proto = is_protonormal(P.G, P.H)[0]
        pr = check_sigma(P).is_partial_rep
        weak = check_sigma_weak(P)[0]
        if not proto == pr == weak:
            bad.append(name(fam, n, P))
    dt = time.perf_counter() - t
    if dt >= 120:
        bad.append(f"runtime {dt:.1f}s over the 120s budget")
    verdict(1, bad, f"{len(corpus)} pairs, protonormal == partial rep == weak identity, {dt:.1f}s")


def test_criterion_2_product_formula(subnormal):
    bad = []
    checked = 0
    for fam, n, P, _ in subnormal:
        rep = product_formula_check(P)
        checked += rep.pairs_checked
        if not rep.holds:
            bad.append((name(fam, n, P), rep.failures[0]))
    D4 = dihedral(4)
    P = HeckePair(D4, generate_subgroup(D4, [el(D4, "s")]))
    r = el(D4, "r")
    golden = (unit(P) + sigma(P, el(D4, "r^2"))).scale(Fraction(1, 2))
    if sigma(P, r) * sigma(P, r) != golden:
        bad.append("golden case D4/<s>: sigma_r sigma_r")
    verdict(2, bad, f"{len(subnormal)} subnormal pairs, {checked} rep pairs, golden D4 case")


def test_criterion_3_triple_count_full(subnormal):
    bad = []
    for fam, n, P, _ in subnormal:
        w = triple_count_audit(P, full=True, subnormal=True)
        if w is not None:
            bad.append((name(fam, n, P), w))
    verdict(3, bad, f"{len(subnormal)} subnormal pairs, all (x, y) in G x G")


def test_criterion_4_dictionary(corpus):
    bad = []
    for fam, n, P in corpus:
        B = basis(P)
        ops = [to_operator(b) for b in B]
        for x, b, op in zip(P.dc_reps, B, ops):
            if from_operator(op) != b or op != sigma_op(P, x):
                bad.append((name(fam, n, P), "round trip", x))
        for i, a in enumerate(B):
            for j, b in enumerate(B):
                if to_operator(a * b) != ops[i] @ ops[j]:
                    bad.append((name(fam, n, P), "composition", i, j))
    verdict(4, bad, f"{len(corpus)} pairs, round trip and composition on all basis pairs")


def test_criterion_5_involutions(corpus):
    bad = []
    for fam, n, P in corpus:
        tag = name(fam, n, P)
        B = basis(P)
        for x, b in zip(P.dc_reps, B):
            if star(star(b)) != b or sharp(sharp(b)) != b:
                bad.append((tag, "not involutive", x))
            if star(b) != sigma(P, P.G.inv[x]):
                bad.append((tag, "star(sigma_x) != sigma_{x^-1}", x))
        for a in B:
            for b in B:
                ab = a * b
                if star(ab) != star(b) * star(a) or sharp(ab) != sharp(b) * sharp(a):
                    bad.append((tag, "not anti-multiplicative"))
        if not lambda_isomorphism(P).is_identity():
            bad.append((tag, "Lambda is not the identity"))
        w = delta_is_multiplicative(P)
        if w is not None:
            bad.append((tag, "Delta not multiplicative", w))
    verdict(5, bad, f"{len(corpus)} pairs, star/sharp laws, Lambda = id, Delta multiplicative")


def run_crossed(P, N):
    data = build_action(P, N)
    ax = check_tpa_axioms(data)
    cp = crossed_product(data, check=False)
    assoc = cp.algebra.associativity_witness()
    phi = phi_isomorphism(cp)
    return ax, assoc, phi, cp


def test_criterion_6_crossed_product(subnormal):
    bad = []
    for fam, n, P, N in subnormal:
        ax, assoc, phi, cp = run_crossed(P, N)
        tag = name(fam, n, P)
        if not ax.ok:
            bad.append((tag, {k: v for k, v in ax.results.items() if not v[0]}))
        if assoc is not None:
            bad.append((tag, "not associative", assoc))
        if not phi.ok:
            bad.append((tag, "Phi/Psi", phi))
        if cp.dim != P.ndc:
            bad.append((tag, "dimension", cp.dim, P.ndc))
    D4 = dihedral(4)
    P = HeckePair(D4, generate_subgroup(D4, [el(D4, "s")]))
    K4 = generate_subgroup(D4, [el(D4, "s"), el(D4, "r^2")])
    ax, assoc, phi, cp = run_crossed(P, K4)
    if not (ax.ok and assoc is None and phi.ok and cp.dim == 3):
        bad.append("golden case D4/<s> with N = K4")
    verdict(6, bad, f"{len(subnormal)} subnormal pairs with N = normal closure, golden D4/K4")


def test_criterion_7_untwisted():
    S3 = symmetric(3)
    Z3 = generate_subgroup(S3, [el(S3, "(1 2 3)")])
    bad = []
    for H in (trivial(S3), Z3):
        data = build_action(HeckePair(S3, H), Z3)
        un = untwist_detect(data)
        if not (un.found and un.w_all_unit):
            bad.append(f"|H|={len(H)}: {un}")
    verdict(7, bad, "S3 = Z3 x| Z2, H in {1, Z3}: homomorphic section found, every w = 1")


def test_criterion_8_axb():
    bad = []
    P2 = PrimeSet((2,))
    cert = nonsubnormal_witness(P2, 2)
    if cert.result != AxbElement(Fraction(1, 2), -1) or cert.in_HP:
        bad.append(f"nonsubnormal witness gave {cert.result}, in_HP={cert.in_HP}")
    t = time.perf_counter()
    ok, fails = star_fuzz(1000, seed=0, P=P2)
    if ok != 1000:
        bad.append(f"star_solve failed on {len(fails)} samples: {fails[:3]}")
    w = hecke_witness(AxbElement(0, Fraction(1, 2)), P2, samples=100, seed=0)
    if not (w.q == 2 and w.passed == 100 == w.samples):
        bad.append(f"hecke witness q={w.q} passed={w.passed}")
    dt = time.perf_counter() - t
    verdict(8, bad, f"(1/2, -1) not in H_P; star 1000/1000; q = 2 with 100/100; {dt:.2f}s")


def test_criterion_9_negative_control():
    S3 = symmetric(3)
    P = HeckePair(S3, generate_subgroup(S3, [el(S3, "(1 2)")]))
    bad = []
    proto, x = is_protonormal(S3, P.H)
    if proto or x is None:
        bad.append("S3/<(1 2)> reported protonormal")
    weak, wx = check_sigma_weak(P, audit_full=True)
    if weak or wx is None:
        bad.append("no partial-isometry failure reported")
    else:
        s = sigma(P, wx)
        if s * sigma(P, S3.inv[wx]) * s == s:
            bad.append(f"reported x = {wx} does not actually fail")
    verdict(9, bad, f"witness x = {S3.label(x) if x is not None else None}, "
                    f"sigma_x sigma_x^-1 sigma_x != sigma_x at x = "
                    f"{S3.label(wx) if wx is not None else None}")


def test_criterion_10_determinism(tmp_path):
    spec = tmp_path / "d4.json"
    spec.write_text(json.dumps({"kind": "builtin", "family": "dihedral", "param": 4,
                                "subgroup": {"generators": [4]}}))
    outs = []
    for i in range(2):
        out = tmp_path / f"run{i}.json"
        r = subprocess.run([sys.executable, "-m", "hecke.cli", "analyze", str(spec),
                            "--json", str(out)], capture_output=True)
        outs.append((r.returncode, out.read_bytes(), r.stdout))
    bad = []
    if outs[0][0] != 0 or outs[1][0] != 0:
        bad.append(f"exit codes {outs[0][0]}, {outs[1][0]}")
    if outs[0][1] != outs[1][1] or outs[0][2] != outs[1][2]:
        bad.append("JSON differs between runs")
    verdict(10, bad, f"two runs, {len(outs[0][1])} bytes of JSON, identical")
