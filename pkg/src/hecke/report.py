"""Build the JSON analysis report for one (G, H) pair.

Everything in the report is a plain JSON value: rationals become ``"n/d"``
strings, elements are reported as {"index", "label"}.  The text rendering
in the CLI walks this dict and never recomputes anything.
"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Any, Optional

from .algebra import lambda_isomorphism
from .analysis import analyze_pair, delta_is_multiplicative
from .config import SCHEMA, VERSION, Config
from .crossed_product import (build_action, check_tpa_axioms, crossed_product,
                              phi_isomorphism, untwist_detect)
from .errors import PreconditionError
from .groups import GroupTable, SubgroupRef
from .pair import HeckePair
from .partial_rep import equivalence_suite
from .product_law import presentation_check, product_formula_check, triple_count_audit
from .rational import fmt


def _el(G: GroupTable, x: Optional[int]):
    if x is None:
        return None
    return {"index": x, "label": G.label(x)}


def _q(v) -> str:
    return fmt(Fraction(v))


def _witness(G: GroupTable, w):
    """("left", x, y) / ("unit", 0) -> labelled dict."""
    if not w:
        return None
    out = {"axiom": w[0], "x": _el(G, w[1])}
    if len(w) > 2:
        out["y"] = _el(G, w[2])
    return out


class _Clock:
    def __init__(self):
        self.marks: dict[str, float] = {}

    def run(self, name, fn, *args, **kw):
        t = time.perf_counter()
        out = fn(*args, **kw)
        self.marks[name] = round(time.perf_counter() - t, 6)
        return out


def analyze(G: GroupTable, H: SubgroupRef, N: Optional[SubgroupRef] = None,
            cfg: Optional[Config] = None, source: Any = None) -> dict:
    cfg = cfg or Config()
    clk = _Clock()
    pair = clk.run("pair", HeckePair, G, H)
    pr = clk.run("analysis", analyze_pair, G, H, pair)
    out: dict[str, Any] = {
        "schema": SCHEMA,
        "version": VERSION,
        "seed": cfg.seed,
        "audit_full": cfg.audit_full,
        "group": {"name": G.name, "order": G.order, "abelian": G.is_abelian()},
        "subgroup": {"order": len(H), "elements": [_el(G, h) for h in H]},
    }
    if source is not None:
        out["source"] = source

    dcs = pair.dc_reps
    out["pair"] = {
        "index": pr.index,
        "num_double_cosets": pr.num_double_cosets,
        "double_coset_reps": [_el(G, x) for x in dcs],
        "R": [_q(pr.R[x]) for x in dcs],
        "Delta": [_q(pr.Delta[x]) for x in dcs],
        "delta_multiplicative": delta_is_multiplicative(pair) is None,
        "is_normal": pr.is_normal,
        "is_protonormal": pr.is_protonormal,
        "protonormal_witness": _el(G, pr.protonormal_witness),
        "is_subnormal": pr.is_subnormal,
        "normal_closure_order": len(pr.subnormal_witness) if pr.subnormal_witness else None,
        "subnormal_violation": ([_el(G, v) for v in pr.subnormal_violation]
                                if pr.subnormal_violation else None),
    }

    eq = clk.run("partial_rep", equivalence_suite, pair, audit_full=cfg.audit_full)
    out["partial_rep"] = {
        "is_partial_rep": eq.is_partial_rep,
        "weak_identity": eq.weak_identity,
        "agrees_with_protonormality": eq.consistent,
        "witness": _witness(G, eq.partial_rep_witness),
        "weak_witness": _el(G, eq.weak_witness),
        "commutation": eq.commutation_ok,
        "idempotents": eq.idempotents_ok,
        "kernel_is_H": eq.kernel_is_H,
        "full_audit": eq.audit or None,
    }

    lam = clk.run("lambda", lambda_isomorphism, pair)
    out["involutions"] = {"lambda_is_identity": lam.is_identity()}

    pf = clk.run("product_formula", product_formula_check, pair, full=cfg.audit_full)
    law: dict[str, Any] = {
        "product_formula": pf.holds,
        "pairs_checked": pf.pairs_checked,
        "failures": [[_el(G, x), _el(G, y)] for x, y in pf.failures[:10]],
        "num_failures": len(pf.failures),
    }
    if pr.is_subnormal:
        bad = clk.run("triple_count", triple_count_audit, pair, full=cfg.audit_full, subnormal=True)
        law["triple_count_audit"] = bad is None
        pres = clk.run("presentation", presentation_check, pair, subnormal=True)
        law["presentation"] = pres.ok
        law["algebra_dimension"] = pres.dimension
    out["product_law"] = law

    if pr.is_subnormal or N is not None:
        if N is None:
            N = pr.subnormal_witness
        if not pr.is_subnormal:
            raise PreconditionError("a chain H < N < G was given but H is not subnormal")
        data = clk.run("action", build_action, pair, N)
        ax = clk.run("axioms", check_tpa_axioms, data)
        cp = clk.run("crossed_product", crossed_product, data, check=False)
        assoc = clk.run("associativity", cp.algebra.associativity_witness) is None
        phi = clk.run("phi", phi_isomorphism, cp)
        un = clk.run("untwist", untwist_detect, data)
        out["crossed_product"] = {
            "N_order": len(N),
            "N_elements": [h for h in N],
            "quotient_order": data.m,
            "section": [_el(G, x) for x in data.xi],
            "axioms": {k: v[0] for k, v in ax.results.items()},
            "associative": assoc,
            "dimension": cp.dim,
            "phi_isomorphism": phi.ok,
            "cocycle_trivial": data.w_all_unit(),
            "untwisted_section": [_el(G, x) for x in un.section] if un.found else None,
            "untwisted_cocycle_trivial": un.w_all_unit,
        }
    else:
        out["crossed_product"] = None

    if cfg.timings:
        out["timings"] = clk.marks
    return out


def verdict_failures(rep: dict) -> list[str]:
    """Checks that must pass whenever their hypotheses hold; an entry here
    means the implementation disagrees with a theorem."""
    bad = []
    if not rep["pair"]["delta_multiplicative"]:
        bad.append("Delta is not multiplicative")
    if not rep["partial_rep"]["agrees_with_protonormality"]:
        bad.append("partial-rep verdict disagrees with protonormality")
    if rep["pair"]["is_subnormal"]:
        law = rep["product_law"]
        for k in ("product_formula", "triple_count_audit", "presentation"):
            if not law.get(k):
                bad.append(f"{k} fails on a subnormal pair")
        cp = rep["crossed_product"]
        if cp is not None:
            for k, ok in cp["axioms"].items():
                if not ok:
                    bad.append(f"partial-action axiom {k} fails")
            for k in ("associative", "phi_isomorphism"):
                if not cp[k]:
                    bad.append(f"crossed product: {k} fails")
            if cp["dimension"] != rep["pair"]["num_double_cosets"]:
                bad.append("crossed-product dimension differs from the double-coset count")
    return bad
