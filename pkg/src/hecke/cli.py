"""Command line: ``hecke analyze``, ``hecke corpus``, ``hecke axb``.

Exit codes: 0 ok, 2 parse error, 3 validation error, 4 rational overflow,
5 a theorem check failed (an implementation bug, never expected).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional

from .analysis import is_protonormal, is_subnormal
from .axb import (AxbElement, PrimeSet, hecke_witness, nonsubnormal_witness, phi_hom_check,
                  star_solve)
from .config import SCHEMA, VERSION, Config
from .corpus import corpus_groups
from .errors import (GroupValidationError, MembershipError, PreconditionError,
                     RationalOverflow, TheoremViolation)
from .groups import (SubgroupRef, all_subgroups, build_group, generate_subgroup, is_normal,
                     subgroup_from_elements)
from .pair import HeckePair
from .partial_rep import equivalence_suite
from .product_law import product_formula_check
from .rational import bit_limit, env_bits
from .report import analyze, verdict_failures

EXIT_PARSE, EXIT_VALIDATION, EXIT_OVERFLOW, EXIT_THEOREM = 2, 3, 4, 5


class SpecParseError(Exception):
    pass


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_text(obj: Any, prefix: str = "") -> list[str]:
    """Flatten the JSON report into ``key: value`` lines."""
    lines = []
    if isinstance(obj, dict):
        if set(obj) == {"index", "label"}:
            return [f"{prefix}: {obj['label']} (#{obj['index']})"]
        for k in sorted(obj):
            lines += render_text(obj[k], f"{prefix}.{k}" if prefix else k)
    elif isinstance(obj, list) and obj and all(isinstance(v, dict) and set(v) == {"index", "label"}
                                               for v in obj):
        lines.append(f"{prefix}: " + ", ".join(v["label"] for v in obj))
    elif isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            lines += render_text(v, f"{prefix}[{i}]")
    else:
        lines.append(f"{prefix}: {json.dumps(obj, ensure_ascii=False)}")
    return lines


# --- spec loading ----------------------------------------------------------------

def load_spec(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as f:
            spec = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise SpecParseError(f"cannot read spec {path}: {e}") from e
    if not isinstance(spec, dict):
        raise SpecParseError("spec must be a JSON object")
    return spec


def _subgroup(G, desc, what: str) -> SubgroupRef:
    if not isinstance(desc, dict):
        raise SpecParseError(f"{what} must be an object with 'generators' or 'elements'")
    for key in ("generators", "elements"):
        if key in desc:
            idx = desc[key]
            if not isinstance(idx, list) or not all(isinstance(i, int) for i in idx):
                raise SpecParseError(f"{what}.{key} must be a list of integers")
            bad = [i for i in idx if not 0 <= i < G.order]
            if bad:
                raise GroupValidationError(f"{what}: indices out of range: {bad}")
            return generate_subgroup(G, idx) if key == "generators" else subgroup_from_elements(G, idx)
    raise SpecParseError(f"{what} needs 'generators' or 'elements'")


def spec_to_pair(spec: dict):
    G = build_group(spec)
    H = _subgroup(G, spec.get("subgroup", {"generators": []}), "subgroup")
    N = _subgroup(G, spec["N"], "N") if "N" in spec else None
    return G, H, N


# --- commands --------------------------------------------------------------------

def cmd_analyze(args) -> int:
    cfg = Config(audit_full=args.audit_full, timings=args.timings)
    spec = load_spec(args.spec)
    G, H, N = spec_to_pair(spec)
    rep = analyze(G, H, N, cfg)
    text = dumps(rep)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as f:
            f.write(text)
    if args.format == "json":
        sys.stdout.write(text)
    else:
        print("\n".join(render_text(rep)))
    bad = verdict_failures(rep)
    if bad:
        for b in bad:
            print(f"THEOREM CHECK FAILED: {b}", file=sys.stderr)
        return EXIT_THEOREM
    return 0


def corpus_rows(max_ord: int) -> list[dict]:
    rows = []
    for fam, n, G in corpus_groups(max_ord):
        row = {"family": fam, "param": n, "order": G.order, "subgroups": 0, "normal": 0,
               "subnormal": 0, "protonormal": 0, "equivalence_ok": 0,
               "subnormal_product_formula_ok": 0,
               "protonormal_not_subnormal": 0, "pns_product_formula_ok": 0}
        for H in all_subgroups(G):
            pair = HeckePair(G, H)
            proto = is_protonormal(G, H, pair.dc_reps)[0]
            sub = is_subnormal(G, H)[0]
            row["subgroups"] += 1
            row["normal"] += is_normal(H)
            row["subnormal"] += sub
            row["protonormal"] += proto
            row["equivalence_ok"] += equivalence_suite(pair, strict=False, extras=False).consistent
            if sub or proto:
                pf = product_formula_check(pair).holds
                if sub:
                    row["subnormal_product_formula_ok"] += pf
                else:
                    row["protonormal_not_subnormal"] += 1
                    row["pns_product_formula_ok"] += pf
        rows.append(row)
    return rows


def cmd_corpus(args) -> int:
    rows = corpus_rows(args.max_order)
    out = {"schema": SCHEMA, "version": VERSION, "max_order": args.max_order, "groups": rows}
    if args.json:
        with open(args.json, "w", encoding="utf-8") as f:
            f.write(dumps(out))
    cols = ["family", "param", "order", "subgroups", "normal", "subnormal", "protonormal",
            "equivalence_ok", "subnormal_product_formula_ok", "protonormal_not_subnormal",
            "pns_product_formula_ok"]
    print("  ".join(cols))
    for r in rows:
        print("  ".join(str(r[c]) for c in cols))
    total = sum(r["subgroups"] for r in rows)
    eq = sum(r["equivalence_ok"] for r in rows)
    sub = sum(r["subnormal"] for r in rows)
    sub_ok = sum(r["subnormal_product_formula_ok"] for r in rows)
    print(f"pairs={total} equivalence_ok={eq} subnormal={sub} subnormal_product_formula_ok={sub_ok}")
    if eq != total or sub_ok != sub:
        return EXIT_THEOREM
    return 0


def cmd_axb(args) -> int:
    P = PrimeSet.parse(args.primes)
    if args.sub == "nonsubnormal":
        c = nonsubnormal_witness(P, args.p if args.p is not None else P.primes[0])
        out = {"p": c.p, "x": str(c.x), "h": str(c.h), "k": str(c.k),
               "result": {"b": str(c.result.b), "a": str(c.result.a)},
               "in_HP": c.in_HP, "violates_subnormality": c.violates}
    elif args.sub == "star":
        x = AxbElement.parse(args.x)
        h = AxbElement.parse(args.h or "0,1")
        k = AxbElement.parse(args.k or "0,1")
        s = star_solve(x, h, k, P)
        out = {"x": str(x), "h": str(h), "k": str(k), "h_prime": str(s.h2),
               "k_prime": str(s.k2), "identity_ok": s.identity_ok}
    else:
        x = AxbElement.parse(args.x)
        w = hecke_witness(x, P, args.samples, args.seed)
        hom = phi_hom_check(P, w.q, args.samples, args.seed)
        out = {"x": str(x), "primes": list(P.primes), "q": w.q, "index_bound": w.index_bound,
               "samples": w.samples, "passed": w.passed, "seed": w.seed,
               "first_failure": list(w.first_failure) if w.first_failure else None,
               "phi_homomorphism_ok": hom is None}
    out = {"schema": SCHEMA, "version": VERSION, "command": f"axb {args.sub}", **out}
    if args.format == "json":
        sys.stdout.write(dumps(out))
    else:
        print("\n".join(render_text(out)))
    if args.sub == "hecke" and not (out["passed"] == out["samples"] and out["phi_homomorphism_ok"]):
        return EXIT_THEOREM
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hecke", description="Hecke algebras of finite group pairs")
    sub = ap.add_subparsers(dest="cmd", required=True)

    a = sub.add_parser("analyze", help="full report for one group/subgroup spec")
    a.add_argument("spec")
    a.add_argument("--json", metavar="OUT", help="also write the JSON report here")
    a.add_argument("--audit-full", action="store_true", help="quantify over all of G x G")
    a.add_argument("--timings", action="store_true", help="include wall-clock timings")
    a.add_argument("--format", choices=["text", "json"], default="text")
    a.set_defaults(fn=cmd_analyze)

    c = sub.add_parser("corpus", help="sweep all subgroups of the builtin groups")
    c.add_argument("--max-order", type=int, default=24)
    c.add_argument("--json", metavar="OUT")
    c.set_defaults(fn=cmd_corpus)

    x = sub.add_parser("axb", help="checks in the ax+b group over Q")
    x.add_argument("sub", choices=["nonsubnormal", "star", "hecke"])
    x.add_argument("--primes", default="2", help="comma separated, e.g. 2,3")
    x.add_argument("--p", type=int)
    x.add_argument("--x", default="0,1", help="element as b,a")
    x.add_argument("--h")
    x.add_argument("--k")
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--samples", type=int, default=100)
    x.add_argument("--format", choices=["text", "json"], default="text")
    x.set_defaults(fn=cmd_axb)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with bit_limit(env_bits()):
            return args.fn(args)
    except TheoremViolation as e:
        print(f"theorem check failed: {e}", file=sys.stderr)
        return EXIT_THEOREM
    except RationalOverflow as e:
        print(f"overflow: {e}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (GroupValidationError, PreconditionError, MembershipError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except (SpecParseError, ValueError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
