"""Command-line front end.

Exit status: 0 success, 1 input error, 2 resource guard abort, 3 mathematical
discrepancy (a computed invariant disagrees with the theorem it checks).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from pathlib import Path

from . import glie, homology, lcs, oracle, words
from .scomplex import ComplexFormatError, SimplicialComplex, load_complex

EXIT_OK, EXIT_INPUT, EXIT_GUARD, EXIT_DISCREPANCY = 0, 1, 2, 3

GUARD_ERRORS = (oracle.CosetLimitExceeded, homology.SubsetCapExceeded, glie.DegreeCapExceeded)


class CheckFailed(Exception):
    """Raised by a subcommand to exit with the discrepancy status."""


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(args, human: str, payload):
    if args.json:
        sys.stdout.write(dump_json(payload))
    else:
        sys.stdout.write(human.rstrip("\n") + "\n")


# -- subcommands -------------------------------------------------------------------

def cmd_ranks(args, K: SimplicialComplex) -> int:
    r = lcs.lcs_ranks(K)
    _emit(args, f"r1={r.r1} r2={r.r2} r3={r.r3}", r._asdict())
    return EXIT_OK


def cmd_generators(args, K) -> int:
    gens = lcs.gscox_generators(K)
    _emit(args, "\n".join(map(lcs.format_commutator, gens)), {"generators": [list(t) for t in gens]})
    return EXIT_OK


def cmd_basis(args, K) -> int:
    basis = lcs.lrck_basis(K, args.degree)
    _emit(args, "\n".join(map(lcs.format_commutator, basis)),
          {"degree": args.degree, "basis": [list(t) for t in basis]})
    return EXIT_OK


def cmd_homology(args, K) -> int:
    report = homology.rk_homology(K, args.k, cap=args.subset_cap, workers=args.threads)
    lines = [f"H_{args.k}(R_K) = {report.total}"]
    if args.report:
        for J, g in report.contributions.items():
            lines.append(f"  J={{{','.join(map(str, J))}}}: {g}")
    _emit(args, "\n".join(lines), report.to_json())
    return EXIT_OK


def cmd_lie_dims(args, K) -> int:
    D = args.max_degree
    rels = []
    if args.rc2point:
        rels += glie.rc2point_relations(D)
    if args.relations:
        rels += glie.parse_relations(Path(args.relations).read_text())
    dims = glie.quotient_dims(K, rels, D, max_degree=args.degree_cap)
    payload = {"max_degree": D, "dims": list(dims)}
    lines = ["dims=" + ",".join(map(str, dims))]
    status = EXIT_OK
    if args.compare:
        rows = glie.phi_comparison(K, min(D, 3))
        payload["comparison"] = rows
        for row in rows:
            lines.append(f"d={row['degree']}: dim L_K={row['dim_LK']} rank L(RC_K)={row['rank_L_RC']}"
                         f" {'equal' if row['equal'] else 'strict'}")
            if not row["surjective_ok"]:
                status = EXIT_DISCREPANCY
    if args.hilbert:
        ok, lhs, rhs = glie.hilbert_check(K, D, args.hilbert_polynomial)
        payload["hilbert"] = {"ok": ok, "polynomial": args.hilbert_polynomial,
                              "pbw_series": lhs, "inverse_series": rhs}
        lines.append("hilbert series: " + ("ok" if ok else f"MISMATCH for {K!r}: {lhs} vs {rhs}"))
        if not ok:
            status = EXIT_DISCREPANCY
    _emit(args, "\n".join(lines), payload)
    return status


def cmd_oracle(args, K) -> int:
    tables: dict = {}
    res = oracle.oracle_ranks(K, args.cls, args.coset_limit, prune=args.prune,
                              allow_class4=args.allow_class4, tables=tables)
    payload = {"orders": res.orders, "ranks": res.ranks,
               "identities_ok": None, "independence_ok": None}
    lines = ["orders=" + ",".join(map(str, res.orders)), "ranks=" + ",".join(map(str, res.ranks))]
    status = EXIT_OK
    theory = list(lcs.lcs_ranks(K))[:min(args.cls, 3)]
    if res.ranks[:len(theory)] != theory:
        lines.append(f"DISCREPANCY: theorem ranks {theory}")
        status = EXIT_DISCREPANCY
    if args.check_identities or args.check_independence:
        if args.cls < 3:
            raise ValueError("identity and independence checks need --class 3")
        table = tables[3]
    if args.check_identities:
        rep = oracle.check_proof_identities(K, table, seed=args.seed)
        payload["identities_ok"] = rep.ok
        lines.append(f"identities: {'ok' if rep.ok else 'FAILED'} ({rep.checked} instances)")
        for name, idx in (rep.failures + rep.failures_mod_gamma2_prime)[:10]:
            lines.append(f"  failed {name} at {idx}")
        if not rep.ok:
            status = EXIT_DISCREPANCY
    if args.check_independence:
        ok, r = oracle.l3_independence(K, table)
        payload["independence_ok"] = ok
        lines.append(f"L3 independence: {'ok' if ok else 'FAILED'} (subgroup order 2^{r})")
        if not ok:
            status = EXIT_DISCREPANCY
    _emit(args, "\n".join(lines), payload)
    return status


def cmd_normal_form(args, K) -> int:
    w = words.parse_word(" ".join(args.word))
    nf = words.normal_form(K, w)
    _emit(args, " ".join(map(str, nf)) or "(identity)", {"word": list(w), "normal_form": list(nf)})
    return EXIT_OK


def run_verification(K: SimplicialComplex, *, coset_limit: int = oracle.DEFAULT_COSET_LIMIT,
                     max_degree: int = 6, seed: int = 0, samples: int = 200) -> list[dict]:
    """All cross-checks for one complex, as a list of {name, ok, detail} rows."""
    rows = []

    def add(name, ok, detail):
        rows.append({"name": name, "ok": bool(ok), "detail": detail})

    gens = lcs.gscox_generators(K)
    h1 = homology.h1_rank_rk(K)
    add("generators_vs_h1", len(gens) == h1, f"#generators={len(gens)} h1_rank={h1}")
    rk1 = homology.rk_homology(K, 1).total
    add("h1_free_abelian", rk1.free_rank == h1 and not rk1.torsion, f"H_1(R_K)={rk1}")
    ab = oracle.CommutatorAbelianization(K)
    add("commutator_abelianization_rank", ab.rank == h1, f"rank RC'/RC''={ab.rank}")

    theory = lcs.lcs_ranks(K)
    tables: dict = {}
    res = oracle.oracle_ranks(K, 3, coset_limit, tables=tables)
    add("oracle_ranks", res.ranks == list(theory),
        f"oracle={res.ranks} theorem={list(theory)} order={res.orders[-1]}")
    rep = oracle.check_proof_identities(K, tables[3], seed=seed)
    add("proof_identities", rep.ok,
        f"{rep.checked} instances, {len(rep.failures) + len(rep.failures_mod_gamma2_prime)} failures")
    ok, r = oracle.l3_independence(K, tables[3])
    add("l3_independence", ok, f"subgroup order 2^{r}")

    dims = glie.graph_lie_dims(K, max(3, max_degree))
    add("phi_iso_low_degree", dims[0] == theory.r1 and dims[1] == theory.r2,
        f"dims L_K={list(dims[:2])} ranks={[theory.r1, theory.r2]}")
    add("phi_surjective_deg3", dims[2] >= theory.r3, f"dim L_K^3={dims[2]} r3={theory.r3}")
    hil_ok, lhs, rhs = glie.hilbert_check(K, max_degree)
    add("hilbert_series", hil_ok, f"through t^{max_degree}" if hil_ok else f"{lhs} vs {rhs}")

    rng = random.Random(seed)
    hw_ok = True
    for _ in range(samples):
        a, b, c = (tuple(rng.randint(1, K.m) for _ in range(rng.randint(0, 4))) for _ in range(3))
        if not words.verify_hall_witt(K, a, b, c):
            hw_ok = False
            break
    add("hall_witt", hw_ok, f"{samples} random triples")
    return rows


def cmd_verify(args, K) -> int:
    rows = run_verification(K, coset_limit=args.coset_limit, max_degree=args.max_degree,
                            seed=args.seed)
    all_ok = all(r["ok"] for r in rows)
    human = "\n".join(f"{'PASS' if r['ok'] else 'FAIL'}  {r['name']:<32} {r['detail']}" for r in rows)
    _emit(args, human, {"ok": all_ok, "checks": rows})
    return EXIT_OK if all_ok else EXIT_DISCREPANCY


# -- parser ------------------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--threads", type=_positive, default=argparse.SUPPRESS,
                        help="worker processes for subset sweeps")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized checks")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="racglie",
        description="Lower central series invariants of right-angled Coxeter groups.",
        parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("complex", help="complex file (line format or JSON)")
        p.set_defaults(func=func)
        return p

    add("ranks", cmd_ranks, "ranks r1, r2, r3 of L^1..L^3")
    add("generators", cmd_generators, "minimal generators of the commutator subgroup")
    p = add("basis", cmd_basis, "basis of L^k for k = 1, 2, 3")
    p.add_argument("--degree", type=int, choices=(1, 2, 3), required=True)
    p = add("homology", cmd_homology, "homology of the real moment-angle complex")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--report", action="store_true", help="list the nonzero contributions")
    p.add_argument("--subset-cap", type=int, default=homology.DEFAULT_SUBSET_CAP)
    p = add("lie-dims", cmd_lie_dims, "graded dimensions of L_K (mod optional relations)")
    p.add_argument("--max-degree", type=_positive, required=True)
    p.add_argument("--relations", help="file of homogeneous relations, one per line")
    p.add_argument("--rc2point", action="store_true",
                   help="add the relations presenting L(RC_K) for two points")
    p.add_argument("--compare", action="store_true", help="compare with ranks of L(RC_K)")
    p.add_argument("--hilbert", action="store_true", help="check the clique-polynomial identity")
    p.add_argument("--hilbert-polynomial", choices=("clique", "faces"), default="clique",
                   help="cliques of the 1-skeleton (default) or faces of K")
    p.add_argument("--degree-cap", type=int, default=glie.DEFAULT_MAX_DEGREE)
    p = add("oracle", cmd_oracle, "coset-enumeration oracle for RC_K / gamma_{c+1}")
    p.add_argument("--class", dest="cls", type=int, required=True)
    p.add_argument("--coset-limit", type=_positive, default=oracle.DEFAULT_COSET_LIMIT)
    p.add_argument("--check-identities", action="store_true")
    p.add_argument("--check-independence", action="store_true")
    p.add_argument("--prune", action="store_true",
                   help="drop relator tuples whose last two indices coincide")
    p.add_argument("--allow-class4", action="store_true", help="permit class 4 when m = 2")
    p = add("normal-form", cmd_normal_form, "normal form of a word, e.g. '1 2 1 2' or 'c(1,2,3)'")
    p.add_argument("word", nargs="+")
    p = add("verify", cmd_verify, "run every cross-check")
    p.add_argument("--coset-limit", type=_positive, default=oracle.DEFAULT_COSET_LIMIT)
    p.add_argument("--max-degree", type=_positive, default=6)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("json", False), ("seed", 0), ("verbose", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    if not hasattr(args, "threads"):
        env = os.environ.get("RACGLIE_THREADS")
        args.threads = int(env) if env and env.isdigit() and int(env) > 0 else 1
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        K = load_complex(args.complex)
        return args.func(args, K)
    except (ComplexFormatError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GUARD_ERRORS as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (oracle.Discrepancy, CheckFailed) as exc:
        print(f"DISCREPANCY: {exc}", file=sys.stderr)
        return EXIT_DISCREPANCY


if __name__ == "__main__":
    sys.exit(main())
