"""Command-line front end.

Exit codes: 0 success / pass, 1 negative verdict, 2 usage, parse or shape
error, 3 enumeration bound exceeded.  Errors go to stderr as a JSON object
``{"error": <code>, "message": <text>}``.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import absprop as ap
from . import formula as fm
from . import morphism as mo
from .boolean import bl_compose_checked, ba_compose, bu_compose, make_context, witness_proof
from .errors import BoundExceededError, LogicError, ShapeError
from .serialize import (
    ba_from_json,
    bu_from_json,
    dumps,
    linking_from_json,
    mask_list,
    morphism_from_json,
    morphism_to_json,
    object_from_json,
    prop_to_json,
    to_dot,
    to_json,
    witness_to_json,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3


class UsageError(LogicError):
    code = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path}: {exc}") from exc


def _sizes(text, count):
    try:
        sizes = [int(s) for s in text.split(",")]
    except (AttributeError, ValueError):
        raise UsageError(f"--shape must be {count} comma-separated leaf counts") from None
    if len(sizes) != count or any(s < 0 for s in sizes):
        raise UsageError(f"--shape must be {count} comma-separated leaf counts")
    return sizes


def cmd_compile(args, out):
    print(dumps(prop_to_json(ap.compile_formula(args.formula))), file=out)
    return EXIT_OK


def cmd_truth(args, out):
    f = fm.parse(args.formula)
    prop = ap.compile_formula(f)
    bad = ap.untrue_resolution(prop)
    if bad is None:
        print("true", file=out)
        return EXIT_OK
    print("false", file=out)
    witness = {
        "resolution": mask_list(bad),
        "labels": [str(prop.labels[i]) for i in mask_list(bad)],
        "falsifying_assignment": fm.falsifying_assignment(f),
    }
    print(json.dumps(witness), file=out)
    return EXIT_FAIL


def cmd_check(args, out):
    m = morphism_from_json(_load(args.morphism))
    failure = mo.strict_failure(m) if args.condition == "strict" else mo.lax_failure(m)
    result = {"condition": args.condition, "pass": failure is None, **to_json(mo.report(m))}
    result["witness"] = witness_to_json(failure)
    print(dumps(result), file=out)
    return EXIT_OK if failure is None else EXIT_FAIL


def cmd_compose(args, out):
    f_data, g_data = _load(args.first), _load(args.second)
    if args.category == "g":
        result = mo.compose(morphism_from_json(f_data), morphism_from_json(g_data))
    elif args.category == "bu":
        result = bu_compose(bu_from_json(f_data), bu_from_json(g_data))
    elif args.category == "ba":
        result = ba_compose(ba_from_json(f_data), ba_from_json(g_data))
    else:
        result = bl_compose_checked(linking_from_json(f_data), linking_from_json(g_data))
    print(dumps(to_json(result)), file=out)
    return EXIT_OK


def cmd_enumerate(args, out):
    a, b = ap.compile_formula(args.source), ap.compile_formula(args.target)
    found = mo.enumerate_morphisms(a, b, args.condition)
    result = {
        "condition": args.condition,
        "source": prop_to_json(a),
        "target": prop_to_json(b),
        "count": len(found),
        "morphisms": [[list(p) for p in m.sorted_pairs()] for m in found],
    }
    print(dumps(result), file=out)
    return EXIT_OK


def cmd_prove(args, out):
    f = fm.parse(args.formula)
    atoms = args.atoms.split(",") if args.atoms is not None else fm.atoms(f)
    if not atoms:
        raise UsageError("no atoms: pass --atoms")
    proof = witness_proof(make_context(atoms), ap.compile_formula(f))
    if proof is None:
        print("unprovable", file=out)
        return EXIT_FAIL
    print(dumps(to_json(proof)), file=out)
    return EXIT_OK


def cmd_factor(args, out):
    m = morphism_from_json(_load(args.morphism))
    if args.kind == "mixsoft":
        result = mo.mix_soft_factor(m)
    elif args.kind == "distribution":
        na, nb, nc = _sizes(args.shape, 3)
        if na + nb + nc != m.source.n:
            raise ShapeError("shape leaf counts do not add up to the source leaf count")
        a, rest = ap.split_product(m.source, na)
        b, c = ap.split_sum(rest, nb)
        residual = mo.factor_distribution(m, a, b, c)
        result = mo.FactorResult("distribution", mo.distribution(a, b, c), residual, residual)
    else:
        na, nc = _sizes(args.shape, 2)
        a, b = ap.split_product(m.source, na)
        c, d = ap.split_sum(m.target, nc)
        result = mo.softness_witness(m, a, b, c, d)
    print(dumps(to_json(result)), file=out)
    return EXIT_OK


def cmd_dot(args, out):
    out.write(to_dot(object_from_json(_load(args.object))))
    return EXIT_OK


def cmd_selftest(args, out):
    """Randomised spot checks of the main invariants; ``SEED`` fixes the sample."""
    from .sampling import random_formula, random_relation

    seed = int(os.environ.get("SEED", "0"))
    rng = random.Random(seed)
    atoms = ["p", "q", "r"]
    failures = []
    for i in range(args.count):
        f = random_formula(rng, atoms, rng.randint(1, 7), constants=True)
        if ap.is_true(ap.compile_formula(f)) != fm.is_tautology(f):
            failures.append(f"truth mismatch on {fm.render(f)}")
        a = ap.compile_formula(random_formula(rng, atoms[:2], rng.randint(1, 4)))
        b = ap.compile_formula(random_formula(rng, atoms[:2], rng.randint(1, 4)))
        m = random_relation(rng, a, b, rng.random())
        if not (mo.coincide_strict(m) and mo.coincide_lax(m)):
            failures.append(f"condition mismatch on {morphism_to_json(m)}")
        n = rng.randint(0, 10)
        sets = [rng.getrandbits(n) for _ in range(rng.randint(0, 5))]
        if ap.orthogonal(n, sets) != ap.orthogonal(n, sets, method="brute"):
            failures.append(f"orthogonal mismatch on n={n} sets={sets}")
    print(dumps({"seed": seed, "cases": args.count, "failures": failures}), file=out)
    return EXIT_OK if not failures else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="abslogic", description="Abstract propositions and proofs.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("compile", help="compile a formula to proposition JSON")
    p.add_argument("formula")
    p.set_defaults(run=cmd_compile)

    p = sub.add_parser("truth", help="decide abstract truth of a formula")
    p.add_argument("formula")
    p.set_defaults(run=cmd_truth)

    p = sub.add_parser("check", help="check a morphism against a resolution condition")
    p.add_argument("--condition", choices=["strict", "lax"], required=True)
    p.add_argument("morphism")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("compose", help="compose two morphisms")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--category", choices=["g", "bu", "ba", "bl"], default="g")
    p.set_defaults(run=cmd_compose)

    p = sub.add_parser("enumerate", help="list every morphism between two formulas")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--condition", choices=["strict", "lax"], required=True)
    p.set_defaults(run=cmd_enumerate)

    p = sub.add_parser("prove", help="build a universal-axiom proof of a formula")
    p.add_argument("formula")
    p.add_argument("--atoms", help="comma-separated atom universe (default: the formula's atoms)")
    p.set_defaults(run=cmd_prove)

    p = sub.add_parser("factor", help="factor a morphism")
    p.add_argument("--kind", choices=["distribution", "mixsoft", "softness"], required=True)
    p.add_argument("--shape", help="leaf counts: a,b,c for distribution; a,c for softness")
    p.add_argument("morphism")
    p.set_defaults(run=cmd_factor)

    p = sub.add_parser("dot", help="render a proposition, morphism or linking as DOT")
    p.add_argument("object")
    p.set_defaults(run=cmd_dot)

    p = sub.add_parser("selftest", help="randomised invariant checks (seeded by SEED)")
    p.add_argument("--count", type=int, default=200)
    p.set_defaults(run=cmd_selftest)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.run(args, out)
    except LogicError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=err)
        return EXIT_BOUND if isinstance(exc, BoundExceededError) else EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
