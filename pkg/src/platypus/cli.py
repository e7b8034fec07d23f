"""Command-line front end.

Exit status: 0 affirmative, 1 negative verdict, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .axiomatizer import axiomatize_boolean
from .calculus import (
    BUILTIN_RULESETS,
    check_soundness,
    decide_mc,
    format_derivation,
    format_rules,
    parse_rules,
    prove,
)
from .formula import Signature, parse_formula, parse_formula_list
from .nmatrix import (
    BUILTIN_MATRICES,
    builtin,
    entails,
    format_matrix,
    format_sequent,
    is_isomorphic,
    parse_matrix,
    parse_sequent,
    rename_values,
    separates,
    strict_product,
)
from .sat import parse_dimacs, sat_oracle, sat_to_sequent
from .sc import decide_sc

DEFAULT_SIGNATURE = "pl:2, and:2, or:2, imp:2, dot:2"
PL_ONLY = Signature({"pl": 2})


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_matrix(spec: str):
    if spec in BUILTIN_MATRICES:
        return BUILTIN_MATRICES[spec]()
    return parse_matrix(_read(spec))


def load_rules(spec: str, sig: Signature):
    if spec in BUILTIN_RULESETS:
        return BUILTIN_RULESETS[spec]()
    return parse_rules(_read(spec), sig)


def _print_valuation(v) -> None:
    for line in v.lines():
        print(f"  {line}")


def cmd_decide(args) -> int:
    M = load_matrix(args.matrix)
    s = parse_sequent(args.sequent, M.signature)
    verdict = entails(M, s)
    if verdict.valid:
        print("VALID")
        return 0
    print("INVALID")
    _print_valuation(verdict.countervaluation)
    return 1


def cmd_decide_sc(args) -> int:
    gamma = parse_formula_list(args.gamma, PL_ONLY)
    phi = parse_formula(args.phi, PL_ONLY)
    if decide_sc(gamma, phi):
        print("DERIVABLE")
        return 0
    print("NOT-DERIVABLE")
    return 1


def cmd_prove(args) -> int:
    R = load_rules(args.rules, Signature.parse(args.signature))
    sig = R.signature
    s = parse_sequent(args.sequent, sig)
    gens = parse_formula_list(args.generators, sig) if args.generators else []
    if args.decide_only:
        ok = decide_mc(R, s, gens)
        print("DERIVABLE" if ok else "EXHAUSTED")
        return 0 if ok else 1
    d = prove(R, s, gens)
    if d is None:
        print("EXHAUSTED")
        return 1
    sys.stdout.write(format_derivation(d))
    return 0


def cmd_axiomatize(args) -> int:
    M = load_matrix(args.matrix)
    sys.stdout.write(format_rules(axiomatize_boolean(M)))
    return 0


def _parse_rename(text: str) -> dict[str, str]:
    out = {}
    for item in text.split(";") if ";" in text else text.split():
        item = item.strip()
        if not item:
            continue
        old, sep, new = item.partition("=")
        if not sep:
            raise UsageError(f"bad rename entry {item!r}; expected OLD=NEW")
        out[old.strip()] = new.strip()
    return out


def cmd_product(args) -> int:
    P = strict_product(load_matrix(args.m1), load_matrix(args.m2))
    if args.rename:
        P = rename_values(P, _parse_rename(args.rename))
    sys.stdout.write(format_matrix(P))
    if args.check_iso:
        iso = is_isomorphic(P, load_matrix(args.check_iso))
        if not iso:
            print("NOT-ISOMORPHIC")
            return 1
        print("ISOMORPHIC " + " ".join(f"{v}->{iso.mapping[v]}" for v in P.values))
    return 0


def cmd_sat(args) -> int:
    cnf = parse_dimacs(_read(args.dimacs))
    s = sat_to_sequent(cnf)
    if args.mode == "reduce":
        print(format_sequent(s))
        return 0
    sat = sat_oracle(cnf)
    valid = entails(builtin("BM_pl"), s).valid
    agree = sat == (not valid)
    print(
        f"{'AGREE' if agree else 'DISAGREE'} "
        f"({'sat' if sat else 'unsat'}, entailment {'valid' if valid else 'invalid'})"
    )
    return 0 if agree else 1


def cmd_check_soundness(args) -> int:
    M = load_matrix(args.matrix)
    R = load_rules(args.rules, M.signature)
    status = 0
    for r in R:
        verdict = check_soundness(M, r)
        if verdict.valid:
            print(f"SOUND {r.name}")
        else:
            status = 1
            print(f"UNSOUND {r.name}")
            _print_valuation(verdict.countervaluation)
    return status


def cmd_separate(args) -> int:
    M = load_matrix(args.matrix)
    S = parse_formula_list(args.formulas, M.signature)
    verdict = separates(M, S)
    if verdict:
        print("SEPARATED")
        return 0
    print(f"NOT-SEPARATED {verdict.pair[0]} {verdict.pair[1]}")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="platypus",
        description="Nmatrix entailment, multiple-conclusion proof search and rule synthesis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide a sequent in a matrix")
    p.add_argument("--matrix", required=True, help="builtin name or matrix file")
    p.add_argument("--sequent", required=True, help='e.g. "pl(p,q) |- p, q"')
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("decide-sc", help="polynomial single-conclusion decision for pl")
    p.add_argument("--gamma", required=True, help="comma separated premises")
    p.add_argument("--phi", required=True, help="conclusion")
    p.set_defaults(func=cmd_decide_sc)

    p = sub.add_parser("prove", help="analytic proof search")
    p.add_argument("--rules", required=True, help="builtin name or rules file")
    p.add_argument("--sequent", required=True)
    p.add_argument("--generators", default="", help="extra formulas allowed in derivations")
    p.add_argument("--signature", default=DEFAULT_SIGNATURE, help="signature for rules files")
    p.add_argument("--decide-only", action="store_true", help="print the verdict only")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("axiomatize", help="synthesize rules for a two-valued matrix")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_axiomatize)

    p = sub.add_parser("product", help="strict product of two matrices")
    p.add_argument("m1")
    p.add_argument("m2")
    p.add_argument("--rename", default="", help='e.g. "(0,0)=0 (1,1)=1"')
    p.add_argument("--check-iso", default=None, metavar="MATRIX")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("sat", help="3-SAT reduction to platypus non-entailment")
    p.add_argument("mode", choices=["reduce", "check"])
    p.add_argument("dimacs")
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("check-soundness", help="check every rule against a matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--rules", required=True)
    p.set_defaults(func=cmd_check_soundness)

    p = sub.add_parser("separate", help="check a one-variable separating set")
    p.add_argument("--matrix", required=True)
    p.add_argument("--formulas", required=True, help='e.g. "p, dot(p,p)"')
    p.set_defaults(func=cmd_separate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
