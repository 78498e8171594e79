"""Command-line interface: ``strdist {solve,decide,reduce,verify,oracle,gen}``.

Exit codes: 0 member / exact, 1 non-member / over budget, 2 unreachable,
3 usage or input error.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .errors import StrDistError
from .harness import (
    REDUCTION_KINDS,
    GenParams,
    compile_chain,
    gen_random_instance,
    load_fixture,
    parse_chain,
    verify_machine,
)
from .oracle import brute_force_distance
from .reductions import EDIT, HAMMING, compile_3e_to_2e, compile_3h_to_2h, lift_k
from .solver import Exact, ExceedsBudget, decide, distance
from .symbols import parse_word

EXIT_MEMBER, EXIT_NONMEMBER, EXIT_UNREACHABLE, EXIT_USAGE = 0, 1, 2, 3
REDUCE_KINDS = REDUCTION_KINDS + ("3h-2h", "3e-2e", "lift")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="strdist", description="Weighted k-Hamming / k-Edit distances and their hardness reductions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="compute the distance of an instance file within its budget")
    s.add_argument("instance")
    s.add_argument("--budget", type=_nonneg_int, help="override the instance's h")
    s.add_argument("--witness", help="write the optimal transformation sequence here")
    s.add_argument("--max-states", type=int)

    s = sub.add_parser("decide", help="is the distance at most h?")
    s.add_argument("instance")
    s.add_argument("--budget", type=_nonneg_int, help="override the instance's h")
    s.add_argument("--witness", help="write the optimal transformation sequence here")

    s = sub.add_parser("reduce", help="compile a reduction")
    s.add_argument("kind", choices=REDUCE_KINDS)
    s.add_argument("source", help="machine file or fixture name (tm-*), instance file otherwise")
    s.add_argument("--input", default="", help="machine input word for tm-3h / tm-3e")
    s.add_argument("--chain", help="further steps after a machine reduction: comma list of to-2, lift, lift:K")
    s.add_argument("--out", required=True, help="instance output file")
    s.add_argument("--report", help="report output file")

    s = sub.add_parser("verify", help="check a machine reduction against simulation")
    s.add_argument("machine", help="machine file or fixture name")
    s.add_argument("--kind", choices=REDUCTION_KINDS, default="tm-3h")
    s.add_argument("--max-input-len", type=_nonneg_int, default=2)
    s.add_argument("--chain", help="comma list of to-2, lift, lift:K (default: none)")
    s.add_argument("--report", help="write the verification report here")
    s.add_argument("--max-states", type=int, help="skip inputs whose search expands more states")

    s = sub.add_parser("oracle", help="brute-force distance of a small instance")
    s.add_argument("instance")
    s.add_argument("--budget", type=_nonneg_int, help="override the instance's h")

    s = sub.add_parser("gen", help="generate a random instance")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--sigma", type=int, default=3)
    s.add_argument("--max-len", type=int, default=4)
    s.add_argument("--k", type=int, choices=(1, 2, 3))
    s.add_argument("--out", help="output file (default: stdout)")
    return p


def _machine(ref: str):
    path = Path(ref)
    if path.suffix == ".json" or path.exists():
        return io.load_machine(path)
    return load_fixture(ref)


def _budget(args, inst) -> int:
    return inst.h if args.budget is None else args.budget


def _exit_for(res) -> int:
    if isinstance(res, Exact):
        return EXIT_MEMBER
    if isinstance(res, ExceedsBudget):
        return EXIT_NONMEMBER
    return EXIT_UNREACHABLE


def _write_witness(args, res, inst):
    if args.witness and isinstance(res, Exact):
        io.write_json(args.witness, io.witness_to_dict(res.witness, inst.model))


def cmd_solve(args) -> int:
    inst = io.load_instance(args.instance)
    inst = type(inst)(inst.v, inst.w, inst.model, _budget(args, inst))
    _, res = decide(inst, max_states=args.max_states)
    print(res)
    _write_witness(args, res, inst)
    return _exit_for(res)


def cmd_decide(args) -> int:
    inst = io.load_instance(args.instance)
    inst = type(inst)(inst.v, inst.w, inst.model, _budget(args, inst))
    member, res = decide(inst)
    print("yes" if member else "no", res)
    _write_witness(args, res, inst)
    return EXIT_MEMBER if member else EXIT_NONMEMBER


def cmd_reduce(args) -> int:
    if args.kind in REDUCTION_KINDS:
        m = _machine(args.source)
        reports = compile_chain(m, parse_word(args.input), args.kind, parse_chain(args.chain))
        rep = reports[-1]
    else:
        if args.chain:
            raise UsageError("--chain only applies to machine reductions")
        inst = io.load_instance(args.source)
        if args.kind == "3h-2h":
            rep = compile_3h_to_2h(inst)
        elif args.kind == "3e-2e":
            rep = compile_3e_to_2e(inst)
        else:
            flavor = EDIT if {"I", "D"} & inst.model.op_set else HAMMING
            rep = lift_k(inst, flavor)
    io.save_instance(args.out, rep.instance)
    if args.report:
        io.write_json(args.report, io.report_to_dict(rep))
    print(f"{rep.kind}: {rep.rule_count} rules, {rep.alphabet_size} symbols, h = {rep.instance.h}")
    return EXIT_MEMBER


def cmd_verify(args) -> int:
    m = _machine(args.machine)
    report = verify_machine(m, args.kind, args.max_input_len, parse_chain(args.chain), max_states=args.max_states)
    for r in report.rows:
        status = "skip" if r.skipped else ("ok" if r.match else "MISMATCH")
        print(f"{status:8} {r.input:12} oracle={r.oracle:13} compiled={r.result or '-'} {r.note}".rstrip())
    print(f"total {report.total}, matches {report.matches}, mismatches {report.mismatches}, skipped {report.skipped}")
    if args.report:
        io.write_json(args.report, report.to_dict())
    return EXIT_MEMBER if report.ok else EXIT_NONMEMBER


def cmd_oracle(args) -> int:
    inst = io.load_instance(args.instance)
    budget = _budget(args, inst)
    cost = brute_force_distance(inst.v, inst.w, inst.model, budget)
    if cost == math.inf:
        print(f"ExceedsBudget {budget}")
        return EXIT_NONMEMBER
    print(f"Exact {cost}")
    return EXIT_MEMBER


def cmd_gen(args) -> int:
    params = GenParams(sigma=args.sigma, max_len=args.max_len, arities=(args.k,) if args.k else (1, 2, 3))
    doc = io.instance_to_dict(gen_random_instance(args.seed, params))
    if args.out:
        io.write_json(args.out, doc)
    else:
        sys.stdout.write(io.dumps(doc))
    return EXIT_MEMBER


COMMANDS = {
    "solve": cmd_solve,
    "decide": cmd_decide,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "gen": cmd_gen,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"strdist: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (StrDistError, OSError, ValueError) as e:
        print(f"strdist: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
