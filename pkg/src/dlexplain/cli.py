"""Command-line interface: learn, verify, translate and ingest subcommands.

All subcommands print machine-readable output (JSON with sorted keys, or a
single formula line for ``translate``).  Exit codes: 0 success, 1 usage
problems (bad flags, unreadable files), 2 data problems (parse failures,
unknown names, inconsistent example sets).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import ingest as ingest_mod
from .fol import render_fol, translate_gci
from .learner import SearchConfig, SearchResult, Solution, search, verify_solution
from .model import Axiom, DlError, render_expression
from .reasoner import materialize
from .text import parse_expression, parse_kb, parse_problem, serialize_kb, serialize_problem

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="dlexplain", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    learn = sub.add_parser("learn", help="search for class expressions separating the examples")
    learn.add_argument("--kb", required=True, help="knowledge-base file (.dlkb)")
    learn.add_argument("--problem", required=True, help="learning-problem file (+/- lines)")
    learn.add_argument("--max-expansions", type=int, default=10000)
    learn.add_argument("--max-length", type=int, default=10)
    learn.add_argument("--top-k", type=int, default=10)
    learn.add_argument("--noise", type=Fraction, default=Fraction(0), help="accepted error rate, e.g. 0.05 or 1/20")
    learn.add_argument("--length-penalty", type=Fraction, default=Fraction(1, 100), help="score penalty per length unit")
    learn.add_argument("--enable-disjunction", action="store_true")
    learn.add_argument("--out", help="write the report JSON to this file as well")

    verify = sub.add_parser("verify", help="score one expression against a problem")
    verify.add_argument("--kb", required=True)
    verify.add_argument("--problem", required=True)
    verify.add_argument("--expr", required=True, help="class expression, e.g. 'contains some Window'")

    translate = sub.add_parser("translate", help="render an inclusion axiom in first-order logic")
    translate.add_argument(
        "--axiom", help="axiom '<expr> => <expr>'; when omitted, one line is read from stdin"
    )

    ing = sub.add_parser("ingest", help="build a knowledge base and problem from annotations")
    ing.add_argument("--annotations", required=True, help="TSV: input_id<TAB>term, term, ...")
    ing.add_argument("--mapping", required=True, help="TSV: term<TAB>ClassName")
    ing.add_argument("--role", default="contains", help="connecting role (default: contains)")
    ing.add_argument("--background", required=True, help="background ontology (.dlkb)")
    ing.add_argument("--positives", required=True, help="comma-separated positive input ids")
    ing.add_argument("--out-kb", required=True)
    ing.add_argument("--out-problem", required=True)

    return parser


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _solution_payload(solution: Solution) -> dict:
    cov = solution.coverage
    return {
        "accuracy": float(cov.accuracy),
        "approximate": solution.approximate,
        "expression": render_expression(solution.expression),
        "fn": cov.fn,
        "fp": cov.fp,
        "length": solution.length,
        "score": float(solution.score),
        "tn": cov.tn,
        "tp": cov.tp,
    }


def _learn_report(cfg: SearchConfig, result: SearchResult) -> dict:
    return {
        "config": {
            "enable_disjunction": cfg.enable_disjunction,
            "length_penalty": float(cfg.length_penalty),
            "max_expansions": cfg.max_expansions,
            "max_length": cfg.max_length,
            "noise": float(cfg.noise),
            "top_k": cfg.top_k,
        },
        "exhausted": result.exhausted,
        "expansions_used": result.expansions_used,
        "solutions": [_solution_payload(s) for s in result.solutions],
    }


def _dump(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _cmd_learn(args: argparse.Namespace) -> int:
    kb = parse_kb(_read(args.kb))
    problem = parse_problem(_read(args.problem), kb.signature)
    cfg = SearchConfig(
        max_expansions=args.max_expansions,
        max_length=args.max_length,
        top_k=args.top_k,
        length_penalty=args.length_penalty,
        noise=args.noise,
        enable_disjunction=args.enable_disjunction,
    )
    started = time.monotonic()
    result = search(materialize(kb), problem, cfg)
    elapsed_ms = int((time.monotonic() - started) * 1000)
    report = _learn_report(cfg, result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(_dump(report))
    sys.stdout.write(_dump({**report, "elapsed_ms": elapsed_ms, "subcommand": "learn"}))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    kb = parse_kb(_read(args.kb))
    problem = parse_problem(_read(args.problem), kb.signature)
    expr = parse_expression(args.expr, kb.signature)
    solution = verify_solution(materialize(kb), expr, problem)
    cov = solution.coverage
    payload = {
        "accuracy": float(cov.accuracy),
        "expression": render_expression(solution.expression),
        "falseNegatives": sorted(cov.false_neg),
        "falsePositives": sorted(cov.false_pos),
        "fn": cov.fn,
        "fp": cov.fp,
        "tn": cov.tn,
        "tp": cov.tp,
        "trueNegatives": sorted(cov.true_neg),
        "truePositives": sorted(cov.true_pos),
    }
    sys.stdout.write(_dump(payload))
    return 0


def _cmd_translate(args: argparse.Namespace) -> int:
    if args.axiom is not None:
        line = args.axiom
    else:
        line = sys.stdin.readline()
    line = line.strip()
    if line.startswith("gci ") or line == "gci":
        line = line[len("gci") :].strip()
    if "=>" not in line:
        sys.stderr.write("translate: expected '<expr> => <expr>'\n")
        return DATA_ERROR
    left, right = line.split("=>", 1)
    axiom = Axiom(parse_expression(left.strip()), parse_expression(right.strip()))
    sys.stdout.write(render_fol(translate_gci(axiom)) + "\n")
    return 0


def _cmd_ingest(args: argparse.Namespace) -> int:
    records = ingest_mod.parse_annotations(_read(args.annotations))
    mapping = ingest_mod.parse_mapping(_read(args.mapping))
    background = parse_kb(_read(args.background))
    kb = ingest_mod.build_abox(records, mapping, args.role, background)
    positive_ids = {name.strip() for name in args.positives.split(",") if name.strip()}
    problem = ingest_mod.emit_problem(records, positive_ids)
    with open(args.out_kb, "w", encoding="utf-8") as handle:
        handle.write(serialize_kb(kb))
    order = [record.input_id for record in records]
    with open(args.out_problem, "w", encoding="utf-8") as handle:
        handle.write(serialize_problem(problem, order))
    payload = {
        "assertions": len(kb.abox),
        "individuals": len(kb.signature.individuals),
        "out_kb": args.out_kb,
        "out_problem": args.out_problem,
        "subcommand": "ingest",
    }
    sys.stdout.write(_dump(payload))
    return 0


_COMMANDS = {
    "learn": _cmd_learn,
    "verify": _cmd_verify,
    "translate": _cmd_translate,
    "ingest": _cmd_ingest,
}


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse help/usage paths
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.subcommand](args)
    except OSError as exc:
        sys.stderr.write(f"dlexplain: {exc}\n")
        return USAGE_ERROR
    except (DlError, ValueError) as exc:
        sys.stderr.write(f"dlexplain: {exc}\n")
        return DATA_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))
