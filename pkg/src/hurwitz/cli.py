"""Command line front end.

Exit status: 0 when a command completed (whatever the mathematical answer),
1 when ``verify-theorem`` finds a constellation, 2 on invalid input data,
3 on I/O or parse errors.  JSON goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from .core import BranchDatum, paper_family_datum, validate_branch_datum
from .dessin import Dessin
from .errors import HurwitzError, NotThreePoint
from .homology import analysis_report
from .perm import cycle_type
from .search import Constellation, SearchOptions, count_with_stats, decide_realizability, verify_witness

EXIT_OK = 0
EXIT_CONTRADICTION = 1
EXIT_INVALID = 2
EXIT_IO = 3


class InputError(Exception):
    """Unreadable or unparsable input file."""


def _read_json(path: str) -> tuple[object, bytes]:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(raw), raw
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload) + "\n")
    sys.stdout.flush()


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def cmd_decide(args) -> tuple[int, dict, bytes]:
    payload, raw = _read_json(args.datum)
    if not isinstance(payload, dict):
        raise InputError("datum file must hold a JSON object")
    datum = BranchDatum.from_json(payload)
    opts = SearchOptions(use_centralizer_reduction=not args.no_reduce, parallelism_hint=args.jobs)
    if args.count:
        count, decision = count_with_stats(datum, opts)
        out = decision.to_json()
        out["count"] = count
    else:
        decision = decide_realizability(datum, opts)
        out = decision.to_json()
    print(
        f"{datum}: {'realizable' if decision.realizable else 'not realizable'} "
        f"(fixed slot {decision.fixed_index}, {decision.candidates_examined} examined "
        f"of {decision.search_space})",
        file=sys.stderr,
    )
    return EXIT_OK, out, raw


def cmd_verify_theorem(args) -> tuple[int, dict, bytes]:
    if args.h_max < 2:
        raise HurwitzError(f"--h-max must be at least 2, got {args.h_max}")
    opts = SearchOptions(use_centralizer_reduction=not args.no_reduce, parallelism_hint=args.jobs)
    results = []
    for h in range(2, args.h_max + 1):
        datum = paper_family_datum(h)
        count, decision = count_with_stats(datum, opts)
        verdict = "PASS" if count == 0 else "FAIL"
        print(
            f"h={h} d={datum.degree}: {count} constellations "
            f"({decision.search_space} candidates, {decision.candidates_examined} examined) {verdict}",
            file=sys.stderr,
        )
        results.append(
            {
                "h": h,
                "degree": datum.degree,
                "partitions": datum.to_json()["partitions"],
                "constellations": count,
                "search_space": decision.search_space,
                "candidates_examined": decision.candidates_examined,
                "reduced": decision.reduced,
            }
        )
    passed = all(r["constellations"] == 0 for r in results)
    out = {"h_max": args.h_max, "results": results, "status": "PASS" if passed else "FAIL"}
    return (EXIT_OK if passed else EXIT_CONTRADICTION), out, f"h_max={args.h_max}".encode()


def cmd_analyze(args) -> tuple[int, dict, bytes]:
    payload, raw = _read_json(args.witness)
    if isinstance(payload, dict) and "witness" in payload:
        payload = payload["witness"]
        if payload is None:
            raise HurwitzError("decision holds no witness")
    witness = Constellation.from_json(payload)
    if len(witness.sigmas) != 3:
        raise NotThreePoint(f"analysis needs 3 permutations, got {len(witness.sigmas)}")
    datum = validate_branch_datum(witness.degree, [cycle_type(s).parts for s in witness.sigmas])
    report = verify_witness(datum, witness)
    if not report.passed:
        raise HurwitzError(f"witness fails verification: {json.dumps(report.to_json())}")
    dessin = Dessin.from_constellation(witness)
    out = {"datum": datum.to_json(), "witness": witness.to_json()}
    out.update(analysis_report(dessin, args.max_loop_len))
    if args.dot:
        try:
            Path(args.dot).write_text(dessin.to_dot())
        except OSError as exc:
            raise InputError(f"cannot write {args.dot}: {exc.strerror or exc}") from None
    print(f"{datum}: genus {dessin.genus}, systole {out['systole']}", file=sys.stderr)
    return EXIT_OK, out, raw


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hurwitz", description="Hurwitz existence problem over the sphere.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", metavar="FILE", help="also write a run report (with timing) to FILE")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", parents=[common], help="decide realizability of a branch datum")
    p.add_argument("--datum", required=True, metavar="FILE")
    p.add_argument("--count", action="store_true", help="count all constellations instead of stopping at the first")
    p.add_argument("--no-reduce", action="store_true", help="plain enumeration, no centralizer reduction")
    p.add_argument("--jobs", type=_positive, default=1, metavar="N")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("verify-theorem", parents=[common], help="check the (3^h),(3^h),(4,2,3^(h-2)) family")
    p.add_argument("--h-max", type=int, required=True, metavar="H")
    p.add_argument("--no-reduce", action="store_true")
    p.add_argument("--jobs", type=_positive, default=1, metavar="N")
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("analyze", parents=[common], help="dessin and dual-loop analysis of a witness")
    p.add_argument("--witness", required=True, metavar="FILE")
    p.add_argument("--dot", metavar="FILE", help="write the dessin in DOT format")
    p.add_argument("--max-loop-len", type=_positive, default=6, metavar="N")
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        status, payload, raw = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except HurwitzError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(payload)
    if args.report:
        run_report = {
            "command": args.command,
            "input_digest": hashlib.sha256(raw).hexdigest(),
            "payload": payload,
            "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
            "engine_version": __version__,
        }
        try:
            Path(args.report).write_text(json.dumps(run_report, indent=2) + "\n")
        except OSError as exc:
            print(f"error: cannot write {args.report}: {exc.strerror or exc}", file=sys.stderr)
            return EXIT_IO
    return status


if __name__ == "__main__":
    sys.exit(main())
