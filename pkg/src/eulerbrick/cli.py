"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 anomaly
emitted (perfect-cuboid hit or biquadratic hit with a product condition).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .bricks import BrickError, classify_brick, verify_brick
from .cuboids import verify_perfect_cuboid
from .pythag import InvalidInput, count_triples_odd_edge, diff_square_reps
from .records import VerificationError, dumps
from .report import report_paper_examples
from .search import SearchConfig, SearchError, default_workers, resume, run_biquad, run_search

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_ANOMALY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _shard(text: str) -> tuple[int, int]:
    try:
        i, k = (int(x) for x in text.split("/"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"shard must look like i/k, got {text!r}") from None
    return i, k


def _add_range_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--min", dest="n_min", type=int, required=True)
    p.add_argument("--max", dest="n_max", type=int, required=True)
    p.add_argument("--strict", action="store_true", help="enforce every '>1' bound on the parameters")
    p.add_argument("--shard", type=_shard, default=(0, 1), metavar="i/k")
    p.add_argument("--out", help="JSONL output (default: <task>_<min>_<max>[.shard].jsonl)")
    p.add_argument("--checkpoint", help="checkpoint file, updated every --checkpoint-stride blocks")
    p.add_argument("--checkpoint-stride", type=int, default=1)
    p.add_argument("--block-size", type=int, default=500, help="odd n per work unit")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: $EULERBRICK_WORKERS or 1)")
    p.add_argument("--resume", action="store_true", help="continue from --checkpoint")
    p.add_argument("--overwrite", action="store_true")
    p.add_argument("--stop-after", type=int, default=None, help="stop once this n is checkpointed")


def _config(args, task: str) -> SearchConfig:
    i, k = args.shard
    out = args.out or f"{task}_{args.n_min}_{args.n_max}" + (f".{i}of{k}" if k > 1 else "") + ".jsonl"
    return SearchConfig(
        task=task,
        n_min=args.n_min,
        n_max=args.n_max,
        conjectures=tuple(getattr(args, "conjectures", None) or range(1, 7)),
        strict=args.strict,
        shard_index=i,
        shard_count=k,
        output_path=out,
        checkpoint_path=args.checkpoint,
        workers=args.workers or default_workers(),
        block_size=args.block_size,
        checkpoint_stride=args.checkpoint_stride,
        overwrite=args.overwrite,
    )


def _print_summary(summary: dict) -> None:
    for key, value in summary.items():
        print(f"{key}: {value}")


def cmd_search(args, task: str) -> int:
    cfg = _config(args, task)
    if args.resume:
        if not cfg.checkpoint_path:
            raise SearchError("--resume needs --checkpoint")
        summary = resume(cfg.checkpoint_path, cfg, stop_after=args.stop_after)
    else:
        summary = run_search(cfg, stop_after=args.stop_after)
    print(f"output: {cfg.output_path}")
    _print_summary(summary)
    if summary["anomalies"]:
        print(f"ANOMALY: {summary['anomalies']} record(s) need review", file=sys.stderr)
        return EXIT_ANOMALY
    return EXIT_OK


def cmd_biquad(args) -> int:
    records, summary = run_biquad(
        args.conjecture,
        args.bound,
        args.scale_bound,
        strict=not args.relaxed,
        workers=args.workers or default_workers(),
        output_path=args.out,
        overwrite=args.overwrite,
    )
    if not args.out:
        for r in records:
            print(dumps(r))
    _print_summary(summary)
    if summary["anomalies"]:
        print(f"ANOMALY: {summary['anomalies']} record(s) need review", file=sys.stderr)
        return EXIT_ANOMALY
    return EXIT_OK


def _classify_lines(lines):
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            x, y, z = (int(v) for v in line.split())
        except ValueError:
            yield {"line": lineno, "input": line, "error": "ParseError", "message": "expected three integers"}
            continue
        try:
            c = classify_brick(x, y, z)
        except (BrickError, InvalidInput) as exc:
            yield {"line": lineno, "edges": [x, y, z], "error": type(exc).__name__, "message": str(exc)}
            continue
        w = c.witness
        yield {
            "line": lineno,
            "edges": [x, y, z],
            "scale": c.scale,
            "n": w.n,
            "rep1": list(w.rep1),
            "rep2": list(w.rep2),
            "d": w.d,
            "brick_type": w.brick_type,
        }


def cmd_classify(args) -> int:
    with open(args.infile, encoding="utf-8") as fh:
        results = list(_classify_lines(fh))
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for r in results:
            out.write(json.dumps(r) + "\n")
    finally:
        if args.out:
            out.close()
    errors = {r.get("error") for r in results} - {None}
    if errors & {"NoRepresentation", "NoOddEdge", "MultipleOddEdges"}:
        return EXIT_ANOMALY
    if errors:
        return EXIT_VERIFY
    return EXIT_OK


def cmd_triples(args) -> int:
    n = args.n
    reps = diff_square_reps(n)
    count = count_triples_odd_edge(n)
    if args.count_only:
        print(count)
    else:
        print("x\ty\tz\tt\te\tf\tprimitive")
        for r in reps:
            print(f"{n}\t{2 * r.half_leg}\t{r.hypotenuse}\t{r.t}\t{r.e}\t{r.f}\t{int(r.primitive)}")
        print(f"# {len(reps)} triples; count formula gives {count}")
    return EXIT_OK if count == len(reps) else EXIT_VERIFY


def cmd_report(args) -> int:
    report = report_paper_examples()
    print(report.render())
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_verify(args) -> int:
    if args.brick is not None:
        verdict = verify_brick(args.brick)
    else:
        verdict = verify_perfect_cuboid(args.cuboid)
    print("PASS" if verdict else f"FAIL: {verdict.failed}")
    return EXIT_OK if verdict else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eulerbrick", description="Exact searches for Euler bricks and perfect-cuboid witnesses.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("search-bricks", help="scan odd n for Euler brick witnesses")
    _add_range_args(p)
    p.set_defaults(func=lambda a: cmd_search(a, "bricks"))

    p = sub.add_parser("search-cuboids", help="scan odd n for perfect-cuboid witnesses")
    _add_range_args(p)
    p.add_argument("--conjectures", type=_int_list, default=[1, 2, 3, 4, 5, 6])
    p.set_defaults(func=lambda a: cmd_search(a, "cuboids"))

    p = sub.add_parser("search-biquad", help="search a biquadratic family")
    p.add_argument("--conjecture", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--scale-bound", type=int, default=9)
    p.add_argument("--relaxed", action="store_true", help="admit U or V equal to 1 in annotations")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out")
    p.add_argument("--overwrite", action="store_true")
    p.set_defaults(func=cmd_biquad)

    p = sub.add_parser("classify", help="classify bricks listed one per line as 'a b c'")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("triples", help="Pythagorean triples with odd edge n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_triples)

    p = sub.add_parser("report-paper", help="regenerate the published odd-edge brick table")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify", help="check brick or perfect-cuboid identities")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--brick", type=_int_list, metavar="a,b,c,d1,d2,d3")
    g.add_argument("--cuboid", type=_int_list, metavar="a,b,c,d1,d2,d3,g")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (SearchError, InvalidInput, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
