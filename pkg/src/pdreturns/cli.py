"""Command-line front end.

    pdreturns generate --word D --length 7
    pdreturns envelope --factor b --format json
    pdreturns returns --factor aba --count 2 --format json
    pdreturns occurrences --factor aa --count 5
    pdreturns verify --len-max 32 --count 64 --jobs 2

Exit status: 0 on success, 1 when verification finds a failure, 2 on invalid
input (bad letters, not a factor of D, caps exceeded, bad flags).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence, TextIO

from .envelope import env_extension
from .returns import decompose, occurrences
from .sequences import DEFAULT_MAX_LENGTH, CapError, SequenceCache, default_cache, pd_prefix, theta_prefix
from .verify import DEFAULT_COUNT, DEFAULT_LEN_MAX, DEFAULT_M_MAX, sweep
from .words import WordError

DEFAULT_MAX_COUNT = 1 << 16

SOURCES = ("D", "Theta1", "Theta2")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--max-len", type=int, default=DEFAULT_MAX_LENGTH,
                        help="cap on any generated prefix of D (default: 2^26)")
    common.add_argument("--max-count", type=int, default=DEFAULT_MAX_COUNT,
                        help="cap on the number of occurrences / return words requested")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="pdreturns", description="Return words in the period-doubling sequence.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="prefix of D, Theta1 or Theta2")
    p.add_argument("--word", choices=SOURCES, default="D")
    p.add_argument("--length", type=int, required=True)

    p = sub.add_parser("envelope", parents=[common], help="envelope word and extension of a factor")
    p.add_argument("--factor", required=True)

    p = sub.add_parser("returns", parents=[common], help="return-word decomposition of a factor")
    p.add_argument("--factor", required=True)
    p.add_argument("--count", type=int, default=8)

    p = sub.add_parser("occurrences", parents=[common], help="first occurrence positions of a factor")
    p.add_argument("--factor", required=True)
    p.add_argument("--count", type=int, default=8)

    p = sub.add_parser("verify", parents=[common], help="run every verification suite")
    p.add_argument("--len-max", type=int, default=DEFAULT_LEN_MAX)
    p.add_argument("--count", type=int, default=DEFAULT_COUNT)
    p.add_argument("--m-max", type=int, default=DEFAULT_M_MAX)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", help="also write the JSON report to this file")
    return parser


def _csv(rows: list[list], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _json(obj: dict) -> str:
    return json.dumps(obj, indent=2)


def _generate(args, cache) -> str:
    if args.length < 0:
        raise WordError("--length must be >= 0")
    if args.word == "D":
        w = pd_prefix(args.length, cache)
    else:
        w = theta_prefix(1 if args.word == "Theta1" else 2, args.length, cache)
    if args.format == "json":
        return _json({"word": args.word, "length": args.length, "prefix": w})
    if args.format == "csv":
        return _csv([[i + 1, c] for i, c in enumerate(w)], ["position", "letter"])
    return w


def _envelope(args, cache) -> str:
    ext = env_extension(args.factor, cache)
    d = ext.to_dict()
    if args.format == "json":
        return _json(d)
    if args.format == "csv":
        return _csv([list(d.values())], list(d))
    return f"{ext.envelope.label} = {ext.envelope.word}\nmu1 = {ext.mu1}\nmu2 = {ext.mu2}"


def _returns(args, cache) -> str:
    dec = decompose(args.factor, args.count, cache)
    ext = env_extension(args.factor, cache)
    positions = list(occurrences(args.factor, args.count, cache).positions)
    if args.format == "json":
        return _json({
            "factor": dec.factor,
            "env": {"kind": ext.envelope.kind, "m": ext.envelope.order},
            "r0": dec.r0,
            "returns": list(dec.returns),
            "coded": dec.coded,
            "classification": dec.classification,
            "positions": positions,
        })
    rows = [[p + 1, positions[p], dec.returns[p], dec.coded[p]] for p in range(args.count)]
    if args.format == "csv":
        return _csv(rows, ["p", "position", "return_word", "code"])
    lines = [
        f"factor {dec.factor}  Env = {ext.envelope.label}  mu1 = {ext.mu1!r}  mu2 = {ext.mu2!r}",
        f"classification {dec.classification}  coded {dec.coded}",
        f"r0 = {dec.r0!r}",
    ]
    lines += [f"r{p} @ {pos}: {w} ({c})" for p, pos, w, c in rows]
    return "\n".join(lines)


def _occurrences(args, cache) -> str:
    stream = occurrences(args.factor, args.count, cache)
    if args.format == "json":
        return _json(stream.to_dict())
    if args.format == "csv":
        return _csv([[p + 1, q] for p, q in enumerate(stream.positions)], ["p", "position"])
    return " ".join(map(str, stream.positions))


def _verify(args, cache) -> tuple[str, int]:
    report = sweep(args.len_max, args.count, args.jobs, args.m_max, cache)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")
    code = 0 if report.ok else 1
    if args.format == "json":
        return report.to_json(), code
    if args.format == "csv":
        rows = [[r.check_id, json.dumps(r.params, sort_keys=True), r.status] for r in report.results]
        return _csv(rows, ["check_id", "params", "status"]), code
    lines = []
    if args.verbose:
        lines += [f"{r.status.upper():4} {r.check_id} {json.dumps(r.params, sort_keys=True)}" for r in report.results]
    lines += [f"FAIL {r.check_id} {json.dumps(r.params)} {json.dumps(r.counterexample)}" for r in report.failures()]
    t = report.totals
    lines.append(f"{t['pass']} passed, {t['fail']} failed ({report.config['factors']} factors)")
    return "\n".join(lines), code


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.max_len < 2 or args.max_count < 1:
        print("error: caps must be positive", file=stderr)
        return 2
    if getattr(args, "count", 1) > args.max_count:
        print(f"error: --count {args.count} exceeds --max-count {args.max_count}", file=stderr)
        return 2
    cache = default_cache() if args.max_len == DEFAULT_MAX_LENGTH else SequenceCache(max_length=args.max_len)
    code = 0
    try:
        if args.command == "verify":
            out, code = _verify(args, cache)
        else:
            out = {"generate": _generate, "envelope": _envelope, "returns": _returns,
                   "occurrences": _occurrences}[args.command](args, cache)
    except (WordError, CapError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    print(out, file=stdout)
    return code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
