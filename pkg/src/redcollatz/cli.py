"""Command-line front end.

Exit status: 0 success, 1 a verification failed (or a step cap was hit),
2 usage or parse error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

from . import kernels
from ._parallel import JOBS_ENV, default_jobs
from .dynamics import (DEFAULT_DR_CAP, DEFAULT_ORBIT_CAP, apply_word, orbit_counts,
                       original_dynamics, reduced_dynamics)
from .enumeration import CLASS_FIELDS, class_table, enumerate_words, residue_of_word
from .errors import (CollatzError, ExprError, InternalConsistencyError, MismatchError,
                     ResumeError, StepCapExceeded, WordParseError)
from .expr import DEFAULT_EXPONENT_LIMIT, eval_int_expr
from .period import minimal_period_bruteforce, verify_period
from .sieve import coverage, cross_check_coverage, verify_range
from .word import Word

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _int_arg(text, limit=DEFAULT_EXPONENT_LIMIT):
    try:
        return eval_int_expr(text, limit)
    except ExprError as exc:
        raise UsageError(f"bad integer expression {text!r}: {exc}") from exc


def _word_arg(text):
    try:
        return Word.parse(text)
    except WordParseError as exc:
        raise UsageError(str(exc)) from exc


class Out:
    """Writes rows in the selected format to stdout."""

    def __init__(self, fmt, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self._csv = None

    def row(self, data, text=None):
        if self.fmt == "json":
            self.stream.write(json.dumps(data) + "\n")
        elif self.fmt == "csv":
            if self._csv is None:
                self._csv = csv.DictWriter(self.stream, fieldnames=list(data), lineterminator="\n")
                self._csv.writeheader()
            self._csv.writerow({k: _csv_cell(v) for k, v in data.items()})
        else:
            self.stream.write((text if text is not None else _text(data)) + "\n")


def _csv_cell(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return v


def _text(data):
    return "\n".join(f"{k}: {v}" for k, v in data.items())


def cmd_dr(args, out):
    x = _int_arg(args.x, args.exponent_limit)
    if x < 1:
        raise UsageError("x must be >= 1")
    if x == 1:
        out.row({"start": "1", "word": "", "final": "1", "stopping_time": 0,
                 "cnt_3x1": 0, "cnt_half_total": 0}, text="1: trivially at 1")
        return EXIT_OK
    rec = reduced_dynamics(x, args.cap)
    out.row(rec.to_dict(), text=f"word: {rec.word}\nlength: {len(rec.word)}\nfinal: {rec.final}")
    return EXIT_OK


def cmd_orbit(args, out):
    x = _int_arg(args.x, args.exponent_limit)
    if x < 1:
        raise UsageError("x must be >= 1")
    if args.counts_only:
        info = orbit_counts(x, args.cap)
        data = {"stopping_time": info.stopping_time, "cnt_3x1": info.cnt_3x1,
                "cnt_half_total": info.cnt_half_total}
        out.row(data, text=f"cnt_3x1 {info.cnt_3x1}\ncnt_half_total {info.cnt_half_total}\n"
                           f"stopping_time {info.stopping_time}")
        return EXIT_OK
    rec, info = original_dynamics(x, args.cap)
    out.row(rec.to_dict())
    return EXIT_OK


def cmd_apply(args, out):
    w = _word_arg(args.word)
    x = _int_arg(args.x, args.exponent_limit)
    if x < 1:
        raise UsageError("x must be >= 1")
    try:
        rec = apply_word(w, x, keep_trace=args.trace)
    except MismatchError as exc:
        out.row({"word": w.seq, "start": str(x), "mismatch_step": exc.step, "value": str(exc.value)},
                text=f"mismatch at step {exc.step} (value {exc.value})")
        return EXIT_FAIL
    data = {"word": w.seq, "start": str(x), "final": str(rec.final)}
    if args.trace:
        data["trace"] = [str(v) for v in rec.trace]
    out.row(data, text=f"final: {rec.final}" + (
        "\ntrace: " + " ".join(data["trace"]) if args.trace else ""))
    return EXIT_OK


def cmd_enum(args, out):
    for w in enumerate_words(args.max_len):
        out.row({"word": w.seq, "length": len(w), "cnt_i": w.cnt_i}, text=w.seq)
    return EXIT_OK


def cmd_residue(args, out):
    w = _word_arg(args.word)
    if len(w) == 0:
        raise UsageError("empty word")
    rc = residue_of_word(w)
    out.row({"word": w.seq, "residue": str(rc.residue), "modulus_exp": rc.exponent},
            text=f"[{rc.residue}]_{rc.modulus}  (mod 2^{rc.exponent})")
    return EXIT_OK


def cmd_classes(args, out):
    for e in class_table(args.max_len, validate=not args.no_validate):
        d = e.to_dict()
        out.row({k: d[k] for k in CLASS_FIELDS},
                text=f"{e.word.seq}\t{e.residue_class}\trep {e.representative}")
    return EXIT_OK


def cmd_period(args, out):
    x = _int_arg(args.x, args.exponent_limit)
    if x < 2:
        raise UsageError("x must be >= 2")
    rep = verify_period(x, args.k, args.cap)
    data = rep.to_dict()
    if args.min_brute:
        data["minimal_period"] = str(minimal_period_bruteforce(x, args.cap))
    out.row(data)
    ok = rep.all_equal and ("minimal_period" not in data or int(data["minimal_period"]) == rep.period)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_range(args, out):
    lo = _int_arg(args.lo, args.exponent_limit)
    hi = _int_arg(args.hi, args.exponent_limit)
    if lo < 2 or lo > hi:
        raise UsageError("need 2 <= lo <= hi")

    def progress(done, end):
        print(f"verified through {done} / {end}", file=sys.stderr, flush=True)

    rep = verify_range(lo, hi, jobs=args.jobs, step_cap=args.cap, checkpoint_path=args.checkpoint,
                       chunk_size=args.chunk_size, progress=progress if args.progress else None)
    if args.format == "csv":
        out.stream.write(rep.histogram_csv())
    elif args.format == "json":
        out.stream.write(rep.to_json() + "\n")
    else:
        out.row({"range": f"[{rep.lo}, {rep.hi}]", "verified": rep.verified_count,
                 "failures": len(rep.failures), "max_word_len": rep.max_word_len})
        for x, reason in rep.failures[:20]:
            out.stream.write(f"  failed {x}: {reason}\n")
    return EXIT_FAIL if rep.failures else EXIT_OK


def cmd_coverage(args, out):
    rep = coverage(args.level)
    data = rep.to_dict()
    data["fraction"] = rep.fraction
    status = EXIT_OK
    if args.cross_check is not None:
        n = _int_arg(args.cross_check, args.exponent_limit)
        ok = cross_check_coverage(args.level, n)
        data["cross_check"] = {"n": str(n), "ok": ok}
        status = EXIT_OK if ok else EXIT_FAIL
    if not rep.disjoint:
        status = EXIT_FAIL
    out.row(data, text=(f"level {rep.exponent}: {rep.covered_residues} of {rep.total_residues} "
                        f"residues covered ({rep.fraction:.6f})\n"
                        f"uncovered sample: {' '.join(data['uncovered_sample'])}"
                        + (f"\ncross-check to {data['cross_check']['n']}: "
                           f"{'ok' if data['cross_check']['ok'] else 'MISMATCH'}"
                           if "cross_check" in data else "")))
    return status


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--exponent-limit", type=int, default=DEFAULT_EXPONENT_LIMIT,
                        help="largest exponent accepted in integer expressions")

    p = argparse.ArgumentParser(prog="redcollatz", description="Reduced Collatz dynamics toolkit.")
    p.add_argument("--backend", choices=kernels.available(), default=None,
                   help=f"hot-loop backend (default {kernels.BACKEND})")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dr", parents=[common], help="reduced dynamics of x")
    s.add_argument("x")
    s.add_argument("--cap", type=int, default=DEFAULT_DR_CAP)
    s.set_defaults(fn=cmd_dr)

    s = sub.add_parser("orbit", parents=[common], help="original dynamics of x down to 1")
    s.add_argument("x")
    s.add_argument("--counts-only", action="store_true")
    s.add_argument("--cap", type=int, default=DEFAULT_ORBIT_CAP)
    s.set_defaults(fn=cmd_orbit)

    s = sub.add_parser("apply", parents=[common], help="apply a word to x")
    s.add_argument("word")
    s.add_argument("x")
    s.add_argument("--trace", action="store_true")
    s.set_defaults(fn=cmd_apply)

    s = sub.add_parser("enum", parents=[common], help="list reduced-dynamics words")
    s.add_argument("--max-len", type=int, required=True)
    s.set_defaults(fn=cmd_enum)

    s = sub.add_parser("residue", parents=[common], help="residue class of a word")
    s.add_argument("word")
    s.set_defaults(fn=cmd_residue)

    s = sub.add_parser("classes", parents=[common], help="word / residue class table")
    s.add_argument("--max-len", type=int, required=True)
    s.add_argument("--no-validate", action="store_true",
                   help="skip recomputing d_r of each representative")
    s.set_defaults(fn=cmd_classes)

    s = sub.add_parser("period", parents=[common], help="check the period of x")
    s.add_argument("x")
    s.add_argument("--k", type=int, default=3)
    s.add_argument("--min-brute", action="store_true", help="also search for the minimal period")
    s.add_argument("--cap", type=int, default=DEFAULT_DR_CAP)
    s.set_defaults(fn=cmd_period)

    s = sub.add_parser("verify-range", parents=[common], help="verify reduced dynamics over [lo, hi]")
    s.add_argument("lo")
    s.add_argument("hi")
    s.add_argument("--jobs", type=int, default=None,
                   help=f"worker processes (default ${JOBS_ENV} or CPU count)")
    s.add_argument("--checkpoint", default=None)
    s.add_argument("--cap", type=int, default=DEFAULT_DR_CAP)
    s.add_argument("--chunk-size", type=int, default=1 << 16)
    s.add_argument("--progress", action="store_true", help="report progress on stderr")
    s.set_defaults(fn=cmd_verify_range)

    s = sub.add_parser("coverage", parents=[common], help="residue coverage at level L")
    s.add_argument("--level", type=int, required=True)
    s.add_argument("--cross-check", default=None, metavar="N")
    s.set_defaults(fn=cmd_coverage)
    return p


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.backend:
        kernels.DEFAULT = kernels.backend(args.backend)
    if getattr(args, "jobs", 0) is None:
        args.jobs = default_jobs()
    out = Out(args.format)
    try:
        return args.fn(args, out)
    except UsageError as exc:
        print(f"redcollatz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ResumeError) as exc:
        print(f"redcollatz: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except StepCapExceeded as exc:
        print(f"redcollatz: {exc} (raise --cap or investigate)", file=sys.stderr)
        return EXIT_FAIL
    except InternalConsistencyError as exc:
        print(f"redcollatz: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except CollatzError as exc:
        print(f"redcollatz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
