"""Range verification and residue-class coverage.

``verify_range`` computes |d_r(x)| for every x in a range, split into
fixed-size sub-ranges that worker processes handle independently.  Results
are merged in sub-range order, so the report does not depend on the number
of workers.  With a checkpoint path, one JSON line is appended after each
sub-range; re-running with the same arguments resumes after the last
complete line.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import kernels
from ._parallel import map_chunks, split_range
from .dynamics import DEFAULT_DR_CAP
from .enumeration import enumerate_words, residue_of_word
from .errors import ResumeError

log = logging.getLogger(__name__)

CHUNK_SIZE = 1 << 16
CHECKPOINT_FORMAT = "redcollatz-checkpoint"
CHECKPOINT_VERSION = 1
# levels up to this get an explicit residue bitmap (2^L bytes)
BITMAP_MAX_LEVEL = 24


@dataclass
class RangeReport:
    lo: int
    hi: int
    verified_count: int = 0
    max_word_len: int = 0
    length_histogram: Dict[int, int] = field(default_factory=dict)
    failures: List[Tuple[int, str]] = field(default_factory=list)

    def merge(self, other: "RangeReport") -> None:
        """Fold in the report for the sub-range directly after this one."""
        self.hi = max(self.hi, other.hi)
        self.lo = min(self.lo, other.lo)
        self.verified_count += other.verified_count
        self.max_word_len = max(self.max_word_len, other.max_word_len)
        for k, v in other.length_histogram.items():
            self.length_histogram[k] = self.length_histogram.get(k, 0) + v
        self.failures.extend(other.failures)

    def to_dict(self):
        return {
            "lo": str(self.lo),
            "hi": str(self.hi),
            "verified_count": self.verified_count,
            "max_word_len": self.max_word_len,
            "length_histogram": {str(k): self.length_histogram[k] for k in sorted(self.length_histogram)},
            "failures": [{"x": str(x), "reason": r} for x, r in self.failures],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        return cls(
            int(d["lo"]), int(d["hi"]), int(d["verified_count"]), int(d["max_word_len"]),
            {int(k): int(v) for k, v in d["length_histogram"].items()},
            [(int(f["x"]), f["reason"]) for f in d["failures"]],
        )

    def histogram_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["length", "count"])
        for k in sorted(self.length_histogram):
            w.writerow([k, self.length_histogram[k]])
        return buf.getvalue()


def _range_chunk(args):
    lo, hi, step_cap, backend = args
    lengths = kernels.backend(backend).range_lengths(lo, hi, step_cap)
    rep = RangeReport(lo, hi)
    bad = np.flatnonzero(lengths < 0)
    for i in bad:
        rep.failures.append((lo + int(i), f"step cap {step_cap} exceeded"))
    good = lengths[lengths > 0]
    rep.verified_count = int(good.size)
    if good.size:
        counts = np.bincount(good)
        rep.length_histogram = {int(k): int(c) for k, c in enumerate(counts) if c}
        rep.max_word_len = int(good.max())
    return rep


def run_id(lo, hi, step_cap, chunk_size):
    key = f"{lo}:{hi}:{step_cap}:{chunk_size}".encode()
    return hashlib.sha256(key).hexdigest()[:16]


def _load_checkpoint(path, rid):
    """Return (accumulated report, done_through) or None for a fresh run."""
    if not os.path.exists(path) or os.path.getsize(path) == 0:
        return None
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    lines = text.split("\n")
    if not text.endswith("\n"):
        # torn final write: drop the partial line
        log.warning("discarding incomplete trailing line in %s", path)
        lines = lines[:-1]
    lines = [ln for ln in lines if ln]
    if not lines:
        return None
    try:
        header = json.loads(lines[0])
        records = [json.loads(ln) for ln in lines[1:]]
    except json.JSONDecodeError as exc:
        raise ResumeError(f"corrupt checkpoint {path}: {exc}") from exc
    if header.get("format") != CHECKPOINT_FORMAT:
        raise ResumeError(f"{path} is not a checkpoint file")
    if header.get("version") != CHECKPOINT_VERSION:
        raise ResumeError(f"unsupported checkpoint version {header.get('version')!r}")
    if header.get("run_id") != rid:
        raise ResumeError(f"checkpoint {path} belongs to a different run")
    if not records:
        return None
    last = records[-1]
    try:
        return RangeReport.from_dict(last["report"]), int(last["done_through"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ResumeError(f"corrupt checkpoint record in {path}: {exc}") from exc


def verify_range(lo: int, hi: int, jobs: Optional[int] = 1, step_cap: int = DEFAULT_DR_CAP,
                 checkpoint_path=None, chunk_size: int = CHUNK_SIZE, backend=None,
                 progress=None) -> RangeReport:
    """Compute d_r(x) for every x in [lo, hi] and aggregate the word lengths.

    *progress*, if given, is called with (done_through, hi) after each
    sub-range.
    """
    if lo < 2:
        raise ValueError("lo must be >= 2")
    if lo > hi:
        raise ValueError("lo must be <= hi")
    name = kernels.backend(backend).name
    rid = run_id(lo, hi, step_cap, chunk_size)
    report = RangeReport(lo, lo - 1)
    start = lo
    fh = None
    if checkpoint_path is not None:
        state = _load_checkpoint(checkpoint_path, rid)
        if state is not None:
            report, done = state
            start = done + 1
            log.info("resuming %s after %d", rid, done)
        fh = open(checkpoint_path, "a" if state is not None else "w", encoding="utf-8")
        if state is None:
            fh.write(json.dumps({"format": CHECKPOINT_FORMAT, "version": CHECKPOINT_VERSION,
                                 "run_id": rid, "lo": str(lo), "hi": str(hi),
                                 "step_cap": step_cap, "chunk_size": chunk_size}) + "\n")
            fh.flush()
    try:
        # sub-range boundaries are fixed by lo and chunk_size, resumed or not
        pieces = [(a, b) for a, b in split_range(lo, hi, chunk_size) if a >= start]
        tasks = [(a, b, step_cap, name) for a, b in pieces]
        for part in map_chunks(_range_chunk, tasks, jobs):
            report.merge(part)
            if fh is not None:
                fh.write(json.dumps({"run_id": rid, "done_through": str(part.hi),
                                     "report": report.to_dict()}, sort_keys=True) + "\n")
                fh.flush()
            if progress is not None:
                progress(part.hi, hi)
    finally:
        if fh is not None:
            fh.close()
    report.hi = hi
    return report


@dataclass
class CoverageReport:
    exponent: int
    covered_residues: int
    total_residues: int
    uncovered_sample: List[int]
    class_size_sum: int
    words_used: int

    @property
    def fraction(self):
        return self.covered_residues / self.total_residues

    @property
    def disjoint(self):
        return self.class_size_sum == self.covered_residues

    def to_dict(self):
        return {
            "exponent": self.exponent,
            "covered_residues": str(self.covered_residues),
            "total_residues": str(self.total_residues),
            "class_size_sum": str(self.class_size_sum),
            "words_used": self.words_used,
            "uncovered_sample": [str(x) for x in self.uncovered_sample],
        }


def _classes_by_length(level):
    by_len: Dict[int, set] = {}
    for w in enumerate_words(level):
        by_len.setdefault(len(w), set()).add(residue_of_word(w).residue)
    return by_len


def _is_covered(x, by_len):
    return any(x % (1 << n) in res for n, res in by_len.items())


def coverage_bitmap(level):
    """Boolean array over residues mod 2^level, plus the summed class sizes."""
    covered = np.zeros(1 << level, dtype=bool)
    size_sum = 0
    for n, residues in _classes_by_length(level).items():
        step = 1 << n
        for r in residues:
            covered[r::step] = True
            size_sum += 1 << (level - n)
    return covered, size_sum


def coverage(level: int, sample_size: int = 10) -> CoverageReport:
    """How many residues mod 2^level are settled by words of length <= level."""
    if level < 1:
        raise ValueError("level must be >= 1")
    by_len = _classes_by_length(level)
    words = sum(len(v) for v in by_len.values())
    size_sum = sum(len(v) << (level - n) for n, v in by_len.items())
    total = 1 << level
    if level <= BITMAP_MAX_LEVEL:
        covered, _ = coverage_bitmap(level)
        n_cov = int(covered.sum())
        sample = [int(r) for r in np.flatnonzero(~covered)[:sample_size]]
    else:
        # disjointness is only checked explicitly on bitmap levels
        n_cov = size_sum
        sample = []
        r = 0
        while len(sample) < sample_size and r < total:
            if not _is_covered(r, by_len):
                sample.append(r)
            r += 1
    return CoverageReport(level, n_cov, total, sample, size_sum, words)


def cross_check_coverage(level: int, n: int, backend=None) -> bool:
    """For x in [2, n]: covered at *level* iff |d_r(x)| <= level."""
    if n < 2:
        raise ValueError("n must be >= 2")
    mask = (1 << level) - 1
    lengths = kernels.backend(backend).range_lengths(2, n, DEFAULT_DR_CAP)
    xs = np.arange(2, n + 1, dtype=np.uint64) if n < (1 << 64) else None
    if level <= BITMAP_MAX_LEVEL and xs is not None:
        covered, _ = coverage_bitmap(level)
        settled = covered[(xs & np.uint64(mask)).astype(np.int64)]
    else:
        by_len = _classes_by_length(level)
        settled = np.array([_is_covered(x, by_len) for x in range(2, n + 1)], dtype=bool)
    if (lengths < 0).any():
        return False
    return bool(np.array_equal(settled, lengths <= level))
