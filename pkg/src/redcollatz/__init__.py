"""Reduced Collatz dynamics: words, orbits, periods, residue classes and range sweeps."""
from .dynamics import (OrbitRecord, StoppingInfo, apply_word, collatz_step, is_matched,
                       orbit_counts, original_dynamics, reduced_dynamics)
from .enumeration import ClassEntry, ResidueClass, class_table, enumerate_words, residue_of_word
from .errors import *  # noqa: F401,F403
from .kernels import BACKEND
from .period import (PeriodReport, PrimedValue, apply_primed, minimal_period_bruteforce,
                     period_of, sweep_period, verify_period, verify_separation)
from .sieve import CoverageReport, RangeReport, coverage, cross_check_coverage, verify_range
from .word import (PowerOrdering, Transform, Word, cmp_pow3_pow2, cnt_i, cnt_o,
                   is_extendable_prefix, is_reduced_form, substr)

__version__ = "0.1.0"
