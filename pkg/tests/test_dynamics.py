import json

import pytest
from hypothesis import given, settings, strategies as st

from redcollatz.dynamics import (OrbitRecord, apply_word, collatz_step, is_matched, orbit_counts,
                                 original_dynamics, reduced_dynamics)
from redcollatz.errors import DomainError, MismatchError, StepCapExceeded
from redcollatz.word import EMPTY, Transform, Word

from oracles import d_naive, dr_naive

D_R_27 = "IIOIIIIIOIOIIOIIIOIIIIOIOOIIIOIIOIIIIIIOOIIIIOOOIOIOIOOOIOO"


@pytest.mark.parametrize("x,expected", [(3, (5, Transform.I)), (8, (4, Transform.O)),
                                        (1, (2, Transform.I))])
def test_collatz_step(x, expected):
    assert collatz_step(x) == expected


def test_collatz_step_zero():
    with pytest.raises(DomainError):
        collatz_step(0)


@pytest.mark.parametrize("x,t,expected", [(3, "I", True), (4, "I", False), (4, "O", True),
                                          (3, "O", False)])
def test_is_matched(x, t, expected):
    assert is_matched(x, t) is expected


def test_apply_word_fixture():
    rec = apply_word("IIOO", 3, keep_trace=True)
    assert rec.final == 2
    assert rec.trace == (3, 5, 8, 4, 2)
    assert apply_word("II", 3).final == 8
    assert apply_word(EMPTY, 7).final == 7


def test_apply_word_mismatch():
    with pytest.raises(MismatchError) as err:
        apply_word("O", 3)
    assert err.value.step == 1 and err.value.value == 3


@pytest.mark.parametrize("keep_trace", [False, True])
@given(x=st.integers(1, 10**30), w=st.text(alphabet="IO", max_size=60))
def test_apply_word_matches_naive(keep_trace, x, w):
    y = x
    bad = None
    for k, ch in enumerate(w, start=1):
        if (y % 2 == 1) != (ch == "I"):
            bad = (k, y)
            break
        y = (3 * y + 1) // 2 if ch == "I" else y // 2
    if bad is None:
        assert apply_word(w, x, keep_trace).final == y
    else:
        with pytest.raises(MismatchError) as err:
            apply_word(w, x, keep_trace)
        assert (err.value.step, err.value.value) == bad


@pytest.mark.parametrize("x,word", [(3, "IIOO"), (7, "IIIOIOO"), (11, "IIOIO"), (10, "O"),
                                    (5, "IO"), (9, "IO"), (27, D_R_27)])
def test_reduced_dynamics_fixtures(x, word):
    assert reduced_dynamics(x).word == Word(word)


def test_reduced_dynamics_27_final():
    assert reduced_dynamics(27).final == 23


def test_reduced_dynamics_domain():
    with pytest.raises(DomainError):
        reduced_dynamics(1)


def test_reduced_dynamics_cap():
    with pytest.raises(StepCapExceeded):
        reduced_dynamics(27, step_cap=58)
    assert len(reduced_dynamics(27, step_cap=59).word) == 59


def test_reduced_dynamics_sweep_against_naive():
    for x in range(2, 20001):
        rec = reduced_dynamics(x)
        word, final = dr_naive(x)
        assert rec.word.seq == word and rec.final == final


@given(st.integers(2, 2**300))
@settings(max_examples=200)
def test_reduced_dynamics_big_against_naive(x):
    rec = reduced_dynamics(x)
    word, final = dr_naive(x)
    assert rec.word.seq == word and rec.final == final
    traced = reduced_dynamics(x, keep_trace=True)
    assert traced.word == rec.word and traced.trace[-1] == final
    assert all(v >= x for v in traced.trace[:-1])


def test_reduced_invariants_to_1e6(backend):
    # all d_r end in O and drop below x; lengths via the sweep kernel
    from redcollatz import kernels
    lengths = kernels.backend(backend).range_lengths(2, 10**6, 10**4)
    assert (lengths > 0).all()
    for x in range(2, 10**6, 997):
        rec = reduced_dynamics(x, step_cap=10**4, keep_trace=True)
        assert len(rec.word) == lengths[x - 2]
        assert rec.word.seq[-1] == "O" and rec.final < x
        assert all(v >= x for v in rec.trace[:-1])


def test_one_mod_four_is_io():
    for x in range(5, 10**5, 4):
        assert reduced_dynamics(x).word.seq == "IO"


def test_apply_reproduces_reduced():
    for x in range(2, 5000):
        rec = reduced_dynamics(x)
        assert apply_word(rec.word, x).final == rec.final


def test_original_dynamics_fixtures():
    rec, info = original_dynamics(3)
    assert rec.word == Word("IIOOO") and info.stopping_time == 5
    rec, info = original_dynamics(2)
    assert rec.word == Word("O") and info.stopping_time == 1
    rec, info = original_dynamics(1)
    assert rec.word == EMPTY and info.stopping_time == 0


def test_original_is_concatenation_of_reduced():
    # a reduced block from y >= 2 stops at its first value below y, so 1 can
    # only ever be a block's final value
    for x in range(2, 10**5 + 1):
        parts = []
        y = x
        while y != 1:
            rec = reduced_dynamics(y)
            parts.append(rec.word.seq)
            y = rec.final
        assert "".join(parts) == original_dynamics(x)[0].word.seq, x


def test_original_against_naive():
    for x in list(range(1, 3000)) + [2**64 + 1, 3**40, 10**20 + 7]:
        rec, info = original_dynamics(x)
        assert rec.word.seq == d_naive(x)
        assert info.cnt_3x1 == rec.word.cnt_i
        assert info.cnt_half_total == len(rec.word) == info.stopping_time
        assert orbit_counts(x) == info


def test_original_trace():
    rec, _ = original_dynamics(7, keep_trace=True)
    assert rec.trace[0] == 7 and rec.trace[-1] == 1 and 1 not in rec.trace[:-1]
    assert len(rec.trace) == len(rec.word) + 1


def test_original_cap():
    with pytest.raises(StepCapExceeded):
        original_dynamics(27, step_cap=10)
    with pytest.raises(StepCapExceeded):
        orbit_counts(27, step_cap=10)


def test_orbit_record_json_roundtrip():
    rec = reduced_dynamics(2**70 + 3)
    data = json.loads(rec.to_json())
    assert set(data) == {"start", "word", "final", "stopping_time", "cnt_3x1", "cnt_half_total"}
    assert data["start"] == str(2**70 + 3)
    back = OrbitRecord.from_dict(data)
    assert back.word == rec.word and back.final == rec.final and back.start == rec.start
