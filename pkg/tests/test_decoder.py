import itertools
import random

import pytest

from flagcodes.decoder import (
    DECODED,
    FAILURE,
    AmbiguousDecodeError,
    ChannelError,
    ReceivedSequence,
    accumulate,
    correctable_budget,
    decode,
    erase,
    error_count,
    random_subspace_of,
    received_from_json,
    received_to_json,
    simulate,
)
from flagcodes.linalg import Subspace, contains, intersect_dim


def _zero_received(code):
    field = code.params.field
    n = code.ambient
    return ReceivedSequence(n, [Subspace.zero(field, n)] * (n - 1))


def test_error_count_exact_copy(code_221):
    flag = code_221.flags[0]
    received = erase(flag, [0, 0, 0, 0], seed=1)
    assert error_count(flag, received) == 0


def test_error_count_all_erased(code_221):
    assert error_count(code_221.flags[0], _zero_received(code_221)) == 10


def test_error_count_single_shot(code_221):
    flag = code_221.flags[2]
    received = erase(flag, [0, 0, 2, 0], seed=5)
    assert error_count(flag, received) == 2


def test_error_count_rejects_non_erasure(code_221):
    sent = code_221.flags[0]
    other = code_221.flags[1]
    n = code_221.ambient
    shots = [other[i] for i in range(1, n)]
    with pytest.raises(ChannelError):
        error_count(sent, ReceivedSequence(n, shots))


def test_correctable_budget(code_221, code_232):
    assert correctable_budget(code_221) == 5  # d_f = 12
    assert correctable_budget(code_232) == 14  # d_f = 30


def test_random_subspace_uniform_dim(code_221):
    rng = random.Random(9)
    sub = code_221.flags[0][3]
    for d in range(4):
        sample = random_subspace_of(sub, d, rng)
        assert sample.dim == d
        assert contains(sub, sample)


def test_erase_deterministic(code_221):
    flag = code_221.flags[4]
    a = erase(flag, [1, 0, 2, 1], seed=123)
    b = erase(flag, [1, 0, 2, 1], seed=123)
    assert a.shots == b.shots


def test_erase_identity_and_total(code_221):
    flag = code_221.flags[1]
    full = erase(flag, [0, 0, 0, 0], seed=0)
    assert full.shots == tuple(flag[i] for i in range(1, 5))
    wiped = erase(flag, [1, 2, 3, 4], seed=0)
    assert all(x.dim == 0 for x in wiped.shots)


def test_erase_rejects_out_of_range(code_221):
    with pytest.raises(ChannelError):
        erase(code_221.flags[0], [2, 0, 0, 0], seed=0)


def test_accumulate_zero(code_221):
    acc = accumulate(_zero_received(code_221), code_221.params.k1)
    assert all(acc[i].dim == 0 for i in range(1, 5))


def test_accumulate_nested(code_232):
    flag = code_232.flags[7]
    received = erase(flag, [1, 2, 3, 1, 1, 2, 3], seed=21)
    acc = accumulate(received, code_232.params.k1)
    for i in range(1, code_232.ambient - 1):
        assert contains(acc[i + 1], acc[i])
    for i in range(1, code_232.params.k1 + 1):
        assert acc[i].dim == 0


def test_accumulate_sum_dims(code_232):
    # two distinct lines at shots 4 and 5 accumulate to a plane
    k1 = code_232.params.k1
    flag = code_232.flags[3]
    rng = random.Random(2)
    while True:
        x4 = random_subspace_of(flag[4], 1, rng)
        x5 = random_subspace_of(flag[5], 1, rng)
        if intersect_dim(x4, x5) == 0:
            break
    field = code_232.params.field
    n = code_232.ambient
    shots = [Subspace.zero(field, n)] * (n - 1)
    shots[3], shots[4] = x4, x5
    acc = accumulate(ReceivedSequence(n, shots), k1)
    assert acc[5].dim == 2


def test_decode_exact_copy_step1(code_221):
    for idx, flag in enumerate(code_221.flags, start=1):
        outcome = decode(code_221, erase(flag, [0, 0, 0, 0], seed=idx))
        assert outcome.status == DECODED
        assert outcome.flag_index == idx
        assert outcome.step == 1 and outcome.shot_index == 1


def test_decode_step2_pattern(code_232):
    # X_1..X_3 erased, one dimension lost at shot 4: dim(Y_4) = 3 > 1
    flag = code_232.flags[10]
    received = erase(flag, [1, 2, 3, 1, 0, 0, 0], seed=77)
    outcome = decode(code_232, received)
    assert outcome.status == DECODED
    assert outcome.flag_index == 11
    assert outcome.step == 2


def test_decode_step3_pattern(code_221):
    # everything through the middle band erased: step 3 must fire
    flag = code_221.flags[5]
    received = erase(flag, [1, 2, 3, 0], seed=3)
    outcome = decode(code_221, received)
    assert outcome.status == DECODED
    assert outcome.flag_index == 6
    assert outcome.step == 3


def test_decode_all_zero_fails(code_221):
    outcome = decode(code_221, _zero_received(code_221))
    assert outcome.status == FAILURE
    assert outcome.flag_index is None


def test_exhaustive_round_trip_221(code_221):
    budget = correctable_budget(code_221)
    vectors = [
        e
        for e in itertools.product(range(2), range(3), range(4), range(5))
        if sum(e) <= budget
    ]
    for idx, flag in enumerate(code_221.flags, start=1):
        for vec in vectors:
            received = erase(flag, vec, seed=idx * 1000 + sum(vec))
            outcome = decode(code_221, received)
            assert outcome.status == DECODED and outcome.flag_index == idx


def test_exhaustive_round_trip_220(code_220):
    budget = correctable_budget(code_220)
    vectors = [
        e for e in itertools.product(range(2), range(3), range(4)) if sum(e) <= budget
    ]
    for idx, flag in enumerate(code_220.flags, start=1):
        for vec in vectors:
            received = erase(flag, vec, seed=idx)
            outcome = decode(code_220, received)
            assert outcome.status == DECODED and outcome.flag_index == idx
            assert outcome.step != 2  # no middle band when r = 0


def test_step2_threshold_soundness(code_232):
    # distinct codewords share at most dimension j - k1 in the middle band
    p = code_232.params
    for j in range(p.k1 + 1, p.k2 + 1):
        subs = [flag[j] for flag in code_232.flags]
        for a in range(len(subs)):
            for b in range(a + 1, len(subs)):
                assert intersect_dim(subs[a], subs[b]) <= j - p.k1


def test_step3_threshold_soundness(code_221):
    p = code_221.params
    for j in range(p.k2 + 1, p.n):
        subs = [flag[j] for flag in code_221.flags]
        for a in range(len(subs)):
            for b in range(a + 1, len(subs)):
                assert intersect_dim(subs[a], subs[b]) <= 2 * j - p.n


def test_step1_uniqueness_over_lines(code_221):
    # every line inside a codeword's spread subspace identifies it uniquely
    from flagcodes.linalg import enumerate_subspaces

    p = code_221.params
    members = [flag[p.k1] for flag in code_221.flags]
    for line in enumerate_subspaces(p.field, p.n, 1):
        owners = [m for m in members if contains(m, line)]
        assert len(owners) <= 1


def test_simulate_all_successes(code_221):
    report = simulate(code_221, trials=300, seed=7)
    assert report.successes == 300
    assert report.failures == 0
    assert sum(report.step_histogram.values()) == 300


def test_simulate_deterministic(code_221):
    a = simulate(code_221, trials=100, seed=42)
    b = simulate(code_221, trials=100, seed=42)
    assert a == b


def test_simulate_rejects_zero_trials(code_221):
    with pytest.raises(ChannelError):
        simulate(code_221, trials=0, seed=1)


def test_simulate_budget_override(code_221):
    # budget 0 means no erasures ever: trivially all step-1 decodes
    report = simulate(code_221, trials=50, seed=1, budget=0)
    assert report.successes == 50
    assert report.step_histogram == {1: 50}
    assert report.error_budget == 0


def test_received_sequence_serialization(code_232):
    flag = code_232.flags[12]
    received = erase(flag, [1, 0, 2, 1, 0, 3, 2], seed=9)
    round_tripped = received_from_json(received_to_json(received))
    assert round_tripped.ambient == received.ambient
    assert round_tripped.shots == received.shots


def test_received_from_json_rejects_garbage():
    with pytest.raises(ChannelError):
        received_from_json("{}")
    with pytest.raises(ChannelError):
        received_from_json("not json")


def test_ambiguous_decode_is_loud(code_221):
    # a duplicated codeword makes step-1 containment non-unique
    from flagcodes.construction import FlagCode

    params = code_221.params
    doubled = FlagCode(
        params,
        code_221.generators + code_221.generators[:1],
        code_221.flags + code_221.flags[:1],
    )
    received = erase(code_221.flags[0], [0, 0, 0, 0], seed=2)
    with pytest.raises(AmbiguousDecodeError):
        decode(doubled, received)
