import random

import pytest

from flagcodes.metrics import (
    MetricsError,
    aq_exact,
    cardinality_bound_check,
    classify,
    flag_distance,
    max_distance,
    min_flag_distance,
    partial_spread_bound,
    projected_code,
    projected_min_distance,
    subspace_distance,
)


def test_subspace_distance_equal(example_flags):
    f1 = example_flags[0]
    assert subspace_distance(f1[2], f1[2]) == 0


def test_subspace_distance_example_levels(example_flags):
    f1, f2, _ = example_flags
    # per-level distances of the first flag pair: 0, 2, 4, 6, 4, 2
    per_level = [subspace_distance(f1[i], f2[i]) for i in range(1, 7)]
    assert per_level == [0, 2, 4, 6, 4, 2]


def test_flag_distances_example(example_flags):
    f1, f2, f3 = example_flags
    assert flag_distance(f1, f2) == 18
    assert flag_distance(f2, f3) == 18
    assert flag_distance(f1, f3) == 24
    assert flag_distance(f1, f1) == 0


def test_min_flag_distance_example(example_flags):
    assert min_flag_distance(example_flags) == 18


def test_min_flag_distance_singleton(example_flags):
    assert min_flag_distance(example_flags[:1]) == 0


def test_min_flag_distance_empty():
    with pytest.raises(MetricsError):
        min_flag_distance([])


def test_max_distance_full():
    assert max_distance(7) == 24
    assert max_distance(5) == 12
    assert max_distance(8) == 32


def test_max_distance_general_type():
    # type (1, 3) on n = 4: 2 * (1 + 1)
    assert max_distance(4, (1, 3)) == 4


def test_example_projected_cardinalities(example_flags):
    cards = [len(projected_code(example_flags, i)) for i in range(1, 7)]
    assert cards == [2, 3, 3, 3, 3, 2]


def test_projected_code_index_range(example_flags):
    with pytest.raises(MetricsError):
        projected_code(example_flags, 7)


def test_sandwich_projected_spread_distance(code_221):
    pc = projected_code(code_221, 2)
    assert len(pc) == 9
    assert projected_min_distance(pc) == 4


def test_sandwich_232_projected_distance_profile(code_232):
    profile = [
        projected_min_distance(projected_code(code_232, i)) for i in range(1, 8)
    ]
    assert profile == [2, 4, 6, 6, 6, 4, 2]
    assert sum(profile) == 30 == min_flag_distance(code_232)


def test_classify_221_is_odfc(code_221):
    rep = classify(code_221)
    assert rep.classification == "ODFC"
    assert (rep.d_f, rep.D_n, rep.l) == (12, 12, 0)
    assert (rep.L, rep.R) == (2, 3)
    assert rep.projected_cardinalities == (9, 9, 9, 9)
    assert rep.bound_checks["odfc_criterion_agrees"]
    assert rep.bound_checks["projected_distances_maximal"]
    assert rep.bound_checks["projected_cardinalities_full"]


def test_classify_232_is_qodfc(code_232):
    rep = classify(code_232)
    assert rep.classification == "QODFC"
    assert (rep.d_f, rep.D_n, rep.l) == (30, 32, 1)
    assert rep.bound_checks["odfc_criterion_agrees"]


def test_classify_example_flags(example_flags):
    rep = classify(example_flags)
    assert rep.d_f == 18
    assert rep.D_n == 24
    assert rep.l == 3
    assert rep.classification == "OTHER"
    # the deficit sits exactly at l = (n-1)/2, so the full-cardinality
    # check is out of range and reported as None
    assert rep.bound_checks["projected_cardinalities_full"] is None


def test_classify_needs_two_flags(example_flags):
    with pytest.raises(MetricsError):
        classify(example_flags[:1])


def test_partial_spread_bound():
    assert partial_spread_bound(2, 5, 2) == 10
    assert partial_spread_bound(2, 4, 2) == 5
    assert partial_spread_bound(2, 8, 3) == 36


def test_aq_exact():
    assert aq_exact(2, 5, 2) == 9
    assert aq_exact(2, 10, 4) == 65
    assert aq_exact(2, 8, 3) is None  # boundary: k = (q^rem - 1)/(q - 1)


def test_cardinality_bound_equality(code_221):
    report = cardinality_bound_check(code_221)
    assert report["applicable"]
    assert report["bound"] == 9
    assert report["equality"]


def test_cardinality_bound_fallback(code_232):
    # k1 = 3 <= q + 1 = 3: exact bound route inapplicable, partial spread
    # bound 36 holds with slack at most q^2 - 1
    report = cardinality_bound_check(code_232)
    assert report["lemma22_bound"] is None
    assert report["bound"] == 36
    assert report["satisfied"]
    assert 36 - report["cardinality"] <= 3


def test_flag_distance_symmetry_and_triangle(code_221):
    rng = random.Random(3)
    flags = code_221.flags
    for _ in range(50):
        f, g, h = (flags[rng.randrange(len(flags))] for _ in range(3))
        assert flag_distance(f, g) == flag_distance(g, f)
        assert flag_distance(f, h) <= flag_distance(f, g) + flag_distance(g, h)
