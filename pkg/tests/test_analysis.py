import math

import pytest

from curvepass.analysis import (
    CANDIDATE_LIMIT,
    iter_candidates,
    observation_candidates,
    password_space,
    pin_space_ratio,
)
from curvepass.errors import CandidateLimitExceeded, InvalidArgs
from oracles import brute_force_candidates, enumerate_passwords


class TestPasswordSpace:
    def test_tiny_case_by_hand(self):
        assert password_space(3, 2).space == 6

    def test_prototype_space(self):
        report = password_space(24, 5)
        assert report.space == 24 * 23 * 22 * 21 * 20
        assert report.space == 5_100_480

    def test_full_permutation(self):
        assert password_space(6, 6).space == math.factorial(6)

    def test_bits_consistent(self):
        report = password_space(24, 5)
        assert report.bits == pytest.approx(math.log2(report.space), rel=1e-9)

    def test_matches_exhaustive_enumeration_small(self):
        for big in range(1, 9):
            for small in range(1, big + 1):
                expected = len(enumerate_passwords(range(big), small))
                assert password_space(big, small).space == expected

    def test_invalid_args(self):
        with pytest.raises(InvalidArgs):
            password_space(3, 4)
        with pytest.raises(InvalidArgs):
            password_space(0, 1)
        with pytest.raises(InvalidArgs):
            password_space(3, 0)


class TestPinSpaceRatio:
    def test_vs_alphanumeric_pin(self):
        report = password_space(24, 5)
        ratio = pin_space_ratio(report, alphabet=36, pin_length=4)
        assert ratio == pytest.approx(5_100_480 / 1_679_616)
        assert ratio > 1

    def test_vs_digit_pin(self):
        report = password_space(24, 5)
        assert pin_space_ratio(report, 10, 4) == pytest.approx(510.048)

    def test_equal_spaces(self):
        report = password_space(6, 6)  # 720
        # contrive an alphabet**length equal to the space
        assert pin_space_ratio(report, 720, 1) == 1.0

    def test_invalid_args(self):
        report = password_space(3, 2)
        with pytest.raises(InvalidArgs):
            pin_space_ratio(report, 1, 4)
        with pytest.raises(InvalidArgs):
            pin_space_ratio(report, 10, 0)


class TestObservationCandidates:
    def test_single_image_candidates(self):
        report = observation_candidates(["h", "a", "t"], 1)
        assert report.candidate_count == 3
        assert set(iter_candidates(["h", "a", "t"], 1)) == {("h",), ("a",), ("t",)}

    def test_revisit_sequence_pairs(self):
        report = observation_candidates(["h", "a", "b", "a", "t"], 2)
        expected = {
            ("h", "a"), ("h", "b"), ("h", "t"),
            ("a", "b"), ("a", "t"),
            ("b", "a"), ("b", "t"),
        }
        assert set(iter_candidates(["h", "a", "b", "a", "t"], 2)) == expected
        assert report.candidate_count == 7

    def test_matches_brute_force_on_random_traces(self):
        import random

        rng = random.Random(55)
        alphabet = ["a", "b", "c", "d", "e", "f"]
        for _ in range(100):
            trace = [rng.choice(alphabet) for _ in range(rng.randint(1, 10))]
            for n in (1, 2, 3):
                expected = brute_force_candidates(trace, n)
                got = set(iter_candidates(trace, n))
                assert got == expected, (trace, n)

    def test_truth_containment(self):
        observed = ["h", "p1", "x", "p2", "p3", "t"]
        report = observation_candidates(observed, 3, truth=["p1", "p2", "p3"])
        assert report.contains_truth is True
        report = observation_candidates(observed, 3, truth=["p2", "p1", "p3"])
        assert report.contains_truth is False

    def test_truth_not_supplied(self):
        report = observation_candidates(["a", "b"], 1)
        assert report.contains_truth is None

    def test_residual_bits(self):
        report = observation_candidates(["h", "a", "t"], 1)
        assert report.residual_bits == pytest.approx(math.log2(3))

    def test_count_monotone_under_extension(self):
        import random

        rng = random.Random(9)
        alphabet = ["a", "b", "c", "d", "e"]
        trace = [rng.choice(alphabet) for _ in range(4)]
        prev = observation_candidates(trace, 2).candidate_count
        for _ in range(6):
            trace.append(rng.choice(alphabet))
            count = observation_candidates(trace, 2).candidate_count
            assert count >= prev
            prev = count

    def test_residual_never_exceeds_full_space_bits(self):
        observed = [f"i{k}" for k in range(10)]
        report = observation_candidates(observed, 3)
        full = password_space(10, 3)
        assert report.residual_bits <= full.bits + 1e-9
        # a trace admitting every ordered tuple reaches the full space
        maximal = observed * 3
        report = observation_candidates(maximal, 3)
        assert report.candidate_count == full.space

    def test_cutoff(self):
        observed = [f"i{k}" for k in range(60)]
        with pytest.raises(CandidateLimitExceeded):
            observation_candidates(observed, 8)
        assert math.perm(60, 8) > CANDIDATE_LIMIT

    def test_invalid_args(self):
        with pytest.raises(InvalidArgs):
            observation_candidates([], 1)
        with pytest.raises(InvalidArgs):
            observation_candidates(["a"], 0)

    def test_n_larger_than_distinct_gives_zero(self):
        report = observation_candidates(["a", "b", "a"], 3)
        assert report.candidate_count == 0
        assert report.residual_bits is None
