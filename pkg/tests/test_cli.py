import filecmp
import json

import pytest
from click.testing import CliRunner

from curvepass.cli import main
from curvepass.images import load_catalog


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, *args):
    result = runner.invoke(main, list(args), catch_exceptions=False)
    return result


class TestCatalogGen:
    def test_identical_trees_for_same_seed(self, runner, tmp_path):
        out_a = tmp_path / "a"
        out_b = tmp_path / "b"
        for out in (out_a, out_b):
            result = run(runner, "catalog", "gen", "--count", "24", "--seed", "7", "--out", str(out))
            assert result.exit_code == 0
        names = sorted(p.name for p in out_a.iterdir())
        assert names == sorted(p.name for p in out_b.iterdir())
        match, mismatch, errors = filecmp.cmpfiles(out_a, out_b, names, shallow=False)
        assert mismatch == [] and errors == []

    def test_zero_count_usage_error(self, runner, tmp_path):
        result = runner.invoke(main, ["catalog", "gen", "--count", "0", "--out", str(tmp_path / "x")])
        assert result.exit_code != 0

    def test_round_trip_loads(self, runner, tmp_path):
        out = tmp_path / "cat"
        result = run(runner, "catalog", "gen", "--count", "24", "--seed", "7", "--out", str(out))
        assert result.exit_code == 0
        manifest = json.loads(result.output)["manifest"]
        images = load_catalog(manifest)
        assert len(images) == 24

    def test_degrade_writes_variants(self, runner, tmp_path):
        import numpy as np

        from curvepass.images import DegradeParams, degrade, generate_synthetic_catalog

        src = tmp_path / "src"
        out = tmp_path / "deg"
        gen = run(runner, "catalog", "gen", "--count", "4", "--seed", "7", "--out", str(src))
        manifest = json.loads(gen.output)["manifest"]
        result = run(runner, "catalog", "degrade", "--manifest", manifest, "--out", str(out))
        assert result.exit_code == 0
        written = load_catalog(json.loads(result.output)["manifest"])
        originals = generate_synthetic_catalog(4, seed=7)
        for orig, got in zip(originals, written):
            assert got.id == orig.id + "#degraded"
            expected = degrade(orig, DegradeParams(contrast=0.4, brightness=70))
            assert np.array_equal(got.pixels, expected.pixels)


class TestAnalyzeCommands:
    def test_space_prototype(self, runner):
        result = run(runner, "analyze", "space", "-N", "24", "-n", "5")
        report = json.loads(result.output)
        assert report["space"] == 5_100_480
        assert report["pin_ratio"] > 1

    def test_space_tiny(self, runner):
        result = run(runner, "analyze", "space", "-N", "3", "-n", "2")
        assert json.loads(result.output)["space"] == 6

    def test_space_invalid(self, runner):
        result = runner.invoke(main, ["analyze", "space", "-N", "3", "-n", "9"])
        assert result.exit_code != 0

    def test_attack_counts_pairs(self, runner):
        result = run(runner, "analyze", "attack", "--trace", "h,a,b,a,t", "-n", "2")
        report = json.loads(result.output)
        assert report["candidate_count"] == 7

    def test_attack_contains_truth(self, runner):
        result = run(
            runner,
            "analyze", "attack",
            "--trace", "h,p1,x,p2,y,p3,t",
            "-n", "3",
            "--truth", "p1,p2,p3",
        )
        report = json.loads(result.output)
        assert report["contains_truth"] is True


class TestSimulateLogin:
    def test_ideal_noise_always_accepts(self, runner):
        result = run(
            runner,
            "simulate", "login", "--user", "alice", "--runs", "25", "--seed", "3",
        )
        summary = json.loads(result.output)
        assert summary["accept_rate"] == 1.0
        assert summary["reasons"] == {"ok": 25}
        assert summary["trace_length"]["min"] >= 1
        assert summary["trace_length"]["max"] <= 60

    def test_parallel_requests_stay_correct(self, runner):
        result = run(
            runner,
            "simulate", "login", "--user", "alice", "--runs", "32",
            "--seed", "5", "--parallel", "4",
        )
        summary = json.loads(result.output)
        assert summary["accept_rate"] == 1.0

    def test_jitter_rejections_have_expected_reasons(self, runner):
        result = run(
            runner,
            "simulate", "login", "--user", "alice", "--runs", "120",
            "--noise", "jitter:60", "--seed", "11",
        )
        summary = json.loads(result.output)
        assert summary["accept_rate"] < 1.0
        allowed = {"ok", "wrong_head", "wrong_tail", "sequence_mismatch", "too_long"}
        assert set(summary["reasons"]) <= allowed

    def test_deterministic_given_seed(self, runner):
        args = [
            "simulate", "login", "--user", "alice", "--runs", "10",
            "--noise", "jitter:40", "--seed", "21",
        ]
        first = json.loads(run(runner, *args).output)
        second = json.loads(run(runner, *args).output)
        assert first == second

    def test_bad_noise_flag(self, runner):
        result = runner.invoke(
            main, ["simulate", "login", "--user", "a", "--noise", "wobble"]
        )
        assert result.exit_code != 0
