import json

import pytest

from curvepass.config import ServiceConfig, load_config
from curvepass.engine import PasswordRecord
from curvepass.store import JsonUserStore


class TestConfig:
    def test_defaults(self):
        cfg = load_config(env={})
        assert (cfg.rows, cfg.cols, cfg.password_length) == (4, 6, 5)
        assert cfg.tolerance_mode == "absolute"
        assert cfg.test_seed is None

    def test_file_values(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"rows": 5, "cols": 5, "relative_factor": 1.5}))
        cfg = load_config(path, env={})
        assert (cfg.rows, cfg.cols) == (5, 5)
        assert cfg.relative_factor == 1.5

    def test_env_var_points_at_file(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"password_length": 4}))
        cfg = load_config(env={"CURVEPASS_CONFIG": str(path)})
        assert cfg.password_length == 4

    def test_env_overrides_file(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"rows": 5}))
        cfg = load_config(path, env={"CURVEPASS_ROWS": "6", "CURVEPASS_TEST_SEED": "9"})
        assert cfg.rows == 6
        assert cfg.test_seed == 9

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"row_count": 5}))
        with pytest.raises(ValueError):
            load_config(path, env={})

    def test_policy_and_grid_builders(self):
        cfg = ServiceConfig(rows=3, cols=3, canvas_width=300, canvas_height=300, password_length=2)
        assert cfg.grid().rows == 3
        assert cfg.policy().n == 2
        assert cfg.degrade_params().contrast == 0.4


class TestJsonUserStore:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "users.json"
        store = JsonUserStore(path)
        record = PasswordRecord("alice", ("a", "b", "c"), created_at=123.0)
        store.put(record)
        assert "alice" in store

        reopened = JsonUserStore(path)
        loaded = reopened.get("alice")
        assert loaded == record
        assert reopened.user_ids() == ["alice"]

    def test_missing_user(self, tmp_path):
        store = JsonUserStore(tmp_path / "users.json")
        assert store.get("ghost") is None
        assert "ghost" not in store

    def test_creates_parent_dirs(self, tmp_path):
        path = tmp_path / "deep" / "nested" / "users.json"
        store = JsonUserStore(path)
        store.put(PasswordRecord("bob", ("x",), created_at=1.0))
        assert path.is_file()
