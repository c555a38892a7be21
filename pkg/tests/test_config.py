from __future__ import annotations

import pytest

from crisiswatch.config import ConfigError, load_config

BASE = """\
store_path: data/store
service:
  bind: "0.0.0.0:9000"
  api_keys: [alpha, beta]
  ip_allowlist: ["192.168.0.0/16", "10.0.0.0/8"]
  cors_origins: ["http://localhost:5173"]
  request_timeout_seconds: 2.5
  cache_ttl_seconds: 10
profiles:
  - id: p1
    name: First
    window: {start: "2026-03-01T00:00:00Z", end: "2026-03-15T00:00:00Z"}
    terms:
      - hashtag: "#Measles"
      - keyword: Vaccine
"""


def write(tmp_path, text):
    path = tmp_path / "config.yaml"
    path.write_text(text)
    return path


def test_full_config_parses(tmp_path):
    config = load_config(write(tmp_path, BASE), env={})
    assert config.store_path == (tmp_path / "data" / "store").resolve()
    assert config.service.host == "0.0.0.0"
    assert config.service.port == 9000
    assert config.service.api_keys == ("alpha", "beta")
    assert config.service.request_timeout == 2.5
    profile = config.profile("p1")
    assert profile is not None
    assert [t.as_string() for t in profile.terms] == ["hashtag:measles", "keyword:vaccine"]
    assert config.profile("missing") is None


def test_env_overrides(tmp_path):
    env = {
        "CRISISWATCH_BIND": "127.0.0.1:7777",
        "CRISISWATCH_API_KEYS": "one, two",
        "CRISISWATCH_ALLOWLIST": "127.0.0.0/8",
    }
    config = load_config(write(tmp_path, BASE), env=env)
    assert config.service.port == 7777
    assert config.service.api_keys == ("one", "two")
    assert config.service.ip_allowlist == ("127.0.0.0/8",)


def test_missing_file_is_config_error(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.yaml", env={})


def test_no_api_keys_rejected(tmp_path):
    text = BASE.replace("api_keys: [alpha, beta]", "api_keys: []")
    with pytest.raises(ConfigError):
        load_config(write(tmp_path, text), env={})


def test_bad_cidr_rejected(tmp_path):
    text = BASE.replace("192.168.0.0/16", "not-a-cidr")
    with pytest.raises(ConfigError):
        load_config(write(tmp_path, text), env={})


def test_duplicate_profile_ids_rejected(tmp_path):
    text = BASE + BASE[BASE.index("  - id: p1") :]
    with pytest.raises(ConfigError):
        load_config(write(tmp_path, text), env={})


def test_invalid_profile_window_rejected(tmp_path):
    text = BASE.replace('end: "2026-03-15T00:00:00Z"', 'end: "2026-02-01T00:00:00Z"')
    with pytest.raises(ConfigError):
        load_config(write(tmp_path, text), env={})


def test_store_path_required(tmp_path):
    with pytest.raises(ConfigError):
        load_config(write(tmp_path, "service:\n  api_keys: [k]\n"), env={})
