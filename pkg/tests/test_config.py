import json

import pytest

from gridauth.config import ServiceConfig, load_config


def test_defaults():
    config = load_config(env={})
    assert config == ServiceConfig()
    assert config.challenge_ttl_s == 120.0
    assert config.rate_limit_per_minute == 10


def test_file_overrides_defaults(tmp_path):
    path = tmp_path / "gridauth.json"
    path.write_text(json.dumps({"listen": "0.0.0.0:9999", "challenge_ttl_s": 30}))
    config = load_config(str(path), env={})
    assert config.listen == "0.0.0.0:9999"
    assert config.host == "0.0.0.0" and config.port == 9999
    assert config.challenge_ttl_s == 30


def test_env_overrides_file(tmp_path):
    path = tmp_path / "gridauth.json"
    path.write_text(json.dumps({"listen": "0.0.0.0:9999", "rate_limit_per_minute": 5}))
    env = {
        "GRIDAUTH_LISTEN": "127.0.0.1:8123",
        "GRIDAUTH_CHALLENGE_TTL": "45.5",
        "GRIDAUTH_RATE_LIMIT": "99",
        "GRIDAUTH_STORE": "/tmp/creds.store",
    }
    config = load_config(str(path), env=env)
    assert config.listen == "127.0.0.1:8123"
    assert config.challenge_ttl_s == 45.5
    assert config.rate_limit_per_minute == 99
    assert config.store_path == "/tmp/creds.store"


def test_unknown_file_key_is_an_error(tmp_path):
    path = tmp_path / "gridauth.json"
    path.write_text(json.dumps({"listne": "oops"}))
    with pytest.raises(ValueError, match="unknown config keys"):
        load_config(str(path), env={})
