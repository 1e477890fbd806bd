"""Tests for the qf-config.jsonc loader."""

from pathlib import Path

import pytest

from constants import TOL_PREDICATE
from qf_configloader import ConfigLoader, QfConfig, DEFAULT_TOLERANCES

EXAMPLE_CONFIG = Path(__file__).resolve().parents[1] / "qf-config.jsonc"


def test_example_config_loads():
    config = ConfigLoader.load_from_file(EXAMPLE_CONFIG)
    assert config.tolerances.choi_distance == 1e-9
    assert config.tolerances.max_live_qubits == 16
    assert config.defaults_for("zeno")["steps"] == 10


def test_partial_tolerances_keep_defaults(tmp_path):
    path = tmp_path / "qf-config.jsonc"
    path.write_text('{ "tolerances": { "gram_rank": 1e-6 } // rest default\n}', encoding="utf-8")
    config = ConfigLoader.load_from_file(path)
    assert config.tolerances.gram_rank == 1e-6
    assert config.tolerances.predicate == TOL_PREDICATE
    assert config.defaults == {}


def test_defaults_for_merges_wildcard():
    config = QfConfig(defaults={"*": {"seed": 1, "samples": 5}, "continuity": {"samples": 9}})
    assert config.defaults_for("continuity") == {"seed": 1, "samples": 9}
    assert config.defaults_for("zeno") == {"seed": 1, "samples": 5}
    assert QfConfig().defaults_for("zeno") == {}


def test_unknown_tolerance_key_is_rejected(tmp_path, capsys):
    path = tmp_path / "bad.jsonc"
    path.write_text('{ "tolerances": { "wobble": 1 } }', encoding="utf-8")
    with pytest.raises(TypeError):
        ConfigLoader.load_from_file(path)
    assert "may only contain the keys" in capsys.readouterr().out


def test_defaults_must_be_objects(tmp_path):
    path = tmp_path / "bad.jsonc"
    path.write_text('{ "defaults": { "zeno": 3 } }', encoding="utf-8")
    with pytest.raises(TypeError):
        ConfigLoader.load_from_file(path)


def test_optional_loader(tmp_path):
    assert ConfigLoader.load_from_file_optional(tmp_path / "absent.jsonc").tolerances == DEFAULT_TOLERANCES
    with pytest.raises(FileNotFoundError):
        ConfigLoader.load_from_file(tmp_path / "absent.jsonc")
