# test/test_config_loader.py
# Fichier de configuration et ordre de priorité des sources

import pytest

from hk_consensus.core.config_loader import build_config, normalize_key, read_config_file
from hk_consensus.core.exceptions import ConfigFileError, UsageError


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "run.conf"
    path.write_text(
        "# balayage de référence\n"
        "n = 10,100\n"
        "eps = 0.5:1.0:0.25\n"
        "trials = 50   # essais par cellule\n"
        "max-steps = 500\n"
        "async = yes\n",
        encoding="utf-8",
    )
    return path


class TestReadConfigFile:
    def test_keys_are_normalized(self, config_file):
        values = read_config_file(config_file)
        assert values == {
            'n': "10,100", 'eps': "0.5:1.0:0.25", 'trials': "50", 'max_steps': "500", 'asynchronous': "yes",
        }

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigFileError):
            read_config_file(tmp_path / "absent.conf")

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "bad.conf"
        path.write_text("colour = blue\n", encoding="utf-8")
        with pytest.raises(ConfigFileError):
            read_config_file(path)

    def test_aliases(self):
        assert normalize_key("Max-Steps") == "max_steps"
        assert normalize_key("workers") == "threads"
        assert normalize_key("epsilon") == "eps"


class TestBuildConfig:
    def test_defaults(self):
        config = build_config("verify", {})
        assert config.suite == "all"
        assert config.cases == 1000
        assert config.seed == 0
        assert config.threads is None

    def test_file_values_are_parsed(self, config_file):
        config = build_config("sweep", {}, read_config_file(config_file), str(config_file))
        assert config.n == [10, 100]
        assert config.eps == [0.5, 0.75, 1.0]
        assert config.trials == 50
        assert config.max_steps == 500
        assert config.asynchronous is True
        assert config.config_file == str(config_file)

    def test_flags_override_file(self, config_file):
        config = build_config("sweep", {'trials': "7", 'eps': None}, read_config_file(config_file))
        assert config.trials == 7
        assert config.eps == [0.5, 0.75, 1.0]

    def test_environment_between_file_and_flags(self, monkeypatch):
        monkeypatch.setenv("HK_CONSENSUS_WORKERS", "3")
        assert build_config("sweep", {}, {'threads': "1"}).threads == 3
        assert build_config("sweep", {'threads': "2"}, {'threads': "1"}).threads == 2

    @pytest.mark.parametrize("flags", [{'trials': "0"}, {'trials': "many"}, {'cases': "-1"}])
    def test_invalid_values(self, flags):
        with pytest.raises(UsageError):
            build_config("sweep", flags)

    def test_metadata_leaves_out_execution_settings(self):
        config = build_config("sweep", {'threads': "4", 'output': "grid.csv", 'seed': "3"})
        view = config.metadata_view()
        assert "threads" not in view
        assert "output" not in view
        assert view['seed'] == 3
