import logging
import os

from app.core.config import Settings, load_env_file, settings

KNOBS = ("BMWSQ_SEED", "BMWSQ_BUDGET")


def _clear(monkeypatch):
    for name in KNOBS:
        monkeypatch.delenv(name, raising=False)


def test_settings_ignore_dotenv_in_working_directory(tmp_path, monkeypatch):
    _clear(monkeypatch)
    (tmp_path / ".env").write_text("BMWSQ_SEED=7\nBMWSQ_BUDGET=11\n")
    monkeypatch.chdir(tmp_path)
    fresh = Settings()
    assert fresh.seed == 20240601
    assert fresh.bfs_budget == 200_000


def test_server_path_loads_dotenv(tmp_path, monkeypatch):
    _clear(monkeypatch)
    env_file = tmp_path / ".env"
    env_file.write_text("BMWSQ_SEED=7\nBMWSQ_BUDGET=11\n")
    try:
        assert load_env_file(env_file)
        assert settings.seed == 7
        assert settings.bfs_budget == 11
    finally:
        for name in KNOBS:
            os.environ.pop(name, None)
        settings.reload()
        logging.getLogger().setLevel(getattr(logging, settings.log_level, logging.INFO))
    assert settings.seed == 20240601


def test_malformed_values_fall_back(monkeypatch):
    monkeypatch.setenv("BMWSQ_BUDGET", "lots")
    assert Settings().bfs_budget == 200_000


def test_logging_setup_leaves_third_party_loggers_alone():
    Settings()
    assert logging.getLogger("watchfiles.main").level == logging.NOTSET
