import os
import logging
from dotenv import load_dotenv

logger = logging.getLogger(__name__)


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring malformed {name}={raw!r}, using {default}")
        return default


# Environment-based configuration
class Settings:
    def __init__(self):
        self.reload()
        self._setup_logging()

    def reload(self):
        """Re-read the process environment"""
        self.host = os.getenv("HOST", "0.0.0.0")
        self.port = _int_env("PORT", 5001)
        self.log_level = os.getenv("LOG_LEVEL", "INFO").upper()
        self.cors_origins = os.getenv("CORS_ORIGINS", "*").split(",")

        # Search and sampling knobs
        self.bfs_budget = _int_env("BMWSQ_BUDGET", 200_000)
        self.bracket_cap = _int_env("BMWSQ_BRACKET_CAP", 16)
        self.seed = _int_env("BMWSQ_SEED", 20240601)
        self.span_prime_floor = _int_env("BMWSQ_SPAN_PRIME_FLOOR", 1 << 20)

    def _setup_logging(self):
        """Setup application-wide logging configuration"""
        logging.basicConfig(
            level=getattr(logging, self.log_level, logging.INFO),
            format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            handlers=[
                logging.StreamHandler(),
            ]
        )

    def as_dict(self) -> dict:
        """Effective configuration, for the health endpoint and `verify-all` headers"""
        return {
            "log_level": self.log_level,
            "bfs_budget": self.bfs_budget,
            "bracket_cap": self.bracket_cap,
            "seed": self.seed,
            "span_prime_floor": self.span_prime_floor,
        }


settings = Settings()


def load_env_file(dotenv_path=None) -> bool:
    """
    Merge a .env file into the environment and refresh `settings`.

    Only the HTTP server calls this; CLI results depend on flags and the
    process environment alone.
    """
    loaded = load_dotenv(dotenv_path)
    if loaded:
        settings.reload()
        logging.getLogger().setLevel(getattr(logging, settings.log_level, logging.INFO))
        logger.info(f"Loaded .env, effective settings: {settings.as_dict()}")
    return loaded
