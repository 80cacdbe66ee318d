import logging
import os
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)


def env_int(name: str, default: int) -> int:
    """Integer setting from the environment; an unparsable value keeps the default."""
    value = os.getenv(name, '').strip()
    if not value:
        return default
    try:
        return int(value)
    except ValueError:
        logger.warning(f"Ignoring {name}={value!r}: not an integer, using {default}")
        return default


class Config:
    """Configuration settings for the CLI and the Flask application."""
    SECRET_KEY = os.getenv('SECRET_KEY', 'dev-key-for-fuzzsim')
    DEBUG = os.getenv('FLASK_DEBUG', 'False').lower() in ('true', '1', 't')
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'WARNING').upper()

    # Iteration limits; the CLI parses FUZZSIM_CAP itself and rejects bad values
    ITERATION_CAP = env_int('FUZZSIM_CAP', 1000)
    CLOSURE_CAP = env_int('FUZZSIM_CLOSURE_CAP', 10000)
    PROBE_CAP = env_int('FUZZSIM_PROBE_CAP', 512)  # termination probe run by every computation
    ORACLE_MAX_PAIRS = env_int('FUZZSIM_ORACLE_MAX_PAIRS', 20)  # 2^20 relations at most

    # Per-letter residuals are evaluated on this many threads (1 = inline)
    MAX_WORKERS = env_int('MAX_WORKERS', 1)
