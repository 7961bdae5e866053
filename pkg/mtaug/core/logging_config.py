import sys
from pathlib import Path

from loguru import logger

from mtaug.core.context import run_id_ctx
from mtaug.core.env_config import config


def run_id_filter(record):
    """
    Inject the current run ID into every log record.

    Loguru allows adding dynamic fields via the record["extra"] dictionary.
    """
    record["extra"]["run_id"] = run_id_ctx.get()
    return True


def setup_logging(level: str | None = None, log_dir: str | None = None) -> None:
    """
    Configure Loguru for CLI use.

    - Console logs go to stderr; stdout carries only the JSON report
    - When a log directory is configured, <dir>/mtaug.log rotates at 10 MB,
      keeps 10 backups and compresses older files
    """
    logger.remove()

    # Console logs
    logger.add(
        sys.stderr,
        level=level or config.LOG_LEVEL,
        format=(
            "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
            "<cyan>{extra[run_id]}</cyan> | "
            "<level>{level}</level> | "
            "{message}"
        ),
        filter=run_id_filter,
    )

    log_dir = log_dir or config.LOG_DIR
    if not log_dir:
        return

    # File logs
    Path(log_dir).mkdir(parents=True, exist_ok=True)
    logger.add(
        str(Path(log_dir) / "mtaug.log"),
        rotation="10 MB",
        retention=10,
        compression="zip",
        level="DEBUG",
        format=(
            "{time:YYYY-MM-DD HH:mm:ss} | "
            "{extra[run_id]} | "
            "{level} | "
            "{name}:{function}:{line} - "
            "{message}"
        ),
        filter=run_id_filter,
        enqueue=True,
        backtrace=True,
        diagnose=True,
    )
