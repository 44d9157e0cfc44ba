from loguru import logger
import sys
from src.configs import get_settings

settings = get_settings()

CONSOLE_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>"
)


def setup_logger():
    """Configure loguru: console on stderr, JSON lines under LOG_DIR in production"""
    logger.remove()
    # stdout belongs to `list` / `validate` output
    logger.add(
        sys.stderr,
        format=CONSOLE_FORMAT,
        level=settings.LOG_LEVEL,
        colorize=True,
    )

    if settings.ENVIRONMENT == "production":
        # one file per run; bound details (exception codes) land in record.extra
        logger.add(
            f"{settings.LOG_DIR}/{settings.SERVICE_NAME}_{{time}}.jsonl",
            rotation="500 MB",
            retention="10 days",
            level="INFO",
            serialize=True,
            enqueue=True,
        )

    return logger.bind(service=settings.SERVICE_NAME)


app_logger = setup_logger()
