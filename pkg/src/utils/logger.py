"""
Logging configuration for Mass Growth Lab
"""
import sys
from pathlib import Path
from typing import Optional

from loguru import logger

from src.config.settings import get_settings


def setup_logging(log_level: Optional[str] = None, enable_file_logging: Optional[bool] = None):
    """Setup logging configuration for the application"""
    settings = get_settings()
    level = (log_level or settings.log_level).upper()
    file_logging = settings.enable_file_logging if enable_file_logging is None else enable_file_logging

    # Remove default logger
    logger.remove()

    # Console goes to stderr so JSON reports on stdout stay clean
    logger.add(
        sys.stderr,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>",
        level=level,
        colorize=True
    )

    if file_logging:
        log_file = Path(settings.log_file)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            log_file,
            format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}",
            level=level,
            rotation="10 MB",
            retention="30 days",
            compression="gz",
            enqueue=True
        )

    logger.debug(f"Logging setup completed (level {level}, file logging {'on' if file_logging else 'off'})")


def get_logger(name: str = ""):
    """Get a logger instance"""
    if name:
        return logger.bind(name=name)
    return logger
