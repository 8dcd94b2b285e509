from sys import stderr
from typing import Optional

from loguru import logger

from quasiherm.config import load_settings

FORMAT = "{time:DD-MM-YYYY at HH:mm:ss} | {name}:{function} | {level} | {message}"

_configured = False


def get_logger(verbose: Optional[bool] = None):
    """Configura o logger do loguru uma vez por processo.

    Chamar com `verbose` explicito (como faz a CLI) reconfigura os sinks.
    """
    global _configured
    if _configured and verbose is None:
        return logger
    settings = load_settings()
    if verbose is None:
        verbose = settings.verbose
    logger.remove()
    if settings.log_file:
        logger.add(
            settings.log_file,
            enqueue=True,
            format=FORMAT,
            rotation="25 MB",
            level="DEBUG",
            backtrace=False,
            diagnose=True,
        )
    logger.add(
        sink=stderr,
        format=FORMAT,
        level="DEBUG" if verbose else "WARNING",
        backtrace=True,
        diagnose=True,
        colorize=True,
    )
    _configured = True
    return logger
