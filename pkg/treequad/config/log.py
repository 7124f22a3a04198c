"""
Logging setup shared by the CLI and interactive sessions.
"""

import logging
from typing import Optional, Union

from rich.console import Console
from rich.logging import RichHandler

from . import settings

_HANDLER_NAME = "treequad-rich"


def configure_logging(
    level: Union[int, str, None] = None, console: Optional[Console] = None
) -> logging.Logger:
    """
    Attach a rich handler to the ``treequad`` logger.

    Calling it again replaces the previous handler instead of stacking a
    second one, so the CLI can re-run it per invocation.

    Args:
        level: Logging level name or number; defaults to settings.LOG_LEVEL
        console: Console to render to (stderr when omitted)

    Returns:
        The configured package logger
    """
    logger = logging.getLogger("treequad")
    for handler in list(logger.handlers):
        if handler.get_name() == _HANDLER_NAME:
            logger.removeHandler(handler)

    handler = RichHandler(
        console=console or Console(stderr=True),
        show_path=False,
        rich_tracebacks=True,
    )
    handler.set_name(_HANDLER_NAME)
    handler.setFormatter(logging.Formatter(settings.LOG_FORMAT))

    logger.addHandler(handler)
    logger.setLevel(level if level is not None else settings.LOG_LEVEL)
    return logger
