"""
certquad logging setup
Colored stderr logging for the CERTQUAD.* logger tree
"""

import logging
import sys

import colorlog

ROOT_LOGGER = "CERTQUAD"

_FORMAT = "%(log_color)s%(asctime)s - %(name)s - %(levelname)s - %(message)s"
_LEVELS = {0: logging.WARNING, 1: logging.INFO}


def get_logger(component: str) -> logging.Logger:
    """Logger for one component, e.g. get_logger("Engine") -> CERTQUAD.Engine"""
    return logging.getLogger(f"{ROOT_LOGGER}.{component}")


def configure_logging(verbosity: int = 0, stream=None) -> logging.Logger:
    """Install a single colored handler on the CERTQUAD logger.

    Calling it again replaces the handler instead of stacking a second one.
    """
    root = logging.getLogger(ROOT_LOGGER)
    for handler in list(root.handlers):
        if getattr(handler, "_certquad", False):
            root.removeHandler(handler)

    handler = colorlog.StreamHandler(stream or sys.stderr)
    handler.setFormatter(colorlog.ColoredFormatter(_FORMAT, datefmt="%H:%M:%S"))
    handler._certquad = True

    root.addHandler(handler)
    root.setLevel(_LEVELS.get(verbosity, logging.DEBUG))
    root.propagate = False
    return root
