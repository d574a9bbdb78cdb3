"""Extension of python logging."""

import logging

FORMAT = "%(asctime)s.%(msecs)03d-%(name)s-%(levelname)s-%(message)s"
DATE_FORMAT = "%Y-%m-%d:%H:%M:%S"


def level_for(verbosity: int) -> int:
    """WARNING by default, INFO for one ``-v`` and DEBUG for more."""
    if verbosity >= 2:
        return logging.DEBUG
    if verbosity == 1:
        return logging.INFO
    return logging.WARNING


def configure(level: int = logging.WARNING) -> logging.Logger:
    """Attach one stream handler to the package logger."""
    logger = logging.getLogger("libstarprod")
    logger.setLevel(level)
    if not any(getattr(h, "starprod", False) for h in logger.handlers):
        handler = logging.StreamHandler()
        handler.starprod = True
        handler.setFormatter(logging.Formatter(FORMAT, datefmt=DATE_FORMAT))
        logger.addHandler(handler)
    return logger
