"""
Runtime configuration for the jet toolkit.

Everything is read from the environment once, with defaults suitable for
desk-scale computations. CLI flags override these values per run.
"""

import logging
import os
from dataclasses import dataclass
from logging.handlers import RotatingFileHandler

# --- Output ---
OUTPUT_FORMATS = ('text', 'json')
DEFAULT_FORMAT = os.environ.get('JETKIT_FORMAT', 'text')
DEFAULT_CAP = int(os.environ.get('JETKIT_CAP', 16))

# --- Groebner resource caps ---
DEFAULT_MAX_DEGREE = int(os.environ.get('JETKIT_MAX_DEGREE', 40))
DEFAULT_MAX_BASIS = int(os.environ.get('JETKIT_MAX_BASIS', 400))
DEFAULT_MAX_PAIRS = int(os.environ.get('JETKIT_MAX_PAIRS', 20000))

# --- Logging ---
LOG_FILE = os.environ.get('JETKIT_LOG_FILE')
LOG_FORMAT = '%(asctime)s %(levelname)s %(funcName)s(%(lineno)d) %(message)s'


@dataclass(frozen=True)
class GroebnerLimits:
    """Hard caps for a single basis computation."""
    max_degree: int = DEFAULT_MAX_DEGREE
    max_basis: int = DEFAULT_MAX_BASIS
    max_pairs: int = DEFAULT_MAX_PAIRS


DEFAULT_LIMITS = GroebnerLimits()


def resolve_format(requested=None):
    """Pick the output format: explicit request, then JETKIT_FORMAT, then text."""
    fmt = requested or DEFAULT_FORMAT
    if fmt not in OUTPUT_FORMATS:
        raise ValueError(f"Unknown output format '{fmt}'. Use one of: {', '.join(OUTPUT_FORMATS)}")
    return fmt


def configure_logging(level=None, default_level='WARNING'):
    """Install the shared formatter on the root logger (idempotent).

    An explicit `level` wins over JETKIT_LOG_LEVEL, which wins over `default_level`.
    """
    level_name = (level or os.environ.get('JETKIT_LOG_LEVEL') or default_level).upper()
    level = getattr(logging, level_name, logging.WARNING)
    root = logging.getLogger()
    root.setLevel(level)

    handler = getattr(root, '_jetkit_handler', None)
    if handler is not None:
        handler.setLevel(level)
        return root

    log_formatter = logging.Formatter(LOG_FORMAT)
    if LOG_FILE:
        handler = RotatingFileHandler(LOG_FILE, mode='a', maxBytes=5 * 1024 * 1024, backupCount=2)
    else:
        handler = logging.StreamHandler()
    handler.setFormatter(log_formatter)
    handler.setLevel(level)
    root.addHandler(handler)
    root._jetkit_handler = handler
    return root
