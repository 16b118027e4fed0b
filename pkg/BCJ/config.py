"""
Configuration Module

Holds the package-wide constants and validates command-line options.
All configuration arrives through flags; nothing is read from the
environment.
"""

import logging
import os
from enum import Enum
from typing import List, Optional, Tuple

# Genus range for bit-packed GF(2) vectors (2g bits)
MIN_GENUS = 1
MAX_GENUS = 16

# The full Arf ideal has 2^(2g) generators; beyond this it is not built
MAX_IDEAL_GENUS = 6

# Theorem hypotheses
MIN_EQUALITY_GENUS = 4
MIN_RELATION_RANK = 6

DEFAULT_SEED = 20240601
DEFAULT_THREADS = os.cpu_count() or 1

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class SelftestLevel(str, Enum):
    """How much of the property suite the selftest command runs."""
    QUICK = "quick"
    FULL = "full"


def configure_logging(verbose: bool = False):
    """
    Configure root logging for the command-line front end.

    Logs go to stderr so that stdout only carries command output.

    Args:
        verbose (bool): Log at DEBUG instead of INFO
    """
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format=LOG_FORMAT,
    )


def validate_options(g: Optional[int] = None,
                     k: Optional[int] = None,
                     threads: Optional[int] = None) -> Tuple[bool, List[str]]:
    """
    Check command-line options before any computation starts.

    Args:
        g (int, optional): Ambient genus
        k (int, optional): Number of curves
        threads (int, optional): Worker count

    Returns:
        tuple: (bool, list) - (is_valid, problems)
    """
    problems = []

    if g is not None and not MIN_GENUS <= g <= MAX_GENUS:
        problems.append(f"genus must lie in {MIN_GENUS}..{MAX_GENUS}, got {g}")
    if k is not None:
        if k < 1:
            problems.append(f"k must be at least 1, got {k}")
        elif g is not None and k > 2 * g - 3:
            problems.append(f"k must be at most 2g-3 = {2 * g - 3}, got {k}")
    if threads is not None and threads < 1:
        problems.append(f"threads must be positive, got {threads}")

    if problems:
        return False, problems
    return True, []
