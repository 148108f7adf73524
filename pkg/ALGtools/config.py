"""
Run-time options shared by the library and the command line.
"""
import logging
import os
from dataclasses import dataclass


logger = logging.getLogger(__name__)

MODES = ('auto', 'exhaustive', 'samples')

DEFAULT_SAMPLES = 1000
DEFAULT_BUDGET = 2_000_000

# Largest plain vector scan allowed when no budget is passed
SCAN_LIMIT = 1_000_000

# In auto mode, scans of at most this many elements, pairs or triples run
# exhaustively; larger ones fall back to sampling
AUTO_EXHAUSTIVE_LIMIT = 65536

THREADS_VARIABLE = 'CAYLEY_THREADS'

SCHEMA_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'ALGschema.json')


@dataclass(frozen=True)
class RunOptions:
    """
    Parameters
    ----------
    mode : str
        'exhaustive' scans every element or pair, 'samples' draws `samples`
        seeded random elements, 'auto' is exhaustive on small finite algebras
    samples : int
        Number of samples in sampling mode
    budget : int
        Work units each claim may spend
    strict : bool
        Treat skipped verdicts as failures when computing the exit code
    seed : int
        Seed of the random generator used for sampling
    include_slow : bool
        Run claims that are excluded from `all` by default
    threads : int, optional
        Number of claims run concurrently; defaults to `thread_count()`
    """
    mode: str = 'auto'
    samples: int = DEFAULT_SAMPLES
    budget: int = DEFAULT_BUDGET
    strict: bool = False
    seed: int = 0
    include_slow: bool = False
    threads: int = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}, expected one of {MODES}")
        if self.samples < 1:
            raise ValueError(f"sample count must be positive, got {self.samples}")
        if self.budget < 1:
            raise ValueError(f"budget must be positive, got {self.budget}")


def thread_count() -> int:
    """
    Thread cap from the CAYLEY_THREADS environment variable (default 1)
    """
    value = os.environ.get(THREADS_VARIABLE)
    if value is None:
        return 1
    try:
        count = int(value)
    except ValueError:
        count = 0
    if count < 1:
        logger.warning("ignoring %s=%r: expected a positive integer", THREADS_VARIABLE, value)
        return 1
    return count
