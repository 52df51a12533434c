"""montecensus.logger

This module handles consistent logging across the library, the worker
processes and the command line.
"""

import sys
from contextlib import contextmanager
from time import perf_counter_ns

from loguru import logger

log = logger
log.configure(extra={"process": "main"})


LEVELS = ("SUCCESS", "INFO", "DEBUG", "TRACE")

BRIEF = "<red>{extra[process]:<8}</red>: <level>{message}</level>"
DETAILED = (
    "<green>{elapsed}</green> | <level>{level: <8}</level> | "
    "<red>{extra[process]:<8}</red> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - "
    "<level>{message}</level>"
)


def initialize(verbose: int):
    """Route records at the level picked by the -v count to stderr.

    From -vv on, records carry the elapsed time and the emitting function.
    """
    log.remove()
    log.add(
        sys.stderr,
        format=DETAILED if verbose >= 2 else BRIEF,
        level=LEVELS[min(verbose, len(LEVELS) - 1)],
    )
    log.configure(extra={"process": "main"})


def worker(name: str):
    """A logger tagged with the name of a worker process or chunk"""
    return log.bind(process=name)


@contextmanager
def timed(label: str, logger=log):
    start = perf_counter_ns()
    logger.debug(f"{label}: started")
    try:
        yield
    finally:
        elapsed = (perf_counter_ns() - start) / 1e9
        logger.debug(f"{label}: {elapsed:0.3f}s")
