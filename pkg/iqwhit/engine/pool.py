__author__    = "Daniel Westwood"
__contact__   = "daniel.westwood@stfc.ac.uk"
__copyright__ = "Copyright 2024 United Kingdom Research and Innovation"

import logging
from concurrent.futures import ThreadPoolExecutor

from iqwhit.utils import logstream, thread_count

logger = logging.getLogger(__name__)
logger.addHandler(logstream)
logger.propagate = False

def _guarded(fn, key, on_error):
    """Wrap ``fn`` so a raising case is handed to ``on_error`` instead."""
    if on_error is None:
        return fn

    def call(case):
        try:
            return fn(case)
        except Exception as err:
            logger.warning(f'Case {key} raised {type(err).__name__}: {err}')
            return on_error(key, err)
    return call

def run_cases(fn, cases: dict, threads: int = None, on_error=None) -> dict:
    """
    Apply ``fn`` to every value of ``cases`` and return the results under the
    same keys. Runs in-line for one worker, otherwise in a thread pool capped
    by ``IQW_THREADS``.

    :param fn:          (callable) Pure function of one case.

    :param cases:       (dict) Case key to argument.

    :param threads:     (int) Worker count, defaults to ``thread_count()``.

    :param on_error:    (callable) ``(key, exception) -> result`` used in place
        of a case that raises. Without it the first exception propagates.
    """
    threads = thread_count() if threads is None else max(1, threads)
    if threads == 1 or len(cases) < 2:
        return {
            key: _guarded(fn, key, on_error)(case)
            for key, case in cases.items()
        }

    logger.debug(f'Running {len(cases)} cases on {threads} threads')
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = {
            key: pool.submit(_guarded(fn, key, on_error), case)
            for key, case in cases.items()
        }
        # Merge in key order so results never depend on completion order.
        return {key: futures[key].result() for key in cases}
