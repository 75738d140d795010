__author__    = "Daniel Westwood"
__contact__   = "daniel.westwood@stfc.ac.uk"
__copyright__ = "Copyright 2024 United Kingdom Research and Innovation"

import hashlib
import logging
import os

logging.basicConfig(level=logging.WARNING)
logstream = logging.StreamHandler()

formatter = logging.Formatter('%(levelname)s [%(name)s]: %(message)s')
logstream.setFormatter(formatter)

# Truncation degrees used by the verifiers when none are given.
verify_defaults = {
    'cauchy-F': 6,
    'cauchy-HL': 5,
    'dual-cauchy': 5,
    'omega-F': 5,
    'macd-cauchy': 3,
}

# Largest shapes swept by the golden invariant checks.
sweep_defaults = {
    'product': 3,
    'skew': 4,
    'basis': 4,
    'cauchy': 1,
    'omega': 4,
}

# Numeric settings for specializations and measures.
numeric_defaults = {
    'plancherel_cutoff': 32,
    'sampler_eps': 1e-12,
    'product_eps': 1e-15,
    'littlewood_tol': 1e-6,
    'tail_bound': None,
    'sampler_budget': 10000,
}

def thread_count() -> int:
    """
    Size of the work pool, capped by ``IQW_THREADS`` when set.
    """
    value = os.environ.get('IQW_THREADS')
    if value is None:
        return 1
    try:
        return max(1, int(value))
    except ValueError:
        raise ValueError(
            f'IQW_THREADS must be a positive integer, got "{value}"'
        )

def hash_id(*parts) -> str:
    """
    Short identifier of a result, read from the text of the content that
    defines it. Equal content gives the same identifier in every run.
    """
    token = '|'.join(str(p) for p in parts)
    return hashlib.blake2s(token.encode(), digest_size=4).hexdigest()

def set_verbose(level: int):
    """
    Reset the logger basic config.
    """

    levels = [
        logging.WARN,
        logging.INFO,
        logging.DEBUG,
    ]

    if level >= len(levels):
        level = len(levels) - 1

    for name in logging.root.manager.loggerDict:
        lg = logging.getLogger(name)
        lg.setLevel(levels[level])
