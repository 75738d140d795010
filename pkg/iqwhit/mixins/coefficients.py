__author__    = "Daniel Westwood"
__contact__   = "daniel.westwood@stfc.ac.uk"
__copyright__ = "Copyright 2024 United Kingdom Research and Innovation"

import logging

from iqwhit.core.partitions import Partition, graded_key
from iqwhit.core.scalars import format_scalar
from iqwhit.utils import logstream

logger = logging.getLogger(__name__)
logger.addHandler(logstream)
logger.propagate = False

class CoefficientsMixin:
    """
    Mixin for objects holding a finitely supported map from partitions to
    scalars in ``self._coeffs``. Zero coefficients are never stored.
    """

    def _zero(self):
        return 0

    @staticmethod
    def _clean(coeffs: dict) -> dict:
        """Drop zero coefficients and normalise the keys."""
        return {Partition(k): v for k, v in coeffs.items() if v}

    def __getitem__(self, key):
        """
        Coefficient at a partition (or its text form); zero when absent.
        """
        try:
            key = Partition(key)
        except (ValueError, TypeError):
            raise IndexError(f'"{key}" does not name a partition')
        return self._coeffs.get(key, self._zero())

    def __iter__(self):
        return iter(self.support)

    def __len__(self):
        return len(self._coeffs)

    def __contains__(self, key):
        return Partition(key) in self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    @property
    def support(self) -> list:
        """Partitions with a nonzero coefficient, graded reverse-lex."""
        return sorted(self._coeffs.keys(), key=graded_key)

    @property
    def coefficients(self) -> dict:
        return dict(self._coeffs)

    def items(self):
        for lam in self.support:
            yield lam, self._coeffs[lam]

    def help(self, additionals: list = None):
        """Get all properties of this Mixin"""

        additionals = additionals or []
        additionals += ['support', 'coefficients']
        super().help(additionals=additionals)

    def _coefficient_lines(self) -> list:
        return [f'   {lam}: {format_scalar(c)}' for lam, c in self.items()]

    def _json_coefficients(self) -> dict:
        return {str(lam): format_scalar(c) for lam, c in self.items()}
