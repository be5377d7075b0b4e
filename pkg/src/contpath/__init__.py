"""Continuous analogues of binomial coefficients and Catalan numbers.

The numerical evaluators live in :mod:`contpath.binom`,
:mod:`contpath.dist` and :mod:`contpath.catalan`; the discrete and
geometric oracles they are checked against live in :mod:`contpath.lattice`
and :mod:`contpath.oracle`.
"""

from .binom import cont_binom, cont_binom_bessel
from .catalan import catalan_C, lambda_volume
from .errors import ConvergenceError, DomainError
from .kernels import BACKEND
from .specfn import DEFAULT_CONFIG, FULL_PRECISION, SeriesConfig

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConvergenceError",
    "DEFAULT_CONFIG",
    "DomainError",
    "FULL_PRECISION",
    "SeriesConfig",
    "catalan_C",
    "cont_binom",
    "cont_binom_bessel",
    "lambda_volume",
]
