"""Exact construction and verification of commutative algebras of block Toeplitz matrices.

Arithmetic is over the Gaussian rationals, so every closure, commutant and
maximality check is decided exactly.
"""
from .exactfield import *  # noqa: F401,F403
from .linalg import *  # noqa: F401,F403
from .toeplitz import *  # noqa: F401,F403
from .subalgebras import *  # noqa: F401,F403
from .fab import *  # noqa: F401,F403
from .casestudies import *  # noqa: F401,F403
from . import exactfield, linalg, toeplitz, subalgebras, fab, casestudies, serialize, battery

__version__ = "0.1.0"
