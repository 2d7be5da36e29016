"""Circle-method and ergodic-average experiments on Z/QZ.

Polynomials are coefficient lists, constant term first: [0, 0, 1] is n**2.
Signals are one-dimensional complex NumPy arrays indexed by residues mod Q.
"""

from ._core import *  # noqa: F401,F403
from ._core import PreconditionError, ConvergenceError  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
