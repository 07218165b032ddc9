"""wildtrace: exact verification of wildly ramified supercuspidal GL(2)
constructions in residue characteristic two.

The package computes, at concrete small parameters, the finite point sets of
the twisted affine Bruhat condition over a wildly ramified quadratic tower,
the group acting on the right with its characters, the closed trace formula
with an independent orbit oracle, and the Mackey trace of the matching
induced cuspidal type, certifying their exact agreement in Z[zeta_M].
"""

from .algebra import DomainError, Fq, PrecisionError, TruncatedSeries
from .kernels import BACKEND as kernel_backend
from .tower import Tower, build_tower

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "Fq",
    "PrecisionError",
    "Tower",
    "TruncatedSeries",
    "build_tower",
    "kernel_backend",
    "__version__",
]
